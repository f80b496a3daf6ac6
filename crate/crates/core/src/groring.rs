//! Grothendieck-ring element arithmetic over a registered universe of
//! algebra descriptors. Ring elements live in the free abelian group on
//! descriptor names; every extension relation [mid] = [sub] + [quot]
//! contributes a lattice vector, and equality modulo relations is exact
//! lattice membership via Smith normal form. Characters are checked for
//! well-definedness against the registered relations before they are
//! allowed to evaluate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::crt::{chi1_real, chi_real_dims, real_kunneth_tensor, validate_rank_consistency, RealKData};
use crate::error::Error;
use crate::folner::{ExtGroup, TorsionTag};
use crate::kchar::{
    char_q, chi_euler, chi_p, chi_u, kunneth_tensor, AlgebraDescriptor, ChiPMode, DescriptorKData,
    FieldBase, Flags, KData, RankClass,
};
use crate::matrix::{solve, IntMatrix};
use crate::Result;

/// The relation [mid] = [sub] + [quot] coming from a short exact
/// sequence 0 -> sub -> mid -> quot -> 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRelation {
    pub sub: String,
    pub mid: String,
    pub quot: String,
    /// Set when the six-term K-theory sequence was checked.
    pub verified: bool,
}

impl std::fmt::Display for ExtensionRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] = [{}] + [{}]", self.mid, self.sub, self.quot)
    }
}

/// A named set of descriptors with registered extension relations and
/// closure assertions. Append-only during a session.
#[derive(Clone, Debug, Default)]
pub struct Universe {
    descriptors: BTreeMap<String, AlgebraDescriptor>,
    relations: Vec<ExtensionRelation>,
    pub infinite_sums: bool,
    pub infinite_products: bool,
}

impl Universe {
    pub fn new() -> Self {
        Universe::default()
    }

    pub fn register(&mut self, d: AlgebraDescriptor) -> Result<()> {
        if self.descriptors.contains_key(&d.name) {
            return Err(Error::Invalid(format!("descriptor `{}` already registered", d.name)));
        }
        self.descriptors.insert(d.name.clone(), d);
        Ok(())
    }

    pub fn descriptor(&self, name: &str) -> Result<&AlgebraDescriptor> {
        self.descriptors
            .get(name)
            .ok_or_else(|| Error::UnknownDescriptor(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.descriptors.keys().map(String::as_str).collect()
    }

    pub fn relations(&self) -> &[ExtensionRelation] {
        &self.relations
    }

    pub fn add_relation(&mut self, sub: &str, mid: &str, quot: &str, verified: bool) -> Result<()> {
        for name in [sub, mid, quot] {
            if !self.descriptors.contains_key(name) {
                return Err(Error::UnknownDescriptor(name.to_string()));
            }
        }
        self.relations.push(ExtensionRelation {
            sub: sub.into(),
            mid: mid.into(),
            quot: quot.into(),
            verified,
        });
        Ok(())
    }
}

/// Formal integer combination of descriptor names; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    coeffs: BTreeMap<String, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn generator(name: impl Into<String>) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.into(), 1);
        RingElement { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<String, i64> {
        &self.coeffs
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut coeffs = self.coeffs.clone();
        for (name, c) in &other.coeffs {
            let v = coeffs.entry(name.clone()).or_insert(0);
            *v += c;
            if *v == 0 {
                coeffs.remove(name);
            }
        }
        RingElement { coeffs }
    }

    pub fn neg(&self) -> RingElement {
        RingElement { coeffs: self.coeffs.iter().map(|(n, c)| (n.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> RingElement {
        if k == 0 {
            return RingElement::zero();
        }
        RingElement { coeffs: self.coeffs.iter().map(|(n, c)| (n.clone(), k * c)).collect() }
    }
}

impl std::fmt::Display for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (name, c) in &self.coeffs {
            if !first {
                write!(f, " {} ", if *c < 0 { "-" } else { "+" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let mag = c.abs();
            if mag == 1 {
                write!(f, "[{name}]")?;
            } else {
                write!(f, "{mag}*[{name}]")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Parse an element literal like `2*[A] - [B] + [C]` or `0`.
pub fn parse_element(input: &str) -> Result<RingElement> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Invalid("empty ring element".into()));
    }
    if compact == "0" {
        return Ok(RingElement::zero());
    }
    let mut out = RingElement::zero();
    let mut rest = compact.as_str();
    let mut sign = 1i64;
    // leading sign
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    while !rest.is_empty() {
        // optional integer coefficient with '*'
        let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let mut coeff = 1i64;
        if digits_end > 0 {
            coeff = rest[..digits_end]
                .parse()
                .map_err(|_| Error::Invalid(format!("bad coefficient in `{input}`")))?;
            rest = &rest[digits_end..];
            rest = rest
                .strip_prefix('*')
                .ok_or_else(|| Error::Invalid(format!("expected `*` after coefficient in `{input}`")))?;
        }
        let inner = rest
            .strip_prefix('[')
            .ok_or_else(|| Error::Invalid(format!("expected `[name]` in `{input}`")))?;
        let close = inner
            .find(']')
            .ok_or_else(|| Error::Invalid(format!("unterminated `[` in `{input}`")))?;
        let name = &inner[..close];
        if name.is_empty() {
            return Err(Error::Invalid(format!("empty descriptor name in `{input}`")));
        }
        out = out.add(&RingElement::generator(name).scale(sign * coeff));
        rest = &inner[close + 1..];
        match rest.chars().next() {
            None => break,
            Some('+') => {
                sign = 1;
                rest = &rest[1..];
            }
            Some('-') => {
                sign = -1;
                rest = &rest[1..];
            }
            Some(c) => {
                return Err(Error::Invalid(format!("unexpected `{c}` in `{input}`")));
            }
        }
    }
    Ok(out)
}

fn check_names(u: &Universe, e: &RingElement) -> Result<()> {
    for name in e.coeffs.keys() {
        u.descriptor(name)?;
    }
    Ok(())
}

/// Exact test: a = b modulo the integer span of the relation vectors
/// {[mid] - [sub] - [quot]}.
pub fn equal_mod_relations(u: &Universe, a: &RingElement, b: &RingElement) -> Result<bool> {
    check_names(u, a)?;
    check_names(u, b)?;
    let diff = a.sub(b);
    if diff.is_zero() {
        return Ok(true);
    }
    if u.relations.is_empty() {
        return Ok(false);
    }
    let names: Vec<&str> = u.names();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut v = IntMatrix::zero(names.len(), u.relations.len());
    for (j, rel) in u.relations.iter().enumerate() {
        v[(index[rel.mid.as_str()], j)] += BigInt::from(1);
        v[(index[rel.sub.as_str()], j)] -= BigInt::from(1);
        v[(index[rel.quot.as_str()], j)] -= BigInt::from(1);
    }
    let mut rhs = vec![BigInt::zero(); names.len()];
    for (name, c) in diff.coeffs() {
        rhs[index[name.as_str()]] = BigInt::from(*c);
    }
    Ok(solve(&v, &rhs)?.is_some())
}

/// Multiplication of ring elements through the Kunneth engine. Every
/// factor pair must satisfy the KTP hypothesis; product descriptors are
/// registered on demand under the name `tensor(a,b)` with the split
/// reading of the Kunneth extension, and any extension ambiguity is
/// returned as a warning.
pub fn mul(u: &mut Universe, a: &RingElement, b: &RingElement) -> Result<(RingElement, Vec<String>)> {
    check_names(u, a)?;
    check_names(u, b)?;
    let mut out = RingElement::zero();
    let mut warnings = Vec::new();
    let pairs: Vec<(String, i64, String, i64)> = a
        .coeffs
        .iter()
        .flat_map(|(x, cx)| b.coeffs.iter().map(move |(y, cy)| (x.clone(), *cx, y.clone(), *cy)))
        .collect();
    for (x, cx, y, cy) in pairs {
        let name = product_name(&x, &y);
        if u.descriptors.get(&name).is_none() {
            let dx = u.descriptor(&x)?.clone();
            let dy = u.descriptor(&y)?.clone();
            if dx.field_base != FieldBase::Complex || dy.field_base != FieldBase::Complex {
                return Err(Error::Invalid(
                    "ring multiplication is provided for complex descriptors; register real products explicitly"
                        .into(),
                ));
            }
            let r = kunneth_tensor(&dx, &dy)?;
            for (deg, comp) in [(0, &r.k0), (1, &r.k1)] {
                if comp.ambiguous {
                    warnings.push(format!(
                        "K{deg}({name}): extension ambiguous (sub {}, quot {}); split reading used",
                        comp.sub, comp.quot
                    ));
                }
            }
            let kdata = r.kdata_split();
            let flags = Flags {
                ktp_class: dx.flags.ktp_class && dy.flags.ktp_class,
                finitely_generated_k: kdata.is_fg()
                    && dx.flags.finitely_generated_k
                    && dy.flags.finitely_generated_k,
                nuclear: dx.flags.nuclear && dy.flags.nuclear,
                separable: dx.flags.separable && dy.flags.separable,
                n_real: false,
            };
            let d = AlgebraDescriptor::complex(name.clone(), kdata, flags)?;
            u.register(d)?;
        }
        out = out.add(&RingElement::generator(&name).scale(cx * cy));
    }
    Ok((out, warnings))
}

fn product_name(a: &str, b: &str) -> String {
    format!("tensor({a},{b})")
}

/// Character tags evaluable on descriptors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharTag {
    Euler,
    U,
    P(u64, ChiPMode),
    Q,
    Real1,
    Real2,
}

impl std::fmt::Display for CharTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharTag::Euler => write!(f, "euler"),
            CharTag::U => write!(f, "u"),
            CharTag::P(p, ChiPMode::PPrimary) => write!(f, "p:{p}"),
            CharTag::P(p, ChiPMode::TensorZp) => write!(f, "p:{p}:tensor-zp"),
            CharTag::Q => write!(f, "q"),
            CharTag::Real1 => write!(f, "real1"),
            CharTag::Real2 => write!(f, "real2"),
        }
    }
}

/// A character value: integer for the rank characters, rational for Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharValue {
    Int(i64),
    Rational(BigRational),
}

impl CharValue {
    pub fn as_rational(&self) -> BigRational {
        match self {
            CharValue::Int(v) => BigRational::from_integer(BigInt::from(*v)),
            CharValue::Rational(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CharValue::Int(v) => *v == 0,
            CharValue::Rational(r) => r.is_zero(),
        }
    }
}

impl std::fmt::Display for CharValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharValue::Int(v) => write!(f, "{v}"),
            CharValue::Rational(r) => write!(f, "{r}"),
        }
    }
}

/// Evaluate a character on a single descriptor.
pub fn evaluate_char(d: &AlgebraDescriptor, tag: CharTag) -> Result<CharValue> {
    match tag {
        CharTag::Euler => chi_euler(d).map(CharValue::Int),
        CharTag::U => chi_u(d).map(CharValue::Int),
        CharTag::P(p, mode) => chi_p(d, p, mode).map(CharValue::Int),
        CharTag::Q => char_q(d).map(CharValue::Rational),
        CharTag::Real1 => match d.real_kdata()? {
            RealKData::Fg(c) => Ok(CharValue::Int(chi1_real(c))),
            RealKData::Rational(_) => Err(Error::NotFinitelyGenerated),
        },
        CharTag::Real2 => match d.real_kdata()? {
            RealKData::Fg(c) => Ok(CharValue::Int(chi_real_dims(&c.rationalize()))),
            RealKData::Rational(r) => Ok(CharValue::Int(chi_real_dims(r))),
        },
    }
}

/// Why a character fails to be well defined on a universe.
#[derive(Clone, Debug)]
pub struct CharReport {
    pub tag: CharTag,
    /// (descriptor, reason) pairs where the character cannot be evaluated.
    pub inapplicable: Vec<(String, String)>,
    /// Relations where additivity fails, with the mismatch.
    pub violations: Vec<(ExtensionRelation, String)>,
}

impl CharReport {
    pub fn pass(&self) -> bool {
        self.inapplicable.is_empty() && self.violations.is_empty()
    }
}

/// Evaluate the character on every relation vector; a pass certifies the
/// induced map exists on the quotient ring.
pub fn character_well_defined(u: &Universe, tag: CharTag) -> CharReport {
    let mut report = CharReport { tag, inapplicable: Vec::new(), violations: Vec::new() };
    let mut values: BTreeMap<&str, CharValue> = BTreeMap::new();
    for (name, d) in &u.descriptors {
        match evaluate_char(d, tag) {
            Ok(v) => {
                values.insert(name, v);
            }
            Err(e) => report.inapplicable.push((name.clone(), e.to_string())),
        }
    }
    if !report.inapplicable.is_empty() {
        return report;
    }
    for rel in &u.relations {
        let v_mid = values[rel.mid.as_str()].as_rational();
        let v_sub = values[rel.sub.as_str()].as_rational();
        let v_quot = values[rel.quot.as_str()].as_rational();
        let defect = &v_mid - &v_sub - &v_quot;
        if !defect.is_zero() {
            report.violations.push((
                rel.clone(),
                format!("chi(mid) - chi(sub) - chi(quot) = {defect}"),
            ));
        }
    }
    report
}

/// Linear extension of a character to ring elements. Errors unless the
/// character is well defined on the universe.
pub fn eval_character(u: &Universe, e: &RingElement, tag: CharTag) -> Result<CharValue> {
    check_names(u, e)?;
    let report = character_well_defined(u, tag);
    if let Some((name, reason)) = report.inapplicable.first() {
        return Err(Error::CharacterInapplicable(tag.to_string(), name.clone(), reason.clone()));
    }
    if let Some((rel, _)) = report.violations.first() {
        return Err(Error::CharacterNotWellDefined(
            tag.to_string(),
            rel.mid.clone(),
            rel.sub.clone(),
            rel.quot.clone(),
        ));
    }
    let mut total = BigRational::zero();
    for (name, c) in e.coeffs() {
        let v = evaluate_char(u.descriptor(name)?, tag)?.as_rational();
        total += v * BigRational::from_integer(BigInt::from(*c));
    }
    if total.is_integer() && tag != CharTag::Q {
        Ok(CharValue::Int(
            i64::try_from(total.to_integer())
                .map_err(|_| Error::Invalid("character value overflows i64".into()))?,
        ))
    } else {
        Ok(CharValue::Rational(total))
    }
}

/// Result of the triviality sweep.
#[derive(Clone, Debug)]
pub struct SweepReport {
    /// Whether an infinite-sums/products closure flag drove the sweep.
    pub closure_flag_active: bool,
    /// Names of absorber descriptors registered by the sweep.
    pub absorbers_registered: Vec<String>,
    /// Descriptors proved equal to 0 in the quotient.
    pub collapsed: Vec<String>,
    /// Every registered element is 0 (total collapse).
    pub all_trivial: bool,
}

fn absorber_name(a: &str) -> String {
    format!("Dinf({a})")
}

/// K-data of a countable direct sum: free ranks become Z^inf, finite
/// torsion becomes (Z/d)^inf, Q summands aggregate to Q^inf. Z[1/s]
/// sums are read coarsely as Z^inf. Idempotent on its own image.
fn infinite_sum_ext(g: &ExtGroup) -> ExtGroup {
    let mut out = ExtGroup::zero();
    for d in g.zinf_densities() {
        out = out.direct_sum(&ExtGroup::zinf_with_density(d.clone()).expect("density preserved"));
    }
    if g.has_qinf() || g.q_count() > 0 {
        out = out.direct_sum(&ExtGroup::qinf());
    }
    if !g.zloc_parts().is_empty() || g.fg_part().rank() > 0 {
        out = out.direct_sum(&ExtGroup::zinf());
    }
    for d in g.fg_part().torsion() {
        out = out.direct_sum(&ExtGroup::tag(TorsionTag::CyclicInf(d.clone())));
    }
    for t in g.torsion_tags() {
        out = out.direct_sum(&ExtGroup::tag(t.clone()));
    }
    out
}

fn absorber_for(d: &AlgebraDescriptor) -> AlgebraDescriptor {
    let name = absorber_name(&d.name);
    let flags = Flags {
        ktp_class: false,
        finitely_generated_k: false,
        nuclear: d.flags.nuclear,
        separable: d.flags.separable,
        n_real: false,
    };
    match &d.kdata {
        DescriptorKData::Complex(k) => {
            let kdata = KData::new(infinite_sum_ext(&k.k0), infinite_sum_ext(&k.k1));
            let fg = kdata.is_fg();
            AlgebraDescriptor::complex(
                name,
                kdata,
                Flags { finitely_generated_k: fg, ..flags },
            )
            .expect("absorber data is valid")
        }
        DescriptorKData::Real(r) => {
            let zero_k = match r {
                RealKData::Fg(c) => *c == crate::crt::CrtData::zero(),
                RealKData::Rational(q) => *q == crate::crt::RationalCrt::zero(),
            };
            if zero_k {
                AlgebraDescriptor::new(
                    name,
                    d.field_base,
                    DescriptorKData::Real(RealKData::Fg(crate::crt::CrtData::zero())),
                    Flags { finitely_generated_k: true, ..flags },
                )
                .expect("zero absorber")
            } else {
                AlgebraDescriptor::new(name, d.field_base, DescriptorKData::Opaque, flags)
                    .expect("opaque absorber")
            }
        }
        DescriptorKData::Opaque => {
            AlgebraDescriptor::new(name, d.field_base, DescriptorKData::Opaque, flags)
                .expect("opaque absorber")
        }
    }
}

/// If a closure flag is set, register the absorption relation
/// (A, D_A, D_A) for every descriptor (and (D, D, D) for each absorber,
/// since an infinite sum absorbs itself): every element becomes 0.
/// Without closure flags, only separable nuclear fg-K descriptors with
/// vanishing K-theory collapse, since their infinite sums keep finitely
/// generated (trivial) K-theory and stay in the class.
pub fn triviality_sweep(u: &mut Universe) -> Result<SweepReport> {
    let closure = u.infinite_sums || u.infinite_products;
    let originals: Vec<String> = u.descriptors.keys().cloned().collect();
    let mut absorbers = Vec::new();

    if closure {
        for name in &originals {
            let d = u.descriptor(name)?.clone();
            let abs = absorber_for(&d);
            let abs_name = abs.name.clone();
            if !u.descriptors.contains_key(&abs_name) {
                u.register(abs)?;
                absorbers.push(abs_name.clone());
            }
            u.add_relation(name, &abs_name, &abs_name, false)?;
            // an infinite sum absorbs itself: D + D = D
            u.add_relation(&abs_name, &abs_name, &abs_name, false)?;
        }
    } else {
        for name in &originals {
            let d = u.descriptor(name)?.clone();
            let k_trivial = match &d.kdata {
                DescriptorKData::Complex(k) => k.is_zero(),
                DescriptorKData::Real(RealKData::Fg(c)) => *c == crate::crt::CrtData::zero(),
                DescriptorKData::Real(RealKData::Rational(q)) => *q == crate::crt::RationalCrt::zero(),
                DescriptorKData::Opaque => false,
            };
            let in_class = d.flags.separable && d.flags.nuclear && d.flags.finitely_generated_k;
            if k_trivial && in_class {
                let abs = absorber_for(&d);
                let abs_name = abs.name.clone();
                if !u.descriptors.contains_key(&abs_name) {
                    u.register(abs)?;
                    absorbers.push(abs_name.clone());
                }
                u.add_relation(name, &abs_name, &abs_name, false)?;
                u.add_relation(&abs_name, &abs_name, &abs_name, false)?;
            }
        }
    }

    let zero = RingElement::zero();
    let mut collapsed = Vec::new();
    let mut all = true;
    for name in u.names().into_iter().map(str::to_string).collect::<Vec<_>>() {
        if equal_mod_relations(u, &RingElement::generator(&name), &zero)? {
            collapsed.push(name);
        } else {
            all = false;
        }
    }
    Ok(SweepReport {
        closure_flag_active: closure,
        absorbers_registered: absorbers,
        collapsed,
        all_trivial: all,
    })
}

/// Verdict of the K-level idempotent test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdempotentVerdict {
    IdempotentAtK,
    NotIdempotent,
    Inconclusive,
}

impl std::fmt::Display for IdempotentVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IdempotentVerdict::IdempotentAtK => write!(f, "idempotent_at_K"),
            IdempotentVerdict::NotIdempotent => write!(f, "not_idempotent"),
            IdempotentVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Compare K(a (x) a) with K(a). Free ranks decide negatively even under
/// extension ambiguity; a positive verdict needs the extension forced.
pub fn detect_idempotent(a: &AlgebraDescriptor) -> Result<IdempotentVerdict> {
    match &a.kdata {
        DescriptorKData::Complex(k) => {
            if !a.flags.ktp_class {
                return Err(Error::KtpHypothesis);
            }
            let r = kunneth_tensor(a, a)?;
            for (comp, own) in [(&r.k0, &k.k0), (&r.k1, &k.k1)] {
                let own_rank = match own.q_dim() {
                    Some(d) => RankClass::Finite(d),
                    None => RankClass::CountablyInfinite,
                };
                if comp.free_rank != own_rank {
                    return Ok(IdempotentVerdict::NotIdempotent);
                }
            }
            if r.k0.ambiguous || r.k1.ambiguous {
                return Ok(IdempotentVerdict::Inconclusive);
            }
            let same = r.k0.resolved.as_ref() == Some(&k.k0) && r.k1.resolved.as_ref() == Some(&k.k1);
            Ok(if same { IdempotentVerdict::IdempotentAtK } else { IdempotentVerdict::NotIdempotent })
        }
        DescriptorKData::Real(r) => {
            if !a.flags.n_real {
                return Err(Error::RealBootstrapHypothesis);
            }
            let own = match r {
                RealKData::Fg(c) => c.rationalize(),
                RealKData::Rational(q) => q.clone(),
            };
            validate_rank_consistency(&own)?;
            let res = real_kunneth_tensor(a, a)?;
            if res.free != own {
                return Ok(IdempotentVerdict::NotIdempotent);
            }
            let torsion_free = match r {
                RealKData::Fg(c) => c.is_torsion_free(),
                RealKData::Rational(_) => true,
            };
            if torsion_free && !res.torsion_componentwise_approximation {
                Ok(IdempotentVerdict::IdempotentAtK)
            } else {
                Ok(IdempotentVerdict::Inconclusive)
            }
        }
        DescriptorKData::Opaque => Err(Error::Invalid(format!(
            "descriptor `{}` carries no explicit K-data",
            a.name
        ))),
    }
}
