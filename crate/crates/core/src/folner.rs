//! Countably generated abelian group descriptors and the renormalized
//! rank machinery built on Folner sequences.
//!
//! An `ExtGroup` is a formal direct sum of Z^inf summands (each carrying a
//! declared density in [0,1]), Q^inf and Q summands, Z[1/s] subgroups of Q
//! tagged by supernatural numbers, a finitely generated part, and symbolic
//! infinite-torsion tags. The symbolic q function reads the maximal Z^inf
//! density; finitely generated parts, divisible parts, and torsion all
//! contribute zero. Densities are user-declared data: the paper's q
//! depends on the chosen generating sequence, which is not intrinsic to
//! the group, so the descriptor carries it explicitly.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::abgroup::{ln_biguint, FgAbGroup};
use crate::error::Error;
use crate::homalg::PresentedGroup;
use crate::matrix::smith_normal_form;
use crate::uhf::{parse_supernatural, Supernatural};
use crate::Result;

/// Symbolic labels for infinite torsion groups.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TorsionTag {
    /// Q/Z
    QOverZ,
    /// The Pruefer group Z(p^inf).
    Prufer(u64),
    /// A countable direct sum (Z/d)^inf.
    CyclicInf(BigUint),
}

impl std::fmt::Display for TorsionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TorsionTag::QOverZ => write!(f, "Q/Z"),
            TorsionTag::Prufer(p) => write!(f, "Z({p}^inf)"),
            TorsionTag::CyclicInf(d) => write!(f, "(Z/{d})^inf"),
        }
    }
}

/// Countably generated abelian group descriptor.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtGroup {
    /// One density per Z^inf summand, each in [0,1], sorted descending.
    zinf: Vec<BigRational>,
    /// Whether a Q^inf aggregate is present (infinite Q-dimension).
    qinf: bool,
    /// Number of Q summands.
    q_count: u64,
    /// Z[1/s] summands for non-finite supernatural s, sorted.
    zloc: Vec<Supernatural>,
    /// Finitely generated part.
    fg: FgAbGroup,
    /// Infinite-torsion labels, sorted and deduplicated.
    tags: Vec<TorsionTag>,
}

impl ExtGroup {
    pub fn zero() -> Self {
        Self::from_fg(FgAbGroup::trivial())
    }

    pub fn from_fg(fg: FgAbGroup) -> Self {
        ExtGroup { zinf: Vec::new(), qinf: false, q_count: 0, zloc: Vec::new(), fg, tags: Vec::new() }
    }

    /// Z^inf with the default density 1.
    pub fn zinf() -> Self {
        Self::zinf_with_density(BigRational::one()).expect("density 1 is valid")
    }

    pub fn zinf_with_density(d: BigRational) -> Result<Self> {
        if d.is_negative() || d > BigRational::one() {
            return Err(Error::InvalidDensity(d.to_string()));
        }
        let mut g = Self::zero();
        g.zinf.push(d);
        Ok(g)
    }

    /// A single Q summand.
    pub fn q() -> Self {
        let mut g = Self::zero();
        g.q_count = 1;
        g
    }

    /// The aggregate Q^inf (countably infinite Q-dimension, q value 0).
    pub fn qinf() -> Self {
        let mut g = Self::zero();
        g.qinf = true;
        g
    }

    /// Z[1/s]. Finite s collapses to Z and the universal s to Q, so the
    /// stored tag always names a group strictly between them.
    pub fn zloc(s: Supernatural) -> Self {
        if s.is_finite() {
            return Self::from_fg(FgAbGroup::free(1));
        }
        if s.is_universal() {
            return Self::q();
        }
        let mut g = Self::zero();
        g.zloc.push(s);
        g
    }

    pub fn tag(t: TorsionTag) -> Self {
        let mut g = Self::zero();
        if let TorsionTag::CyclicInf(d) = &t {
            if d.is_one() {
                return g;
            }
        }
        g.tags.push(t);
        g
    }

    pub fn zinf_count(&self) -> usize {
        self.zinf.len()
    }

    pub fn zinf_densities(&self) -> &[BigRational] {
        &self.zinf
    }

    pub fn has_qinf(&self) -> bool {
        self.qinf
    }

    pub fn q_count(&self) -> u64 {
        self.q_count
    }

    pub fn zloc_parts(&self) -> &[Supernatural] {
        &self.zloc
    }

    pub fn fg_part(&self) -> &FgAbGroup {
        &self.fg
    }

    pub fn torsion_tags(&self) -> &[TorsionTag] {
        &self.tags
    }

    pub fn is_zero(&self) -> bool {
        self.zinf.is_empty()
            && !self.qinf
            && self.q_count == 0
            && self.zloc.is_empty()
            && self.fg.is_trivial()
            && self.tags.is_empty()
    }

    /// A descriptor with no infinite summands is interchangeable with its
    /// finitely generated part.
    pub fn is_fg(&self) -> bool {
        self.zinf.is_empty() && !self.qinf && self.q_count == 0 && self.zloc.is_empty() && self.tags.is_empty()
    }

    pub fn as_fg(&self) -> Option<&FgAbGroup> {
        self.is_fg().then_some(&self.fg)
    }

    /// Only torsion: q, rank, and Q-dimension all vanish.
    pub fn is_torsion(&self) -> bool {
        self.zinf.is_empty() && !self.qinf && self.q_count == 0 && self.zloc.is_empty() && self.fg.rank() == 0
    }

    /// The symbolic renormalized rank: the maximal declared Z^inf density,
    /// zero when no Z^inf summand is present. Finitely generated parts,
    /// Q summands, Z[1/s], and torsion contribute nothing.
    pub fn q_value(&self) -> BigRational {
        self.zinf.iter().max().cloned().unwrap_or_else(BigRational::zero)
    }

    /// dim_Q of the descriptor tensored with Q; None when infinite.
    pub fn q_dim(&self) -> Option<u64> {
        if !self.zinf.is_empty() || self.qinf {
            return None;
        }
        Some(self.fg.rank() + self.q_count + self.zloc.len() as u64)
    }

    fn canonicalize(&mut self) {
        self.zinf.sort_by(|a, b| b.cmp(a));
        self.zloc.sort();
        self.tags.retain(|t| !matches!(t, TorsionTag::CyclicInf(d) if d.is_one()));
        self.tags.sort();
        self.tags.dedup();
    }

    /// Component-wise merge of the two descriptors.
    pub fn direct_sum(&self, other: &ExtGroup) -> ExtGroup {
        let mut out = ExtGroup {
            zinf: [self.zinf.clone(), other.zinf.clone()].concat(),
            qinf: self.qinf || other.qinf,
            q_count: self.q_count + other.q_count,
            zloc: [self.zloc.clone(), other.zloc.clone()].concat(),
            fg: self.fg.direct_sum(&other.fg),
            tags: [self.tags.clone(), other.tags.clone()].concat(),
        };
        out.canonicalize();
        out
    }

    /// Symbolic tensor product, distributing over the component sums.
    pub fn tensor(&self, other: &ExtGroup) -> ExtGroup {
        let mut acc = ExtGroup::zero();
        let a_parts = self.components();
        let b_parts = other.components();
        for a in &a_parts {
            for b in &b_parts {
                acc = acc.direct_sum(&tensor_components(a, b));
            }
        }
        acc
    }

    /// Symbolic Tor_1. Free and divisible torsion-free parts are flat;
    /// only torsion against torsion survives.
    pub fn tor(&self, other: &ExtGroup) -> ExtGroup {
        let mut acc = ExtGroup::zero();
        for a in &self.components() {
            for b in &other.components() {
                acc = acc.direct_sum(&tor_components(a, b));
            }
        }
        acc
    }

    fn components(&self) -> Vec<Component> {
        let mut out = Vec::new();
        for d in &self.zinf {
            out.push(Component::Zinf(d.clone()));
        }
        if self.qinf {
            out.push(Component::Qinf);
        }
        for _ in 0..self.q_count {
            out.push(Component::Q);
        }
        for s in &self.zloc {
            out.push(Component::ZLoc(s.clone()));
        }
        if !self.fg.is_trivial() {
            out.push(Component::Fg(self.fg.clone()));
        }
        for t in &self.tags {
            out.push(Component::Tag(t.clone()));
        }
        out
    }
}

impl std::fmt::Debug for ExtGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for ExtGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        for d in &self.zinf {
            if d.is_one() {
                parts.push("Zinf".into());
            } else {
                parts.push(format!("Zinf[d={d}]"));
            }
        }
        if self.qinf {
            parts.push("Q^inf".into());
        }
        match self.q_count {
            0 => {}
            1 => parts.push("Q".into()),
            k => parts.push(format!("Q^{k}")),
        }
        for s in &self.zloc {
            parts.push(format!("zloc({s})"));
        }
        if !self.fg.is_trivial() {
            parts.push(self.fg.to_string());
        }
        for t in &self.tags {
            parts.push(format!("tag({t})"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone)]
enum Component {
    Zinf(BigRational),
    Qinf,
    Q,
    ZLoc(Supernatural),
    Fg(FgAbGroup),
    Tag(TorsionTag),
}

fn tensor_components(a: &Component, b: &Component) -> ExtGroup {
    use Component::*;
    match (a, b) {
        (Zinf(d), Zinf(e)) => ExtGroup::zinf_with_density(d * e).expect("product of densities"),
        (Zinf(_), Qinf) | (Qinf, Zinf(_)) | (Qinf, Qinf) => ExtGroup::qinf(),
        (Zinf(_), Q) | (Q, Zinf(_)) => ExtGroup::qinf(),
        (Zinf(d), ZLoc(_)) | (ZLoc(_), Zinf(d)) => {
            // Z[1/s]^(inf): read as a Z^inf summand with the same density
            ExtGroup::zinf_with_density(d.clone()).expect("density preserved")
        }
        (Zinf(d), Fg(g)) | (Fg(g), Zinf(d)) => {
            let mut out = ExtGroup::zero();
            if g.rank() >= 1 {
                // (Z^inf)^k collapses back to Z^inf
                out = out.direct_sum(&ExtGroup::zinf_with_density(d.clone()).expect("density"));
            }
            for m in g.torsion() {
                out = out.direct_sum(&ExtGroup::tag(TorsionTag::CyclicInf(m.clone())));
            }
            out
        }
        (Zinf(_), Tag(t)) | (Tag(t), Zinf(_)) => ExtGroup::tag(t.clone()),
        (Qinf, Q) | (Q, Qinf) | (Qinf, ZLoc(_)) | (ZLoc(_), Qinf) => ExtGroup::qinf(),
        (Qinf, Fg(g)) | (Fg(g), Qinf) => {
            if g.rank() >= 1 {
                ExtGroup::qinf()
            } else {
                ExtGroup::zero()
            }
        }
        (Qinf, Tag(_)) | (Tag(_), Qinf) => ExtGroup::zero(),
        (Q, Q) => ExtGroup::q(),
        (Q, ZLoc(_)) | (ZLoc(_), Q) => ExtGroup::q(),
        (Q, Fg(g)) | (Fg(g), Q) => {
            let mut out = ExtGroup::zero();
            for _ in 0..g.rank() {
                out = out.direct_sum(&ExtGroup::q());
            }
            out
        }
        (Q, Tag(_)) | (Tag(_), Q) => ExtGroup::zero(),
        (ZLoc(s), ZLoc(t)) => ExtGroup::zloc(s.multiply(t)),
        (ZLoc(s), Fg(g)) | (Fg(g), ZLoc(s)) => {
            let mut out = ExtGroup::zero();
            for _ in 0..g.rank() {
                out = out.direct_sum(&ExtGroup::zloc(s.clone()));
            }
            let survivors = g.torsion().iter().map(|d| s.strip_inverted(d));
            out.direct_sum(&ExtGroup::from_fg(FgAbGroup::from_parts(0, survivors)))
        }
        (ZLoc(s), Tag(t)) | (Tag(t), ZLoc(s)) => match t {
            TorsionTag::QOverZ => ExtGroup::tag(TorsionTag::QOverZ),
            TorsionTag::Prufer(p) => {
                if s.strip_inverted(&BigUint::from(*p)).is_one() {
                    ExtGroup::zero()
                } else {
                    ExtGroup::tag(TorsionTag::Prufer(*p))
                }
            }
            TorsionTag::CyclicInf(d) => ExtGroup::tag(TorsionTag::CyclicInf(s.strip_inverted(d))),
        },
        (Fg(g), Fg(h)) => ExtGroup::from_fg(g.tensor(h)),
        (Fg(g), Tag(t)) | (Tag(t), Fg(g)) => {
            // the free rank replicates the tag; divisible tags kill torsion
            let mut out = ExtGroup::zero();
            if g.rank() >= 1 {
                out = out.direct_sum(&ExtGroup::tag(t.clone()));
            }
            if let TorsionTag::CyclicInf(m) = t {
                for d in g.torsion() {
                    out = out.direct_sum(&ExtGroup::tag(TorsionTag::CyclicInf(d.gcd(m))));
                }
            }
            out
        }
        (Tag(s), Tag(t)) => match (s, t) {
            (TorsionTag::CyclicInf(a), TorsionTag::CyclicInf(b)) => {
                ExtGroup::tag(TorsionTag::CyclicInf(a.gcd(b)))
            }
            // Q/Z and Pruefer groups are divisible; divisible (x) torsion = 0
            _ => ExtGroup::zero(),
        },
    }
}

fn tor_components(a: &Component, b: &Component) -> ExtGroup {
    use Component::*;
    // Free and torsion-free divisible components are flat.
    let torsionish = |c: &Component| -> Option<TorsionPart> {
        match c {
            Fg(g) if !g.torsion().is_empty() => {
                Some(TorsionPart::Fg(FgAbGroup::from_parts(0, g.torsion().to_vec())))
            }
            Tag(t) => Some(TorsionPart::Tag(t.clone())),
            _ => None,
        }
    };
    match (torsionish(a), torsionish(b)) {
        (Some(x), Some(y)) => tor_torsion(&x, &y),
        _ => ExtGroup::zero(),
    }
}

enum TorsionPart {
    Fg(FgAbGroup),
    Tag(TorsionTag),
}

fn tor_torsion(a: &TorsionPart, b: &TorsionPart) -> ExtGroup {
    use TorsionPart::*;
    match (a, b) {
        (Fg(g), Fg(h)) => ExtGroup::from_fg(g.tor(h)),
        (Fg(g), Tag(t)) | (Tag(t), Fg(g)) => {
            let mut out = ExtGroup::zero();
            for d in g.torsion() {
                out = out.direct_sum(&match t {
                    // Tor(Q/Z, G) is the torsion subgroup of G
                    TorsionTag::QOverZ => ExtGroup::from_fg(FgAbGroup::from_parts(0, [d.clone()])),
                    TorsionTag::Prufer(p) => {
                        let p = BigUint::from(*p);
                        let mut part = BigUint::one();
                        let mut m = d.clone();
                        while (&m % &p).is_zero() {
                            m /= &p;
                            part *= &p;
                        }
                        ExtGroup::from_fg(FgAbGroup::from_parts(0, [part]))
                    }
                    TorsionTag::CyclicInf(m) => ExtGroup::tag(TorsionTag::CyclicInf(d.gcd(m))),
                });
            }
            out
        }
        (Tag(s), Tag(t)) => {
            let out = match (s, t) {
                (TorsionTag::QOverZ, other) | (other, TorsionTag::QOverZ) => other.clone(),
                (TorsionTag::Prufer(p), TorsionTag::Prufer(q)) => {
                    if p == q {
                        TorsionTag::Prufer(*p)
                    } else {
                        return ExtGroup::zero();
                    }
                }
                (TorsionTag::Prufer(p), TorsionTag::CyclicInf(m))
                | (TorsionTag::CyclicInf(m), TorsionTag::Prufer(p)) => {
                    let p = BigUint::from(*p);
                    let mut part = BigUint::one();
                    let mut m = m.clone();
                    while (&m % &p).is_zero() {
                        m /= &p;
                        part *= &p;
                    }
                    TorsionTag::CyclicInf(part)
                }
                (TorsionTag::CyclicInf(x), TorsionTag::CyclicInf(y)) => TorsionTag::CyclicInf(x.gcd(y)),
            };
            ExtGroup::tag(out)
        }
    }
}

/// Parse the extended group literal, e.g.
/// `Zinf[d=1/2] + Q^2 + Z^3 + Z/4 + zloc(2^inf) + tag(Q/Z)`.
pub fn parse_ext_group(input: &str) -> Result<ExtGroup> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Invalid("empty group literal".into()));
    }
    if compact == "0" {
        return Ok(ExtGroup::zero());
    }
    let mut out = ExtGroup::zero();
    // split on '+' at paren depth zero: supernatural literals contain none,
    // but tag((Z/2)^inf) nests parens
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in compact.chars() {
        match c {
            '(' | '[' => {
                depth += 1;
                cur.push(c);
            }
            ')' | ']' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            '+' if depth == 0 => {
                terms.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
    }
    terms.push(cur);

    for term in terms {
        let piece = parse_ext_term(&term)?;
        out = out.direct_sum(&piece);
    }
    Ok(out)
}

fn parse_ext_term(term: &str) -> Result<ExtGroup> {
    if term == "0" {
        return Ok(ExtGroup::zero());
    }
    if term == "Zinf" {
        return Ok(ExtGroup::zinf());
    }
    if let Some(rest) = term.strip_prefix("Zinf[d=") {
        let body = rest
            .strip_suffix(']')
            .ok_or_else(|| Error::Invalid(format!("unterminated density in `{term}`")))?;
        let d = parse_rational(body)?;
        return ExtGroup::zinf_with_density(d);
    }
    if term == "Qinf" || term == "Q^inf" {
        return Ok(ExtGroup::qinf());
    }
    if term == "Q" {
        return Ok(ExtGroup::q());
    }
    if let Some(k) = term.strip_prefix("Q^") {
        let k: u64 = k
            .parse()
            .map_err(|_| Error::Invalid(format!("bad Q exponent in `{term}`")))?;
        let mut g = ExtGroup::zero();
        g.q_count = k;
        return Ok(g);
    }
    if let Some(rest) = term.strip_prefix("zloc(") {
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Invalid(format!("unterminated zloc in `{term}`")))?;
        return Ok(ExtGroup::zloc(parse_supernatural(body)?));
    }
    if let Some(rest) = term.strip_prefix("tag(") {
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Invalid(format!("unterminated tag in `{term}`")))?;
        return Ok(ExtGroup::tag(parse_tag(body)?));
    }
    // fall through to the fg literal terms Z, Z^r, Z/d
    let lit = crate::abgroup::parse_group(term)?;
    Ok(ExtGroup::from_fg(lit.group))
}

fn parse_tag(body: &str) -> Result<TorsionTag> {
    if body == "Q/Z" {
        return Ok(TorsionTag::QOverZ);
    }
    if let Some(rest) = body.strip_prefix("Z(") {
        let inner = rest
            .strip_suffix("^inf)")
            .ok_or_else(|| Error::Invalid(format!("bad Pruefer tag `{body}`")))?;
        let p: u64 = inner
            .parse()
            .map_err(|_| Error::Invalid(format!("bad Pruefer prime `{inner}`")))?;
        if !crate::abgroup::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        return Ok(TorsionTag::Prufer(p));
    }
    if let Some(rest) = body.strip_prefix("(Z/") {
        let inner = rest
            .strip_suffix(")^inf")
            .ok_or_else(|| Error::Invalid(format!("bad cyclic-power tag `{body}`")))?;
        let d: BigUint = inner
            .parse()
            .map_err(|_| Error::Invalid(format!("bad cyclic modulus `{inner}`")))?;
        return Ok(TorsionTag::CyclicInf(d));
    }
    Err(Error::Invalid(format!("unrecognized torsion tag `{body}`")))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse()
            .map_err(|_| Error::Invalid(format!("bad rational component `{t}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Invalid("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Folner sequence choices. The interval sequence F_n = {-n..n} lives on
/// Z; the growing boxes G_n = {-N_n..N_n}^n live on Z^inf, with the
/// default schedule N_n = 2^n ("grows sufficiently rapidly").
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FolnerSpec {
    IntervalZ,
    GrowingBoxZinf { radii: RadiusSchedule },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadiusSchedule {
    PowersOfTwo,
    Explicit(Vec<u64>),
}

impl FolnerSpec {
    pub fn growing_box_default() -> Self {
        FolnerSpec::GrowingBoxZinf { radii: RadiusSchedule::PowersOfTwo }
    }

    pub fn explicit_box(radii: Vec<u64>) -> Result<Self> {
        if !radii.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Invalid("radius schedule must be strictly increasing".into()));
        }
        Ok(FolnerSpec::GrowingBoxZinf { radii: RadiusSchedule::Explicit(radii) })
    }

    /// Box radius at sample index n (1-based).
    pub fn radius_at(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::ZeroSampleIndex);
        }
        match self {
            FolnerSpec::IntervalZ => Ok(n),
            FolnerSpec::GrowingBoxZinf { radii: RadiusSchedule::PowersOfTwo } => {
                if n >= 63 {
                    return Err(Error::Invalid("power-of-two radius overflows u64".into()));
                }
                Ok(1u64 << n)
            }
            FolnerSpec::GrowingBoxZinf { radii: RadiusSchedule::Explicit(v) } => v
                .get((n - 1) as usize)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("radius schedule has no entry {n}"))),
        }
    }
}

/// Finite-sample evaluation of ln|K (x) F_n| / ln|F_n| together with the
/// exact limit and the stated error bound.
#[derive(Clone, Debug)]
pub struct RankEstimate {
    /// rank + sum_j ln(min(2n+1, d_j)) / ln(2n+1)
    pub value: f64,
    /// Distance above the limit, ln-exact: value = limit + excess.
    pub excess: f64,
    /// The limit: the free rank of the group.
    pub limit: u64,
    /// sum_j ln(d_j) / ln(2n+1) = ln|torsion| / ln(2n+1), summed term by
    /// term; excess <= error_bound holds exactly in floating point, with
    /// equality once 2n+1 exceeds every invariant factor.
    pub error_bound: f64,
}

/// Closed-form Folner rank estimate along the interval sequence of Z.
/// |K (x) F_n| = (2n+1)^rank * prod_j min(2n+1, d_j), the image of the
/// box under the canonical presentation; for n past the largest torsion
/// order the product is exactly the torsion order.
pub fn rank_limit_estimate(k: &FgAbGroup, spec: &FolnerSpec, n: u64) -> Result<RankEstimate> {
    if !matches!(spec, FolnerSpec::IntervalZ) {
        return Err(Error::Invalid(
            "rank_limit_estimate is defined for the interval_Z Folner sequence".into(),
        ));
    }
    if n == 0 {
        return Err(Error::ZeroSampleIndex);
    }
    let box_size = BigUint::from(2 * n + 1);
    let ln_box = ln_biguint(&box_size);
    // both sums run through the same expressions term by term, so
    // excess <= error_bound holds exactly in floating point, with
    // equality once the box passes every invariant factor
    let mut excess = 0.0f64;
    let mut error_bound = 0.0f64;
    for d in k.torsion() {
        let m = d.min(&box_size);
        excess += ln_biguint(m) / ln_box;
        error_bound += ln_biguint(d) / ln_box;
    }
    Ok(RankEstimate { value: k.rank() as f64 + excess, excess, limit: k.rank(), error_bound })
}

/// Enumeration budget for quotient_folner_image, in box points.
pub const ENUMERATION_BUDGET: u128 = 1_000_000;

/// Exact cardinality of the image of the box Folner set under the
/// quotient map pi: Z^gens -> G. For the growing-box spec at index n only
/// the first min(n, gens) generators participate, per the quotient
/// construction of Folner sets.
pub fn quotient_folner_image(group: &PresentedGroup, spec: &FolnerSpec, n: u64) -> Result<u64> {
    let radius = spec.radius_at(n)?;
    let dims = match spec {
        FolnerSpec::IntervalZ => group.n_gens(),
        FolnerSpec::GrowingBoxZinf { .. } => group.n_gens().min(n as usize),
    };
    let side = 2u128 * radius as u128 + 1;
    let mut total: u128 = 1;
    for _ in 0..dims {
        total = total.saturating_mul(side);
        if total > ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded(total, ENUMERATION_BUDGET));
        }
    }

    // canonical coordinates: y = left * x, reduced mod the invariant factors
    let snf = smith_normal_form(group.relations());
    let diag = &snf.diag;
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut counter = vec![-(BigInt::from(radius)); dims];
    if dims == 0 {
        return Ok(1);
    }
    let radius = BigInt::from(radius);
    'outer: loop {
        // reduce the transformed point
        let mut x = vec![BigInt::zero(); group.n_gens()];
        for (i, c) in counter.iter().enumerate() {
            x[i] = c.clone();
        }
        let y = snf.left.mul_vec(&x);
        let key: Vec<BigInt> = y
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i < diag.len() {
                    v.mod_floor(&diag[i])
                } else {
                    v.clone()
                }
            })
            .collect();
        seen.insert(key);

        // odometer step
        for i in 0..dims {
            counter[i] += 1;
            if counter[i] <= radius {
                continue 'outer;
            }
            counter[i] = -radius.clone();
        }
        break;
    }
    Ok(seen.len() as u64)
}

/// ext_direct_sum as a free function, mirroring the operation table.
pub fn ext_direct_sum(a: &ExtGroup, b: &ExtGroup) -> ExtGroup {
    a.direct_sum(b)
}

/// ext_tensor as a free function, mirroring the operation table.
pub fn ext_tensor(a: &ExtGroup, b: &ExtGroup) -> ExtGroup {
    a.tensor(b)
}
