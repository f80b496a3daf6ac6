//! Complex K-theory data of algebra descriptors, the Kunneth tensor
//! engine, and the characters built on ranks: the Euler character, the
//! universal-UHF character, the p-primary characters, and the two
//! Folner-rank characters R and Q.
//!
//! Sign convention: all rank characters are taken as (K_0 value) minus
//! (K_1 value), which sends the complex numbers to 1 and makes the
//! multiplicativity statements come out right.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::crt::RealKData;
use crate::error::Error;
use crate::folner::{rank_limit_estimate, ExtGroup, FolnerSpec};
use crate::homalg::{CyclicSequence, GroupHom};
use crate::Result;

/// Graded complex K-theory pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KData {
    pub k0: ExtGroup,
    pub k1: ExtGroup,
}

impl KData {
    pub fn new(k0: ExtGroup, k1: ExtGroup) -> Self {
        KData { k0, k1 }
    }

    pub fn zero() -> Self {
        KData { k0: ExtGroup::zero(), k1: ExtGroup::zero() }
    }

    pub fn is_fg(&self) -> bool {
        self.k0.is_fg() && self.k1.is_fg()
    }

    pub fn is_zero(&self) -> bool {
        self.k0.is_zero() && self.k1.is_zero()
    }
}

impl std::fmt::Display for KData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(K0 = {}, K1 = {})", self.k0, self.k1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldBase {
    Complex,
    Real,
    Quaternion,
}

impl std::fmt::Display for FieldBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldBase::Complex => write!(f, "complex"),
            FieldBase::Real => write!(f, "real"),
            FieldBase::Quaternion => write!(f, "quaternion"),
        }
    }
}

/// Class-membership assertions carried by a descriptor. These are user
/// asserted, not derived: KTP/UCT membership is not decidable from K-data.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub ktp_class: bool,
    pub finitely_generated_k: bool,
    pub nuclear: bool,
    pub separable: bool,
    /// Real bootstrap class membership (used by the real Kunneth engine).
    pub n_real: bool,
}

/// K-theoretic stand-in for a C*-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    pub name: String,
    pub field_base: FieldBase,
    pub kdata: DescriptorKData,
    pub flags: Flags,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescriptorKData {
    Complex(KData),
    Real(RealKData),
    /// K-data not expressible in the descriptor language (used for
    /// infinite-sum absorbers of real algebras with nonzero K-theory).
    /// Every character and tensor operation refuses it by name.
    Opaque,
}

impl AlgebraDescriptor {
    pub fn new(
        name: impl Into<String>,
        field_base: FieldBase,
        kdata: DescriptorKData,
        flags: Flags,
    ) -> Result<Self> {
        match (&field_base, &kdata) {
            (FieldBase::Complex, DescriptorKData::Complex(_)) => {}
            (FieldBase::Real | FieldBase::Quaternion, DescriptorKData::Real(_)) => {}
            (_, DescriptorKData::Opaque) => {}
            _ => {
                return Err(Error::Invalid(
                    "field base and K-data kind do not match".into(),
                ))
            }
        }
        if flags.finitely_generated_k {
            let fg = match &kdata {
                DescriptorKData::Complex(k) => k.is_fg(),
                DescriptorKData::Real(r) => r.is_fg(),
                DescriptorKData::Opaque => false,
            };
            if !fg {
                return Err(Error::Invalid(
                    "finitely_generated_K flag set but the K-data has infinite summands".into(),
                ));
            }
        }
        Ok(AlgebraDescriptor { name: name.into(), field_base, kdata, flags })
    }

    pub fn complex(name: impl Into<String>, kdata: KData, flags: Flags) -> Result<Self> {
        Self::new(name, FieldBase::Complex, DescriptorKData::Complex(kdata), flags)
    }

    pub fn complex_kdata(&self) -> Result<&KData> {
        match &self.kdata {
            DescriptorKData::Complex(k) => Ok(k),
            _ => Err(Error::Invalid(format!(
                "descriptor `{}` carries no complex K-data",
                self.name
            ))),
        }
    }

    pub fn real_kdata(&self) -> Result<&RealKData> {
        match &self.kdata {
            DescriptorKData::Real(r) => Ok(r),
            _ => Err(Error::Invalid(format!(
                "descriptor `{}` carries no real united K-data",
                self.name
            ))),
        }
    }

    fn fg_complex(&self) -> Result<(&crate::FgAbGroup, &crate::FgAbGroup)> {
        let k = self.complex_kdata()?;
        match (k.k0.as_fg(), k.k1.as_fg()) {
            (Some(a), Some(b)) if self.flags.finitely_generated_k => Ok((a, b)),
            _ => Err(Error::NotFinitelyGenerated),
        }
    }
}

/// Free-rank class of a Kunneth term: the Q-dimension, finite or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankClass {
    Finite(u64),
    CountablyInfinite,
}

impl std::fmt::Display for RankClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankClass::Finite(r) => write!(f, "{r}"),
            RankClass::CountablyInfinite => write!(f, "inf"),
        }
    }
}

/// Torsion order of a Kunneth term: a finite integer or a symbolic tag
/// when infinite torsion labels are involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionOrderClass {
    Finite(BigUint),
    Symbolic(String),
}

impl std::fmt::Display for TorsionOrderClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TorsionOrderClass::Finite(n) => write!(f, "{n}"),
            TorsionOrderClass::Symbolic(s) => write!(f, "{s}"),
        }
    }
}

/// One degree of the Kunneth short exact sequence
/// 0 -> sub -> K_deg(A (x) B) -> quot -> 0.
#[derive(Clone, Debug)]
pub struct KunnethComponent {
    /// The subgroup term: a tensor sum.
    pub sub: ExtGroup,
    /// The quotient term: a Tor sum, always torsion.
    pub quot: ExtGroup,
    /// Free rank (Q-dimension) of the middle group; determined exactly.
    pub free_rank: RankClass,
    /// Torsion order class of the middle group under the split reading.
    pub torsion_order: TorsionOrderClass,
    /// Whether the extension leaves the middle group undetermined.
    pub ambiguous: bool,
    /// The middle group when the extension is forced.
    pub resolved: Option<ExtGroup>,
}

/// Per-degree Kunneth data for K(A (x) B).
#[derive(Clone, Debug)]
pub struct KunnethResult {
    pub k0: KunnethComponent,
    pub k1: KunnethComponent,
}

impl KunnethResult {
    /// Rank character of the product: free rank K0 minus free rank K1.
    /// This is what both chi_1 and chi_2 read off the Kunneth data.
    pub fn rank_character(&self) -> Result<i64> {
        match (&self.k0.free_rank, &self.k1.free_rank) {
            (RankClass::Finite(a), RankClass::Finite(b)) => Ok(*a as i64 - *b as i64),
            _ => Err(Error::InfiniteQDimension),
        }
    }

    /// The product's K-data under the split reading of the extension;
    /// exact whenever neither degree is ambiguous.
    pub fn kdata_split(&self) -> KData {
        KData::new(self.k0.sub.direct_sum(&self.k0.quot), self.k1.sub.direct_sum(&self.k1.quot))
    }
}

fn component(sub: ExtGroup, quot: ExtGroup) -> KunnethComponent {
    debug_assert!(quot.is_torsion(), "Tor terms are torsion");
    let free_rank = match sub.q_dim() {
        Some(d) => RankClass::Finite(d),
        None => RankClass::CountablyInfinite,
    };
    let torsion_order = {
        let finite =
            sub.fg_part().torsion_order() * quot.fg_part().torsion_order();
        if sub.torsion_tags().is_empty() && quot.torsion_tags().is_empty() {
            TorsionOrderClass::Finite(finite)
        } else {
            let tags: Vec<String> = sub
                .torsion_tags()
                .iter()
                .chain(quot.torsion_tags())
                .map(|t| t.to_string())
                .collect();
            TorsionOrderClass::Symbolic(format!("{} * {}", finite, tags.join(" * ")))
        }
    };
    let resolved = forced_extension(&sub, &quot);
    let ambiguous = resolved.is_none();
    KunnethComponent { sub, quot, free_rank, torsion_order, ambiguous, resolved }
}

/// The middle group of 0 -> sub -> G -> quot -> 0 when only one group
/// fits: trivial quotient, trivial subgroup, an injective (divisible
/// torsion-free) subgroup, or coprime finite torsion against the
/// subgroup's torsion with no free part.
fn forced_extension(sub: &ExtGroup, quot: &ExtGroup) -> Option<ExtGroup> {
    if quot.is_zero() {
        return Some(sub.clone());
    }
    if sub.is_zero() {
        return Some(quot.clone());
    }
    let divisible_torsion_free = sub.zinf_count() == 0
        && sub.zloc_parts().is_empty()
        && sub.fg_part().is_trivial()
        && sub.torsion_tags().is_empty();
    if divisible_torsion_free {
        return Some(sub.direct_sum(quot));
    }
    if sub.is_fg() && quot.is_fg() && sub.fg_part().rank() == 0 {
        let a = sub.fg_part().torsion_order();
        let b = quot.fg_part().torsion_order();
        if num_integer::Integer::gcd(&a, &b).is_one() {
            return Some(sub.direct_sum(quot));
        }
    }
    None
}

/// Kunneth data for K(A (x) B). Requires the KTP hypothesis on at least
/// one factor.
pub fn kunneth_tensor(a: &AlgebraDescriptor, b: &AlgebraDescriptor) -> Result<KunnethResult> {
    if !(a.flags.ktp_class || b.flags.ktp_class) {
        return Err(Error::KtpHypothesis);
    }
    let ka = a.complex_kdata()?;
    let kb = b.complex_kdata()?;
    Ok(kunneth_kdata(ka, kb))
}

/// The Kunneth terms at the K-data level, with no class hypotheses.
pub fn kunneth_kdata(a: &KData, b: &KData) -> KunnethResult {
    let k0_sub = a.k0.tensor(&b.k0).direct_sum(&a.k1.tensor(&b.k1));
    let k0_quot = a.k0.tor(&b.k1).direct_sum(&a.k1.tor(&b.k0));
    let k1_sub = a.k0.tensor(&b.k1).direct_sum(&a.k1.tensor(&b.k0));
    let k1_quot = a.k0.tor(&b.k0).direct_sum(&a.k1.tor(&b.k1));
    KunnethResult { k0: component(k0_sub, k0_quot), k1: component(k1_sub, k1_quot) }
}

/// Euler character: rank K_0 - rank K_1 on fg K-theory.
pub fn chi_euler(a: &AlgebraDescriptor) -> Result<i64> {
    let (k0, k1) = a.fg_complex()?;
    Ok(k0.rank() as i64 - k1.rank() as i64)
}

/// The universal-UHF character: Q-dimensions of K(A (x) U) = K(A) (x) Q.
/// Torsion dies, Z^k becomes Q^k, and Z[1/s] becomes Q. Defined whenever
/// both Q-dimensions are finite.
pub fn chi_u(a: &AlgebraDescriptor) -> Result<i64> {
    let k = a.complex_kdata()?;
    match (k.k0.q_dim(), k.k1.q_dim()) {
        (Some(d0), Some(d1)) => Ok(d0 as i64 - d1 as i64),
        _ => Err(Error::InfiniteQDimension),
    }
}

/// Which reading of "the p-power part" chi_p uses. The paper never fixes
/// whether localization, the p-adics, or Z/p is meant; the p-primary
/// torsion subgroup keeps cardinalities finite and is the default, while
/// the (x) Z/p mode also counts the free rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiPMode {
    PPrimary,
    TensorZp,
}

pub fn chi_p(a: &AlgebraDescriptor, p: u64, mode: ChiPMode) -> Result<i64> {
    let (k0, k1) = a.fg_complex()?;
    let (v0, v1) = match mode {
        ChiPMode::PPrimary => (k0.p_primary_log(p)?, k1.p_primary_log(p)?),
        ChiPMode::TensorZp => (k0.tensor_zp_log(p)?, k1.tensor_zp_log(p)?),
    };
    Ok(v0 as i64 - v1 as i64)
}

/// The Folner-rank character at a finite sample index, with its exact
/// limit rank K_0 - rank K_1 and the error bound that ties them.
#[derive(Clone, Debug)]
pub struct CharR {
    pub estimate: f64,
    pub limit: i64,
    pub error_bound: f64,
}

pub fn char_r(a: &AlgebraDescriptor, n: u64) -> Result<CharR> {
    let (k0, k1) = a.fg_complex()?;
    let e0 = rank_limit_estimate(k0, &FolnerSpec::IntervalZ, n)?;
    let e1 = rank_limit_estimate(k1, &FolnerSpec::IntervalZ, n)?;
    Ok(CharR {
        estimate: e0.value - e1.value,
        limit: e0.limit as i64 - e1.limit as i64,
        error_bound: e0.error_bound + e1.error_bound,
    })
}

/// The renormalized-rank character Q(A) = q(K_0) - q(K_1), exact.
pub fn char_q(a: &AlgebraDescriptor) -> Result<BigRational> {
    let k = a.complex_kdata()?;
    Ok(k.k0.q_value() - k.k1.q_value())
}

/// Assemble the K-theory six-term sequence of an extension
/// 0 -> sub -> mid -> quot -> 0 and verify it is exact.
///
/// The maps run K0(sub) -> K0(mid) -> K0(quot) -> K1(sub) -> K1(mid)
/// -> K1(quot) -> K0(sub); each supplied hom must act on presentations
/// whose canonical forms are the descriptors' K-groups.
pub fn six_term_from_extension(
    sub: &AlgebraDescriptor,
    mid: &AlgebraDescriptor,
    quot: &AlgebraDescriptor,
    maps: [GroupHom; 6],
) -> Result<CyclicSequence> {
    let expected = [
        sub.fg_complex()?.0.clone(),
        mid.fg_complex()?.0.clone(),
        quot.fg_complex()?.0.clone(),
        sub.fg_complex()?.1.clone(),
        mid.fg_complex()?.1.clone(),
        quot.fg_complex()?.1.clone(),
    ];
    for (i, m) in maps.iter().enumerate() {
        if m.source().structure() != &expected[i] {
            return Err(Error::Invalid(format!(
                "map {} starts at {} but the descriptor K-group is {}",
                i + 1,
                m.source().structure(),
                expected[i]
            )));
        }
    }
    let groups = std::array::from_fn(|i| maps[i].source().clone());
    let seq = CyclicSequence::new(groups, maps)?;
    if let Some((position, homology)) = seq.first_failure()? {
        return Err(Error::NotExact { position, homology });
    }
    // exactness forces additivity of the rank characters over the extension
    debug_assert_eq!(seq.alternating_sum(crate::homalg::AdditiveTag::Rank)?, 0);
    Ok(seq)
}
