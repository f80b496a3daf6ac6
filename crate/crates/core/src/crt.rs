//! United K-theory (CRT) of real C*-algebra descriptors: the KO/KU/KT
//! triple with periods 8/2/4, even/odd aggregation, the real characters,
//! complexification and quaternionification, the rank-level real Kunneth
//! engine, and the folding of the 24-term long exact sequence into the
//! six-term even/odd cycle.
//!
//! Rationally KO is 4-periodic, and the rational ranks of KU and KT are
//! determined by the KO ranks: u_n = o_n + o_{n+2} and t_n = o_n +
//! o_{n+1} with indices mod 4. Valid united K-data satisfies these rank
//! identities, and the tensor engine works on the 4-periodic rational KO
//! vector by cyclic convolution; the even/odd product formula
//! (even*even + odd*odd -> even, even*odd + odd*even -> odd) is its
//! mod-2 collapse. Torsion of a tensor product is approximated
//! component-wise and flagged as such in every report: the full
//! CRT-category Tor has no computable presentation here.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::abgroup::FgAbGroup;
use crate::error::Error;
use crate::homalg::{fold, CyclicSequence, FoldedSequence, GroupHom, PresentedGroup};
use crate::kchar::AlgebraDescriptor;
use crate::matrix::IntMatrix;
use crate::Result;

/// United K-theory triple of a real C*-algebra with finitely generated
/// K-theory: KO period 8, KU period 2, KT period 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtData {
    pub ko: [FgAbGroup; 8],
    pub ku: [FgAbGroup; 2],
    pub kt: [FgAbGroup; 4],
}

/// Q-dimensions of a united K-theory triple that is a Q-module (the
/// image of tensoring with the universal real UHF algebra).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCrt {
    pub ko: [u64; 8],
    pub ku: [u64; 2],
    pub kt: [u64; 4],
}

/// K-data of a real descriptor: finitely generated united K-theory, or
/// the rational dimensions of a Q-module (the universal real UHF case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealKData {
    Fg(CrtData),
    Rational(RationalCrt),
}

impl RealKData {
    pub fn is_fg(&self) -> bool {
        matches!(self, RealKData::Fg(_))
    }
}

impl CrtData {
    pub fn zero() -> Self {
        let z = FgAbGroup::trivial;
        CrtData {
            ko: std::array::from_fn(|_| z()),
            ku: std::array::from_fn(|_| z()),
            kt: std::array::from_fn(|_| z()),
        }
    }

    pub fn direct_sum(&self, other: &CrtData) -> CrtData {
        CrtData {
            ko: std::array::from_fn(|i| self.ko[i].direct_sum(&other.ko[i])),
            ku: std::array::from_fn(|i| self.ku[i].direct_sum(&other.ku[i])),
            kt: std::array::from_fn(|i| self.kt[i].direct_sum(&other.kt[i])),
        }
    }

    /// Degree rotation by k (suspension-style index bookkeeping).
    pub fn shift(&self, k: usize) -> CrtData {
        CrtData {
            ko: std::array::from_fn(|i| self.ko[(i + k) % 8].clone()),
            ku: std::array::from_fn(|i| self.ku[(i + k) % 2].clone()),
            kt: std::array::from_fn(|i| self.kt[(i + k) % 4].clone()),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        self.ko.iter().all(FgAbGroup::is_free)
            && self.ku.iter().all(FgAbGroup::is_free)
            && self.kt.iter().all(FgAbGroup::is_free)
    }

    /// The Q-dimensions after killing torsion; this is united K-theory
    /// of the tensor with the universal real UHF algebra.
    pub fn rationalize(&self) -> RationalCrt {
        RationalCrt {
            ko: std::array::from_fn(|i| self.ko[i].rank()),
            ku: std::array::from_fn(|i| self.ku[i].rank()),
            kt: std::array::from_fn(|i| self.kt[i].rank()),
        }
    }
}

impl RationalCrt {
    pub fn zero() -> Self {
        RationalCrt { ko: [0; 8], ku: [0; 2], kt: [0; 4] }
    }
}

/// The even/odd direct sums entering the real characters:
/// KO_even = KO_0 + KO_2 + KO_4 + KO_6, KU_even = KU_0,
/// KT_even = KT_0 + KT_2, and the odd analogues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenOddSplit {
    pub ko_even: FgAbGroup,
    pub ko_odd: FgAbGroup,
    pub ku_even: FgAbGroup,
    pub ku_odd: FgAbGroup,
    pub kt_even: FgAbGroup,
    pub kt_odd: FgAbGroup,
}

pub fn even_odd(c: &CrtData) -> EvenOddSplit {
    let sum = |gs: &[&FgAbGroup]| {
        gs.iter().fold(FgAbGroup::trivial(), |acc, g| acc.direct_sum(g))
    };
    EvenOddSplit {
        ko_even: sum(&[&c.ko[0], &c.ko[2], &c.ko[4], &c.ko[6]]),
        ko_odd: sum(&[&c.ko[1], &c.ko[3], &c.ko[5], &c.ko[7]]),
        ku_even: c.ku[0].clone(),
        ku_odd: c.ku[1].clone(),
        kt_even: c.kt[0].direct_sum(&c.kt[2]),
        kt_odd: c.kt[1].direct_sum(&c.kt[3]),
    }
}

/// chi_1^R: the even-minus-odd alternating combination
/// (rk KO_even - rk KU_even + rk KT_even) - (the odd analogue).
/// This convention sends both R and H to 1 and C-as-real to 2.
pub fn chi1_real(c: &CrtData) -> i64 {
    let s = even_odd(c);
    let even = s.ko_even.rank() as i64 - s.ku_even.rank() as i64 + s.kt_even.rank() as i64;
    let odd = s.ko_odd.rank() as i64 - s.ku_odd.rank() as i64 + s.kt_odd.rank() as i64;
    even - odd
}

/// The same alternating combination on Q-dimensions.
pub fn chi_real_dims(c: &RationalCrt) -> i64 {
    let even = (c.ko[0] + c.ko[2] + c.ko[4] + c.ko[6]) as i64 - c.ku[0] as i64
        + (c.kt[0] + c.kt[2]) as i64;
    let odd = (c.ko[1] + c.ko[3] + c.ko[5] + c.ko[7]) as i64 - c.ku[1] as i64
        + (c.kt[1] + c.kt[3]) as i64;
    even - odd
}

/// chi_2^R on the united K-theory of A (x) U_r. The input must already
/// be a Q-module; torsion is rejected.
pub fn chi2_real(c: &CrtData) -> Result<i64> {
    if !c.is_torsion_free() {
        return Err(Error::TorsionPresent);
    }
    Ok(chi_real_dims(&c.rationalize()))
}

/// Tensoring with the universal real UHF algebra kills torsion and turns
/// every free generator into a Q-dimension.
pub fn tensor_with_universal_real_uhf(c: &CrtData) -> RationalCrt {
    c.rationalize()
}

/// United K-theory of a complex algebra regarded as real:
/// KO_n = K_{n mod 2}(A), KU_n = K_n(A) + K_n(A), KT_n = K_n(A) + K_{n+1}(A).
pub fn complexification(a: &AlgebraDescriptor) -> Result<CrtData> {
    let k = a.complex_kdata()?;
    let (Some(k0), Some(k1)) = (k.k0.as_fg(), k.k1.as_fg()) else {
        return Err(Error::NotFinitelyGenerated);
    };
    let graded = [k0.clone(), k1.clone()];
    Ok(CrtData {
        ko: std::array::from_fn(|n| graded[n % 2].clone()),
        ku: std::array::from_fn(|n| graded[n % 2].direct_sum(&graded[n % 2])),
        kt: std::array::from_fn(|n| graded[n % 2].direct_sum(&graded[(n + 1) % 2])),
    })
}

/// Wood-Karoubi periodicity K_n(A (x) H) = K_{n+4}(A): the KO row shifts
/// by four degrees while KU (4 = 0 mod 2) and KT (4 = 0 mod 4) stay put.
pub fn quaternionify(c: &CrtData) -> CrtData {
    CrtData {
        ko: std::array::from_fn(|n| c.ko[(n + 4) % 8].clone()),
        ku: c.ku.clone(),
        kt: c.kt.clone(),
    }
}

/// The rational KO vector o_0..o_3: KO ranks are 4-periodic rationally.
fn rational_ko4(ko_ranks: &[u64; 8]) -> Result<[u64; 4]> {
    for n in 0..4 {
        if ko_ranks[n] != ko_ranks[n + 4] {
            return Err(Error::NotRationallyPeriodic);
        }
    }
    Ok([ko_ranks[0], ko_ranks[1], ko_ranks[2], ko_ranks[3]])
}

/// Validate the rank identities of united K-data and return the rational
/// KO 4-vector. u_n = o_n + o_{n+2}, t_n = o_n + o_{n+1}.
pub fn validate_rank_consistency(r: &RationalCrt) -> Result<[u64; 4]> {
    let o = rational_ko4(&r.ko)?;
    for n in 0..2usize {
        let expect = o[n] + o[(n + 2) % 4];
        if r.ku[n] != expect {
            return Err(Error::CrtRankInconsistent(format!(
                "KU_{n} has rank {}, expected o_{n} + o_{} = {expect}",
                r.ku[n],
                (n + 2) % 4
            )));
        }
    }
    for n in 0..4usize {
        let expect = o[n] + o[(n + 1) % 4];
        if r.kt[n] != expect {
            return Err(Error::CrtRankInconsistent(format!(
                "KT_{n} has rank {}, expected o_{n} + o_{} = {expect}",
                r.kt[n],
                (n + 1) % 4
            )));
        }
    }
    Ok(o)
}

/// Rank data of one side of a real tensor product.
fn rational_of(r: &RealKData) -> RationalCrt {
    match r {
        RealKData::Fg(c) => c.rationalize(),
        RealKData::Rational(q) => q.clone(),
    }
}

/// Component-wise torsion approximation for one functor degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionApprox {
    /// Product of the component-wise tensor torsion and Tor orders.
    pub order: BigUint,
    /// Set when a nonzero Tor term leaves the extension undetermined.
    pub ambiguous: bool,
}

/// Rank-exact, torsion-approximate united K-theory of A (x) B.
#[derive(Clone, Debug)]
pub struct RealKunnethResult {
    /// Free Q-dimensions, exact via the rational KO convolution.
    pub free: RationalCrt,
    pub ko_torsion: [TorsionApprox; 8],
    pub ku_torsion: [TorsionApprox; 2],
    pub kt_torsion: [TorsionApprox; 4],
    /// Always set when any torsion is reported: component-wise Tor is an
    /// approximation of the CRT-category Tor.
    pub torsion_componentwise_approximation: bool,
}

impl RealKunnethResult {
    pub fn rank_character(&self) -> i64 {
        chi_real_dims(&self.free)
    }
}

fn torsion_convolution<const P: usize>(a: &[FgAbGroup; P], b: &[FgAbGroup; P]) -> [TorsionApprox; P] {
    std::array::from_fn(|n| {
        let mut tensor_part = FgAbGroup::trivial();
        let mut tor_part = FgAbGroup::trivial();
        for i in 0..P {
            for j in 0..P {
                if (i + j) % P == n {
                    tensor_part = tensor_part.direct_sum(&a[i].tensor(&b[j]));
                }
                if (i + j) % P == (n + 1) % P {
                    tor_part = tor_part.direct_sum(&a[i].tor(&b[j]));
                }
            }
        }
        let order = tensor_part.torsion_order() * tor_part.torsion_order();
        TorsionApprox { order, ambiguous: !tor_part.is_trivial() }
    })
}

/// Rank-level real Kunneth tensor. Needs the real bootstrap flag on at
/// least one factor and rank-consistent united K-data on both.
pub fn real_kunneth_tensor(
    a: &AlgebraDescriptor,
    b: &AlgebraDescriptor,
) -> Result<RealKunnethResult> {
    if !(a.flags.n_real || b.flags.n_real) {
        return Err(Error::RealBootstrapHypothesis);
    }
    let ra = a.real_kdata()?;
    let rb = b.real_kdata()?;
    let qa = rational_of(ra);
    let qb = rational_of(rb);
    let oa = validate_rank_consistency(&qa)?;
    let ob = validate_rank_consistency(&qb)?;

    // cyclic convolution of the rational KO vectors mod 4
    let mut o = [0u64; 4];
    for i in 0..4 {
        for j in 0..4 {
            o[(i + j) % 4] += oa[i] * ob[j];
        }
    }
    let free = RationalCrt {
        ko: std::array::from_fn(|n| o[n % 4]),
        ku: std::array::from_fn(|n| o[n % 4] + o[(n + 2) % 4]),
        kt: std::array::from_fn(|n| o[n % 4] + o[(n + 1) % 4]),
    };

    let (ko_t, ku_t, kt_t, approx) = match (ra, rb) {
        (RealKData::Fg(ca), RealKData::Fg(cb)) => {
            let ko = torsion_convolution(&ca.ko, &cb.ko);
            let ku = torsion_convolution(&ca.ku, &cb.ku);
            let kt = torsion_convolution(&ca.kt, &cb.kt);
            let any = ko.iter().any(|t| !t.order.is_one())
                || ku.iter().any(|t| !t.order.is_one())
                || kt.iter().any(|t| !t.order.is_one());
            (ko, ku, kt, any)
        }
        // a Q-module factor kills all torsion
        _ => (
            std::array::from_fn(|_| TorsionApprox { order: BigUint::one(), ambiguous: false }),
            std::array::from_fn(|_| TorsionApprox { order: BigUint::one(), ambiguous: false }),
            std::array::from_fn(|_| TorsionApprox { order: BigUint::one(), ambiguous: false }),
            false,
        ),
    };

    Ok(RealKunnethResult {
        free,
        ko_torsion: ko_t,
        ku_torsion: ku_t,
        kt_torsion: kt_t,
        torsion_componentwise_approximation: approx,
    })
}

/// KT groups from the conjugation long exact sequence
/// ... -> KU_{n+1} --(1-psi)--> KU_{n+1} -> KT_n -> KU_n --(1-psi)--> ...
/// for free KU with a scalar conjugation sign per degree; the Bott class
/// twists the sign by -1 every two degrees. Used to derive catalog rows.
pub fn kt_from_conjugation_sequence(ku_ranks: [u64; 2], psi_sign: [i8; 2]) -> [FgAbGroup; 4] {
    let map_is_zero = |m: usize| -> bool {
        let twist = if (m / 2) % 2 == 1 { -1 } else { 1 };
        psi_sign[m % 2] * twist == 1
    };
    std::array::from_fn(|n| {
        let up = (n + 1) % 4;
        let coker = if map_is_zero(up) {
            FgAbGroup::free(ku_ranks[up % 2])
        } else {
            FgAbGroup::from_parts(0, (0..ku_ranks[up % 2]).map(|_| BigUint::from(2u32)))
        };
        let ker = if map_is_zero(n % 4) { FgAbGroup::free(ku_ranks[n % 2]) } else { FgAbGroup::trivial() };
        coker.direct_sum(&ker)
    })
}

/// The 24 graded positions of an extension of real C*-algebras: per
/// degree n the combined groups K^CRT_n of ideal, middle, and quotient,
/// with alpha_n: ideal_n -> mid_n, beta_n: mid_n -> quot_n, and the
/// boundary quot_n -> ideal_{n-1}.
#[derive(Clone, Debug)]
pub struct CrtExtension {
    pub ideal: [PresentedGroup; 8],
    pub mid: [PresentedGroup; 8],
    pub quot: [PresentedGroup; 8],
    pub alpha: [GroupHom; 8],
    pub beta: [GroupHom; 8],
    pub boundary: [GroupHom; 8],
}

impl CrtExtension {
    fn validate(&self) -> Result<()> {
        for n in 0..8 {
            if self.alpha[n].source() != &self.ideal[n] || self.alpha[n].target() != &self.mid[n] {
                return Err(Error::NotComposable(format!("alpha_{n} does not chain ideal_{n} -> mid_{n}")));
            }
            if self.beta[n].source() != &self.mid[n] || self.beta[n].target() != &self.quot[n] {
                return Err(Error::NotComposable(format!("beta_{n} does not chain mid_{n} -> quot_{n}")));
            }
            let down = (n + 7) % 8;
            if self.boundary[n].source() != &self.quot[n] || self.boundary[n].target() != &self.ideal[down] {
                return Err(Error::NotComposable(format!(
                    "boundary_{n} does not chain quot_{n} -> ideal_{down}"
                )));
            }
        }
        Ok(())
    }

    /// Trivial extension: mid_n = ideal_n + quot_n with inclusion and
    /// projection and zero boundary.
    pub fn trivial(ideal: [PresentedGroup; 8], quot: [PresentedGroup; 8]) -> Self {
        let mid: [PresentedGroup; 8] = std::array::from_fn(|n| ideal[n].direct_sum(&quot[n]));
        let alpha: [GroupHom; 8] = std::array::from_fn(|n| {
            let rows = mid[n].n_gens();
            let cols = ideal[n].n_gens();
            let m = IntMatrix::from_fn(rows, cols, |i, j| {
                if i == j {
                    num_bigint::BigInt::one()
                } else {
                    num_bigint::BigInt::zero()
                }
            });
            GroupHom::new(ideal[n].clone(), mid[n].clone(), m).expect("inclusion is well defined")
        });
        let beta: [GroupHom; 8] = std::array::from_fn(|n| {
            let rows = quot[n].n_gens();
            let cols = mid[n].n_gens();
            let offset = ideal[n].n_gens();
            let m = IntMatrix::from_fn(rows, cols, |i, j| {
                if j == i + offset {
                    num_bigint::BigInt::one()
                } else {
                    num_bigint::BigInt::zero()
                }
            });
            GroupHom::new(mid[n].clone(), quot[n].clone(), m).expect("projection is well defined")
        });
        let boundary: [GroupHom; 8] =
            std::array::from_fn(|n| GroupHom::zero(quot[n].clone(), ideal[(n + 7) % 8].clone()));
        CrtExtension { ideal, mid, quot, alpha, beta, boundary }
    }

    /// Suspension-style extension: trivial middle, boundary isomorphisms
    /// quot_n -> ideal_{n-1}.
    pub fn suspension(quot: [PresentedGroup; 8]) -> Self {
        let ideal: [PresentedGroup; 8] = std::array::from_fn(|n| quot[(n + 1) % 8].clone());
        let mid: [PresentedGroup; 8] = std::array::from_fn(|_| PresentedGroup::trivial());
        let alpha: [GroupHom; 8] =
            std::array::from_fn(|n| GroupHom::zero(ideal[n].clone(), mid[n].clone()));
        let beta: [GroupHom; 8] =
            std::array::from_fn(|n| GroupHom::zero(mid[n].clone(), quot[n].clone()));
        let boundary: [GroupHom; 8] = std::array::from_fn(|n| {
            let tgt = ideal[(n + 7) % 8].clone();
            let m = IntMatrix::identity(quot[n].n_gens());
            GroupHom::new(quot[n].clone(), tgt, m).expect("identity is well defined")
        });
        CrtExtension { ideal, mid, quot, alpha, beta, boundary }
    }
}

/// Presentations of the combined groups K^CRT_n = KO_n + KU_{n mod 2}
/// + KT_{n mod 4} for each degree.
pub fn crt_degree_presentations(c: &CrtData) -> [PresentedGroup; 8] {
    std::array::from_fn(|n| {
        let g = c.ko[n].direct_sum(&c.ku[n % 2]).direct_sum(&c.kt[n % 4]);
        PresentedGroup::from_group(&g)
    })
}

/// Assemble block maps between direct sums over selected degrees.
fn block_map(
    sources: &[&PresentedGroup],
    targets: &[&PresentedGroup],
    blocks: &[(usize, usize, IntMatrix)],
) -> (PresentedGroup, PresentedGroup, IntMatrix) {
    let src = sources
        .iter()
        .fold(PresentedGroup::trivial(), |acc, g| acc.direct_sum(g));
    let tgt = targets
        .iter()
        .fold(PresentedGroup::trivial(), |acc, g| acc.direct_sum(g));
    let src_offsets: Vec<usize> = sources
        .iter()
        .scan(0usize, |acc, g| {
            let s = *acc;
            *acc += g.n_gens();
            Some(s)
        })
        .collect();
    let tgt_offsets: Vec<usize> = targets
        .iter()
        .scan(0usize, |acc, g| {
            let s = *acc;
            *acc += g.n_gens();
            Some(s)
        })
        .collect();
    let mut m = IntMatrix::zero(tgt.n_gens(), src.n_gens());
    for (ti, si, blk) in blocks {
        for i in 0..blk.rows() {
            for j in 0..blk.cols() {
                m[(tgt_offsets[*ti] + i, src_offsets[*si] + j)] = blk[(i, j)].clone();
            }
        }
    }
    (src, tgt, m)
}

/// Fold the 24-term cyclic long exact sequence of an extension into the
/// six-term even/odd cycle and verify exactness. The failing position is
/// reported on failure.
pub fn fold_24_term(ext: &CrtExtension) -> Result<CyclicSequence> {
    ext.validate()?;
    let even = [0usize, 2, 4, 6];
    let odd = [1usize, 3, 5, 7];

    let pick = |arr: &[PresentedGroup; 8], idx: &[usize; 4]| -> Vec<PresentedGroup> {
        idx.iter().map(|&n| arr[n].clone()).collect()
    };
    let a_even = pick(&ext.ideal, &even);
    let c_even = pick(&ext.mid, &even);
    let b_even = pick(&ext.quot, &even);
    let a_odd = pick(&ext.ideal, &odd);
    let c_odd = pick(&ext.mid, &odd);
    let b_odd = pick(&ext.quot, &odd);

    let diag = |srcs: &[PresentedGroup], tgts: &[PresentedGroup], maps: Vec<&GroupHom>| {
        let blocks: Vec<(usize, usize, IntMatrix)> = maps
            .iter()
            .enumerate()
            .map(|(i, h)| (i, i, h.matrix().clone()))
            .collect();
        let (s, t, m) = block_map(
            &srcs.iter().collect::<Vec<_>>(),
            &tgts.iter().collect::<Vec<_>>(),
            &blocks,
        );
        GroupHom::new(s, t, m).expect("block sum of well-defined maps")
    };

    let phi1 = diag(&a_even, &c_even, even.iter().map(|&n| &ext.alpha[n]).collect());
    let phi2 = diag(&c_even, &b_even, even.iter().map(|&n| &ext.beta[n]).collect());
    let phi4 = diag(&a_odd, &c_odd, odd.iter().map(|&n| &ext.alpha[n]).collect());
    let phi5 = diag(&c_odd, &b_odd, odd.iter().map(|&n| &ext.beta[n]).collect());

    // boundary blocks land one degree down: even degree n maps into the
    // odd slot holding degree n-1, and vice versa
    let odd_slot = |n: usize| odd.iter().position(|&m| m == (n + 7) % 8).expect("odd degree");
    let even_slot = |n: usize| even.iter().position(|&m| m == (n + 7) % 8).expect("even degree");

    let blocks: Vec<(usize, usize, IntMatrix)> = even
        .iter()
        .enumerate()
        .map(|(si, &n)| (odd_slot(n), si, ext.boundary[n].matrix().clone()))
        .collect();
    let (s, t, m) = block_map(
        &b_even.iter().collect::<Vec<_>>(),
        &a_odd.iter().collect::<Vec<_>>(),
        &blocks,
    );
    let phi3 = GroupHom::new(s, t, m).expect("boundary block sum");

    let blocks: Vec<(usize, usize, IntMatrix)> = odd
        .iter()
        .enumerate()
        .map(|(si, &n)| (even_slot(n), si, ext.boundary[n].matrix().clone()))
        .collect();
    let (s, t, m) = block_map(
        &b_odd.iter().collect::<Vec<_>>(),
        &a_even.iter().collect::<Vec<_>>(),
        &blocks,
    );
    let phi6 = GroupHom::new(s, t, m).expect("boundary block sum");

    let groups = [
        phi1.source().clone(),
        phi2.source().clone(),
        phi3.source().clone(),
        phi4.source().clone(),
        phi5.source().clone(),
        phi6.source().clone(),
    ];
    let seq = CyclicSequence::new(groups, [phi1, phi2, phi3, phi4, phi5, phi6])?;
    if let Some((position, homology)) = seq.first_failure()? {
        return Err(Error::NotExact { position, homology });
    }
    Ok(seq)
}

/// Folding a standard six-term cycle (re-exported for symmetry with the
/// complex case).
pub fn fold_six_term(seq: &CyclicSequence) -> FoldedSequence {
    fold(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::parse_group;
    use crate::catalog;
    use crate::kchar::{chi_euler, Flags};

    fn g(lit: &str) -> FgAbGroup {
        parse_group(lit).unwrap().group
    }

    #[test]
    fn even_odd_of_catalog_reals() {
        let r = catalog::crt_table("R").unwrap();
        let s = even_odd(&r);
        assert_eq!(s.ko_even.rank(), 2);
        assert_eq!(s.ko_odd.rank(), 0);

        let zero = CrtData::zero();
        let s = even_odd(&zero);
        assert!(s.ko_even.is_trivial() && s.kt_odd.is_trivial());

        let h = catalog::crt_table("H").unwrap();
        let s = even_odd(&h);
        assert_eq!(s.kt_even.rank(), 1);
        assert_eq!(s.kt_odd.rank(), 1);
    }

    #[test]
    fn chi1_real_paper_values() {
        assert_eq!(chi1_real(&catalog::crt_table("R").unwrap()), 1);
        assert_eq!(chi1_real(&catalog::crt_table("H").unwrap()), 1);
        assert_eq!(chi1_real(&catalog::crt_table("C_real").unwrap()), 2);
        assert_eq!(chi1_real(&catalog::crt_table("T").unwrap()), 0);
        assert_eq!(chi1_real(&CrtData::zero()), 0);
    }

    #[test]
    fn chi2_real_values() {
        // U_r itself: dims from the shipped table
        let ur = catalog::rational_crt_table("Ur").unwrap();
        assert_eq!(chi_real_dims(&ur), 1);
        assert_eq!(chi_real_dims(&RationalCrt::zero()), 0);
        // (R descriptor) (x) U_r: torsion killed, matches chi1_real(R)
        let r = catalog::crt_table("R").unwrap();
        let rationalized = tensor_with_universal_real_uhf(&r);
        assert_eq!(chi_real_dims(&rationalized), chi1_real(&r));
        // torsion input is rejected by chi2_real
        assert_eq!(chi2_real(&r), Err(Error::TorsionPresent));
        let c = catalog::crt_table("C_real").unwrap();
        assert_eq!(chi2_real(&c).unwrap(), 2);
    }

    #[test]
    fn complexification_formulas() {
        let c = catalog::lookup("C").unwrap();
        let crt = complexification(&c.descriptor).unwrap();
        assert_eq!(crt.ku[0], g("Z^2"));
        assert_eq!(crt.kt[0], g("Z"));
        assert_eq!(even_odd(&crt).ko_even.rank(), 4);
        // chi_R = 2 chi_C on the nose
        assert_eq!(chi1_real(&crt), 2 * chi_euler(&c.descriptor).unwrap());

        // zero descriptor complexifies to zero
        let zero = AlgebraDescriptor::complex(
            "z",
            crate::kchar::KData::zero(),
            Flags { finitely_generated_k: true, ..Flags::default() },
        )
        .unwrap();
        assert_eq!(complexification(&zero).unwrap(), CrtData::zero());

        // balanced K-theory: chi vanishes on both sides
        let bal = AlgebraDescriptor::complex(
            "bal",
            crate::kchar::KData::new(
                crate::folner::ExtGroup::from_fg(g("Z")),
                crate::folner::ExtGroup::from_fg(g("Z")),
            ),
            Flags { finitely_generated_k: true, ..Flags::default() },
        )
        .unwrap();
        let crt = complexification(&bal).unwrap();
        assert_eq!(chi1_real(&crt), 0);
        assert_eq!(chi1_real(&crt), 2 * chi_euler(&bal).unwrap());
    }

    #[test]
    fn chi_r_equals_twice_chi_c_on_samples() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for i in 0..200 {
            let a = crate::sample::random_ktp_descriptor(&mut rng, &format!("d{i}"));
            let crt = complexification(&a).unwrap();
            assert_eq!(chi1_real(&crt), 2 * chi_euler(&a).unwrap());
        }
    }

    #[test]
    fn quaternionify_shifts() {
        let r = catalog::crt_table("R").unwrap();
        let h = quaternionify(&r);
        assert_eq!(h, catalog::crt_table("H").unwrap());
        // applying it twice returns the original KO row
        assert_eq!(quaternionify(&h).ko, r.ko);
        assert_eq!(quaternionify(&CrtData::zero()), CrtData::zero());
        // chi_R(H (x) A-pattern) = chi_R(A-pattern)
        assert_eq!(chi1_real(&h), chi1_real(&r));
    }

    #[test]
    fn rank_consistency_of_catalog() {
        for name in ["R", "C_real", "H", "T", "M2R"] {
            let c = catalog::crt_table(name).unwrap();
            validate_rank_consistency(&c.rationalize()).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        validate_rank_consistency(&catalog::rational_crt_table("Ur").unwrap()).unwrap();

        // a KO row that is not 4-periodic rationally is rejected
        let mut bad = catalog::crt_table("R").unwrap();
        bad.ko[4] = FgAbGroup::trivial();
        assert_eq!(
            validate_rank_consistency(&bad.rationalize()),
            Err(Error::NotRationallyPeriodic)
        );
    }

    #[test]
    fn real_kunneth_examples() {
        let r = catalog::lookup("R").unwrap().descriptor;
        let h = catalog::lookup("H").unwrap().descriptor;
        let ur = catalog::lookup("Ur").unwrap().descriptor;

        // the unit leaves ranks alone
        let res = real_kunneth_tensor(&r, &h).unwrap();
        assert_eq!(res.free, catalog::crt_table("H").unwrap().rationalize());

        // U_r (x) U_r has the ranks of U_r
        let res = real_kunneth_tensor(&ur, &ur).unwrap();
        assert_eq!(res.free, catalog::rational_crt_table("Ur").unwrap());
        assert!(!res.torsion_componentwise_approximation);

        // H (x) H: KO ranks match the double Wood-Karoubi shift
        let res = real_kunneth_tensor(&h, &h).unwrap();
        let hh = quaternionify(&quaternionify(&catalog::crt_table("H").unwrap()));
        assert_eq!(res.free.ko, std::array::from_fn(|i| hh.ko[i].rank()));
        assert!(res.torsion_componentwise_approximation);

        // multiplicativity of the rank character
        for (a, b) in [(&r, &h), (&h, &h), (&ur, &r)] {
            let res = real_kunneth_tensor(a, b).unwrap();
            let chi = |d: &AlgebraDescriptor| match d.real_kdata().unwrap() {
                RealKData::Fg(c) => chi1_real(c),
                RealKData::Rational(q) => chi_real_dims(q),
            };
            assert_eq!(res.rank_character(), chi(a) * chi(b));
        }

        // hypothesis is demanded
        let mut plain = r.clone();
        plain.flags.n_real = false;
        assert_eq!(
            real_kunneth_tensor(&plain, &plain).unwrap_err(),
            Error::RealBootstrapHypothesis
        );
    }

    #[test]
    fn kt_derivations() {
        // KT of R from the conjugation sequence: Z, Z/2, 0, Z
        let kt = kt_from_conjugation_sequence([1, 0], [1, 1]);
        assert_eq!(kt, [g("Z"), g("Z/2"), g("0"), g("Z")]);
        // KT of T: psi acts by -1 on K_1(C(S^1))
        let kt = kt_from_conjugation_sequence([1, 1], [1, -1]);
        assert_eq!(kt, [g("Z + Z/2"), g("Z/2"), g("Z"), g("Z^2")]);
    }

    #[test]
    fn fold_24_term_extensions() {
        let r = catalog::crt_table("R").unwrap();
        let h = catalog::crt_table("H").unwrap();
        let rp = crt_degree_presentations(&r);
        let hp = crt_degree_presentations(&h);

        // trivial extension is exact
        let ext = CrtExtension::trivial(rp.clone(), hp.clone());
        let seq = fold_24_term(&ext).unwrap();
        assert!(seq.is_exact().unwrap());
        // chi_1^R additivity over the trivial extension
        assert_eq!(chi1_real(&r.direct_sum(&h)), chi1_real(&r) + chi1_real(&h));

        // zero ideal: mid isomorphic to quot
        let zeros: [PresentedGroup; 8] = std::array::from_fn(|_| PresentedGroup::trivial());
        let ext = CrtExtension::trivial(zeros, hp.clone());
        assert!(fold_24_term(&ext).unwrap().is_exact().unwrap());

        // suspension-style: boundary isomorphisms, trivial middle
        let ext = CrtExtension::suspension(hp.clone());
        assert!(fold_24_term(&ext).unwrap().is_exact().unwrap());

        // corrupt one boundary map: the failure names a position
        let mut ext = CrtExtension::suspension(hp);
        ext.boundary[0] = GroupHom::zero(
            ext.boundary[0].source().clone(),
            ext.boundary[0].target().clone(),
        );
        match fold_24_term(&ext) {
            Err(Error::NotExact { position, .. }) => assert!((1..=6).contains(&position)),
            other => panic!("expected NotExact, got {other:?}"),
        }
    }

    #[test]
    fn alternating_rank_sums_vanish_on_folded_cycles() {
        let r = catalog::crt_table("R").unwrap();
        let c = catalog::crt_table("C_real").unwrap();
        let ext = CrtExtension::trivial(crt_degree_presentations(&r), crt_degree_presentations(&c));
        let seq = fold_24_term(&ext).unwrap();
        assert_eq!(seq.alternating_sum(crate::homalg::AdditiveTag::Rank).unwrap(), 0);
        assert_eq!(seq.alternating_sum(crate::homalg::AdditiveTag::PPrimaryLog(2)).unwrap(), 0);
    }
}
