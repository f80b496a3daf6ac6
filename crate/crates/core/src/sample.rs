//! Deterministic random generators for property suites: finitely
//! generated groups, KTP descriptor pairs, exact six-term cyclic
//! sequences, split and cyclic extensions, and real CRT blocks built
//! from catalog tables.
//!
//! The exact-sequence generator composes building blocks on which every
//! built-in additive function is additive by construction: split kernel
//! chains (direct-sum extensions) and finite cyclic chains whose orders
//! multiply. This guarantees exactness and keeps the alternating-sum and
//! additivity suites honest positive-instance sources.

use num_bigint::{BigInt, BigUint};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::abgroup::FgAbGroup;
use crate::catalog;
use crate::crt::CrtData;
use crate::folner::{ExtGroup, TorsionTag};
use crate::homalg::{CyclicSequence, GroupHom, PresentedGroup};
use crate::kchar::{AlgebraDescriptor, Flags, KData};
use crate::matrix::IntMatrix;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random fg group with rank <= max_rank and invariant factors <= max_modulus.
pub fn random_fg_group(
    rng: &mut impl Rng,
    max_rank: u64,
    max_factors: usize,
    max_modulus: u64,
) -> FgAbGroup {
    let rank = rng.gen_range(0..=max_rank);
    let k = rng.gen_range(0..=max_factors);
    let moduli = (0..k).map(|_| BigUint::from(rng.gen_range(2..=max_modulus)));
    FgAbGroup::from_parts(rank, moduli)
}

/// Random fg KTP descriptor within the acceptance bounds: ranks <= 6 and
/// torsion factors <= 64.
pub fn random_ktp_descriptor(rng: &mut impl Rng, name: &str) -> AlgebraDescriptor {
    let k0 = random_fg_group(rng, 6, 3, 64);
    let k1 = random_fg_group(rng, 6, 3, 64);
    AlgebraDescriptor::complex(
        name,
        KData::new(ExtGroup::from_fg(k0), ExtGroup::from_fg(k1)),
        Flags { ktp_class: true, finitely_generated_k: true, nuclear: true, separable: true, n_real: false },
    )
    .expect("fg descriptor")
}

/// Random symbolic K-data in the class where the Q character is
/// multiplicative: summands drawn from Z^inf (density 1), Q^k, finite
/// torsion, and torsion tags; no finite free rank.
pub fn random_symbolic_group(rng: &mut impl Rng) -> ExtGroup {
    let mut g = ExtGroup::zero();
    if rng.gen_bool(0.4) {
        g = g.direct_sum(&ExtGroup::zinf());
    }
    if rng.gen_bool(0.3) {
        let mut q = ExtGroup::zero();
        for _ in 0..rng.gen_range(1..=2) {
            q = q.direct_sum(&ExtGroup::q());
        }
        g = g.direct_sum(&q);
    }
    if rng.gen_bool(0.3) {
        let d = rng.gen_range(2..=16u64);
        g = g.direct_sum(&ExtGroup::from_fg(FgAbGroup::cyclic(d)));
    }
    if rng.gen_bool(0.2) {
        g = g.direct_sum(&ExtGroup::tag(TorsionTag::QOverZ));
    }
    g
}

pub fn random_symbolic_descriptor(rng: &mut impl Rng, name: &str) -> AlgebraDescriptor {
    AlgebraDescriptor::complex(
        name,
        KData::new(random_symbolic_group(rng), random_symbolic_group(rng)),
        Flags { ktp_class: true, nuclear: true, separable: true, ..Flags::default() },
    )
    .expect("symbolic descriptor")
}

/// The split kernel-chain cycle: kernels K_1..K_6, groups G_i = K_i + K_{i+1},
/// maps (x, y) -> (y, 0).
fn split_cycle(kernels: [FgAbGroup; 6]) -> CyclicSequence {
    let pres: [PresentedGroup; 6] = std::array::from_fn(|i| {
        PresentedGroup::from_group(&kernels[i]).direct_sum(&PresentedGroup::from_group(&kernels[(i + 1) % 6]))
    });
    let maps: [GroupHom; 6] = std::array::from_fn(|i| {
        let src = &pres[i];
        let tgt = &pres[(i + 1) % 6];
        let k_next = PresentedGroup::from_group(&kernels[(i + 1) % 6]).n_gens();
        let k_cur = PresentedGroup::from_group(&kernels[i]).n_gens();
        // target coordinates: [K_{i+1} | K_{i+2}], source: [K_i | K_{i+1}]
        let m = IntMatrix::from_fn(tgt.n_gens(), src.n_gens(), |r, c| {
            if r < k_next && c >= k_cur && c - k_cur == r {
                BigInt::from(1)
            } else {
                BigInt::from(0)
            }
        });
        GroupHom::new(src.clone(), tgt.clone(), m).expect("projection-inclusion is well defined")
    });
    CyclicSequence::new(pres, maps).expect("split cycle chains")
}

/// The finite cyclic chain: orders d_1..d_6, groups Z/(d_i d_{i+1}),
/// maps 1 -> d_{i+2}. Non-split whenever the orders share factors.
fn torsion_chain_cycle(orders: [u64; 6]) -> CyclicSequence {
    let pres: [PresentedGroup; 6] = std::array::from_fn(|i| {
        let n = orders[i] * orders[(i + 1) % 6];
        PresentedGroup::new(1, IntMatrix::from_rows(vec![vec![n as i64]])).expect("cyclic presentation")
    });
    let maps: [GroupHom; 6] = std::array::from_fn(|i| {
        let m = IntMatrix::from_rows(vec![vec![orders[(i + 2) % 6] as i64]]);
        GroupHom::new(pres[i].clone(), pres[(i + 1) % 6].clone(), m).expect("chain map is well defined")
    });
    CyclicSequence::new(pres, maps).expect("torsion chain chains")
}

/// Direct sum of two cyclic sequences, position by position.
fn sum_cycles(a: &CyclicSequence, b: &CyclicSequence) -> CyclicSequence {
    let groups: [PresentedGroup; 6] = std::array::from_fn(|i| a.groups()[i].direct_sum(&b.groups()[i]));
    let maps: [GroupHom; 6] = std::array::from_fn(|i| a.maps()[i].direct_sum(&b.maps()[i]));
    CyclicSequence::new(groups, maps).expect("summed cycle chains")
}

fn random_split_cycle(rng: &mut impl Rng) -> CyclicSequence {
    let kernels: [FgAbGroup; 6] = std::array::from_fn(|_| random_fg_group(rng, 2, 2, 12));
    split_cycle(kernels)
}

fn random_torsion_cycle(rng: &mut impl Rng) -> CyclicSequence {
    let orders: [u64; 6] = std::array::from_fn(|_| rng.gen_range(1..=6));
    torsion_chain_cycle(orders)
}

/// Random exact six-term cyclic sequence, exact by construction.
pub fn random_exact_cyclic_sequence(rng: &mut impl Rng) -> CyclicSequence {
    match rng.gen_range(0..4u8) {
        0 => random_split_cycle(rng),
        1 => random_torsion_cycle(rng),
        2 => {
            let a = random_split_cycle(rng);
            let b = random_torsion_cycle(rng);
            sum_cycles(&a, &b)
        }
        _ => {
            let a = random_torsion_cycle(rng);
            let b = random_torsion_cycle(rng);
            sum_cycles(&a, &b)
        }
    }
}

/// A verified-extension fixture: descriptors (sub, mid, quot) with the
/// six maps of the K-theory cycle. Split mode takes mid = sub + quot;
/// cyclic mode builds 0 -> Z/d -> Z/de -> Z/e -> 0 in degree zero.
pub fn random_extension_fixture(
    rng: &mut impl Rng,
    tag: &str,
) -> (AlgebraDescriptor, AlgebraDescriptor, AlgebraDescriptor, [GroupHom; 6]) {
    if rng.gen_bool(0.5) {
        split_extension_fixture(rng, tag)
    } else {
        cyclic_extension_fixture(rng, tag)
    }
}

fn split_extension_fixture(
    rng: &mut impl Rng,
    tag: &str,
) -> (AlgebraDescriptor, AlgebraDescriptor, AlgebraDescriptor, [GroupHom; 6]) {
    let a0 = random_fg_group(rng, 2, 2, 12);
    let a1 = random_fg_group(rng, 2, 2, 12);
    let b0 = random_fg_group(rng, 2, 2, 12);
    let b1 = random_fg_group(rng, 2, 2, 12);
    let flags = Flags { ktp_class: true, finitely_generated_k: true, nuclear: true, separable: true, n_real: false };
    let mk = |name: String, k0: &FgAbGroup, k1: &FgAbGroup| {
        AlgebraDescriptor::complex(
            name,
            KData::new(ExtGroup::from_fg(k0.clone()), ExtGroup::from_fg(k1.clone())),
            flags,
        )
        .expect("fg descriptor")
    };
    let sub = mk(format!("sub_{tag}"), &a0, &a1);
    let quot = mk(format!("quot_{tag}"), &b0, &b1);
    let mid = mk(format!("mid_{tag}"), &a0.direct_sum(&b0), &a1.direct_sum(&b1));

    // the middle K-groups live on block presentations [A gens | B gens];
    // their canonical structure equals the descriptor's K-group
    let inclusion = |part: &FgAbGroup, other: &FgAbGroup| -> GroupHom {
        let src = PresentedGroup::from_group(part);
        let tgt = PresentedGroup::from_group(part).direct_sum(&PresentedGroup::from_group(other));
        let m = IntMatrix::from_fn(tgt.n_gens(), src.n_gens(), |i, j| {
            BigInt::from(u64::from(i == j))
        });
        GroupHom::new(src, tgt, m).expect("inclusion well defined")
    };
    let projection = |part: &FgAbGroup, other: &FgAbGroup| -> GroupHom {
        let src = PresentedGroup::from_group(part).direct_sum(&PresentedGroup::from_group(other));
        let tgt = PresentedGroup::from_group(other);
        let offset = PresentedGroup::from_group(part).n_gens();
        let m = IntMatrix::from_fn(tgt.n_gens(), src.n_gens(), |i, j| {
            BigInt::from(u64::from(j == i + offset))
        });
        GroupHom::new(src, tgt, m).expect("projection well defined")
    };

    let maps = [
        inclusion(&a0, &b0),
        projection(&a0, &b0),
        GroupHom::zero(
            PresentedGroup::from_group(&b0),
            PresentedGroup::from_group(&a1),
        ),
        inclusion(&a1, &b1),
        projection(&a1, &b1),
        GroupHom::zero(
            PresentedGroup::from_group(&b1),
            PresentedGroup::from_group(&a0),
        ),
    ];
    (sub, mid, quot, maps)
}

fn cyclic_extension_fixture(
    rng: &mut impl Rng,
    tag: &str,
) -> (AlgebraDescriptor, AlgebraDescriptor, AlgebraDescriptor, [GroupHom; 6]) {
    let d = rng.gen_range(2..=8u64);
    let e = rng.gen_range(2..=8u64);
    let flags = Flags { ktp_class: true, finitely_generated_k: true, nuclear: true, separable: true, n_real: false };
    let mk = |name: String, k0: FgAbGroup| {
        AlgebraDescriptor::complex(
            name,
            KData::new(ExtGroup::from_fg(k0), ExtGroup::zero()),
            flags,
        )
        .expect("fg descriptor")
    };
    let sub = mk(format!("sub_{tag}"), FgAbGroup::cyclic(d));
    let mid = mk(format!("mid_{tag}"), FgAbGroup::cyclic(d * e));
    let quot = mk(format!("quot_{tag}"), FgAbGroup::cyclic(e));

    let pd = PresentedGroup::from_group(&FgAbGroup::cyclic(d));
    let pde = PresentedGroup::from_group(&FgAbGroup::cyclic(d * e));
    let pe = PresentedGroup::from_group(&FgAbGroup::cyclic(e));
    let t = PresentedGroup::trivial();

    let maps = [
        GroupHom::new(pd.clone(), pde.clone(), IntMatrix::from_rows(vec![vec![e as i64]]))
            .expect("multiplication by e is well defined"),
        GroupHom::new(pde.clone(), pe.clone(), IntMatrix::from_rows(vec![vec![1]]))
            .expect("reduction is well defined"),
        GroupHom::zero(pe.clone(), t.clone()),
        GroupHom::zero(t.clone(), t.clone()),
        GroupHom::zero(t.clone(), t.clone()),
        GroupHom::zero(t, pd),
    ];
    (sub, mid, quot, maps)
}

/// Random real CRT block: a direct sum of shifted catalog tables. Always
/// rank-consistent united K-data.
pub fn random_crt_block(rng: &mut impl Rng) -> CrtData {
    let tables = ["R", "C_real", "H", "T", "M2R"];
    let mut acc = CrtData::zero();
    let pieces = rng.gen_range(1..=3usize);
    for _ in 0..pieces {
        let t = catalog::crt_table(tables[rng.gen_range(0..tables.len())]).expect("catalog table");
        let shift = rng.gen_range(0..8usize);
        acc = acc.direct_sum(&t.shift(shift));
    }
    acc
}

pub fn random_real_descriptor(rng: &mut impl Rng, name: &str) -> AlgebraDescriptor {
    AlgebraDescriptor::new(
        name,
        crate::kchar::FieldBase::Real,
        crate::kchar::DescriptorKData::Real(crate::crt::RealKData::Fg(random_crt_block(rng))),
        Flags { finitely_generated_k: true, nuclear: true, separable: true, n_real: true, ..Flags::default() },
    )
    .expect("real descriptor")
}
