//! Property suites for the algebraic laws the kernels promise.

use num_bigint::BigUint;
use proptest::prelude::*;

use kgr_core::abgroup::{cokernel, parse_group, FgAbGroup};
use kgr_core::folner::ExtGroup;
use kgr_core::homalg::AdditiveTag;
use kgr_core::matrix::{smith_normal_form, IntMatrix};
use kgr_core::sample;

fn fg_group() -> impl Strategy<Value = FgAbGroup> {
    (0u64..4, proptest::collection::vec(1u64..30, 0..4))
        .prop_map(|(rank, moduli)| FgAbGroup::from_parts(rank, moduli.into_iter().map(BigUint::from)))
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-15i64..=15, r * c)
            .prop_map(move |entries| IntMatrix::from_fn(r, c, |i, j| entries[i * c + j].clone().into()))
    })
}

proptest! {
    #[test]
    fn canonicalization_is_idempotent(g in fg_group()) {
        let again = FgAbGroup::from_parts(g.rank(), g.torsion().to_vec());
        prop_assert_eq!(&again, &g);
        // divisibility chain with entries >= 2
        for w in g.torsion().windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigUint::from(0u32));
        }
        for d in g.torsion() {
            prop_assert!(d >= &BigUint::from(2u32));
        }
    }

    #[test]
    fn display_parse_round_trip(g in fg_group()) {
        let lit = parse_group(&g.to_string()).unwrap();
        prop_assert_eq!(lit.group, g);
        prop_assert!(lit.canonical);
    }

    #[test]
    fn direct_sum_laws(a in fg_group(), b in fg_group(), c in fg_group()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        prop_assert_eq!(a.direct_sum(&FgAbGroup::trivial()), a.clone());
    }

    #[test]
    fn tensor_laws(a in fg_group(), b in fg_group()) {
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.tensor(&b).rank(), a.rank() * b.rank());
        prop_assert_eq!(a.tensor(&FgAbGroup::free(1)), a.clone());
    }

    #[test]
    fn tor_laws(a in fg_group(), b in fg_group()) {
        prop_assert_eq!(a.tor(&b), b.tor(&a));
        // free groups are flat
        prop_assert!(FgAbGroup::free(a.rank()).tor(&b).is_trivial());
        // Tor is pure torsion
        prop_assert_eq!(a.tor(&b).rank(), 0);
    }

    #[test]
    fn snf_diagonalizes_with_unimodular_transforms(m in small_matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.diag_matrix(m.rows(), m.cols()));
        prop_assert_eq!(snf.left.det().abs(), 1.into());
        prop_assert_eq!(snf.right.det().abs(), 1.into());
        for w in snf.diag.windows(2) {
            prop_assert_eq!(num_integer::Integer::mod_floor(&w[1], &w[0]), 0.into());
        }
        // cokernel invariant factors are the diagonal entries > 1
        let g = cokernel(&m);
        let nontrivial: Vec<_> = snf.diag.iter().filter(|d| **d > 1.into()).cloned().collect();
        prop_assert_eq!(g.torsion().len(), nontrivial.len());
    }

    #[test]
    fn ext_tensor_reduces_to_fg_tensor(a in fg_group(), b in fg_group()) {
        let ea = ExtGroup::from_fg(a.clone());
        let eb = ExtGroup::from_fg(b.clone());
        prop_assert_eq!(ea.tensor(&eb).as_fg().unwrap(), &a.tensor(&b));
        prop_assert_eq!(ea.tor(&eb).as_fg().unwrap(), &a.tor(&b));
    }

    #[test]
    fn ext_tensor_commutes(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let a = sample::random_symbolic_group(&mut rng);
        let b = sample::random_symbolic_group(&mut rng);
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
    }

    #[test]
    fn generated_cycles_are_exact_with_zero_sums(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let seq = sample::random_exact_cyclic_sequence(&mut rng);
        prop_assert!(seq.is_exact().unwrap());
        for tag in [AdditiveTag::Rank, AdditiveTag::QDim, AdditiveTag::PPrimaryLog(2), AdditiveTag::PPrimaryLog(3)] {
            prop_assert_eq!(seq.alternating_sum(tag).unwrap(), 0);
        }
        prop_assert!(kgr_core::homalg::fold(&seq).is_exact().unwrap());
    }
}
