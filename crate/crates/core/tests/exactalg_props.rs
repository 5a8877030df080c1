use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use tmodel::exactalg::{
    cokernel, group_from_presentation, hom_group, image, kernel, snf, FgAbGroup, GroupHom, IntMatrix, RingTag,
};

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn is_unimodular_pair(a: &IntMatrix, a_inv: &IntMatrix) -> bool {
    a.mul(a_inv).is_identity() && a_inv.mul(a).is_identity()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_diagonalizes(rows in small_matrix(5)) {
        let m = IntMatrix::from_i64_rows(&rows, RingTag::Integers);
        let r = snf(&m);
        prop_assert_eq!(r.u.mul(&m).mul(&r.v), r.s.clone());
        prop_assert!(is_unimodular_pair(&r.u, &r.u_inv));
        prop_assert!(is_unimodular_pair(&r.v, &r.v_inv));
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j {
                    prop_assert!(r.s.get(i, j).is_zero());
                }
            }
        }
        for w in r.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(r.invariant_factors.iter().all(|d| d > &BigInt::zero()));
    }

    #[test]
    fn snf_over_f_p(rows in small_matrix(5), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let ring = RingTag::PrimeField(p);
        let m = IntMatrix::from_i64_rows(&rows, ring);
        let r = snf(&m);
        prop_assert_eq!(r.u.mul(&m).mul(&r.v), r.s.clone());
        prop_assert!(r.invariant_factors.iter().all(|d| d.is_one()));
        let g = group_from_presentation(&m).group;
        prop_assert!(g.invariant_factors().is_empty());
        prop_assert_eq!(g.free_rank(), m.rows() - r.rank());
    }

    #[test]
    fn presentation_is_invariant_under_base_change(rows in small_matrix(4), ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8)) {
        let z = RingTag::Integers;
        let m = IntMatrix::from_i64_rows(&rows, z);
        let mut n = m.clone();
        for (a, b, c) in ops {
            let (a, b) = (a % n.rows(), b % n.rows());
            if a != b {
                n.add_row_multiple(a, b, &BigInt::from(c));
            }
            let (a, b) = (a % n.cols(), b % n.cols());
            if a != b {
                n.add_col_multiple(a, b, &BigInt::from(c));
            }
        }
        prop_assert_eq!(group_from_presentation(&m).group, group_from_presentation(&n).group);
    }

    #[test]
    fn finite_group_orders_multiply(ds in prop::collection::vec(2i64..=12, 1..3), c in -6i64..=6) {
        let diag: Vec<BigInt> = ds.iter().map(|&d| BigInt::from(d)).collect();
        let a = group_from_presentation(&IntMatrix::diagonal(ds.len(), ds.len(), &diag, RingTag::Integers)).group;
        let f = GroupHom::scalar(&a, c);
        let order = |g: &FgAbGroup| g.order().unwrap();
        prop_assert_eq!(order(&kernel(&f).0) * order(&image(&f).0), order(&a));
        prop_assert_eq!(order(&cokernel(&f).0), order(&kernel(&f).0));
    }
}

/// Counts homomorphisms `Z/a -> Z/b` by enumerating images of the generator.
fn hom_count(a: i64, b: i64) -> i64 {
    (0..b).filter(|x| (x * a) % b == 0).count() as i64
}

#[test]
fn hom_groups_match_enumeration() {
    for a in 1..=8 {
        for b in 1..=8 {
            let h = hom_group(&FgAbGroup::cyclic(a), &FgAbGroup::cyclic(b)).unwrap();
            let order = h.order().unwrap();
            assert_eq!(order, BigInt::from(hom_count(a, b)), "Hom(Z/{a}, Z/{b})");
        }
    }
    let z = RingTag::Integers;
    assert_eq!(hom_group(&FgAbGroup::free(z, 1), &FgAbGroup::cyclic(6)).unwrap(), FgAbGroup::cyclic(6));
    assert!(hom_group(&FgAbGroup::cyclic(2), &FgAbGroup::free(z, 1)).unwrap().is_zero());
    assert_eq!(hom_group(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(4)).unwrap(), FgAbGroup::cyclic(2));
}

#[test]
fn textbook_smith_form() {
    let m = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], RingTag::Integers);
    let r = snf(&m);
    let expect: Vec<BigInt> = [2, 6, 12].iter().map(|&d| BigInt::from(d)).collect();
    assert_eq!(r.invariant_factors, expect);
}
