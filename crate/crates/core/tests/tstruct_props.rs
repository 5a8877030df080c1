use proptest::prelude::*;
use tmodel::chain::{
    derived_hom, homology, induced_homology_map, is_quasi_isomorphism, random_chain_map, random_complex,
    random_complex_seeded, rng_from_seed, ChainComplex, ChainMap,
};
use tmodel::exactalg::{is_isomorphism, FgAbGroup, RingTag};
use tmodel::tstruct::{
    classify_map, cohomology_with_coefficients, factor_n, is_co_n_equivalence, is_n_equivalence, pushout_product_check,
    truncate_above, truncate_below_free, truncation_tower, Extended,
};

const Z: RingTag = RingTag::Integers;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncation_tower_homology(seed in any::<u64>()) {
        let x = random_complex_seeded(seed, Z, -3, 3, 3);
        let t = truncation_tower(&x);
        prop_assert!(t.squares_commute());
        for (&n, b) in &t.below {
            for i in -4..=4 {
                let expect = if i <= n { homology(&x, i) } else { FgAbGroup::zero(Z) };
                prop_assert_eq!(homology(&b.complex, i), expect);
            }
        }
        for (&n, a) in &t.above {
            for i in -4..=4 {
                let expect = if i >= n { homology(&x, i) } else { FgAbGroup::zero(Z) };
                prop_assert_eq!(homology(&a.complex, i), expect);
            }
        }
    }

    #[test]
    fn negative_homology_is_detected(seed in any::<u64>()) {
        let x = random_complex_seeded(seed, Z, -3, 3, 3);
        let has_negative = (-4..0).any(|i| !homology(&x, i).is_zero());
        let y = truncate_below_free(&x, -1);
        prop_assert_eq!(!derived_hom(&x, &y, 0).unwrap().is_zero(), has_negative);
        prop_assert!(derived_hom(&truncate_above(&x, 0), &y, 0).unwrap().is_zero());
    }

    #[test]
    fn weak_equivalence_iff_infinite_bounds(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let x = random_complex(&mut rng, Z, -2, 2, 2);
        let y = random_complex(&mut rng, Z, -2, 2, 2);
        let f = random_chain_map(&mut rng, &x, &y);
        for g in [f.clone(), ChainMap::identity(&x)] {
            let c = classify_map(&g);
            prop_assert_eq!(c.is_weak_equivalence, c.max_n_equivalence == Extended::PosInf);
            prop_assert_eq!(c.is_weak_equivalence, c.min_co_n_equivalence == Extended::NegInf);
            prop_assert_eq!(c.is_weak_equivalence, is_quasi_isomorphism(&g));
        }
    }

    #[test]
    fn factorizations_hold(seed in any::<u64>(), n in -3i64..=3) {
        let mut rng = rng_from_seed(seed);
        let x = random_complex(&mut rng, Z, -2, 2, 2);
        let y = random_complex(&mut rng, Z, -2, 2, 2);
        let f = random_chain_map(&mut rng, &x, &y);
        let fac = factor_n(&f, n).unwrap();
        prop_assert_eq!(fac.p.compose(&fac.i).unwrap(), f);
        prop_assert!(is_n_equivalence(&fac.i, n));
        prop_assert!(is_co_n_equivalence(&fac.p, n));
        prop_assert!(pushout_product_check(&fac.i, n, 1).unwrap());
    }

    #[test]
    fn whitehead_for_complexes(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let x = random_complex(&mut rng, Z, -2, 2, 2);
        let y = random_complex(&mut rng, Z, -2, 2, 2);
        let f = random_chain_map(&mut rng, &x, &y);
        let all_h = (-3..=3).all(|n| is_isomorphism(&induced_homology_map(&f, n)));
        prop_assert_eq!(is_quasi_isomorphism(&f), all_h);
    }
}

#[test]
fn classify_examples() {
    let p = ChainComplex::point(Z, 0, 1);
    let c = classify_map(&ChainMap::scalar(&p, 2));
    assert_eq!(c.max_n_equivalence, Extended::Finite(-1));
    assert_eq!(c.min_co_n_equivalence, Extended::Finite(0));
    let id = classify_map(&ChainMap::identity(&p));
    assert!(id.is_weak_equivalence && id.is_n_equivalence(100) && id.is_co_n_equivalence(-100));
}

#[test]
fn truncation_examples() {
    let m2 = ChainComplex::moore(2, 0);
    assert_eq!(truncate_above(&m2, 1).rank(1), 0);
    assert_eq!(truncate_above(&m2, -3), m2);
    let p = ChainComplex::point(Z, 0, 1);
    assert_eq!(truncate_above(&p, 0), p);
}

#[test]
fn cohomology_examples() {
    let p = ChainComplex::point(Z, 0, 1);
    let a = FgAbGroup::cyclic(6);
    assert_eq!(cohomology_with_coefficients(&p, &a, 0).unwrap(), a);
    let m2 = ChainComplex::moore(2, 0);
    assert_eq!(cohomology_with_coefficients(&m2, &FgAbGroup::cyclic(2), 1).unwrap(), FgAbGroup::cyclic(2));
    assert!(cohomology_with_coefficients(&m2, &FgAbGroup::cyclic(2), 5).unwrap().is_zero());
}
