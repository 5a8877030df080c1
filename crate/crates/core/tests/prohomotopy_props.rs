use proptest::prelude::*;
use tmodel::chain::{derived_hom, is_quasi_isomorphism, random_chain_map, random_complex, rng_from_seed, ChainComplex, ChainMap};
use tmodel::exactalg::RingTag;
use tmodel::pro::{ProMap, TailPolicy, Tower};
use tmodel::prohomotopy::{
    heart_hom, hom_from_constant, hom_to_constant, is_hstar_fibrant, is_hstar_weak_equivalence, postnikov_replacement,
    surjectivize,
};

const Z: RingTag = RingTag::Integers;

fn tower_from(seed: u64, levels: usize) -> Tower<ChainMap> {
    let mut rng = rng_from_seed(seed);
    let entries: Vec<ChainComplex> = (0..levels).map(|_| random_complex(&mut rng, Z, -1, 2, 2)).collect();
    let maps = (1..levels).map(|s| random_chain_map(&mut rng, &entries[s], &entries[s - 1])).collect();
    Tower::new(entries, maps, TailPolicy::ConstantFrom(levels - 1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn postnikov_maps_are_weak_equivalences(seed in any::<u64>(), levels in 1usize..4) {
        let y = tower_from(seed, levels);
        let r = postnikov_replacement(&y).unwrap();
        prop_assert!(is_hstar_weak_equivalence(&r.map, 32).unwrap().is_weak_equivalence());
        let s = surjectivize(&r.tower).unwrap();
        prop_assert!(is_hstar_fibrant(&s.tower));
        prop_assert!(is_hstar_weak_equivalence(&s.map, 32).unwrap().is_weak_equivalence());
    }

    #[test]
    fn constant_towers_match_quasi_isomorphism(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let x = random_complex(&mut rng, Z, -2, 2, 2);
        let y = random_complex(&mut rng, Z, -2, 2, 2);
        let f = random_chain_map(&mut rng, &x, &y);
        let pf = ProMap::level(Tower::constant(x), Tower::constant(y), vec![f.clone()]).unwrap();
        let v = is_hstar_weak_equivalence(&pf, 16).unwrap();
        prop_assert_eq!(v.is_weak_equivalence(), is_quasi_isomorphism(&f));
    }

    #[test]
    fn constant_source_homs_are_brackets(seed in any::<u64>(), n in -2i64..=2) {
        let mut rng = rng_from_seed(seed);
        let x = random_complex(&mut rng, Z, -2, 2, 2);
        let y = random_complex(&mut rng, Z, -2, 2, 2);
        prop_assert_eq!(hom_to_constant(&Tower::constant(x.clone()), &y, n).unwrap(), Some(derived_hom(&x, &y, n).unwrap()));
        let h = hom_from_constant(&x, &Tower::constant(y.clone()), n).unwrap();
        prop_assert_eq!(h.result.lim, Some(derived_hom(&x, &y, n).unwrap()));
    }
}

#[test]
fn heart_homs_vanish_across_windows() {
    let x = Tower::constant(ChainComplex::point(Z, 1, 1));
    let y = Tower::constant(ChainComplex::moore(2, 0));
    let r = heart_hom(&x, &y, 1).unwrap();
    assert!(r.result.lim.unwrap().is_zero());
    assert!(heart_hom(&y, &x, 0).is_err());
}

#[test]
fn constant_fibrancy() {
    let p = ChainComplex::point(Z, 0, 1);
    assert!(is_hstar_fibrant(&Tower::constant(p.clone())));
    assert!(!is_hstar_fibrant(&Tower::repeat(ChainMap::scalar(&p, 2)).unwrap()));
}
