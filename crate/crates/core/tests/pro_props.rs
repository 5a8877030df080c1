use num_bigint::BigInt;
use proptest::prelude::*;
use tmodel::exactalg::{hom_group, is_isomorphism, FgAbGroup, GroupHom, IntMatrix, RingTag};
use tmodel::pro::{is_pro_isomorphism, lim_lim1, pro_hom, reindex_cofinal, Lim1Status, ProMap, TailPolicy, Tower};

const Z: RingTag = RingTag::Integers;

fn finite_group() -> impl Strategy<Value = FgAbGroup> {
    prop::collection::vec(2i64..=8, 0..3).prop_map(|ds| {
        let m = IntMatrix::diagonal(ds.len(), ds.len(), &ds.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>(), Z);
        tmodel::exactalg::group_from_presentation(&m).group
    })
}

fn endo(a: &FgAbGroup, entries: &[i64]) -> GroupHom {
    let n = a.ngens();
    let data = (0..n * n).map(|k| BigInt::from(entries[k % entries.len()])).collect();
    let m = IntMatrix::from_vec(n, n, data, Z);
    // matrices that break the relations fall back to a scalar
    GroupHom::new(a.clone(), a.clone(), m).unwrap_or_else(|_| GroupHom::scalar(a, entries[0]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn finite_towers_have_no_lim1(a in finite_group(), entries in prop::collection::vec(-4i64..=4, 1..5)) {
        let t = Tower::repeat(endo(&a, &entries)).unwrap();
        let r = lim_lim1(&t).unwrap();
        prop_assert_eq!(r.lim1, Lim1Status::Zero);
        prop_assert_eq!(r.mittag_leffler, Some(true));
        prop_assert!(r.lim.is_some());
    }

    #[test]
    fn constant_from_limits_are_stable_entries(a in finite_group(), b in finite_group(), c in -3i64..=3) {
        let f = GroupHom::zero(&b, &a);
        let t = Tower::new(vec![a.clone(), b.clone()], vec![f], TailPolicy::ConstantFrom(1)).unwrap();
        let r = lim_lim1(&t).unwrap();
        prop_assert_eq!(r.lim1, Lim1Status::Zero);
        prop_assert_eq!(r.lim, Some(b.clone()));
        let s = Tower::constant(a.clone());
        let g = ProMap::level(s.clone(), s, vec![GroupHom::scalar(&a, c)]).unwrap();
        let res = is_pro_isomorphism(&g, 8).unwrap();
        prop_assert_eq!(res.is_true(), is_isomorphism(&GroupHom::scalar(&a, c)));
    }

    #[test]
    fn pro_iso_is_reflexive_and_reindexing_invariant(a in finite_group(), entries in prop::collection::vec(-4i64..=4, 1..5), k in 1usize..4) {
        let t = Tower::repeat(endo(&a, &entries)).unwrap();
        prop_assert!(is_pro_isomorphism(&ProMap::identity(&t), 16).unwrap().is_true());
        let (_, cmp) = reindex_cofinal(&t, k).unwrap();
        prop_assert!(is_pro_isomorphism(&cmp, 16).unwrap().is_true());
    }

    #[test]
    fn constant_pro_homs(a in finite_group(), b in finite_group()) {
        let r = pro_hom(&Tower::constant(a.clone()), &Tower::constant(b.clone())).unwrap();
        prop_assert_eq!(r.result.lim, Some(hom_group(&a, &b).unwrap()));
    }
}

#[test]
fn pro_iso_examples() {
    let z1 = FgAbGroup::free(Z, 1);
    let zero = FgAbGroup::zero(Z);
    let halving = Tower::repeat(GroupHom::scalar(&z1, 2)).unwrap();
    let f = ProMap::level(halving, Tower::constant(zero.clone()), vec![GroupHom::zero(&z1, &zero)]).unwrap();
    assert!(!is_pro_isomorphism(&f, 16).unwrap().is_true());

    let z2 = FgAbGroup::cyclic(2);
    let nil = Tower::repeat(GroupHom::zero(&z2, &z2)).unwrap();
    let g = ProMap::level(nil, Tower::constant(zero.clone()), vec![GroupHom::zero(&z2, &zero)]).unwrap();
    assert!(is_pro_isomorphism(&g, 16).unwrap().is_true());
}

#[test]
fn lim_examples() {
    let z1 = FgAbGroup::free(Z, 1);
    let r = lim_lim1(&Tower::repeat(GroupHom::scalar(&z1, 2)).unwrap()).unwrap();
    assert_eq!(r.lim, Some(FgAbGroup::zero(Z)));
    assert_eq!(r.lim1, Lim1Status::NonzeroUncountable);
    let r = lim_lim1(&Tower::repeat(GroupHom::scalar(&z1, -1)).unwrap()).unwrap();
    assert_eq!((r.lim, r.lim1), (Some(z1.clone()), Lim1Status::Zero));
    let r = lim_lim1(&Tower::constant(z1.clone())).unwrap();
    assert_eq!((r.lim, r.lim1), (Some(z1), Lim1Status::Zero));
}
