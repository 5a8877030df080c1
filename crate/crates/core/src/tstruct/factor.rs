use super::classify::{is_co_n_equivalence, is_n_equivalence};
use super::truncate::truncate_above_data;
use crate::chain::{cone, homology, shift, shift_map, ChainComplex, ChainMap, HomComplex};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{generalized_inverse, is_surjective, kernel_basis, solve_vec, split_complement};
use crate::exactalg::IntMatrix;
use std::collections::BTreeMap;

/// Degreewise split mono with free cokernel that is an `n`-equivalence.
pub fn is_n_cofibration(i: &ChainMap, n: i64) -> bool {
    i.is_degreewise_split_mono() && is_n_equivalence(i, n)
}

/// Degreewise surjection that is a co-`n`-equivalence.
pub fn is_co_n_fibration(p: &ChainMap, n: i64) -> bool {
    p.is_degreewise_surjective() && is_co_n_equivalence(p, n)
}

/// Degreewise kernel of a chain map, with the inclusion and left inverses of it.
pub struct KernelComplex {
    pub complex: ChainComplex,
    pub incl: ChainMap,
    pub left: BTreeMap<i64, IntMatrix>,
}

pub fn kernel_complex(p: &ChainMap) -> KernelComplex {
    let z = p.source();
    let ring = z.ring();
    if z.is_zero() {
        let k = ChainComplex::zero(ring);
        return KernelComplex {
            incl: ChainMap::zero(&k, z),
            complex: k,
            left: BTreeMap::new(),
        };
    }
    let mut basis = BTreeMap::new();
    let mut left = BTreeMap::new();
    for k in z.degrees() {
        let (b, l) = kernel_basis(&p.component(k));
        basis.insert(k, b);
        left.insert(k, l);
    }
    let ranks: Vec<usize> = z.degrees().map(|k| basis[&k].cols()).collect();
    let diffs: Vec<IntMatrix> = z
        .degrees()
        .map(|k| {
            if k == z.lo() {
                IntMatrix::zeros(0, basis[&k].cols(), ring)
            } else {
                left[&(k - 1)].mul(&z.diff(k)).mul(&basis[&k])
            }
        })
        .collect();
    let complex = ChainComplex::new(ring, z.lo(), ranks, diffs).expect("kernel is a subcomplex");
    let incl = ChainMap::from_fn(&complex, z, |k| basis[&k].clone()).expect("kernel inclusion");
    KernelComplex {
        complex,
        incl,
        left,
    }
}

/// Degreewise cokernel of a split mono `i: A -> B` with the splitting data
/// `(complement, projection, retraction)` per degree of `B`.
pub struct CokernelComplex {
    pub complex: ChainComplex,
    pub proj: ChainMap,
    pub splittings: BTreeMap<i64, (IntMatrix, IntMatrix, IntMatrix)>,
}

pub fn cokernel_complex(i: &ChainMap) -> CokernelComplex {
    let b = i.target();
    let ring = b.ring();
    if b.is_zero() {
        let c = ChainComplex::zero(ring);
        return CokernelComplex {
            proj: ChainMap::zero(b, &c),
            complex: c,
            splittings: BTreeMap::new(),
        };
    }
    let splittings: BTreeMap<i64, _> = b.degrees().map(|k| (k, split_complement(&i.component(k)))).collect();
    let ranks: Vec<usize> = b.degrees().map(|k| splittings[&k].0.cols()).collect();
    let diffs: Vec<IntMatrix> = b
        .degrees()
        .map(|k| {
            let kappa = &splittings[&k].0;
            if k == b.lo() {
                IntMatrix::zeros(0, kappa.cols(), ring)
            } else {
                splittings[&(k - 1)].1.mul(&b.diff(k)).mul(kappa)
            }
        })
        .collect();
    let complex = ChainComplex::new(ring, b.lo(), ranks, diffs).expect("cokernel of a split mono");
    let proj = ChainMap::from_fn(b, &complex, |k| splittings[&k].1.clone()).expect("cokernel projection");
    CokernelComplex {
        complex,
        proj,
        splittings,
    }
}

/// `f = p ∘ i` with `i` an `n`-cofibration and `p` a co-`n`-fibration.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub middle: ChainComplex,
    pub i: ChainMap,
    pub p: ChainMap,
}

/// Adds contractible disks on `Y_k` for every degree where `f_k` is not onto.
fn surjective_replacement(f: &ChainMap) -> (ChainComplex, ChainMap, ChainMap) {
    let x = f.source();
    let y = f.target();
    let ring = x.ring();
    if f.is_degreewise_surjective() {
        return (x.clone(), ChainMap::identity(x), f.clone());
    }
    let tops = |k: i64| {
        if y.rank(k) > 0 && !is_surjective(&f.component(k)) {
            y.rank(k)
        } else {
            0
        }
    };
    let bottoms = |k: i64| tops(k + 1);
    let mut support: Vec<i64> = Vec::new();
    if !x.is_zero() {
        support.extend([x.lo(), x.hi()]);
    }
    support.extend([y.lo() - 1, y.hi()]);
    let lo = *support.iter().min().unwrap();
    let hi = *support.iter().max().unwrap();
    let rank = |k: i64| x.rank(k) + tops(k) + bottoms(k);
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for k in lo..=hi {
        ranks.push(rank(k));
        let mut d = IntMatrix::zeros(if k == lo { 0 } else { rank(k - 1) }, rank(k), ring);
        if k > lo {
            d.set_block(0, 0, &x.diff(k));
            // top a in degree k hits bottom a in degree k - 1
            d.set_block(x.rank(k - 1) + tops(k - 1), x.rank(k), &IntMatrix::identity(tops(k), ring));
        }
        diffs.push(d);
    }
    let z = ChainComplex::new(ring, lo, ranks, diffs).expect("disk attachment");
    let i = ChainMap::from_fn(x, &z, |k| {
        let mut m = IntMatrix::zeros(rank(k), x.rank(k), ring);
        m.set_block(0, 0, &IntMatrix::identity(x.rank(k), ring));
        m
    })
    .expect("inclusion of the base");
    let p = ChainMap::from_fn(&z, y, |k| {
        let mut m = IntMatrix::zeros(y.rank(k), rank(k), ring);
        m.set_block(0, 0, &f.component(k));
        if tops(k) > 0 {
            m.set_block(0, x.rank(k), &IntMatrix::identity(tops(k), ring));
        }
        if bottoms(k) > 0 {
            m.set_block(0, x.rank(k) + tops(k), &y.diff(k + 1));
        }
        m
    })
    .expect("disk projection");
    (z, i, p)
}

/// Factors `f` as an `n`-cofibration followed by a co-`n`-fibration.
///
/// First `f` is made degreewise surjective by attaching disks, then the part of
/// the kernel in degrees `>= n` is coned off. Both halves are checked before
/// returning.
pub fn factor_n(f: &ChainMap, n: i64) -> Result<Factorization> {
    let (z, i, p) = surjective_replacement(f);
    let ker = kernel_complex(&p);
    let tau = truncate_above_data(&ker.complex, n);
    let iota = ker.incl.compose(&tau.incl)?;
    let c = cone(&iota);
    let middle = c.complex;
    let i2 = c.incl.compose(&i)?;
    let y = f.target();
    let p2 = ChainMap::from_fn(&middle, y, |k| {
        let mut m = IntMatrix::zeros(y.rank(k), middle.rank(k), z.ring());
        m.set_block(0, 0, &p.component(k));
        m
    })?;
    if p2.compose(&i2)? != *f {
        return Err(Error::ExactnessViolation("factorization does not recover f".into()));
    }
    if !is_n_cofibration(&i2, n) || !is_co_n_fibration(&p2, n) {
        return Err(Error::ExactnessViolation("factorization postconditions".into()));
    }
    Ok(Factorization { middle, i: i2, p: p2 })
}

/// A lift `h: B -> X` in the square `p ∘ top = bottom ∘ i` with `h i = top`
/// and `p h = bottom`.
///
/// A degreewise lift `h0` is corrected by `Kb e π` where `e` solves a linear
/// system in `Hom(coker i, ker p)`; it is solvable whenever `i` is an
/// `n`-cofibration and `p` a co-`n`-fibration.
pub fn find_lift(
    i: &ChainMap,
    p: &ChainMap,
    top: &ChainMap,
    bottom: &ChainMap,
    n: i64,
) -> Result<Option<ChainMap>> {
    let (a, b) = (i.source(), i.target());
    let (x, y) = (p.source(), p.target());
    if top.source() != a || top.target() != x || bottom.source() != b || bottom.target() != y {
        return Err(Error::Shape("lifting square endpoints".into()));
    }
    if !is_n_cofibration(i, n) {
        return Err(Error::PreconditionViolated(format!("left map is not a {n}-cofibration")));
    }
    if !is_co_n_fibration(p, n) {
        return Err(Error::PreconditionViolated(format!("right map is not a co-{n}-fibration")));
    }
    if p.compose(top)? != bottom.compose(i)? {
        return Err(Error::PreconditionViolated("square does not commute".into()));
    }
    if b.is_zero() {
        return Ok(Some(ChainMap::zero(b, x)));
    }
    let coker = cokernel_complex(i);
    let ker = kernel_complex(p);
    let mut h0 = BTreeMap::new();
    for k in b.degrees() {
        let (kappa, pi, rho) = &coker.splittings[&k];
        let s = generalized_inverse(&p.component(k));
        let m = top
            .component(k)
            .mul(rho)
            .add(&s.mul(&bottom.component(k)).mul(kappa).mul(pi));
        h0.insert(k, m);
    }
    let h0c = |k: i64| {
        h0.get(&k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(x.rank(k), b.rank(k), x.ring()))
    };
    let hc = HomComplex::new(&coker.complex, &ker.complex)?;
    let rhs = hc.to_vector(-1, |k| {
        let delta = x.diff(k).mul(&h0c(k)).sub(&h0c(k - 1).mul(&b.diff(k)));
        let kappa = &coker.splittings[&k].0;
        ker.left[&(k - 1)].mul(&delta).mul(kappa).neg()
    });
    let Some(e) = solve_vec(&hc.complex.diff(0), &rhs) else {
        return Ok(None);
    };
    let h = ChainMap::from_fn(b, x, |k| {
        let corr = ker
            .incl
            .component(k)
            .mul(&hc.component(0, &e, k))
            .mul(&coker.splittings[&k].1);
        h0c(k).add(&corr)
    });
    let Ok(h) = h else { return Ok(None) };
    if h.compose(i)? != *top || p.compose(&h)? != *bottom {
        return Ok(None);
    }
    Ok(Some(h))
}

/// For an `n`-cofibration `f`, `Σ^j f` is an `(n+j)`-cofibration whose cokernel
/// has no homology below `n + 1 + j`.
pub fn pushout_product_check(f: &ChainMap, n: i64, j: i64) -> Result<bool> {
    if !is_n_cofibration(f, n) {
        return Err(Error::PreconditionViolated(format!("not a {n}-cofibration")));
    }
    let c = shift(&cokernel_complex(f).complex, j);
    let low_ok = c.is_zero() || (c.lo()..n + 1 + j).all(|m| homology(&c, m).is_zero());
    Ok(low_ok && is_n_cofibration(&shift_map(f, j), n + j))
}
