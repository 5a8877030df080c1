use crate::chain::{cone, cone_map, homology, shift, ChainComplex, ChainMap};
use crate::exactalg::linalg::{kernel_basis, solve};
use crate::error::{Error, Result};
use crate::exactalg::{FgAbGroup, IntMatrix};
use std::collections::BTreeMap;

/// `τ_{≥n} X` as a subcomplex, with its inclusion into `X`.
#[derive(Clone, Debug)]
pub struct AboveTruncation {
    pub complex: ChainComplex,
    pub incl: ChainMap,
}

/// Free cone model of `τ_{≤n} X`, with the anchor map `X -> τ_{≤n} X`.
#[derive(Clone, Debug)]
pub struct BelowTruncation {
    pub complex: ChainComplex,
    pub anchor: ChainMap,
    /// The inclusion `τ_{≥n+1} X -> X` whose cone this is.
    pub fiber: AboveTruncation,
}

pub fn truncate_above_data(x: &ChainComplex, n: i64) -> AboveTruncation {
    let ring = x.ring();
    if x.is_zero() || n <= x.lo() {
        return AboveTruncation {
            complex: x.clone(),
            incl: ChainMap::identity(x),
        };
    }
    if n > x.hi() {
        let z = ChainComplex::zero(ring);
        return AboveTruncation {
            incl: ChainMap::zero(&z, x),
            complex: z,
        };
    }
    let (k, kl) = kernel_basis(&x.diff(n));
    let mut ranks = vec![k.cols()];
    let mut diffs = vec![IntMatrix::zeros(0, k.cols(), ring)];
    for m in n + 1..=x.hi() {
        ranks.push(x.rank(m));
        diffs.push(if m == n + 1 {
            kl.mul(&x.diff(m))
        } else {
            x.diff(m)
        });
    }
    let complex = ChainComplex::new(ring, n, ranks, diffs).expect("truncation is a complex");
    let incl = ChainMap::from_fn(&complex, x, |m| {
        if m == n {
            k.clone()
        } else {
            IntMatrix::identity(x.rank(m), ring)
        }
    })
    .expect("truncation inclusion");
    AboveTruncation { complex, incl }
}

pub fn truncate_above(x: &ChainComplex, n: i64) -> ChainComplex {
    truncate_above_data(x, n).complex
}

pub fn truncate_below_data(x: &ChainComplex, n: i64) -> BelowTruncation {
    let fiber = truncate_above_data(x, n + 1);
    let c = cone(&fiber.incl);
    BelowTruncation {
        complex: c.complex,
        anchor: c.incl,
        fiber,
    }
}

pub fn truncate_below_free(x: &ChainComplex, n: i64) -> ChainComplex {
    truncate_below_data(x, n).complex
}

/// Map `τ_{≥n+1} X -> τ_{≥n} X` compatible with the inclusions into `X`.
pub fn above_step(upper: &AboveTruncation, lower: &AboveTruncation) -> ChainMap {
    let src = &upper.complex;
    let tgt = &lower.complex;
    ChainMap::from_fn(src, tgt, |m| {
        solve(&lower.incl.component(m), &upper.incl.component(m)).expect("nested subcomplexes")
    })
    .expect("inclusion of truncations")
}

/// `T_{≤n'} Y' -> T_{≤n} Y` induced by `g: Y' -> Y` for `n' >= n`.
pub fn induced_below_map(g: &ChainMap, n_src: i64, n_tgt: i64) -> Result<ChainMap> {
    if n_src < n_tgt {
        return Err(Error::PreconditionViolated("truncation map must not raise the level".into()));
    }
    let d1 = truncate_below_data(g.source(), n_src);
    let d2 = truncate_below_data(g.target(), n_tgt);
    let a = ChainMap::from_fn(&d1.fiber.complex, &d2.fiber.complex, |m| {
        let image = g.component(m).mul(&d1.fiber.incl.component(m));
        solve(&d2.fiber.incl.component(m), &image).expect("chain maps preserve truncations")
    })?;
    cone_map(&d1.fiber.incl, &d2.fiber.incl, &a, g)
}

/// The truncation towers of a bounded complex, indexed from `lo` to `hi`.
#[derive(Clone, Debug)]
pub struct TruncationTower {
    pub base: ChainComplex,
    pub below: BTreeMap<i64, BelowTruncation>,
    pub above: BTreeMap<i64, AboveTruncation>,
    /// `T_{≤n} -> T_{≤n-1}` keyed by `n`.
    pub maps_below: BTreeMap<i64, ChainMap>,
    /// `T_{≥n+1} -> T_{≥n}` keyed by `n`.
    pub maps_above: BTreeMap<i64, ChainMap>,
}

impl TruncationTower {
    pub fn new(x: &ChainComplex) -> TruncationTower {
        let (lo, hi) = if x.is_zero() { (0, 0) } else { (x.lo(), x.hi()) };
        let above: BTreeMap<i64, AboveTruncation> =
            (lo..=hi + 1).map(|n| (n, truncate_above_data(x, n))).collect();
        let below: BTreeMap<i64, BelowTruncation> =
            (lo..=hi).map(|n| (n, truncate_below_data(x, n))).collect();
        let maps_above: BTreeMap<i64, ChainMap> = (lo..=hi)
            .map(|n| (n, above_step(&above[&(n + 1)], &above[&n])))
            .collect();
        let id = ChainMap::identity(x);
        let maps_below = (lo + 1..=hi)
            .map(|n| {
                let f = &below[&n].fiber.incl;
                let f2 = &below[&(n - 1)].fiber.incl;
                let a = &maps_above[&n];
                (n, cone_map(f, f2, a, &id).expect("tower square commutes"))
            })
            .collect();
        TruncationTower {
            base: x.clone(),
            below,
            above,
            maps_below,
            maps_above,
        }
    }

    /// Exact commutativity of the anchor squares `X -> T_{≤n} -> T_{≤n-1}`.
    pub fn squares_commute(&self) -> bool {
        self.maps_below.iter().all(|(n, m)| {
            m.compose(&self.below[n].anchor).ok().as_ref() == Some(&self.below[&(n - 1)].anchor)
        }) && self.maps_above.iter().all(|(n, m)| {
            self.above[n].incl.compose(m).ok().as_ref() == Some(&self.above[&(n + 1)].incl)
        })
    }
}

pub fn truncation_tower(x: &ChainComplex) -> TruncationTower {
    TruncationTower::new(x)
}

/// `H_n X`, computed as the homology of `τ_{≤0} τ_{≥0} Σ^{-n} X` in degree 0.
pub fn heart_homology(x: &ChainComplex, n: i64) -> FgAbGroup {
    let y = truncate_below_free(&truncate_above(&shift(x, -n), 0), 0);
    homology(&y, 0)
}

/// Cone of `τ_{≥n+1} X -> τ_{≥n} X` has homology `H_n X` in degree `n` only.
pub fn layer_triangle_check(x: &ChainComplex, n: i64) -> bool {
    let upper = truncate_above_data(x, n + 1);
    let lower = truncate_above_data(x, n);
    let c = cone(&above_step(&upper, &lower)).complex;
    if c.is_zero() {
        return homology(x, n).is_zero();
    }
    let lo = c.lo().min(n);
    let hi = c.hi().max(n);
    (lo..=hi).all(|m| {
        let h = homology(&c, m);
        if m == n {
            h == homology(x, n)
        } else {
            h.is_zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::is_quasi_isomorphism;
    use crate::exactalg::RingTag;

    fn two_spheres() -> ChainComplex {
        let z = RingTag::Integers;
        ChainComplex::point(z, 0, 1).direct_sum(&ChainComplex::point(z, 2, 1))
    }

    #[test]
    fn above_examples() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        assert_eq!(truncate_above(&p, 0), p);
        let m2 = ChainComplex::moore(2, 0);
        let t = truncate_above(&m2, 1);
        assert!(homology(&t, 1).is_zero() && homology(&t, 0).is_zero());
        assert_eq!(truncate_above(&m2, -3), m2);
    }

    #[test]
    fn below_examples() {
        let x = two_spheres();
        let t = truncate_below_free(&x, 0);
        assert_eq!(homology(&t, 0), FgAbGroup::cyclic(0));
        assert!(homology(&t, 2).is_zero());
        assert!(is_quasi_isomorphism(&truncate_below_data(&x, 2).anchor));
    }

    #[test]
    fn tower() {
        let x = two_spheres();
        let t = TruncationTower::new(&x);
        assert!(t.squares_commute());
        assert!(is_quasi_isomorphism(&t.maps_below[&1]));
        assert!(!is_quasi_isomorphism(&t.maps_below[&2]));
    }

    #[test]
    fn heart_and_layers() {
        let x = ChainComplex::moore(4, -1).direct_sum(&two_spheres());
        for n in -2..=3 {
            assert_eq!(heart_homology(&x, n), homology(&x, n));
            assert!(layer_triangle_check(&x, n));
            assert_eq!(heart_homology(&shift(&x, 2), n), homology(&x, n - 2));
        }
        assert!(layer_triangle_check(&ChainComplex::zero(RingTag::Integers), 0));
    }
}
