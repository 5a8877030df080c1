use super::complex::{shift, ChainComplex};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{is_split_mono, is_surjective};
use crate::exactalg::IntMatrix;
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;

/// Degree-0 chain map. Components are stored over the source support.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comps: Vec<IntMatrix>,
}

impl ChainMap {
    /// Checked constructor from a component function.
    pub fn from_fn(
        source: &ChainComplex,
        target: &ChainComplex,
        mut comp: impl FnMut(i64) -> IntMatrix,
    ) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch("chain map endpoints".into()));
        }
        let mut comps = Vec::new();
        for n in source.degrees() {
            let c = comp(n);
            if c.shape() != (target.rank(n), source.rank(n)) {
                return Err(Error::Shape(format!(
                    "component at degree {n} has shape {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    target.rank(n),
                    source.rank(n)
                )));
            }
            comps.push(c);
        }
        let f = ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        };
        f.check_commutes()?;
        Ok(f)
    }

    pub fn from_map(
        source: &ChainComplex,
        target: &ChainComplex,
        comps: &BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        for &n in comps.keys() {
            let c = &comps[&n];
            if (n < source.lo() || n > source.hi()) && c.rows() * c.cols() > 0 {
                return Err(Error::Shape(format!("component at degree {n} outside the source support")));
            }
        }
        Self::from_fn(source, target, |n| {
            comps
                .get(&n)
                .cloned()
                .unwrap_or_else(|| IntMatrix::zeros(target.rank(n), source.rank(n), source.ring()))
        })
    }

    pub(crate) fn from_fn_unchecked(
        source: &ChainComplex,
        target: &ChainComplex,
        mut comp: impl FnMut(i64) -> IntMatrix,
    ) -> Self {
        let comps = source.degrees().map(&mut comp).collect();
        let f = ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        };
        debug_assert!(f.check_commutes().is_ok(), "internal chain map does not commute");
        f
    }

    fn check_commutes(&self) -> Result<()> {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi()) + 1;
        for n in lo..=hi {
            let left = self.target.diff(n).mul(&self.component(n));
            let right = self.component(n - 1).mul(&self.source.diff(n));
            if left != right {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> IntMatrix {
        if n < self.source.lo() || n > self.source.hi() {
            IntMatrix::zeros(self.target.rank(n), self.source.rank(n), self.source.ring())
        } else {
            self.comps[(n - self.source.lo()) as usize].clone()
        }
    }

    pub fn identity(x: &ChainComplex) -> Self {
        Self::from_fn_unchecked(x, x, |n| IntMatrix::identity(x.rank(n), x.ring()))
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Self::from_fn_unchecked(source, target, |n| {
            IntMatrix::zeros(target.rank(n), source.rank(n), source.ring())
        })
    }

    pub fn scalar(x: &ChainComplex, c: i64) -> Self {
        Self::from_fn_unchecked(x, x, |n| IntMatrix::identity(x.rank(n), x.ring()).scale(&BigInt::from(c)))
    }

    /// `self ∘ f`
    pub fn compose(&self, f: &ChainMap) -> Result<ChainMap> {
        if f.target != self.source {
            return Err(Error::Shape("compose: intermediate complexes differ".into()));
        }
        Ok(Self::from_fn_unchecked(&f.source, &self.target, |n| {
            self.component(n).mul(&f.component(n))
        }))
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("adding chain maps with different endpoints".into()));
        }
        Ok(Self::from_fn_unchecked(&self.source, &self.target, |n| {
            self.component(n).add(&other.component(n))
        }))
    }

    pub fn neg(&self) -> ChainMap {
        Self::from_fn_unchecked(&self.source, &self.target, |n| self.component(n).neg())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.comps.iter().all(|c| c.is_identity())
    }

    pub fn is_degreewise_surjective(&self) -> bool {
        self.target
            .degrees()
            .all(|n| is_surjective(&self.component(n)))
    }

    /// Every component injective with free cokernel.
    pub fn is_degreewise_split_mono(&self) -> bool {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).all(|n| is_split_mono(&self.component(n)))
    }

    pub fn components(&self) -> BTreeMap<i64, IntMatrix> {
        self.source.degrees().map(|n| (n, self.component(n))).collect()
    }
}

/// `Σ^k f`, with the same component matrices in shifted degrees.
pub fn shift_map(f: &ChainMap, k: i64) -> ChainMap {
    let s = shift(f.source(), k);
    let t = shift(f.target(), k);
    ChainMap::from_fn_unchecked(&s, &t, |n| f.component(n - k))
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap{{")?;
        for n in self.source.degrees() {
            write!(f, " {}:{:?}", n, self.component(n))?;
        }
        write!(f, " }}")
    }
}

/// Mapping cone with its two structure maps.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ChainComplex,
    /// `Y -> cone(f)`, `y ↦ (y, 0)`
    pub incl: ChainMap,
    /// `cone(f) -> ΣX`, `(y, x) ↦ x`
    pub proj: ChainMap,
}

/// `cone(f)_n = Y_n ⊕ X_{n-1}` with differential `[[d_Y, f], [0, -d_X]]`.
pub fn cone(f: &ChainMap) -> Cone {
    let x = f.source();
    let y = f.target();
    let ring = x.ring();
    let complex = if x.is_zero() && y.is_zero() {
        ChainComplex::zero(ring)
    } else {
        let lo = match (x.is_zero(), y.is_zero()) {
            (true, _) => y.lo(),
            (_, true) => x.lo() + 1,
            _ => y.lo().min(x.lo() + 1),
        };
        let hi = match (x.is_zero(), y.is_zero()) {
            (true, _) => y.hi(),
            (_, true) => x.hi() + 1,
            _ => y.hi().max(x.hi() + 1),
        };
        let mut ranks = Vec::new();
        let mut diffs = Vec::new();
        for n in lo..=hi {
            ranks.push(y.rank(n) + x.rank(n - 1));
            let rows = if n == lo { 0 } else { y.rank(n - 1) + x.rank(n - 2) };
            let mut d = IntMatrix::zeros(rows, y.rank(n) + x.rank(n - 1), ring);
            if n > lo {
                d.set_block(0, 0, &y.diff(n));
                d.set_block(0, y.rank(n), &f.component(n - 1));
                d.set_block(y.rank(n - 1), y.rank(n), &x.diff(n - 1).neg());
            }
            diffs.push(d);
        }
        ChainComplex::from_parts(ring, lo, ranks, diffs)
    };
    let incl = ChainMap::from_fn_unchecked(y, &complex, |n| {
        let mut m = IntMatrix::zeros(complex.rank(n), y.rank(n), ring);
        m.set_block(0, 0, &IntMatrix::identity(y.rank(n), ring));
        m
    });
    let sx = shift(x, 1);
    let proj = ChainMap::from_fn_unchecked(&complex, &sx, |n| {
        let mut m = IntMatrix::zeros(x.rank(n - 1), complex.rank(n), ring);
        m.set_block(0, y.rank(n), &IntMatrix::identity(x.rank(n - 1), ring));
        m
    });
    Cone {
        complex,
        incl,
        proj,
    }
}

/// Map of cones induced by a commuting square `f2 ∘ a = b ∘ f`:
/// `(y, x) ↦ (b y, a x)`.
pub fn cone_map(f: &ChainMap, f2: &ChainMap, a: &ChainMap, b: &ChainMap) -> Result<ChainMap> {
    if a.source() != f.source() || b.source() != f.target() || a.target() != f2.source() || b.target() != f2.target() {
        return Err(Error::Shape("cone_map: square endpoints".into()));
    }
    if f2.compose(a)? != b.compose(f)? {
        return Err(Error::PreconditionViolated("cone_map: square does not commute".into()));
    }
    let c1 = cone(f).complex;
    let c2 = cone(f2).complex;
    let ring = c1.ring();
    let (y, x, y2) = (f.target(), f.source(), f2.target());
    ChainMap::from_fn(&c1, &c2, |n| {
        let mut m = IntMatrix::zeros(c2.rank(n), c1.rank(n), ring);
        m.set_block(0, 0, &b.component(n));
        m.set_block(y2.rank(n), y.rank(n), &a.component(n - 1));
        let _ = x;
        m
    })
}

/// Contractible complex `E` with a degreewise surjection `E -> Z`: one disk
/// `e -> d e` on every basis element of `Z`.
pub fn disk_cover(z: &ChainComplex) -> (ChainComplex, ChainMap) {
    let ring = z.ring();
    if z.is_zero() {
        return (z.clone(), ChainMap::identity(z));
    }
    // E_k = Z_k (tops) ⊕ Z_{k+1} (bottoms)
    let lo = z.lo() - 1;
    let hi = z.hi();
    let rank = |k: i64| z.rank(k) + z.rank(k + 1);
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for k in lo..=hi {
        ranks.push(rank(k));
        let mut d = IntMatrix::zeros(if k == lo { 0 } else { rank(k - 1) }, rank(k), ring);
        if k > lo {
            d.set_block(z.rank(k - 1), 0, &IntMatrix::identity(z.rank(k), ring));
        }
        diffs.push(d);
    }
    let e = ChainComplex::from_parts(ring, lo, ranks, diffs);
    let eps = ChainMap::from_fn_unchecked(&e, z, |k| {
        let mut m = IntMatrix::zeros(z.rank(k), rank(k), ring);
        m.set_block(0, 0, &IntMatrix::identity(z.rank(k), ring));
        m.set_block(0, z.rank(k), &z.diff(k + 1));
        m
    });
    (e, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RingTag;

    #[test]
    fn cone_of_zero_map_is_target() {
        let z = RingTag::Integers;
        let y = ChainComplex::moore(3, 0);
        let f = ChainMap::zero(&ChainComplex::zero(z), &y);
        assert_eq!(cone(&f).complex, y);
    }

    #[test]
    fn cone_of_times_two() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        let c = cone(&ChainMap::scalar(&p, 2)).complex;
        assert_eq!((c.lo(), c.hi()), (0, 1));
        assert_eq!(c.diff(1), IntMatrix::from_i64_rows(&[vec![2]], z));
    }

    #[test]
    fn disk_cover_is_acyclic_and_onto() {
        let m = ChainComplex::moore(5, -1);
        let (e, eps) = disk_cover(&m);
        assert!(crate::chain::is_acyclic(&e));
        assert!(eps.is_degreewise_surjective());
    }

    #[test]
    fn rejects_non_chain_map() {
        let z = RingTag::Integers;
        let m = ChainComplex::moore(2, 0);
        let mut comps = BTreeMap::new();
        comps.insert(0, IntMatrix::from_i64_rows(&[vec![1]], z));
        comps.insert(1, IntMatrix::from_i64_rows(&[vec![0]], z));
        assert!(matches!(ChainMap::from_map(&m, &m, &comps), Err(Error::NotAChainMap { .. })));
    }
}
