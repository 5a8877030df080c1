use super::complex::ChainComplex;
use super::homology::{induced_map_between, Homology};
use super::map::ChainMap;
use crate::error::{Error, Result};
use crate::exactalg::{FgAbGroup, GroupHom, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    /// Source degree `k` of the block `Hom(X_k, Y_{k+m})`.
    pub k: i64,
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

/// The Hom-complex `Hom(X, Y)` with `Hom_m = ⊕_k Hom(X_k, Y_{k+m})` and
/// `D(f) = d_Y f - (-1)^m f d_X`. Entries of a block are stored row-major.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub complex: ChainComplex,
    blocks: BTreeMap<i64, Vec<Block>>,
}

fn sign(m: i64) -> i64 {
    if m.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl HomComplex {
    pub fn new(x: &ChainComplex, y: &ChainComplex) -> Result<HomComplex> {
        if x.ring() != y.ring() {
            return Err(Error::RingMismatch("hom complex".into()));
        }
        let ring = x.ring();
        let mut blocks = BTreeMap::new();
        if x.is_zero() || y.is_zero() {
            return Ok(HomComplex {
                source: x.clone(),
                target: y.clone(),
                complex: ChainComplex::zero(ring),
                blocks,
            });
        }
        let lo = y.lo() - x.hi();
        let hi = y.hi() - x.lo();
        for m in lo - 1..=hi + 1 {
            let mut v = Vec::new();
            let mut off = 0;
            for k in x.degrees() {
                let (rows, cols) = (y.rank(k + m), x.rank(k));
                if rows * cols > 0 {
                    v.push(Block {
                        k,
                        offset: off,
                        rows,
                        cols,
                    });
                    off += rows * cols;
                }
            }
            blocks.insert(m, v);
        }
        let mut h = HomComplex {
            source: x.clone(),
            target: y.clone(),
            complex: ChainComplex::zero(ring),
            blocks,
        };
        let ranks: Vec<usize> = (lo..=hi).map(|m| h.dim(m)).collect();
        let diffs: Vec<IntMatrix> = (lo..=hi)
            .map(|m| {
                if m == lo {
                    IntMatrix::zeros(0, h.dim(m), ring)
                } else {
                    h.differential(m)
                }
            })
            .collect();
        h.complex = ChainComplex::from_parts(ring, lo, ranks, diffs);
        Ok(h)
    }

    pub fn blocks(&self, m: i64) -> &[Block] {
        self.blocks.get(&m).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, m: i64) -> usize {
        self.blocks(m).iter().map(|b| b.rows * b.cols).sum()
    }

    fn block_at(&self, m: i64, k: i64) -> Option<Block> {
        self.blocks(m).iter().copied().find(|b| b.k == k)
    }

    fn differential(&self, m: i64) -> IntMatrix {
        let x = &self.source;
        let y = &self.target;
        let mut d = IntMatrix::zeros(self.dim(m - 1), self.dim(m), x.ring());
        let s = BigInt::from(-sign(m));
        for b in self.blocks(m) {
            let k = b.k;
            // d_Y f_k lands in block k of degree m-1
            if let Some(t) = self.block_at(m - 1, k) {
                let dy = y.diff(k + m);
                for a in 0..b.rows {
                    for c in 0..b.cols {
                        for a2 in 0..t.rows {
                            let v = dy.get(a2, a);
                            if !v.is_zero() {
                                let (i, j) = (t.offset + a2 * t.cols + c, b.offset + a * b.cols + c);
                                let cur = d.get(i, j) + v;
                                d.set(i, j, cur);
                            }
                        }
                    }
                }
            }
            // f_k d_X^{(k+1)} lands in block k+1 of degree m-1
            if let Some(t) = self.block_at(m - 1, k + 1) {
                let dx = x.diff(k + 1);
                for a in 0..b.rows {
                    for c in 0..b.cols {
                        for c2 in 0..t.cols {
                            let v = dx.get(c, c2);
                            if !v.is_zero() {
                                let (i, j) = (t.offset + a * t.cols + c2, b.offset + a * b.cols + c);
                                let cur = d.get(i, j) + v * &s;
                                d.set(i, j, cur);
                            }
                        }
                    }
                }
            }
        }
        IntMatrix::from_vec(d.rows(), d.cols(), d.entries().iter().map(|e| x.ring().reduce_ref(e)).collect(), x.ring())
    }

    /// Flattens a family of maps `X_k -> Y_{k+m}` into a vector of `Hom_m`.
    pub fn to_vector(&self, m: i64, mut comp: impl FnMut(i64) -> IntMatrix) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim(m)];
        for b in self.blocks(m) {
            let f = comp(b.k);
            for a in 0..b.rows {
                for c in 0..b.cols {
                    v[b.offset + a * b.cols + c] = f.get(a, c).clone();
                }
            }
        }
        v
    }

    /// Component `X_k -> Y_{k+m}` of a vector of `Hom_m`.
    pub fn component(&self, m: i64, v: &[BigInt], k: i64) -> IntMatrix {
        let ring = self.source.ring();
        let mut out = IntMatrix::zeros(self.target.rank(k + m), self.source.rank(k), ring);
        if let Some(b) = self.block_at(m, k) {
            for a in 0..b.rows {
                for c in 0..b.cols {
                    out.set(a, c, v[b.offset + a * b.cols + c].clone());
                }
            }
        }
        out
    }

    pub fn map_to_vector(&self, f: &ChainMap) -> Vec<BigInt> {
        self.to_vector(0, |k| f.component(k))
    }

    /// The chain map encoded by a 0-cycle.
    pub fn vector_to_map(&self, v: &[BigInt]) -> Result<ChainMap> {
        ChainMap::from_fn(&self.source, &self.target, |k| self.component(0, v, k))
    }
}

pub fn hom_complex(x: &ChainComplex, y: &ChainComplex) -> Result<HomComplex> {
    HomComplex::new(x, y)
}

/// `[X, Y]_n = H_n(Hom(X, Y))`, so `[X, Y]_0` is the group of chain maps up to homotopy.
pub fn derived_hom(x: &ChainComplex, y: &ChainComplex, n: i64) -> Result<FgAbGroup> {
    Ok(Homology::compute(&HomComplex::new(x, y)?.complex, n).group)
}

/// `h ↦ g h f` on Hom-complexes, for `f: X' -> X` and `g: Y -> Y'`.
pub fn induced_hom_complex_map(
    from: &HomComplex,
    to: &HomComplex,
    f: &ChainMap,
    g: &ChainMap,
) -> Result<ChainMap> {
    if f.target() != &from.source || f.source() != &to.source || g.source() != &from.target || g.target() != &to.target {
        return Err(Error::Shape("induced hom-complex map endpoints".into()));
    }
    let ring = from.complex.ring();
    Ok(ChainMap::from_fn_unchecked(&from.complex, &to.complex, |m| {
        let mut out = IntMatrix::zeros(to.dim(m), from.dim(m), ring);
        for b in from.blocks(m) {
            let Some(t) = to.block_at(m, b.k) else { continue };
            let gm = g.component(b.k + m);
            let fm = f.component(b.k);
            for a in 0..b.rows {
                for c in 0..b.cols {
                    for a2 in 0..t.rows {
                        let ga = gm.get(a2, a);
                        if ga.is_zero() {
                            continue;
                        }
                        for c2 in 0..t.cols {
                            let fc = fm.get(c, c2);
                            if !fc.is_zero() {
                                let (i, j) = (t.offset + a2 * t.cols + c2, b.offset + a * b.cols + c);
                                let cur = out.get(i, j) + ga * fc;
                                out.set(i, j, ring.reduce(cur));
                            }
                        }
                    }
                }
            }
        }
        out
    }))
}

/// `[f, g]_n: [X, Y]_n -> [X', Y']_n`, `h ↦ g h f`.
pub fn induced_map_on_derived_hom(f: &ChainMap, g: &ChainMap, n: i64) -> Result<GroupHom> {
    let from = HomComplex::new(f.target(), g.source())?;
    let to = HomComplex::new(f.source(), g.target())?;
    let phi = induced_hom_complex_map(&from, &to, f, g)?;
    let h1 = Homology::compute(&from.complex, n);
    let h2 = Homology::compute(&to.complex, n);
    Ok(induced_map_between(&phi, &h1, &h2))
}

/// Decodes a class of `[X, Y]_0` into a representing chain map.
pub fn class_to_map(h: &HomComplex, hom0: &Homology, class: &[BigInt]) -> Result<ChainMap> {
    let v = hom0.cycles.mul_vec(class);
    h.vector_to_map(&v)
}

/// Class in `[X, Y]_0` of a chain map.
pub fn map_to_class(h: &HomComplex, hom0: &Homology, f: &ChainMap) -> Vec<BigInt> {
    hom0.class_of(&h.map_to_vector(f))
}

/// Whether two chain maps are chain homotopic.
pub fn homotopic(f: &ChainMap, g: &ChainMap) -> Result<bool> {
    let h = HomComplex::new(f.source(), f.target())?;
    let hom0 = Homology::compute(&h.complex, 0);
    let diff = f.add(&g.neg())?;
    Ok(hom0.group.is_zero_element(&map_to_class(&h, &hom0, &diff)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, shift};
    use crate::exactalg::RingTag;

    #[test]
    fn moore_self_hom() {
        let m2 = ChainComplex::moore(2, 0);
        let h = HomComplex::new(&m2, &m2).unwrap();
        assert_eq!(h.complex.ranks_map(), [(-1, 1), (0, 2), (1, 1)].into_iter().collect());
        assert_eq!(derived_hom(&m2, &m2, 0).unwrap(), FgAbGroup::cyclic(2));
        assert_eq!(derived_hom(&m2, &m2, -1).unwrap(), FgAbGroup::cyclic(2));
        assert!(derived_hom(&m2, &m2, 1).unwrap().is_zero());
    }

    #[test]
    fn represented_functor() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        let y = ChainComplex::moore(6, -1).direct_sum(&ChainComplex::point(z, 1, 2));
        for n in -3..=3 {
            assert_eq!(derived_hom(&p, &y, n).unwrap(), homology(&y, n));
        }
    }

    #[test]
    fn shifting_target() {
        let m2 = ChainComplex::moore(2, 0);
        let m4 = ChainComplex::moore(4, 1);
        for n in -4..=4 {
            assert_eq!(
                derived_hom(&m2, &shift(&m4, 2), n).unwrap(),
                derived_hom(&m2, &m4, n - 2).unwrap()
            );
        }
    }

    #[test]
    fn identity_not_homotopic_to_zero_on_moore() {
        let m2 = ChainComplex::moore(2, 0);
        let id = ChainMap::identity(&m2);
        assert!(!homotopic(&id, &ChainMap::zero(&m2, &m2)).unwrap());
        let two = ChainMap::scalar(&m2, 2);
        assert!(homotopic(&two, &ChainMap::zero(&m2, &m2)).unwrap());
    }

    #[test]
    fn ring_mismatch() {
        let a = ChainComplex::point(RingTag::Integers, 0, 1);
        let b = ChainComplex::point(RingTag::PrimeField(3), 0, 1);
        assert!(matches!(derived_hom(&a, &b, 0), Err(Error::RingMismatch(_))));
    }
}
