use crate::error::{Error, Result};
use crate::exactalg::{IntMatrix, RingTag};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;

/// Bounded chain complex of finitely generated free modules, homologically graded.
///
/// Stored trimmed: the extreme degrees have nonzero rank, and the zero complex is
/// the empty range `lo = 0, hi = -1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    ring: RingTag,
    lo: i64,
    ranks: Vec<usize>,
    // diffs[i] = d_{lo+i}: X_{lo+i} -> X_{lo+i-1}
    diffs: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Checked constructor. `diffs[i]` is the differential out of degree `lo + i`.
    pub fn new(ring: RingTag, lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if diffs.len() != ranks.len() {
            return Err(Error::Shape("one differential per degree required".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            if d.shape() != (below, ranks[i]) {
                return Err(Error::Shape(format!(
                    "differential out of degree {} has shape {}x{}, expected {}x{}",
                    lo + i as i64,
                    d.rows(),
                    d.cols(),
                    below,
                    ranks[i]
                )));
            }
            if d.ring() != ring {
                return Err(Error::RingMismatch("differential ring".into()));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].mul(&diffs[i]).is_zero() {
                return Err(Error::NotAComplex {
                    degree: lo + i as i64,
                });
            }
        }
        Ok(Self::trimmed(ring, lo, ranks, diffs))
    }

    /// Builds from sparse degree maps; missing differentials are zero.
    pub fn from_maps(
        ring: RingTag,
        ranks: &BTreeMap<i64, usize>,
        diffs: &BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        let (Some(&lo), Some(&hi)) = (ranks.keys().next(), ranks.keys().next_back()) else {
            if diffs.values().any(|d| d.rows() * d.cols() > 0) {
                return Err(Error::Shape("differential on the zero complex".into()));
            }
            return Ok(Self::zero(ring));
        };
        for &n in diffs.keys() {
            if n < lo || n > hi {
                let d = &diffs[&n];
                if d.rows() * d.cols() > 0 {
                    return Err(Error::Shape(format!("differential at degree {n} outside support")));
                }
            }
        }
        let rk = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        let mut rs = Vec::new();
        let mut ds = Vec::new();
        for n in lo..=hi {
            rs.push(rk(n));
            let below = if n == lo { 0 } else { rk(n - 1) };
            ds.push(match diffs.get(&n) {
                Some(d) => d.clone(),
                None => IntMatrix::zeros(below, rk(n), ring),
            });
        }
        Self::new(ring, lo, rs, ds)
    }

    fn trimmed(ring: RingTag, lo: i64, mut ranks: Vec<usize>, mut diffs: Vec<IntMatrix>) -> Self {
        let mut lo = lo;
        while ranks.last() == Some(&0) {
            ranks.pop();
            diffs.pop();
        }
        let lead = ranks.iter().take_while(|&&r| r == 0).count();
        if lead == ranks.len() {
            return Self::zero(ring);
        }
        ranks.drain(..lead);
        diffs.drain(..lead);
        lo += lead as i64;
        ChainComplex {
            ring,
            lo,
            ranks,
            diffs,
        }
    }

    /// Unchecked constructor for internal builders that guarantee `d∘d = 0`.
    pub(crate) fn from_parts(ring: RingTag, lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Self {
        debug_assert!(Self::new(ring, lo, ranks.clone(), diffs.clone()).is_ok());
        Self::trimmed(ring, lo, ranks, diffs)
    }

    pub fn zero(ring: RingTag) -> Self {
        ChainComplex {
            ring,
            lo: 0,
            ranks: vec![],
            diffs: vec![],
        }
    }

    /// `R^rank` concentrated in one degree.
    pub fn point(ring: RingTag, degree: i64, rank: usize) -> Self {
        Self::trimmed(ring, degree, vec![rank], vec![IntMatrix::zeros(0, rank, ring)])
    }

    /// Moore complex `Z --m--> Z` in degrees `degree + 1, degree`.
    pub fn moore(m: i64, degree: i64) -> Self {
        let z = RingTag::Integers;
        Self::new(
            z,
            degree,
            vec![1, 1],
            vec![IntMatrix::zeros(0, 1, z), IntMatrix::from_i64_rows(&[vec![m]], z)],
        )
        .expect("moore complex")
    }

    /// Contractible disk `R --id--> R` in degrees `top, top - 1`.
    pub fn disk(ring: RingTag, top: i64) -> Self {
        Self::new(
            ring,
            top - 1,
            vec![1, 1],
            vec![IntMatrix::zeros(0, 1, ring), IntMatrix::identity(1, ring)],
        )
        .expect("disk")
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_n: X_n -> X_{n-1}`, a correctly shaped zero matrix outside the support.
    pub fn diff(&self, n: i64) -> IntMatrix {
        if n < self.lo || n > self.hi() {
            IntMatrix::zeros(self.rank(n - 1), self.rank(n), self.ring)
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    pub fn diff_ref(&self, n: i64) -> Option<&IntMatrix> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some(&self.diffs[(n - self.lo) as usize])
        }
    }

    /// Re-checks shapes and `d∘d = 0`.
    pub fn validate(&self) -> bool {
        Self::new(self.ring, self.lo, self.ranks.clone(), self.diffs.clone()).is_ok()
    }

    pub fn ranks_map(&self) -> BTreeMap<i64, usize> {
        self.degrees().map(|n| (n, self.rank(n))).collect()
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut ranks = Vec::new();
        let mut diffs = Vec::new();
        for n in lo..=hi {
            ranks.push(self.rank(n) + other.rank(n));
            let d = self.diff(n).direct_sum(&other.diff(n));
            diffs.push(if n == lo {
                IntMatrix::zeros(0, self.rank(n) + other.rank(n), self.ring)
            } else {
                d
            });
        }
        Self::from_parts(self.ring, lo, ranks, diffs)
    }
}

/// `(Σ^k X)_n = X_{n-k}` with the differential multiplied by `(-1)^k`.
pub fn shift(x: &ChainComplex, k: i64) -> ChainComplex {
    if x.is_zero() {
        return x.clone();
    }
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let diffs = x.diffs.iter().map(|d| d.scale(&BigInt::from(sign))).collect();
    ChainComplex::from_parts(x.ring, x.lo + k, x.ranks.clone(), diffs)
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex[{}]{{", self.ring)?;
        for n in self.degrees() {
            write!(f, " {}:{} d={:?}", n, self.rank(n), self.diff(n))?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let z = RingTag::Integers;
        assert!(ChainComplex::disk(z, 1).validate());
        let bad = ChainComplex::new(
            z,
            -1,
            vec![1, 1, 1],
            vec![
                IntMatrix::zeros(0, 1, z),
                IntMatrix::from_i64_rows(&[vec![1]], z),
                IntMatrix::from_i64_rows(&[vec![2]], z),
            ],
        );
        assert_eq!(bad.unwrap_err(), Error::NotAComplex { degree: 1 });
    }

    #[test]
    fn shifts() {
        let z = RingTag::Integers;
        let m2 = ChainComplex::moore(2, 0);
        assert_eq!(shift(&m2, 0), m2);
        let s = shift(&m2, 1);
        assert_eq!((s.lo(), s.hi()), (1, 2));
        assert_eq!(s.diff(2), IntMatrix::from_i64_rows(&[vec![-2]], z));
        assert_eq!(shift(&ChainComplex::point(z, 0, 1), 2), ChainComplex::point(z, 2, 1));
    }

    #[test]
    fn trimming() {
        let z = RingTag::Integers;
        let x = ChainComplex::new(z, -2, vec![0, 1, 0], vec![
            IntMatrix::zeros(0, 0, z),
            IntMatrix::zeros(0, 1, z),
            IntMatrix::zeros(1, 0, z),
        ])
        .unwrap();
        assert_eq!(x, ChainComplex::point(z, -1, 1));
        assert!(ChainComplex::point(z, 3, 0).is_zero());
    }
}
