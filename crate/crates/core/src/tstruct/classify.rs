use crate::chain::{cone, homology, ChainMap};
use std::fmt;

/// An integer or one of the two infinities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInf,
    Finite(i64),
    PosInf,
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::Finite(n) => write!(f, "{n}"),
            Extended::PosInf => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapClassification {
    /// Largest `n` with `H_i(cone f) = 0` for all `i <= n`.
    pub max_n_equivalence: Extended,
    /// Smallest `n` with `H_i(cone f) = 0` for all `i > n`.
    pub min_co_n_equivalence: Extended,
    pub is_weak_equivalence: bool,
}

pub fn classify_map(f: &ChainMap) -> MapClassification {
    let c = cone(f).complex;
    let nonzero: Vec<i64> = c.degrees().filter(|&n| !homology(&c, n).is_zero()).collect();
    match (nonzero.first(), nonzero.last()) {
        (Some(&a), Some(&b)) => MapClassification {
            max_n_equivalence: Extended::Finite(a - 1),
            min_co_n_equivalence: Extended::Finite(b),
            is_weak_equivalence: false,
        },
        _ => MapClassification {
            max_n_equivalence: Extended::PosInf,
            min_co_n_equivalence: Extended::NegInf,
            is_weak_equivalence: true,
        },
    }
}

impl MapClassification {
    pub fn is_n_equivalence(&self, n: i64) -> bool {
        self.max_n_equivalence >= Extended::Finite(n)
    }

    pub fn is_co_n_equivalence(&self, n: i64) -> bool {
        self.min_co_n_equivalence <= Extended::Finite(n)
    }
}

pub fn is_n_equivalence(f: &ChainMap, n: i64) -> bool {
    classify_map(f).is_n_equivalence(n)
}

pub fn is_co_n_equivalence(f: &ChainMap, n: i64) -> bool {
    classify_map(f).is_co_n_equivalence(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::exactalg::RingTag;

    #[test]
    fn examples() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        let c = classify_map(&ChainMap::identity(&p));
        assert_eq!(
            (c.max_n_equivalence, c.min_co_n_equivalence, c.is_weak_equivalence),
            (Extended::PosInf, Extended::NegInf, true)
        );
        let c = classify_map(&ChainMap::scalar(&p, 2));
        assert_eq!(c.max_n_equivalence, Extended::Finite(-1));
        assert_eq!(c.min_co_n_equivalence, Extended::Finite(0));
        let five = ChainComplex::point(z, 5, 1);
        let c = classify_map(&ChainMap::zero(&ChainComplex::zero(z), &five));
        assert_eq!(c.max_n_equivalence, Extended::Finite(4));
        assert!(c.is_n_equivalence(-10) && !c.is_n_equivalence(5));
    }
}
