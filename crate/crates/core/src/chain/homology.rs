use super::complex::ChainComplex;
use super::map::ChainMap;
use crate::exactalg::linalg::kernel_basis;
use crate::exactalg::{group_from_presentation, FgAbGroup, GroupHom, IntMatrix};
use num_bigint::BigInt;

/// `H_n(X)` together with representing cycles and a decoder.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub group: FgAbGroup,
    /// `rank(n) x ngens`: a cycle for every canonical generator.
    pub cycles: IntMatrix,
    // kernel coordinates of a cycle, then canonical coordinates
    kernel_left: IntMatrix,
    proj: IntMatrix,
}

impl Homology {
    pub fn compute(x: &ChainComplex, n: i64) -> Homology {
        let ring = x.ring();
        let (k, kl) = kernel_basis(&x.diff(n));
        let rel = kl.mul(&x.diff(n + 1));
        let p = group_from_presentation(&rel);
        let cycles = k.mul(&p.lift);
        Homology {
            degree: n,
            group: p.group,
            cycles,
            kernel_left: if kl.rows() == 0 {
                IntMatrix::zeros(0, x.rank(n), ring)
            } else {
                kl
            },
            proj: p.proj,
        }
    }

    /// Canonical coordinates of the class of a cycle `z`.
    pub fn class_of(&self, z: &[BigInt]) -> Vec<BigInt> {
        let c = self.kernel_left.mul_vec(z);
        self.group.reduce_vec(&self.proj.mul_vec(&c))
    }

    /// Classes of the columns of `m` (each column a cycle), as a matrix.
    pub fn classes_of(&self, m: &IntMatrix) -> IntMatrix {
        let mut out = self.proj.mul(&self.kernel_left.mul(m));
        self.group.reduce_rows(&mut out);
        out
    }
}

pub fn homology(x: &ChainComplex, n: i64) -> FgAbGroup {
    Homology::compute(x, n).group
}

/// Homology in every degree of the support (degrees with `H = 0` included).
pub fn homology_all(x: &ChainComplex) -> Vec<(i64, FgAbGroup)> {
    x.degrees().map(|n| (n, homology(x, n))).collect()
}

pub fn is_acyclic(x: &ChainComplex) -> bool {
    x.degrees().all(|n| homology(x, n).is_zero())
}

/// `H_n(f)` given precomputed homology of source and target.
pub fn induced_map_between(f: &ChainMap, hx: &Homology, hy: &Homology) -> GroupHom {
    let n = hx.degree;
    let m = hy.classes_of(&f.component(n).mul(&hx.cycles));
    GroupHom::new(hx.group.clone(), hy.group.clone(), m).expect("induced homology map")
}

pub fn induced_homology_map(f: &ChainMap, n: i64) -> GroupHom {
    let hx = Homology::compute(f.source(), n);
    let hy = Homology::compute(f.target(), n);
    induced_map_between(f, &hx, &hy)
}

pub fn is_quasi_isomorphism(f: &ChainMap) -> bool {
    let lo = f.source().lo().min(f.target().lo());
    let hi = f.source().hi().max(f.target().hi());
    (lo..=hi).all(|n| crate::exactalg::is_isomorphism(&induced_homology_map(f, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::cone;
    use crate::exactalg::RingTag;

    #[test]
    fn small_homology() {
        let z = RingTag::Integers;
        assert_eq!(homology(&ChainComplex::point(z, 0, 1), 0), FgAbGroup::free(z, 1));
        let m2 = ChainComplex::moore(2, 0);
        assert_eq!(homology(&m2, 0), FgAbGroup::cyclic(2));
        assert!(homology(&m2, 1).is_zero());
        assert!(homology(&m2, 7).is_zero());
        assert!(is_acyclic(&ChainComplex::disk(z, 3)));
    }

    #[test]
    fn cone_of_doubling() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        let c = cone(&ChainMap::scalar(&p, 2)).complex;
        assert_eq!(homology(&c, 0), FgAbGroup::cyclic(2));
        assert!(homology(&c, 1).is_zero());
        assert!(is_acyclic(&cone(&ChainMap::identity(&p)).complex));
    }

    #[test]
    fn doubling_on_homology() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        let h = induced_homology_map(&ChainMap::scalar(&p, 2), 0);
        assert_eq!(h.matrix(), &IntMatrix::from_i64_rows(&[vec![2]], z));
    }

    #[test]
    fn field_coefficients() {
        let f2 = RingTag::PrimeField(2);
        let d = IntMatrix::from_i64_rows(&[vec![2]], f2);
        let x = ChainComplex::new(f2, 0, vec![1, 1], vec![IntMatrix::zeros(0, 1, f2), d]).unwrap();
        assert_eq!(homology(&x, 0), FgAbGroup::free(f2, 1));
        assert_eq!(homology(&x, 1), FgAbGroup::free(f2, 1));
    }
}
