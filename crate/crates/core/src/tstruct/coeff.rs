use crate::chain::{derived_hom, ChainComplex};
use crate::error::{Error, Result};
use crate::exactalg::{FgAbGroup, IntMatrix};

/// Two-term free resolution of `A` in degrees 1 and 0.
pub fn free_resolution(a: &FgAbGroup) -> ChainComplex {
    let ring = a.ring();
    let rel = a.relations();
    ChainComplex::new(
        ring,
        0,
        vec![a.ngens(), rel.cols()],
        vec![IntMatrix::zeros(0, a.ngens(), ring), rel],
    )
    .expect("resolution")
}

/// `H^p(X; A) = [X, K(A)]_{-p}`.
pub fn cohomology_with_coefficients(x: &ChainComplex, a: &FgAbGroup, p: i64) -> Result<FgAbGroup> {
    if x.ring() != a.ring() {
        return Err(Error::RingMismatch("coefficients".into()));
    }
    derived_hom(x, &free_resolution(a), -p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RingTag;

    #[test]
    fn examples() {
        let z = RingTag::Integers;
        let a = FgAbGroup::cyclic(6).direct_sum(&FgAbGroup::free(z, 1));
        let p = ChainComplex::point(z, 0, 1);
        assert_eq!(cohomology_with_coefficients(&p, &a, 0).unwrap(), a);
        let m2 = ChainComplex::moore(2, 0);
        let z2 = FgAbGroup::cyclic(2);
        assert_eq!(cohomology_with_coefficients(&m2, &z2, 1).unwrap(), z2);
        assert!(cohomology_with_coefficients(&m2, &z2, 4).unwrap().is_zero());
        assert!(cohomology_with_coefficients(&m2, &z2, -3).unwrap().is_zero());
    }
}
