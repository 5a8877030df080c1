//! Integer linear algebra built on [`snf`].

use super::matrix::IntMatrix;
use super::snf::snf;
use num_bigint::BigInt;
use num_traits::Zero;

/// Basis of the kernel (columns) and a left inverse giving kernel coordinates.
pub fn kernel_basis(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let r = snf(m);
    let rank = r.rank();
    let idx: Vec<usize> = (rank..m.cols()).collect();
    (r.v.select_cols(&idx), r.v_inv.select_rows(&idx))
}

/// Some `x` with `m * x = b` (column by column), or `None`.
pub fn solve(m: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(m.rows(), b.rows(), "solve: row mismatch");
    let ring = m.ring();
    let r = snf(m);
    let ub = r.u.mul(b);
    let rank = r.rank();
    let mut y = IntMatrix::zeros(m.cols(), b.cols(), ring);
    for j in 0..b.cols() {
        for i in 0..m.rows() {
            let x = ub.get(i, j);
            if i < rank {
                let d = &r.invariant_factors[i];
                if !ring.divides(d, x) {
                    return None;
                }
                let (q, _) = ring.div_rem(x, d);
                y.set(i, j, q);
            } else if !x.is_zero() {
                return None;
            }
        }
    }
    Some(r.v.mul(&y))
}

pub fn solve_vec(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let b = IntMatrix::column_vector(b, m.ring());
    solve(m, &b).map(|x| x.column(0))
}

/// Independent generators of the column span.
pub fn image_basis(m: &IntMatrix) -> IntMatrix {
    let r = snf(m);
    let mut out = IntMatrix::zeros(m.rows(), r.rank(), m.ring());
    for (i, d) in r.invariant_factors.iter().enumerate() {
        for k in 0..m.rows() {
            out.set(k, i, r.u_inv.get(k, i) * d);
        }
    }
    out
}

pub fn rank(m: &IntMatrix) -> usize {
    snf(m).rank()
}

/// `V S^+ U` where `S^+` inverts the unit pivots. When every pivot is a unit this
/// satisfies `m * g * m = m`.
pub fn generalized_inverse(m: &IntMatrix) -> IntMatrix {
    let ring = m.ring();
    let r = snf(m);
    let mut sp = IntMatrix::zeros(m.cols(), m.rows(), ring);
    for (i, d) in r.invariant_factors.iter().enumerate() {
        if let Some(inv) = ring.inverse(d) {
            sp.set(i, i, inv);
        }
    }
    r.v.mul(&sp).mul(&r.u)
}

/// Injective with a free cokernel (all invariant factors are units).
pub fn is_split_mono(m: &IntMatrix) -> bool {
    let r = snf(m);
    r.rank() == m.cols() && r.invariant_factors.iter().all(|d| m.ring().is_unit(d))
}

pub fn is_surjective(m: &IntMatrix) -> bool {
    let r = snf(m);
    r.rank() == m.rows() && r.invariant_factors.iter().all(|d| m.ring().is_unit(d))
}

/// Basis of a complement to the (saturated) column span of a split mono `m`:
/// returns `(complement, projection)` where `projection` kills `m` and is a left
/// inverse of `complement`, plus a retraction `rho` with `rho * m = I`.
pub fn split_complement(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let r = snf(m);
    let k = m.cols();
    let n = m.rows();
    let rest: Vec<usize> = (k..n).collect();
    let first: Vec<usize> = (0..k).collect();
    let complement = r.u_inv.select_cols(&rest);
    let projection = r.u.select_rows(&rest);
    let rho = r.v.mul(&r.u.select_rows(&first));
    (complement, projection, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RingTag;

    #[test]
    fn kernel_of_row() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4, 6]], RingTag::Integers);
        let (k, left) = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        assert!(left.mul(&k).is_identity());
    }

    #[test]
    fn solve_parity() {
        let z = RingTag::Integers;
        let m = IntMatrix::from_i64_rows(&[vec![2]], z);
        assert!(solve(&m, &IntMatrix::from_i64_rows(&[vec![1]], z)).is_none());
        let x = solve(&m, &IntMatrix::from_i64_rows(&[vec![6]], z)).unwrap();
        assert_eq!(x, IntMatrix::from_i64_rows(&[vec![3]], z));
    }

    #[test]
    fn complement_of_split_mono() {
        let z = RingTag::Integers;
        let m = IntMatrix::from_i64_rows(&[vec![1, 0], vec![2, 1], vec![3, 5]], z);
        assert!(is_split_mono(&m));
        let (c, p, rho) = split_complement(&m);
        assert!(p.mul(&m).is_zero());
        assert!(p.mul(&c).is_identity());
        assert!(rho.mul(&m).is_identity());
        assert!(m.mul(&rho).add(&c.mul(&p)).is_identity());
    }

    #[test]
    fn generalized_inverse_of_surjection() {
        let z = RingTag::Integers;
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 3], vec![0, 1, 4]], z);
        let g = generalized_inverse(&m);
        assert!(m.mul(&g).is_identity());
    }
}
