use super::matrix::IntMatrix;
use super::ring::RingTag;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Smith normal form `U * M * V = S` together with the inverses of `U` and `V`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries of `S`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of zero diagonal slots of `S`.
    pub fn zero_count(&self) -> usize {
        self.s.rows().min(self.s.cols()) - self.rank()
    }
}

struct Work {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    // row[i] += c * row[t]
    fn row_add(&mut self, i: usize, t: usize, c: &BigInt) {
        self.s.add_row_multiple(i, t, c);
        self.u.add_row_multiple(i, t, c);
        self.u_inv.add_col_multiple(t, i, &-c);
    }

    // col[j] += c * col[t]
    fn col_add(&mut self, j: usize, t: usize, c: &BigInt) {
        self.s.add_col_multiple(j, t, c);
        self.v.add_col_multiple(j, t, c);
        self.v_inv.add_row_multiple(t, j, &-c);
    }

    fn scale_row(&mut self, t: usize, w: &BigInt, w_inv: &BigInt) {
        self.s.scale_row(t, w);
        self.u.scale_row(t, w);
        self.u_inv.scale_col(t, w_inv);
    }
}

fn find_pivot(s: &IntMatrix, t: usize, ring: RingTag) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            let sz = ring.size(x);
            if best.as_ref().is_none_or(|b| sz < b.2) {
                let done = sz.is_one();
                best = Some((i, j, sz));
                if done {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let ring = m.ring();
    let (r, c) = m.shape();
    let mut w = Work {
        s: m.clone(),
        u: IntMatrix::identity(r, ring),
        u_inv: IntMatrix::identity(r, ring),
        v: IntMatrix::identity(c, ring),
        v_inv: IntMatrix::identity(c, ring),
    };
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = find_pivot(&w.s, t, ring) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if w.s.get(i, t).is_zero() {
                    continue;
                }
                let (q, rem) = ring.div_rem(w.s.get(i, t), w.s.get(t, t));
                w.row_add(i, t, &-q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if w.s.get(t, j).is_zero() {
                    continue;
                }
                let (q, rem) = ring.div_rem(w.s.get(t, j), w.s.get(t, t));
                w.col_add(j, t, &-q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // bring the smallest leftover in row/column t to the pivot
                let mut best: Option<(bool, usize, BigInt)> = None;
                for i in t + 1..r {
                    let x = w.s.get(i, t);
                    if !x.is_zero() {
                        let sz = ring.size(x);
                        if best.as_ref().is_none_or(|b| sz < b.2) {
                            best = Some((true, i, sz));
                        }
                    }
                }
                for j in t + 1..c {
                    let x = w.s.get(t, j);
                    if !x.is_zero() {
                        let sz = ring.size(x);
                        if best.as_ref().is_none_or(|b| sz < b.2) {
                            best = Some((false, j, sz));
                        }
                    }
                }
                if let Some((is_row, k, _)) = best {
                    if is_row {
                        w.swap_rows(t, k);
                    } else {
                        w.swap_cols(t, k);
                    }
                }
                continue;
            }
            if ring == RingTag::Integers {
                let p = w.s.get(t, t).clone();
                let mut bad = None;
                'outer: for i in t + 1..r {
                    for j in t + 1..c {
                        if !ring.divides(&p, w.s.get(i, j)) {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                if let Some(i) = bad {
                    w.row_add(t, i, &BigInt::one());
                    continue;
                }
            }
            break;
        }
        t += 1;
    }
    let mut factors = Vec::new();
    for k in 0..r.min(c) {
        let x = w.s.get(k, k).clone();
        if x.is_zero() {
            break;
        }
        let unit = ring.normalizing_unit(&x);
        if !unit.is_one() {
            let inv = ring.inverse(&unit).expect("unit");
            w.scale_row(k, &unit, &inv);
        }
        factors.push(w.s.get(k, k).clone());
    }
    SnfResult {
        u: w.u,
        u_inv: w.u_inv,
        s: w.s,
        v: w.v,
        v_inv: w.v_inv,
        invariant_factors: factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SnfResult {
        let r = snf(m);
        assert_eq!(r.u.mul(m).mul(&r.v), r.s);
        assert!(r.u.mul(&r.u_inv).is_identity());
        assert!(r.v.mul(&r.v_inv).is_identity());
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j {
                    assert!(r.s.get(i, j).is_zero());
                }
            }
        }
        for w in r.invariant_factors.windows(2) {
            assert!(m.ring().divides(&w[0], &w[1]));
        }
        r
    }

    #[test]
    fn zero_matrix() {
        let r = check(&IntMatrix::from_i64_rows(&[vec![0]], RingTag::Integers));
        assert!(r.invariant_factors.is_empty());
        assert_eq!(r.zero_count(), 1);
    }

    #[test]
    fn two_by_two() {
        // gcd of entries is 2 and |det| = 8
        let r = check(&IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]], RingTag::Integers));
        assert_eq!(r.invariant_factors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_three() {
        let r = check(&IntMatrix::identity(3, RingTag::Integers));
        assert_eq!(r.invariant_factors, vec![BigInt::one(); 3]);
    }

    #[test]
    fn divisibility_fixup() {
        let r = check(&IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]], RingTag::Integers));
        assert_eq!(r.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn negative_entries() {
        let z = RingTag::Integers;
        let r = check(&IntMatrix::from_i64_rows(&[vec![6, 0, -5, 0], vec![0, 6, 0, -5]], z));
        assert_eq!(r.invariant_factors, vec![BigInt::one(); 2]);
    }

    #[test]
    fn over_field() {
        let f = RingTag::PrimeField(2);
        let r = check(&IntMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]], f));
        assert_eq!(r.invariant_factors, vec![BigInt::one()]);
    }
}
