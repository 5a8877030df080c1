use super::ring::RingTag;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Dense row-major matrix of arbitrary-precision integers over a [`RingTag`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    ring: RingTag,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize, ring: RingTag) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
            ring,
        }
    }

    pub fn identity(n: usize, ring: RingTag) -> Self {
        let mut m = Self::zeros(n, n, ring);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>, ring: RingTag) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        let data = data.into_iter().map(|x| ring.reduce(x)).collect();
        IntMatrix {
            rows,
            cols,
            data,
            ring,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], ring: RingTag) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix literal");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Self::from_vec(r, c, data, ring)
    }

    /// Builds a matrix from column vectors of a common length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>], ring: RingTag) -> Self {
        let mut m = Self::zeros(rows, cols.len(), ring);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn column_vector(v: &[BigInt], ring: RingTag) -> Self {
        Self::from_vec(v.len(), 1, v.to_vec(), ring)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt], ring: RingTag) -> Self {
        let mut m = Self::zeros(rows, cols, ring);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        let x = self.ring.reduce(x);
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows, self.ring)
    }

    pub fn with_ring(&self, ring: RingTag) -> Self {
        Self::from_vec(self.rows, self.cols, self.data.clone(), ring)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                let orow = &mut out[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Self::from_vec(self.rows, other.cols, out, self.ring)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                self.ring.reduce(s)
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shapes");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_vec(self.rows, self.cols, data, self.ring)
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shapes");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self::from_vec(self.rows, self.cols, data, self.ring)
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Self::from_vec(self.rows, self.cols, data, self.ring)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut m = Self::zeros(self.cols, self.rows, self.ring);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack rows");
        let mut m = Self::zeros(self.rows, self.cols + other.cols, self.ring);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * m.cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                m.data[i * m.cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            ring: self.ring,
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols, self.ring);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> IntMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut m = Self::zeros(rows, cols, self.ring);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(idx.len(), self.cols, self.ring);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.data[r * self.cols + j] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, idx.len(), self.ring);
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + c] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[src]
    pub fn add_row_multiple(&mut self, target: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[target * self.cols + j] + c * s;
            self.data[target * self.cols + j] = self.ring.reduce(v);
        }
    }

    /// col[target] += c * col[src]
    pub fn add_col_multiple(&mut self, target: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[i * self.cols + target] + c * s;
            self.data[i * self.cols + target] = self.ring.reduce(v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[i * self.cols + j] * c;
            self.data[i * self.cols + j] = self.ring.reduce(v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + j] * c;
            self.data[i * self.cols + j] = self.ring.reduce(v);
        }
    }

    /// Reduces row `i` modulo `m` (no-op when `m` is zero).
    pub fn reduce_row_mod(&mut self, i: usize, m: &BigInt) {
        if m.is_zero() {
            return;
        }
        use num_integer::Integer;
        for j in 0..self.cols {
            let v = self.data[i * self.cols + j].mod_floor(m);
            self.data[i * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join("\t"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_stack() {
        let z = RingTag::Integers;
        let a = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]], z);
        let b = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]], z);
        assert_eq!(a.mul(&b), IntMatrix::from_i64_rows(&[vec![2, 1], vec![4, 3]], z));
        assert_eq!(a.hstack(&b).cols(), 4);
        assert_eq!(a.vstack(&b).rows(), 4);
        assert_eq!(a.transpose().get(0, 1), &BigInt::from(3));
    }

    #[test]
    fn field_entries_reduced() {
        let f = RingTag::PrimeField(3);
        let a = IntMatrix::from_i64_rows(&[vec![4, -1]], f);
        assert_eq!(a.row(0), &[BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn empty_shapes_multiply() {
        let z = RingTag::Integers;
        let a = IntMatrix::zeros(2, 0, z);
        let b = IntMatrix::zeros(0, 3, z);
        assert_eq!(a.mul(&b), IntMatrix::zeros(2, 3, z));
    }
}
