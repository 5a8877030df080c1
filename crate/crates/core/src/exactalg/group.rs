use super::matrix::IntMatrix;
use super::ring::RingTag;
use super::snf::snf;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// Finitely generated abelian group in canonical form
/// `Z/d_1 + ... + Z/d_t + Z^r` with `d_1 | d_2 | ...` and every `d_i >= 2`.
///
/// Canonical generators are ordered torsion first, then free. Over `F_p` the
/// group is a vector space: `torsion` is empty and `free_rank` is the dimension.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FgAbGroup {
    ring: RingTag,
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl FgAbGroup {
    pub fn new(ring: RingTag, torsion: Vec<BigInt>, free_rank: usize) -> Result<Self> {
        if ring.is_field() && !torsion.is_empty() {
            return Err(Error::InvalidHom("torsion factors over a field".into()));
        }
        for d in &torsion {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidHom(format!("invariant factor {d} < 2")));
            }
        }
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::InvalidHom("invariant factors must form a divisibility chain".into()));
            }
        }
        Ok(FgAbGroup {
            ring,
            torsion,
            free_rank,
        })
    }

    pub fn zero(ring: RingTag) -> Self {
        FgAbGroup {
            ring,
            torsion: vec![],
            free_rank: 0,
        }
    }

    pub fn free(ring: RingTag, rank: usize) -> Self {
        FgAbGroup {
            ring,
            torsion: vec![],
            free_rank: rank,
        }
    }

    /// `Z/d` (with `d = 0` meaning `Z`, `d = 1` the zero group).
    pub fn cyclic(d: i64) -> Self {
        let z = RingTag::Integers;
        match d.abs() {
            0 => Self::free(z, 1),
            1 => Self::zero(z),
            d => Self::new(z, vec![BigInt::from(d)], 0).expect("cyclic"),
        }
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_zero(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0 || self.ring.is_field()
    }

    /// Order of a finite group.
    pub fn order(&self) -> Option<BigInt> {
        match self.ring {
            RingTag::Integers => {
                if self.free_rank > 0 {
                    None
                } else {
                    Some(self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
                }
            }
            RingTag::PrimeField(p) => Some(BigInt::from(p).pow(self.free_rank as u32)),
        }
    }

    /// Order of the i-th canonical generator (0 for infinite order or over a field).
    pub fn modulus(&self, i: usize) -> BigInt {
        if i < self.torsion.len() {
            self.torsion[i].clone()
        } else {
            BigInt::zero()
        }
    }

    /// Relation matrix: one column `d_i e_i` per torsion generator.
    pub fn relations(&self) -> IntMatrix {
        let n = self.ngens();
        let mut m = IntMatrix::zeros(n, self.torsion.len(), self.ring);
        for (i, d) in self.torsion.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn reduce_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ngens(), "element length");
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                let m = self.modulus(i);
                if m.is_zero() {
                    self.ring.reduce_ref(x)
                } else {
                    x.mod_floor(&m)
                }
            })
            .collect()
    }

    /// Reduces row `i` of a matrix whose rows index this group's generators.
    pub fn reduce_rows(&self, m: &mut IntMatrix) {
        for i in 0..self.torsion.len() {
            m.reduce_row_mod(i, &self.torsion[i]);
        }
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce_vec(v).iter().all(|x| x.is_zero())
    }

    /// All elements of a finite group (for small exhaustive checks).
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?;
        if order > BigInt::from(1 << 16) {
            return None;
        }
        let moduli: Vec<BigInt> = (0..self.ngens())
            .map(|i| match self.ring {
                RingTag::PrimeField(p) => BigInt::from(p),
                RingTag::Integers => self.modulus(i),
            })
            .collect();
        let mut out = vec![vec![]];
        for m in moduli {
            let mut next = Vec::new();
            for e in &out {
                let mut k = BigInt::zero();
                while k < m {
                    let mut e2: Vec<BigInt> = e.clone();
                    e2.push(k.clone());
                    next.push(e2);
                    k += 1;
                }
            }
            out = next;
        }
        Some(out)
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut diag: Vec<BigInt> = self.torsion.clone();
        diag.extend(other.torsion.iter().cloned());
        let n = self.ngens() + other.ngens();
        let mut rel = IntMatrix::zeros(n, diag.len(), self.ring);
        let mut col = 0;
        for (i, d) in self.torsion.iter().enumerate() {
            rel.set(i, col, d.clone());
            col += 1;
        }
        for (i, d) in other.torsion.iter().enumerate() {
            rel.set(self.ngens() + i, col, d.clone());
            col += 1;
        }
        group_from_presentation(&rel).group
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let base = match self.ring {
            RingTag::Integers => "Z".to_string(),
            RingTag::PrimeField(p) => format!("F{p}"),
        };
        if self.free_rank == 1 {
            parts.push(base.clone());
        } else if self.free_rank > 1 {
            parts.push(format!("{base}^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Canonical form of `R^n / col(M)` with the change of generators.
#[derive(Clone, Debug)]
pub struct Presented {
    pub group: FgAbGroup,
    /// `ngens x n`: coordinates of the presentation generators in canonical form.
    pub proj: IntMatrix,
    /// `n x ngens`: a lift of each canonical generator to the presentation.
    pub lift: IntMatrix,
}

/// Normalizes the cokernel of `m` (columns are relations among `m.rows()` generators).
pub fn group_from_presentation(m: &IntMatrix) -> Presented {
    let ring = m.ring();
    let n = m.rows();
    let r = snf(m);
    let mut torsion_idx = Vec::new();
    let mut torsion = Vec::new();
    for (i, d) in r.invariant_factors.iter().enumerate() {
        if !ring.is_unit(d) {
            torsion_idx.push(i);
            torsion.push(d.clone());
        }
    }
    let mut idx = torsion_idx;
    idx.extend(r.rank()..n);
    let group = FgAbGroup {
        ring,
        free_rank: n - r.rank(),
        torsion,
    };
    let mut proj = r.u.select_rows(&idx);
    group.reduce_rows(&mut proj);
    let lift = r.u_inv.select_cols(&idx);
    Presented { group, proj, lift }
}
