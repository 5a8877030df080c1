use crate::chain::{
    cone, homology, induced_hom_complex_map, induced_map_between, ChainComplex, ChainMap, HomComplex, Homology,
};
use crate::error::{Error, Result};
use crate::exactalg::{image, kernel, same_subgroup, FgAbGroup, GroupHom, IntMatrix, RingTag};
use crate::tstruct::{above_step, truncate_above_data, AboveTruncation};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

/// Finite window of rows `q` (where `E` may be nonzero) and total degrees `n = p + q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub q_lo: i64,
    pub q_hi: i64,
    pub n_lo: i64,
    pub n_hi: i64,
}

impl Window {
    /// Rows from the homology support of `Y`, total degrees from the chain supports.
    pub fn of(x: &ChainComplex, y: &ChainComplex) -> Window {
        let rows: Vec<i64> = y.degrees().filter(|&q| !homology(y, q).is_zero()).collect();
        let (q_lo, q_hi) = match (rows.first(), rows.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => {
                let base = if y.is_zero() { 0 } else { y.lo() };
                (base, base - 1)
            }
        };
        let (n_lo, n_hi) = if x.is_zero() || y.is_zero() {
            (0, -1)
        } else {
            (y.lo().min(q_lo) - x.hi() - 2, y.hi() - x.lo() + 2)
        };
        Window { q_lo, q_hi, n_lo, n_hi }
    }

    pub fn union(self, other: Window) -> Window {
        if other.n_lo > other.n_hi {
            return self;
        }
        if self.n_lo > self.n_hi {
            return other;
        }
        Window {
            n_lo: self.n_lo.min(other.n_lo),
            n_hi: self.n_hi.max(other.n_hi),
            ..self
        }
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<i64> {
        self.q_lo..=self.q_hi
    }

    pub fn totals(&self) -> std::ops::RangeInclusive<i64> {
        self.n_lo..=self.n_hi
    }

    /// Slots `(n, q)` where `E` is stored.
    pub fn e_slots(&self) -> Vec<(i64, i64)> {
        self.totals().flat_map(|n| self.rows().map(move |q| (n, q))).collect()
    }

    /// Rows that carry `D`: one extra row on top, where `D` vanishes.
    pub fn d_rows(&self) -> std::ops::RangeInclusive<i64> {
        self.q_lo..=self.q_hi + 1
    }

    /// Page from which every differential has zero source or target.
    pub fn stable_page(&self) -> usize {
        ((self.q_hi - self.q_lo).max(0) + 2) as usize
    }
}

/// Exact couple `D --i--> D --j--> E --k--> D` in coordinates `(n, q)`, `n = p + q`.
///
/// `i: D(n,q) -> D(n,q-1)`, `j: D(n,q) -> E(n,q)`, `k: E(n,q) -> D(n-1,q+1)`.
/// Below `q_lo` every `i` is an isomorphism and `D` is identified with row `q_lo`.
#[derive(Clone, Debug)]
pub struct ExactCouple {
    pub ring: RingTag,
    pub window: Window,
    d: BTreeMap<(i64, i64), FgAbGroup>,
    e: BTreeMap<(i64, i64), FgAbGroup>,
    i: BTreeMap<(i64, i64), GroupHom>,
    j: BTreeMap<(i64, i64), GroupHom>,
    k: BTreeMap<(i64, i64), GroupHom>,
}

/// Maps of an exact couple as stored, keyed by source slot `(n, q)`.
#[derive(Clone, Debug, Default)]
pub struct CoupleParts {
    pub d: BTreeMap<(i64, i64), FgAbGroup>,
    pub e: BTreeMap<(i64, i64), FgAbGroup>,
    pub i: BTreeMap<(i64, i64), GroupHom>,
    pub j: BTreeMap<(i64, i64), GroupHom>,
    pub k: BTreeMap<(i64, i64), GroupHom>,
}

impl ExactCouple {
    /// Validates endpoints and exactness at every node of the window.
    pub fn new(ring: RingTag, window: Window, parts: CoupleParts) -> Result<ExactCouple> {
        let c = ExactCouple {
            ring,
            window,
            d: parts.d,
            e: parts.e,
            i: parts.i,
            j: parts.j,
            k: parts.k,
        };
        c.check_endpoints()?;
        c.check_exactness()?;
        Ok(c)
    }

    fn zero(&self) -> FgAbGroup {
        FgAbGroup::zero(self.ring)
    }

    fn in_totals(&self, n: i64) -> bool {
        self.window.totals().contains(&n)
    }

    /// `D(n, q)`
    pub fn d_at(&self, n: i64, q: i64) -> FgAbGroup {
        if !self.in_totals(n) || q > self.window.q_hi + 1 {
            return self.zero();
        }
        self.d[&(n, q.max(self.window.q_lo))].clone()
    }

    /// `E(n, q)`
    pub fn e_at(&self, n: i64, q: i64) -> FgAbGroup {
        if !self.in_totals(n) || !self.window.rows().contains(&q) {
            return self.zero();
        }
        self.e[&(n, q)].clone()
    }

    /// `i: D(n, q) -> D(n, q-1)`
    pub fn i_at(&self, n: i64, q: i64) -> GroupHom {
        if !self.in_totals(n) || q > self.window.q_hi + 1 {
            return GroupHom::zero(&self.d_at(n, q), &self.d_at(n, q - 1));
        }
        if q <= self.window.q_lo {
            return GroupHom::identity(&self.d_at(n, q));
        }
        self.i[&(n, q)].clone()
    }

    /// `i^m: D(n, q) -> D(n, q-m)`
    pub fn i_pow(&self, n: i64, q: i64, m: usize) -> Result<GroupHom> {
        let mut f = GroupHom::identity(&self.d_at(n, q));
        for s in 0..m as i64 {
            f = self.i_at(n, q - s).compose(&f)?;
        }
        Ok(f)
    }

    /// `j: D(n, q) -> E(n, q)`
    pub fn j_at(&self, n: i64, q: i64) -> GroupHom {
        match self.j.get(&(n, q)) {
            Some(f) if self.window.rows().contains(&q) => f.clone(),
            _ => GroupHom::zero(&self.d_at(n, q), &self.e_at(n, q)),
        }
    }

    /// `k: E(n, q) -> D(n-1, q+1)`
    pub fn k_at(&self, n: i64, q: i64) -> GroupHom {
        match self.k.get(&(n, q)) {
            Some(f) if self.window.rows().contains(&q) => f.clone(),
            _ => GroupHom::zero(&self.e_at(n, q), &self.d_at(n - 1, q + 1)),
        }
    }

    /// `D_{p,q}`
    pub fn d_group(&self, p: i64, q: i64) -> FgAbGroup {
        self.d_at(p + q, q)
    }

    /// `E_{p,q}`
    pub fn e_group(&self, p: i64, q: i64) -> FgAbGroup {
        self.e_at(p + q, q)
    }

    fn check_endpoints(&self) -> Result<()> {
        let w = self.window;
        let bad = |what: &str, n: i64, q: i64| {
            Err(Error::ExactnessViolation(format!("{what} at (n={n}, q={q}) has wrong endpoints")))
        };
        for n in w.totals() {
            for q in w.d_rows() {
                if !self.d.contains_key(&(n, q)) {
                    return Err(Error::ExactnessViolation(format!("missing D at (n={n}, q={q})")));
                }
                if q > w.q_lo {
                    let f = &self.i[&(n, q)];
                    if f.source() != &self.d_at(n, q) || f.target() != &self.d_at(n, q - 1) {
                        return bad("i", n, q);
                    }
                }
            }
            for q in w.rows() {
                let (j, k) = (self.j_at(n, q), self.k_at(n, q));
                if j.source() != &self.d_at(n, q) || j.target() != &self.e_at(n, q) {
                    return bad("j", n, q);
                }
                if k.source() != &self.e_at(n, q) || k.target() != &self.d_at(n - 1, q + 1) {
                    return bad("k", n, q);
                }
            }
        }
        Ok(())
    }

    /// `im = ker` at both `D` nodes and the `E` node of every slot.
    pub fn check_exactness(&self) -> Result<()> {
        let w = self.window;
        let exact = |into: &GroupHom, out: &GroupHom| same_subgroup(&image(into).1, &kernel(out).1);
        for n in w.n_lo - 1..=w.n_hi + 1 {
            for q in w.q_lo - 1..=w.q_hi + 2 {
                if !exact(&self.i_at(n, q + 1), &self.j_at(n, q)) {
                    return Err(Error::ExactnessViolation(format!("im i != ker j at (n={n}, q={q})")));
                }
                if !exact(&self.j_at(n, q), &self.k_at(n, q)) {
                    return Err(Error::ExactnessViolation(format!("im j != ker k at (n={n}, q={q})")));
                }
                if !exact(&self.k_at(n + 1, q - 1), &self.i_at(n, q)) {
                    return Err(Error::ExactnessViolation(format!("im k != ker i at (n={n}, q={q})")));
                }
            }
        }
        Ok(())
    }

    /// Whether every `E` group vanishes.
    pub fn is_zero(&self) -> bool {
        self.e.values().all(|g| g.is_zero())
    }
}

/// Hom-complexes into the truncation tower of `Y` and into its layers.
pub(crate) struct TruncationHoms {
    pub above: BTreeMap<i64, AboveTruncation>,
    pub steps: BTreeMap<i64, ChainMap>,
    pub layers: BTreeMap<i64, ChainComplex>,
    pub layer_incl: BTreeMap<i64, ChainMap>,
}

impl TruncationHoms {
    pub fn new(y: &ChainComplex, w: &Window) -> TruncationHoms {
        let above: BTreeMap<i64, AboveTruncation> =
            w.d_rows().map(|q| (q, truncate_above_data(y, q))).collect();
        let mut steps = BTreeMap::new();
        let mut layers = BTreeMap::new();
        let mut layer_incl = BTreeMap::new();
        for q in w.rows() {
            let step = above_step(&above[&(q + 1)], &above[&q]);
            let c = cone(&step);
            layers.insert(q, c.complex);
            layer_incl.insert(q, c.incl);
            steps.insert(q, step);
        }
        TruncationHoms {
            above,
            steps,
            layers,
            layer_incl,
        }
    }
}

/// `Hom(X, C)_n -> Hom(X, A)_{n-1}` keeping the `A` part of `C = cone(A -> B)`.
fn cone_boundary_matrix(hc: &HomComplex, ha: &HomComplex, b: &ChainComplex, n: i64) -> IntMatrix {
    let ring = hc.source.ring();
    let mut m = IntMatrix::zeros(ha.dim(n - 1), hc.dim(n), ring);
    for blk in hc.blocks(n) {
        let Some(t) = ha.blocks(n - 1).iter().find(|t| t.k == blk.k) else {
            continue;
        };
        let rb = b.rank(blk.k + n);
        for a in rb..blk.rows {
            for c in 0..blk.cols {
                m.set(t.offset + (a - rb) * t.cols + c, blk.offset + a * blk.cols + c, BigInt::one());
            }
        }
    }
    m
}

/// The couple of `[X, -]_*` applied to the truncation tower `τ_{≥q} Y`, over a given window.
pub fn build_exact_couple_in(x: &ChainComplex, y: &ChainComplex, w: Window) -> Result<ExactCouple> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch("exact couple".into()));
    }
    let ring = x.ring();
    let th = TruncationHoms::new(y, &w);
    let id = ChainMap::identity(x);
    let mut hom_d = BTreeMap::new();
    let mut hom_e = BTreeMap::new();
    for q in w.d_rows() {
        hom_d.insert(q, HomComplex::new(x, &th.above[&q].complex)?);
    }
    for q in w.rows() {
        hom_e.insert(q, HomComplex::new(x, &th.layers[&q])?);
    }
    let mut hd = BTreeMap::new();
    let mut he = BTreeMap::new();
    for n in w.totals() {
        for q in w.d_rows() {
            hd.insert((n, q), Homology::compute(&hom_d[&q].complex, n));
        }
        for q in w.rows() {
            he.insert((n, q), Homology::compute(&hom_e[&q].complex, n));
        }
    }
    let mut parts = CoupleParts::default();
    for (&(n, q), h) in &hd {
        parts.d.insert((n, q), h.group.clone());
    }
    for (&(n, q), h) in &he {
        parts.e.insert((n, q), h.group.clone());
    }
    for q in w.q_lo + 1..=w.q_hi + 1 {
        let phi = induced_hom_complex_map(&hom_d[&q], &hom_d[&(q - 1)], &id, &th.steps[&(q - 1)])?;
        for n in w.totals() {
            parts.i.insert((n, q), induced_map_between(&phi, &hd[&(n, q)], &hd[&(n, q - 1)]));
        }
    }
    for q in w.rows() {
        let phi = induced_hom_complex_map(&hom_d[&q], &hom_e[&q], &id, &th.layer_incl[&q])?;
        let b = &th.above[&q].complex;
        for n in w.totals() {
            let src = &he[&(n, q)];
            parts.j.insert((n, q), induced_map_between(&phi, &hd[&(n, q)], src));
            if let Some(tgt) = hd.get(&(n - 1, q + 1)) {
                let m = cone_boundary_matrix(&hom_e[&q], &hom_d[&(q + 1)], b, n);
                let classes = tgt.classes_of(&m.mul(&src.cycles));
                parts.k.insert((n, q), GroupHom::new(src.group.clone(), tgt.group.clone(), classes)?);
            }
        }
    }
    ExactCouple::new(ring, w, parts)
}

/// `D_{p,q} = [X, τ_{≥q} Y]_{p+q}`, `E_{p,q} = [X, layer_q]_{p+q}` over the natural window.
pub fn build_exact_couple(x: &ChainComplex, y: &ChainComplex) -> Result<ExactCouple> {
    build_exact_couple_in(x, y, Window::of(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::derived_hom;

    #[test]
    fn zero_target() {
        let x = ChainComplex::point(RingTag::Integers, 0, 1);
        let c = build_exact_couple(&x, &ChainComplex::zero(RingTag::Integers)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn represented_functor() {
        let z = RingTag::Integers;
        let x = ChainComplex::point(z, 0, 1);
        let y = ChainComplex::moore(3, 0).direct_sum(&ChainComplex::point(z, 2, 2));
        let c = build_exact_couple(&x, &y).unwrap();
        for (n, q) in c.window.e_slots() {
            let expected = if n == q { homology(&y, q) } else { FgAbGroup::zero(z) };
            assert_eq!(c.e_at(n, q), expected, "slot n={n} q={q}");
        }
    }

    #[test]
    fn moore_pair() {
        let m = ChainComplex::moore(2, 0);
        let c = build_exact_couple(&m, &m).unwrap();
        assert_eq!(c.window.rows(), 0..=0);
        assert_eq!(c.e_group(0, 0), FgAbGroup::cyclic(2));
        assert_eq!(c.e_group(-1, 0), FgAbGroup::cyclic(2));
        for n in c.window.totals() {
            if n != 0 && n != -1 {
                assert!(c.e_at(n, 0).is_zero());
            }
            assert_eq!(c.d_at(n, -5), derived_hom(&m, &m, n).unwrap());
        }
    }
}
