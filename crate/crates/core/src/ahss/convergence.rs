use super::couple::{build_exact_couple, ExactCouple, Window};
use super::pages::{Page, SpectralSequence};
use crate::chain::{derived_hom, homology, induced_map_on_derived_hom, ChainComplex, ChainMap};
use crate::error::Result;
use crate::exactalg::{image, subquotient, FgAbGroup, GroupHom};
use crate::pro::{lim_lim1, Lim1Status, TailPolicy, Tower};
use crate::tstruct::{cohomology_with_coefficients, truncate_above_data, truncate_below_free};

/// `F_q [X, Y]_n = im([X, τ_{≥q} Y]_n -> [X, Y]_n)` for the rows of the window.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub n: i64,
    pub total: FgAbGroup,
    /// `(q, F_q -> total)`, decreasing in `q`; the last step is zero.
    pub steps: Vec<(i64, GroupHom)>,
}

impl Filtration {
    /// `F_q / F_{q+1}` for every row but the last.
    pub fn graded(&self) -> Result<Vec<(i64, FgAbGroup)>> {
        self.steps
            .windows(2)
            .map(|w| Ok((w[0].0, subquotient(&self.total, &w[0].1, &w[1].1)?.group)))
            .collect()
    }
}

fn filtration_in(x: &ChainComplex, y: &ChainComplex, n: i64, w: &Window) -> Result<Filtration> {
    let total = derived_hom(x, y, n)?;
    let id = ChainMap::identity(x);
    let mut steps = Vec::new();
    for q in w.d_rows() {
        let incl = truncate_above_data(y, q).incl;
        let f = induced_map_on_derived_hom(&id, &incl, n)?;
        steps.push((q, image(&f).1));
    }
    Ok(Filtration { n, total, steps })
}

pub fn abutment_filtration(x: &ChainComplex, y: &ChainComplex, n: i64) -> Result<Filtration> {
    filtration_in(x, y, n, &Window::of(x, y))
}

/// `E^2_{p,q} ≅ H^{-p}(X; H_q Y)` at every slot of the window.
pub fn e2_identification_check(x: &ChainComplex, y: &ChainComplex) -> Result<bool> {
    let c = build_exact_couple(x, y)?;
    for (n, q) in c.window.e_slots() {
        let a = homology(y, q);
        if c.e_at(n, q) != cohomology_with_coefficients(x, &a, q - n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `E^∞_{p,q}` against `F_q / F_{q+1}` of `[X, Y]_{p+q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlot {
    pub p: i64,
    pub q: i64,
    pub e_infinity: FgAbGroup,
    pub graded: FgAbGroup,
}

impl GradedSlot {
    pub fn is_iso(&self) -> bool {
        self.e_infinity == self.graded
    }
}

pub(crate) fn compare_graded(e_inf: &Page, filtrations: &[Filtration]) -> Result<Vec<GradedSlot>> {
    let mut out = Vec::new();
    for f in filtrations {
        for (q, graded) in f.graded()? {
            let p = f.n - q;
            let e_infinity = e_inf.group(p, q).cloned().unwrap_or_else(|| FgAbGroup::zero(graded.ring()));
            out.push(GradedSlot {
                p,
                q,
                e_infinity,
                graded,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    /// `lim_{p -> -∞} D_{p, n-p} = 0` for every `n`.
    pub lim_ok: bool,
    /// `lim¹_{p -> -∞} D_{p, n-p} = 0` for every `n`.
    pub lim1_ok: bool,
    /// `colim_{q -> ∞} [X, T_{≤ n-q} Y]_n = 0` for every `n`.
    pub colim_ok: bool,
    pub stable_page: usize,
    pub graded_comparison: Vec<GradedSlot>,
}

impl ConvergenceReport {
    pub fn all_iso(&self) -> bool {
        self.graded_comparison.iter().all(GradedSlot::is_iso)
    }

    pub fn converges(&self) -> bool {
        self.lim_ok && self.lim1_ok && self.colim_ok && self.all_iso()
    }
}

/// The column `q ↦ D(n, q)` from the floor row upwards, as a tower under `i`.
pub(crate) fn d_column(c: &ExactCouple, n: i64) -> Result<Tower<GroupHom>> {
    let w = c.window;
    let rows: Vec<i64> = w.d_rows().collect();
    let entries = rows.iter().map(|&q| c.d_at(n, q)).collect();
    let structure = rows[1..].iter().map(|&q| c.i_at(n, q)).collect();
    Tower::new(entries, structure, TailPolicy::ConstantFrom(rows.len() - 1))
}

pub(crate) fn boardman_flags(c: &ExactCouple) -> Result<(bool, bool)> {
    let mut lim_ok = true;
    let mut lim1_ok = true;
    for n in c.window.totals() {
        let r = lim_lim1(&d_column(c, n)?)?;
        lim_ok &= r.lim.map_or(false, |g| g.is_zero());
        lim1_ok &= r.lim1 == Lim1Status::Zero;
    }
    Ok((lim_ok, lim1_ok))
}

pub fn convergence_check(x: &ChainComplex, y: &ChainComplex) -> Result<ConvergenceReport> {
    let ss = SpectralSequence::of_couple(build_exact_couple(x, y)?)?;
    let w = ss.couple.window;
    let (lim_ok, lim1_ok) = boardman_flags(&ss.couple)?;
    // past the bottom row the Postnikov section is acyclic
    let below = truncate_below_free(y, w.q_lo - 1);
    let mut colim_ok = true;
    for n in w.totals() {
        colim_ok &= derived_hom(x, &below, n)?.is_zero();
    }
    let filtrations = w
        .totals()
        .map(|n| filtration_in(x, y, n, &w))
        .collect::<Result<Vec<_>>>()?;
    let graded_comparison = compare_graded(ss.e_infinity(), &filtrations)?;
    Ok(ConvergenceReport {
        lim_ok,
        lim1_ok,
        colim_ok,
        stable_page: ss.stable_page,
        graded_comparison,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RingTag;

    #[test]
    fn represented_filtration() {
        let z = RingTag::Integers;
        let x = ChainComplex::point(z, 0, 1);
        let y = ChainComplex::moore(5, 0).direct_sum(&ChainComplex::point(z, 1, 1));
        for n in -1..=2 {
            let f = abutment_filtration(&x, &y, n).unwrap();
            for (q, g) in f.graded().unwrap() {
                let expected = if q == n { homology(&y, n) } else { FgAbGroup::zero(z) };
                assert_eq!(g, expected);
            }
        }
        let r = convergence_check(&x, &y).unwrap();
        assert!(r.converges());
    }

    #[test]
    fn moore_pair() {
        let m = ChainComplex::moore(2, 0);
        assert!(e2_identification_check(&m, &m).unwrap());
        let f = abutment_filtration(&m, &m, 0).unwrap();
        let g = f.graded().unwrap();
        assert_eq!(g, vec![(0, FgAbGroup::cyclic(2))]);
        let r = convergence_check(&m, &m).unwrap();
        assert!(r.lim_ok && r.lim1_ok && r.colim_ok);
        assert!(r.all_iso());
        let nonzero: Vec<(i64, i64)> = r
            .graded_comparison
            .iter()
            .filter(|s| !s.graded.is_zero())
            .map(|s| (s.p + s.q, s.q))
            .collect();
        assert_eq!(nonzero, vec![(-1, 0), (0, 0)]);
    }

    #[test]
    fn zero_inputs() {
        let z = RingTag::Integers;
        let o = ChainComplex::zero(z);
        let m = ChainComplex::moore(2, 0);
        for (x, y) in [(&o, &m), (&m, &o)] {
            let r = convergence_check(x, y).unwrap();
            assert!(r.converges());
            assert!(r.graded_comparison.iter().all(|s| s.graded.is_zero()));
        }
    }
}
