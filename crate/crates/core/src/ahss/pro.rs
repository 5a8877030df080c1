use super::convergence::{boardman_flags, compare_graded, GradedSlot};
use super::couple::{build_exact_couple_in, CoupleParts, ExactCouple, TruncationHoms, Window};
use super::pages::SpectralSequence;
use crate::chain::{homology, induced_map_on_derived_hom, ChainComplex, ChainMap};
use crate::error::Result;
use crate::exactalg::{image, FgAbGroup, GroupHom};
use crate::pro::{colim, Colim, DirectSystem, TailPolicy, Tower};
use crate::prohomotopy::hom_to_constant;
use crate::tstruct::free_resolution;
use std::collections::BTreeMap;

/// Colimit over `s` of a slot group, with the maps induced by the structure maps of `X`.
fn slot_colim(
    x: &Tower<ChainMap>,
    group: impl Fn(usize) -> FgAbGroup,
    induced: impl Fn(&ChainMap) -> Result<GroupHom>,
) -> Result<Option<(Colim, DirectSystem<GroupHom>)>> {
    let ns = x.tail_start();
    let entries = (0..=ns).map(&group).collect();
    let maps = (0..ns).map(|s| induced(&x.map(s))).collect::<Result<_>>()?;
    let tail = match x.tail() {
        TailPolicy::ConstantFrom(_) => TailPolicy::ConstantFrom(ns),
        TailPolicy::RepeatFrom { endo, .. } => TailPolicy::RepeatFrom {
            from: ns,
            endo: induced(endo)?,
        },
    };
    let d = DirectSystem::new(entries, maps, tail)?;
    Ok(colim(&d)?.map(|c| (c, d)))
}

/// `colim f_s` between two colimits, evaluated at the tail index.
fn colim_map(src: &Colim, tgt: &Colim, f: &GroupHom) -> Result<GroupHom> {
    tgt.insertion.compose(f)?.compose(&src.lift)
}

/// Colimits of the levelwise couples, or `None` if some slot colimit is undecided.
fn colim_couple(x: &Tower<ChainMap>, y: &ChainComplex, w: Window) -> Result<Option<ExactCouple>> {
    let ring = y.ring();
    let ns = x.tail_start();
    let couples = (0..=ns)
        .map(|s| build_exact_couple_in(x.entry(s), y, w))
        .collect::<Result<Vec<_>>>()?;
    let th = TruncationHoms::new(y, &w);
    let top = &couples[ns];
    let mut dcol = BTreeMap::new();
    let mut ecol = BTreeMap::new();
    for n in w.totals() {
        for q in w.d_rows() {
            let target = &th.above[&q].complex;
            let id = ChainMap::identity(target);
            let Some((c, _)) = slot_colim(x, |s| couples[s].d_at(n, q), |f| induced_map_on_derived_hom(f, &id, n))?
            else {
                return Ok(None);
            };
            dcol.insert((n, q), c);
        }
        for q in w.rows() {
            let id = ChainMap::identity(&th.layers[&q]);
            let Some((c, _)) = slot_colim(x, |s| couples[s].e_at(n, q), |f| induced_map_on_derived_hom(f, &id, n))?
            else {
                return Ok(None);
            };
            ecol.insert((n, q), c);
        }
    }
    let zero = Colim::trivial(&FgAbGroup::zero(ring));
    let dget = |n: i64, q: i64| dcol.get(&(n, q.max(w.q_lo))).unwrap_or(&zero);
    let eget = |n: i64, q: i64| ecol.get(&(n, q)).unwrap_or(&zero);
    let mut parts = CoupleParts::default();
    for (&k, c) in &dcol {
        parts.d.insert(k, c.group.clone());
    }
    for (&k, c) in &ecol {
        parts.e.insert(k, c.group.clone());
    }
    for n in w.totals() {
        for q in w.q_lo + 1..=w.q_hi + 1 {
            parts.i.insert((n, q), colim_map(dget(n, q), dget(n, q - 1), &top.i_at(n, q))?);
        }
        for q in w.rows() {
            parts.j.insert((n, q), colim_map(dget(n, q), eget(n, q), &top.j_at(n, q))?);
            if w.totals().contains(&(n - 1)) {
                parts.k.insert((n, q), colim_map(eget(n, q), dget(n - 1, q + 1), &top.k_at(n, q))?);
            }
        }
    }
    Ok(Some(ExactCouple::new(ring, w, parts)?))
}

/// Graded pieces of `colim_s [X_s, Y]_n` filtered by the images of `colim_s [X_s, τ_{≥q} Y]_n`.
fn colim_filtration(
    x: &Tower<ChainMap>,
    y: &ChainComplex,
    n: i64,
    w: &Window,
) -> Result<Option<super::convergence::Filtration>> {
    let ns = x.tail_start();
    let idy = ChainMap::identity(y);
    let Some((total, _)) = slot_colim(
        x,
        |s| crate::chain::derived_hom(x.entry(s), y, n).expect("same ring"),
        |f| induced_map_on_derived_hom(f, &idy, n),
    )?
    else {
        return Ok(None);
    };
    let th = TruncationHoms::new(y, w);
    let mut steps = Vec::new();
    for q in w.d_rows() {
        let a = &th.above[&q];
        let ida = ChainMap::identity(&a.complex);
        let Some((src, _)) = slot_colim(
            x,
            |s| crate::chain::derived_hom(x.entry(s), &a.complex, n).expect("same ring"),
            |f| induced_map_on_derived_hom(f, &ida, n),
        )?
        else {
            return Ok(None);
        };
        let level = induced_map_on_derived_hom(&ChainMap::identity(x.entry(ns)), &a.incl, n)?;
        steps.push((q, image(&colim_map(&src, &total, &level)?).1));
    }
    Ok(Some(super::convergence::Filtration {
        n,
        total: total.group,
        steps,
    }))
}

#[derive(Clone, Debug)]
pub struct ProAhssReport {
    pub window: Window,
    /// `E^2_{p,q} = colim_s H^{-p}(X_s; H_q Y)`, `None` where undecided.
    pub e2: BTreeMap<(i64, i64), Option<FgAbGroup>>,
    /// `colim_s [X_s, Y]_n`, `None` where undecided.
    pub abutment: BTreeMap<i64, Option<FgAbGroup>>,
    /// `E^2` of the colimit couple agrees with the coefficient computation.
    pub e2_consistent: Option<bool>,
    /// `None` when some colimit was undecided.
    pub comparison: Option<Vec<GradedSlot>>,
    pub lim_ok: Option<bool>,
    pub lim1_ok: Option<bool>,
}

impl ProAhssReport {
    pub fn all_iso(&self) -> Option<bool> {
        self.comparison.as_ref().map(|c| c.iter().all(GradedSlot::is_iso))
    }

    pub fn has_unknown(&self) -> bool {
        self.comparison.is_none()
            || self.e2.values().any(Option::is_none)
            || self.abutment.values().any(Option::is_none)
    }
}

/// Spectral sequence for maps from a tower `X` into a constant complex `Y`.
pub fn pro_ahss(x: &Tower<ChainMap>, y: &ChainComplex, totals: std::ops::RangeInclusive<i64>) -> Result<ProAhssReport> {
    let window = x
        .entries()
        .iter()
        .map(|e| Window::of(e, y))
        .reduce(Window::union)
        .expect("towers are nonempty");
    let mut e2 = BTreeMap::new();
    for n in totals.clone() {
        for q in window.rows() {
            let res = free_resolution(&homology(y, q));
            e2.insert((n - q, q), hom_to_constant(x, &res, n - q)?);
        }
    }
    let mut abutment = BTreeMap::new();
    for n in totals.clone() {
        abutment.insert(n, hom_to_constant(x, y, n)?);
    }
    let mut report = ProAhssReport {
        window,
        e2,
        abutment,
        e2_consistent: None,
        comparison: None,
        lim_ok: None,
        lim1_ok: None,
    };
    let Some(couple) = colim_couple(x, y, window)? else {
        return Ok(report);
    };
    let (lim_ok, lim1_ok) = boardman_flags(&couple)?;
    report.lim_ok = Some(lim_ok);
    report.lim1_ok = Some(lim1_ok);
    let ss = SpectralSequence::of_couple(couple)?;
    report.e2_consistent = Some(report.e2.iter().all(|(&(p, q), g)| match g {
        Some(g) => ss.e2().group(p, q).map_or(g.is_zero(), |h| h == g),
        None => true,
    }));
    let mut filtrations = Vec::new();
    for n in totals {
        match colim_filtration(x, y, n, &window)? {
            Some(f) => filtrations.push(f),
            None => return Ok(report),
        }
    }
    report.comparison = Some(compare_graded(ss.e_infinity(), &filtrations)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ahss::convergence_check;
    use crate::exactalg::RingTag;

    #[test]
    fn halving_tower_into_z2() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        let x = Tower::repeat(ChainMap::scalar(&p, 2)).unwrap();
        let y = free_resolution(&FgAbGroup::cyclic(2));
        let r = pro_ahss(&x, &y, -2..=2).unwrap();
        assert_eq!(r.e2[&(0, 0)], Some(FgAbGroup::zero(z)));
        assert_eq!(r.abutment[&0], Some(FgAbGroup::zero(z)));
        assert_eq!(r.all_iso(), Some(true));
        assert_eq!(r.e2_consistent, Some(true));
    }

    #[test]
    fn constant_tower_matches_levelwise() {
        let z = RingTag::Integers;
        let x = ChainComplex::moore(2, 0);
        let y = ChainComplex::moore(2, 0).direct_sum(&ChainComplex::point(z, 1, 1));
        let r = pro_ahss(&Tower::constant(x.clone()), &y, -3..=3).unwrap();
        let c = convergence_check(&x, &y).unwrap();
        assert_eq!(r.all_iso(), Some(true));
        for s in c.graded_comparison.iter().filter(|s| (-3..=3).contains(&(s.p + s.q))) {
            let mine = r.comparison.as_ref().unwrap().iter().find(|t| t.p == s.p && t.q == s.q).unwrap();
            assert_eq!(mine, s);
        }
    }

    #[test]
    fn undecided_colimit() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        let x = Tower::repeat(ChainMap::scalar(&p, 2)).unwrap();
        let r = pro_ahss(&x, &p, 0..=0).unwrap();
        assert!(r.has_unknown());
        assert_eq!(r.abutment[&0], None);
    }
}
