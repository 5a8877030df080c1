use super::couple::ExactCouple;
use crate::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::exactalg::{
    cokernel, image, kernel, preimage, subquotient, FgAbGroup, GroupHom, IntMatrix, SubQuotient,
};
use std::collections::BTreeMap;

/// `E^r` at one slot: the cycles `Z^r ⊆ E` and the quotient by the boundaries.
#[derive(Clone, Debug)]
struct Slot {
    cycles: GroupHom,
    quotient: SubQuotient,
}

/// Page `E^r` with its differentials `d_r: E^r_{p,q} -> E^r_{p-r,q+r-1}`.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    /// Keyed by `(p, q)`.
    pub groups: BTreeMap<(i64, i64), FgAbGroup>,
    /// Keyed by the source `(p, q)`.
    pub differentials: BTreeMap<(i64, i64), GroupHom>,
}

impl Page {
    pub fn group(&self, p: i64, q: i64) -> Option<&FgAbGroup> {
        self.groups.get(&(p, q))
    }

    /// Slots with a nonzero group.
    pub fn support(&self) -> Vec<(i64, i64)> {
        self.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(&k, _)| k).collect()
    }
}

fn slot_at(c: &ExactCouple, n: i64, q: i64, m: usize) -> Result<Slot> {
    let e = c.e_at(n, q);
    let (_, to_coker) = cokernel(&c.i_pow(n - 1, q + 1 + m as i64, m)?);
    let (_, cycles) = kernel(&to_coker.compose(&c.k_at(n, q))?);
    let (_, ker_i) = kernel(&c.i_pow(n, q, m)?);
    let (_, boundaries) = image(&c.j_at(n, q).compose(&ker_i)?);
    let quotient = subquotient(&e, &cycles, &boundaries)?;
    Ok(Slot { cycles, quotient })
}

fn differential(c: &ExactCouple, src: &Slot, tgt: Option<&Slot>, n: i64, q: i64, m: usize) -> Result<GroupHom> {
    let zero = FgAbGroup::zero(c.ring);
    let Some(tgt) = tgt else {
        return Ok(GroupHom::zero(&src.quotient.group, &zero));
    };
    let up = q + 1 + m as i64;
    let lift_d = c.i_pow(n - 1, up, m)?;
    let j = c.j_at(n - 1, up);
    let mut cols = Vec::new();
    for g in 0..src.quotient.group.ngens() {
        let x = src.cycles.apply(&src.quotient.lift.column(g));
        let kx = c.k_at(n, q).apply(&x);
        let y = preimage(&lift_d, &kx)
            .ok_or_else(|| Error::ExactnessViolation(format!("k(x) not liftable at (n={n}, q={q})")))?;
        let z = preimage(&tgt.cycles, &j.apply(&y))
            .ok_or_else(|| Error::ExactnessViolation(format!("d_r lands outside the cycles at (n={n}, q={q})")))?;
        cols.push(tgt.quotient.proj.apply(&z));
    }
    let m = IntMatrix::from_columns(tgt.quotient.group.ngens(), &cols, c.ring);
    GroupHom::new(src.quotient.group.clone(), tgt.quotient.group.clone(), m)
}

/// The page `E^r` of the couple, `r >= 2`, computed from `Z^r / B^r`.
pub fn page(c: &ExactCouple, r: usize) -> Result<Page> {
    if r < 2 {
        return Err(Error::PreconditionViolated("pages start at r = 2".into()));
    }
    let m = r - 2;
    let mut slots = BTreeMap::new();
    for (n, q) in c.window.e_slots() {
        slots.insert((n, q), slot_at(c, n, q, m)?);
    }
    let mut groups = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for (&(n, q), s) in &slots {
        let tgt = slots.get(&(n - 1, q + r as i64 - 1));
        differentials.insert((n - q, q), differential(c, s, tgt, n, q, m)?);
        groups.insert((n - q, q), s.quotient.group.clone());
    }
    Ok(Page {
        r,
        groups,
        differentials,
    })
}

/// `E^{r+1}` from `E^r`, after checking `d_r ∘ d_r = 0` and that the new page is
/// the homology of the old one at every slot.
pub fn derive(c: &ExactCouple, prev: &Page) -> Result<Page> {
    let r = prev.r as i64;
    for (&(p, q), d) in &prev.differentials {
        if let Some(d2) = prev.differentials.get(&(p - r, q + r - 1)) {
            if !d2.compose(d)?.is_zero() {
                return Err(Error::ExactnessViolation(format!("d_{r} d_{r} != 0 at ({p}, {q})")));
            }
        }
    }
    let next = page(c, prev.r + 1)?;
    for (&(p, q), g) in &prev.groups {
        let out = &prev.differentials[&(p, q)];
        let (_, z) = kernel(out);
        let b = match prev.differentials.get(&(p + r, q - r + 1)) {
            Some(d_in) => image(d_in).1,
            None => GroupHom::zero(&FgAbGroup::zero(c.ring), g),
        };
        let h = subquotient(g, &z, &b)?.group;
        if next.groups[&(p, q)] != h {
            return Err(Error::ExactnessViolation(format!(
                "E^{} at ({p}, {q}) is {} but the homology of E^{r} is {h}",
                r + 1,
                next.groups[&(p, q)]
            )));
        }
    }
    Ok(next)
}

/// All pages from `E^2` up to the stable page of the window.
#[derive(Clone, Debug)]
pub struct SpectralSequence {
    pub couple: ExactCouple,
    pub pages: Vec<Page>,
    pub stable_page: usize,
}

impl SpectralSequence {
    pub fn of_couple(couple: ExactCouple) -> Result<SpectralSequence> {
        let stable_page = couple.window.stable_page();
        let mut pages = vec![page(&couple, 2)?];
        while pages.last().expect("nonempty").r < stable_page {
            let next = derive(&couple, pages.last().expect("nonempty"))?;
            pages.push(next);
        }
        Ok(SpectralSequence {
            couple,
            pages,
            stable_page,
        })
    }

    pub fn e2(&self) -> &Page {
        &self.pages[0]
    }

    pub fn e_infinity(&self) -> &Page {
        self.pages.last().expect("nonempty")
    }

    /// Whether no differential on any page is nonzero.
    pub fn collapses(&self) -> bool {
        self.pages.iter().all(|pg| pg.differentials.values().all(|d| d.is_zero()))
    }
}

pub fn run_to_stable(x: &ChainComplex, y: &ChainComplex) -> Result<SpectralSequence> {
    SpectralSequence::of_couple(super::couple::build_exact_couple(x, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RingTag;

    #[test]
    fn single_row_is_stable_at_two() {
        let m = ChainComplex::moore(2, 0);
        let ss = run_to_stable(&m, &m).unwrap();
        assert_eq!(ss.stable_page, 2);
        assert_eq!(ss.pages.len(), 1);
        assert!(ss.collapses());
        let x = ChainComplex::point(RingTag::Integers, 0, 1);
        assert_eq!(run_to_stable(&x, &m).unwrap().stable_page, 2);
    }

    #[test]
    fn split_two_row_target_collapses() {
        // Y with H_0 = Z/2 and H_2 = Z, X = M_2
        let z = RingTag::Integers;
        let y = ChainComplex::moore(2, 0).direct_sum(&ChainComplex::point(z, 2, 1));
        let x = ChainComplex::moore(2, 0);
        let ss = run_to_stable(&x, &y).unwrap();
        assert_eq!(ss.stable_page, 4);
        assert_eq!(ss.pages.len(), 3);
        assert_eq!(ss.e2().group(0, 0), Some(&FgAbGroup::cyclic(2)));
        assert_eq!(ss.e2().group(-1, 2), Some(&FgAbGroup::cyclic(2)));
        assert!(ss.collapses());
    }

    #[test]
    fn zero_couple_stays_zero() {
        let z = RingTag::Integers;
        let ss = run_to_stable(&ChainComplex::zero(z), &ChainComplex::moore(3, 1)).unwrap();
        assert!(ss.pages.iter().all(|p| p.support().is_empty()));
    }
}
