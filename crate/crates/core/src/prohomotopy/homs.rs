use super::postnikov::postnikov_replacement;
use crate::chain::{derived_hom, homology, induced_map_on_derived_hom, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactalg::{FgAbGroup, GroupHom};
use crate::pro::{lim_colim, lim_lim1, BiSystem, LimLim1, ProHom, TailShape, Tower};

/// `G(s, t) = [X_s, Y_t]_n` for towers of complexes.
struct DerivedHoms<'a> {
    x: &'a Tower<ChainMap>,
    y: &'a Tower<ChainMap>,
    n: i64,
}

impl BiSystem for DerivedHoms<'_> {
    fn s_tail(&self) -> TailShape {
        TailShape::of(self.x)
    }
    fn t_tail(&self) -> TailShape {
        TailShape::of(self.y)
    }
    fn group(&self, s: usize, t: usize) -> Result<FgAbGroup> {
        derived_hom(self.x.entry(s), self.y.entry(t), self.n)
    }
    fn advance(&self, s: usize, t: usize) -> Result<GroupHom> {
        let id = ChainMap::identity(self.y.entry(t));
        induced_map_on_derived_hom(&self.x.map(s), &id, self.n)
    }
    fn restrict(&self, s: usize, t: usize) -> Result<GroupHom> {
        let id = ChainMap::identity(self.x.entry(s));
        induced_map_on_derived_hom(&id, &self.y.map(t), self.n)
    }
}

/// `lim_t colim_s [X_s, Y_t]_n`.
pub fn tower_hom(x: &Tower<ChainMap>, y: &Tower<ChainMap>, n: i64) -> Result<ProHom> {
    lim_colim(&DerivedHoms { x, y, n })
}

fn homology_window(c: &ChainComplex) -> Option<(i64, i64)> {
    if c.is_zero() {
        return None;
    }
    let nz: Vec<i64> = c.degrees().filter(|&k| !homology(c, k).is_zero()).collect();
    Some((*nz.first()?, *nz.last()?))
}

/// Morphisms between towers of heart-type objects: `X` levelwise with
/// homology in degrees `>= n`, `Y` levelwise with homology in degrees `<= n`.
pub fn heart_hom(x: &Tower<ChainMap>, y: &Tower<ChainMap>, n: i64) -> Result<ProHom> {
    for (s, c) in x.entries().iter().enumerate() {
        if let Some((lo, _)) = homology_window(c) {
            if lo < n {
                return Err(Error::WindowViolation(format!("source entry {s} has H_{lo} below {n}")));
            }
        }
    }
    for (t, c) in y.entries().iter().enumerate() {
        if let Some((_, hi)) = homology_window(c) {
            if hi > n {
                return Err(Error::WindowViolation(format!("target entry {t} has H_{hi} above {n}")));
            }
        }
    }
    tower_hom(x, y, 0)
}

/// `colim_s [X_s, Y]_n`; `None` when the colimit is undecided.
pub fn hom_to_constant(x: &Tower<ChainMap>, y: &ChainComplex, n: i64) -> Result<Option<FgAbGroup>> {
    Ok(tower_hom(x, &Tower::constant(y.clone()), n)?.result.lim)
}

/// `[X, Y]_n` through the Postnikov replacement of `Y`, with the group tower
/// it is the limit of.
#[derive(Clone, Debug)]
pub struct HomFromConstant {
    pub tower: Tower<GroupHom>,
    pub result: LimLim1,
}

pub fn hom_from_constant(x: &ChainComplex, y: &Tower<ChainMap>, n: i64) -> Result<HomFromConstant> {
    let w = postnikov_replacement(y)?.tower;
    let id = ChainMap::identity(x);
    let tower = w.try_map_levels(|c| derived_hom(x, c, n), |g| induced_map_on_derived_hom(&id, g, n))?;
    let result = lim_lim1(&tower)?;
    Ok(HomFromConstant { tower, result })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{hom_group, RingTag};
    use crate::pro::Lim1Status;

    fn z() -> RingTag {
        RingTag::Integers
    }

    fn times2() -> Tower<ChainMap> {
        let p = ChainComplex::point(z(), 0, 1);
        Tower::repeat(ChainMap::scalar(&p, 2)).unwrap()
    }

    #[test]
    fn heart_examples() {
        let p = ChainComplex::point(z(), 0, 1);
        let m2 = ChainComplex::moore(2, 0);
        let h = heart_hom(&Tower::constant(p.clone()), &Tower::constant(m2.clone()), 0).unwrap();
        let expected = hom_group(&FgAbGroup::cyclic(0), &FgAbGroup::cyclic(2)).unwrap();
        assert_eq!(h.result.lim, Some(expected));

        let h = heart_hom(&times2(), &Tower::constant(m2.clone()), 0).unwrap();
        assert_eq!(h.result.lim, Some(FgAbGroup::zero(z())));

        let below = Tower::constant(ChainComplex::moore(3, -1));
        let h = heart_hom(&Tower::constant(p.clone()), &below, 0).unwrap();
        assert_eq!(h.result.lim, Some(FgAbGroup::zero(z())));

        let high = Tower::constant(ChainComplex::point(z(), 1, 1));
        assert!(matches!(
            heart_hom(&Tower::constant(p), &high, 0),
            Err(Error::WindowViolation(_))
        ));
    }

    #[test]
    fn to_constant_examples() {
        let x = ChainComplex::moore(4, 0).direct_sum(&ChainComplex::point(z(), 1, 1));
        let y = ChainComplex::moore(6, 1);
        for n in -2..=2 {
            let g = hom_to_constant(&Tower::constant(x.clone()), &y, n).unwrap();
            assert_eq!(g, Some(derived_hom(&x, &y, n).unwrap()));
        }
        let m2 = ChainComplex::moore(2, 0);
        assert_eq!(hom_to_constant(&times2(), &m2, 0).unwrap(), Some(FgAbGroup::zero(z())));
        let o = ChainComplex::zero(z());
        assert_eq!(hom_to_constant(&times2(), &o, 0).unwrap(), Some(FgAbGroup::zero(z())));
    }

    #[test]
    fn from_constant_examples() {
        let x = ChainComplex::moore(4, 0);
        let y = ChainComplex::point(z(), 0, 1).direct_sum(&ChainComplex::moore(2, 1));
        for n in -1..=2 {
            let r = hom_from_constant(&x, &Tower::constant(y.clone()), n).unwrap();
            assert_eq!(r.result.lim1, Lim1Status::Zero);
            assert_eq!(r.result.lim, Some(derived_hom(&x, &y, n).unwrap()));
        }
        let p = ChainComplex::point(z(), 0, 1);
        let r = hom_from_constant(&p, &times2(), 0).unwrap();
        assert_eq!(r.result.lim, Some(FgAbGroup::zero(z())));
        assert_eq!(r.result.lim1, Lim1Status::NonzeroUncountable);
        let r = hom_from_constant(&ChainComplex::zero(z()), &times2(), 0).unwrap();
        assert_eq!(r.result.lim, Some(FgAbGroup::zero(z())));
        assert_eq!(r.result.lim1, Lim1Status::Zero);
    }
}
