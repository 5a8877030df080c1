use crate::chain::{homology, induced_homology_map, ChainComplex, ChainMap};
use crate::error::Result;
use crate::exactalg::GroupHom;
use crate::pro::{is_pro_isomorphism, ProIsoResult, ProMap, Tower};
use crate::tstruct::{classify_map, Extended};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    WeakEquivalence,
    NotWeakEquivalence(String),
    Unknown { budget: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStarVerdict {
    pub verdict: Verdict,
    /// A uniform `m` such that every component is an `m`-equivalence.
    pub m_witness: Option<i64>,
}

impl HStarVerdict {
    pub fn is_weak_equivalence(&self) -> bool {
        self.verdict == Verdict::WeakEquivalence
    }
}

impl fmt::Display for HStarVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m_witness.map_or("none".to_string(), |m| m.to_string());
        match &self.verdict {
            Verdict::WeakEquivalence => write!(f, "TRUE\tm={m}"),
            Verdict::NotWeakEquivalence(r) => write!(f, "FALSE\tm={m}\t{r}"),
            Verdict::Unknown { budget } => write!(f, "UNKNOWN\tm={m}\tbudget={budget}"),
        }
    }
}

/// Degrees in which some entry of the tower has a nonzero chain group.
pub fn degree_support(x: &Tower<ChainMap>) -> Option<(i64, i64)> {
    x.entries()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| (c.lo(), c.hi()))
        .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
}

/// Degrees in which some entry has nonzero homology.
pub fn homology_support(x: &Tower<ChainMap>) -> Vec<i64> {
    let Some((lo, hi)) = degree_support(x) else {
        return vec![];
    };
    (lo..=hi)
        .filter(|&n| x.entries().iter().any(|c| !homology(c, n).is_zero()))
        .collect()
}

/// `H_n` applied levelwise.
pub fn homology_tower(x: &Tower<ChainMap>, n: i64) -> Result<Tower<GroupHom>> {
    x.try_map_levels(|c: &ChainComplex| Ok(homology(c, n)), |f| Ok(induced_homology_map(f, n)))
}

pub fn homology_pro_map(f: &ProMap<ChainMap>, n: i64) -> Result<ProMap<GroupHom>> {
    let src = homology_tower(f.source(), n)?;
    let tgt = homology_tower(f.target(), n)?;
    let comps = (0..=f.window()).map(|t| induced_homology_map(&f.component(t), n)).collect();
    ProMap::new(
        src,
        tgt,
        (0..=f.window()).map(|t| f.theta(t)).collect(),
        f.tail_step(),
        comps,
    )
}

/// Decides whether `f` is an `H_*`-weak equivalence: a uniform levelwise
/// `m`-equivalence that is a pro-isomorphism on every `H_n`.
pub fn is_hstar_weak_equivalence(f: &ProMap<ChainMap>, budget: usize) -> Result<HStarVerdict> {
    let (_, f) = f.to_level()?;
    let w = f.window();
    let classes: Vec<Extended> = (0..=w).map(|t| classify_map(&f.component(t)).max_n_equivalence).collect();
    let m_witness = match classes.iter().min() {
        Some(Extended::Finite(m)) => Some(*m),
        _ => degree_support(f.source())
            .into_iter()
            .chain(degree_support(f.target()))
            .map(|(_, hi)| hi)
            .max()
            .or(Some(0)),
    };
    let mut degrees = homology_support(f.source());
    degrees.extend(homology_support(f.target()));
    degrees.sort_unstable();
    degrees.dedup();
    let mut unknown = false;
    for n in degrees {
        match is_pro_isomorphism(&homology_pro_map(&f, n)?, budget)? {
            ProIsoResult::True(_) => {}
            ProIsoResult::False { level, reason } => {
                return Ok(HStarVerdict {
                    verdict: Verdict::NotWeakEquivalence(format!("H_{n} at level {level}: {reason}")),
                    m_witness,
                })
            }
            ProIsoResult::Unknown { .. } => unknown = true,
        }
    }
    let verdict = if unknown {
        Verdict::Unknown { budget }
    } else {
        Verdict::WeakEquivalence
    };
    Ok(HStarVerdict { verdict, m_witness })
}

/// Every component injective in each degree with free cokernel.
pub fn is_levelwise_cofibration(f: &ProMap<ChainMap>) -> Result<bool> {
    let (_, f) = f.to_level()?;
    Ok((0..=f.window()).all(|t| f.component(t).is_degreewise_split_mono()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RingTag;

    fn zero_maps_tower() -> Tower<ChainMap> {
        let m = ChainComplex::moore(2, 0);
        Tower::repeat(ChainMap::zero(&m, &m)).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let x = zero_maps_tower();
        let v = is_hstar_weak_equivalence(&ProMap::identity(&x), 8).unwrap();
        assert!(v.is_weak_equivalence());

        let z = RingTag::Integers;
        let p = Tower::constant(ChainComplex::point(z, 0, 1));
        let o = Tower::constant(ChainComplex::zero(z));
        let f = ProMap::level(p.clone(), o.clone(), vec![ChainMap::zero(p.entry(0), o.entry(0))]).unwrap();
        let v = is_hstar_weak_equivalence(&f, 8).unwrap();
        assert!(matches!(v.verdict, Verdict::NotWeakEquivalence(ref r) if r.starts_with("H_0")));
        assert_eq!(v.m_witness, Some(0));
    }

    #[test]
    fn pro_zero_tower_is_equivalent_to_zero() {
        let x = zero_maps_tower();
        let o = Tower::constant(ChainComplex::zero(RingTag::Integers));
        let f = ProMap::level(x.clone(), o.clone(), vec![ChainMap::zero(x.entry(0), o.entry(0))]).unwrap();
        let v = is_hstar_weak_equivalence(&f, 8).unwrap();
        assert!(v.is_weak_equivalence());
        assert_eq!(v.m_witness, Some(0));
    }

    #[test]
    fn cofibrations() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        let t = Tower::constant(p.clone());
        assert!(is_levelwise_cofibration(&ProMap::identity(&t)).unwrap());
        let two = ProMap::level(t.clone(), t.clone(), vec![ChainMap::scalar(&p, 2)]).unwrap();
        assert!(!is_levelwise_cofibration(&two).unwrap());
        let o = Tower::constant(ChainComplex::zero(z));
        let f = ProMap::level(o.clone(), t.clone(), vec![ChainMap::zero(o.entry(0), &p)]).unwrap();
        assert!(is_levelwise_cofibration(&f).unwrap());
    }
}
