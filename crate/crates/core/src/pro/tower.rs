use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactalg::{FgAbGroup, GroupHom};
use std::fmt::Debug;

/// Morphisms of a category in which towers are formed.
pub trait Morphism: Clone + PartialEq + Debug {
    type Object: Clone + PartialEq + Debug;
    fn source(&self) -> &Self::Object;
    fn target(&self) -> &Self::Object;
    fn identity(obj: &Self::Object) -> Self;
    /// `other ∘ self`
    fn then(&self, other: &Self) -> Result<Self>;
}

impl Morphism for GroupHom {
    type Object = FgAbGroup;
    fn source(&self) -> &FgAbGroup {
        GroupHom::source(self)
    }
    fn target(&self) -> &FgAbGroup {
        GroupHom::target(self)
    }
    fn identity(obj: &FgAbGroup) -> Self {
        GroupHom::identity(obj)
    }
    fn then(&self, other: &Self) -> Result<Self> {
        other.compose(self)
    }
}

impl Morphism for ChainMap {
    type Object = ChainComplex;
    fn source(&self) -> &ChainComplex {
        ChainMap::source(self)
    }
    fn target(&self) -> &ChainComplex {
        ChainMap::target(self)
    }
    fn identity(obj: &ChainComplex) -> Self {
        ChainMap::identity(obj)
    }
    fn then(&self, other: &Self) -> Result<Self> {
        other.compose(self)
    }
}

/// How a finitely stored tower or direct system continues past its last entry.
#[derive(Clone, Debug, PartialEq)]
pub enum TailPolicy<M> {
    /// Every entry from index `N` on equals entry `N`, all maps are identities.
    ConstantFrom(usize),
    /// Every entry from `from` on equals entry `from`, all maps equal `endo`.
    RepeatFrom { from: usize, endo: M },
}

impl<M> TailPolicy<M> {
    pub fn start(&self) -> usize {
        match self {
            TailPolicy::ConstantFrom(n) => *n,
            TailPolicy::RepeatFrom { from, .. } => *from,
        }
    }
}

fn validate_tail<M: Morphism>(entries: &[M::Object], maps: &[M], tail: &TailPolicy<M>) -> Result<()> {
    let n = tail.start();
    if n >= entries.len() {
        return Err(Error::InvalidTower(format!("tail starts at {n} but only {} entries", entries.len())));
    }
    for (s, e) in entries.iter().enumerate().skip(n) {
        if *e != entries[n] {
            return Err(Error::InvalidTower(format!("entry {s} differs from the tail entry")));
        }
    }
    let tail_map = match tail {
        TailPolicy::ConstantFrom(_) => M::identity(&entries[n]),
        TailPolicy::RepeatFrom { endo, .. } => {
            if endo.source() != &entries[n] || endo.target() != &entries[n] {
                return Err(Error::InvalidTower("tail endomorphism endpoints".into()));
            }
            endo.clone()
        }
    };
    for (s, m) in maps.iter().enumerate().skip(n) {
        if *m != tail_map {
            return Err(Error::InvalidTower(format!("map {s} disagrees with the declared tail")));
        }
    }
    Ok(())
}

/// `ℕ`-indexed inverse system `T_0 <- T_1 <- ...`, finitely presented.
#[derive(Clone, Debug, PartialEq)]
pub struct Tower<M: Morphism> {
    entries: Vec<M::Object>,
    /// `structure[s]: T_{s+1} -> T_s`
    structure: Vec<M>,
    tail: TailPolicy<M>,
}

impl<M: Morphism> Tower<M> {
    pub fn new(entries: Vec<M::Object>, structure: Vec<M>, tail: TailPolicy<M>) -> Result<Self> {
        if entries.is_empty() || structure.len() + 1 != entries.len() {
            return Err(Error::InvalidTower("need one structure map between consecutive entries".into()));
        }
        for (s, m) in structure.iter().enumerate() {
            if m.source() != &entries[s + 1] || m.target() != &entries[s] {
                return Err(Error::InvalidTower(format!("structure map {s} endpoints")));
            }
        }
        validate_tail(&entries, &structure, &tail)?;
        Ok(Tower {
            entries,
            structure,
            tail,
        })
    }

    pub fn constant(obj: M::Object) -> Self {
        Tower {
            entries: vec![obj],
            structure: vec![],
            tail: TailPolicy::ConstantFrom(0),
        }
    }

    /// `A <- A <- ...` with every map `endo`.
    pub fn repeat(endo: M) -> Result<Self> {
        Self::new(
            vec![endo.source().clone()],
            vec![],
            TailPolicy::RepeatFrom { from: 0, endo },
        )
    }

    pub fn tail(&self) -> &TailPolicy<M> {
        &self.tail
    }

    pub fn tail_start(&self) -> usize {
        self.tail.start()
    }

    pub fn stored_len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[M::Object] {
        &self.entries
    }

    pub fn structure_maps(&self) -> &[M] {
        &self.structure
    }

    pub fn entry(&self, s: usize) -> &M::Object {
        &self.entries[s.min(self.entries.len() - 1)]
    }

    /// `T_{s+1} -> T_s`
    pub fn map(&self, s: usize) -> M {
        if s < self.structure.len() {
            return self.structure[s].clone();
        }
        match &self.tail {
            TailPolicy::ConstantFrom(_) => M::identity(self.entry(s)),
            TailPolicy::RepeatFrom { endo, .. } => endo.clone(),
        }
    }

    /// `T_s -> T_t` for `s >= t`.
    pub fn composite(&self, s: usize, t: usize) -> Result<M> {
        if s < t {
            return Err(Error::IndexOverflow(format!("composite from {s} to {t}")));
        }
        let mut m = M::identity(self.entry(s));
        for k in (t..s).rev() {
            m = m.then(&self.map(k))?;
        }
        Ok(m)
    }

    /// Applies `f` to every entry and map, keeping the tail shape.
    pub fn map_levels<N: Morphism>(
        &self,
        mut on_obj: impl FnMut(&M::Object) -> N::Object,
        mut on_map: impl FnMut(&M) -> N,
    ) -> Result<Tower<N>> {
        let entries = self.entries.iter().map(&mut on_obj).collect();
        let structure = self.structure.iter().map(&mut on_map).collect();
        let tail = match &self.tail {
            TailPolicy::ConstantFrom(n) => TailPolicy::ConstantFrom(*n),
            TailPolicy::RepeatFrom { from, endo } => TailPolicy::RepeatFrom {
                from: *from,
                endo: on_map(endo),
            },
        };
        Tower::new(entries, structure, tail)
    }

    /// Fallible version of [`Tower::map_levels`].
    pub fn try_map_levels<N: Morphism>(
        &self,
        mut on_obj: impl FnMut(&M::Object) -> Result<N::Object>,
        mut on_map: impl FnMut(&M) -> Result<N>,
    ) -> Result<Tower<N>> {
        let entries = self.entries.iter().map(&mut on_obj).collect::<Result<_>>()?;
        let structure = self.structure.iter().map(&mut on_map).collect::<Result<_>>()?;
        let tail = match &self.tail {
            TailPolicy::ConstantFrom(n) => TailPolicy::ConstantFrom(*n),
            TailPolicy::RepeatFrom { from, endo } => TailPolicy::RepeatFrom {
                from: *from,
                endo: on_map(endo)?,
            },
        };
        Tower::new(entries, structure, tail)
    }

    /// The same tower with the stored prefix extended to `len` entries.
    pub fn extended(&self, len: usize) -> Tower<M> {
        let mut t = self.clone();
        while t.entries.len() < len {
            let s = t.entries.len() - 1;
            t.structure.push(self.map(s));
            t.entries.push(self.entry(s + 1).clone());
        }
        t
    }
}

/// `ℕ`-indexed direct system `D_0 -> D_1 -> ...`, finitely presented.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectSystem<M: Morphism> {
    entries: Vec<M::Object>,
    /// `maps[s]: D_s -> D_{s+1}`
    maps: Vec<M>,
    tail: TailPolicy<M>,
}

impl<M: Morphism> DirectSystem<M> {
    pub fn new(entries: Vec<M::Object>, maps: Vec<M>, tail: TailPolicy<M>) -> Result<Self> {
        if entries.is_empty() || maps.len() + 1 != entries.len() {
            return Err(Error::InvalidTower("need one map between consecutive entries".into()));
        }
        for (s, m) in maps.iter().enumerate() {
            if m.source() != &entries[s] || m.target() != &entries[s + 1] {
                return Err(Error::InvalidTower(format!("direct system map {s} endpoints")));
            }
        }
        validate_tail(&entries, &maps, &tail)?;
        Ok(DirectSystem { entries, maps, tail })
    }

    pub fn constant(obj: M::Object) -> Self {
        DirectSystem {
            entries: vec![obj],
            maps: vec![],
            tail: TailPolicy::ConstantFrom(0),
        }
    }

    pub fn repeat(endo: M) -> Result<Self> {
        Self::new(
            vec![endo.source().clone()],
            vec![],
            TailPolicy::RepeatFrom { from: 0, endo },
        )
    }

    pub fn tail(&self) -> &TailPolicy<M> {
        &self.tail
    }

    pub fn entry(&self, s: usize) -> &M::Object {
        &self.entries[s.min(self.entries.len() - 1)]
    }

    /// `D_s -> D_{s+1}`
    pub fn map(&self, s: usize) -> M {
        if s < self.maps.len() {
            return self.maps[s].clone();
        }
        match &self.tail {
            TailPolicy::ConstantFrom(_) => M::identity(self.entry(s)),
            TailPolicy::RepeatFrom { endo, .. } => endo.clone(),
        }
    }

    /// `D_s -> D_t` for `s <= t`.
    pub fn composite(&self, s: usize, t: usize) -> Result<M> {
        if s > t {
            return Err(Error::IndexOverflow(format!("composite from {s} to {t}")));
        }
        let mut m = M::identity(self.entry(s));
        for k in s..t {
            m = m.then(&self.map(k))?;
        }
        Ok(m)
    }
}

/// Map of towers `X -> Y` given by `comps[t]: X_{θ(t)} -> Y_t`.
///
/// Past the stored prefix, `θ` grows by `tail_step` per index and the last
/// component repeats.
#[derive(Clone, Debug, PartialEq)]
pub struct ProMap<M: Morphism> {
    source: Tower<M>,
    target: Tower<M>,
    shift: Vec<usize>,
    tail_step: usize,
    comps: Vec<M>,
}

impl<M: Morphism> ProMap<M> {
    pub fn new(
        source: Tower<M>,
        target: Tower<M>,
        shift: Vec<usize>,
        tail_step: usize,
        comps: Vec<M>,
    ) -> Result<Self> {
        if comps.is_empty() || shift.len() != comps.len() {
            return Err(Error::InvalidTower("one index per component required".into()));
        }
        if shift.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidTower("index function must be monotone".into()));
        }
        let f = ProMap {
            source,
            target,
            shift,
            tail_step,
            comps,
        };
        f.validate()?;
        Ok(f)
    }

    /// Level map with `θ = id`.
    pub fn level(source: Tower<M>, target: Tower<M>, comps: Vec<M>) -> Result<Self> {
        let shift = (0..comps.len()).collect();
        Self::new(source, target, shift, 1, comps)
    }

    /// Indices past which the source, target and this map are all in their tails.
    pub fn window(&self) -> usize {
        let mut w = self.comps.len().max(self.target.tail_start() + 1);
        while self.theta(w) < self.source.tail_start() && self.tail_step > 0 {
            w += 1;
        }
        w
    }

    fn validate(&self) -> Result<()> {
        let w = self.window() + 2;
        for t in 0..=w {
            let c = self.component(t);
            if c.source() != self.source.entry(self.theta(t)) || c.target() != self.target.entry(t) {
                return Err(Error::InvalidTower(format!("component {t} endpoints")));
            }
        }
        for t in 0..w {
            let left = self.component(t + 1).then(&self.target.map(t))?;
            let right = self
                .source
                .composite(self.theta(t + 1), self.theta(t))?
                .then(&self.component(t))?;
            if left != right {
                return Err(Error::InvalidTower(format!("square at level {t} does not commute")));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Tower<M> {
        &self.source
    }

    pub fn target(&self) -> &Tower<M> {
        &self.target
    }

    pub fn tail_step(&self) -> usize {
        self.tail_step
    }

    pub fn stored_len(&self) -> usize {
        self.comps.len()
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shift
    }

    pub fn components(&self) -> &[M] {
        &self.comps
    }

    pub fn theta(&self, t: usize) -> usize {
        let last = self.shift.len() - 1;
        if t <= last {
            self.shift[t]
        } else {
            self.shift[last] + (t - last) * self.tail_step
        }
    }

    pub fn component(&self, t: usize) -> M {
        self.comps[t.min(self.comps.len() - 1)].clone()
    }

    pub fn is_level(&self) -> bool {
        self.tail_step == 1 && self.shift.iter().enumerate().all(|(t, &s)| s == t)
    }

    pub fn identity(x: &Tower<M>) -> Self {
        let n = x.stored_len();
        let comps = (0..n).map(|s| M::identity(x.entry(s))).collect();
        Self::level(x.clone(), x.clone(), comps).expect("identity pro-map")
    }

    /// The same germ as a level map out of the reindexed source `t ↦ X_{θ(t)}`.
    pub fn to_level(&self) -> Result<(Tower<M>, ProMap<M>)> {
        let w = self.window();
        let entries: Vec<M::Object> = (0..=w).map(|t| self.source.entry(self.theta(t)).clone()).collect();
        let structure: Result<Vec<M>> = (0..w)
            .map(|t| self.source.composite(self.theta(t + 1), self.theta(t)))
            .collect();
        let tail = match self.source.tail() {
            TailPolicy::ConstantFrom(_) => TailPolicy::ConstantFrom(w),
            TailPolicy::RepeatFrom { .. } => TailPolicy::RepeatFrom {
                from: w,
                endo: self.source.composite(self.theta(w + 1), self.theta(w))?,
            },
        };
        let x = Tower::new(entries, structure?, tail)?;
        let comps = (0..=w).map(|t| self.component(t)).collect();
        let f = ProMap::level(x.clone(), self.target.clone(), comps)?;
        Ok((x, f))
    }
}

/// `(g ∘ f)_t = g_t ∘ f_{θ_g(t)}`.
pub fn compose<M: Morphism>(g: &ProMap<M>, f: &ProMap<M>) -> Result<ProMap<M>> {
    if f.target != g.source {
        return Err(Error::Shape("pro-map composition: towers differ".into()));
    }
    let mut len = g.comps.len();
    if g.tail_step == 0 {
        len = len.max(1);
    } else {
        while g.theta(len - 1) + 1 < f.comps.len() {
            len += 1;
        }
    }
    let shift: Vec<usize> = (0..len).map(|t| f.theta(g.theta(t))).collect();
    let comps: Result<Vec<M>> = (0..len)
        .map(|t| f.component(g.theta(t)).then(&g.component(t)))
        .collect();
    let step = f.tail_step.checked_mul(g.tail_step).ok_or_else(|| Error::IndexOverflow("tail step".into()))?;
    ProMap::new(f.source.clone(), g.target.clone(), shift, step, comps?)
}

/// Whether `f` and `g` agree after precomposing with structure maps, on levels
/// up to the joint window plus `budget`.
pub fn germ_eq<M: Morphism>(f: &ProMap<M>, g: &ProMap<M>, budget: usize) -> Result<bool> {
    if f.source != g.source || f.target != g.target {
        return Ok(false);
    }
    let w = f.window().max(g.window());
    for t in 0..=w {
        let base = f.theta(t).max(g.theta(t));
        let mut found = false;
        for s in base..=base + budget {
            let a = f.source.composite(s, f.theta(t))?.then(&f.component(t))?;
            let b = g.source.composite(s, g.theta(t))?.then(&g.component(t))?;
            if a == b {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Subsequence tower `t ↦ T_{kt}` with the comparison `T -> T'` whose
/// components `T_{kt} -> T'_t` are identities.
pub fn reindex_cofinal<M: Morphism>(x: &Tower<M>, k: usize) -> Result<(Tower<M>, ProMap<M>)> {
    if k == 0 {
        return Err(Error::PreconditionViolated("reindexing step must be positive".into()));
    }
    let n = x.tail_start().div_ceil(k);
    let len = n.max((x.stored_len() - 1).div_ceil(k)) + 1;
    let entries: Vec<M::Object> = (0..len).map(|t| x.entry(k * t).clone()).collect();
    let structure: Result<Vec<M>> = (0..len - 1).map(|t| x.composite(k * (t + 1), k * t)).collect();
    let tail = match x.tail() {
        TailPolicy::ConstantFrom(_) => TailPolicy::ConstantFrom(n),
        TailPolicy::RepeatFrom { .. } => TailPolicy::RepeatFrom {
            from: n,
            endo: x.composite(k * (n + 1), k * n)?,
        },
    };
    let y = Tower::new(entries, structure?, tail)?;
    let cmp = ProMap::new(
        x.clone(),
        y.clone(),
        (0..len).map(|t| k * t).collect(),
        k,
        (0..len).map(|t| M::identity(y.entry(t))).collect(),
    )?;
    Ok((y, cmp))
}

/// A level map reindexed along `t ↦ kt` on both sides.
pub fn reindex_level_map<M: Morphism>(f: &ProMap<M>, k: usize) -> Result<ProMap<M>> {
    if !f.is_level() {
        return Err(Error::PreconditionViolated("reindex_level_map needs a level map".into()));
    }
    let (x, _) = reindex_cofinal(f.source(), k)?;
    let (y, _) = reindex_cofinal(f.target(), k)?;
    let len = x.stored_len().max(y.stored_len()).max(f.stored_len().div_ceil(k) + 1);
    let comps = (0..len).map(|t| f.component(k * t)).collect();
    ProMap::level(x, y, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RingTag;

    fn times2_tower() -> Tower<GroupHom> {
        let z = FgAbGroup::free(RingTag::Integers, 1);
        Tower::repeat(GroupHom::scalar(&z, 2)).unwrap()
    }

    #[test]
    fn tails() {
        let t = times2_tower();
        let c = t.composite(5, 2).unwrap();
        assert_eq!(c, GroupHom::scalar(t.entry(0), 8));
        assert!(Tower::<GroupHom>::new(vec![FgAbGroup::cyclic(2)], vec![], TailPolicy::ConstantFrom(3)).is_err());
    }

    #[test]
    fn compose_with_identity() {
        let t = times2_tower();
        let id = ProMap::identity(&t);
        let c = compose(&id, &id).unwrap();
        assert!(germ_eq(&c, &id, 2).unwrap());
    }

    #[test]
    fn reindexing() {
        let t = times2_tower();
        let (y, fwd) = reindex_cofinal(&t, 2).unwrap();
        assert_eq!(y.map(0), GroupHom::scalar(t.entry(0), 4));
        assert_eq!(fwd.theta(3), 6);
        let (y1, _) = reindex_cofinal(&t, 1).unwrap();
        assert_eq!(y1.map(0), t.map(0));
    }
}
