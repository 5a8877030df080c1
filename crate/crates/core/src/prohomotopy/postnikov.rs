use super::whitehead::degree_support;
use crate::chain::{disk_cover, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::pro::{ProMap, TailPolicy, Tower};
use crate::tstruct::{induced_below_map, truncate_below_data};

/// The diagonal Postnikov tower `W_t = T_{≤ n0 + t} Y_t` with the canonical map `Y -> W`.
#[derive(Clone, Debug)]
pub struct PostnikovReplacement {
    pub tower: Tower<ChainMap>,
    pub map: ProMap<ChainMap>,
    pub n0: i64,
}

pub fn postnikov_replacement(y: &Tower<ChainMap>) -> Result<PostnikovReplacement> {
    let (n0, hi) = degree_support(y).unwrap_or((0, 0));
    // past t1 every truncation is the identity and W agrees with Y
    let t1 = ((hi - n0).max(0) as usize).max(y.tail_start());
    let level = |t: usize| n0 + t as i64;
    let mut entries = Vec::new();
    let mut anchors = Vec::new();
    for t in 0..=t1 {
        let b = truncate_below_data(y.entry(t), level(t));
        entries.push(b.complex);
        anchors.push(b.anchor);
    }
    let structure = (0..t1)
        .map(|t| induced_below_map(&y.map(t), level(t + 1), level(t)))
        .collect::<Result<Vec<_>>>()?;
    let tail = match y.tail() {
        TailPolicy::ConstantFrom(_) => TailPolicy::ConstantFrom(t1),
        TailPolicy::RepeatFrom { endo, .. } => TailPolicy::RepeatFrom {
            from: t1,
            endo: induced_below_map(endo, level(t1 + 1), level(t1))?,
        },
    };
    let tower = Tower::new(entries, structure, tail)?;
    let map = ProMap::level(y.clone(), tower.clone(), anchors)?;
    Ok(PostnikovReplacement { tower, map, n0 })
}

/// Structure maps degreewise onto and entries with bounded homology.
pub fn is_hstar_fibrant(y: &Tower<ChainMap>) -> bool {
    // entries are bounded complexes, so their homology is bounded above
    let n = y.stored_len();
    (0..n).all(|s| y.map(s).is_degreewise_surjective())
}

/// A levelwise quasi-isomorphic tower `Y'` with degreewise surjective
/// structure maps, and the level map `Y -> Y'`.
#[derive(Clone, Debug)]
pub struct Surjectivized {
    pub tower: Tower<ChainMap>,
    pub map: ProMap<ChainMap>,
}

fn summand_inclusion(first: &ChainComplex, sum: &ChainComplex) -> ChainMap {
    ChainMap::from_fn(first, sum, |k| {
        let mut m = IntMatrix::zeros(sum.rank(k), first.rank(k), first.ring());
        m.set_block(0, 0, &IntMatrix::identity(first.rank(k), first.ring()));
        m
    })
    .expect("summand inclusion")
}

pub fn surjectivize(y: &Tower<ChainMap>) -> Result<Surjectivized> {
    let n = y.tail_start();
    if let TailPolicy::RepeatFrom { endo, .. } = y.tail() {
        if !endo.is_degreewise_surjective() {
            return Err(Error::Unsupported("repeating tail with a non-surjective map".into()));
        }
    }
    let mut entries = vec![y.entry(0).clone()];
    let mut incl = vec![ChainMap::identity(y.entry(0))];
    let mut structure = Vec::new();
    for s in 0..n {
        let phi = y.map(s);
        let prev = entries[s].clone();
        let lifted = incl[s].compose(&phi)?;
        if lifted.is_degreewise_surjective() {
            entries.push(y.entry(s + 1).clone());
            incl.push(ChainMap::identity(y.entry(s + 1)));
            structure.push(lifted);
            continue;
        }
        let (e, eps) = disk_cover(&prev);
        let next = y.entry(s + 1).direct_sum(&e);
        let ring = next.ring();
        let p = ChainMap::from_fn(&next, &prev, |k| {
            let a = y.entry(s + 1).rank(k);
            let mut m = IntMatrix::zeros(prev.rank(k), next.rank(k), ring);
            m.set_block(0, 0, &lifted.component(k));
            m.set_block(0, a, &eps.component(k));
            m
        })?;
        incl.push(summand_inclusion(y.entry(s + 1), &next));
        entries.push(next);
        structure.push(p);
    }
    let tail = match y.tail() {
        TailPolicy::ConstantFrom(_) => TailPolicy::ConstantFrom(n),
        TailPolicy::RepeatFrom { endo, .. } => {
            // the endomorphism plus the identity on the disk summand
            let top = &entries[n];
            let endo2 = ChainMap::from_fn(top, top, |k| {
                let mut m = IntMatrix::identity(top.rank(k), top.ring());
                m.set_block(0, 0, &endo.component(k));
                m
            })?;
            TailPolicy::RepeatFrom { from: n, endo: endo2 }
        }
    };
    let tower = Tower::new(entries, structure, tail)?;
    let map = ProMap::level(y.clone(), tower.clone(), incl)?;
    Ok(Surjectivized { tower, map })
}
