use super::tower::{DirectSystem, ProMap, TailPolicy, Tower};
use crate::error::Result;
use crate::exactalg::linalg::solve;
use crate::exactalg::{
    cokernel, hom_group_data, image_data, inverse, kernel, lift_through, same_subgroup,
    solve_hom_constraints, FgAbGroup, GroupHom, HomConstraint, HomGroup, IntMatrix,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Upper bound on the length of a strictly decreasing run of images `φ^k(A)`
/// that can still stabilize.
pub fn stabilization_bound(a: &FgAbGroup) -> usize {
    let tors: BigInt = a.invariant_factors().iter().fold(BigInt::one(), |x, d| x * d);
    a.free_rank() + tors.bits() as usize + 1
}

fn is_nilpotent(phi: &GroupHom) -> Result<bool> {
    let b = 2 * stabilization_bound(phi.source());
    Ok(phi.pow(b)?.is_zero())
}

/// First `k` with `im φ^k = im φ^{k+1}`, if it occurs within the bound.
pub fn stable_image_index(phi: &GroupHom) -> Result<Option<usize>> {
    let b = 2 * stabilization_bound(phi.source());
    let mut cur = GroupHom::identity(phi.source());
    for k in 0..=b {
        let next = phi.compose(&cur)?;
        if same_subgroup(&cur, &next) {
            return Ok(Some(k));
        }
        cur = next;
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filler {
    pub level: usize,
    pub from: usize,
    /// `Y_from -> X_level` (of the reindexed source)
    pub map: GroupHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProIsoResult {
    True(Vec<Filler>),
    False { level: usize, reason: String },
    Unknown { budget: usize },
}

impl ProIsoResult {
    pub fn is_true(&self) -> bool {
        matches!(self, ProIsoResult::True(_))
    }
    pub fn is_false(&self) -> bool {
        matches!(self, ProIsoResult::False { .. })
    }
}

impl fmt::Display for ProIsoResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProIsoResult::True(_) => write!(f, "TRUE"),
            ProIsoResult::False { level, reason } => write!(f, "FALSE\tlevel={level}\t{reason}"),
            ProIsoResult::Unknown { budget } => write!(f, "UNKNOWN\tbudget={budget}"),
        }
    }
}

fn find_filler(x: &Tower<GroupHom>, y: &Tower<GroupHom>, f: &ProMap<GroupHom>, t: usize, s: usize) -> Result<Option<GroupHom>> {
    let constraints = [
        HomConstraint::Pre {
            right: f.component(s),
            rhs: x.composite(s, t)?,
        },
        HomConstraint::Post {
            left: f.component(t),
            rhs: y.composite(s, t)?,
        },
    ];
    solve_hom_constraints(y.entry(s), x.entry(t), &constraints)
}

/// Decides whether a map of group towers is a pro-isomorphism.
///
/// Fillers `g: Y_s -> X_t` with `g f_s = X_{s→t}` and `f_t g = Y_{s→t}` are
/// searched for every level up to the tail. When the search is inconclusive
/// the tail kernel and cokernel endomorphisms are tested for nilpotency, which
/// decides the question; `Unknown` is returned only if fillers are certified to
/// exist but were not found within the extended search.
pub fn is_pro_isomorphism(f: &ProMap<GroupHom>, budget: usize) -> Result<ProIsoResult> {
    let (x, lf) = f.to_level()?;
    let y = lf.target().clone();
    let t0 = lf.window();
    let constant = matches!(x.tail(), TailPolicy::ConstantFrom(_)) && matches!(y.tail(), TailPolicy::ConstantFrom(_));
    let search = |t: usize, upto: usize| -> Result<Option<Filler>> {
        for s in t..=upto {
            if let Some(g) = find_filler(&x, &y, &lf, t, s)? {
                return Ok(Some(Filler { level: t, from: s, map: g }));
            }
        }
        Ok(None)
    };
    let mut fillers = Vec::new();
    let mut missing = None;
    for t in 0..=t0 {
        let upto = if constant { t0.max(t) } else { t0.max(t) + budget };
        match search(t, upto)? {
            Some(fl) => fillers.push(fl),
            None => {
                missing = Some(t);
                break;
            }
        }
    }
    let Some(t_missing) = missing else {
        return Ok(ProIsoResult::True(fillers));
    };
    if constant {
        return Ok(ProIsoResult::False {
            level: t_missing,
            reason: "no filler exists".into(),
        });
    }
    // tail certificate
    let ft = lf.component(t0);
    let (k, kincl) = kernel(&ft);
    let phi_x = x.map(t0);
    let phi_k = lift_through(&kincl, &phi_x.compose(&kincl)?).expect("kernel is invariant");
    let (c, q) = cokernel(&ft);
    let phi_y = y.map(t0);
    let phi_c = solve_hom_constraints(
        &c,
        &c,
        &[HomConstraint::Pre {
            right: q.clone(),
            rhs: q.compose(&phi_y)?,
        }],
    )?
    .expect("cokernel is invariant");
    if !is_nilpotent(&phi_k)? {
        return Ok(ProIsoResult::False {
            level: t0,
            reason: format!("kernel tower is not pro-zero ({k})"),
        });
    }
    if !is_nilpotent(&phi_c)? {
        return Ok(ProIsoResult::False {
            level: t0,
            reason: format!("cokernel tower is not pro-zero ({c})"),
        });
    }
    let extra = 2 * (2 * stabilization_bound(&k) + 2 * stabilization_bound(&c)) + 2;
    fillers.clear();
    for t in 0..=t0 {
        match search(t, t0.max(t) + budget + extra)? {
            Some(fl) => fillers.push(fl),
            None => return Ok(ProIsoResult::Unknown { budget }),
        }
    }
    Ok(ProIsoResult::True(fillers))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lim1Status {
    Zero,
    NonzeroUncountable,
    Unknown,
}

impl fmt::Display for Lim1Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lim1Status::Zero => write!(f, "Zero"),
            Lim1Status::NonzeroUncountable => write!(f, "NonzeroUncountable"),
            Lim1Status::Unknown => write!(f, "UNKNOWN"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimLim1 {
    /// `None` when the limit could not be determined.
    pub lim: Option<FgAbGroup>,
    pub lim1: Lim1Status,
    pub mittag_leffler: Option<bool>,
}

/// Whether `φ^m(A) ⊆ qA` for a `q` that kills the torsion of `A` after enough
/// powers and is at least 2, which forces every compatible sequence to vanish.
fn limit_vanishes(phi: &GroupHom) -> Result<bool> {
    let a = phi.source();
    let rad: BigInt = a.invariant_factors().iter().fold(BigInt::one(), |acc, d| {
        let mut r = acc;
        for p in small_prime_factors(d) {
            if (&r % &p) != BigInt::zero() {
                r *= p;
            }
        }
        r
    });
    let b = 2 * stabilization_bound(a);
    let mut pm = phi.clone();
    for _ in 0..b {
        let content = pm.matrix().entries().iter().fold(BigInt::zero(), |g, e| num_integer::Integer::gcd(&g, e));
        let mut candidates: Vec<BigInt> = small_prime_factors(&content);
        if rad > BigInt::one() {
            candidates.push(BigInt::one());
        }
        for p in candidates {
            let q = &rad * &p;
            if q <= BigInt::one() {
                continue;
            }
            if contained_in_multiple(&pm, &q) {
                return Ok(true);
            }
        }
        pm = phi.compose(&pm)?;
    }
    Ok(false)
}

fn contained_in_multiple(f: &GroupHom, q: &BigInt) -> bool {
    let a = f.target();
    let n = a.ngens();
    let ring = a.ring();
    let m = IntMatrix::identity(n, ring).scale(q).hstack(&a.relations());
    solve(&m, f.matrix()).is_some()
}

fn small_prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = num_traits::Signed::abs(n);
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n && p < BigInt::from(1_000_000) {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// `lim` and `lim¹` of a tower of finitely generated groups.
pub fn lim_lim1(t: &Tower<GroupHom>) -> Result<LimLim1> {
    let n = t.tail_start();
    match t.tail() {
        TailPolicy::ConstantFrom(_) => Ok(LimLim1 {
            lim: Some(t.entry(n).clone()),
            lim1: Lim1Status::Zero,
            mittag_leffler: Some(true),
        }),
        TailPolicy::RepeatFrom { endo, .. } => match stable_image_index(endo)? {
            Some(k) => {
                let s = image_data(&endo.pow(k)?).group;
                Ok(LimLim1 {
                    lim: Some(s),
                    lim1: Lim1Status::Zero,
                    mittag_leffler: Some(true),
                })
            }
            None => {
                let lim = if limit_vanishes(endo)? {
                    Some(FgAbGroup::zero(endo.ring()))
                } else {
                    None
                };
                Ok(LimLim1 {
                    lim,
                    lim1: Lim1Status::NonzeroUncountable,
                    mittag_leffler: Some(false),
                })
            }
        },
    }
}

/// Colimit of a direct system, represented at the tail index `index`.
#[derive(Clone, Debug)]
pub struct Colim {
    pub group: FgAbGroup,
    pub index: usize,
    /// `D_index -> colim`
    pub insertion: GroupHom,
    /// `colim -> D_index`, a section of `insertion`
    pub lift: GroupHom,
    // inverse of the automorphism induced on the colimit by the tail map
    alpha_inv: GroupHom,
}

impl Colim {
    /// Colimit of the constant system on `a`.
    pub fn trivial(a: &FgAbGroup) -> Colim {
        Colim {
            group: a.clone(),
            index: 0,
            insertion: GroupHom::identity(a),
            lift: GroupHom::identity(a),
            alpha_inv: GroupHom::identity(a),
        }
    }

    /// `D_s -> colim`
    pub fn insertion_from(&self, d: &DirectSystem<GroupHom>, s: usize) -> Result<GroupHom> {
        if s <= self.index {
            return self.insertion.compose(&d.composite(s, self.index)?);
        }
        let mut m = self.insertion.clone();
        for _ in self.index..s {
            m = self.alpha_inv.compose(&m)?;
        }
        Ok(m)
    }
}

/// Colimit of a direct system of finitely generated groups, or `None` when it
/// is not decided (e.g. `Z -2-> Z -2-> ...`).
pub fn colim(d: &DirectSystem<GroupHom>) -> Result<Option<Colim>> {
    let n = d.tail().start();
    let a = d.entry(n).clone();
    match d.tail() {
        TailPolicy::ConstantFrom(_) => Ok(Some(Colim {
            group: a.clone(),
            index: n,
            insertion: GroupHom::identity(&a),
            lift: GroupHom::identity(&a),
            alpha_inv: GroupHom::identity(&a),
        })),
        TailPolicy::RepeatFrom { endo, .. } => {
            let Some(k) = stable_image_index(endo)? else {
                return Ok(None);
            };
            let pk = endo.pow(k)?;
            let im = image_data(&pk);
            let incl = im.inclusion.clone();
            let alpha = lift_through(&incl, &endo.compose(&incl)?).expect("stable image is invariant");
            let alpha_inv = inverse(&alpha).expect("surjective endomorphism of a noetherian module");
            let mut ins = im.corestriction.clone();
            for _ in 0..k {
                ins = alpha_inv.compose(&ins)?;
            }
            Ok(Some(Colim {
                group: im.group,
                index: n,
                insertion: ins,
                lift: incl,
                alpha_inv,
            }))
        }
    }
}

/// `h ↦ h ∘ pre` as a map `Hom(B, C) -> Hom(A, C)`.
pub fn precompose_map(from: &HomGroup, to: &HomGroup, pre: &GroupHom) -> Result<GroupHom> {
    let cols: Result<Vec<Vec<BigInt>>> = (0..from.group.ngens())
        .map(|k| Ok(to.encode(&from.generator(k).compose(pre)?)))
        .collect();
    GroupHom::new(
        from.group.clone(),
        to.group.clone(),
        IntMatrix::from_columns(to.group.ngens(), &cols?, from.group.ring()),
    )
}

/// `h ↦ post ∘ h` as a map `Hom(A, B) -> Hom(A, C)`.
pub fn postcompose_map(from: &HomGroup, to: &HomGroup, post: &GroupHom) -> Result<GroupHom> {
    let cols: Result<Vec<Vec<BigInt>>> = (0..from.group.ngens())
        .map(|k| Ok(to.encode(&post.compose(&from.generator(k))?)))
        .collect();
    GroupHom::new(
        from.group.clone(),
        to.group.clone(),
        IntMatrix::from_columns(to.group.ngens(), &cols?, from.group.ring()),
    )
}

/// Tail shape of one index of a doubly indexed system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailShape {
    pub start: usize,
    pub repeating: bool,
}

impl TailShape {
    pub fn of<M: super::tower::Morphism>(t: &Tower<M>) -> Self {
        TailShape {
            start: t.tail_start(),
            repeating: matches!(t.tail(), TailPolicy::RepeatFrom { .. }),
        }
    }

    pub fn constant() -> Self {
        TailShape {
            start: 0,
            repeating: false,
        }
    }
}

/// Groups `G(s, t)`, covariant in `s` and contravariant in `t`, such as
/// `Hom(X_s, Y_t)` for towers `X`, `Y`.
pub trait BiSystem {
    fn s_tail(&self) -> TailShape;
    fn t_tail(&self) -> TailShape;
    fn group(&self, s: usize, t: usize) -> Result<FgAbGroup>;
    /// `G(s, t) -> G(s+1, t)`
    fn advance(&self, s: usize, t: usize) -> Result<GroupHom>;
    /// `G(s, t+1) -> G(s, t)`
    fn restrict(&self, s: usize, t: usize) -> Result<GroupHom>;
}

#[derive(Clone, Debug)]
pub struct ProHom {
    /// Tower `t ↦ colim_s G(s, t)`, when every colimit was decided.
    pub tower: Option<Tower<GroupHom>>,
    pub result: LimLim1,
}

impl ProHom {
    fn unknown() -> Self {
        ProHom {
            tower: None,
            result: LimLim1 {
                lim: None,
                lim1: Lim1Status::Unknown,
                mittag_leffler: None,
            },
        }
    }
}

/// `colim_s G(s, t)` as a direct system for fixed `t`.
pub fn direct_system_at(g: &impl BiSystem, t: usize) -> Result<DirectSystem<GroupHom>> {
    let st = g.s_tail();
    let entries: Vec<FgAbGroup> = (0..=st.start).map(|s| g.group(s, t)).collect::<Result<_>>()?;
    let maps: Vec<GroupHom> = (0..st.start).map(|s| g.advance(s, t)).collect::<Result<_>>()?;
    let tail = if st.repeating {
        TailPolicy::RepeatFrom {
            from: st.start,
            endo: g.advance(st.start, t)?,
        }
    } else {
        TailPolicy::ConstantFrom(st.start)
    };
    DirectSystem::new(entries, maps, tail)
}

/// `lim_t colim_s G(s, t)` with the `lim¹` dichotomy.
pub fn lim_colim(g: &impl BiSystem) -> Result<ProHom> {
    let ns = g.s_tail().start;
    let tt = g.t_tail();
    let mut colims = Vec::new();
    for t in 0..=tt.start + 1 {
        let Some(c) = colim(&direct_system_at(g, t)?)? else {
            return Ok(ProHom::unknown());
        };
        colims.push(c);
    }
    let step = |t: usize| -> Result<GroupHom> {
        colims[t]
            .insertion
            .compose(&g.restrict(ns, t)?)?
            .compose(&colims[t + 1].lift)
    };
    let entries: Vec<FgAbGroup> = (0..=tt.start).map(|t| colims[t].group.clone()).collect();
    let structure: Vec<GroupHom> = (0..tt.start).map(step).collect::<Result<_>>()?;
    let tail = if tt.repeating {
        TailPolicy::RepeatFrom {
            from: tt.start,
            endo: step(tt.start)?,
        }
    } else {
        TailPolicy::ConstantFrom(tt.start)
    };
    let tower = Tower::new(entries, structure, tail)?;
    let result = lim_lim1(&tower)?;
    Ok(ProHom {
        tower: Some(tower),
        result,
    })
}

struct GroupHoms<'a> {
    x: &'a Tower<GroupHom>,
    y: &'a Tower<GroupHom>,
}

impl GroupHoms<'_> {
    fn data(&self, s: usize, t: usize) -> Result<HomGroup> {
        hom_group_data(self.x.entry(s), self.y.entry(t))
    }
}

impl BiSystem for GroupHoms<'_> {
    fn s_tail(&self) -> TailShape {
        TailShape::of(self.x)
    }
    fn t_tail(&self) -> TailShape {
        TailShape::of(self.y)
    }
    fn group(&self, s: usize, t: usize) -> Result<FgAbGroup> {
        Ok(self.data(s, t)?.group)
    }
    fn advance(&self, s: usize, t: usize) -> Result<GroupHom> {
        precompose_map(&self.data(s, t)?, &self.data(s + 1, t)?, &self.x.map(s))
    }
    fn restrict(&self, s: usize, t: usize) -> Result<GroupHom> {
        postcompose_map(&self.data(s, t + 1)?, &self.data(s, t)?, &self.y.map(t))
    }
}

/// `lim_t colim_s Hom(X_s, Y_t)`.
pub fn pro_hom(x: &Tower<GroupHom>, y: &Tower<GroupHom>) -> Result<ProHom> {
    lim_colim(&GroupHoms { x, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{hom_group, RingTag};

    fn zz() -> FgAbGroup {
        FgAbGroup::free(RingTag::Integers, 1)
    }

    #[test]
    fn pro_iso_examples() {
        let z = zz();
        let t = Tower::repeat(GroupHom::scalar(&z, 2)).unwrap();
        let id = ProMap::identity(&t);
        assert!(is_pro_isomorphism(&id, 3).unwrap().is_true());

        let zero = Tower::constant(FgAbGroup::zero(RingTag::Integers));
        let to_zero = ProMap::level(t.clone(), zero.clone(), vec![GroupHom::zero(&z, zero.entry(0))]).unwrap();
        assert!(is_pro_isomorphism(&to_zero, 3).unwrap().is_false());

        let z2 = FgAbGroup::cyclic(2);
        let t2 = Tower::repeat(GroupHom::zero(&z2, &z2)).unwrap();
        let f = ProMap::level(t2, zero.clone(), vec![GroupHom::zero(&z2, zero.entry(0))]).unwrap();
        assert!(is_pro_isomorphism(&f, 3).unwrap().is_true());
    }

    #[test]
    fn lim_examples() {
        let z = zz();
        let c = lim_lim1(&Tower::constant(z.clone())).unwrap();
        assert_eq!((c.lim, c.lim1), (Some(z.clone()), Lim1Status::Zero));
        let r = lim_lim1(&Tower::repeat(GroupHom::scalar(&z, 2)).unwrap()).unwrap();
        assert_eq!(r.lim, Some(FgAbGroup::zero(RingTag::Integers)));
        assert_eq!(r.lim1, Lim1Status::NonzeroUncountable);
        let z4 = FgAbGroup::cyclic(4);
        let r = lim_lim1(&Tower::repeat(GroupHom::scalar(&z4, 2)).unwrap()).unwrap();
        assert_eq!(r.mittag_leffler, Some(true));
        assert_eq!(r.lim, Some(FgAbGroup::zero(RingTag::Integers)));
        assert_eq!(r.lim1, Lim1Status::Zero);
        // x3 on Z is not Mittag-Leffler, the limit still vanishes
        let r = lim_lim1(&Tower::repeat(GroupHom::scalar(&z, 3)).unwrap()).unwrap();
        assert_eq!(r.lim, Some(FgAbGroup::zero(RingTag::Integers)));
        // -1 on Z is an automorphism
        let r = lim_lim1(&Tower::repeat(GroupHom::scalar(&z, -1)).unwrap()).unwrap();
        assert_eq!(r.lim, Some(z));
    }

    #[test]
    fn colim_examples() {
        let z2 = FgAbGroup::cyclic(2);
        let c = colim(&DirectSystem::constant(z2.clone())).unwrap().unwrap();
        assert_eq!(c.group, z2);
        let c = colim(&DirectSystem::repeat(GroupHom::zero(&z2, &z2)).unwrap()).unwrap().unwrap();
        assert!(c.group.is_zero());
        assert!(colim(&DirectSystem::repeat(GroupHom::scalar(&zz(), 2)).unwrap()).unwrap().is_none());
    }

    #[test]
    fn pro_hom_examples() {
        let a = FgAbGroup::cyclic(6);
        let b = FgAbGroup::cyclic(4);
        let r = pro_hom(&Tower::constant(a.clone()), &Tower::constant(b.clone())).unwrap();
        assert_eq!(r.result.lim, Some(hom_group(&a, &b).unwrap()));
        let x = Tower::repeat(GroupHom::scalar(&zz(), 2)).unwrap();
        let r = pro_hom(&x, &Tower::constant(FgAbGroup::cyclic(2))).unwrap();
        assert!(r.result.lim.unwrap().is_zero());
        let r = pro_hom(&x, &Tower::constant(FgAbGroup::zero(RingTag::Integers))).unwrap();
        assert!(r.result.lim.unwrap().is_zero());
    }
}
