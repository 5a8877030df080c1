use super::group::{group_from_presentation, FgAbGroup};
use super::linalg::{image_basis, kernel_basis, solve};
use super::matrix::IntMatrix;
use super::ring::RingTag;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Homomorphism between canonical groups, as a matrix on canonical generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates that relations of the source map to zero, then reduces.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if source.ring() != target.ring() || matrix.ring() != source.ring() {
            return Err(Error::RingMismatch("homomorphism endpoints".into()));
        }
        if matrix.shape() != (target.ngens(), source.ngens()) {
            return Err(Error::Shape(format!(
                "hom matrix {}x{} for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        for (j, d) in source.invariant_factors().iter().enumerate() {
            for i in 0..target.ngens() {
                let x = matrix.get(i, j) * d;
                let m = target.modulus(i);
                let ok = if m.is_zero() {
                    x.is_zero()
                } else {
                    x.mod_floor(&m).is_zero()
                };
                if !ok {
                    return Err(Error::InvalidHom(format!(
                        "generator {j} of order {d} maps to an element of larger order"
                    )));
                }
            }
        }
        Ok(Self::new_unchecked(source, target, matrix))
    }

    pub(crate) fn new_unchecked(source: FgAbGroup, target: FgAbGroup, mut matrix: IntMatrix) -> Self {
        target.reduce_rows(&mut matrix);
        GroupHom {
            source,
            target,
            matrix,
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        let m = IntMatrix::zeros(target.ngens(), source.ngens(), source.ring());
        Self::new_unchecked(source.clone(), target.clone(), m)
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.ngens(), g.ring()))
    }

    /// Multiplication by an integer on `g`.
    pub fn scalar(g: &FgAbGroup, c: i64) -> Self {
        let m = IntMatrix::identity(g.ngens(), g.ring()).scale(&BigInt::from(c));
        Self::new_unchecked(g.clone(), g.clone(), m)
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> RingTag {
        self.source.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce_vec(&self.matrix.mul_vec(v))
    }

    /// `self ∘ f`
    pub fn compose(&self, f: &GroupHom) -> Result<GroupHom> {
        if f.target != self.source {
            return Err(Error::Shape(format!(
                "compose: {} is not {}",
                f.target, self.source
            )));
        }
        Ok(Self::new_unchecked(
            f.source.clone(),
            self.target.clone(),
            self.matrix.mul(&f.matrix),
        ))
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("adding homomorphisms with different endpoints".into()));
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix),
        ))
    }

    pub fn neg(&self) -> GroupHom {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn scale(&self, c: &BigInt) -> GroupHom {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    /// k-fold composite of an endomorphism.
    pub fn pow(&self, k: usize) -> Result<GroupHom> {
        if self.source != self.target {
            return Err(Error::Shape("pow of a non-endomorphism".into()));
        }
        let mut out = GroupHom::identity(&self.source);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = base.compose(&out)?;
            }
            base = base.compose(&base)?;
            k >>= 1;
        }
        Ok(out)
    }

    /// Matrix `[M | R_target]` used by every membership test in the target.
    fn with_target_relations(&self) -> IntMatrix {
        self.matrix.hstack(&self.target.relations())
    }
}

/// Some preimage of `b` under `f`, reduced in the source.
pub fn preimage(f: &GroupHom, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = f.with_target_relations();
    let bm = IntMatrix::column_vector(b, f.ring());
    let x = solve(&k, &bm)?;
    let a = f.source.ngens();
    let v: Vec<BigInt> = (0..a).map(|i| x.get(i, 0).clone()).collect();
    Some(f.source.reduce_vec(&v))
}

/// Factors `g: C -> B` through `f: A -> B` when `im g ⊆ im f`.
pub fn lift_through(f: &GroupHom, g: &GroupHom) -> Option<GroupHom> {
    if f.target != g.target {
        return None;
    }
    let k = f.with_target_relations();
    let x = solve(&k, &g.matrix)?;
    let a = f.source.ngens();
    let rows: Vec<usize> = (0..a).collect();
    let m = x.select_rows(&rows);
    GroupHom::new(g.source.clone(), f.source.clone(), m).ok()
}

/// Lattice `{x : M x ∈ col R_target}` inside the free cover of the source.
fn preimage_of_zero_lattice(f: &GroupHom) -> IntMatrix {
    let k = f.with_target_relations();
    let (basis, _) = kernel_basis(&k);
    let a = f.source.ngens();
    let rows: Vec<usize> = (0..a).collect();
    image_basis(&basis.select_rows(&rows))
}

pub fn kernel(f: &GroupHom) -> (FgAbGroup, GroupHom) {
    let lb = preimage_of_zero_lattice(f);
    let rel = solve(&lb, &f.source.relations()).expect("source relations lie in the kernel lattice");
    let p = group_from_presentation(&rel);
    let incl = GroupHom::new_unchecked(p.group.clone(), f.source.clone(), lb.mul(&p.lift));
    (p.group, incl)
}

/// Image together with the corestriction `source -> image`.
#[derive(Clone, Debug)]
pub struct ImageData {
    pub group: FgAbGroup,
    pub inclusion: GroupHom,
    pub corestriction: GroupHom,
}

pub fn image_data(f: &GroupHom) -> ImageData {
    let lb = preimage_of_zero_lattice(f);
    let p = group_from_presentation(&lb);
    let inclusion = GroupHom::new_unchecked(p.group.clone(), f.target.clone(), f.matrix.mul(&p.lift));
    let corestriction = GroupHom::new_unchecked(f.source.clone(), p.group.clone(), p.proj.clone());
    ImageData {
        group: p.group,
        inclusion,
        corestriction,
    }
}

pub fn image(f: &GroupHom) -> (FgAbGroup, GroupHom) {
    let d = image_data(f);
    (d.group, d.inclusion)
}

pub fn cokernel(f: &GroupHom) -> (FgAbGroup, GroupHom) {
    let p = group_from_presentation(&f.with_target_relations());
    let proj = GroupHom::new_unchecked(f.target.clone(), p.group.clone(), p.proj);
    (p.group, proj)
}

pub fn is_injective(f: &GroupHom) -> bool {
    kernel(f).0.is_zero()
}

pub fn is_surjective(f: &GroupHom) -> bool {
    cokernel(f).0.is_zero()
}

pub fn is_isomorphism(f: &GroupHom) -> bool {
    is_injective(f) && is_surjective(f)
}

/// Two-sided inverse of an isomorphism.
pub fn inverse(f: &GroupHom) -> Option<GroupHom> {
    if !is_isomorphism(f) {
        return None;
    }
    lift_through(f, &GroupHom::identity(&f.target))
}

/// Whether `im a == im b` as subgroups of a common target.
pub fn same_subgroup(a: &GroupHom, b: &GroupHom) -> bool {
    a.target == b.target && lift_through(a, b).is_some() && lift_through(b, a).is_some()
}

/// `im S / im T` for subgroups `T ⊆ S` of a common group.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub group: FgAbGroup,
    /// `S.source -> im S / im T`
    pub proj: GroupHom,
    /// Lift of each canonical generator to an element of `S.source`.
    pub lift: IntMatrix,
}

pub fn subquotient(a: &FgAbGroup, s: &GroupHom, t: &GroupHom) -> Result<SubQuotient> {
    if s.target != *a || t.target != *a {
        return Err(Error::Shape("subquotient: inclusions must land in the ambient group".into()));
    }
    let k = s.with_target_relations();
    let xt = solve(&k, &t.matrix).ok_or_else(|| {
        Error::ContainmentViolation("image of T is not contained in image of S".into())
    })?;
    let n = s.source.ngens();
    let rows: Vec<usize> = (0..n).collect();
    let xt = xt.select_rows(&rows);
    let ls = preimage_of_zero_lattice(s);
    let p = group_from_presentation(&ls.hstack(&xt));
    let proj = GroupHom::new_unchecked(s.source.clone(), p.group.clone(), p.proj);
    Ok(SubQuotient {
        group: p.group,
        proj,
        lift: p.lift,
    })
}

#[derive(Clone, Debug)]
struct Slot {
    row: usize,
    col: usize,
    value: BigInt,
    order: BigInt,
}

/// `Hom(A, B)` with decoding of its elements into homomorphisms.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub group: FgAbGroup,
    source: FgAbGroup,
    target: FgAbGroup,
    slots: Vec<Slot>,
    proj: IntMatrix,
    lift: IntMatrix,
}

impl HomGroup {
    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    /// Homomorphism represented by an element (canonical coordinates).
    pub fn decode(&self, v: &[BigInt]) -> GroupHom {
        let ring = self.source.ring();
        let coeffs = self.lift.mul_vec(v);
        let mut m = IntMatrix::zeros(self.target.ngens(), self.source.ngens(), ring);
        for (slot, c) in self.slots.iter().zip(&coeffs) {
            let x = m.get(slot.row, slot.col) + c * &slot.value;
            m.set(slot.row, slot.col, x);
        }
        GroupHom::new_unchecked(self.source.clone(), self.target.clone(), m)
    }

    pub fn generator(&self, k: usize) -> GroupHom {
        let mut v = vec![BigInt::zero(); self.group.ngens()];
        v[k] = BigInt::one();
        self.decode(&v)
    }

    pub fn encode(&self, h: &GroupHom) -> Vec<BigInt> {
        let coeffs: Vec<BigInt> = self
            .slots
            .iter()
            .map(|s| {
                let x = h.matrix.get(s.row, s.col);
                if self.source.ring().is_field() {
                    x.clone()
                } else {
                    x.div_floor(&s.value)
                }
            })
            .collect();
        self.group.reduce_vec(&self.proj.mul_vec(&coeffs))
    }
}

pub fn hom_group_data(a: &FgAbGroup, b: &FgAbGroup) -> Result<HomGroup> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch("hom_group".into()));
    }
    let ring = a.ring();
    let mut slots = Vec::new();
    for i in 0..b.ngens() {
        for j in 0..a.ngens() {
            let (ai, bi) = (a.modulus(j), b.modulus(i));
            let slot = if ring.is_field() || (ai.is_zero() && bi.is_zero()) {
                Some((BigInt::one(), BigInt::zero()))
            } else if ai.is_zero() {
                Some((BigInt::one(), bi))
            } else if bi.is_zero() {
                None
            } else {
                let g = ai.gcd(&bi);
                if g.is_one() {
                    None
                } else {
                    Some((&bi / &g, g))
                }
            };
            if let Some((value, order)) = slot {
                slots.push(Slot {
                    row: i,
                    col: j,
                    value,
                    order,
                });
            }
        }
    }
    let finite: Vec<usize> = (0..slots.len()).filter(|&k| !slots[k].order.is_zero()).collect();
    let mut rel = IntMatrix::zeros(slots.len(), finite.len(), ring);
    for (c, &k) in finite.iter().enumerate() {
        rel.set(k, c, slots[k].order.clone());
    }
    let p = group_from_presentation(&rel);
    Ok(HomGroup {
        group: p.group,
        source: a.clone(),
        target: b.clone(),
        slots,
        proj: p.proj,
        lift: p.lift,
    })
}

pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> Result<FgAbGroup> {
    Ok(hom_group_data(a, b)?.group)
}

/// Affine condition on an unknown `g: A -> B`.
#[derive(Clone, Debug)]
pub enum HomConstraint {
    /// `left ∘ g = rhs`
    Post { left: GroupHom, rhs: GroupHom },
    /// `g ∘ right = rhs`
    Pre { right: GroupHom, rhs: GroupHom },
}

/// Finds some `g: A -> B` satisfying every constraint, or `None`.
pub fn solve_hom_constraints(
    source: &FgAbGroup,
    target: &FgAbGroup,
    constraints: &[HomConstraint],
) -> Result<Option<GroupHom>> {
    let hg = hom_group_data(source, target)?;
    let ring = source.ring();
    let gens: Vec<GroupHom> = (0..hg.group.ngens()).map(|k| hg.generator(k)).collect();
    let nk = gens.len();
    // each equation: coefficients on gens, optional modulus, right-hand side
    let mut eqs: Vec<(Vec<BigInt>, BigInt, BigInt)> = Vec::new();
    for c in constraints {
        let (composites, rhs, modgroup) = match c {
            HomConstraint::Post { left, rhs } => {
                if left.source() != target || rhs.source() != source || rhs.target() != left.target() {
                    return Err(Error::Shape("post-constraint endpoints".into()));
                }
                let comps: Vec<IntMatrix> = gens
                    .iter()
                    .map(|g| left.matrix().mul(g.matrix()))
                    .collect();
                (comps, rhs.matrix().clone(), left.target().clone())
            }
            HomConstraint::Pre { right, rhs } => {
                if right.target() != source || rhs.target() != target || rhs.source() != right.source() {
                    return Err(Error::Shape("pre-constraint endpoints".into()));
                }
                let comps: Vec<IntMatrix> = gens
                    .iter()
                    .map(|g| g.matrix().mul(right.matrix()))
                    .collect();
                (comps, rhs.matrix().clone(), target.clone())
            }
        };
        if source.ring() != rhs.ring() {
            return Err(Error::RingMismatch("constraint".into()));
        }
        for i in 0..rhs.rows() {
            for j in 0..rhs.cols() {
                let coeffs: Vec<BigInt> = composites.iter().map(|m| m.get(i, j).clone()).collect();
                eqs.push((coeffs, modgroup.modulus(i), rhs.get(i, j).clone()));
            }
        }
    }
    if eqs.is_empty() {
        return Ok(Some(GroupHom::zero(source, target)));
    }
    let slack: Vec<usize> = (0..eqs.len()).filter(|&e| !eqs[e].1.is_zero()).collect();
    let ncols = nk + slack.len();
    let mut m = IntMatrix::zeros(eqs.len(), ncols, ring);
    let mut b = IntMatrix::zeros(eqs.len(), 1, ring);
    for (e, (coeffs, _, rhs)) in eqs.iter().enumerate() {
        for (k, c) in coeffs.iter().enumerate() {
            m.set(e, k, c.clone());
        }
        b.set(e, 0, rhs.clone());
    }
    for (s, &e) in slack.iter().enumerate() {
        m.set(e, nk + s, eqs[e].1.clone());
    }
    let Some(x) = solve(&m, &b) else {
        return Ok(None);
    };
    let coeffs: Vec<BigInt> = (0..nk).map(|k| x.get(k, 0).clone()).collect();
    let mut g = GroupHom::zero(source, target);
    for (h, c) in gens.iter().zip(&coeffs) {
        g = g.add(&h.scale(c))?;
    }
    Ok(Some(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingTag {
        RingTag::Integers
    }

    fn times(g: &FgAbGroup, c: i64) -> GroupHom {
        GroupHom::scalar(g, c)
    }

    #[test]
    fn kernel_image_cokernel() {
        let zz = FgAbGroup::free(z(), 1);
        assert!(kernel(&times(&zz, 2)).0.is_zero());
        assert_eq!(cokernel(&times(&zz, 2)).0, FgAbGroup::cyclic(2));
        let z4 = FgAbGroup::cyclic(4);
        assert_eq!(image(&times(&z4, 2)).0, FgAbGroup::cyclic(2));
        assert_eq!(kernel(&times(&z4, 2)).0, FgAbGroup::cyclic(2));
    }

    #[test]
    fn subquotients() {
        let zz = FgAbGroup::free(z(), 1);
        let s = GroupHom::identity(&zz);
        let t = times(&zz, 4);
        assert_eq!(subquotient(&zz, &s, &t).unwrap().group, FgAbGroup::cyclic(4));
        assert!(subquotient(&zz, &s, &s).unwrap().group.is_zero());
        assert!(subquotient(&zz, &t, &s).is_err());

        let z2 = FgAbGroup::free(z(), 2);
        let sgen = FgAbGroup::free(z(), 2);
        let s = GroupHom::new(sgen, z2.clone(), IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 2]], z())).unwrap();
        let t = GroupHom::new(zz, z2.clone(), IntMatrix::from_i64_rows(&[vec![2], vec![0]], z())).unwrap();
        let q = subquotient(&z2, &s, &t).unwrap().group;
        assert_eq!(q, FgAbGroup::new(z(), vec![BigInt::from(2)], 1).unwrap());
    }

    #[test]
    fn hom_groups() {
        let zz = FgAbGroup::free(z(), 1);
        let a = FgAbGroup::new(z(), vec![BigInt::from(2)], 1).unwrap();
        assert_eq!(hom_group(&zz, &a).unwrap(), a);
        assert!(hom_group(&FgAbGroup::cyclic(2), &zz).unwrap().is_zero());
        assert_eq!(hom_group(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(4)).unwrap(), FgAbGroup::cyclic(2));
        let hg = hom_group_data(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(4)).unwrap();
        let g = hg.generator(0);
        assert_eq!(g.matrix().get(0, 0), &BigInt::from(2));
        assert_eq!(hg.encode(&g), vec![BigInt::one()]);
    }

    #[test]
    fn constraints() {
        let zz = FgAbGroup::free(z(), 1);
        let c = HomConstraint::Pre {
            right: times(&zz, 2),
            rhs: GroupHom::identity(&zz),
        };
        assert!(solve_hom_constraints(&zz, &zz, &[c]).unwrap().is_none());
        assert!(solve_hom_constraints(&zz, &zz, &[]).unwrap().unwrap().is_zero());
        let z2 = FgAbGroup::cyclic(2);
        let c = HomConstraint::Pre {
            right: GroupHom::identity(&z2),
            rhs: GroupHom::identity(&z2),
        };
        let g = solve_hom_constraints(&z2, &z2, &[c]).unwrap().unwrap();
        assert_eq!(g, GroupHom::identity(&z2));
    }

    #[test]
    fn isomorphisms() {
        let z4 = FgAbGroup::cyclic(4);
        assert!(is_isomorphism(&GroupHom::identity(&z4)));
        assert!(!is_isomorphism(&times(&FgAbGroup::free(z(), 1), 2)));
        assert!(is_isomorphism(&times(&z4, 3)));
        let inv = inverse(&times(&z4, 3)).unwrap();
        assert_eq!(inv.compose(&times(&z4, 3)).unwrap(), GroupHom::identity(&z4));
    }

    #[test]
    fn rejects_invalid_hom() {
        let r = GroupHom::new(
            FgAbGroup::cyclic(2),
            FgAbGroup::free(z(), 1),
            IntMatrix::from_i64_rows(&[vec![1]], z()),
        );
        assert!(r.is_err());
    }
}
