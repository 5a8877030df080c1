// Smith normal form and finitely generated abelian groups.

use tmodel::exactalg::{cokernel, group_from_presentation, hom_group, kernel, snf, FgAbGroup, GroupHom, IntMatrix, RingTag};

pub fn run_example() -> tmodel::Result<()> {
    let z = RingTag::Integers;
    let m = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], z);
    let r = snf(&m);
    println!("invariant factors: {:?}", r.invariant_factors);
    assert_eq!(r.u.mul(&m).mul(&r.v), r.s);

    let g = group_from_presentation(&m).group;
    println!("Z^3 / im M = {g}");

    let z4 = FgAbGroup::cyclic(4);
    let twice = GroupHom::scalar(&z4, 2);
    println!("ker(x2 on Z/4) = {}", kernel(&twice).0);
    println!("coker(x2 on Z/4) = {}", cokernel(&twice).0);
    println!("Hom(Z/2, Z/4) = {}", hom_group(&FgAbGroup::cyclic(2), &z4)?);

    let f2 = RingTag::PrimeField(2);
    let mf = m.with_ring(f2);
    println!("rank over F2: {}", snf(&mf).rank());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmodel::Result<()> {
    run_example()
}
