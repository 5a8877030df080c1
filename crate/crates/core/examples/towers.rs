// Towers of groups: limits, lim^1, Mittag-Leffler and pro-isomorphisms.

use tmodel::chain::{ChainComplex, ChainMap};
use tmodel::exactalg::{FgAbGroup, GroupHom, RingTag};
use tmodel::pro::{is_pro_isomorphism, lim_lim1, ProMap, Tower};
use tmodel::prohomotopy::homology_tower;

pub fn run_example() -> tmodel::Result<()> {
    let z = RingTag::Integers;
    let p = ChainComplex::point(z, 0, 1);
    let halving = homology_tower(&Tower::repeat(ChainMap::scalar(&p, 2))?, 0)?;
    let r = lim_lim1(&halving)?;
    println!("x2 on Z: lim {:?}, lim1 {}", r.lim.map(|g| g.to_string()), r.lim1);

    let z4 = FgAbGroup::cyclic(4);
    let r = lim_lim1(&Tower::repeat(GroupHom::scalar(&z4, 2))?)?;
    println!("x2 on Z/4: ML {:?}, lim {:?}, lim1 {}", r.mittag_leffler, r.lim.map(|g| g.to_string()), r.lim1);

    // Z/4 under x2 is pro-zero, so the map to the zero tower is a pro-isomorphism
    let x = Tower::repeat(GroupHom::scalar(&z4, 2))?;
    let zero = FgAbGroup::zero(z);
    let f = ProMap::level(x, Tower::constant(zero.clone()), vec![GroupHom::zero(&z4, &zero)])?;
    println!("Z/4 tower -> 0 is a pro-isomorphism: {}", is_pro_isomorphism(&f, 16)?.is_true());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmodel::Result<()> {
    run_example()
}
