// The spectral sequence for maps from a tower into a fixed complex.

use tmodel::ahss::pro_ahss;
use tmodel::chain::{ChainComplex, ChainMap};
use tmodel::exactalg::{FgAbGroup, RingTag};
use tmodel::pro::Tower;
use tmodel::tstruct::free_resolution;

pub fn run_example() -> tmodel::Result<()> {
    let p = ChainComplex::point(RingTag::Integers, 0, 1);
    let halving = Tower::repeat(ChainMap::scalar(&p, 2))?;
    let y = free_resolution(&FgAbGroup::cyclic(2));
    let r = pro_ahss(&halving, &y, -1..=1)?;
    let show = |g: &Option<FgAbGroup>| g.as_ref().map_or("UNKNOWN".to_string(), |g| g.to_string());
    for ((p, q), g) in &r.e2 {
        println!("E2[{p},{q}] = {}", show(g));
    }
    for (n, g) in &r.abutment {
        println!("colim [X_s, Y]_{n} = {}", show(g));
    }
    println!("all-iso {:?}", r.all_iso());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmodel::Result<()> {
    run_example()
}
