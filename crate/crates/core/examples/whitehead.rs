// Weak equivalences of towers and Postnikov replacement.

use tmodel::chain::{random_chain_map, random_complex, rng_from_seed, ChainComplex, ChainMap};
use tmodel::exactalg::RingTag;
use tmodel::pro::{ProMap, TailPolicy, Tower};
use tmodel::prohomotopy::{is_hstar_fibrant, is_hstar_weak_equivalence, postnikov_replacement, surjectivize};

pub fn run_example() -> tmodel::Result<()> {
    let z = RingTag::Integers;
    let p = ChainComplex::point(z, 0, 1);
    let zero = ChainComplex::zero(z);
    let kill = ProMap::level(Tower::constant(p.clone()), Tower::constant(zero.clone()), vec![ChainMap::zero(&p, &zero)])?;
    println!("Z[0] -> 0: {}", is_hstar_weak_equivalence(&kill, 32)?);

    let mut rng = rng_from_seed(9);
    let y0 = random_complex(&mut rng, z, -1, 2, 2);
    let y1 = random_complex(&mut rng, z, -1, 2, 2);
    let f = random_chain_map(&mut rng, &y1, &y0);
    let y = Tower::new(vec![y0, y1], vec![f], TailPolicy::ConstantFrom(1))?;
    let r = postnikov_replacement(&y)?;
    println!("Postnikov base degree {}", r.n0);
    println!("Y -> W: {}", is_hstar_weak_equivalence(&r.map, 32)?);
    println!("W fibrant: {}", is_hstar_fibrant(&r.tower));
    let s = surjectivize(&r.tower)?;
    println!("surjectivized W fibrant: {}", is_hstar_fibrant(&s.tower));
    println!("W -> W': {}", is_hstar_weak_equivalence(&s.map, 32)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmodel::Result<()> {
    run_example()
}
