// Classifying maps, factoring them and solving lifting problems.

use tmodel::chain::{random_chain_map, random_complex, rng_from_seed, ChainComplex, ChainMap};
use tmodel::exactalg::RingTag;
use tmodel::tstruct::{classify_map, factor_n, find_lift, is_co_n_fibration, is_n_cofibration};

pub fn run_example() -> tmodel::Result<()> {
    let z = RingTag::Integers;
    let p = ChainComplex::point(z, 0, 1);
    let c = classify_map(&ChainMap::scalar(&p, 2));
    println!(
        "x2 on Z[0]: max n-equivalence {}, min co-n-equivalence {}",
        c.max_n_equivalence, c.min_co_n_equivalence
    );

    let mut rng = rng_from_seed(3);
    let a = random_complex(&mut rng, z, -1, 1, 2);
    let y = random_complex(&mut rng, z, -1, 2, 2);
    let f = random_chain_map(&mut rng, &a, &y);
    let n = 0;
    let left = factor_n(&f, n)?;
    println!(
        "factor_0: middle ranks {:?}, i cofibration {}, p fibration {}",
        left.middle.ranks_map(),
        is_n_cofibration(&left.i, n),
        is_co_n_fibration(&left.p, n)
    );

    let right = factor_n(&f, n - 1)?;
    let h = find_lift(&left.i, &right.p, &right.i, &left.p, n)?.expect("lift exists");
    println!("lift commutes: {}", h.compose(&left.i)? == right.i && right.p.compose(&h)? == left.p);
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmodel::Result<()> {
    run_example()
}
