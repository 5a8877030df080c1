// Homology, cones and the derived Hom groups `[X, Y]_n`.

use tmodel::chain::{cone, derived_hom, homology, induced_homology_map, is_quasi_isomorphism, shift, ChainComplex, ChainMap};
use tmodel::exactalg::RingTag;

pub fn run_example() -> tmodel::Result<()> {
    let z = RingTag::Integers;
    let m2 = ChainComplex::moore(2, 0);
    for n in -1..=2 {
        println!("H_{n}(M2) = {}", homology(&m2, n));
    }

    let p = ChainComplex::point(z, 0, 1);
    let twice = ChainMap::scalar(&p, 2);
    let c = cone(&twice).complex;
    println!("H_0(cone(x2)) = {}", homology(&c, 0));
    println!("H_0(x2) = {:?}", induced_homology_map(&twice, 0).matrix().to_rows());
    println!("x2 is a quasi-isomorphism: {}", is_quasi_isomorphism(&twice));

    for n in [-1, 0, 1] {
        println!("[M2, M2]_{n} = {}", derived_hom(&m2, &m2, n)?);
    }
    println!("[Z[0], Sigma M2]_1 = {}", derived_hom(&p, &shift(&m2, 1), 1)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmodel::Result<()> {
    run_example()
}
