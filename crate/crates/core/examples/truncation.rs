// Truncation functors and the layers of the truncation tower.

use tmodel::chain::{homology, random_complex_seeded};
use tmodel::exactalg::RingTag;
use tmodel::tstruct::{heart_homology, layer_triangle_check, truncate_above, truncate_below_free, truncation_tower};

pub fn run_example() -> tmodel::Result<()> {
    let x = random_complex_seeded(7, RingTag::Integers, -2, 2, 3);
    for n in x.degrees() {
        println!("H_{n}(X) = {}", homology(&x, n));
    }

    let above = truncate_above(&x, 0);
    let below = truncate_below_free(&x, -1);
    for n in x.degrees() {
        println!("degree {n}: tau>=0 {}  tau<=-1 {}", homology(&above, n), homology(&below, n));
    }

    let tower = truncation_tower(&x);
    println!("tower squares commute: {}", tower.squares_commute());
    for n in x.degrees() {
        println!("layer {n}: H = {}  triangle ok = {}", heart_homology(&x, n), layer_triangle_check(&x, n));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmodel::Result<()> {
    run_example()
}
