// The Atiyah-Hirzebruch spectral sequence for `[X, Y]_*` and its convergence.

use tmodel::ahss::{convergence_check, run_to_stable};
use tmodel::chain::ChainComplex;

pub fn run_example() -> tmodel::Result<()> {
    let m2 = ChainComplex::moore(2, 0);
    let ss = run_to_stable(&m2, &m2)?;
    for ((p, q), g) in &ss.e2().groups {
        if !g.is_zero() {
            println!("E2[{p},{q}] = {g}");
        }
    }
    println!("stable page {}, collapses {}", ss.stable_page, ss.collapses());

    let r = convergence_check(&m2, &m2)?;
    println!("lim {} lim1 {} colim {} all-iso {}", r.lim_ok, r.lim1_ok, r.colim_ok, r.all_iso());
    for s in r.graded_comparison.iter().filter(|s| !s.graded.is_zero()) {
        println!("E_inf[{},{}] = {}  gr = {}", s.p, s.q, s.e_infinity, s.graded);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmodel::Result<()> {
    run_example()
}
