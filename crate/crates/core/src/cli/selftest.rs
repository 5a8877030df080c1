//! Seeded invariant suites behind the `selftest` command.

use crate::ahss::convergence_check;
use crate::chain::{derived_hom, homology, random_chain_map, random_complex, rng_from_seed, ChainComplex, ChainMap};
use crate::error::Result;
use crate::exactalg::RingTag;
use crate::pro::{lim_lim1, reindex_cofinal, Lim1Status, TailPolicy, Tower};
use crate::prohomotopy::{homology_tower, is_hstar_weak_equivalence, postnikov_replacement};
use crate::tstruct::{
    classify_map, factor_n, is_co_n_fibration, is_n_cofibration, layer_triangle_check, truncate_above,
    truncate_below_free,
};

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub passed: usize,
    /// First failing case, if any.
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    passed: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            passed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }

    fn done(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            cases: self.cases,
            passed: self.passed,
            first_failure: self.first_failure,
        }
    }
}

fn z() -> RingTag {
    RingTag::Integers
}

fn truncation_axioms(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut t = Tally::new("truncation-axioms");
    let mut rng = rng_from_seed(seed);
    for c in 0..cases {
        let x = random_complex(&mut rng, z(), -3, 3, 3);
        let y = random_complex(&mut rng, z(), -3, 3, 3);
        let above = truncate_above(&x, 0);
        let below = truncate_below_free(&y, -1);
        let mut ok = (-4..0).all(|i| homology(&above, i).is_zero());
        ok &= (0..=4).all(|i| homology(&above, i) == homology(&x, i));
        ok &= (0..=4).all(|i| homology(&below, i).is_zero());
        ok &= (-4..0).all(|i| homology(&below, i) == homology(&y, i));
        ok &= derived_hom(&above, &below, 0)?.is_zero();
        t.record(ok, || format!("case {c}"));
    }
    Ok(t.done())
}

fn layers(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut t = Tally::new("layer-triangles");
    let mut rng = rng_from_seed(seed);
    for c in 0..cases {
        let x = random_complex(&mut rng, z(), -3, 3, 3);
        for n in -4..=4 {
            t.record(layer_triangle_check(&x, n), || format!("case {c} degree {n}"));
        }
    }
    Ok(t.done())
}

fn two_out_of_three(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut t = Tally::new("two-out-of-three");
    let mut rng = rng_from_seed(seed);
    for c in 0..cases {
        let a = random_complex(&mut rng, z(), -2, 2, 2);
        let b = random_complex(&mut rng, z(), -2, 2, 2);
        let d = random_complex(&mut rng, z(), -2, 2, 2);
        let f = random_chain_map(&mut rng, &a, &b);
        let g = random_chain_map(&mut rng, &b, &d);
        let gf = g.compose(&f)?;
        let (cf, cg, cgf) = (classify_map(&f), classify_map(&g), classify_map(&gf));
        let mut ok = true;
        for n in -4..=4 {
            let (f1, g1, h1) = (cf.is_n_equivalence(n), cg.is_n_equivalence(n), cgf.is_n_equivalence(n));
            ok &= !(f1 && g1) || h1;
            ok &= !(h1 && cg.is_n_equivalence(n + 1)) || f1;
            ok &= !(h1 && cf.is_n_equivalence(n - 1)) || g1;
            let (f2, g2, h2) = (
                cf.is_co_n_equivalence(n),
                cg.is_co_n_equivalence(n),
                cgf.is_co_n_equivalence(n),
            );
            ok &= !(f2 && g2) || h2;
            ok &= !(h2 && cf.is_co_n_equivalence(n - 1)) || g2;
            ok &= !(h2 && cg.is_co_n_equivalence(n + 1)) || f2;
            ok &= cf.is_n_equivalence(n) || !cf.is_n_equivalence(n + 1);
            ok &= cf.is_co_n_equivalence(n) || !cf.is_co_n_equivalence(n - 1);
        }
        t.record(ok, || format!("case {c}"));
    }
    Ok(t.done())
}

fn factorizations(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut t = Tally::new("factorizations");
    let mut rng = rng_from_seed(seed);
    for c in 0..cases {
        let a = random_complex(&mut rng, z(), -2, 2, 2);
        let b = random_complex(&mut rng, z(), -2, 2, 2);
        let f = random_chain_map(&mut rng, &a, &b);
        let n = (c % 5) as i64 - 2;
        let ok = match factor_n(&f, n) {
            Ok(fac) => {
                fac.p.compose(&fac.i)? == f && is_n_cofibration(&fac.i, n) && is_co_n_fibration(&fac.p, n)
            }
            Err(_) => false,
        };
        t.record(ok, || format!("case {c} n {n}"));
    }
    Ok(t.done())
}

fn convergence(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut t = Tally::new("ahss-convergence");
    let mut rng = rng_from_seed(seed);
    for c in 0..cases {
        let ring = if c % 3 == 2 { RingTag::PrimeField(2) } else { z() };
        let x = random_complex(&mut rng, ring, -2, 2, 2);
        let y = random_complex(&mut rng, ring, -2, 2, 2);
        let r = convergence_check(&x, &y)?;
        t.record(r.converges(), || format!("case {c}"));
    }
    Ok(t.done())
}

fn random_tower(rng: &mut rand_chacha::ChaCha8Rng) -> Result<Tower<ChainMap>> {
    let x0 = random_complex(rng, z(), -1, 1, 2);
    let x1 = random_complex(rng, z(), -1, 1, 2);
    let f = random_chain_map(rng, &x1, &x0);
    Tower::new(vec![x0, x1], vec![f], TailPolicy::ConstantFrom(1))
}

fn postnikov(seed: u64, cases: usize, budget: usize) -> Result<SuiteResult> {
    let mut t = Tally::new("postnikov");
    let mut rng = rng_from_seed(seed);
    for c in 0..cases {
        let y = random_tower(&mut rng)?;
        let r = postnikov_replacement(&y)?;
        let v = is_hstar_weak_equivalence(&r.map, budget)?;
        t.record(v.is_weak_equivalence(), || format!("case {c}: {v}"));
    }
    Ok(t.done())
}

fn reindexing(seed: u64, cases: usize, budget: usize, horizon: usize) -> Result<SuiteResult> {
    let mut t = Tally::new("cofinal-reindexing");
    let mut rng = rng_from_seed(seed);
    for c in 0..cases {
        let y = random_tower(&mut rng)?;
        for k in 1..=horizon.min(4) {
            let (_, cmp) = reindex_cofinal(&y, k)?;
            let v = is_hstar_weak_equivalence(&cmp, budget)?;
            t.record(v.is_weak_equivalence(), || format!("case {c} step {k}: {v}"));
        }
    }
    Ok(t.done())
}

fn lim_examples() -> Result<SuiteResult> {
    let mut t = Tally::new("lim-lim1");
    let p = ChainComplex::point(z(), 0, 1);
    let halving = homology_tower(&Tower::repeat(ChainMap::scalar(&p, 2))?, 0)?;
    let r = lim_lim1(&halving)?;
    t.record(
        r.lim.as_ref().is_some_and(|g| g.is_zero()) && r.lim1 == Lim1Status::NonzeroUncountable,
        || "times-2 tower of Z".into(),
    );
    let r = lim_lim1(&homology_tower(&Tower::constant(p), 0)?)?;
    t.record(r.lim1 == Lim1Status::Zero, || "constant tower".into());
    let m4 = ChainComplex::moore(4, 0);
    let r = lim_lim1(&homology_tower(&Tower::repeat(ChainMap::scalar(&m4, 2))?, 0)?)?;
    t.record(
        r.mittag_leffler == Some(true) && r.lim.as_ref().is_some_and(|g| g.is_zero()),
        || "times-2 tower of Z/4".into(),
    );
    Ok(t.done())
}

/// Runs every suite; `budget` bounds filler searches and `horizon` the reindexing steps.
pub fn run_suites(seed: u64, budget: usize, horizon: usize) -> Result<Vec<SuiteResult>> {
    Ok(vec![
        truncation_axioms(seed, 20)?,
        layers(seed + 1, 20)?,
        two_out_of_three(seed + 2, 30)?,
        factorizations(seed + 3, 20)?,
        convergence(seed + 4, 9)?,
        postnikov(seed + 5, 8, budget)?,
        reindexing(seed + 6, 4, budget, horizon)?,
        lim_examples()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        for s in run_suites(11, 32, 3).unwrap() {
            assert!(s.ok(), "{} failed: {:?}", s.name, s.first_failure);
        }
    }
}
