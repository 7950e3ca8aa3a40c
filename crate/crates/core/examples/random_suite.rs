//! A small seeded run of the implication suite and the sign-sweep of the modulus estimate.

use choquet_lab::settings::Settings;
use choquet_lab::suite::{self, RandomSuiteOptions};
use choquet_lab::Result;

pub fn run() -> Result<()> {
    let opts = RandomSuiteOptions { count: 20, seed: 3, ..Default::default() };
    let report = suite::random_implication_suite(&opts, &Settings::default());
    println!("{} spaces, {} violations", report.spaces, report.violations.len());
    for (c, [t, f, u]) in &report.tallies {
        println!("  {c:>3}: {t} true, {f} false, {u} unknown");
    }
    let sweep = suite::prubeh_sweep(5, usize::MAX);
    println!("modulus estimate: {} cases, {} failures, {} strict at z = ±1", sweep.cases, sweep.failures, sweep.strict_real);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
