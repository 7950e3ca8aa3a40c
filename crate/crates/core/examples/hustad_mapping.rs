//! The transfer between phase-point probability measures and scalar measures.

use choquet_lab::hustad::{self, Atom, PhasePointMeasure};
use choquet_lab::gallery::pythagorean_unit;
use choquet_lab::scalar::rat;
use choquet_lab::{Measure, Result, Scalar};

pub fn run() -> Result<()> {
    let z = pythagorean_unit(&rat(1, 2));
    let mu = Measure::from_values(vec![z.scale(&rat(1, 2)), Scalar::from_frac(-1, 4), Scalar::zero(), Scalar::from_frac(1, 4)]);
    let nu = hustad::hustad_inverse(&mu)?;
    println!("ν̃ atoms: {}", nu.atoms.len());
    let (back, proj) = hustad::hustad_forward(&nu, mu.len())?;
    println!("round trip exact: {}, μ̃ = |μ|: {}", back == mu, proj == mu.abs()?);
    // Two phases at one point: the forward image loses mass.
    let split = PhasePointMeasure::new(vec![
        Atom { phase: Scalar::one(), point: 0, weight: rat(1, 2) },
        Atom { phase: Scalar::i(), point: 0, weight: rat(1, 2) },
    ])?;
    let (m, p) = hustad::hustad_forward(&split, 1)?;
    println!("‖μ‖² = {} ≤ ‖μ̃‖² = {}", m.values[0].norm_sqr(), p.values[0].norm_sqr());
    let suite = hustad::property_suite(100, 7);
    println!("random suite: {} cases, {} failures", suite.cases, suite.failures());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
