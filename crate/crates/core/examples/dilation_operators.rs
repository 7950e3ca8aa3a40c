//! `D` and `D̃` on `H_1(1/4, 1/2)`: the measures `δ_x`, `D1`, and the property suite.

use choquet_lab::dirichlet;
use choquet_lab::gallery::{self, HjParams};
use choquet_lab::settings::Settings;
use choquet_lab::{Rational, Result, Scalar};

pub fn run() -> Result<()> {
    let settings = Settings::default();
    let space = gallery::make_hj(&HjParams::new(1, 2, Scalar::from_frac(1, 4), Scalar::from_frac(1, 2)))?;
    let pair = dirichlet::dilation(&space, &settings)?;
    let x = space.index_of("(0,0)")?;
    println!("δ_(0,0) = {:?}", pair.delta_measure(x).to_map(&space));
    let ones = vec![Rational::from_integer(1.into()); space.n()];
    let d1 = dirichlet::apply_d(&pair, &ones)?;
    println!("(D1)(0,0) = {}", d1[x]);
    let report = dirichlet::property_suite(&space, &settings, 8)?;
    println!("suite: {} failures; D = D̃: {}; D∘D = D: {:?}", report.total_failures(), report.d_equals_dtilde, report.idempotent);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
