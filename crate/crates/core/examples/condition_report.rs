//! Conditions I–VI on the counterexample gallery, one line per space.

use choquet_lab::gallery::{self, HjParams};
use choquet_lab::representation::condition_report;
use choquet_lab::settings::Settings;
use choquet_lab::{Result, Scalar};

pub fn run() -> Result<()> {
    let settings = Settings::default();
    let q = Scalar::from_frac;
    let spaces = vec![
        gallery::make_two_point(),
        gallery::make_square_affine(),
        gallery::make_hj(&HjParams::new(1, 2, q(1, 4), q(1, 2)))?,
        gallery::make_hj(&HjParams::new(1, 2, q(1, 3), q(1, 3)))?.renamed("hj1(1/3,1/3)"),
        gallery::make_balanced_sum(3)?,
    ];
    for space in spaces {
        let report = condition_report(&space, &settings)?;
        println!("{:<14} {}", space.name(), report.summary());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
