//! Boundaries, θ-injectivity and representing sets on the three interval spaces.

use choquet_lab::boundary;
use choquet_lab::gallery::make_interval_space;
use choquet_lab::representation;
use choquet_lab::settings::Settings;
use choquet_lab::{Result, Scalar};

pub fn run() -> Result<()> {
    let settings = Settings::default();
    let cases = [(1, Scalar::zero()), (2, Scalar::from_int(-1)), (3, Scalar::from_frac(1, 2))];
    for (variant, param) in cases {
        let space = make_interval_space(variant, 8, &param)?;
        let report = boundary::choquet_boundary(&space, &settings)?;
        let labels: Vec<&str> = report.boundary().iter().map(|&x| space.label(x)).collect();
        println!("interval{variant}: boundary {{{}}}", labels.join(", "));
        println!("  θ injective on the boundary: {}", boundary::theta_injective(&space, Some(&report)).status);
        let (simp, table) = representation::is_simplicial(&space, &report)?;
        println!("  simplicial: {}", simp.status);
        if let Some(row) = table.iter().find(|r| r.point == "1") {
            println!("  boundary measure at 1: {:?}", row.delta);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
