//! Certified dual-norm enclosures in complex mode, refined over doubling phase grids.

use choquet_lab::boundary;
use choquet_lab::gallery::{self, RandomOptions};
use choquet_lab::settings::Settings;
use choquet_lab::{Field, Functional, Result, Scalar};

pub fn run() -> Result<()> {
    let settings = Settings::default().with_grid(8);
    let space = gallery::random_space(4, 2, 11, Field::Complex, &RandomOptions::default())?;
    let phi = Functional::new(vec![Scalar::from_parts("1", "1/2")?, Scalar::from_parts("-1/3", "1")?]);
    let norm = boundary::dual_norm(&space, &phi, &settings)?;
    for lvl in &norm.levels {
        println!("N = {:>4}: raw [{:.8}, {:.8}]  refined width {:.3e}",
            lvl.resolution, f(lvl.raw.lo()), f(lvl.raw.hi()), f(&lvl.refined.width()));
    }
    let report = boundary::choquet_boundary(&space, &settings)?;
    println!("boundary verdicts: {:?}", report.points.iter().map(|v| v.status.short()).collect::<Vec<_>>());
    Ok(())
}

fn f(q: &choquet_lab::Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
