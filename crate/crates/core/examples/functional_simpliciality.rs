//! Functional simpliciality on `H_1`: the generic circuit search against the four-number test,
//! and an explicit pair of boundary measures with a common norming function.

use choquet_lab::boundary;
use choquet_lab::gallery::{self, HjParams};
use choquet_lab::representation;
use choquet_lab::settings::Settings;
use choquet_lab::{Field, Measure, Result, Scalar, Witness};

pub fn run() -> Result<()> {
    let settings = Settings::default();
    for (a, b) in [((1, 4), (1, 2)), ((1, 3), (1, 3)), ((-1, 5), (-2, 5))] {
        let (alpha, beta) = (Scalar::from_frac(a.0, a.1), Scalar::from_frac(b.0, b.1));
        let space = gallery::make_hj(&HjParams::new(1, 2, alpha.clone(), beta.clone()))?;
        let report = boundary::choquet_boundary(&space, &settings)?;
        let generic = representation::is_functionally_simplicial(&space, &report, &settings)?;
        let (c14, _) = gallery::hj_c14_decision(&alpha, &beta, Field::Real)?;
        println!("α={alpha} β={beta}: circuit search {} / four-number test {}", generic.status, c14.status);
        if let Some(Witness::NonUniqueness(w)) = &generic.witness {
            let mu = Measure::from_map(&space, &w.mu)?;
            let second = mu.add(&Measure::from_map(&space, &w.nu)?);
            println!("  μ = {:?}", w.mu);
            let tv = |m: &Measure| m.total_variation_exact().map_or("?".to_string(), |q| q.to_string());
            println!("  ‖μ‖ = {}, ‖μ+ν‖ = {}", tv(&mu), tv(&second));
            println!("  re-verified: {}", representation::verify_nonuniqueness_witness(&space, &report, w));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
