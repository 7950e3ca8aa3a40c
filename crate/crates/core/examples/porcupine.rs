//! Porcupine spaces: boundary, state space and the equivalent simplex conditions.

use choquet_lab::boundary;
use choquet_lab::gallery;
use choquet_lab::representation::{condition_report, Condition};
use choquet_lab::settings::Settings;
use choquet_lab::Result;

pub fn run() -> Result<()> {
    let settings = Settings::default();
    let l = ["t1", "t2", "t3", "t4"];
    for a in [&["t1"][..], &["t1", "t3"], &["t1", "t2", "t3", "t4"]] {
        let space = gallery::make_porcupine(&l, a)?;
        let report = condition_report(&space, &settings)?;
        let state = boundary::state_space(&space, &report.boundary)?;
        println!("A = {a:?}: boundary {:?}", gallery::porcupine_boundary(&l, a));
        println!(
            "  state space: {} vertices, affine dim {}, simplex {}; V {} III {} IV {} VI {}",
            state.points.len(),
            state.affine_dim,
            state.is_simplex.status,
            report.status(Condition::V),
            report.status(Condition::III),
            report.status(Condition::IV),
            report.status(Condition::VI),
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
