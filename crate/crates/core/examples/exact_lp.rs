//! The exact LP kernel: atomic norms with dual certificates and vertex enumeration.

use choquet_lab::phases::PhaseSet;
use choquet_lab::polytope::{self, VRep};
use choquet_lab::scalar::rat;
use choquet_lab::{Result, Scalar};

pub fn run() -> Result<()> {
    // Atomic norm of (1, 1/2) over the generators ±e1, ±e2, ±(1,1).
    let gens = vec![
        vec![Scalar::one(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::one()],
        vec![Scalar::one(), Scalar::one()],
    ];
    let v = vec![Scalar::one(), Scalar::from_frac(1, 2)];
    let sol = polytope::atomic_norm(&v, &gens, &PhaseSet::Real, None).expect("generators span");
    println!("‖v‖ = {}, norming coefficients {:?}", sol.value, sol.dual.iter().map(ToString::to_string).collect::<Vec<_>>());
    let square = VRep::new(2, vec![
        vec![rat(1, 1), rat(0, 1)], vec![rat(-1, 1), rat(0, 1)],
        vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(-1, 1)],
        vec![rat(0, 1), rat(0, 1)],
    ]);
    let facets = polytope::facets_with_vertex_counts(&square);
    println!("cross-polytope in the plane: {} facets, all simplices: {}", facets.len(), facets.iter().all(|f| f.is_simplex()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
