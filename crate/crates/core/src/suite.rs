//! Regression and property sweeps shared by the CLI and the acceptance tests.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boundary::{self, BoundaryReport};
use crate::dirichlet;
use crate::error::{Error, Result};
use crate::gallery::{self, HjParams, RandomOptions};
use crate::representation::{self, Condition, ConditionReport};
use crate::scalar::{rat, rational_serde, Field, Rational, Scalar};
use crate::settings::Settings;
use crate::space::{FunctionSpace, SpaceDocument};
use crate::verdict::Status;

/// A failed check together with enough data to reproduce it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub message: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceDocument>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RandomSuiteReport {
    pub seed: u64,
    pub spaces: usize,
    /// Condition → (true, false, unknown) counts.
    pub tallies: std::collections::BTreeMap<String, [usize; 3]>,
    pub dirichlet_runs: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug)]
pub struct RandomSuiteOptions {
    pub count: usize,
    pub seed: u64,
    pub max_n: usize,
    pub max_m: usize,
    /// Batch size for the dilation suite on simplicial spaces (0 disables it).
    pub dirichlet_batch: usize,
}

impl Default for RandomSuiteOptions {
    fn default() -> Self {
        RandomSuiteOptions { count: 200, seed: 1, max_n: 6, max_m: 4, dirichlet_batch: 4 }
    }
}

/// Parameters of the `i`-th random space of a suite.
pub fn suite_space(seed: u64, i: usize, max_n: usize, max_m: usize) -> Result<FunctionSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9).wrapping_add(i as u64));
    let n = rng.gen_range(2..=max_n.max(2));
    let m = rng.gen_range(2..=max_m.min(n).max(2)).min(n);
    let opts = RandomOptions { force_constants: rng.gen_bool(0.4), spread: rng.gen_range(1..=3) };
    gallery::random_space(n, m, rng.gen(), Field::Real, &opts)
}

/// Cross-checks between `H` and `A_c(H)`; returns failure messages.
pub fn ac_checks(space: &FunctionSpace, report: &ConditionReport, settings: &Settings) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let ac = representation::compute_ac(space)?;
    let ac_boundary = boundary::choquet_boundary(&ac, settings)?;
    if ac_boundary.boundary() != report.boundary.boundary() {
        out.push("Ch_{A_c(H)} differs from Ch_H".to_string());
    }
    for x in 0..space.n() {
        let a = boundary::real_atomic(space, &space.evaluation_functional(x)).value;
        let b = boundary::real_atomic(&ac, &ac.evaluation_functional(x)).value;
        if a != b {
            out.push(format!("‖φ(x)‖ changes under A_c at {}", space.label(x)));
        }
    }
    let ac2 = representation::compute_ac(&ac)?;
    if !representation::same_span(&ac, &ac2) {
        out.push("A_c(A_c(H)) ≠ A_c(H)".to_string());
    }
    let (simp_ac, _) = representation::is_simplicial(&ac, &ac_boundary)?;
    if simp_ac.status != report.status(Condition::II) {
        out.push(format!("simpliciality {} for H but {} for A_c(H)", report.status(Condition::II), simp_ac.status));
    }
    // With constants: the five-way equivalence, and simpliciality of H against conditions on A_c(H).
    if space.contains_constants() {
        let simplex = boundary::state_space(space, &report.boundary)?.is_simplex.status;
        let group = [simplex, report.status(Condition::V), report.status(Condition::III), report.status(Condition::IV), report.status(Condition::VI)];
        if group.iter().any(|s| s.is_decided() && *s != simplex) {
            out.push(format!("state-space simplex/V/III/IV/VI disagree: {group:?}"));
        }
        let ac_report = representation::condition_report(&ac, settings)?;
        let ac_simplex = boundary::state_space(&ac, &ac_report.boundary)?.is_simplex.status;
        let h2 = report.status(Condition::II);
        for (name, s) in [
            ("S(A_c)", ac_simplex),
            ("V(A_c)", ac_report.status(Condition::V)),
            ("III(A_c)", ac_report.status(Condition::III)),
            ("IV(A_c)", ac_report.status(Condition::IV)),
            ("VI(A_c)", ac_report.status(Condition::VI)),
        ] {
            if s.is_decided() && h2.is_decided() && s != h2 {
                out.push(format!("simpliciality of H is {h2} but {name} is {s}"));
            }
        }
    }
    Ok(out)
}

/// The implication lattice and the `A_c` identities on seeded random real spaces.
pub fn random_implication_suite(opts: &RandomSuiteOptions, settings: &Settings) -> RandomSuiteReport {
    let mut rep = RandomSuiteReport { seed: opts.seed, ..Default::default() };
    for i in 0..opts.count {
        let space = match suite_space(opts.seed, i, opts.max_n, opts.max_m) {
            Ok(s) => s,
            Err(e) => {
                rep.violations.push(Violation { check: "generator".into(), message: e.to_string(), seed: opts.seed, space: None });
                continue;
            }
        };
        rep.spaces += 1;
        let mut violate = |check: &str, message: String| {
            rep.violations.push(Violation { check: check.into(), message, seed: opts.seed, space: Some(space.to_document()) });
        };
        let report = match representation::condition_report(&space, settings) {
            Ok(r) => r,
            Err(e) => {
                violate("lattice", format!("space #{i}: {e}"));
                continue;
            }
        };
        for (c, v) in &report.verdicts {
            let t = rep.tallies.entry(c.to_string()).or_insert([0; 3]);
            t[match v.status {
                Status::True => 0,
                Status::False => 1,
                Status::Unknown => 2,
            }] += 1;
        }
        match ac_checks(&space, &report, settings) {
            Ok(msgs) => msgs.into_iter().for_each(|m| violate("a_c", format!("space #{i}: {m}"))),
            Err(e) => violate("a_c", format!("space #{i}: {e}")),
        }
        for x in 0..space.n() {
            let norm = boundary::real_atomic(&space, &space.evaluation_functional(x)).value;
            let in_b = report.boundary.contains(x) == Status::True;
            if norm > Rational::one() || (in_b && !norm.is_one()) {
                violate("norms", format!("space #{i}: ‖φ({})‖ = {norm}", space.label(x)));
            }
        }
        if opts.dirichlet_batch > 0 && report.status(Condition::II) == Status::True {
            let s = Settings { seed: opts.seed.wrapping_add(i as u64), ..settings.clone() };
            match dirichlet::property_suite(&space, &s, opts.dirichlet_batch) {
                Ok(d) => {
                    rep.dirichlet_runs += 1;
                    if !d.passed() {
                        violate("dirichlet", format!("space #{i}: {:?}", d.failures));
                    }
                }
                Err(e) => violate("dirichlet", format!("space #{i}: {e}")),
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PrubehSweepReport {
    pub cases: usize,
    pub failures: usize,
    /// Non-real `z` where the inequality is not strict.
    pub nonstrict_nonreal: usize,
    /// `z = ±1` cases where strictness differs from the closed form of `|tz| − |tz − γ|`.
    pub real_mismatch: usize,
    /// `z = ±1` cases that are strict anyway.
    pub strict_real: usize,
}

/// At `z = ±1` the estimate reads `t − γz ≤ |t − γz|`, strict iff `t < γz`.
fn real_strictness(z: i64, gamma: &Rational, t: &Rational) -> bool {
    t < &(gamma * Rational::from_integer(z.into()))
}

/// Every Pythagorean unit from `q = p/r` with `|p|, r ≤ bound`, plus `±1`, their negatives,
/// against `γ ∈ {±2, ±1, ±1/2}` and `t ∈ {0, 1/2, 1, 2, 10}`; at most `limit` cases.
pub fn prubeh_sweep(bound: i64, limit: usize) -> PrubehSweepReport {
    let mut zs: Vec<Scalar> = vec![Scalar::one(), Scalar::from_int(-1)];
    for r in 1..=bound {
        for p in -bound..=bound {
            let z = gallery::pythagorean_unit(&rat(p, r));
            for w in [z.clone(), -z] {
                if !zs.contains(&w) {
                    zs.push(w);
                }
            }
        }
    }
    let gammas = [rat(2, 1), rat(-2, 1), rat(1, 1), rat(-1, 1), rat(1, 2), rat(-1, 2)];
    let ts = [Rational::zero(), rat(1, 2), rat(1, 1), rat(2, 1), rat(10, 1)];
    let mut rep = PrubehSweepReport::default();
    'outer: for z in &zs {
        for g in &gammas {
            for t in &ts {
                if rep.cases >= limit {
                    break 'outer;
                }
                rep.cases += 1;
                let out = gallery::prubeh_check(z, g, t).expect("valid sweep parameters");
                if !out.holds {
                    rep.failures += 1;
                }
                if z.is_real() {
                    let zi: i64 = if z.is_one() { 1 } else { -1 };
                    if out.strict != real_strictness(zi, g, t) {
                        rep.real_mismatch += 1;
                    }
                    if out.strict {
                        rep.strict_real += 1;
                    }
                } else if !out.strict {
                    rep.nonstrict_nonreal += 1;
                }
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct C14Case {
    #[serde(with = "rational_serde")]
    pub alpha: Rational,
    #[serde(with = "rational_serde")]
    pub beta: Rational,
    pub c14: Status,
    pub generic: Status,
}

/// Compares the four-number decision with the generic (III) test on `H_1` at grid `g`.
pub fn c14_cross_validation(pairs: &[(Rational, Rational)], g: usize, settings: &Settings) -> Result<Vec<C14Case>> {
    let mut out = Vec::new();
    for (a, b) in pairs {
        let (alpha, beta) = (Scalar::real(a.clone()), Scalar::real(b.clone()));
        let (v, w) = gallery::hj_c14_decision(&alpha, &beta, Field::Real)?;
        if let Some(w) = &w {
            if !gallery::verify_c14(&alpha, &beta, w) {
                return Err(Error::WitnessFailure(format!("four-number witness at α={a}, β={b}")));
            }
        }
        let space = gallery::make_hj(&HjParams::new(1, g, alpha, beta))?;
        let report: BoundaryReport = boundary::choquet_boundary(&space, settings)?;
        let generic = representation::is_functionally_simplicial(&space, &report, settings)?;
        out.push(C14Case { alpha: a.clone(), beta: b.clone(), c14: v.status, generic: generic.status });
    }
    Ok(out)
}

/// Default sweep: equal pairs, distinct positive pairs and mixed signs.
pub fn c14_default_pairs() -> Vec<(Rational, Rational)> {
    let mut v = Vec::new();
    for (p, q) in [(1, 3), (3, 10), (1, 4), (1, 5), (2, 5), (1, 10)] {
        v.push((rat(p, q), rat(p, q)));
    }
    for (a, b) in [((1, 4), (1, 2)), ((1, 3), (1, 2)), ((1, 5), (2, 5)), ((1, 10), (3, 5)), ((2, 3), (1, 4)), ((1, 7), (1, 6))] {
        v.push((rat(a.0, a.1), rat(b.0, b.1)));
    }
    for (a, b) in [((-1, 4), (1, 2)), ((1, 3), (-1, 3)), ((-1, 3), (-1, 3)), ((-1, 5), (-2, 5)), ((1, 2), (-1, 4)), ((-2, 5), (1, 5)), ((-1, 10), (-1, 10)), ((3, 10), (-3, 5))]
    {
        v.push((rat(a.0, a.1), rat(b.0, b.1)));
    }
    v
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SandwichCase {
    pub functional: usize,
    pub levels: Vec<boundary::EnclosureLevel>,
    pub nested: bool,
    pub ratio_ok: bool,
}

/// Dual-norm enclosures of random complex functionals on a random complex space.
pub fn sandwich_suite(count: usize, seed: u64, settings: &Settings) -> Result<Vec<SandwichCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..count {
        let n = rng.gen_range(3..=5);
        let m = rng.gen_range(2..=n.min(3));
        let space = gallery::random_space(n, m, rng.gen(), Field::Complex, &RandomOptions::default())?;
        let coeffs: Vec<Scalar> =
            (0..m).map(|_| Scalar::new(rat(rng.gen_range(-5..=5), 4), rat(rng.gen_range(-5..=5), 4))).collect();
        let phi = crate::space::Functional::new(coeffs);
        let dn = boundary::dual_norm(&space, &phi, settings)?;
        let mut nested = true;
        let mut ratio_ok = true;
        for w in dn.levels.windows(2) {
            nested &= w[0].refined.contains_interval(&w[1].refined);
        }
        for lvl in &dn.levels {
            // hi/lo ≤ sec(π/N), checked against a rational upper bound on cos(π/N).
            let c = crate::phases::cos_pi_over_upper(lvl.resolution);
            ratio_ok &= *lvl.raw.lo() >= lvl.raw.hi() * &c;
        }
        out.push(SandwichCase { functional: k, levels: dn.levels, nested, ratio_ok });
    }
    Ok(out)
}

/// Decided verdicts at grid `N` that flip at `2N`, over random complex spaces.
pub fn grid_refinement_conflicts(count: usize, seed: u64, settings: &Settings) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..count {
        let n = rng.gen_range(3..=5);
        let m = rng.gen_range(2..=n.min(3));
        let space = gallery::random_space(n, m, rng.gen(), Field::Complex, &RandomOptions::default())?;
        let coarse = representation::condition_report(&space, settings)?;
        let fine = representation::condition_report(&space, &settings.clone().with_grid(2 * settings.phase_grid))?;
        for x in 0..n {
            let (a, b) = (coarse.boundary.contains(x), fine.boundary.contains(x));
            if a.is_decided() && b.is_decided() && a != b {
                out.push(format!("space #{k}: boundary verdict at {} flips", space.label(x)));
            }
        }
        for c in Condition::ALL {
            let (a, b) = (coarse.status(c), fine.status(c));
            if a.is_decided() && b.is_decided() && a != b {
                out.push(format!("space #{k}: condition {c} flips"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_random_suite_is_clean() {
        let opts = RandomSuiteOptions { count: 8, seed: 5, dirichlet_batch: 2, ..Default::default() };
        let r = random_implication_suite(&opts, &Settings::default());
        assert_eq!(r.spaces, 8);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn suite_spaces_are_deterministic() {
        assert_eq!(suite_space(1, 3, 6, 4).unwrap(), suite_space(1, 3, 6, 4).unwrap());
    }

    #[test]
    fn prubeh_sweep_small() {
        let r = prubeh_sweep(3, usize::MAX);
        assert!(r.cases > 0);
        assert_eq!((r.failures, r.nonstrict_nonreal, r.real_mismatch), (0, 0, 0));
        assert_eq!(prubeh_sweep(3, 10).cases, 10);
    }

    #[test]
    fn real_closed_form() {
        assert!(real_strictness(1, &rat(2, 1), &rat(0, 1)));
        assert!(!real_strictness(1, &rat(2, 1), &rat(3, 1)));
        assert!(!real_strictness(-1, &rat(1, 1), &rat(5, 1)));
    }
}
