//! Dilation operators `D` and `D̃` on simplicial spaces.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boundary::{self, BoundaryReport};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::representation::{self, RepresentingSet};
use crate::scalar::{rat, Field, Rational, Scalar};
use crate::settings::Settings;
use crate::space::{FunctionSpace, Measure};

/// `δ_x` for every point, with `D` (rows `δ_x`) and `D̃` (rows `|δ_x|`).
#[derive(Clone, Debug)]
pub struct DilationPair {
    pub delta: Vec<Vec<Rational>>,
    pub d: Matrix<Rational>,
    pub dt: Matrix<Rational>,
    pub boundary: Vec<usize>,
}

impl DilationPair {
    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn delta_measure(&self, x: usize) -> Measure {
        Measure::from_values(self.delta[x].iter().cloned().map(Scalar::real).collect())
    }
}

pub fn dilation(space: &FunctionSpace, settings: &Settings) -> Result<DilationPair> {
    if space.field() != Field::Real {
        return Err(Error::ComplexUndecided);
    }
    let report = boundary::choquet_boundary(space, settings)?;
    dilation_with(space, &report)
}

pub fn dilation_with(space: &FunctionSpace, report: &BoundaryReport) -> Result<DilationPair> {
    let (verdict, table) = representation::is_simplicial(space, report)?;
    if verdict.is_false() {
        let point = table.iter().find(|p| p.verdict.is_false()).map(|p| p.point.clone()).unwrap_or_default();
        return Err(Error::NotSimplicial(point));
    }
    let mut delta = Vec::with_capacity(space.n());
    for row in &table {
        let map = row.delta.as_ref().ok_or_else(|| Error::InternalInconsistency("missing δ_x".into()))?;
        let mu = Measure::from_map(space, map)?;
        delta.push(mu.values.iter().map(|v| v.re().clone()).collect::<Vec<_>>());
    }
    let dt = delta.iter().map(|r| r.iter().map(|v| v.abs()).collect()).collect();
    Ok(DilationPair { d: delta.clone(), delta, dt, boundary: report.boundary() })
}

fn check_len(pair: &DilationPair, len: usize) -> Result<()> {
    if len != pair.n() {
        return Err(Error::DimensionMismatch { expected: pair.n(), found: len });
    }
    Ok(())
}

pub fn apply_d(pair: &DilationPair, f: &[Rational]) -> Result<Vec<Rational>> {
    check_len(pair, f.len())?;
    Ok(linalg::mat_vec(&pair.d, f))
}

pub fn apply_dtilde(pair: &DilationPair, f: &[Rational]) -> Result<Vec<Rational>> {
    check_len(pair, f.len())?;
    Ok(linalg::mat_vec(&pair.dt, f))
}

/// `Dμ` with `∫ f dDμ = ∫ Df dμ`.
pub fn adjoint_d(pair: &DilationPair, mu: &[Rational]) -> Result<Vec<Rational>> {
    check_len(pair, mu.len())?;
    Ok(linalg::vec_mat(mu, &pair.d, pair.n()))
}

pub fn adjoint_dtilde(pair: &DilationPair, mu: &[Rational]) -> Result<Vec<Rational>> {
    check_len(pair, mu.len())?;
    Ok(linalg::vec_mat(mu, &pair.dt, pair.n()))
}

fn sup_norm(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

fn l1(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).sum()
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-12..=12), 12)).collect()
}

fn supported_in(v: &[Rational], set: &[usize]) -> bool {
    (0..v.len()).all(|i| v[i].is_zero() || set.contains(&i))
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct DirichletSuiteReport {
    pub space: String,
    pub seed: u64,
    pub batch: usize,
    /// Check name → number of failing instances.
    pub failures: BTreeMap<String, usize>,
    pub d_equals_dtilde: bool,
    pub theta_injective: bool,
    /// `Some` only when θ is injective.
    pub idempotent: Option<bool>,
}

impl DirichletSuiteReport {
    pub fn total_failures(&self) -> usize {
        self.failures.values().sum::<usize>() + usize::from(self.idempotent == Some(false))
    }

    pub fn passed(&self) -> bool {
        self.total_failures() == 0
    }
}

/// Finite forms of the dilation-operator properties on a batch of random `f` and `μ`.
pub fn property_suite(space: &FunctionSpace, settings: &Settings, batch: usize) -> Result<DirichletSuiteReport> {
    let report = boundary::choquet_boundary(space, settings)?;
    let pair = dilation_with(space, &report)?;
    let n = space.n();
    let bnd = pair.boundary.clone();
    let ac = representation::compute_ac(space)?;
    let ac_cols: Vec<Vec<Rational>> =
        linalg::transpose(ac.eval_matrix(), ac.m()).into_iter().map(|c| c.iter().map(|v| v.re().clone()).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut fails: BTreeMap<String, usize> = BTreeMap::new();
    let mut fail = |k: &str, bad: bool| {
        let e = fails.entry(k.to_string()).or_insert(0);
        if bad {
            *e += 1;
        }
    };

    // Operator norms and fixed boundary rows.
    let one = Rational::one();
    fail("operator-norm", pair.d.iter().chain(&pair.dt).any(|r| l1(r) > one));
    for &x in &bnd {
        let unit: Vec<Rational> = (0..n).map(|y| if y == x { one.clone() } else { Rational::zero() }).collect();
        fail("boundary-rows", pair.d[x] != unit || pair.dt[x] != unit);
    }
    // Norms of δ_x.
    for x in 0..n {
        let norm = boundary::real_atomic(space, &space.evaluation_functional(x)).value;
        fail("delta-norm", l1(&pair.delta[x]) != norm || !supported_in(&pair.delta[x], &bnd));
    }

    // Representing members of each M_x: vertices reached by random objectives.
    let mut members: Vec<(usize, Vec<Rational>)> = Vec::new();
    for x in 0..n {
        let rs: RepresentingSet = representation::representing_set(space, &space.evaluation_functional(x), None)?;
        members.push((x, rs.member.values.iter().map(|v| v.re().clone()).collect()));
        for _ in 0..2 {
            let w = random_vec(&mut rng, n);
            if let Some(mu) = rs.extreme_member(space, &w) {
                members.push((x, mu.values.iter().map(|v| v.re().clone()).collect()));
            }
        }
    }

    for _ in 0..batch {
        let f = random_vec(&mut rng, n);
        let df = apply_d(&pair, &f)?;
        let dtf = apply_dtilde(&pair, &f)?;
        fail("sup-norm", sup_norm(&df) > sup_norm(&f) || sup_norm(&dtf) > sup_norm(&f));
        let abs_f: Vec<Rational> = f.iter().map(|v| v.abs()).collect();
        let dt_abs = apply_dtilde(&pair, &abs_f)?;
        fail("pointwise-domination", df.iter().zip(&dt_abs).any(|(a, b)| a.abs() > *b));
        // Df is H-affine: (Df)(x) = ∫ Df dμ for μ ∈ M_x.
        for (x, mu) in &members {
            fail("h-affine", linalg::dot(&df, mu) != df[*x]);
        }

        let mu = random_vec(&mut rng, n);
        let dmu = adjoint_d(&pair, &mu)?;
        let dtmu = adjoint_dtilde(&pair, &mu)?;
        fail("adjoint-pairing", linalg::dot(&f, &dmu) != linalg::dot(&df, &mu));
        fail("measure-norm", l1(&dmu) > l1(&mu) || l1(&dtmu) > l1(&mu));
        let abs_mu: Vec<Rational> = mu.iter().map(|v| v.abs()).collect();
        let dt_abs_mu = adjoint_dtilde(&pair, &abs_mu)?;
        fail("measure-domination", dmu.iter().zip(&dt_abs_mu).any(|(a, b)| a.abs() > *b));
        fail("positivity", dt_abs_mu.iter().any(|v| v.is_negative()));
        fail("boundary-images", !supported_in(&dmu, &bnd) || !supported_in(&dtmu, &bnd));
        let diff: Vec<Rational> = mu.iter().zip(&dmu).map(|(a, b)| a - b).collect();
        fail("ac-annihilation", ac_cols.iter().any(|g| !linalg::dot(g, &diff).is_zero()));

        // Fixed points: boundary measures and nothing else.
        let restricted: Vec<Rational> =
            (0..n).map(|i| if bnd.contains(&i) { mu[i].clone() } else { Rational::zero() }).collect();
        let fixed_d = adjoint_d(&pair, &restricted)? == restricted;
        let fixed_dt = adjoint_dtilde(&pair, &restricted)? == restricted;
        fail("boundary-fixed", !fixed_d || !fixed_dt);
        let is_bnd = supported_in(&mu, &bnd);
        fail("fixed-iff-boundary", (dmu == mu) != is_bnd || (dtmu == mu) != is_bnd);
    }

    // Dμ = δ_x for μ ∈ M_x.
    for (x, mu) in &members {
        fail("representing-images", adjoint_d(&pair, mu)? != pair.delta[*x]);
    }

    let d_equals_dtilde = pair.d == pair.dt;
    if space.contains_constants() {
        fail("constants-positive", !d_equals_dtilde);
    }
    let theta = boundary::theta_injective(space, None).is_true();
    let idempotent = theta.then(|| {
        linalg::mat_mul(&pair.d, &pair.d, n) == pair.d && linalg::mat_mul(&pair.dt, &pair.dt, n) == pair.dt
    });
    Ok(DirichletSuiteReport {
        space: space.name().to_string(),
        seed: settings.seed,
        batch,
        failures: fails,
        d_equals_dtilde,
        theta_injective: theta,
        idempotent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{self, HjParams};

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn hj_delta_and_d1() {
        let sp = gallery::make_hj(&HjParams::new(1, 2, Scalar::from_frac(1, 4), Scalar::from_frac(1, 2))).unwrap();
        let pair = dilation(&sp, &s()).unwrap();
        let x = sp.index_of("(0,0)").unwrap();
        let mut expected = vec![Rational::zero(); sp.n()];
        expected[sp.index_of("a").unwrap()] = rat(1, 4);
        expected[sp.index_of("b").unwrap()] = rat(1, 2);
        assert_eq!(pair.delta[x], expected);
        let d1 = apply_d(&pair, &vec![Rational::one(); sp.n()]).unwrap();
        for (y, v) in d1.iter().enumerate() {
            assert_eq!(*v, if y == x { rat(3, 4) } else { Rational::one() });
        }
        assert!(apply_d(&pair, &[Rational::one()]).is_err());
    }

    #[test]
    fn full_space_identity() {
        let sp = gallery::make_full(3);
        let pair = dilation(&sp, &s()).unwrap();
        assert_eq!(pair.d, linalg::identity::<Rational>(3));
        assert_eq!(pair.d, pair.dt);
    }

    #[test]
    fn refuses_non_simplicial() {
        assert!(matches!(dilation(&gallery::make_square_affine(), &s()), Err(Error::NotSimplicial(_))));
        let c = gallery::make_full(2).with_field(Field::Complex).unwrap();
        assert_eq!(dilation(&c, &s()).unwrap_err(), Error::ComplexUndecided);
    }

    #[test]
    fn suites_pass() {
        let hj = gallery::make_hj(&HjParams::new(1, 2, Scalar::from_frac(1, 4), Scalar::from_frac(1, 2))).unwrap();
        let r = property_suite(&hj, &s(), 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.idempotent, Some(true));
        let p = gallery::make_porcupine(&["t1", "t2", "t3"], &["t1", "t2"]).unwrap();
        let r = property_suite(&p, &s(), 6).unwrap();
        assert!(r.passed() && r.d_equals_dtilde);
    }
}
