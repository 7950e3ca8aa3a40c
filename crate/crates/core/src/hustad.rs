//! Transfer between probability measures on `S × K` and scalar measures on `K`.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gallery::pythagorean_unit;
use crate::scalar::{rat, rational_serde, Field, Rational, Scalar};
use crate::space::{FunctionSpace, Functional, Measure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub phase: Scalar,
    pub point: usize,
    #[serde(with = "rational_serde")]
    pub weight: Rational,
}

/// Finitely supported positive measure on `S × K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhasePointMeasure {
    pub atoms: Vec<Atom>,
}

impl PhasePointMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            if !a.phase.is_unimodular() {
                return Err(Error::BadParam(format!("phase {} is not unimodular", a.phase)));
            }
            if !a.weight.is_positive() {
                return Err(Error::BadParam("atom weights must be positive".into()));
            }
        }
        Ok(PhasePointMeasure { atoms })
    }

    pub fn total_weight(&self) -> Rational {
        self.atoms.iter().map(|a| a.weight.clone()).sum()
    }

    /// At most one phase per point.
    pub fn is_phase_graph(&self) -> bool {
        self.atoms.iter().enumerate().all(|(i, a)| {
            self.atoms[..i].iter().all(|b| b.point != a.point || b.phase == a.phase)
        })
    }

    /// Atoms merged per `(phase, point)` and sorted, for comparisons.
    pub fn canonical(&self) -> Vec<(usize, String, Rational)> {
        let mut out: Vec<(usize, String, Rational)> = Vec::new();
        for a in &self.atoms {
            let key = a.phase.to_string();
            match out.iter_mut().find(|(p, k, _)| *p == a.point && *k == key) {
                Some(e) => e.2 += &a.weight,
                None => out.push((a.point, key, a.weight.clone())),
            }
        }
        out.sort();
        out
    }
}

/// `μ(x) = Σ α·w` and `μ̃(x) = Σ w` over the atoms at `x`.
pub fn hustad_forward(nu: &PhasePointMeasure, n: usize) -> Result<(Measure, Measure)> {
    let mut mu = Measure::zero(n);
    let mut proj = Measure::zero(n);
    for a in &nu.atoms {
        if a.point >= n {
            return Err(Error::DimensionMismatch { expected: n, found: a.point + 1 });
        }
        let w = Scalar::real(a.weight.clone());
        mu.values[a.point] += &(&a.phase * &w);
        proj.values[a.point] += &w;
    }
    Ok((mu, proj))
}

/// One atom `(μ(x)/|μ(x)|, x, |μ(x)|)` per support point of a norm-one measure.
pub fn hustad_inverse(mu: &Measure) -> Result<PhasePointMeasure> {
    let mut atoms = Vec::new();
    let mut total = Rational::zero();
    for x in mu.support() {
        let v = &mu.values[x];
        let r = v.modulus_exact().ok_or_else(|| Error::IrrationalModulus(v.to_string()))?;
        atoms.push(Atom { phase: v.scale(&r.recip()), point: x, weight: r.clone() });
        total += r;
    }
    if !total.is_one() {
        return Err(Error::NormNotOne);
    }
    Ok(PhasePointMeasure { atoms })
}

/// Whether the scalar image of `ν̃` represents `φ` on `H`.
pub fn barycenter_check(nu: &PhasePointMeasure, space: &FunctionSpace, phi: &Functional) -> bool {
    match hustad_forward(nu, space.n()) {
        Ok((mu, _)) => &space.functional_of(&mu) == phi,
        Err(_) => false,
    }
}

/// Pointwise `|μ(x)| ≤ μ̃(x)`, which sums to `‖μ‖ ≤ ‖μ̃‖`.
pub fn forward_norm_bound(mu: &Measure, proj: &Measure) -> bool {
    mu.values.iter().zip(&proj.values).all(|(m, p)| m.norm_sqr() <= p.norm_sqr())
}

/// `μ ≪ μ̃`: every support point of `μ` carries `μ̃` mass.
pub fn absolutely_continuous(mu: &Measure, proj: &Measure) -> bool {
    mu.support().into_iter().all(|x| !proj.values[x].is_zero())
}

fn random_phase(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    match field {
        Field::Real => Scalar::from_int(if rng.gen_bool(0.5) { 1 } else { -1 }),
        Field::Complex => {
            let q = rat(rng.gen_range(-20..=20), rng.gen_range(1..=20));
            let z = pythagorean_unit(&q);
            if rng.gen_bool(0.5) {
                -z
            } else {
                z
            }
        }
    }
}

/// Random norm-one measure on `n` points with Pythagorean phases.
pub fn random_norm_one_measure(rng: &mut ChaCha8Rng, n: usize, field: Field) -> Measure {
    let mut weights: Vec<Rational> = (0..n)
        .map(|_| if rng.gen_bool(0.7) { rat(rng.gen_range(1..=12), 1) } else { Rational::zero() })
        .collect();
    if weights.iter().all(Zero::is_zero) {
        weights[rng.gen_range(0..n)] = Rational::one();
    }
    let total: Rational = weights.iter().cloned().sum();
    Measure::from_values(
        weights.into_iter().map(|w| if w.is_zero() { Scalar::zero() } else { random_phase(rng, field).scale(&(w / &total)) }).collect(),
    )
}

/// Random probability `ν̃`; with `graph` set, one phase per point.
pub fn random_phase_point_measure(rng: &mut ChaCha8Rng, n: usize, field: Field, graph: bool) -> PhasePointMeasure {
    let count = rng.gen_range(1..=2 * n);
    let mut atoms: Vec<Atom> = Vec::new();
    for _ in 0..count {
        let point = rng.gen_range(0..n);
        let phase = match (graph, atoms.iter().find(|a| a.point == point)) {
            (true, Some(a)) => a.phase.clone(),
            _ => random_phase(rng, field),
        };
        atoms.push(Atom { phase, point, weight: rat(rng.gen_range(1..=9), 1) });
    }
    let total: Rational = atoms.iter().map(|a| a.weight.clone()).sum();
    for a in atoms.iter_mut() {
        a.weight = &a.weight / &total;
    }
    PhasePointMeasure { atoms }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct HustadSuiteReport {
    pub seed: u64,
    pub cases: usize,
    pub roundtrip_failures: usize,
    pub norm_bound_failures: usize,
    pub continuity_failures: usize,
    pub projection_failures: usize,
}

impl HustadSuiteReport {
    pub fn failures(&self) -> usize {
        self.roundtrip_failures + self.norm_bound_failures + self.continuity_failures + self.projection_failures
    }
}

/// Round trips on random norm-one measures plus forward-map assertions on random `ν̃`.
pub fn property_suite(count: usize, seed: u64) -> HustadSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = HustadSuiteReport { seed, cases: count, ..Default::default() };
    for i in 0..count {
        let field = if i % 2 == 0 { Field::Complex } else { Field::Real };
        let n = rng.gen_range(1..=6);
        let mu = random_norm_one_measure(&mut rng, n, field);
        let ok = hustad_inverse(&mu)
            .and_then(|nu| {
                let (back, proj) = hustad_forward(&nu, n)?;
                let again = hustad_inverse(&back)?;
                Ok(back == mu && proj == mu.abs()? && again.canonical() == nu.canonical())
            })
            .unwrap_or(false);
        if !ok {
            rep.roundtrip_failures += 1;
        }
        let nu = random_phase_point_measure(&mut rng, n, field, i % 3 == 0);
        let (fmu, proj) = hustad_forward(&nu, n).expect("points in range");
        if !forward_norm_bound(&fmu, &proj) {
            rep.norm_bound_failures += 1;
        }
        if !absolutely_continuous(&fmu, &proj) {
            rep.continuity_failures += 1;
        }
        // ‖μ‖ = 1 forces μ̃ = |μ|.
        if fmu.total_variation_exact().is_some_and(|t| t.is_one()) && fmu.abs().map_or(true, |a| a != proj) {
            rep.projection_failures += 1;
        }
        if nu.is_phase_graph() {
            let back = hustad_inverse(&fmu).map(|b| b.canonical() == nu.canonical()).unwrap_or(false);
            if !back {
                rep.roundtrip_failures += 1;
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(phase: Scalar, point: usize, w: Rational) -> Atom {
        Atom { phase, point, weight: w }
    }

    #[test]
    fn forward_examples() {
        let nu = PhasePointMeasure::new(vec![atom(Scalar::from_int(-1), 0, rat(1, 1))]).unwrap();
        let (mu, p) = hustad_forward(&nu, 2).unwrap();
        assert_eq!(mu, Measure::from_values(vec![Scalar::from_int(-1), Scalar::zero()]));
        assert_eq!(p, Measure::dirac(2, 0));
        let cancel = PhasePointMeasure::new(vec![atom(Scalar::one(), 0, rat(1, 2)), atom(Scalar::from_int(-1), 0, rat(1, 2))]).unwrap();
        let (mu, p) = hustad_forward(&cancel, 1).unwrap();
        assert!(mu.is_zero());
        assert_eq!(p, Measure::dirac(1, 0));
        let c = PhasePointMeasure::new(vec![atom(Scalar::one(), 0, rat(1, 2)), atom(Scalar::i(), 1, rat(1, 2))]).unwrap();
        let (mu, _) = hustad_forward(&c, 2).unwrap();
        assert_eq!(mu.values[1], Scalar::new(rat(0, 1), rat(1, 2)));
    }

    #[test]
    fn inverse_examples() {
        let nu = hustad_inverse(&Measure::from_values(vec![Scalar::from_frac(1, 2), Scalar::from_frac(-1, 2)])).unwrap();
        assert_eq!(nu.atoms, vec![atom(Scalar::one(), 0, rat(1, 2)), atom(Scalar::from_int(-1), 1, rat(1, 2))]);
        let z = Scalar::new(rat(3, 5), rat(4, 5));
        let nu = hustad_inverse(&Measure::from_values(vec![z.clone()])).unwrap();
        assert_eq!(nu.atoms, vec![atom(z, 0, rat(1, 1))]);
        assert_eq!(hustad_inverse(&Measure::from_values(vec![Scalar::from_frac(1, 2)])), Err(Error::NormNotOne));
        assert!(matches!(hustad_inverse(&Measure::from_values(vec![Scalar::new(rat(1, 2), rat(1, 2))])), Err(Error::IrrationalModulus(_))));
    }

    #[test]
    fn invalid_atoms_rejected() {
        assert!(PhasePointMeasure::new(vec![atom(Scalar::from_frac(1, 2), 0, rat(1, 1))]).is_err());
        assert!(PhasePointMeasure::new(vec![atom(Scalar::one(), 0, rat(0, 1))]).is_err());
    }

    #[test]
    fn barycenters() {
        let sp = crate::gallery::make_porcupine(&["t1", "t2", "t3"], &["t1"]).unwrap();
        let (lo, mid, hi) = (sp.index_of("(t1,-1)").unwrap(), sp.index_of("(t1,0)").unwrap(), sp.index_of("(t1,1)").unwrap());
        let nu = PhasePointMeasure::new(vec![atom(Scalar::one(), lo, rat(1, 2)), atom(Scalar::one(), hi, rat(1, 2))]).unwrap();
        assert!(barycenter_check(&nu, &sp, &sp.evaluation_functional(mid)));
        let neg = PhasePointMeasure::new(vec![atom(Scalar::from_int(-1), lo, rat(1, 1))]).unwrap();
        assert!(!barycenter_check(&neg, &sp, &sp.evaluation_functional(lo)));
    }

    #[test]
    fn suite_is_clean() {
        assert_eq!(property_suite(60, 3).failures(), 0);
    }
}
