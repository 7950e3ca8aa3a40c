//! Named example spaces, the four-number criterion for the `H_j` family, the
//! `|tz| − |tz − γ|` estimate, and seeded random spaces.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{format_rational, rat, Field, Rational, Scalar};
use crate::space::FunctionSpace;
use crate::verdict::{C14Witness, Verdict, Witness};

/// Space `{f : C f = 0}` on the labelled points; the basis is an exact kernel basis.
pub fn space_from_constraints(
    name: &str,
    field: Field,
    labels: Vec<String>,
    constraints: &[Vec<Scalar>],
) -> Result<FunctionSpace> {
    let n = labels.len();
    let basis = if constraints.is_empty() { linalg::identity(n) } else { linalg::kernel(constraints, n) };
    let eval = linalg::transpose(&basis, n);
    FunctionSpace::new(name, field, labels, eval)
}

fn field_of(values: &[&Scalar]) -> Field {
    if values.iter().all(|v| v.is_real()) {
        Field::Real
    } else {
        Field::Complex
    }
}

fn grid_label(k: usize, g: usize) -> String {
    format_rational(&rat(k as i64, g as i64))
}

fn unit_row(n: usize, entries: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut r = vec![Scalar::zero(); n];
    for (i, v) in entries {
        r[*i] = &r[*i] + v;
    }
    r
}

/// The three interval spaces on `{0, 1/g, …, 1}`:
/// (1) `f(0) = 0`, (2) `f(1) = α f(0)` with `|α| = 1, α ≠ 1`, (3) `f(1) = β f(0)` with `0 < |β| < 1`.
pub fn make_interval_space(variant: u8, g: usize, param: &Scalar) -> Result<FunctionSpace> {
    if g == 0 {
        return Err(Error::BadParam("grid must be at least 1".into()));
    }
    let n = g + 1;
    let labels: Vec<String> = (0..n).map(|k| grid_label(k, g)).collect();
    let one = Scalar::one();
    let (constraint, field) = match variant {
        1 => (unit_row(n, &[(0, one)]), Field::Real),
        2 => {
            if !param.is_unimodular() || param.is_one() {
                return Err(Error::BadParam("variant 2 needs |α| = 1 and α ≠ 1".into()));
            }
            (unit_row(n, &[(g, one), (0, -param)]), field_of(&[param]))
        }
        3 => {
            let r = param.norm_sqr();
            if r.is_zero() || r >= Rational::one() {
                return Err(Error::BadParam("variant 3 needs 0 < |β| < 1".into()));
            }
            (unit_row(n, &[(g, one), (0, -param)]), field_of(&[param]))
        }
        _ => return Err(Error::BadParam(format!("interval variant {variant} is not 1, 2 or 3"))),
    };
    if g == 1 && variant != 1 {
        return Err(Error::BadParam("variants 2 and 3 need at least one interior point".into()));
    }
    space_from_constraints(&format!("interval{variant}"), field, labels, &[constraint])
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HjParams {
    pub variant: u8,
    pub grid: usize,
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl HjParams {
    pub fn new(variant: u8, grid: usize, alpha: Scalar, beta: Scalar) -> Self {
        HjParams { variant, grid, alpha, beta }
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.variant, 1 | 2) || self.grid == 0 {
            return Err(Error::BadParam("H_j needs j ∈ {1, 2} and grid ≥ 1".into()));
        }
        if self.alpha.is_zero() || self.beta.is_zero() {
            return Err(Error::BadParam("α and β must be nonzero".into()));
        }
        if !sum_of_moduli_below_one(&self.alpha, &self.beta) {
            return Err(Error::BadParam("|α| + |β| must be < 1".into()));
        }
        Ok(())
    }
}

/// `|α| + |β| < 1`, decided exactly: square twice.
pub fn sum_of_moduli_below_one(alpha: &Scalar, beta: &Scalar) -> bool {
    let (a, b) = (alpha.norm_sqr(), beta.norm_sqr());
    // |α| < 1 − |β| ⟺ |β| < 1 and a < 1 − 2|β| + b ⟺ 2|β| < 1 + b − a.
    let rhs = Rational::one() + &b - &a;
    b < Rational::one() && rhs.is_positive() && rat(4, 1) * &b < &rhs * &rhs
}

/// Label of the grid point `(s, t)`.
pub fn hj_label(s: &Rational, t: &Rational) -> String {
    format!("({},{})", format_rational(s), format_rational(t))
}

pub fn make_hj(p: &HjParams) -> Result<FunctionSpace> {
    p.validate()?;
    let g = p.grid;
    let ts: Vec<Rational> = match p.variant {
        1 => vec![rat(-1, 1), Rational::zero(), rat(1, 1)],
        _ => (0..=2 * g).map(|k| rat(k as i64 - g as i64, g as i64)).collect(),
    };
    let mut labels = Vec::new();
    for k in 0..=g {
        for t in &ts {
            labels.push(hj_label(&rat(k as i64, g as i64), t));
        }
    }
    labels.push("a".into());
    labels.push("b".into());
    let n = labels.len();
    let idx = |s: usize, t: &Rational| -> usize {
        s * ts.len() + ts.iter().position(|x| x == t).expect("grid value")
    };
    let half = Scalar::from_frac(1, 2);
    let (zero, one, m_one) = (Rational::zero(), rat(1, 1), rat(-1, 1));
    let mut cons = Vec::new();
    for s in 0..=g {
        cons.push(unit_row(n, &[(idx(s, &zero), Scalar::one()), (idx(s, &m_one), -&half), (idx(s, &one), -&half)]));
    }
    cons.push(unit_row(n, &[(idx(0, &zero), Scalar::one()), (n - 2, -&p.alpha), (n - 1, -&p.beta)]));
    let field = field_of(&[&p.alpha, &p.beta]);
    space_from_constraints(&format!("hj{}", p.variant), field, labels, &cons)
}

/// Porcupine space on `(L × {0}) ∪ (A × {−1, 1})` with `f(t,0) = (f(t,−1) + f(t,1))/2` on `A`.
pub fn make_porcupine(l: &[&str], a: &[&str]) -> Result<FunctionSpace> {
    if a.is_empty() {
        return Err(Error::EmptyA);
    }
    if l.len() < 2 || a.iter().any(|t| !l.contains(t)) {
        return Err(Error::BadParam("porcupine needs |L| ≥ 2 and A ⊆ L".into()));
    }
    let mut labels = Vec::new();
    for t in l {
        if a.contains(t) {
            labels.push(format!("({t},-1)"));
        }
        labels.push(format!("({t},0)"));
        if a.contains(t) {
            labels.push(format!("({t},1)"));
        }
    }
    let n = labels.len();
    let pos = |s: &str| labels.iter().position(|x| x == s).expect("label");
    let half = Scalar::from_frac(1, 2);
    let cons: Vec<Vec<Scalar>> = a
        .iter()
        .map(|t| {
            unit_row(
                n,
                &[
                    (pos(&format!("({t},0)")), Scalar::one()),
                    (pos(&format!("({t},-1)")), -&half),
                    (pos(&format!("({t},1)")), -&half),
                ],
            )
        })
        .collect();
    space_from_constraints("porcupine", Field::Real, labels.clone(), &cons)
}

/// Expected porcupine boundary `(L∖A) × {0} ∪ A × {−1, 1}` as labels.
pub fn porcupine_boundary(l: &[&str], a: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for t in l {
        if a.contains(t) {
            out.push(format!("({t},-1)"));
            out.push(format!("({t},1)"));
        } else {
            out.push(format!("({t},0)"));
        }
    }
    out
}

/// Affine functions on the four corners and the centre of the unit square.
pub fn make_square_affine() -> FunctionSpace {
    let pts = [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1), (1, 1, 2)];
    let labels = pts.iter().map(|&(x, y, d)| hj_label(&rat(x, d), &rat(y, d))).collect();
    let eval = pts.iter().map(|&(x, y, d)| vec![Scalar::one(), Scalar::from_frac(x, d), Scalar::from_frac(y, d)]).collect();
    FunctionSpace::new("square-affine", Field::Real, labels, eval).expect("valid square")
}

/// `K = {0, 1}`, `H = {f : f(1) = −f(0)}`.
pub fn make_two_point() -> FunctionSpace {
    FunctionSpace::new("two-point", Field::Real, vec!["0".into(), "1".into()], vec![vec![Scalar::one()], vec![Scalar::from_int(-1)]])
        .expect("valid two-point space")
}

/// `C(K)` on `n` points.
pub fn make_full(n: usize) -> FunctionSpace {
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    FunctionSpace::new(format!("full{n}"), Field::Real, labels, linalg::identity(n)).expect("identity basis")
}

/// `{f on {0, 1/g, …, 3} : f(0) + f(1) = f(2) + f(3)}`.
pub fn make_balanced_sum(g: usize) -> Result<FunctionSpace> {
    if g == 0 {
        return Err(Error::BadParam("grid must be at least 1".into()));
    }
    let n = 3 * g + 1;
    let labels: Vec<String> = (0..n).map(|k| grid_label(k, g)).collect();
    let one = Scalar::one();
    let c = unit_row(n, &[(0, one.clone()), (g, one.clone()), (2 * g, -&one), (3 * g, -&one)]);
    space_from_constraints("balanced-sum", Field::Real, labels, &[c])
}

#[derive(Clone, Debug, Default)]
pub struct RandomOptions {
    pub force_constants: bool,
    /// Largest numerator magnitude of random entries.
    pub spread: i64,
}

/// Seeded random space with rational entries `p/q`, `|p| ≤ spread`, `1 ≤ q ≤ 3`.
pub fn random_space(n: usize, m: usize, seed: u64, field: Field, opts: &RandomOptions) -> Result<FunctionSpace> {
    if !(2 <= m && m <= n && n <= 10) {
        return Err(Error::BadParam("random spaces need 2 ≤ m ≤ n ≤ 10".into()));
    }
    let spread = if opts.spread > 0 { opts.spread } else { 3 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entry = |rng: &mut ChaCha8Rng| -> Rational { rat(rng.gen_range(-spread..=spread), rng.gen_range(1..=3)) };
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    for _ in 0..1000 {
        let eval: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..m)
                    .map(|j| {
                        if opts.force_constants && j == 0 {
                            return Scalar::one();
                        }
                        let re = entry(&mut rng);
                        let im = if field == Field::Complex { entry(&mut rng) } else { Rational::zero() };
                        Scalar::new(re, im)
                    })
                    .collect()
            })
            .collect();
        if let Ok(s) = FunctionSpace::new(format!("random-{n}x{m}-{seed}"), field, labels.clone(), eval) {
            return Ok(s);
        }
    }
    Err(Error::ResamplingExhausted(1000))
}

// ---------------------------------------------------------------------------
// Four-number criterion.

fn shifts(alpha: &Rational, beta: &Rational) -> [Rational; 4] {
    [rat(-1, 2), rat(-1, 2), alpha.clone(), beta.clone()]
}

fn sign(q: &Rational) -> i8 {
    crate::scalar::sign_of(q)
}

/// Range of `|c| − |c + s|` over `c` with sign `σ`: `(lo, hi, lo_open)`.
fn g_range(sigma: i8, s: &Rational) -> (Rational, Rational, bool) {
    let a = s.abs();
    if sigma == 0 || sigma == sign(s) {
        (-a.clone(), -a, false)
    } else {
        (-a.clone(), a, true)
    }
}

/// Finds `x` with `|x_i| ≤ 1`, `x_i = σ_i` when `σ_i ≠ 0`, and `Σ a_i x_i = 0`.
fn solve_box(coef: &[Rational; 4], sigma: &[i8; 4]) -> Option<[Rational; 4]> {
    let mut x: [Rational; 4] = Default::default();
    for i in 0..4 {
        x[i] = if sigma[i] != 0 {
            Rational::from_integer(sigma[i].into())
        } else if coef[i].is_positive() {
            -Rational::one()
        } else {
            Rational::one()
        };
    }
    let mut total: Rational = coef.iter().zip(&x).map(|(a, v)| a * v).sum();
    if total.is_positive() {
        return None;
    }
    for i in 0..4 {
        if sigma[i] != 0 || coef[i].is_zero() || total.is_zero() {
            continue;
        }
        let room = rat(2, 1) * coef[i].abs();
        let step = if -&total < room { -&total } else { room };
        let dx = &step / &coef[i];
        x[i] += &dx;
        total += step;
    }
    total.is_zero().then_some(x)
}

/// Real four-number decision: `Some(witness)` iff the space fails functional simpliciality.
fn c14_real(alpha: &Rational, beta: &Rational) -> Option<C14Witness> {
    let s = shifts(alpha, beta);
    let coef = [rat(1, 2), rat(1, 2), -alpha.clone(), -beta.clone()];
    for code in 0..81u32 {
        let mut sigma = [0i8; 4];
        let mut k = code;
        for v in sigma.iter_mut() {
            *v = (k % 3) as i8 - 1;
            k /= 3;
        }
        let ranges: Vec<(Rational, Rational, bool)> = (0..4).map(|i| g_range(sigma[i], &s[i])).collect();
        let lo: Rational = ranges.iter().map(|r| r.0.clone()).sum();
        let hi: Rational = ranges.iter().map(|r| r.1.clone()).sum();
        let open = ranges.iter().any(|r| r.2);
        let posun = if open { lo.is_negative() && !hi.is_negative() } else { lo.is_zero() };
        if !posun {
            continue;
        }
        let Some(x) = solve_box(&coef, &sigma) else { continue };
        // Interpolate the half-open ranges to hit Σ g = 0.
        let tau = if open { -&lo / (&hi - &lo) } else { Rational::zero() };
        let c: Vec<Rational> = (0..4)
            .map(|i| {
                let (l, h, o) = &ranges[i];
                let a = s[i].abs();
                match (sigma[i], o) {
                    (0, _) => Rational::zero(),
                    (_, true) => {
                        let gi = l + &tau * (h - l);
                        Rational::from_integer(sigma[i].into()) * (gi + &a) / rat(2, 1)
                    }
                    _ => Rational::from_integer(sigma[i].into()) * a,
                }
            })
            .collect();
        let w = C14Witness {
            c: [0, 1, 2, 3].map(|i| Scalar::real(c[i].clone())),
            x: [0, 1, 2, 3].map(|i| Scalar::real(x[i].clone())),
        };
        return Some(w);
    }
    None
}

/// The four-number criterion for `H_j(α, β)`. `True` = functionally simplicial.
pub fn hj_c14_decision(alpha: &Scalar, beta: &Scalar, field: Field) -> Result<(Verdict, Option<C14Witness>)> {
    if alpha.is_zero() || beta.is_zero() || !sum_of_moduli_below_one(alpha, beta) {
        return Err(Error::BadParam("need α, β ≠ 0 and |α| + |β| < 1".into()));
    }
    if alpha.is_real() && beta.is_real() {
        if let Some(w) = c14_real(alpha.re(), beta.re()) {
            debug_assert!(verify_c14(alpha, beta, &w));
            return Ok((Verdict::no(Witness::C14(w.clone()), "sign-pattern-cases"), Some(w)));
        }
        if field == Field::Real {
            return Ok((Verdict::yes(Witness::Recompute, "sign-pattern-cases"), None));
        }
        if alpha.re().is_positive() && beta.re().is_positive() {
            // Distinct positive parameters: complex case reduces to the real one.
            let v = Verdict::yes(Witness::Theorem { tag: "distinct-positive-parameters".into() }, "theorem");
            return Ok((v, None));
        }
        return Ok((Verdict::unknown("sign-pattern-cases", "complex mode, real parameters of mixed sign"), None));
    }
    Ok((Verdict::unknown("sign-pattern-cases", "non-real parameters"), None))
}

/// Exact check of both four-number conditions.
pub fn verify_c14(alpha: &Scalar, beta: &Scalar, w: &C14Witness) -> bool {
    let half = Scalar::from_frac(1, 2);
    let shifted = [&w.c[0] - &half, &w.c[1] - &half, &w.c[2] + alpha, &w.c[3] + beta];
    let modsum = |v: &[Scalar]| -> Option<Rational> { v.iter().map(Scalar::modulus_exact).sum() };
    let (Some(left), Some(right)) = (modsum(&w.c), modsum(&shifted)) else { return false };
    let bounded = w.x.iter().all(|x| x.norm_sqr() <= Rational::one());
    let balance = &(&w.x[0] + &w.x[1]) * &half == &(alpha * &w.x[2]) + &(beta * &w.x[3]);
    let attained: Scalar = w.c.iter().zip(&w.x).fold(Scalar::zero(), |acc, (c, x)| acc + &(c * x));
    left == right && bounded && balance && attained == Scalar::real(left)
}

// ---------------------------------------------------------------------------
// The `|tz| − |tz − γ| ≤ γ Re z` estimate.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrubehOutcome {
    pub holds: bool,
    pub strict: bool,
}

/// Exact comparison; no square roots are needed since both sides are compared after squaring.
pub fn prubeh_check(z: &Scalar, gamma: &Rational, t: &Rational) -> Result<PrubehOutcome> {
    if !z.is_unimodular() || gamma.is_zero() || t.is_negative() {
        return Err(Error::BadParam("need |z| = 1, γ ≠ 0 and t ≥ 0".into()));
    }
    // t − γ Re z ≤ |tz − γ| with |tz − γ|² = t² − 2γt Re z + γ².
    let d = t - gamma * z.re();
    let n2 = t * t - rat(2, 1) * gamma * t * z.re() + gamma * gamma;
    let d2 = &d * &d;
    let (holds, strict) = if d.is_negative() {
        (true, true)
    } else if d.is_zero() {
        (true, n2.is_positive())
    } else {
        (d2 <= n2, d2 < n2)
    };
    Ok(PrubehOutcome { holds, strict })
}

/// Pythagorean unit `((1 − q²) + 2q i)/(1 + q²)`.
pub fn pythagorean_unit(q: &Rational) -> Scalar {
    let one = Rational::one();
    let d = &one + q * q;
    Scalar::new((&one - q * q) / &d, (q + q) / d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_frac(n, d)
    }

    #[test]
    fn hj_shape() {
        let sp = make_hj(&HjParams::new(1, 2, q(1, 4), q(1, 2))).unwrap();
        assert_eq!((sp.n(), sp.m()), (11, 7));
        assert!(sp.index_of("a").is_ok() && sp.index_of("(1/2,-1)").is_ok());
    }

    #[test]
    fn hj_rejects_bad_params() {
        assert!(make_hj(&HjParams::new(1, 2, q(1, 2), q(1, 2))).is_err());
        assert!(make_hj(&HjParams::new(1, 2, q(0, 1), q(1, 2))).is_err());
        assert!(make_hj(&HjParams::new(3, 2, q(1, 4), q(1, 4))).is_err());
    }

    #[test]
    fn porcupine_shape() {
        let sp = make_porcupine(&["t1", "t2", "t3"], &["t1"]).unwrap();
        assert_eq!(sp.n(), 5);
        assert!(sp.contains_constants());
        assert_eq!(make_porcupine(&["t1", "t2"], &[]).unwrap_err(), Error::EmptyA);
    }

    #[test]
    fn interval_params_checked() {
        assert!(make_interval_space(2, 4, &Scalar::one()).is_err());
        assert!(make_interval_space(3, 4, &Scalar::one()).is_err());
        assert!(make_interval_space(3, 4, &q(1, 2)).is_ok());
    }

    #[test]
    fn random_space_determinism_and_constants() {
        let a = random_space(5, 3, 42, Field::Real, &RandomOptions::default()).unwrap();
        let b = random_space(5, 3, 42, Field::Real, &RandomOptions::default()).unwrap();
        assert_eq!(a, b);
        let c = random_space(6, 4, 7, Field::Real, &RandomOptions { force_constants: true, spread: 3 }).unwrap();
        // Oracle: the ones vector lies in the column span.
        let mut cols = crate::linalg::transpose(c.eval_matrix(), c.m());
        cols.push(vec![Scalar::one(); c.n()]);
        assert_eq!(crate::linalg::rank(&cols, c.n()), c.m());
        assert!(random_space(3, 4, 0, Field::Real, &RandomOptions::default()).is_err());
    }

    #[test]
    fn prubeh_examples() {
        let r = |n, d| rat(n, d);
        assert_eq!(prubeh_check(&Scalar::one(), &r(2, 1), &r(3, 1)).unwrap(), PrubehOutcome { holds: true, strict: false });
        assert_eq!(prubeh_check(&Scalar::from_int(-1), &r(1, 1), &r(5, 1)).unwrap(), PrubehOutcome { holds: true, strict: false });
        let z = Scalar::new(r(3, 5), r(4, 5));
        assert_eq!(prubeh_check(&z, &r(1, 1), &r(1, 1)).unwrap(), PrubehOutcome { holds: true, strict: true });
        // Real z below the plateau is strict as well.
        assert!(prubeh_check(&Scalar::one(), &r(2, 1), &r(0, 1)).unwrap().strict);
        assert!(prubeh_check(&q(1, 2), &r(1, 1), &r(1, 1)).is_err());
    }

    #[test]
    fn c14_examples() {
        let (v, w) = hj_c14_decision(&q(3, 10), &q(3, 10), Field::Real).unwrap();
        assert!(v.is_false());
        assert!(verify_c14(&q(3, 10), &q(3, 10), &w.unwrap()));
        let (v, w) = hj_c14_decision(&q(1, 4), &q(1, 2), Field::Real).unwrap();
        assert!(v.is_true() && w.is_none());
        let (v, _) = hj_c14_decision(&q(1, 4), &q(1, 2), Field::Complex).unwrap();
        assert!(v.is_true());
        assert!(matches!(v.witness, Some(Witness::Theorem { .. })));
        let (v, _) = hj_c14_decision(&Scalar::new(rat(1, 5), rat(1, 5)), &q(1, 2), Field::Complex).unwrap();
        assert_eq!(v.status, crate::verdict::Status::Unknown);
    }

    #[test]
    fn pythagorean_units_are_unimodular() {
        for (n, d) in [(0, 1), (1, 2), (-7, 3), (20, 1)] {
            assert!(pythagorean_unit(&rat(n, d)).is_unimodular());
        }
    }
}
