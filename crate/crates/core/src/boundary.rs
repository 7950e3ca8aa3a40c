//! Dual-ball geometry: dual norms, the Choquet boundary, injectivity of θ,
//! peak functions and the state space.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome, Relation, Sense, VarKind};
use crate::phases::{PhaseGrid, PhaseSet};
use crate::polytope::{self, AtomicSolution, VRep};
use crate::scalar::{Field, Rational, Scalar};
use crate::settings::Settings;
use crate::space::{FunctionSpace, Functional};
use crate::verdict::{Status, Verdict, Witness};

const ENCLOSURE_TARGET_BITS: usize = 20;

/// Per-level record of a complex dual-norm refinement.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnclosureLevel {
    pub resolution: usize,
    /// `[m_N · c_N, m_N]` for this grid alone.
    pub raw: Interval,
    /// Running intersection with all coarser levels.
    pub refined: Interval,
}

#[derive(Clone, Debug)]
pub struct DualNorm {
    /// Exact value as a point interval in real mode; certified enclosure otherwise.
    pub enclosure: Interval,
    /// Basis coefficients of a function with `‖f‖∞ ≤ 1` (real) attaining the norm.
    pub norming: Option<Vec<Scalar>>,
    pub levels: Vec<EnclosureLevel>,
}

impl DualNorm {
    pub fn exact(&self) -> Option<&Rational> {
        self.enclosure.is_point().then(|| self.enclosure.lo())
    }
}

fn all_real(space: &FunctionSpace, phi: &Functional) -> bool {
    space.has_real_basis() && phi.coeffs.iter().all(Scalar::is_real)
}

/// Minimal total variation of a measure representing `φ`.
pub fn dual_norm(space: &FunctionSpace, phi: &Functional, settings: &Settings) -> Result<DualNorm> {
    if phi.coeffs.len() != space.m() {
        return Err(Error::DimensionMismatch { expected: space.m(), found: phi.coeffs.len() });
    }
    if phi.is_zero() {
        return Ok(DualNorm { enclosure: Interval::point(Rational::zero()), norming: None, levels: Vec::new() });
    }
    let gens = space.eval_matrix();
    if all_real(space, phi) {
        let sol = polytope::atomic_norm(&phi.coeffs, gens, &PhaseSet::Real, None)
            .expect("rows of a basis matrix span the dual");
        return Ok(DualNorm { enclosure: Interval::point(sol.value), norming: Some(sol.dual), levels: Vec::new() });
    }
    let mut n = settings.phase_grid;
    let mut levels: Vec<EnclosureLevel> = Vec::new();
    let target = Rational::new(1.into(), num_bigint::BigInt::one() << ENCLOSURE_TARGET_BITS);
    loop {
        let grid = PhaseGrid::new(n)?;
        let factor = grid.factor().clone();
        let sol = polytope::atomic_norm(&phi.coeffs, gens, &PhaseSet::Grid(grid), None)
            .expect("rows of a basis matrix span the dual");
        let raw = Interval::new(&sol.value * &factor, sol.value.clone());
        let refined = match levels.last() {
            Some(prev) => prev.refined.intersect(&raw).expect("certified enclosures overlap"),
            None => raw.clone(),
        };
        levels.push(EnclosureLevel { resolution: n, raw, refined: refined.clone() });
        if refined.width() < target || n >= settings.max_grid {
            break;
        }
        n *= 2;
    }
    let enclosure = levels.last().expect("at least one level").refined.clone();
    Ok(DualNorm { enclosure, norming: None, levels })
}

/// Exact real dual norm with its optimal decomposition.
pub fn real_atomic(space: &FunctionSpace, phi: &Functional) -> AtomicSolution {
    polytope::atomic_norm(&phi.coeffs, space.eval_matrix(), &PhaseSet::Real, None)
        .expect("rows of a basis matrix span the dual")
}

// ---------------------------------------------------------------------------
// Choquet boundary.

#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub field: Field,
    /// Per point: `True` = in the boundary, with certificate.
    pub points: Vec<Verdict>,
    /// Points with `‖φ(x)‖ = 1` (real mode only; empty otherwise).
    pub norm_one: Vec<usize>,
}

impl BoundaryReport {
    pub fn boundary(&self) -> Vec<usize> {
        self.indices(Status::True)
    }

    pub fn non_boundary(&self) -> Vec<usize> {
        self.indices(Status::False)
    }

    pub fn unknown(&self) -> Vec<usize> {
        self.indices(Status::Unknown)
    }

    pub fn is_decided(&self) -> bool {
        self.points.iter().all(|v| v.status.is_decided())
    }

    pub fn contains(&self, x: usize) -> Status {
        self.points[x].status
    }

    fn indices(&self, s: Status) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.points[i].status == s).collect()
    }

    /// Decided boundary points, or `UndecidedBoundary`.
    pub fn decided_boundary(&self) -> Result<Vec<usize>> {
        if self.is_decided() {
            Ok(self.boundary())
        } else {
            Err(Error::UndecidedBoundary)
        }
    }
}

/// Extremality verdict for a single point (`True` = `φ(x)` is extreme).
pub fn point_extremality(space: &FunctionSpace, x: usize, settings: &Settings) -> Result<Verdict> {
    let row = space.row(x);
    if row.iter().all(Scalar::is_zero) {
        return Ok(Verdict::no(Witness::ZeroRow { point: space.label(x).to_string() }, "zero-row"));
    }
    let gens = space.eval_matrix();
    if space.has_real_basis() {
        // Real data: taking real parts of a complex combination gives a real one, so the
        // real test is exact in both fields.
        let v = polytope::in_absolute_hull_excluding(row, gens, &PhaseSet::Real, Some(row));
        return Ok(match v.status {
            Status::True => flip(v, "hull-membership"),
            _ => flip(v, "separating-hyperplane"),
        });
    }
    let grid = settings.grid()?;
    let v = polytope::in_absolute_hull_excluding(row, gens, &PhaseSet::Grid(grid), Some(row));
    if v.is_true() {
        return Ok(flip(v, "phase-grid-hull"));
    }
    if let Some(f) = extbod_witness(space, x, x, &settings.margin, settings)? {
        let label = space.label(x).to_string();
        return Ok(Verdict::yes(Witness::Peak { a: label.clone(), b: label, f }, "peak-function"));
    }
    Ok(Verdict::unknown("phase-grid-hull", format!("undecided at phase grid {}", settings.phase_grid)))
}

fn flip(v: Verdict, method: &str) -> Verdict {
    let status = match v.status {
        Status::True => Status::False,
        Status::False => Status::True,
        Status::Unknown => Status::Unknown,
    };
    Verdict { status, method: method.to_string(), ..v }
}

pub fn choquet_boundary(space: &FunctionSpace, settings: &Settings) -> Result<BoundaryReport> {
    let mut points = Vec::with_capacity(space.n());
    for x in 0..space.n() {
        points.push(point_extremality(space, x, settings)?);
    }
    let mut norm_one = Vec::new();
    if space.field() == Field::Real {
        for x in 0..space.n() {
            let dn = real_atomic(space, &space.evaluation_functional(x));
            if dn.value.is_one() {
                norm_one.push(x);
            }
        }
    }
    Ok(BoundaryReport { field: space.field(), points, norm_one })
}

/// Re-checks one point certificate exactly.
pub fn verify_point_certificate(space: &FunctionSpace, x: usize, v: &Verdict, settings: &Settings) -> bool {
    let row = space.row(x);
    let gens = space.eval_matrix();
    match (&v.status, &v.witness) {
        (Status::False, Some(Witness::ZeroRow { point })) => {
            point == space.label(x) && row.iter().all(Scalar::is_zero)
        }
        (Status::False, Some(Witness::Combination { .. })) => {
            let as_hull = Verdict { status: Status::True, ..v.clone() };
            let phases = match space.has_real_basis() {
                true => PhaseSet::Real,
                false => match settings.grid() {
                    Ok(g) => PhaseSet::Grid(g),
                    Err(_) => return false,
                },
            };
            polytope::verify_hull_verdict_excluding(row, gens, &phases, Some(row), &as_hull)
        }
        (Status::True, Some(Witness::Hyperplane { .. })) => {
            let as_hull = Verdict { status: Status::False, ..v.clone() };
            space.has_real_basis()
                && polytope::verify_hull_verdict_excluding(row, gens, &PhaseSet::Real, Some(row), &as_hull)
        }
        (Status::True, Some(Witness::Peak { a, b, f })) => {
            a == space.label(x) && b == space.label(x) && verify_peak(space, x, x, f, &settings.margin)
        }
        (Status::Unknown, _) => true,
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// θ-injectivity and extreme-point classes.

/// `α` with `b = α·a`, if the rows are proportional (with `a ≠ 0`).
pub fn proportionality(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    let j = a.iter().position(|v| !v.is_zero())?;
    let alpha = &b[j] / &a[j];
    a.iter().zip(b).all(|(x, y)| &(x * &alpha) == y).then_some(alpha)
}

/// Condition (I) when `restrict_to_boundary`, else injectivity of θ on all of `S × K`.
pub fn theta_injective(space: &FunctionSpace, restrict: Option<&BoundaryReport>) -> Verdict {
    let domain: Vec<usize> = match restrict {
        Some(r) => r.boundary(),
        None => (0..space.n()).collect(),
    };
    if restrict.is_none() {
        if let Some(&x) = domain.iter().find(|&&x| space.row(x).iter().all(Scalar::is_zero)) {
            let l = space.label(x).to_string();
            return Verdict::no(Witness::ThetaPair { x: l.clone(), y: l, alpha: Scalar::from_int(-1) }, "zero-row");
        }
    }
    for (i, &x) in domain.iter().enumerate() {
        for &y in &domain[i + 1..] {
            if let Some(alpha) = proportionality(space.row(x), space.row(y)) {
                if alpha.is_unimodular() {
                    let w = Witness::ThetaPair { x: space.label(x).to_string(), y: space.label(y).to_string(), alpha };
                    return Verdict::no(w, "proportionality-scan");
                }
            }
        }
    }
    if let Some(r) = restrict {
        if !r.is_decided() {
            return Verdict::unknown("proportionality-scan", "boundary not fully decided");
        }
    }
    Verdict::yes(Witness::Recompute, "proportionality-scan")
}

pub fn verify_theta_pair(space: &FunctionSpace, w: &Witness) -> bool {
    let Witness::ThetaPair { x, y, alpha } = w else { return false };
    let (Ok(xi), Ok(yi)) = (space.index_of(x), space.index_of(y)) else { return false };
    if !alpha.is_unimodular() {
        return false;
    }
    let scaled: Vec<Scalar> = space.row(xi).iter().map(|v| v * alpha).collect();
    if xi == yi {
        return !alpha.is_one() && space.row(xi).iter().all(Scalar::is_zero);
    }
    scaled.as_slice() == space.row(yi)
}

/// One representative point per phase class `S·φ(x)`, `x` in the boundary.
pub fn extreme_points_dual(space: &FunctionSpace, report: &BoundaryReport) -> Result<Vec<usize>> {
    let boundary = report.decided_boundary()?;
    let mut reps: Vec<usize> = Vec::new();
    for x in boundary {
        let dup = reps.iter().any(|&r| proportionality(space.row(r), space.row(x)).is_some_and(|a| a.is_unimodular()));
        if !dup {
            reps.push(x);
        }
    }
    Ok(reps)
}

// ---------------------------------------------------------------------------
// Peak functions.

fn check_pair(space: &FunctionSpace, a: usize, b: usize) -> Result<()> {
    let others = (0..space.n()).filter(|&x| x != a && x != b).count();
    if others == 0 {
        return Err(Error::BadParam("peak functions need a point outside {a, b}".into()));
    }
    Ok(())
}

/// `f ∈ H` with `f(a) = 1`, `|f(b)| = 1` and `|f(x)| ≤ 1 − margin` elsewhere, if one is found.
pub fn extbod_witness(
    space: &FunctionSpace,
    a: usize,
    b: usize,
    margin: &Rational,
    settings: &Settings,
) -> Result<Option<Vec<Scalar>>> {
    check_pair(space, a, b)?;
    if space.field() == Field::Real {
        return Ok(real_peak(space, a, b, margin));
    }
    let grid = PhaseGrid::new(settings.phase_grid.min(16).max(4))?;
    let targets: Vec<Scalar> = if a == b { vec![Scalar::one()] } else { grid.points().to_vec() };
    let free: Vec<usize> = (0..space.n()).filter(|&x| x != a && x != b).collect();
    for t in targets {
        let mut fixed = vec![(a, Scalar::one())];
        if a != b {
            fixed.push((b, t));
        }
        if let Some((c, _)) = polygon_peak(space, &fixed, &free, &PhaseGrid::new(settings.phase_grid)?) {
            if verify_peak(space, a, b, &c, margin) {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

fn real_peak(space: &FunctionSpace, a: usize, b: usize, margin: &Rational) -> Option<Vec<Scalar>> {
    let m = space.m();
    let bound = Rational::one() - margin;
    let signs: Vec<i64> = if a == b { vec![1] } else { vec![1, -1] };
    for s in signs {
        let mut lp = LinearProgram::feasibility(vec![VarKind::Free; m]);
        let re = |x: usize| -> Vec<Rational> { space.row(x).iter().map(|v| v.re().clone()).collect() };
        lp.add(re(a), Relation::Eq, Rational::one());
        if a != b {
            lp.add(re(b), Relation::Eq, Rational::from_integer(s.into()));
        }
        for x in (0..space.n()).filter(|&x| x != a && x != b) {
            lp.add(re(x), Relation::Le, bound.clone());
            lp.add(re(x), Relation::Ge, -bound.clone());
        }
        if let LpOutcome::Optimal(sol) = lp.solve() {
            return Some(sol.x.into_iter().map(Scalar::real).collect());
        }
    }
    None
}

pub fn verify_peak(space: &FunctionSpace, a: usize, b: usize, f: &[Scalar], margin: &Rational) -> bool {
    let Ok(vals) = space.function_values(f) else { return false };
    let bound = Rational::one() - margin;
    let bound2 = &bound * &bound;
    vals[a].is_one()
        && vals[b].is_unimodular()
        && (0..space.n()).filter(|&x| x != a && x != b).all(|x| vals[x].norm_sqr() <= bound2)
        && (space.field() == Field::Complex || f.iter().all(Scalar::is_real))
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Minimizes the polygon peak `ρ = max Re(ū f(x))` over `free` points, `u` in the grid,
/// subject to `f(x) = t` at the fixed points. Returns the coefficients and `ρ`.
///
/// Since `|z| ≤ ρ / c` whenever `Re(ū z) ≤ ρ` for every grid phase `u` (with `c` the grid
/// factor) and `Re(ū z) ≤ |z|`, the optimum brackets the true minimal peak.
pub(crate) fn polygon_peak(
    space: &FunctionSpace,
    fixed: &[(usize, Scalar)],
    free: &[usize],
    grid: &PhaseGrid,
) -> Option<(Vec<Scalar>, Rational)> {
    let m = space.m();
    let nv = 2 * m + 1;
    let mut vars = vec![VarKind::Free; 2 * m];
    vars.push(VarKind::NonNeg);
    let mut objective = vec![Rational::zero(); nv];
    objective[2 * m] = Rational::one();
    // Re(w · c) = w_re c_re − w_im c_im and Im(w · c) = w_im c_re + w_re c_im.
    let re_row = |coef: &[Scalar]| -> Vec<Rational> {
        let mut r: Vec<Rational> = coef.iter().map(|w| w.re().clone()).collect();
        r.extend(coef.iter().map(|w| -w.im().clone()));
        r.push(Rational::zero());
        r
    };
    let im_row = |coef: &[Scalar]| -> Vec<Rational> {
        let mut r: Vec<Rational> = coef.iter().map(|w| w.im().clone()).collect();
        r.extend(coef.iter().map(|w| w.re().clone()));
        r.push(Rational::zero());
        r
    };
    let phases = grid.points();
    let cut = |x: usize, u: &Scalar| -> Vec<Rational> {
        let ub = u.conj();
        let coef: Vec<Scalar> = space.row(x).iter().map(|e| &ub * e).collect();
        let mut r = re_row(&coef);
        r[2 * m] = -Rational::one();
        r
    };
    let mut cuts: Vec<(usize, usize)> = Vec::new();
    for &x in free {
        for (k, u) in phases.iter().enumerate() {
            if u.re().is_zero() || u.im().is_zero() {
                cuts.push((x, k));
            }
        }
    }
    loop {
        let mut lp = LinearProgram::new(vars.clone(), Sense::Minimize, objective.clone());
        for (x, t) in fixed {
            lp.add(re_row(space.row(*x)), Relation::Eq, t.re().clone());
            lp.add(im_row(space.row(*x)), Relation::Eq, t.im().clone());
        }
        for &(x, k) in &cuts {
            lp.add(cut(x, &phases[k]), Relation::Le, Rational::zero());
        }
        let sol = match lp.solve() {
            LpOutcome::Optimal(s) => s,
            _ => return None,
        };
        let coeffs: Vec<Scalar> = (0..m).map(|k| Scalar::new(sol.x[k].clone(), sol.x[m + k].clone())).collect();
        let rho = sol.x[2 * m].clone();
        let vals = space.function_values(&coeffs).expect("coefficient length matches");
        let mut added = false;
        for &x in free {
            let z = &vals[x];
            if z.norm_sqr() <= &rho * &rho {
                continue;
            }
            let (zr, zi) = (to_f64(z.re()), to_f64(z.im()));
            let rf = to_f64(&rho);
            let mut best: Option<(usize, Rational)> = None;
            for (k, u) in phases.iter().enumerate() {
                let approx = to_f64(u.re()) * zr + to_f64(u.im()) * zi;
                if approx.is_finite() && approx < rf - 1e-9 * (1.0 + rf.abs()) {
                    continue;
                }
                let val = u.re() * z.re() + u.im() * z.im();
                if val > rho && best.as_ref().map_or(true, |(_, b)| val > *b) {
                    best = Some((k, val));
                }
            }
            if let Some((k, _)) = best {
                if !cuts.contains(&(x, k)) {
                    cuts.push((x, k));
                    added = true;
                }
            }
        }
        if !added {
            return Some((coeffs, rho));
        }
    }
}

// ---------------------------------------------------------------------------
// State space.

#[derive(Clone, Debug)]
pub struct StateSpace {
    /// Vertices of `S(H)` as rational vectors in basis coordinates.
    pub vertices: VRep,
    /// Boundary points whose evaluation functionals are the vertices.
    pub points: Vec<usize>,
    pub affine_dim: usize,
    pub is_simplex: Verdict,
}

/// The face `{v ∈ B_{H*} : v(1) = 1}` and whether it is a simplex.
pub fn state_space(space: &FunctionSpace, report: &BoundaryReport) -> Result<StateSpace> {
    if !space.contains_constants() {
        return Err(Error::NoConstants);
    }
    if !space.has_real_basis() {
        return Err(Error::ComplexModeUnsupported("state space needs a real basis".into()));
    }
    let ones = space.constants_coeffs().ok_or(Error::NoConstants)?;
    let boundary = report.decided_boundary()?;
    let mut points = Vec::new();
    let mut verts: Vec<Vec<Rational>> = Vec::new();
    for &x in &boundary {
        for s in [Scalar::one(), Scalar::from_int(-1)] {
            let v: Vec<Scalar> = space.row(x).iter().map(|e| e * &s).collect();
            if linalg::dot(&v, &ones).is_one() {
                points.push(x);
                verts.push(v.iter().map(|e| e.re().clone()).collect());
            }
        }
    }
    let affine_dim = if verts.is_empty() {
        0
    } else {
        let diffs: Vec<Vec<Rational>> =
            verts.iter().map(|v| v.iter().zip(&verts[0]).map(|(a, b)| a - b).collect()).collect();
        linalg::rank(&diffs, space.m())
    };
    let simplex = !verts.is_empty() && verts.len() == affine_dim + 1;
    let labels: Vec<String> = points.iter().map(|&x| space.label(x).to_string()).collect();
    let witness = Witness::StateSpace { vertices: labels, affine_dim };
    let is_simplex = Verdict::new(Status::from_bool(simplex), Some(witness), "vertex-count");
    Ok(StateSpace { vertices: VRep::new(space.m(), verts), points, affine_dim, is_simplex })
}

/// Whether `f` lies in the real unit ball and attains `value = φ(f)`.
pub fn verify_norming(space: &FunctionSpace, phi: &Functional, value: &Rational, f: &[Scalar]) -> bool {
    let Ok(vals) = space.function_values(f) else { return false };
    let bounded = vals.iter().all(|v| v.is_real() && v.re().abs() <= Rational::one());
    let attained = phi.apply(f);
    bounded && attained.is_real() && attained.re() == value && !value.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{self, HjParams};
    use crate::scalar::rat;

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn full_space_norms_and_boundary() {
        let sp = gallery::make_full(3);
        for x in 0..3 {
            let d = dual_norm(&sp, &sp.evaluation_functional(x), &s()).unwrap();
            assert_eq!(d.exact(), Some(&rat(1, 1)));
        }
        assert_eq!(choquet_boundary(&sp, &s()).unwrap().boundary(), vec![0, 1, 2]);
        assert_eq!(extreme_points_dual(&sp, &choquet_boundary(&sp, &s()).unwrap()).unwrap().len(), 3);
        let f = extbod_witness(&sp, 1, 1, &rat(1, 1000), &s()).unwrap().unwrap();
        assert!(verify_peak(&sp, 1, 1, &f, &rat(1, 1000)));
    }

    #[test]
    fn zero_functional_has_norm_zero() {
        let sp = gallery::make_full(2);
        let d = dual_norm(&sp, &Functional::zero(2), &s()).unwrap();
        assert_eq!(d.exact(), Some(&rat(0, 1)));
    }

    #[test]
    fn hj_norm_at_center() {
        let sp = gallery::make_hj(&HjParams::new(1, 2, Scalar::from_frac(1, 4), Scalar::from_frac(1, 2))).unwrap();
        let x = sp.index_of("(0,0)").unwrap();
        let d = dual_norm(&sp, &sp.evaluation_functional(x), &s()).unwrap();
        assert_eq!(d.exact(), Some(&rat(3, 4)));
        let f = d.norming.unwrap();
        assert!(verify_norming(&sp, &sp.evaluation_functional(x), &rat(3, 4), &f));
    }

    #[test]
    fn interval_spaces() {
        let sp = gallery::make_interval_space(1, 4, &Scalar::zero()).unwrap();
        let r = choquet_boundary(&sp, &s()).unwrap();
        assert_eq!(r.non_boundary(), vec![0]);
        assert!(matches!(r.points[0].witness, Some(Witness::ZeroRow { .. })));
        assert_eq!(extbod_witness(&sp, 0, 0, &rat(1, 1000), &s()).unwrap(), None);
        let sp3 = gallery::make_interval_space(3, 4, &Scalar::from_frac(1, 2)).unwrap();
        let one = sp3.index_of("1").unwrap();
        let d = dual_norm(&sp3, &sp3.evaluation_functional(one), &s()).unwrap();
        assert_eq!(d.exact(), Some(&rat(1, 2)));
        assert!(theta_injective(&sp3, Some(&choquet_boundary(&sp3, &s()).unwrap())).is_true());
        let sp2 = gallery::make_interval_space(2, 4, &Scalar::from_int(-1)).unwrap();
        let r2 = choquet_boundary(&sp2, &s()).unwrap();
        assert_eq!(r2.boundary().len(), 5);
        let v = theta_injective(&sp2, Some(&r2));
        assert!(v.is_false());
        assert!(verify_theta_pair(&sp2, v.witness.as_ref().unwrap()));
    }

    #[test]
    fn certificates_reverify() {
        for sp in [gallery::make_square_affine(), gallery::make_two_point(), gallery::make_balanced_sum(2).unwrap()] {
            let r = choquet_boundary(&sp, &s()).unwrap();
            for x in 0..sp.n() {
                assert!(verify_point_certificate(&sp, x, &r.points[x], &s()), "{} at {}", sp.name(), sp.label(x));
            }
            for &x in &r.boundary() {
                assert!(r.norm_one.contains(&x));
            }
        }
    }

    #[test]
    fn two_point_classes() {
        let sp = gallery::make_two_point();
        let r = choquet_boundary(&sp, &s()).unwrap();
        assert_eq!(extreme_points_dual(&sp, &r).unwrap().len(), 1);
        assert!(theta_injective(&sp, Some(&r)).is_false());
    }

    #[test]
    fn state_spaces() {
        let full = gallery::make_full(3);
        let st = state_space(&full, &choquet_boundary(&full, &s()).unwrap()).unwrap();
        assert!(st.is_simplex.is_true());
        assert_eq!(st.affine_dim, 2);
        let sq = gallery::make_square_affine();
        assert!(state_space(&sq, &choquet_boundary(&sq, &s()).unwrap()).unwrap().is_simplex.is_false());
        let tp = gallery::make_two_point();
        assert_eq!(state_space(&tp, &choquet_boundary(&tp, &s()).unwrap()).unwrap_err(), Error::NoConstants);
    }

    #[test]
    fn complex_enclosure_contains_real_value() {
        // A real space viewed over C has the same dual norm; the enclosure must contain it.
        let sp = gallery::make_hj(&HjParams::new(1, 1, Scalar::from_frac(1, 4), Scalar::from_frac(1, 2))).unwrap();
        let x = sp.index_of("(0,0)").unwrap();
        let phi = sp.evaluation_functional(x).scale(&Scalar::new(rat(3, 5), rat(4, 5)));
        let d = dual_norm(&sp, &phi, &s()).unwrap();
        assert!(d.enclosure.contains(&rat(3, 4)));
        assert!(d.levels.windows(2).all(|w| w[0].refined.contains_interval(&w[1].refined)));
    }
}
