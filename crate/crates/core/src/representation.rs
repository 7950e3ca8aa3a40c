//! Representing measures and the six simpliciality conditions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::boundary::{self, BoundaryReport};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome, Relation, Sense, VarKind};
use crate::phases::PhaseGrid;
use crate::polytope::{self, VRep};
use crate::scalar::{Field, Rational, Scalar};
use crate::settings::Settings;
use crate::space::{FunctionSpace, Functional, Measure};
use crate::verdict::{NonUniquenessWitness, Status, Verdict, Witness};

/// Pattern budget for the circuit search.
pub const PATTERN_CAP: usize = 531_441;
const SUBSET_CAP: usize = 200_000;

fn require_real(space: &FunctionSpace, what: &str) -> Result<()> {
    if space.field() == Field::Real {
        Ok(())
    } else {
        Err(Error::ComplexModeUnsupported(what.to_string()))
    }
}

fn real_parts(v: &[Scalar]) -> Vec<Rational> {
    v.iter().map(|s| s.re().clone()).collect()
}

// ---------------------------------------------------------------------------
// Representing sets.

/// `M_φ(H)`, optionally restricted to the Choquet boundary, as a lifted polytope
/// `{(p, q) ≥ 0 : Eᵀ(p − q) = φ, Σ(p + q) = ‖φ‖}` over the support points.
#[derive(Clone, Debug)]
pub struct RepresentingSet {
    pub phi: Functional,
    pub norm: Rational,
    pub support: Vec<usize>,
    pub boundary_only: bool,
    /// One exact member.
    pub member: Measure,
    /// A function in the unit ball attaining `‖φ‖`.
    pub norming: Vec<Scalar>,
}

impl RepresentingSet {
    fn lp(&self, space: &FunctionSpace, sense: Sense, objective: Vec<Rational>) -> LinearProgram {
        let s = self.support.len();
        let mut lp = LinearProgram::new(vec![VarKind::NonNeg; 2 * s], sense, objective);
        for j in 0..space.m() {
            let mut row: Vec<Rational> = self.support.iter().map(|&x| space.row(x)[j].re().clone()).collect();
            row.extend(self.support.iter().map(|&x| -space.row(x)[j].re().clone()));
            lp.add(row, Relation::Eq, self.phi.coeffs[j].re().clone());
        }
        lp.add(vec![Rational::one(); 2 * s], Relation::Eq, self.norm.clone());
        lp
    }

    fn measure_of(&self, n: usize, x: &[Rational]) -> Measure {
        let s = self.support.len();
        let mut mu = Measure::zero(n);
        for (k, &p) in self.support.iter().enumerate() {
            mu.values[p] = Scalar::real(&x[k] - &x[s + k]);
        }
        mu
    }

    /// A member maximizing `Σ w_x μ(x)`; varying `w` reaches every vertex.
    pub fn extreme_member(&self, space: &FunctionSpace, weights: &[Rational]) -> Option<Measure> {
        let mut obj: Vec<Rational> = self.support.iter().map(|&x| weights[x].clone()).collect();
        obj.extend(self.support.iter().map(|&x| -weights[x].clone()));
        self.lp(space, Sense::Maximize, obj).solve().optimal().map(|sol| self.measure_of(space.n(), &sol.x))
    }

    /// Exact membership test (uses the stored norming function for the norm equality).
    pub fn contains(&self, space: &FunctionSpace, mu: &Measure) -> bool {
        contains_with(space, &self.phi, &self.norm, &self.norming, &self.support, mu)
    }
}

/// `μ ∈ M_φ(H)` supported in `support`, checked against a norming function.
fn contains_with(
    space: &FunctionSpace,
    phi: &Functional,
    norm: &Rational,
    norming: &[Scalar],
    support: &[usize],
    mu: &Measure,
) -> bool {
    if mu.len() != space.n() || !mu.supported_in(support) || &space.functional_of(mu) != phi {
        return false;
    }
    mu.total_variation_exact().is_some_and(|tv| &tv == norm) && norms(space, norming, mu)
}

/// Whether `f` lies in the unit ball and `∫ f dμ = ‖μ‖`.
pub fn norms(space: &FunctionSpace, f: &[Scalar], mu: &Measure) -> bool {
    let Ok(vals) = space.function_values(f) else { return false };
    if mu.len() != vals.len() || !vals.iter().all(|v| v.norm_sqr() <= Rational::one()) {
        return false;
    }
    mu.support().into_iter().all(|x| {
        let p = &vals[x] * &mu.values[x];
        p.is_real() && p.re().is_positive() && vals[x].norm_sqr().is_one()
    })
}

/// `M_φ(H)` (real mode); `boundary` restricts supports to the decided Choquet boundary.
pub fn representing_set(
    space: &FunctionSpace,
    phi: &Functional,
    boundary: Option<&BoundaryReport>,
) -> Result<RepresentingSet> {
    require_real(space, "representing sets are computed in real mode")?;
    if phi.coeffs.len() != space.m() {
        return Err(Error::DimensionMismatch { expected: space.m(), found: phi.coeffs.len() });
    }
    let support = match boundary {
        Some(r) => r.decided_boundary()?,
        None => (0..space.n()).collect(),
    };
    let atomic = boundary::real_atomic(space, phi);
    let mut rs = RepresentingSet {
        phi: phi.clone(),
        norm: atomic.value,
        support,
        boundary_only: boundary.is_some(),
        member: Measure::zero(space.n()),
        norming: atomic.dual,
    };
    let lp = rs.lp(space, Sense::Minimize, vec![Rational::zero(); 2 * rs.support.len()]);
    match lp.solve() {
        LpOutcome::Optimal(sol) => {
            rs.member = rs.measure_of(space.n(), &sol.x);
            Ok(rs)
        }
        _ => Err(Error::InternalInconsistency("no boundary measure represents the functional".into())),
    }
}

#[derive(Clone, Debug)]
pub enum Uniqueness {
    Unique(Measure),
    Multiple(Measure, Measure),
}

/// Decides whether `rs` is a singleton by optimizing each coordinate in both directions.
pub fn unique_member(space: &FunctionSpace, rs: &RepresentingSet) -> Uniqueness {
    let s = rs.support.len();
    for k in 0..s {
        let x = rs.support[k];
        for sense in [Sense::Maximize, Sense::Minimize] {
            let mut obj = vec![Rational::zero(); 2 * s];
            obj[k] = Rational::one();
            obj[s + k] = -Rational::one();
            if let LpOutcome::Optimal(sol) = rs.lp(space, sense, obj).solve() {
                let other = rs.measure_of(space.n(), &sol.x);
                if other.values[x] != rs.member.values[x] {
                    return Uniqueness::Multiple(rs.member.clone(), other);
                }
            }
        }
    }
    Uniqueness::Unique(rs.member.clone())
}

// ---------------------------------------------------------------------------
// Conditions.

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl Condition {
    pub const ALL: [Condition; 6] = [Condition::I, Condition::II, Condition::III, Condition::IV, Condition::V, Condition::VI];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Condition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "I" => Condition::I,
            "II" => Condition::II,
            "III" => Condition::III,
            "IV" => Condition::IV,
            "V" => Condition::V,
            "VI" => Condition::VI,
            other => return Err(Error::BadParam(format!("unknown condition {other}"))),
        })
    }
}

/// Per-point outcome of the simpliciality test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointUniqueness {
    pub point: String,
    pub verdict: Verdict,
    /// The unique boundary measure, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<crate::verdict::MeasureMap>,
}

/// Condition (II): uniqueness of boundary measures in every `M_{φ(x)}(H)`.
pub fn is_simplicial(space: &FunctionSpace, report: &BoundaryReport) -> Result<(Verdict, Vec<PointUniqueness>)> {
    require_real(space, "simpliciality is decided exactly in real mode")?;
    report.decided_boundary()?;
    let mut table = Vec::with_capacity(space.n());
    let mut first_fail: Option<Verdict> = None;
    for x in 0..space.n() {
        let rs = representing_set(space, &space.evaluation_functional(x), Some(report))?;
        let (verdict, delta) = match unique_member(space, &rs) {
            Uniqueness::Unique(mu) => (Verdict::yes(Witness::Recompute, "coordinate-range-lp"), Some(mu.to_map(space))),
            Uniqueness::Multiple(a, b) => {
                let w = Witness::Multiple {
                    point: space.label(x).to_string(),
                    first: a.to_map(space),
                    second: b.to_map(space),
                    norming: rs.norming.clone(),
                };
                (Verdict::no(w, "coordinate-range-lp"), None)
            }
        };
        if verdict.is_false() && first_fail.is_none() {
            first_fail = Some(verdict.clone());
        }
        table.push(PointUniqueness { point: space.label(x).to_string(), verdict, delta });
    }
    let overall = first_fail.unwrap_or_else(|| Verdict::yes(Witness::Recompute, "coordinate-range-lp"));
    Ok((overall, table))
}

/// Checks a `Multiple` witness: two distinct boundary measures in `M_{φ(x)}(H)` normed by one `f`.
pub fn verify_multiple(space: &FunctionSpace, report: &BoundaryReport, w: &Witness) -> bool {
    let Witness::Multiple { point, first, second, norming } = w else { return false };
    let Ok(x) = space.index_of(point) else { return false };
    let (Ok(a), Ok(b)) = (Measure::from_map(space, first), Measure::from_map(space, second)) else { return false };
    let Ok(vals) = space.function_values(norming) else { return false };
    let phi = space.evaluation_functional(x);
    let boundary = report.boundary();
    // f(x) = φ(x)(f) ≤ ‖φ(x)‖ ≤ ‖μ‖ = ∫ f dμ = f(x): the norm equalities follow from alignment.
    let ok = |mu: &Measure| {
        mu.supported_in(&boundary)
            && space.functional_of(mu) == phi
            && norms(space, norming, mu)
            && mu.total_variation_exact().is_some_and(|tv| Scalar::real(tv) == vals[x])
    };
    a != b && ok(&a) && ok(&b)
}

/// Condition (IV) data: a basis of boundary-supported annihilating measures.
pub fn annihilator_boundary_basis(space: &FunctionSpace, report: &BoundaryReport) -> Result<Vec<Measure>> {
    let b = report.decided_boundary()?;
    let mat: Vec<Vec<Scalar>> = (0..space.m()).map(|j| b.iter().map(|&x| space.row(x)[j].clone()).collect()).collect();
    let kernel = linalg::kernel(&mat, b.len());
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut mu = Measure::zero(space.n());
            for (k, &x) in b.iter().enumerate() {
                mu.values[x] = v[k].clone();
            }
            mu
        })
        .collect())
}

pub fn annihilator_verdict(space: &FunctionSpace, report: &BoundaryReport) -> Result<Verdict> {
    let basis = annihilator_boundary_basis(space, report)?;
    let measures = basis.iter().map(|m| m.to_map(space)).collect();
    let status = Status::from_bool(basis.is_empty());
    Ok(Verdict::new(status, Some(Witness::Annihilator { measures }), "boundary-kernel"))
}

pub fn verify_annihilator(space: &FunctionSpace, report: &BoundaryReport, v: &Verdict) -> bool {
    let Some(Witness::Annihilator { measures }) = &v.witness else { return false };
    let boundary = report.boundary();
    let parsed: Option<Vec<Measure>> = measures.iter().map(|m| Measure::from_map(space, m).ok()).collect();
    let Some(parsed) = parsed else { return false };
    let valid = parsed.iter().all(|m| !m.is_zero() && m.supported_in(&boundary) && space.annihilates(m));
    match v.status {
        Status::False => valid && !parsed.is_empty(),
        Status::True => annihilator_boundary_basis(space, report).is_ok_and(|b| b.is_empty()),
        Status::Unknown => true,
    }
}

// ---------------------------------------------------------------------------
// Functional simpliciality by circuit enumeration.
//
// (III) fails iff some nonzero boundary annihilator ν and some f in the unit ball have
// |f| = 1 on supp ν with f·ν of constant phase class per point. Shrinking ν to a circuit
// (minimal support) only makes this easier, so circuits with sign patterns suffice.

struct Circuit {
    support: Vec<usize>,
    /// Kernel vector on `support`, first entry 1.
    nu: Vec<Scalar>,
}

fn circuits(space: &FunctionSpace, basis: &[Measure]) -> Option<Vec<Circuit>> {
    let n = space.n();
    let universe: Vec<usize> = (0..n).filter(|&x| basis.iter().any(|m| !m.values[x].is_zero())).collect();
    let max_size = (space.m() + 1).min(universe.len());
    let mut found: Vec<Circuit> = Vec::new();
    let mut tested = 0usize;
    let col = |x: usize| space.row(x).to_vec();
    for size in 1..=max_size {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let subset: Vec<usize> = idx.iter().map(|&i| universe[i]).collect();
            let contains_found = found.iter().any(|c| c.support.iter().all(|x| subset.contains(x)));
            if !contains_found {
                tested += 1;
                if tested > SUBSET_CAP {
                    return None;
                }
                let mat: Vec<Vec<Scalar>> =
                    (0..space.m()).map(|j| subset.iter().map(|&x| col(x)[j].clone()).collect()).collect();
                let ker = linalg::kernel(&mat, size);
                if ker.len() == 1 && ker[0].iter().all(|v| !v.is_zero()) {
                    let first = ker[0][0].clone();
                    let nu = ker[0].iter().map(|v| v / &first).collect();
                    found.push(Circuit { support: subset, nu });
                }
            }
            // Next combination.
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < universe.len() - size + i {
                    idx[i] += 1;
                    for k in i + 1..size {
                        idx[k] = idx[k - 1] + 1;
                    }
                    i = usize::MAX;
                    break;
                }
            }
            if i != usize::MAX {
                break;
            }
        }
    }
    Some(found)
}

enum PatternOutcome {
    Witness(Vec<Scalar>),
    Infeasible,
    Undecided,
}

/// Looks for `f` in the unit ball with `f = targets` on the circuit.
fn pattern_search(space: &FunctionSpace, fixed: &[(usize, Scalar)], grid: &PhaseGrid) -> PatternOutcome {
    let free: Vec<usize> = (0..space.n()).filter(|x| !fixed.iter().any(|(y, _)| y == x)).collect();
    if space.field() == Field::Real {
        let mut lp = LinearProgram::feasibility(vec![VarKind::Free; space.m()]);
        for (x, t) in fixed {
            lp.add(real_parts(space.row(*x)), Relation::Eq, t.re().clone());
        }
        for &y in &free {
            lp.add(real_parts(space.row(y)), Relation::Le, Rational::one());
            lp.add(real_parts(space.row(y)), Relation::Ge, -Rational::one());
        }
        return match lp.solve() {
            LpOutcome::Optimal(sol) => PatternOutcome::Witness(sol.x.into_iter().map(Scalar::real).collect()),
            _ => PatternOutcome::Infeasible,
        };
    }
    match boundary::polygon_peak(space, fixed, &free, grid) {
        None => PatternOutcome::Infeasible,
        Some((_, rho)) if rho > Rational::one() => PatternOutcome::Infeasible,
        Some((c, _)) => {
            let vals = space.function_values(&c).expect("length matches");
            if free.iter().all(|&y| vals[y].norm_sqr() <= Rational::one()) {
                PatternOutcome::Witness(c)
            } else {
                PatternOutcome::Undecided
            }
        }
    }
}

/// Condition (III).
pub fn is_functionally_simplicial(
    space: &FunctionSpace,
    report: &BoundaryReport,
    settings: &Settings,
) -> Result<Verdict> {
    let basis = annihilator_boundary_basis(space, report)?;
    if basis.is_empty() {
        return Ok(Verdict::yes(Witness::Recompute, "trivial-annihilator"));
    }
    let Some(circs) = circuits(space, &basis) else {
        return Ok(Verdict::unknown("circuit-sign-patterns", "circuit enumeration budget exceeded"));
    };
    let patterns: usize = circs.iter().map(|c| 1usize << (c.support.len() - 1).min(40)).sum();
    if patterns > PATTERN_CAP {
        return Ok(Verdict::unknown("circuit-sign-patterns", format!("{patterns} sign patterns exceed the cap")));
    }
    let grid = settings.grid()?;
    let mut undecided = false;
    for c in &circs {
        // Unit targets conj(ν_x)/|ν_x|; needs rational moduli.
        let units: Option<Vec<Scalar>> =
            c.nu.iter().map(|v| v.modulus_exact().map(|r| v.conj().scale(&r.recip()))).collect();
        let Some(units) = units else {
            undecided = true;
            continue;
        };
        let k = c.support.len();
        for mask in 0..(1u64 << (k - 1)) {
            let signs: Vec<Scalar> = (0..k)
                .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { Scalar::from_int(-1) } else { Scalar::one() })
                .collect();
            let fixed: Vec<(usize, Scalar)> =
                c.support.iter().zip(&units).zip(&signs).map(|((&x, u), s)| (x, u * s)).collect();
            match pattern_search(space, &fixed, &grid) {
                PatternOutcome::Witness(f) => {
                    let w = nonuniqueness_from(space, c, &signs, f);
                    return Ok(Verdict::no(Witness::NonUniqueness(w), "circuit-sign-patterns"));
                }
                PatternOutcome::Undecided => undecided = true,
                PatternOutcome::Infeasible => {}
            }
        }
    }
    if undecided {
        Ok(Verdict::unknown("circuit-sign-patterns", format!("undecided at phase grid {}", settings.phase_grid)))
    } else {
        Ok(Verdict::yes(Witness::Recompute, "circuit-sign-patterns"))
    }
}

fn nonuniqueness_from(space: &FunctionSpace, c: &Circuit, signs: &[Scalar], f: Vec<Scalar>) -> NonUniquenessWitness {
    let mut nu = Measure::zero(space.n());
    for (k, &x) in c.support.iter().enumerate() {
        nu.values[x] = c.nu[k].clone();
    }
    if let Some(tv) = nu.total_variation_exact() {
        nu = nu.scale(&Scalar::real(tv.recip()));
    }
    // μ takes the part of ν where the sign is negative, flipped.
    let mut mu = Measure::zero(space.n());
    for (k, &x) in c.support.iter().enumerate() {
        if !signs[k].is_one() {
            mu.values[x] = -&nu.values[x];
        }
    }
    let phi = space.functional_of(&mu);
    NonUniquenessWitness { mu: mu.to_map(space), nu: nu.to_map(space), f, phi }
}

/// Exact check of every witness invariant.
pub fn verify_nonuniqueness_witness(space: &FunctionSpace, report: &BoundaryReport, w: &NonUniquenessWitness) -> bool {
    let (Ok(mu), Ok(nu)) = (Measure::from_map(space, &w.mu), Measure::from_map(space, &w.nu)) else { return false };
    let second = mu.add(&nu);
    let boundary = report.boundary();
    !nu.is_zero()
        && space.annihilates(&nu)
        && mu.supported_in(&boundary)
        && second.supported_in(&boundary)
        && space.functional_of(&mu) == w.phi
        && norms(space, &w.f, &mu)
        && norms(space, &w.f, &second)
}

// ---------------------------------------------------------------------------
// Dual-ball shape: (V) and (VI).

/// `±` boundary rows as real points.
fn dual_ball_vertices(space: &FunctionSpace, report: &BoundaryReport) -> Result<VRep> {
    let reps = boundary::extreme_points_dual(space, report)?;
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    for x in reps {
        let v = real_parts(space.row(x));
        let neg: Vec<Rational> = v.iter().map(|a| -a.clone()).collect();
        pts.push(v);
        pts.push(neg);
    }
    Ok(VRep::new(space.m(), pts))
}

/// Condition (V): every facet of the dual ball is a simplex.
pub fn is_simplexoid(space: &FunctionSpace, report: &BoundaryReport) -> Result<Verdict> {
    require_real(space, "facet enumeration of the dual ball needs real mode")?;
    let ball = dual_ball_vertices(space, report)?;
    for facet in polytope::facets_with_vertex_counts(&ball) {
        if !facet.is_simplex() {
            let w = Witness::Facet {
                normal: facet.normal.iter().cloned().map(Scalar::real).collect(),
                offset: facet.offset.clone(),
                vertices: facet.incident.iter().map(|&i| ball.points[i].iter().cloned().map(Scalar::real).collect()).collect(),
                dim: facet.dim,
            };
            return Ok(Verdict::no(w, "facet-enumeration"));
        }
    }
    Ok(Verdict::yes(Witness::Recompute, "facet-enumeration"))
}

/// Checks a non-simplex facet: a supporting hyperplane of the dual ball meeting more than
/// `dim + 1` distinct extreme points, whose affine hull has dimension `dim`.
pub fn verify_facet(space: &FunctionSpace, w: &Witness) -> bool {
    let Witness::Facet { normal, offset, vertices, dim } = w else { return false };
    if normal.len() != space.m() || !space.has_real_basis() || vertices.len() <= dim + 1 {
        return false;
    }
    let gens = space.eval_matrix();
    let offset_s = Scalar::real(offset.clone());
    // Supporting: |normal · row_x| ≤ offset for every point.
    let supporting = gens.iter().all(|r| {
        let v = linalg::dot(normal, r);
        v.is_real() && v.re().abs() <= *offset
    });
    let on_face = vertices.iter().all(|v| v.len() == space.m() && linalg::dot(normal, v) == offset_s);
    let mut distinct = vertices.clone();
    distinct.sort_by_key(|v| format!("{v:?}"));
    distinct.dedup();
    let extreme = vertices.iter().all(|v| {
        let is_row = gens.iter().any(|r| r == v || r.iter().zip(v).all(|(a, b)| a == &-b));
        is_row
            && polytope::in_absolute_hull_excluding(v, gens, &crate::phases::PhaseSet::Real, Some(v)).is_false()
    });
    let diffs: Vec<Vec<Scalar>> =
        vertices.iter().map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect()).collect();
    supporting
        && on_face
        && distinct.len() == vertices.len()
        && extreme
        && linalg::rank(&diffs, space.m()) == *dim
        && !offset.is_zero()
}

/// Condition (VI): the dual ball is a cross-polytope.
pub fn is_l1_predual(space: &FunctionSpace, report: &BoundaryReport) -> Result<Verdict> {
    require_real(space, "cross-polytope test needs real mode")?;
    let reps = boundary::extreme_points_dual(space, report)?;
    let rows: Vec<Vec<Scalar>> = reps.iter().map(|&x| space.row(x).to_vec()).collect();
    let rank = linalg::rank(&rows, space.m());
    let ok = reps.len() == space.m() && rank == space.m();
    let w = Witness::CrossPolytope {
        classes: reps.iter().map(|&x| space.label(x).to_string()).collect(),
        rank,
        m: space.m(),
    };
    Ok(Verdict::new(Status::from_bool(ok), Some(w), "cross-polytope"))
}

// ---------------------------------------------------------------------------
// A_c(H).

/// Affine hull of `M_φ(H)`: one member and a basis of its direction space.
pub fn representing_affine_hull(space: &FunctionSpace, phi: &Functional) -> Result<(Measure, Vec<Measure>)> {
    let rs = representing_set(space, phi, None)?;
    let n = space.n();
    let s = rs.support.len();
    let base: Vec<Rational> = real_parts(&rs.member.values);
    let mut dirs: Vec<Vec<Rational>> = Vec::new();
    let mut eqs: Vec<Vec<Rational>> = Vec::new();
    while dirs.len() + eqs.len() < n {
        let complement = linalg::kernel(&dirs, n);
        let w = complement
            .into_iter()
            .find(|w| !linalg::in_row_span(&eqs, w, n))
            .expect("complement of the found directions is not exhausted");
        let w_base = linalg::dot(&w, &base);
        let mut moved = None;
        for sense in [Sense::Maximize, Sense::Minimize] {
            let mut obj: Vec<Rational> = w.clone();
            obj.extend(w.iter().map(|a| -a.clone()));
            if let LpOutcome::Optimal(sol) = rs.lp(space, sense, obj).solve() {
                if sol.value != w_base {
                    moved = Some(sol.x);
                    break;
                }
            }
        }
        match moved {
            Some(x) => {
                let mu = rs.measure_of(n, &x[..2 * s]);
                dirs.push(real_parts(&mu.values).iter().zip(&base).map(|(a, b)| a - b).collect());
            }
            None => eqs.push(w),
        }
    }
    let dir_measures = dirs.into_iter().map(|d| Measure::from_values(d.into_iter().map(Scalar::real).collect())).collect();
    Ok((rs.member, dir_measures))
}

/// `A_c(H)` on the same points.
pub fn compute_ac(space: &FunctionSpace) -> Result<FunctionSpace> {
    require_real(space, "A_c is computed in real mode")?;
    let n = space.n();
    let mut constraints: Vec<Vec<Rational>> = Vec::new();
    for x in 0..n {
        let (member, dirs) = representing_affine_hull(space, &space.evaluation_functional(x))?;
        // f(x) − ∫ f dμ = 0 and ∫ f dd = 0 for every direction d.
        let mut row: Vec<Rational> = real_parts(&member.values).iter().map(|a| -a.clone()).collect();
        row[x] += Rational::one();
        constraints.push(row);
        constraints.extend(dirs.iter().map(|d| real_parts(&d.values)));
    }
    let kernel = linalg::kernel(&constraints, n);
    let cols = linalg::transpose(space.eval_matrix(), space.m());
    let mut basis: Vec<Vec<Scalar>> = cols.clone();
    for k in kernel {
        let v: Vec<Scalar> = k.into_iter().map(Scalar::real).collect();
        if !linalg::in_row_span(&basis, &v, n) {
            basis.push(v);
        }
    }
    let eval = linalg::transpose(&basis, n);
    let ac = FunctionSpace::new(format!("A_c({})", space.name()), space.field(), space.labels().to_vec(), eval)?;
    if linalg::rank(&cols, n) != space.m() {
        return Err(Error::InternalInconsistency("A_c lost a basis column".into()));
    }
    Ok(ac)
}

/// Whether two spaces on the same points span the same functions.
pub fn same_span(a: &FunctionSpace, b: &FunctionSpace) -> bool {
    if a.m() != b.m() || a.n() != b.n() {
        return false;
    }
    let cols = linalg::transpose(b.eval_matrix(), b.m());
    let mut stacked = linalg::transpose(a.eval_matrix(), a.m());
    stacked.extend(cols);
    linalg::rank(&stacked, a.n()) == a.m()
}

// ---------------------------------------------------------------------------
// The condition report.

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub boundary: BoundaryReport,
    pub verdicts: BTreeMap<Condition, Verdict>,
    pub simplicial_table: Vec<PointUniqueness>,
    /// θ-injectivity on all of `S × K`.
    pub theta_full: Verdict,
    pub timings_ms: BTreeMap<String, u128>,
}

impl ConditionReport {
    pub fn status(&self, c: Condition) -> Status {
        self.verdicts.get(&c).map_or(Status::Unknown, |v| v.status)
    }

    /// Compact form such as `I:T II:T III:F`.
    pub fn summary(&self) -> String {
        self.verdicts.iter().map(|(c, v)| format!("{c}:{}", v.status.short())).collect::<Vec<_>>().join(" ")
    }
}

/// Implications `(premises) ⟹ conclusion` valid on finite (metrizable) compacta.
pub const LATTICE: &[(&[Condition], Condition)] = &[
    (&[Condition::II], Condition::I),
    (&[Condition::III], Condition::II),
    (&[Condition::IV], Condition::III),
    (&[Condition::IV], Condition::VI),
    (&[Condition::VI], Condition::V),
    (&[Condition::III], Condition::V),
    (&[Condition::V, Condition::I], Condition::III),
    (&[Condition::VI, Condition::I], Condition::IV),
];

/// First lattice violation among decided verdicts.
pub fn lattice_violation(verdicts: &BTreeMap<Condition, Verdict>) -> Option<String> {
    let st = |c: &Condition| verdicts.get(c).map_or(Status::Unknown, |v| v.status);
    for (prem, concl) in LATTICE {
        if prem.iter().all(|p| st(p) == Status::True) && st(concl) == Status::False {
            let names: Vec<String> = prem.iter().map(|p| format!("{p}:T")).collect();
            return Some(format!("{} but {concl}:F", names.join(" & ")));
        }
    }
    None
}

/// Fills `Unknown` verdicts that follow from decided ones through the lattice.
fn propagate(verdicts: &mut BTreeMap<Condition, Verdict>) {
    loop {
        let mut changed = false;
        for (prem, concl) in LATTICE {
            let st = |c: &Condition| verdicts.get(c).map_or(Status::Unknown, |v| v.status);
            let tag = format!("{} => {concl}", prem.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("&"));
            if prem.iter().all(|p| st(p) == Status::True) && st(concl) == Status::Unknown && verdicts.contains_key(concl) {
                verdicts.insert(*concl, Verdict::yes(Witness::Theorem { tag }, "implication"));
                changed = true;
            } else if st(concl) == Status::False {
                // Contrapositive: with all but one premise true, the remaining premise is false.
                let unknown: Vec<&Condition> = prem.iter().filter(|p| st(p) != Status::True).collect();
                if unknown.len() == 1 && st(unknown[0]) == Status::Unknown && verdicts.contains_key(unknown[0]) {
                    verdicts.insert(*unknown[0], Verdict::no(Witness::Theorem { tag }, "implication"));
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

fn timed<T>(timings: &mut BTreeMap<String, u128>, key: &str, f: impl FnOnce() -> T) -> T {
    let start = std::time::Instant::now();
    let out = f();
    timings.insert(key.to_string(), start.elapsed().as_millis());
    out
}

fn or_unknown(r: Result<Verdict>, method: &str) -> Result<Verdict> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::UndecidedBoundary) => Ok(Verdict::unknown(method, "boundary not fully decided")),
        Err(Error::ComplexModeUnsupported(why)) => Ok(Verdict::unknown(method, why)),
        Err(e) => Err(e),
    }
}

pub fn condition_report(space: &FunctionSpace, settings: &Settings) -> Result<ConditionReport> {
    condition_report_for(space, settings, &Condition::ALL)
}

/// Runs the selected conditions and checks the implication lattice on the decided ones.
pub fn condition_report_for(space: &FunctionSpace, settings: &Settings, wanted: &[Condition]) -> Result<ConditionReport> {
    let mut timings = BTreeMap::new();
    let report = timed(&mut timings, "boundary", || boundary::choquet_boundary(space, settings))?;
    let mut verdicts = BTreeMap::new();
    let mut table = Vec::new();
    for &c in wanted {
        let v = match c {
            Condition::I => timed(&mut timings, "I", || boundary::theta_injective(space, Some(&report))),
            Condition::II => {
                let r = timed(&mut timings, "II", || is_simplicial(space, &report));
                match r {
                    Ok((v, t)) => {
                        table = t;
                        v
                    }
                    Err(e) => or_unknown(Err(e), "coordinate-range-lp")?,
                }
            }
            Condition::III => {
                or_unknown(timed(&mut timings, "III", || is_functionally_simplicial(space, &report, settings)), "circuit-sign-patterns")?
            }
            Condition::IV => or_unknown(timed(&mut timings, "IV", || annihilator_verdict(space, &report)), "boundary-kernel")?,
            Condition::V => or_unknown(timed(&mut timings, "V", || is_simplexoid(space, &report)), "facet-enumeration")?,
            Condition::VI => or_unknown(timed(&mut timings, "VI", || is_l1_predual(space, &report)), "cross-polytope")?,
        };
        verdicts.insert(c, v);
    }
    if let Some(msg) = lattice_violation(&verdicts) {
        return Err(Error::InternalInconsistency(format!("{}: {msg}", space.name())));
    }
    propagate(&mut verdicts);
    let theta_full = boundary::theta_injective(space, None);
    Ok(ConditionReport { boundary: report, verdicts, simplicial_table: table, theta_full, timings_ms: timings })
}
