//! Machine-readable reports and their independent re-verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::boundary::{self, BoundaryReport};
use crate::dirichlet::{self, DirichletSuiteReport};
use crate::error::{Error, Result};
use crate::hustad::HustadSuiteReport;
use crate::representation::{self, Condition, ConditionReport, PointUniqueness};
use crate::scalar::{Field, Scalar};
use crate::settings::Settings;
use crate::space::{save_space, FunctionSpace, SpaceDocument, SCHEMA_VERSION};
use crate::suite::{C14Case, PrubehSweepReport, RandomSuiteReport, SandwichCase};
use crate::verdict::{MeasureMap, Status, Verdict, Witness};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDigest {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub field: Field,
    /// SHA-256 of the canonical space document.
    pub sha256: String,
}

pub fn digest(space: &FunctionSpace) -> SpaceDigest {
    let hash = Sha256::digest(save_space(space).as_bytes());
    SpaceDigest { name: space.name().to_string(), n: space.n(), m: space.m(), field: space.field(), sha256: hex::encode(hash) }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointEntry {
    pub label: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundarySection {
    pub boundary: Vec<String>,
    pub non_boundary: Vec<String>,
    pub unknown: Vec<String>,
    pub points: Vec<PointEntry>,
}

impl BoundarySection {
    pub fn new(space: &FunctionSpace, r: &BoundaryReport) -> Self {
        let labels = |v: Vec<usize>| v.into_iter().map(|i| space.label(i).to_string()).collect();
        BoundarySection {
            boundary: labels(r.boundary()),
            non_boundary: labels(r.non_boundary()),
            unknown: labels(r.unknown()),
            points: (0..space.n()).map(|i| PointEntry { label: space.label(i).to_string(), verdict: r.points[i].clone() }).collect(),
        }
    }

    /// The recorded per-point verdicts as a report (labels must match the space).
    pub fn to_report(&self, space: &FunctionSpace) -> Result<BoundaryReport> {
        if self.points.len() != space.n() || self.points.iter().enumerate().any(|(i, p)| p.label != space.label(i)) {
            return Err(Error::WitnessFailure("boundary section does not match the space".into()));
        }
        Ok(BoundaryReport { field: space.field(), points: self.points.iter().map(|p| p.verdict.clone()).collect(), norm_one: Vec::new() })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionsSection {
    pub summary: String,
    pub verdicts: BTreeMap<String, Verdict>,
    pub simplicial_table: Vec<PointUniqueness>,
    pub theta_full: Verdict,
}

impl ConditionsSection {
    pub fn new(r: &ConditionReport) -> Self {
        ConditionsSection {
            summary: r.summary(),
            verdicts: r.verdicts.iter().map(|(c, v)| (c.to_string(), v.clone())).collect(),
            simplicial_table: r.simplicial_table.clone(),
            theta_full: r.theta_full.clone(),
        }
    }

    pub fn status(&self, c: Condition) -> Status {
        self.verdicts.get(&c.to_string()).map_or(Status::Unknown, |v| v.status)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DirichletSection {
    /// `δ_x` per point label.
    pub delta: BTreeMap<String, MeasureMap>,
    pub d_equals_dtilde: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub applied: Option<AppliedVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<DirichletSuiteReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AppliedVector {
    pub f: MeasureMap,
    pub d: MeasureMap,
    pub dtilde: MeasureMap,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SuiteSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomSuiteReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prubeh: Option<PrubehSweepReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hustad: Option<HustadSuiteReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c14: Option<Vec<C14Case>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<Vec<SandwichCase>>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    pub seed: u64,
    pub phase_grid: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digest: Option<SpaceDigest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundarySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dirichlet: Option<DirichletSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteSection>,
    /// The only field allowed to differ between identical runs.
    pub timing_ms: BTreeMap<String, u128>,
}

impl Report {
    pub fn new(command: &str, settings: &Settings, space: Option<&FunctionSpace>) -> Self {
        Report {
            schema: SCHEMA_VERSION.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            seed: settings.seed,
            phase_grid: settings.phase_grid,
            digest: space.map(digest),
            space: space.map(FunctionSpace::to_document),
            boundary: None,
            conditions: None,
            dirichlet: None,
            suite: None,
            timing_ms: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("schema").and_then(|s| s.as_str()) {
            Some(SCHEMA_VERSION) => {}
            Some(other) => return Err(Error::VersionMismatch(other.to_string())),
            None => return Err(Error::Schema("report has no schema field".into())),
        }
        Ok(serde_json::from_value(value)?)
    }

    /// Copy with timings cleared, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Report { timing_ms: BTreeMap::new(), ..self.clone() }
    }
}

/// `analyze`: boundary plus the selected conditions.
pub fn analyze(space: &FunctionSpace, settings: &Settings, conditions: &[Condition], command: &str) -> Result<Report> {
    let start = std::time::Instant::now();
    let cr = representation::condition_report_for(space, settings, conditions)?;
    let mut rep = Report::new(command, settings, Some(space));
    rep.boundary = Some(BoundarySection::new(space, &cr.boundary));
    rep.conditions = Some(ConditionsSection::new(&cr));
    rep.timing_ms = cr.timings_ms.clone();
    rep.timing_ms.insert("total".into(), start.elapsed().as_millis());
    Ok(rep)
}

pub fn boundary_report(space: &FunctionSpace, settings: &Settings) -> Result<Report> {
    let start = std::time::Instant::now();
    let r = boundary::choquet_boundary(space, settings)?;
    let mut rep = Report::new("boundary", settings, Some(space));
    rep.boundary = Some(BoundarySection::new(space, &r));
    rep.timing_ms.insert("total".into(), start.elapsed().as_millis());
    Ok(rep)
}

fn vector_map(space: &FunctionSpace, v: &[crate::scalar::Rational]) -> MeasureMap {
    v.iter().enumerate().map(|(i, q)| (space.label(i).to_string(), Scalar::real(q.clone()))).collect()
}

/// `dirichlet`: the `δ_x` table, optionally applied to `f` and followed by the property suite.
pub fn dirichlet_report(
    space: &FunctionSpace,
    settings: &Settings,
    apply: Option<&MeasureMap>,
    suite_batch: Option<usize>,
) -> Result<Report> {
    let start = std::time::Instant::now();
    let r = boundary::choquet_boundary(space, settings)?;
    if space.field() != Field::Real {
        return Err(Error::ComplexUndecided);
    }
    let pair = dirichlet::dilation_with(space, &r)?;
    let delta = (0..space.n()).map(|x| (space.label(x).to_string(), vector_map(space, &pair.delta[x]))).collect();
    let applied = match apply {
        Some(map) => {
            let f = crate::space::Measure::from_map(space, map)?;
            if !f.is_real() {
                return Err(Error::BadParam("f must be real".into()));
            }
            let fr: Vec<_> = f.values.iter().map(|v| v.re().clone()).collect();
            Some(AppliedVector {
                f: vector_map(space, &fr),
                d: vector_map(space, &dirichlet::apply_d(&pair, &fr)?),
                dtilde: vector_map(space, &dirichlet::apply_dtilde(&pair, &fr)?),
            })
        }
        None => None,
    };
    let suite = suite_batch.map(|b| dirichlet::property_suite(space, settings, b)).transpose()?;
    let mut rep = Report::new("dirichlet", settings, Some(space));
    rep.boundary = Some(BoundarySection::new(space, &r));
    rep.dirichlet = Some(DirichletSection { delta, d_equals_dtilde: pair.d == pair.dt, applied, suite });
    rep.timing_ms.insert("total".into(), start.elapsed().as_millis());
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Verification.

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    /// Witnesses and certificates checked.
    pub checked: usize,
    /// Verdicts confirmed by recomputation rather than a compact certificate.
    pub recomputed: usize,
}

fn fail(what: impl Into<String>, digest: &Option<SpaceDigest>) -> Error {
    let d = digest.as_ref().map_or_else(|| "no space".to_string(), |d| format!("{} sha256:{}", d.name, &d.sha256[..12]));
    Error::WitnessFailure(format!("{} [{d}]", what.into()))
}

/// Re-checks every embedded witness exactly.
pub fn verify(report: &Report) -> Result<VerifySummary> {
    if report.schema != SCHEMA_VERSION {
        return Err(Error::VersionMismatch(report.schema.clone()));
    }
    let major = |v: &str| v.split('.').next().unwrap_or("").to_string();
    if major(&report.tool_version) != major(TOOL_VERSION) {
        return Err(Error::VersionMismatch(report.tool_version.clone()));
    }
    let mut sum = VerifySummary::default();
    let Some(doc) = &report.space else { return Ok(sum) };
    let space = FunctionSpace::from_document(doc.clone())?;
    let dg = &report.digest;
    if dg.as_ref() != Some(&digest(&space)) {
        return Err(fail("space digest does not match the embedded space", dg));
    }
    let settings = Settings { seed: report.seed, ..Settings::default() }.with_grid(report.phase_grid);

    let mut bnd: Option<BoundaryReport> = None;
    if let Some(section) = &report.boundary {
        let r = section.to_report(&space).map_err(|_| fail("boundary section labels", dg))?;
        for (x, v) in r.points.iter().enumerate() {
            if !boundary::verify_point_certificate(&space, x, v, &settings) {
                return Err(fail(format!("boundary certificate at {}", space.label(x)), dg));
            }
            sum.checked += usize::from(v.status.is_decided());
        }
        let listed = |s: Status| r.points.iter().enumerate().filter(|(_, v)| v.status == s).map(|(i, _)| space.label(i).to_string()).collect::<Vec<_>>();
        if section.boundary != listed(Status::True) || section.non_boundary != listed(Status::False) || section.unknown != listed(Status::Unknown) {
            return Err(fail("boundary lists disagree with the point verdicts", dg));
        }
        bnd = Some(r);
    }

    if let Some(cs) = &report.conditions {
        let r = bnd.as_ref().ok_or_else(|| fail("conditions without a boundary section", dg))?;
        let mut recomputed: Option<ConditionReport> = None;
        let mut recompute = |sum: &mut VerifySummary| -> Result<ConditionReport> {
            if recomputed.is_none() {
                let wanted: Vec<Condition> = cs.verdicts.keys().filter_map(|k| k.parse().ok()).collect();
                recomputed = Some(representation::condition_report_for(&space, &settings, &wanted)?);
            }
            sum.recomputed += 1;
            Ok(recomputed.clone().expect("just set"))
        };
        for (name, v) in &cs.verdicts {
            let c: Condition = name.parse().map_err(|_| fail(format!("unknown condition {name}"), dg))?;
            if !v.status.is_decided() {
                continue;
            }
            let ok = match (&v.witness, c) {
                (Some(Witness::ThetaPair { .. }), Condition::I) => v.is_false() && boundary::verify_theta_pair(&space, v.witness.as_ref().unwrap()),
                (Some(w @ Witness::Multiple { .. }), Condition::II) => v.is_false() && representation::verify_multiple(&space, r, w),
                (Some(Witness::NonUniqueness(w)), Condition::III) => v.is_false() && representation::verify_nonuniqueness_witness(&space, r, w),
                (Some(Witness::Annihilator { .. }), Condition::IV) => representation::verify_annihilator(&space, r, v),
                (Some(w @ Witness::Facet { .. }), Condition::V) => v.is_false() && representation::verify_facet(&space, w),
                (Some(Witness::CrossPolytope { .. }), Condition::VI) => {
                    representation::is_l1_predual(&space, r).is_ok_and(|fresh| &fresh == v)
                }
                (Some(Witness::Recompute | Witness::Theorem { .. }), _) => recompute(&mut sum)?.status(c) == v.status,
                _ => false,
            };
            if !ok {
                return Err(fail(format!("condition {name}"), dg));
            }
            sum.checked += 1;
        }
        // The uniqueness table: Multiple rows carry certificates, unique rows are recomputed.
        for row in &cs.simplicial_table {
            let ok = match (&row.verdict.status, &row.verdict.witness) {
                (Status::False, Some(w @ Witness::Multiple { .. })) => representation::verify_multiple(&space, r, w),
                (Status::True, _) => {
                    let fresh = recompute(&mut sum)?;
                    fresh.simplicial_table.iter().any(|p| p.point == row.point && p.delta == row.delta && p.verdict.is_true())
                }
                (Status::Unknown, _) => true,
                _ => false,
            };
            if !ok {
                return Err(fail(format!("uniqueness table at {}", row.point), dg));
            }
            sum.checked += 1;
        }
        let tf = &cs.theta_full;
        let ok = match (&tf.status, &tf.witness) {
            (Status::False, Some(w @ Witness::ThetaPair { .. })) => boundary::verify_theta_pair(&space, w),
            (Status::True, _) => boundary::theta_injective(&space, None).is_true(),
            (Status::Unknown, _) => true,
            _ => false,
        };
        if !ok {
            return Err(fail("full θ-injectivity", dg));
        }
        sum.checked += 1;
    }

    if let Some(ds) = &report.dirichlet {
        let r = bnd.as_ref().ok_or_else(|| fail("dirichlet without a boundary section", dg))?;
        let pair = dirichlet::dilation_with(&space, r).map_err(|e| fail(format!("dilation: {e}"), dg))?;
        for x in 0..space.n() {
            let expected = vector_map(&space, &pair.delta[x]);
            if ds.delta.get(space.label(x)) != Some(&expected) {
                return Err(fail(format!("δ at {}", space.label(x)), dg));
            }
            sum.checked += 1;
        }
        if let Some(a) = &ds.applied {
            let f = crate::space::Measure::from_map(&space, &a.f).map_err(|_| fail("applied vector", dg))?;
            let fr: Vec<_> = f.values.iter().map(|v| v.re().clone()).collect();
            let ok = vector_map(&space, &dirichlet::apply_d(&pair, &fr)?) == a.d
                && vector_map(&space, &dirichlet::apply_dtilde(&pair, &fr)?) == a.dtilde;
            if !ok {
                return Err(fail("applied D f", dg));
            }
            sum.checked += 1;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{self, HjParams};

    fn hj(a: (i64, i64), b: (i64, i64)) -> FunctionSpace {
        gallery::make_hj(&HjParams::new(1, 2, Scalar::from_frac(a.0, a.1), Scalar::from_frac(b.0, b.1))).unwrap()
    }

    #[test]
    fn analyze_then_verify() {
        let sp = hj((1, 3), (1, 3));
        let rep = analyze(&sp, &Settings::default(), &Condition::ALL, "analyze").unwrap();
        let back = Report::from_json(&rep.to_json()).unwrap();
        assert!(verify(&back).unwrap().checked > 0);
    }

    #[test]
    fn deterministic_apart_from_timing() {
        let sp = gallery::make_square_affine();
        let a = analyze(&sp, &Settings::default(), &Condition::ALL, "analyze").unwrap();
        let b = analyze(&sp, &Settings::default(), &Condition::ALL, "analyze").unwrap();
        assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
    }

    #[test]
    fn tampering_detected() {
        let sp = hj((1, 3), (1, 3));
        let mut rep = analyze(&sp, &Settings::default(), &Condition::ALL, "analyze").unwrap();
        let v = rep.conditions.as_mut().unwrap().verdicts.get_mut("III").unwrap();
        let Some(Witness::NonUniqueness(w)) = v.witness.as_mut() else { panic!("expected a witness") };
        let k = w.mu.keys().next().unwrap().clone();
        w.mu.insert(k, Scalar::from_frac(7, 3));
        assert!(matches!(verify(&rep), Err(Error::WitnessFailure(_))));
    }

    #[test]
    fn digest_mismatch_detected() {
        let sp = gallery::make_two_point();
        let mut rep = boundary_report(&sp, &Settings::default()).unwrap();
        rep.digest.as_mut().unwrap().sha256 = "00".repeat(32);
        assert!(matches!(verify(&rep), Err(Error::WitnessFailure(_))));
    }

    #[test]
    fn unknown_only_report_verifies() {
        let sp = gallery::make_two_point();
        let mut rep = analyze(&sp, &Settings::default(), &Condition::ALL, "analyze").unwrap();
        for v in rep.conditions.as_mut().unwrap().verdicts.values_mut() {
            *v = Verdict::unknown("none", "test");
        }
        rep.conditions.as_mut().unwrap().theta_full = Verdict::unknown("none", "test");
        assert!(verify(&rep).is_ok());
    }

    #[test]
    fn version_checked() {
        let mut rep = boundary_report(&gallery::make_two_point(), &Settings::default()).unwrap();
        rep.schema = "choquet-lab/0".into();
        assert!(matches!(Report::from_json(&rep.to_json()), Err(Error::VersionMismatch(_))));
        assert!(matches!(verify(&rep), Err(Error::VersionMismatch(_))));
    }

    #[test]
    fn dirichlet_report_verifies() {
        let sp = gallery::make_interval_space(3, 4, &Scalar::from_frac(1, 2)).unwrap();
        let f: MeasureMap = sp.labels().iter().map(|l| (l.clone(), Scalar::one())).collect();
        let rep = dirichlet_report(&sp, &Settings::default(), Some(&f), Some(2)).unwrap();
        let applied = rep.dirichlet.as_ref().unwrap().applied.as_ref().unwrap();
        assert_eq!(applied.d["1"], Scalar::from_frac(1, 2));
        assert!(verify(&rep).is_ok());
    }
}
