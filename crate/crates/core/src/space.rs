//! Finite compact sets, function spaces given by evaluation matrices,
//! measures and functionals.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{self, Matrix};
use crate::scalar::{Field, Scalar};

pub const SCHEMA_VERSION: &str = "choquet-lab/1";

/// Ordered list of distinct point labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCompact {
    points: Vec<String>,
    index: HashMap<String, usize>,
}

impl FiniteCompact {
    pub fn new(points: Vec<String>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Schema("a compact needs at least two points".into()));
        }
        let mut index = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicatePoints(p.clone()));
            }
        }
        Ok(FiniteCompact { points, index })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }
}

/// A function space `H` on a finite compact `K`, stored as the evaluation
/// matrix of a basis: row `x` holds the values of the basis functions at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSpace {
    name: String,
    field: Field,
    compact: FiniteCompact,
    eval: Matrix<Scalar>,
    m: usize,
    contains_constants: bool,
}

impl FunctionSpace {
    /// Validates and builds a space. Fails on dependent columns or repeated rows.
    pub fn new(name: impl Into<String>, field: Field, points: Vec<String>, eval: Matrix<Scalar>) -> Result<Self> {
        let compact = FiniteCompact::new(points)?;
        let n = compact.len();
        if eval.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: eval.len() });
        }
        let m = eval.first().map_or(0, |r| r.len());
        if m == 0 {
            return Err(Error::Schema("basis must have at least one column".into()));
        }
        for row in &eval {
            if row.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: row.len() });
            }
        }
        if field == Field::Real {
            if let Some(v) = eval.iter().flatten().find(|v| !v.is_real()) {
                return Err(Error::MalformedScalar(format!("non-real entry {v} in a real space")));
            }
        }
        if m > n || linalg::rank(&eval, m) < m {
            return Err(Error::DependentBasis);
        }
        let mut seen: HashMap<&[Scalar], usize> = HashMap::new();
        for (i, row) in eval.iter().enumerate() {
            if let Some(&j) = seen.get(row.as_slice()) {
                return Err(Error::NonSeparating(compact.label(j).to_string(), compact.label(i).to_string()));
            }
            seen.insert(row.as_slice(), i);
        }
        let ones = vec![Scalar::one(); n];
        let contains_constants = linalg::solve(&eval, &ones, m).is_some();
        Ok(FunctionSpace { name: name.into(), field, compact, eval, m, contains_constants })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_real(&self) -> bool {
        self.field == Field::Real
    }

    pub fn compact(&self) -> &FiniteCompact {
        &self.compact
    }

    pub fn labels(&self) -> &[String] {
        self.compact.labels()
    }

    pub fn label(&self, i: usize) -> &str {
        self.compact.label(i)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.compact.index_of(label)
    }

    pub fn n(&self) -> usize {
        self.compact.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn eval_matrix(&self) -> &Matrix<Scalar> {
        &self.eval
    }

    pub fn row(&self, x: usize) -> &[Scalar] {
        &self.eval[x]
    }

    pub fn contains_constants(&self) -> bool {
        self.contains_constants
    }

    /// Whether every matrix entry is real (a complex space may still have a real basis).
    pub fn has_real_basis(&self) -> bool {
        self.eval.iter().flatten().all(Scalar::is_real)
    }

    /// Basis coefficients of the constant function 1, if present.
    pub fn constants_coeffs(&self) -> Option<Vec<Scalar>> {
        let ones = vec![Scalar::one(); self.n()];
        linalg::solve(&self.eval, &ones, self.m)
    }

    /// Copy of the space with a different field tag.
    pub fn with_field(&self, field: Field) -> Result<Self> {
        FunctionSpace::new(self.name.clone(), field, self.labels().to_vec(), self.eval.clone())
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Values of the function with basis coefficients `coeffs` at every point.
    pub fn function_values(&self, coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
        if coeffs.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: coeffs.len() });
        }
        Ok(linalg::mat_vec(&self.eval, coeffs))
    }

    /// Basis coefficients of a full function vector on `K`, if it lies in `H`.
    pub fn coeffs_of(&self, values: &[Scalar]) -> Option<Vec<Scalar>> {
        if values.len() != self.n() {
            return None;
        }
        linalg::solve(&self.eval, values, self.m)
    }

    pub fn evaluation_functional(&self, x: usize) -> Functional {
        Functional { coeffs: self.eval[x].clone() }
    }

    /// The functional `f ↦ ∫ f dμ`, i.e. `Eᵀμ`.
    pub fn functional_of(&self, mu: &Measure) -> Functional {
        Functional { coeffs: linalg::vec_mat(&mu.values, &self.eval, self.m) }
    }

    /// `∫ f dμ` for `f` given by basis coefficients.
    pub fn integrate(&self, coeffs: &[Scalar], mu: &Measure) -> Result<Scalar> {
        let values = self.function_values(coeffs)?;
        mu.integrate_values(&values)
    }

    /// Whether `Eᵀμ = 0`.
    pub fn annihilates(&self, mu: &Measure) -> bool {
        self.functional_of(mu).is_zero()
    }

    /// Serializable document form.
    pub fn to_document(&self) -> SpaceDocument {
        SpaceDocument {
            schema: Some(SCHEMA_VERSION.to_string()),
            name: self.name.clone(),
            field: self.field,
            points: self.labels().to_vec(),
            basis: self.eval.clone(),
        }
    }

    pub fn from_document(doc: SpaceDocument) -> Result<Self> {
        if let Some(s) = &doc.schema {
            if s != SCHEMA_VERSION {
                return Err(Error::VersionMismatch(s.clone()));
            }
        }
        FunctionSpace::new(doc.name, doc.field, doc.points, doc.basis)
    }
}

/// JSON schema of a space document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub name: String,
    pub field: Field,
    pub points: Vec<String>,
    pub basis: Vec<Vec<Scalar>>,
}

/// Parses a space from JSON text, mapping scalar errors to `MalformedScalar`.
pub fn load_space(text: &str) -> Result<FunctionSpace> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let doc = parse_document(&value)?;
    FunctionSpace::from_document(doc)
}

pub fn load_space_value(value: &serde_json::Value) -> Result<FunctionSpace> {
    FunctionSpace::from_document(parse_document(value)?)
}

fn parse_document(value: &serde_json::Value) -> Result<SpaceDocument> {
    let obj = value.as_object().ok_or_else(|| Error::Schema("space document must be an object".into()))?;
    let get = |k: &str| obj.get(k).ok_or_else(|| Error::Schema(format!("missing field '{k}'")));
    let name = get("name")?.as_str().ok_or_else(|| Error::Schema("name must be a string".into()))?.to_string();
    let field: Field = get("field")?
        .as_str()
        .ok_or_else(|| Error::Schema("field must be a string".into()))?
        .parse()?;
    let points = get("points")?
        .as_array()
        .ok_or_else(|| Error::Schema("points must be an array".into()))?
        .iter()
        .map(|p| p.as_str().map(str::to_string).ok_or_else(|| Error::Schema("point labels must be strings".into())))
        .collect::<Result<Vec<_>>>()?;
    let basis = get("basis")?
        .as_array()
        .ok_or_else(|| Error::Schema("basis must be an array of rows".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Schema("basis rows must be arrays".into()))?
                .iter()
                .map(parse_scalar_value)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let schema = obj.get("schema").and_then(|s| s.as_str()).map(str::to_string);
    Ok(SpaceDocument { schema, name, field, points, basis })
}

pub fn parse_scalar_value(v: &serde_json::Value) -> Result<Scalar> {
    serde_json::from_value::<Scalar>(v.clone()).map_err(|_| Error::MalformedScalar(v.to_string()))
}

pub fn save_space(space: &FunctionSpace) -> String {
    serde_json::to_string_pretty(&space.to_document()).expect("space documents always serialize")
}

/// Finitely supported scalar measure, stored densely in point order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Measure {
    pub values: Vec<Scalar>,
}

impl Measure {
    pub fn zero(n: usize) -> Self {
        Measure { values: vec![Scalar::zero(); n] }
    }

    pub fn dirac(n: usize, x: usize) -> Self {
        let mut m = Measure::zero(n);
        m.values[x] = Scalar::one();
        m
    }

    pub fn from_values(values: Vec<Scalar>) -> Self {
        Measure { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, x: usize) -> &Scalar {
        &self.values[x]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(Scalar::is_real)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).collect()
    }

    pub fn supported_in(&self, set: &[usize]) -> bool {
        let s: HashSet<usize> = set.iter().copied().collect();
        self.support().iter().all(|i| s.contains(i))
    }

    pub fn add(&self, other: &Measure) -> Measure {
        Measure { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Measure) -> Measure {
        Measure { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Measure {
        Measure { values: self.values.iter().map(|a| a * c).collect() }
    }

    /// Total variation measure `|μ|`; requires rational moduli.
    pub fn abs(&self) -> Result<Measure> {
        let values = self
            .values
            .iter()
            .map(|v| v.modulus_exact().map(Scalar::real).ok_or_else(|| Error::IrrationalModulus(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Measure { values })
    }

    /// `Σ |μ(x)|`, exact when every modulus is rational, else an enclosure of width < 2⁻⁴⁰.
    pub fn total_variation(&self) -> Interval {
        let mut acc = Interval::point(Zero::zero());
        let k = self.values.len().max(1) as u32;
        let extra = 32 - k.leading_zeros();
        for v in &self.values {
            if !v.is_zero() {
                acc = acc.add(&v.modulus_enclosure(41 + extra));
            }
        }
        acc
    }

    /// Exact total variation, when all moduli are rational.
    pub fn total_variation_exact(&self) -> Option<crate::scalar::Rational> {
        let tv = self.total_variation();
        tv.is_point().then(|| tv.lo().clone())
    }

    pub fn integrate_values(&self, f: &[Scalar]) -> Result<Scalar> {
        if f.len() != self.values.len() {
            return Err(Error::DimensionMismatch { expected: self.values.len(), found: f.len() });
        }
        Ok(linalg::dot(f, &self.values))
    }

    /// Label-keyed map with zero entries omitted.
    pub fn to_map(&self, space: &FunctionSpace) -> BTreeMap<String, Scalar> {
        self.support().into_iter().map(|i| (space.label(i).to_string(), self.values[i].clone())).collect()
    }

    pub fn from_map(space: &FunctionSpace, map: &BTreeMap<String, Scalar>) -> Result<Measure> {
        let mut m = Measure::zero(space.n());
        for (k, v) in map {
            m.values[space.index_of(k)?] = v.clone();
        }
        Ok(m)
    }
}

/// Element of `H*` in basis coordinates: `φ(f) = Σ coeffs_j c_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Functional {
    pub coeffs: Vec<Scalar>,
}

impl Functional {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Functional { coeffs }
    }

    pub fn zero(m: usize) -> Self {
        Functional { coeffs: vec![Scalar::zero(); m] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn apply(&self, f: &[Scalar]) -> Scalar {
        linalg::dot(&self.coeffs, f)
    }

    pub fn scale(&self, c: &Scalar) -> Functional {
        Functional { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn two_point_space_loads() {
        let sp = load_space(r#"{"name":"tp","field":"real","points":["p","q"],"basis":[["1"],["-1"]]}"#).unwrap();
        assert_eq!(sp.m(), 1);
        assert!(!sp.contains_constants());
    }

    #[test]
    fn identical_rows_rejected() {
        let err = load_space(r#"{"name":"x","field":"real","points":["p","q","r"],"basis":[["1","0"],["1","0"],["0","1"]]}"#)
            .unwrap_err();
        assert_eq!(err, Error::NonSeparating("p".into(), "q".into()));
    }

    #[test]
    fn identity_basis_contains_constants() {
        let sp = FunctionSpace::new("full", Field::Real, vec!["a".into(), "b".into(), "c".into()], linalg::identity(3))
            .unwrap();
        assert!(sp.contains_constants());
    }

    #[test]
    fn load_errors() {
        assert_eq!(
            load_space(r#"{"name":"x","field":"real","points":["p","p"],"basis":[["1"],["2"]]}"#).unwrap_err(),
            Error::DuplicatePoints("p".into())
        );
        assert_eq!(
            load_space(r#"{"name":"x","field":"real","points":["p","q"],"basis":[["1","2"],["2","4"]]}"#).unwrap_err(),
            Error::DependentBasis
        );
        assert!(matches!(
            load_space(r#"{"name":"x","field":"real","points":["p","q"],"basis":[["1/0"],["2"]]}"#).unwrap_err(),
            Error::MalformedScalar(_)
        ));
    }

    #[test]
    fn total_variation_values() {
        let mu = Measure::from_values(vec![Scalar::from_frac(1, 4), Scalar::from_frac(1, 2), Scalar::from_frac(-1, 2)]);
        assert_eq!(mu.total_variation_exact(), Some(rat(5, 4)));
        let z = Measure::from_values(vec![Scalar::new(rat(3, 5), rat(4, 5))]);
        assert_eq!(z.total_variation_exact(), Some(rat(1, 1)));
        let w = Measure::from_values(vec![Scalar::new(rat(1, 1), rat(1, 1))]);
        let tv = w.total_variation();
        assert!(tv.width() < rat(1, 1 << 40));
    }

    #[test]
    fn round_trip_and_integration() {
        let sp = FunctionSpace::new(
            "t",
            Field::Complex,
            vec!["a".into(), "b".into()],
            vec![vec![s(1), Scalar::i()], vec![s(0), s(2)]],
        )
        .unwrap();
        let back = load_space(&save_space(&sp)).unwrap();
        assert_eq!(back, sp);
        let mu = Measure::dirac(2, 1);
        assert_eq!(sp.integrate(&[s(0), s(1)], &mu).unwrap(), s(2));
        assert_eq!(sp.evaluation_functional(0).coeffs, sp.row(0).to_vec());
    }
}
