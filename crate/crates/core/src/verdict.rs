//! Three-valued decisions with attached certificates.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::interval::Interval;
use crate::scalar::{rational_serde, Rational, Scalar};
use crate::space::Functional;

/// Label-keyed measure used inside serializable witnesses.
pub type MeasureMap = BTreeMap<String, Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    True,
    False,
    Unknown,
}

impl Status {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::True
        } else {
            Status::False
        }
    }

    pub fn is_decided(self) -> bool {
        self != Status::Unknown
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Status::True => Some(true),
            Status::False => Some(false),
            Status::Unknown => None,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Status::True => "T",
            Status::False => "F",
            Status::Unknown => "?",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One term `weight · (phase · generator)` of a convex combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullTerm {
    pub phase: Scalar,
    pub generator: usize,
    #[serde(with = "rational_serde")]
    pub weight: Rational,
}

/// Certificate that two boundary measures represent the same functional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonUniquenessWitness {
    pub mu: MeasureMap,
    pub nu: MeasureMap,
    /// Basis coefficients of a function norming both `μ` and `μ + ν`.
    pub f: Vec<Scalar>,
    pub phi: Functional,
}

/// Witness for the four-number criterion on the `H_j` family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C14Witness {
    pub c: [Scalar; 4],
    pub x: [Scalar; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `v = Σ weight · phase · generator` with non-negative weights summing to one.
    Combination { terms: Vec<HullTerm> },
    /// `normal · v > bound ≥ Re(normal · phase · g)` for every phased generator.
    Hyperplane {
        normal: Vec<Scalar>,
        #[serde(with = "rational_serde")]
        bound: Rational,
    },
    /// Point labels with `row_y = alpha · row_x`, `|alpha| = 1`.
    ThetaPair { x: String, y: String, alpha: Scalar },
    /// Peak function certifying boundary points.
    Peak { a: String, b: String, f: Vec<Scalar> },
    /// Zero evaluation row.
    ZeroRow { point: String },
    /// Two distinct boundary measures representing `φ(point)`, both normed by `norming`.
    Multiple { point: String, first: MeasureMap, second: MeasureMap, norming: Vec<Scalar> },
    NonUniqueness(NonUniquenessWitness),
    /// Nonzero boundary-supported annihilating measures.
    Annihilator { measures: Vec<MeasureMap> },
    /// A facet `normal · v = offset` of the dual ball touching more than `dim + 1` vertices.
    Facet {
        normal: Vec<Scalar>,
        #[serde(with = "rational_serde")]
        offset: Rational,
        vertices: Vec<Vec<Scalar>>,
        dim: usize,
    },
    /// Dual-ball vertex classes are not a basis: count and rank.
    CrossPolytope { classes: Vec<String>, rank: usize, m: usize },
    /// State space vertex data.
    StateSpace { vertices: Vec<String>, affine_dim: usize },
    C14(C14Witness),
    /// Decided by a cited structural theorem for this parameter range.
    Theorem { tag: String },
    /// No compact certificate; `verify` re-runs the exact decision.
    Recompute,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(status: Status, witness: Option<Witness>, method: &str) -> Self {
        Verdict { status, witness, method: method.to_string(), gap: None, note: None }
    }

    pub fn yes(witness: Witness, method: &str) -> Self {
        Verdict::new(Status::True, Some(witness), method)
    }

    pub fn no(witness: Witness, method: &str) -> Self {
        Verdict::new(Status::False, Some(witness), method)
    }

    pub fn unknown(method: &str, note: impl Into<String>) -> Self {
        Verdict { note: Some(note.into()), ..Verdict::new(Status::Unknown, None, method) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_gap(mut self, gap: Interval) -> Self {
        self.gap = Some(gap);
        self
    }

    pub fn is_true(&self) -> bool {
        self.status == Status::True
    }

    pub fn is_false(&self) -> bool {
        self.status == Status::False
    }
}
