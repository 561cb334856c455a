use serde::{Serialize, Serializer};

use crate::rational::{format_rational, to_f64, Rational};
use crate::transport::MatchingOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Satisfied,
    Violated,
    Conjectural,
}

/// A side of an inequality: exact when it comes from counts and curvature
/// values, real when it comes from spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Exact(Rational),
    Real(f64),
}

impl Value {
    pub fn int(v: i64) -> Value {
        Value::Exact(Rational::from_integer(v))
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(&r),
            Value::Real(v) => v,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Exact(r) => format_rational(r),
            Value::Real(v) => format_real(*v),
        }
    }
}

/// Ten significant digits, trailing zeros trimmed.
pub fn format_real(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{}", if v == 0.0 { 0.0 } else { v });
    }
    let s = format!("{:.9e}", v);
    let (mantissa, exp) = s.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let rounded: f64 = format!("{mantissa}e{exp}").parse().expect("round trip");
    let decimals = (9 - exp).max(0) as usize;
    let mut out = format!("{rounded:.decimals$}");
    if out.contains('.') {
        out = out.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if out == "-0" {
        out = "0".into();
    }
    out
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => s.serialize_str(&format_rational(r)),
            Value::Real(v) => s.serialize_f64(*v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "==",
        }
    }

    /// Exact when both sides are exact, otherwise within `tolerance`.
    pub fn holds(self, lhs: Value, rhs: Value, tolerance: f64) -> bool {
        if let (Value::Exact(a), Value::Exact(b)) = (lhs, rhs) {
            return match self {
                Relation::Le => a <= b,
                Relation::Ge => a >= b,
                Relation::Eq => a == b,
            };
        }
        let (a, b) = (lhs.to_f64(), rhs.to_f64());
        match self {
            Relation::Le => a <= b + tolerance,
            Relation::Ge => a + tolerance >= b,
            Relation::Eq => (a - b).abs() <= tolerance,
        }
    }
}

/// Where a bound is tightest or fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vertex { vertex: usize },
    Edge { x: usize, y: usize },
    Subset { vertices: Vec<usize> },
    Partition { left: Vec<usize>, right: Vec<usize> },
    Level { center: usize, level: usize },
    InDegree { center: usize, level: usize, vertex: usize, in_degree: usize },
    Matching { x: usize, y: usize, outcome: MatchingOutcome },
}

pub const TIGHT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub bound_id: &'static str,
    pub hypothesis_status: HypothesisStatus,
    pub lhs: Option<Value>,
    pub relation: Relation,
    pub rhs: Option<Value>,
    /// Only set when the hypothesis is satisfied.
    pub passed: Option<bool>,
    pub tight: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl VerificationReport {
    /// Compares `lhs relation rhs`; the outcome is recorded as `passed` only
    /// when the hypothesis is satisfied.
    pub fn evaluate(
        bound_id: &'static str,
        status: HypothesisStatus,
        lhs: Value,
        relation: Relation,
        rhs: Value,
        tolerance: f64,
    ) -> VerificationReport {
        let tight = match (lhs, rhs) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            _ => (lhs.to_f64() - rhs.to_f64()).abs() <= TIGHT_TOL,
        };
        let holds = relation.holds(lhs, rhs, tolerance);
        VerificationReport {
            bound_id,
            hypothesis_status: status,
            lhs: Some(lhs),
            relation,
            rhs: Some(rhs),
            passed: (status == HypothesisStatus::Satisfied).then_some(holds),
            tight,
            witness: None,
            note: (status == HypothesisStatus::Conjectural)
                .then(|| format!("conjectured, not asserted; observed {}", if holds { "holds" } else { "fails" })),
        }
    }

    /// A bound whose hypothesis fails, so nothing is compared.
    pub fn skipped(bound_id: &'static str, relation: Relation, note: impl Into<String>) -> VerificationReport {
        VerificationReport {
            bound_id,
            hypothesis_status: HypothesisStatus::Violated,
            lhs: None,
            relation,
            rhs: None,
            passed: None,
            tight: false,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn with_witness(mut self, witness: Option<Witness>) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(prev) => format!("{prev}; {note}"),
            None => note,
        });
        self
    }

    pub fn failed(&self) -> bool {
        self.passed == Some(false)
    }
}
