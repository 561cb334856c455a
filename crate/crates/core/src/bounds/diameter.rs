use super::report::{HypothesisStatus, Relation, Value, VerificationReport, Witness};
use super::{Analysis, NOT_AMPLY, NOT_REGULAR};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{floor, Rational};

/// Largest eccentricity.
pub fn diameter(g: &Graph) -> Result<usize> {
    if g.vertex_count() == 0 {
        return Err(Error::Empty);
    }
    (0..g.vertex_count())
        .map(|v| g.eccentricity(v).ok_or(Error::Disconnected))
        .try_fold(0, |acc, e| e.map(|e| acc.max(e)))
}

fn satisfied(cond: bool) -> HypothesisStatus {
    if cond {
        HypothesisStatus::Satisfied
    } else {
        HypothesisStatus::Violated
    }
}

/// `floor(2d / (2 + gain))`.
fn floor_bound(d: usize, gain: Rational) -> Value {
    Value::int(floor(&(Rational::from_integer(2 * d as i64) / (Rational::from_integer(2) + gain))))
}

pub fn check_diameter_bounds(a: &Analysis) -> Vec<VerificationReport> {
    let tol = a.options.tolerance;
    let diam = Value::int(a.diameter as i64);
    let mut out = Vec::new();

    match a.params() {
        None => {
            for id in ["diameter.combined", "diameter.lly-gain", "diameter.be-half-alpha", "diameter.be-degree"] {
                out.push(VerificationReport::skipped(id, Relation::Le, NOT_AMPLY));
            }
        }
        Some(p) => {
            let (alpha, beta, d) = (p.alpha as i64, p.beta as i64, p.d);
            match p.curvature_gain() {
                Some(gain) => {
                    let status = if (alpha, beta) == (2, 2) {
                        HypothesisStatus::Conjectural
                    } else {
                        HypothesisStatus::Satisfied
                    };
                    out.push(VerificationReport::evaluate(
                        "diameter.combined",
                        status,
                        diam,
                        Relation::Le,
                        floor_bound(d, gain),
                        tol,
                    ));
                }
                None => out.push(VerificationReport::skipped(
                    "diameter.combined",
                    Relation::Le,
                    "needs 1 != beta >= alpha",
                )),
            }
            match p.matching_gain() {
                Some(gain) => out.push(VerificationReport::evaluate(
                    "diameter.lly-gain",
                    HypothesisStatus::Satisfied,
                    diam,
                    Relation::Le,
                    floor_bound(d, Rational::from_integer(gain)),
                    tol,
                )),
                None => out.push(VerificationReport::skipped(
                    "diameter.lly-gain",
                    Relation::Le,
                    "needs 1 != beta >= alpha",
                )),
            }
            let lhs = p.two_d_beta_minus_two();
            out.push(VerificationReport::evaluate(
                "diameter.be-half-alpha",
                satisfied(lhs >= alpha * alpha),
                diam,
                Relation::Le,
                floor_bound(d, Rational::new(alpha, 2)),
                tol,
            ));
            out.push(VerificationReport::evaluate(
                "diameter.be-degree",
                satisfied(lhs >= alpha * alpha - alpha * beta),
                diam,
                Relation::Le,
                Value::int(d as i64),
                tol,
            ));
        }
    }

    match a.min_lly() {
        None => out.push(VerificationReport::skipped("diameter.bonnet-myers-lly", Relation::Le, NOT_REGULAR)),
        Some(((x, y), k)) => {
            let positive = k > Rational::from_integer(0);
            let rhs = if positive { Value::Exact(Rational::from_integer(2) / k) } else { Value::Real(f64::INFINITY) };
            let report = if positive {
                VerificationReport::evaluate("diameter.bonnet-myers-lly", HypothesisStatus::Satisfied, diam, Relation::Le, rhs, tol)
            } else {
                VerificationReport::skipped("diameter.bonnet-myers-lly", Relation::Le, "minimum edge curvature is not positive")
            };
            out.push(report.with_witness(Some(Witness::Edge { x, y })));
        }
    }

    match Analysis::min_be(&a.be_plus) {
        None => out.push(VerificationReport::skipped("diameter.bonnet-myers-be", Relation::Le, NOT_REGULAR)),
        Some((x, k)) => {
            let report = if k > tol {
                VerificationReport::evaluate(
                    "diameter.bonnet-myers-be",
                    HypothesisStatus::Satisfied,
                    diam,
                    Relation::Le,
                    Value::Real(2.0 * a.graph.max_degree() as f64 / k),
                    tol,
                )
            } else {
                VerificationReport::skipped("diameter.bonnet-myers-be", Relation::Le, "minimum vertex curvature is not positive")
            };
            out.push(report.with_witness(Some(Witness::Vertex { vertex: x })));
        }
    }
    out
}
