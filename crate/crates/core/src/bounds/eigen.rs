use super::report::{HypothesisStatus, Relation, Value, VerificationReport, Witness};
use super::{Analysis, NOT_AMPLY, NOT_REGULAR};
use crate::rational::Rational;
use crate::spectra::Spectrum;

/// Smallest eigenvalue with absolute value above `tol`.
pub fn smallest_nonzero(spectrum: &Spectrum, tol: f64) -> Option<f64> {
    spectrum.values.iter().copied().find(|v| v.abs() > tol)
}

fn status(cond: bool) -> HypothesisStatus {
    if cond {
        HypothesisStatus::Satisfied
    } else {
        HypothesisStatus::Violated
    }
}

fn gated(id: &'static str, cond: bool, lhs: f64, rel: Relation, rhs: Value, tol: f64, why: &str) -> VerificationReport {
    let r = VerificationReport::evaluate(id, status(cond), Value::Real(lhs), rel, rhs, tol);
    if cond {
        r
    } else {
        r.with_note(why.to_string())
    }
}

pub fn check_eigenvalue_bounds(a: &Analysis) -> Vec<VerificationReport> {
    let tol = a.options.tolerance;
    let second = a.adjacency.theta_second;
    let smallest = a.adjacency.theta_1;
    let mut out = Vec::new();

    const ARG_IDS: [(&str, Relation); 6] = [
        ("eigen.second-largest", Relation::Le),
        ("eigen.second-largest-alpha-beta-2", Relation::Le),
        ("eigen.smallest-diameter-4", Relation::Ge),
        ("eigen.second-largest-half-alpha", Relation::Le),
        ("eigen.second-largest-d-2", Relation::Le),
        ("eigen.smallest-d-2", Relation::Ge),
    ];
    match a.params() {
        None => out.extend(ARG_IDS.iter().map(|&(id, rel)| VerificationReport::skipped(id, rel, NOT_AMPLY))),
        Some(p) => {
            let (alpha, beta, d) = (p.alpha as i64, p.beta as i64, p.d as i64);
            let d_minus_2 = Rational::from_integer(d - 2);
            let two_two = (alpha, beta) == (2, 2);
            match p.curvature_gain() {
                Some(gain) if !two_two => out.push(gated(
                    "eigen.second-largest",
                    true,
                    second,
                    Relation::Le,
                    Value::Exact(d_minus_2 - gain),
                    tol,
                    "",
                )),
                _ => out.push(VerificationReport::skipped(
                    "eigen.second-largest",
                    Relation::Le,
                    "needs 1 != beta >= alpha and (alpha, beta) != (2, 2)",
                )),
            }
            out.push(gated(
                "eigen.second-largest-alpha-beta-2",
                two_two,
                second,
                Relation::Le,
                Value::Exact(d_minus_2),
                tol,
                "needs alpha = beta = 2",
            ));
            out.push(gated(
                "eigen.smallest-diameter-4",
                a.diameter >= 4 && 2 <= alpha && alpha <= 10 * beta - 12,
                smallest,
                Relation::Ge,
                Value::int(2 - d),
                tol,
                "needs diameter >= 4 and 2 <= alpha <= 10 beta - 12",
            ));
            let lhs = p.two_d_beta_minus_two();
            out.push(gated(
                "eigen.second-largest-half-alpha",
                lhs >= alpha * alpha,
                second,
                Relation::Le,
                Value::Exact(d_minus_2 - Rational::new(alpha, 2)),
                tol,
                "needs 2d(beta - 2) >= alpha^2",
            ));
            out.push(gated(
                "eigen.second-largest-d-2",
                lhs >= alpha * (alpha - beta),
                second,
                Relation::Le,
                Value::Exact(d_minus_2),
                tol,
                "needs 2d(beta - 2) >= alpha (alpha - beta)",
            ));
            let sign_condition = lhs >= (alpha - beta) * (alpha - 4 * beta);
            let why = if sign_condition {
                "bipartite: d + theta_1 = 0 is the balanced kernel"
            } else {
                "needs 2d(beta - 2) >= (alpha - beta)(alpha - 4 beta)"
            };
            out.push(gated(
                "eigen.smallest-d-2",
                sign_condition && !a.bipartite,
                smallest,
                Relation::Ge,
                Value::int(2 - d),
                tol,
                why,
            ));
        }
    }

    let Some(d) = a.regular_degree else {
        for (id, rel) in [
            ("eigen.lichnerowicz-lly", Relation::Ge),
            ("eigen.lichnerowicz-be-plus", Relation::Ge),
            ("eigen.lichnerowicz-be-minus", Relation::Ge),
            ("eigen.laplacian-translation-plus", Relation::Eq),
            ("eigen.laplacian-translation-minus", Relation::Eq),
        ] {
            out.push(VerificationReport::skipped(id, rel, NOT_REGULAR));
        }
        return out;
    };
    let d = d as f64;
    let lambda_plus = smallest_nonzero(&a.laplacian_plus, tol).unwrap_or(0.0);
    let lambda_minus = smallest_nonzero(&a.laplacian_minus, tol).unwrap_or(0.0);

    if let Some(((x, y), k)) = a.min_lly() {
        let positive = k > Rational::from_integer(0);
        out.push(
            gated(
                "eigen.lichnerowicz-lly",
                positive,
                lambda_plus,
                Relation::Ge,
                Value::Exact(k * Rational::from_integer(d as i64)),
                tol,
                "minimum edge curvature is not positive",
            )
            .with_witness(Some(Witness::Edge { x, y })),
        );
    }
    for (id, sweep, lambda) in [
        ("eigen.lichnerowicz-be-plus", &a.be_plus, lambda_plus),
        ("eigen.lichnerowicz-be-minus", &a.be_minus, lambda_minus),
    ] {
        if let Some((x, k)) = Analysis::min_be(sweep) {
            out.push(
                gated(id, true, lambda, Relation::Ge, Value::Real(k), tol, "")
                    .with_witness(Some(Witness::Vertex { vertex: x })),
            );
        }
    }
    out.push(gated(
        "eigen.laplacian-translation-plus",
        a.graph.is_connected(),
        lambda_plus,
        Relation::Eq,
        Value::Real(d - second),
        tol,
        "disconnected",
    ));
    out.push(gated(
        "eigen.laplacian-translation-minus",
        !a.bipartite,
        lambda_minus,
        Relation::Eq,
        Value::Real(d + smallest),
        tol,
        "bipartite: d + theta_1 = 0 is the balanced kernel",
    ));
    out
}
