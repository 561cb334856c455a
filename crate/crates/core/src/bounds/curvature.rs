use rayon::prelude::*;

use super::report::{HypothesisStatus, Relation, Value, VerificationReport, Witness};
use super::{Analysis, NOT_AMPLY, NOT_REGULAR};
use crate::bakry_emery::{closed_form_minus, closed_form_plus, determined_curvature_plus, ClosedFormInputs};
use crate::rational::Rational;
use crate::transport::{certified_lower_bound_with, matching_characterization, MatchingCharacterization};

pub fn check_curvature(a: &Analysis) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let Some(lly) = &a.lly else {
        for (id, rel) in [
            ("curvature.lly-upper", Relation::Le),
            ("curvature.matching-equivalence", Relation::Eq),
        ] {
            out.push(VerificationReport::skipped(id, rel, NOT_REGULAR));
        }
        out.extend(arg_reports(a));
        return out;
    };
    let g = a.graph;
    let tol = a.options.tolerance;

    let upper = lly
        .iter()
        .map(|&((x, y), k)| (k, Rational::new(2 + g.common_neighbor_count(x, y) as i64, g.degree(x) as i64), x, y))
        .min_by(|p, q| (p.1 - p.0).cmp(&(q.1 - q.0)));
    if let Some((k, bound, x, y)) = upper {
        out.push(
            VerificationReport::evaluate("curvature.lly-upper", HypothesisStatus::Satisfied, Value::Exact(k), Relation::Le, Value::Exact(bound), tol)
                .with_witness(Some(Witness::Edge { x, y })),
        );
    }

    let results: Vec<_> = lly.par_iter().map(|&((x, y), _)| ((x, y), matching_characterization(g, x, y))).collect();
    out.push(equivalence_report(&results, tol));
    out.extend(arg_reports(a));
    out
}

fn equivalence_report(results: &[((usize, usize), crate::Result<MatchingCharacterization>)], tol: f64) -> VerificationReport {
    let agree = results.iter().filter(|(_, r)| r.is_ok()).count();
    let report = VerificationReport::evaluate(
        "curvature.matching-equivalence",
        HypothesisStatus::Satisfied,
        Value::int(agree as i64),
        Relation::Eq,
        Value::int(results.len() as i64),
        tol,
    );
    // first disagreement, else the first edge without a perfect matching, else the first edge
    if let Some(((x, y), Err(e))) = results.iter().find(|(_, r)| r.is_err()) {
        return report.with_witness(Some(Witness::Edge { x: *x, y: *y })).with_note(e.to_string());
    }
    let chars: Vec<&MatchingCharacterization> = results.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    let pick = chars.iter().find(|c| !c.attains_max).or(chars.first());
    match pick {
        Some(c) => report.with_witness(Some(Witness::Matching { x: c.x, y: c.y, outcome: c.matching.clone() })),
        None => report,
    }
}

fn arg_reports(a: &Analysis) -> Vec<VerificationReport> {
    let tol = a.options.tolerance;
    let g = a.graph;
    let ids = [
        ("curvature.lly-lower-certified", Relation::Ge),
        ("curvature.be-closed-form-plus", Relation::Eq),
        ("curvature.be-closed-form-minus", Relation::Eq),
        ("curvature.be-determined", Relation::Eq),
    ];
    let Some(p) = a.params() else {
        return ids.iter().map(|&(id, rel)| VerificationReport::skipped(id, rel, NOT_AMPLY)).collect();
    };
    let mut out = Vec::new();

    match p.matching_gain() {
        Some(gain) => {
            let certs: Vec<_> = g.edges().collect::<Vec<_>>().par_iter().map(|&(x, y)| certified_lower_bound_with(g, &p, x, y)).collect();
            let mut problem = None;
            let mut worst: Option<(Rational, Rational, usize, usize)> = None;
            for (c, (x, y)) in certs.iter().zip(g.edges()) {
                match c {
                    Err(e) => {
                        problem.get_or_insert_with(|| (x, y, e.to_string()));
                    }
                    Ok(c) => {
                        if c.plan_bound < c.bound || (c.e5_units as i64) < gain {
                            problem.get_or_insert_with(|| (x, y, format!("certificate too weak: plan {} e5 {}", c.plan_bound, c.e5_units)));
                        }
                        if worst.is_none_or(|w| c.curvature - c.bound < w.0 - w.1) {
                            worst = Some((c.curvature, c.bound, x, y));
                        }
                    }
                }
            }
            let report = match (problem, worst) {
                (None, Some((k, bound, x, y))) => {
                    VerificationReport::evaluate(ids[0].0, HypothesisStatus::Satisfied, Value::Exact(k), Relation::Ge, Value::Exact(bound), tol)
                        .with_witness(Some(Witness::Edge { x, y }))
                }
                (Some((x, y, msg)), _) => VerificationReport {
                    passed: Some(false),
                    hypothesis_status: HypothesisStatus::Satisfied,
                    ..VerificationReport::skipped(ids[0].0, Relation::Ge, msg)
                }
                .with_witness(Some(Witness::Edge { x, y })),
                (None, None) => VerificationReport::skipped(ids[0].0, Relation::Ge, "no edges"),
            };
            out.push(report);
        }
        None => out.push(VerificationReport::skipped(ids[0].0, Relation::Ge, "needs 1 != beta >= alpha")),
    }

    let inputs: Vec<crate::Result<ClosedFormInputs>> = (0..g.vertex_count()).into_par_iter().map(|x| ClosedFormInputs::new(g, p, x)).collect();
    if let Some(Err(e)) = inputs.iter().find(|i| i.is_err()) {
        let msg = e.to_string();
        for &(id, rel) in &ids[1..3] {
            out.push(VerificationReport { passed: Some(false), hypothesis_status: HypothesisStatus::Satisfied, ..VerificationReport::skipped(id, rel, msg.clone()) });
        }
    } else {
        let inputs: Vec<&ClosedFormInputs> = inputs.iter().map(|i| i.as_ref().expect("checked")).collect();
        for (id, sweep, form) in [
            (ids[1].0, &a.be_plus, closed_form_plus as fn(&ClosedFormInputs) -> f64),
            (ids[2].0, &a.be_minus, closed_form_minus as fn(&ClosedFormInputs) -> f64),
        ] {
            let sweep = sweep.as_ref().expect("amply regular graphs are regular");
            let (x, k, c) = sweep
                .iter()
                .enumerate()
                .map(|(x, &k)| (x, k, form(inputs[x])))
                .max_by(|p, q| (p.1 - p.2).abs().total_cmp(&(q.1 - q.2).abs()))
                .expect("nonempty");
            out.push(
                VerificationReport::evaluate(id, HypothesisStatus::Satisfied, Value::Real(k), Relation::Eq, Value::Real(c), tol)
                    .with_witness(Some(Witness::Vertex { vertex: x })),
            );
        }
    }

    match (determined_curvature_plus(&p), &a.be_plus) {
        (Some(exact), Some(sweep)) => {
            let target = crate::rational::to_f64(&exact);
            let (x, k) = sweep
                .iter()
                .copied()
                .enumerate()
                .max_by(|p, q| (p.1 - target).abs().total_cmp(&(q.1 - target).abs()))
                .expect("nonempty");
            out.push(
                VerificationReport::evaluate(ids[3].0, HypothesisStatus::Satisfied, Value::Real(k), Relation::Eq, Value::Exact(exact), tol)
                    .with_witness(Some(Witness::Vertex { vertex: x })),
            );
        }
        _ => out.push(VerificationReport::skipped(
            ids[3].0,
            Relation::Eq,
            "needs beta = 1, or 1 != beta >= alpha with (alpha, beta) != (2, 2)",
        )),
    }
    out
}

fn flag(id: &'static str, cond: bool, lhs: i64, rel: Relation, rhs: i64, tol: f64) -> VerificationReport {
    let status = if cond { HypothesisStatus::Satisfied } else { HypothesisStatus::Violated };
    VerificationReport::evaluate(id, status, Value::int(lhs), rel, Value::int(rhs), tol)
}

/// Finiteness condition `alpha <= 6 beta - 9` and the forced-matching
/// condition `beta > alpha^2 - alpha + 1`; the latter asserts a perfect
/// matching on every edge when it holds.
pub fn check_finiteness_hypothesis(a: &Analysis) -> Vec<VerificationReport> {
    let Some(p) = a.params() else {
        return vec![
            VerificationReport::skipped("finiteness.alpha-6beta-9", Relation::Le, NOT_AMPLY),
            VerificationReport::skipped("matching.forced", Relation::Eq, NOT_AMPLY),
        ];
    };
    let tol = a.options.tolerance;
    let (alpha, beta) = (p.alpha as i64, p.beta as i64);
    let finite = alpha <= 6 * beta - 9;
    let mut out = vec![flag("finiteness.alpha-6beta-9", finite, alpha, Relation::Le, 6 * beta - 9, tol)
        .with_note(if finite { "finiteness hypothesis holds" } else { "finiteness hypothesis fails" })];

    if beta > alpha * alpha - alpha + 1 {
        let edges: Vec<(usize, usize)> = a.graph.edges().collect();
        let results: Vec<_> = edges.par_iter().map(|&(x, y)| matching_characterization(a.graph, x, y)).collect();
        let perfect = results.iter().filter(|r| matches!(r, Ok(c) if c.matching.is_perfect())).count();
        let mut report = flag("matching.forced", true, perfect as i64, Relation::Eq, edges.len() as i64, tol);
        let bad = edges.iter().zip(&results).find(|(_, r)| !matches!(r, Ok(c) if c.matching.is_perfect()));
        if let Some((&(x, y), r)) = bad {
            report = match r {
                Ok(c) => report.with_witness(Some(Witness::Matching { x, y, outcome: c.matching.clone() })),
                Err(e) => report.with_witness(Some(Witness::Edge { x, y })).with_note(e.to_string()),
            };
        }
        out.push(report);
    } else {
        out.push(VerificationReport::skipped("matching.forced", Relation::Eq, "needs beta > alpha^2 - alpha + 1"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::AnalysisOptions;
    use crate::generators::{generate, Family};

    fn run(f: Family) -> Vec<VerificationReport> {
        let g = generate(&f).unwrap();
        let a = Analysis::new(&g, AnalysisOptions::default()).unwrap();
        let mut r = check_curvature(&a);
        r.extend(check_finiteness_hypothesis(&a));
        r
    }

    fn find<'a>(r: &'a [VerificationReport], id: &str) -> &'a VerificationReport {
        r.iter().find(|x| x.bound_id == id).unwrap()
    }

    #[test]
    fn hypercube_all_pass() {
        let r = run(Family::Hypercube(4));
        assert!(r.iter().all(|x| !x.failed()), "{r:#?}");
        assert_eq!(find(&r, "matching.forced").passed, Some(true));
        assert_eq!(find(&r, "curvature.be-determined").passed, Some(true));
        assert_eq!(find(&r, "curvature.lly-lower-certified").passed, Some(true));
    }

    #[test]
    fn petersen_flags() {
        let r = run(Family::Petersen);
        assert!(r.iter().all(|x| !x.failed()));
        assert_eq!(find(&r, "finiteness.alpha-6beta-9").hypothesis_status, HypothesisStatus::Violated);
        assert_eq!(find(&r, "curvature.be-closed-form-minus").passed, Some(true));
        let det = find(&r, "curvature.be-determined");
        assert_eq!(det.rhs, Some(Value::int(-1)));
    }

    #[test]
    fn shrikhande_flags() {
        let r = run(Family::Shrikhande);
        assert_eq!(find(&r, "finiteness.alpha-6beta-9").hypothesis_status, HypothesisStatus::Satisfied);
        assert_eq!(find(&r, "matching.forced").hypothesis_status, HypothesisStatus::Violated);
    }
}
