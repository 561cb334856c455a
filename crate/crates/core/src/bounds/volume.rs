use serde::Serialize;

use super::report::{HypothesisStatus, Relation, Value, VerificationReport, Witness};
use super::{Analysis, NOT_AMPLY, NOT_REGULAR};
use crate::graph::Graph;
use crate::rational::Rational;

/// Sphere sizes around a center with the in/out degree of every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumeProfile {
    pub center: usize,
    pub sphere_sizes: Vec<usize>,
    /// Distance from the center.
    pub level: Vec<usize>,
    /// Neighbours one sphere closer (`d^{x,-}`).
    pub in_degree: Vec<usize>,
    /// Neighbours one sphere further (`d^{x,+}`).
    pub out_degree: Vec<usize>,
}

impl VolumeProfile {
    /// Requires a connected graph.
    pub fn new(g: &Graph, center: usize) -> VolumeProfile {
        let level: Vec<usize> = g
            .bfs_distances(center)
            .into_iter()
            .map(|d| d.expect("connected graph"))
            .collect();
        let sphere_sizes = g.spheres(center).sizes();
        let count = |v: usize, target: Option<usize>| g.neighbors(v).iter().filter(|&&u| Some(level[u]) == target).count();
        let n = g.vertex_count();
        let in_degree = (0..n).map(|v| count(v, level[v].checked_sub(1))).collect();
        let out_degree = (0..n).map(|v| count(v, Some(level[v] + 1))).collect();
        VolumeProfile { center, sphere_sizes, level, in_degree, out_degree }
    }

    pub fn sphere(&self, i: usize) -> usize {
        self.sphere_sizes.get(i).copied().unwrap_or(0)
    }

    /// Neighbours on the same sphere.
    pub fn within_degree(&self, g: &Graph, v: usize) -> usize {
        g.degree(v) - self.in_degree[v] - self.out_degree[v]
    }
}

/// Largest `|S_{i+1}| / |S_i|` over centers with `S_i` nonempty.
fn worst_ratio(profiles: &[VolumeProfile], i: usize) -> Option<(Rational, usize)> {
    profiles
        .iter()
        .filter(|p| p.sphere(i) > 0)
        .map(|p| (Rational::new(p.sphere(i + 1) as i64, p.sphere(i) as i64), p.center))
        .fold(None, |best, cur| match best {
            Some((r, _)) if r >= cur.0 => best,
            _ => Some(cur),
        })
}

fn level_report(id: &'static str, ratio: Rational, center: usize, i: usize, rhs: Rational, tol: f64) -> VerificationReport {
    VerificationReport::evaluate(id, HypothesisStatus::Satisfied, Value::Exact(ratio), Relation::Le, Value::Exact(rhs), tol)
        .with_witness(Some(Witness::Level { center, level: i }))
}

pub fn check_volume_growth(a: &Analysis) -> Vec<VerificationReport> {
    let tol = a.options.tolerance;
    let g = a.graph;
    let ids = ["volume.growth", "volume.growth-lly", "volume.in-degree"];
    let mut out = Vec::new();
    let Some(p) = a.params() else {
        out.extend(ids.iter().map(|id| VerificationReport::skipped(id, Relation::Le, NOT_AMPLY)));
        out.push(pairwise(a));
        return out;
    };
    let profiles: Vec<VolumeProfile> = (0..g.vertex_count()).map(|x| VolumeProfile::new(g, x)).collect();
    let (d, alpha, beta) = (p.d as i64, p.alpha as i64, p.beta as i64);
    let one = Rational::from_integer(1);

    match p.matching_gain() {
        Some(gain) => {
            for i in 1..=a.diameter {
                let Some((ratio, center)) = worst_ratio(&profiles, i) else { continue };
                let i_r = Rational::from_integer(i as i64);
                let out_bound = i_r * (one + Rational::new(gain, 2));
                let rhs = (Rational::from_integer(d) - out_bound.max(Rational::from_integer(alpha + 1)))
                    / Rational::from_integer(beta + i as i64 - 1);
                out.push(level_report(ids[0], ratio, center, i, rhs, tol));
            }
            for i in 1..a.diameter {
                // w in S_{i+1} with the smallest in-degree over all centers
                let worst = profiles
                    .iter()
                    .flat_map(|pr| (0..g.vertex_count()).filter(move |&w| pr.level[w] == i + 1).map(move |w| (pr.in_degree[w], pr.center, w)))
                    .min();
                if let Some((deg, center, vertex)) = worst {
                    out.push(
                        VerificationReport::evaluate(
                            ids[2],
                            HypothesisStatus::Satisfied,
                            Value::int(deg as i64),
                            Relation::Ge,
                            Value::int(beta + i as i64 - 1),
                            tol,
                        )
                        .with_witness(Some(Witness::InDegree { center, level: i + 1, vertex, in_degree: deg })),
                    );
                }
            }
        }
        None => {
            out.push(VerificationReport::skipped(ids[0], Relation::Le, "needs 1 != beta >= alpha"));
            out.push(VerificationReport::skipped(ids[2], Relation::Ge, "needs 1 != beta >= alpha"));
        }
    }

    match a.min_lly() {
        Some((_, k)) if k > Rational::from_integer(0) => {
            for i in 1..=a.diameter {
                let Some((ratio, center)) = worst_ratio(&profiles, i) else { continue };
                let curv = Rational::from_integer(i as i64) * k * Rational::new(d, 2);
                let rhs = (Rational::from_integer(d) - curv.max(Rational::from_integer(alpha + 1))) / Rational::from_integer(beta);
                out.push(level_report(ids[1], ratio, center, i, rhs, tol));
            }
        }
        _ => out.push(VerificationReport::skipped(ids[1], Relation::Le, "minimum edge curvature is not positive")),
    }
    out.push(pairwise(a));
    out
}

/// `kappa(x, y) <= 1 + (d_y^{x,-} - d_y^{x,+}) / d_y` on every oriented edge;
/// reports the edge with the least slack.
fn pairwise(a: &Analysis) -> VerificationReport {
    const ID: &str = "volume.pairwise-adjacent";
    let Some(lly) = &a.lly else {
        return VerificationReport::skipped(ID, Relation::Le, NOT_REGULAR);
    };
    let g = a.graph;
    let mut worst: Option<(Rational, Rational, usize, usize)> = None;
    for &((u, v), k) in lly {
        for (x, y) in [(u, v), (v, u)] {
            let common = g.common_neighbor_count(x, y) as i64;
            let dy = g.degree(y) as i64;
            // in-degree 1 (x itself), out-degree d_y - 1 - common
            let bound = Rational::from_integer(1) + Rational::new(1 - (dy - 1 - common), dy);
            if worst.is_none_or(|(wk, wb, _, _)| bound - k < wb - wk) {
                worst = Some((k, bound, x, y));
            }
        }
    }
    match worst {
        Some((k, bound, x, y)) => VerificationReport::evaluate(
            ID,
            HypothesisStatus::Satisfied,
            Value::Exact(k),
            Relation::Le,
            Value::Exact(bound),
            a.options.tolerance,
        )
        .with_witness(Some(Witness::Edge { x, y })),
        None => VerificationReport::skipped(ID, Relation::Le, "no edges"),
    }
}
