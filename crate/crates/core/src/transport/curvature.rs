use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::matching::{perfect_matching, MatchingOutcome};
use super::measure::LocalMeasure;
use super::wasserstein::{wasserstein, Wasserstein};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_rational, Rational};

/// `W_1(mu_x^p, mu_y^p)` with its plan and certificate.
pub fn local_wasserstein(g: &Graph, x: usize, y: usize, p: Rational) -> Result<Wasserstein> {
    let mx = LocalMeasure::new(g, x, p)?;
    let my = LocalMeasure::new(g, y, p)?;
    wasserstein(g, &mx, &my)
}

/// `kappa_p(x, y) = 1 - W_1(mu_x^p, mu_y^p) / d(x, y)`.
pub fn ollivier_p(g: &Graph, x: usize, y: usize, p: Rational) -> Result<Rational> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::Precondition("curvature needs two distinct vertices".into()));
    }
    let dist = g.distance(x, y).ok_or(Error::Disconnected)?;
    let w = local_wasserstein(g, x, y, p)?;
    Ok(Rational::one() - w.value / Rational::from_integer(dist as i64))
}

/// Lin-Lu-Yau curvature of an edge of a regular graph, computed as
/// `2 kappa_{1/2}` and cross-checked against `(d+1)/d kappa_{1/(d+1)}`.
pub fn lly_curvature(g: &Graph, x: usize, y: usize) -> Result<Rational> {
    let d = g.require_regular()? as i64;
    g.check_edge(x, y)?;
    let half = Rational::from_integer(2) * ollivier_p(g, x, y, Rational::new(1, 2))?;
    let lazy = Rational::new(d + 1, d) * ollivier_p(g, x, y, Rational::new(1, d + 1))?;
    if half != lazy {
        return Err(Error::Internal(format!(
            "limit-free forms disagree on {x}-{y}: {} vs {}",
            format_rational(&half),
            format_rational(&lazy)
        )));
    }
    Ok(half)
}

/// `kappa_LLY` on every edge, in [`Graph::edges`] order.
pub fn lly_sweep(g: &Graph) -> Result<Vec<((usize, usize), Rational)>> {
    g.require_regular()?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    edges
        .par_iter()
        .map(|&(x, y)| lly_curvature(g, x, y).map(|k| ((x, y), k)))
        .collect()
}

/// Answer of the curvature-maximality / local perfect matching equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingCharacterization {
    pub x: usize,
    pub y: usize,
    #[serde(serialize_with = "ser_rational")]
    pub curvature: Rational,
    /// `(2 + |common neighbours|) / d`.
    #[serde(serialize_with = "ser_rational")]
    pub upper_bound: Rational,
    pub attains_max: bool,
    /// Matching between the exclusive neighbourhoods, in global vertex ids.
    pub matching: MatchingOutcome,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Decides curvature maximality and perfect-matching existence
/// independently; errors if they disagree.
pub fn matching_characterization(g: &Graph, x: usize, y: usize) -> Result<MatchingCharacterization> {
    let d = g.require_regular()? as i64;
    let local = g.local_edge_structure(x, y)?;
    let curvature = lly_curvature(g, x, y)?;
    let upper_bound = Rational::new(2 + local.delta_xy.len() as i64, d);
    if curvature > upper_bound {
        return Err(Error::Internal(format!("curvature on {x}-{y} exceeds (2 + |delta|)/d")));
    }
    let adjacency: Vec<Vec<usize>> = local
        .n_x
        .iter()
        .map(|&v| (0..local.n_y.len()).filter(|&j| g.has_edge(v, local.n_y[j])).collect())
        .collect();
    let outcome = match perfect_matching(&adjacency, local.n_y.len()) {
        MatchingOutcome::Perfect { pairs } => MatchingOutcome::Perfect {
            pairs: pairs.into_iter().map(|(l, r)| (local.n_x[l], local.n_y[r])).collect(),
        },
        MatchingOutcome::HallViolator { left, neighbors } => MatchingOutcome::HallViolator {
            left: left.into_iter().map(|l| local.n_x[l]).collect(),
            neighbors: neighbors.into_iter().map(|r| local.n_y[r]).collect(),
        },
        mismatch => mismatch,
    };
    let attains_max = curvature == upper_bound;
    if attains_max != outcome.is_perfect() {
        return Err(Error::Internal(format!(
            "edge {x}-{y}: curvature maximality ({attains_max}) disagrees with matching existence"
        )));
    }
    Ok(MatchingCharacterization { x, y, curvature, upper_bound, attains_max, matching: outcome })
}
