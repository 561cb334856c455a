//! The auxiliary bipartite multigraph of an edge of an amply regular graph,
//! its decomposition into perfect matchings and the transport plan built
//! from the best matching.

use serde::Serialize;

use super::curvature::{lly_curvature, ser_rational};
use super::matching::hopcroft_karp;
use super::measure::LocalMeasure;
use super::wasserstein::TransportPlan;
use crate::arg::{arg_params, ArgParams};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_rational, Rational};

/// A vertex of the multigraph, named by the graph vertex it stands for.
/// `Common(z)` on the right side is the copy `z'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertex", rename_all = "snake_case")]
pub enum HgVertex {
    Exclusive(usize),
    Common(usize),
}

impl HgVertex {
    pub fn vertex(self) -> usize {
        match self {
            HgVertex::Exclusive(v) | HgVertex::Common(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EdgeClass {
    E1,
    E2,
    E3,
    E4,
    E5,
}

/// A left/right pair with its multiplicity. Each pair belongs to exactly one
/// class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HgEdge {
    pub left: usize,
    pub right: usize,
    pub class: EdgeClass,
    pub multiplicity: usize,
}

/// Left side `N_x` then `Delta`, right side `N_y` then `Delta'`, each sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteMultigraph {
    pub left: Vec<HgVertex>,
    pub right: Vec<HgVertex>,
    pub edges: Vec<HgEdge>,
}

impl BipartiteMultigraph {
    pub fn left_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.left.len()];
        for e in &self.edges {
            deg[e.left] += e.multiplicity;
        }
        deg
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.right.len()];
        for e in &self.edges {
            deg[e.right] += e.multiplicity;
        }
        deg
    }

    /// Common degree counting multiplicity, if every vertex has it.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut all = self.left_degrees();
        all.extend(self.right_degrees());
        let k = *all.first()?;
        all.iter().all(|&d| d == k).then_some(k)
    }

    pub fn unit_count(&self) -> usize {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    pub fn class_units(&self, class: EdgeClass) -> usize {
        self.edges.iter().filter(|e| e.class == class).map(|e| e.multiplicity).sum()
    }
}

/// One unit edge per left vertex, in left order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub units: Vec<HgEdge>,
}

impl Matching {
    pub fn class_count(&self, class: EdgeClass) -> usize {
        self.units.iter().filter(|u| u.class == class).count()
    }
}

pub fn build_hg(g: &Graph, x: usize, y: usize) -> Result<BipartiteMultigraph> {
    let params = arg_params(g).ok_or_else(|| Error::Precondition("graph is not amply regular".into()))?;
    build_hg_with(g, &params, x, y)
}

/// Builds the multigraph for edge `xy` given the graph's parameters.
pub fn build_hg_with(g: &Graph, params: &ArgParams, x: usize, y: usize) -> Result<BipartiteMultigraph> {
    if !params.beta_dominates() {
        return Err(Error::Precondition(format!(
            "needs 1 != beta >= alpha, got alpha = {}, beta = {}",
            params.alpha, params.beta
        )));
    }
    let local = g.local_edge_structure(x, y)?;
    let delta = &local.delta_xy;
    let left: Vec<HgVertex> = local
        .n_x
        .iter()
        .map(|&v| HgVertex::Exclusive(v))
        .chain(delta.iter().map(|&z| HgVertex::Common(z)))
        .collect();
    let right: Vec<HgVertex> = local
        .n_y
        .iter()
        .map(|&w| HgVertex::Exclusive(w))
        .chain(delta.iter().map(|&z| HgVertex::Common(z)))
        .collect();

    let mut edges = Vec::new();
    for (l, lv) in left.iter().enumerate() {
        for (r, rv) in right.iter().enumerate() {
            let class = match (*lv, *rv) {
                (HgVertex::Exclusive(v), HgVertex::Exclusive(w)) => g.has_edge(v, w).then_some(EdgeClass::E1),
                (HgVertex::Exclusive(v), HgVertex::Common(z)) => g.has_edge(v, z).then_some(EdgeClass::E2),
                (HgVertex::Common(z), HgVertex::Exclusive(w)) => g.has_edge(z, w).then_some(EdgeClass::E3),
                (HgVertex::Common(zi), HgVertex::Common(zj)) if zi == zj => {
                    (params.beta > params.alpha).then_some(EdgeClass::E5)
                }
                (HgVertex::Common(zi), HgVertex::Common(zj)) => g.has_edge(zi, zj).then_some(EdgeClass::E4),
            };
            if let Some(class) = class {
                let multiplicity = if class == EdgeClass::E5 { params.beta - params.alpha } else { 1 };
                edges.push(HgEdge { left: l, right: r, class, multiplicity });
            }
        }
    }
    let h = BipartiteMultigraph { left, right, edges };
    let expected = params.beta - 1;
    if h.left.len() != h.right.len() || (!h.left.is_empty() && h.regular_degree() != Some(expected)) {
        return Err(Error::Internal(format!("multigraph of edge {x}-{y} is not {expected}-regular")));
    }
    Ok(h)
}

/// Splits a `k`-regular bipartite multigraph into `k` perfect matchings by
/// repeatedly matching on the remaining multiplicities.
pub fn konig_decompose(h: &BipartiteMultigraph) -> Result<Vec<Matching>> {
    if h.left.len() != h.right.len() {
        return Err(Error::Precondition("sides differ in size".into()));
    }
    if h.left.is_empty() {
        return Ok(Vec::new());
    }
    let k = h
        .regular_degree()
        .ok_or_else(|| Error::Precondition("multigraph is not regular".into()))?;
    let mut remaining: Vec<usize> = h.edges.iter().map(|e| e.multiplicity).collect();
    let mut matchings = Vec::with_capacity(k);
    for _ in 0..k {
        let mut adjacency = vec![Vec::new(); h.left.len()];
        let mut index = vec![vec![usize::MAX; h.right.len()]; h.left.len()];
        for (i, e) in h.edges.iter().enumerate() {
            if remaining[i] > 0 {
                adjacency[e.left].push(e.right);
                index[e.left][e.right] = i;
            }
        }
        let matched = hopcroft_karp(&adjacency, h.right.len());
        let mut units = Vec::with_capacity(h.left.len());
        for (l, r) in matched.iter().enumerate() {
            let r = r.ok_or_else(|| Error::Internal("regular bipartite multigraph without perfect matching".into()))?;
            let i = index[l][r];
            remaining[i] -= 1;
            units.push(HgEdge { multiplicity: 1, ..h.edges[i] });
        }
        matchings.push(Matching { units });
    }
    debug_assert!(remaining.iter().all(|&m| m == 0));
    Ok(matchings)
}

/// Curvature lower bound for an edge, backed by an explicit transport plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedBound {
    pub x: usize,
    pub y: usize,
    /// `(2 + ceil(alpha (beta - alpha) / (beta - 1))) / d`.
    #[serde(serialize_with = "ser_rational")]
    pub bound: Rational,
    /// `(d + 1)/d (1 - cost(plan))`.
    #[serde(serialize_with = "ser_rational")]
    pub plan_bound: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub curvature: Rational,
    pub e5_units: usize,
    pub matching: Matching,
    #[serde(skip)]
    pub plan: TransportPlan,
}

pub fn certified_lower_bound(g: &Graph, x: usize, y: usize) -> Result<CertifiedBound> {
    let params = arg_params(g).ok_or_else(|| Error::Precondition("graph is not amply regular".into()))?;
    certified_lower_bound_with(g, &params, x, y)
}

pub fn certified_lower_bound_with(g: &Graph, params: &ArgParams, x: usize, y: usize) -> Result<CertifiedBound> {
    let h = build_hg_with(g, params, x, y)?;
    let gain = params.matching_gain().expect("checked by build_hg_with");
    let d = params.d as i64;
    let bound = Rational::new(2 + gain, d);

    let matchings = konig_decompose(&h)?;
    let mut best: Option<Matching> = None;
    for m in matchings {
        if best.as_ref().is_none_or(|b| m.class_count(EdgeClass::E5) > b.class_count(EdgeClass::E5)) {
            best = Some(m);
        }
    }
    let matching = best.unwrap_or(Matching { units: Vec::new() });
    let e5_units = matching.class_count(EdgeClass::E5);
    if (e5_units as i64) < gain {
        return Err(Error::Internal(format!("best matching has {e5_units} E5 units, fewer than {gain}")));
    }

    let share = Rational::new(1, d + 1);
    let mut entries: Vec<(usize, usize, Rational)> = matching
        .units
        .iter()
        .map(|u| (h.left[u.left].vertex(), h.right[u.right].vertex(), share))
        .collect();
    entries.push((x, x, share));
    entries.push((y, y, share));
    let plan = TransportPlan::new(entries);
    let mx = LocalMeasure::new(g, x, share)?;
    let my = LocalMeasure::new(g, y, share)?;
    if !plan.is_coupling(&mx.measure, &my.measure) {
        return Err(Error::Internal(format!("plan for edge {x}-{y} is not a coupling")));
    }
    let plan_bound = Rational::new(d + 1, d) * (Rational::from_integer(1) - plan.cost(g)?);
    let curvature = lly_curvature(g, x, y)?;
    if plan_bound < bound || curvature < plan_bound {
        return Err(Error::Internal(format!(
            "edge {x}-{y}: curvature {}, plan bound {}, bound {} out of order",
            format_rational(&curvature),
            format_rational(&plan_bound),
            format_rational(&bound)
        )));
    }
    Ok(CertifiedBound { x, y, bound, plan_bound, curvature, e5_units, matching, plan })
}
