//! Amply regular graph detection.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{ceil_div, Rational};

/// Parameters `(n, d, alpha, beta)` of an amply regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArgParams {
    pub n: usize,
    pub d: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl ArgParams {
    /// `1 != beta >= alpha`.
    pub fn beta_dominates(&self) -> bool {
        self.beta != 1 && self.beta >= self.alpha
    }

    /// `ceil(alpha (beta - alpha) / (beta - 1))`; requires `beta > 1` and
    /// `beta >= alpha`.
    pub fn matching_gain(&self) -> Option<i64> {
        if !self.beta_dominates() {
            return None;
        }
        let (a, b) = (self.alpha as i64, self.beta as i64);
        Some(ceil_div(a * (b - a), b - 1))
    }

    /// `max{alpha / 2, ceil(alpha (beta - alpha) / (beta - 1))}`.
    pub fn curvature_gain(&self) -> Option<Rational> {
        let gain = self.matching_gain()?;
        Some(crate::rational::max(
            Rational::new(self.alpha as i64, 2),
            Rational::from_integer(gain),
        ))
    }

    /// `2d(beta - 2)`, the left side of the closed-form sign conditions.
    pub fn two_d_beta_minus_two(&self) -> i64 {
        2 * self.d as i64 * (self.beta as i64 - 2)
    }
}

/// Why a connected, non-complete graph is not amply regular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArgViolation {
    /// Vertex degree differs from that of vertex 0.
    Degree { vertex: usize, degree: usize, expected: usize },
    /// Adjacent pair with a different number of common neighbours.
    Adjacent { u: usize, v: usize, common: usize, expected: usize },
    /// Distance-2 pair with a different number of common neighbours.
    DistanceTwo { u: usize, v: usize, common: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ArgVerdict {
    Amply(ArgParams),
    NotAmply(ArgViolation),
}

/// Exact detection over all pairs in lexicographic order.
pub fn detect_arg(g: &Graph) -> Result<ArgVerdict> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Empty);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if (0..n).all(|v| g.degree(v) == n - 1) {
        return Err(Error::Complete);
    }
    let d = g.degree(0);
    if let Some(vertex) = (0..n).find(|&v| g.degree(v) != d) {
        return Ok(ArgVerdict::NotAmply(ArgViolation::Degree {
            vertex,
            degree: g.degree(vertex),
            expected: d,
        }));
    }
    let mut alpha = None;
    let mut beta = None;
    for u in 0..n {
        for v in u + 1..n {
            let common = g.common_neighbor_count(u, v);
            match g.distance(u, v) {
                Some(1) => match alpha {
                    None => alpha = Some(common),
                    Some(a) if a != common => {
                        return Ok(ArgVerdict::NotAmply(ArgViolation::Adjacent { u, v, common, expected: a }))
                    }
                    _ => {}
                },
                Some(2) => match beta {
                    None => beta = Some(common),
                    Some(b) if b != common => {
                        return Ok(ArgVerdict::NotAmply(ArgViolation::DistanceTwo {
                            u,
                            v,
                            common,
                            expected: b,
                        }))
                    }
                    _ => {}
                },
                _ => {}
            }
        }
    }
    // a connected regular non-complete graph has a distance-2 pair
    let beta = beta.ok_or(Error::Complete)?;
    Ok(ArgVerdict::Amply(ArgParams {
        n,
        d,
        alpha: alpha.unwrap_or(0),
        beta,
    }))
}

/// Convenience wrapper returning the parameters or `None`.
pub fn arg_params(g: &Graph) -> Option<ArgParams> {
    match detect_arg(g) {
        Ok(ArgVerdict::Amply(p)) => Some(p),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family};

    fn params(fam: Family) -> ArgParams {
        match detect_arg(&generate(&fam).unwrap()).unwrap() {
            ArgVerdict::Amply(p) => p,
            other => panic!("{fam}: {other:?}"),
        }
    }

    fn p(n: usize, d: usize, alpha: usize, beta: usize) -> ArgParams {
        ArgParams { n, d, alpha, beta }
    }

    #[test]
    fn corpus_parameters() {
        assert_eq!(params(Family::Petersen), p(10, 3, 0, 1));
        assert_eq!(params(Family::Cycle(4)), p(4, 2, 0, 2));
        assert_eq!(params(Family::Shrikhande), p(16, 6, 2, 2));
        assert_eq!(params(Family::Rook(4)), p(16, 6, 2, 2));
        assert_eq!(params(Family::Icosahedron), p(12, 5, 2, 2));
        assert_eq!(params(Family::Hamming(2, 3)), p(9, 4, 1, 2));
        assert_eq!(params(Family::CompleteBipartite(3, 3)), p(6, 3, 0, 3));
        assert_eq!(params(Family::Johnson(8, 4)), p(70, 16, 6, 4));
        assert_eq!(params(Family::Cycle(5)), p(5, 2, 0, 1));
        for d in 2..=8 {
            assert_eq!(params(Family::Hypercube(d)), p(1 << d, d, 0, 2));
        }
    }

    #[test]
    fn rejects_complete_and_disconnected() {
        assert_eq!(detect_arg(&generate(&Family::Complete(5)).unwrap()), Err(Error::Complete));
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(detect_arg(&g), Err(Error::Disconnected));
    }

    #[test]
    fn reports_first_violating_pair() {
        let path = generate(&Family::Path(4)).unwrap();
        assert_eq!(
            detect_arg(&path).unwrap(),
            ArgVerdict::NotAmply(ArgViolation::Degree { vertex: 1, degree: 2, expected: 1 })
        );
        // prism: triangles 0-1-2, 3-4-5 plus matching; edges 0-1 (1 common) vs 0-3 (0 common)
        let prism = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(
            detect_arg(&prism).unwrap(),
            ArgVerdict::NotAmply(ArgViolation::Adjacent { u: 0, v: 3, common: 0, expected: 1 })
        );
    }

    /// Exhaustive recount over all pairs via neighbour-set intersection.
    fn recount(g: &Graph) -> (Option<usize>, Option<usize>, bool) {
        let n = g.vertex_count();
        let (mut alphas, mut betas) = (Vec::new(), Vec::new());
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let c = (0..n).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).count();
                if g.has_edge(u, v) {
                    alphas.push(c);
                } else if c > 0 {
                    betas.push(c);
                }
            }
        }
        let uniform = |xs: &[usize]| xs.iter().all(|&x| x == xs[0]);
        (alphas.first().copied(), betas.first().copied(), uniform(&alphas) && uniform(&betas))
    }

    #[test]
    fn detection_matches_recount() {
        let families = [
            Family::Petersen,
            Family::Shrikhande,
            Family::Rook(4),
            Family::Icosahedron,
            Family::Hamming(2, 3),
            Family::Hamming(3, 3),
            Family::Johnson(6, 3),
            Family::Johnson(7, 2),
            Family::CompleteBipartite(4, 4),
            Family::Hypercube(5),
            Family::Cycle(6),
        ];
        for fam in families {
            let g = generate(&fam).unwrap();
            let found = params(fam);
            let (a, b, uniform) = recount(&g);
            assert!(uniform, "{fam}");
            assert_eq!((Some(found.alpha), Some(found.beta)), (a, b), "{fam}");
            assert!(found.d >= found.alpha + 2);
            for x in 0..g.vertex_count() {
                assert_eq!(g.local_graph(x).graph.regular_degree(), Some(found.alpha), "{fam} at {x}");
            }
        }
    }

    #[test]
    fn gains() {
        let q = p(8, 3, 0, 2);
        assert_eq!(q.matching_gain(), Some(0));
        let h = p(9, 4, 1, 2);
        assert_eq!(h.matching_gain(), Some(1));
        let pet = p(10, 3, 0, 1);
        assert_eq!(pet.matching_gain(), None);
        let sh = p(16, 6, 2, 2);
        assert_eq!(sh.curvature_gain(), Some(Rational::from_integer(1)));
    }
}
