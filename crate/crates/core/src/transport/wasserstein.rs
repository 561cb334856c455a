use num_traits::Zero;

use super::flow::{TransportProblem, TransportSolution};
use super::measure::Measure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{common_denominator, Rational};

/// Coupling of two measures; entries are `(source, target, mass)` with
/// positive mass, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransportPlan {
    pub entries: Vec<(usize, usize, Rational)>,
}

impl TransportPlan {
    pub fn new(mut entries: Vec<(usize, usize, Rational)>) -> TransportPlan {
        entries.retain(|e| !e.2.is_zero());
        entries.sort_by_key(|&(u, v, _)| (u, v));
        TransportPlan { entries }
    }

    pub fn cost(&self, g: &Graph) -> Result<Rational> {
        self.entries.iter().try_fold(Rational::zero(), |acc, &(u, v, m)| {
            let d = g.distance(u, v).ok_or(Error::Disconnected)?;
            Ok(acc + m * Rational::from_integer(d as i64))
        })
    }

    /// Row sums reproduce `source`, column sums reproduce `target`, masses
    /// non-negative, no repeated pair.
    pub fn is_coupling(&self, source: &Measure, target: &Measure) -> bool {
        use std::collections::BTreeMap;
        let mut rows: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut cols: BTreeMap<usize, Rational> = BTreeMap::new();
        for &(u, v, m) in &self.entries {
            if m < Rational::zero() {
                return false;
            }
            *rows.entry(u).or_insert_with(Rational::zero) += m;
            *cols.entry(v).or_insert_with(Rational::zero) += m;
        }
        let distinct = self.entries.windows(2).all(|w| (w[0].0, w[0].1) != (w[1].0, w[1].1));
        let same = |sums: &BTreeMap<usize, Rational>, mu: &Measure| {
            sums.iter().filter(|(_, m)| !m.is_zero()).map(|(&v, &m)| (v, m)).eq(mu.masses().iter().copied())
        };
        distinct && same(&rows, source) && same(&cols, target)
    }
}

/// Exact `W_1` together with an optimal plan and its dual certificate.
#[derive(Debug, Clone)]
pub struct Wasserstein {
    pub value: Rational,
    pub plan: TransportPlan,
    pub problem: TransportProblem,
    pub solution: TransportSolution,
    /// Masses were multiplied by this before solving.
    pub scale: i64,
}

impl Wasserstein {
    pub fn is_certified(&self) -> bool {
        self.solution.certifies(&self.problem)
            && Rational::new(self.solution.total_cost, self.scale) == self.value
    }
}

/// Exact Wasserstein distance under the shortest-path metric of `g`.
pub fn wasserstein(g: &Graph, mu1: impl AsRef<Measure>, mu2: impl AsRef<Measure>) -> Result<Wasserstein> {
    let (mu1, mu2) = (mu1.as_ref(), mu2.as_ref());
    for v in mu1.support().chain(mu2.support()) {
        g.check_vertex(v)?;
    }
    let scale = common_denominator(mu1.masses().iter().chain(mu2.masses()).map(|(_, m)| m));
    let scaled = |mu: &Measure| -> Vec<i64> {
        mu.masses()
            .iter()
            .map(|&(_, m)| (m * Rational::from_integer(scale)).to_integer())
            .collect()
    };
    let sources: Vec<usize> = mu1.support().collect();
    let targets: Vec<usize> = mu2.support().collect();
    let cost = sources
        .iter()
        .map(|&u| {
            targets
                .iter()
                .map(|&v| g.distance(u, v).map(|d| d as i64).ok_or(Error::Disconnected))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let problem = TransportProblem { supply: scaled(mu1), demand: scaled(mu2), cost };
    let solution = problem.solve()?;
    let mut entries = Vec::new();
    for (i, &u) in sources.iter().enumerate() {
        for (j, &v) in targets.iter().enumerate() {
            if solution.flow[i][j] > 0 {
                entries.push((u, v, Rational::new(solution.flow[i][j], scale)));
            }
        }
    }
    Ok(Wasserstein {
        value: Rational::new(solution.total_cost, scale),
        plan: TransportPlan::new(entries),
        problem,
        solution,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family};
    use crate::rational::rat;
    use crate::transport::LocalMeasure;

    #[test]
    fn identical_measures_cost_nothing() {
        let g = generate(&Family::Petersen).unwrap();
        let mu = LocalMeasure::new(&g, 4, rat(1, 3)).unwrap();
        let w = wasserstein(&g, &mu.measure, &mu.measure).unwrap();
        assert_eq!(w.value, rat(0, 1));
        assert!(w.plan.entries.iter().all(|&(u, v, _)| u == v));
        assert!(w.is_certified());
    }

    #[test]
    fn five_cycle_half_lazy() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let mx = LocalMeasure::new(&g, 0, rat(1, 2)).unwrap();
        let my = LocalMeasure::new(&g, 1, rat(1, 2)).unwrap();
        let w = wasserstein(&g, &mx, &my).unwrap();
        assert_eq!(w.value, rat(3, 4));
        assert!(w.plan.is_coupling(&mx.measure, &my.measure));
        assert_eq!(w.plan.cost(&g).unwrap(), w.value);
        assert!(w.is_certified());
    }

    /// Enumerates every coupling on a grid of 1/scale masses and keeps the
    /// cheapest one.
    fn brute_w1(g: &Graph, a: &Measure, b: &Measure, scale: i64) -> Rational {
        let src: Vec<(usize, i64)> = a.masses().iter().map(|&(v, m)| (v, (m * scale).to_integer())).collect();
        let dst: Vec<(usize, i64)> = b.masses().iter().map(|&(v, m)| (v, (m * scale).to_integer())).collect();
        fn go(g: &Graph, src: &[(usize, i64)], dst: &mut Vec<(usize, i64)>, i: usize, left: i64, acc: i64) -> i64 {
            if i == src.len() {
                return if dst.iter().all(|d| d.1 == 0) { acc } else { i64::MAX };
            }
            if left == 0 {
                let next = src.get(i + 1).map_or(0, |s| s.1);
                return go(g, src, dst, i + 1, next, acc);
            }
            let mut best = i64::MAX;
            for j in 0..dst.len() {
                if dst[j].1 > 0 {
                    dst[j].1 -= 1;
                    let c = g.distance(src[i].0, dst[j].0).unwrap() as i64;
                    best = best.min(go(g, src, dst, i, left - 1, acc + c));
                    dst[j].1 += 1;
                }
            }
            best
        }
        let mut dst = dst;
        Rational::new(go(g, &src, &mut dst, 0, src[0].1, 0), scale)
    }

    #[test]
    fn hypercube_quarter_lazy_matches_enumeration() {
        let g = generate(&Family::Hypercube(3)).unwrap();
        let mx = LocalMeasure::new(&g, 0, rat(1, 4)).unwrap();
        let my = LocalMeasure::new(&g, 1, rat(1, 4)).unwrap();
        let w = wasserstein(&g, &mx, &my).unwrap();
        let brute = brute_w1(&g, &mx.measure, &my.measure, 4);
        assert_eq!(w.value, brute);
        // kappa_{1/4} = 1 - W; (d+1)/d kappa_{1/(d+1)} must equal 2/3 on Q3
        assert_eq!(w.value, rat(1, 2));
    }

    #[test]
    fn k4_matches_enumeration() {
        let g = generate(&Family::Complete(4)).unwrap();
        let mx = LocalMeasure::new(&g, 0, rat(1, 2)).unwrap();
        let my = LocalMeasure::new(&g, 1, rat(1, 2)).unwrap();
        let w = wasserstein(&g, &mx, &my).unwrap();
        assert_eq!(w.value, brute_w1(&g, &mx.measure, &my.measure, 6));
        assert_eq!(w.value, rat(1, 3));
    }

    #[test]
    fn disconnected_support_rejected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let a = LocalMeasure::new(&g, 0, rat(1, 2)).unwrap();
        let b = LocalMeasure::new(&g, 2, rat(1, 2)).unwrap();
        assert_eq!(wasserstein(&g, &a, &b).unwrap_err(), Error::Disconnected);
    }
}
