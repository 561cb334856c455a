//! Integer min-cost transportation by successive shortest paths with
//! Johnson potentials, plus a Kantorovich dual certificate.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
}

/// Residual network with paired arcs (`2k` forward, `2k + 1` reverse).
#[derive(Debug, Clone)]
struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network { arcs: Vec::new(), out: vec![Vec::new(); n] }
    }

    fn add(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    /// Sends `amount` units from `s` to `t` at minimum cost. Arc costs must
    /// be non-negative initially.
    fn min_cost_flow(&mut self, s: usize, t: usize, amount: i64) -> Result<i64> {
        let n = self.out.len();
        let mut potential = vec![0i64; n];
        let (mut sent, mut total) = (0i64, 0i64);
        while sent < amount {
            let mut dist = vec![INF; n];
            let mut parent = vec![usize::MAX; n];
            let mut heap = BinaryHeap::new();
            dist[s] = 0;
            heap.push(Reverse((0i64, s)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &id in &self.out[u] {
                    let arc = &self.arcs[id];
                    if arc.cap == 0 {
                        continue;
                    }
                    let nd = d + arc.cost + potential[u] - potential[arc.to];
                    if nd < dist[arc.to] {
                        dist[arc.to] = nd;
                        parent[arc.to] = id;
                        heap.push(Reverse((nd, arc.to)));
                    }
                }
            }
            if dist[t] == INF {
                return Err(Error::Internal("transport network cannot carry all mass".into()));
            }
            for v in 0..n {
                if dist[v] < INF {
                    potential[v] += dist[v];
                }
            }
            let mut push = amount - sent;
            let mut v = t;
            while v != s {
                let id = parent[v];
                push = push.min(self.arcs[id].cap);
                v = self.arcs[id ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let id = parent[v];
                self.arcs[id].cap -= push;
                self.arcs[id ^ 1].cap += push;
                total += push * self.arcs[id].cost;
                v = self.arcs[id ^ 1].to;
            }
            sent += push;
        }
        Ok(total)
    }
}

/// Balanced transportation instance with integer supplies, demands and costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportProblem {
    pub supply: Vec<i64>,
    pub demand: Vec<i64>,
    /// `cost[i][j]` from source `i` to sink `j`, non-negative.
    pub cost: Vec<Vec<i64>>,
}

/// Optimal flow with dual potentials `row_potential`, `col_potential`
/// satisfying `col[j] - row[i] <= cost[i][j]`, with equality on every arc
/// that carries flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportSolution {
    pub flow: Vec<Vec<i64>>,
    pub total_cost: i64,
    pub row_potential: Vec<i64>,
    pub col_potential: Vec<i64>,
}

impl TransportProblem {
    pub fn solve(&self) -> Result<TransportSolution> {
        let (r, c) = (self.supply.len(), self.demand.len());
        let total: i64 = self.supply.iter().sum();
        if total != self.demand.iter().sum::<i64>() {
            return Err(Error::InvalidMeasure("unbalanced transport problem".into()));
        }
        let (s, t) = (r + c, r + c + 1);
        let mut net = Network::new(r + c + 2);
        for (i, &m) in self.supply.iter().enumerate() {
            net.add(s, i, m, 0);
        }
        for (j, &m) in self.demand.iter().enumerate() {
            net.add(r + j, t, m, 0);
        }
        let ids: Vec<Vec<usize>> = self
            .cost
            .iter()
            .enumerate()
            .map(|(i, row)| (0..c).map(|j| net.add(i, r + j, total, row[j])).collect())
            .collect();
        let total_cost = net.min_cost_flow(s, t, total)?;
        let flow: Vec<Vec<i64>> = ids
            .iter()
            .map(|row| row.iter().map(|&id| net.arcs[id ^ 1].cap).collect())
            .collect();
        let (row_potential, col_potential) = self.dual(&flow)?;
        Ok(TransportSolution { flow, total_cost, row_potential, col_potential })
    }

    /// Bellman-Ford on the residual graph between rows and columns.
    fn dual(&self, flow: &[Vec<i64>]) -> Result<(Vec<i64>, Vec<i64>)> {
        let (r, c) = (self.supply.len(), self.demand.len());
        let mut dist = vec![0i64; r + c];
        for round in 0..=r + c {
            let mut changed = false;
            for i in 0..r {
                for j in 0..c {
                    let w = self.cost[i][j];
                    if dist[i] + w < dist[r + j] {
                        dist[r + j] = dist[i] + w;
                        changed = true;
                    }
                    if flow[i][j] > 0 && dist[r + j] - w < dist[i] {
                        dist[i] = dist[r + j] - w;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok((dist[..r].to_vec(), dist[r..].to_vec()));
            }
            if round == r + c {
                break;
            }
        }
        Err(Error::Internal("negative residual cycle: flow is not optimal".into()))
    }
}

impl TransportSolution {
    /// Checks feasibility, dual feasibility and a zero duality gap.
    pub fn certifies(&self, problem: &TransportProblem) -> bool {
        let (r, c) = (problem.supply.len(), problem.demand.len());
        let rows_ok = (0..r).all(|i| self.flow[i].iter().sum::<i64>() == problem.supply[i]);
        let cols_ok = (0..c).all(|j| (0..r).map(|i| self.flow[i][j]).sum::<i64>() == problem.demand[j]);
        let nonneg = self.flow.iter().flatten().all(|&f| f >= 0);
        let primal: i64 = (0..r)
            .flat_map(|i| (0..c).map(move |j| (i, j)))
            .map(|(i, j)| self.flow[i][j] * problem.cost[i][j])
            .sum();
        let reduced_ok = (0..r).all(|i| {
            (0..c).all(|j| self.col_potential[j] - self.row_potential[i] <= problem.cost[i][j])
        });
        let dual: i64 = (0..c).map(|j| problem.demand[j] * self.col_potential[j]).sum::<i64>()
            - (0..r).map(|i| problem.supply[i] * self.row_potential[i]).sum::<i64>();
        rows_ok && cols_ok && nonneg && reduced_ok && primal == self.total_cost && dual == primal
    }
}
