//! Edge signatures and switching.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A `+1`/`-1` label on every edge of a graph, stored symmetrically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    signs: Vec<Vec<(usize, i8)>>,
}

impl Signature {
    pub fn constant(g: &Graph, sign: i8) -> Signature {
        assert!(sign == 1 || sign == -1);
        Signature {
            signs: (0..g.vertex_count())
                .map(|u| g.neighbors(u).iter().map(|&v| (v, sign)).collect())
                .collect(),
        }
    }

    pub fn all_plus(g: &Graph) -> Signature {
        Signature::constant(g, 1)
    }

    pub fn all_minus(g: &Graph) -> Signature {
        Signature::constant(g, -1)
    }

    /// Builds a signature from `(u, v, sign)` triples covering every edge
    /// exactly once.
    pub fn from_edges(g: &Graph, labels: impl IntoIterator<Item = (usize, usize, i8)>) -> Result<Signature> {
        let mut sig = Signature::all_plus(g);
        let mut seen = vec![false; g.edge_count()];
        for (u, v, s) in labels {
            if s != 1 && s != -1 {
                return Err(Error::Signature(format!("sign {s} on {u}-{v} is not +1 or -1")));
            }
            let idx = g
                .edge_index(u, v)
                .ok_or_else(|| Error::Signature(format!("{u}-{v} is not an edge")))?;
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::Signature(format!("edge {u}-{v} labelled twice")));
            }
            sig.set(u, v, s);
            sig.set(v, u, s);
        }
        if let Some(missing) = seen.iter().position(|&b| !b) {
            let (u, v) = g.edges().nth(missing).unwrap();
            return Err(Error::Signature(format!("edge {u}-{v} has no sign")));
        }
        Ok(sig)
    }

    /// Random signature, each edge independently `-1` with probability 1/2.
    pub fn random<R: rand::Rng>(g: &Graph, rng: &mut R) -> Signature {
        let labels: Vec<_> = g
            .edges()
            .map(|(u, v)| (u, v, if rng.gen::<bool>() { 1 } else { -1 }))
            .collect();
        Signature::from_edges(g, labels).expect("covers every edge")
    }

    fn set(&mut self, u: usize, v: usize, s: i8) {
        let list = &mut self.signs[u];
        let k = list.binary_search_by_key(&v, |&(w, _)| w).expect("edge present");
        list[k].1 = s;
    }

    /// Sign of edge `uv`. Panics if `uv` is not an edge.
    pub fn sign(&self, u: usize, v: usize) -> i8 {
        let list = &self.signs[u];
        let k = list
            .binary_search_by_key(&v, |&(w, _)| w)
            .unwrap_or_else(|_| panic!("{u}-{v} is not an edge"));
        list[k].1
    }

    /// `(u, v, sign)` for every edge `u < v` in lexicographic order.
    pub fn edge_signs(&self) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        self.signs
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&(v, _)| u < v).map(move |&(v, s)| (u, v, s)))
    }

    /// Checks that the signature is defined on exactly the edges of `g`.
    pub fn matches(&self, g: &Graph) -> bool {
        self.signs.len() == g.vertex_count()
            && self
                .signs
                .iter()
                .enumerate()
                .all(|(u, list)| list.iter().map(|&(v, _)| v).eq(g.neighbors(u).iter().copied()))
    }

    pub fn negated(&self) -> Signature {
        Signature {
            signs: self
                .signs
                .iter()
                .map(|l| l.iter().map(|&(v, s)| (v, -s)).collect())
                .collect(),
        }
    }

    pub fn is_constant(&self, sign: i8) -> bool {
        self.signs.iter().flatten().all(|&(_, s)| s == sign)
    }
}

/// A `+1`/`-1` value on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingFunction(pub Vec<i8>);

impl SwitchingFunction {
    pub fn identity(n: usize) -> Self {
        SwitchingFunction(vec![1; n])
    }

    pub fn random<R: rand::Rng>(n: usize, rng: &mut R) -> Self {
        SwitchingFunction((0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect())
    }
}

/// `sigma'(xy) = tau(x) sigma(xy) tau(y)`.
pub fn switch(sigma: &Signature, tau: &SwitchingFunction) -> Signature {
    Signature {
        signs: sigma
            .signs
            .iter()
            .enumerate()
            .map(|(u, list)| list.iter().map(|&(v, s)| (v, tau.0[u] * s * tau.0[v])).collect())
            .collect(),
    }
}

/// Switching function taking `sigma` to the all-`+1` signature, if one exists.
pub fn balancing_switch(g: &Graph, sigma: &Signature) -> Option<SwitchingFunction> {
    let n = g.vertex_count();
    let mut tau = vec![0i8; n];
    for root in 0..n {
        if tau[root] != 0 {
            continue;
        }
        tau[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                let want = tau[u] * sigma.sign(u, v);
                if tau[v] == 0 {
                    tau[v] = want;
                    queue.push_back(v);
                } else if tau[v] != want {
                    return None;
                }
            }
        }
    }
    Some(SwitchingFunction(tau))
}

pub fn is_balanced(g: &Graph, sigma: &Signature) -> bool {
    balancing_switch(g, sigma).is_some()
}

/// Switching-equivalent to the all-`-1` signature.
pub fn is_antibalanced(g: &Graph, sigma: &Signature) -> bool {
    is_balanced(g, &sigma.negated())
}
