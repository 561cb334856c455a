//! Named graph families.
//!
//! Vertex labels:
//! - `hypercube d`: the integer whose binary digits are the coordinates.
//! - `hamming n q`: base-`q` digits, coordinate `i` is digit `i`.
//! - `johnson n k`: `k`-subsets of `0..n` in colex order.
//! - `rook m`: cell `(r, c)` is `r * m + c`.
//! - `shrikhande`: `(a, b)` in Z4 x Z4 is `4a + b`.
//! - `petersen`: outer 5-cycle `0..5`, spokes `i -> i + 5`, inner pentagram.
//! - `icosahedron`: apex `0`, upper ring `1..=5`, lower ring `6..=10`, apex `11`.
//! - `complete-bipartite a b`: sides `0..a` and `a..a+b`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Generators refuse to build anything larger than this.
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Hypercube(usize),
    Hamming(usize, usize),
    Johnson(usize, usize),
    Rook(usize),
    Cycle(usize),
    Path(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Petersen,
    Shrikhande,
    Icosahedron,
}

impl Family {
    pub fn from_args(name: &str, params: &[usize]) -> Result<Family> {
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidFamily(format!(
                    "{name} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let fam = match name {
            "hypercube" => {
                arity(1)?;
                Family::Hypercube(params[0])
            }
            "hamming" => {
                arity(2)?;
                Family::Hamming(params[0], params[1])
            }
            "johnson" => {
                arity(2)?;
                Family::Johnson(params[0], params[1])
            }
            "rook" => {
                arity(1)?;
                Family::Rook(params[0])
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle(params[0])
            }
            "path" => {
                arity(1)?;
                Family::Path(params[0])
            }
            "complete" => {
                arity(1)?;
                Family::Complete(params[0])
            }
            "complete-bipartite" => {
                arity(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "petersen" => {
                arity(0)?;
                Family::Petersen
            }
            "shrikhande" => {
                arity(0)?;
                Family::Shrikhande
            }
            "icosahedron" => {
                arity(0)?;
                Family::Icosahedron
            }
            other => return Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        };
        fam.validate()?;
        Ok(fam)
    }

    /// Parses `"name p1 p2 ..."`.
    pub fn parse(spec: &str) -> Result<Family> {
        let mut words = spec.split_whitespace();
        let name = words
            .next()
            .ok_or_else(|| Error::InvalidFamily("empty family spec".into()))?;
        let params = words
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| Error::InvalidFamily(format!("bad parameter {w:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Family::from_args(name, &params)
    }

    pub fn vertex_count(&self) -> Option<usize> {
        let pow = |b: usize, e: usize| -> Option<usize> {
            (0..e).try_fold(1usize, |acc, _| acc.checked_mul(b))
        };
        match *self {
            Family::Hypercube(d) => pow(2, d),
            Family::Hamming(n, q) => pow(q, n),
            Family::Johnson(n, k) => binomial(n, k),
            Family::Rook(m) => m.checked_mul(m),
            Family::Cycle(n) | Family::Path(n) | Family::Complete(n) => Some(n),
            Family::CompleteBipartite(a, b) => a.checked_add(b),
            Family::Petersen => Some(10),
            Family::Shrikhande => Some(16),
            Family::Icosahedron => Some(12),
        }
    }

    fn validate(&self) -> Result<()> {
        let invalid = |msg: &str| Err(Error::InvalidFamily(format!("{self}: {msg}")));
        match *self {
            Family::Hypercube(d) if d < 1 => return invalid("need d >= 1"),
            Family::Hamming(n, q) if n < 1 || q < 2 => return invalid("need n >= 1, q >= 2"),
            Family::Johnson(n, k) if k < 1 || n < 2 * k => return invalid("need n >= 2k >= 2"),
            Family::Johnson(n, _) if n > 24 => return invalid("n too large"),
            Family::Rook(m) if m < 2 => return invalid("need m >= 2"),
            Family::Cycle(n) if n < 3 => return invalid("need n >= 3"),
            Family::Path(n) | Family::Complete(n) if n < 1 => return invalid("need n >= 1"),
            Family::CompleteBipartite(a, b) if a < 1 || b < 1 => return invalid("need a, b >= 1"),
            _ => {}
        }
        match self.vertex_count() {
            Some(n) if n <= MAX_VERTICES => Ok(()),
            _ => invalid("too many vertices"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Hypercube(d) => write!(f, "hypercube {d}"),
            Family::Hamming(n, q) => write!(f, "hamming {n} {q}"),
            Family::Johnson(n, k) => write!(f, "johnson {n} {k}"),
            Family::Rook(m) => write!(f, "rook {m}"),
            Family::Cycle(n) => write!(f, "cycle {n}"),
            Family::Path(n) => write!(f, "path {n}"),
            Family::Complete(n) => write!(f, "complete {n}"),
            Family::CompleteBipartite(a, b) => write!(f, "complete-bipartite {a} {b}"),
            Family::Petersen => write!(f, "petersen"),
            Family::Shrikhande => write!(f, "shrikhande"),
            Family::Icosahedron => write!(f, "icosahedron"),
        }
    }
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    (0..k).try_fold(1usize, |acc, i| Some(acc.checked_mul(n - i)? / (i + 1)))
}

pub fn generate(family: &Family) -> Result<Graph> {
    family.validate()?;
    let mut edges = Vec::new();
    let n = family.vertex_count().expect("validated");
    match *family {
        Family::Hypercube(d) => {
            for v in 0..n {
                for b in 0..d {
                    let w = v ^ (1 << b);
                    if v < w {
                        edges.push((v, w));
                    }
                }
            }
        }
        Family::Hamming(len, q) => hamming_edges(len, q, &mut edges),
        Family::Rook(m) => hamming_edges(2, m, &mut edges),
        Family::Johnson(size, k) => {
            let subsets: Vec<u32> = (0u32..(1 << size)).filter(|s| s.count_ones() as usize == k).collect();
            for (i, &a) in subsets.iter().enumerate() {
                for (j, &b) in subsets.iter().enumerate().skip(i + 1) {
                    if (a & b).count_ones() as usize == k - 1 {
                        edges.push((i, j));
                    }
                }
            }
        }
        Family::Cycle(len) => edges.extend((0..len).map(|i| (i, (i + 1) % len))),
        Family::Path(len) => edges.extend((1..len).map(|i| (i - 1, i))),
        Family::Complete(len) => {
            for u in 0..len {
                edges.extend((u + 1..len).map(|v| (u, v)));
            }
        }
        Family::CompleteBipartite(a, b) => {
            for u in 0..a {
                edges.extend((a..a + b).map(|v| (u, v)));
            }
        }
        Family::Petersen => {
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
            }
        }
        Family::Shrikhande => {
            let shifts = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
            for a in 0..4 {
                for b in 0..4 {
                    for (da, db) in shifts {
                        let (u, v) = (4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4);
                        if u < v {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
        Family::Icosahedron => {
            for i in 0..5 {
                let (up, up_next) = (1 + i, 1 + (i + 1) % 5);
                let (low, low_next) = (6 + i, 6 + (i + 1) % 5);
                edges.extend([(0, up), (up, up_next), (low, low_next), (low, 11)]);
                edges.extend([(up, low), (up, low_next)]);
            }
        }
    }
    Graph::new(n, edges)
}

fn hamming_edges(len: usize, q: usize, edges: &mut Vec<(usize, usize)>) {
    let n = q.pow(len as u32);
    for v in 0..n {
        let mut place = 1;
        for _ in 0..len {
            let digit = (v / place) % q;
            for other in digit + 1..q {
                edges.push((v, v + (other - digit) * place));
            }
            place *= q;
        }
    }
}

/// Uniform-ish random simple `d`-regular graph via the pairing model with
/// restarts.
pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if d >= n || !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidFamily(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    // pairings rarely come out simple for dense degrees; use the complement
    if 2 * d > n {
        let sparse = random_regular(n, n - 1 - d, rng)?;
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        return Graph::new(n, edges.filter(|&(u, v)| !sparse.has_edge(u, v)).collect::<Vec<_>>());
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    loop {
        stubs.shuffle(rng);
        let pairs: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = Graph::new(n, pairs) {
            return Ok(g);
        }
    }
}
