//! Dense symmetric eigensolver (cyclic Jacobi) and graph spectra.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;
/// Tolerance for the regularity and bipartiteness cross-checks.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> SymMatrix {
        SymMatrix { order, entries: vec![0.0; order * order] }
    }

    /// Takes the upper triangle of `rows` and mirrors it. Rejects non-finite
    /// entries and ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<SymMatrix> {
        let order = rows.len();
        let mut m = SymMatrix::zeros(order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Precondition(format!("row {i} has length {}, expected {order}", row.len())));
            }
            for (j, &v) in row.iter().enumerate().skip(i) {
                if !v.is_finite() {
                    return Err(Error::NonFinite(i, j));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn diagonal(values: &[f64]) -> Result<SymMatrix> {
        let mut m = SymMatrix::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite(i, i));
            }
            m.set(i, i, v);
        }
        Ok(m)
    }

    pub fn adjacency(g: &Graph) -> SymMatrix {
        let n = g.vertex_count();
        let mut m = SymMatrix::zeros(n);
        for (u, v) in g.edges() {
            m.set(u, v, 1.0);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.order + j] = v;
        self.entries[j * self.order + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.order {
            for j in 0..self.order {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Ascending eigenvalues, optional eigenvectors (`vectors[k]` belongs to
/// `values[k]`) and the residual `max_k |M v_k - lambda_k v_k|_inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<Vec<f64>>>,
    pub residual: f64,
    pub sweeps: usize,
}

impl Spectrum {
    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }
}

pub fn eigensolve(m: &SymMatrix) -> Spectrum {
    jacobi(m, false)
}

pub fn eigensolve_with_vectors(m: &SymMatrix) -> Spectrum {
    jacobi(m, true)
}

fn jacobi(m: &SymMatrix, keep_vectors: bool) -> Spectrum {
    let n = m.order;
    let mut a = m.entries.clone();
    // columns of v are eigenvectors
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = OFF_DIAGONAL_TOL * m.frobenius_norm();
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        let off = SymMatrix { order: n, entries: a.clone() }.off_diagonal_norm();
        if off <= threshold {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors: Vec<Vec<f64>> = order.iter().map(|&k| (0..n).map(|i| v[i * n + k]).collect()).collect();
    let residual = vectors
        .iter()
        .zip(&values)
        .map(|(vec, &lambda)| {
            m.mul_vec(vec)
                .iter()
                .zip(vec)
                .map(|(mv, x)| (mv - lambda * x).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    Spectrum { values, vectors: keep_vectors.then_some(vectors), residual, sweeps }
}

/// Adjacency spectrum with the extremes named as in `-d <= theta_1 <= ... <= theta_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencySpectrum {
    pub spectrum: Spectrum,
    /// Smallest eigenvalue.
    pub theta_1: f64,
    /// Second largest eigenvalue (equal to the largest when `n = 1`).
    pub theta_second: f64,
    /// Largest eigenvalue.
    pub theta_top: f64,
}

/// Full adjacency spectrum. On a connected regular graph, checks that the
/// top eigenvalue is `d` and that `theta_1 = -d` exactly when the graph is
/// bipartite.
pub fn adjacency_spectrum(g: &Graph) -> Result<AdjacencySpectrum> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Empty);
    }
    let spectrum = eigensolve(&SymMatrix::adjacency(g));
    let theta_1 = spectrum.values[0];
    let theta_top = spectrum.values[n - 1];
    let theta_second = spectrum.values[n.saturating_sub(2)];
    if let (Some(d), true) = (g.regular_degree(), g.is_connected()) {
        let d = d as f64;
        if (theta_top - d).abs() > SPECTRAL_TOL {
            return Err(Error::Internal(format!("top eigenvalue {theta_top} of a {d}-regular graph")));
        }
        if ((theta_1 + d).abs() <= SPECTRAL_TOL) != g.is_bipartite() {
            return Err(Error::Internal("spectral and combinatorial bipartiteness disagree".into()));
        }
    }
    Ok(AdjacencySpectrum { spectrum, theta_1, theta_second, theta_top })
}

/// Spectrum of the graph induced on the neighbourhood of `x`.
pub fn local_spectrum(g: &Graph, x: usize) -> Result<Spectrum> {
    g.check_vertex(x)?;
    Ok(eigensolve(&SymMatrix::adjacency(&g.local_graph(x).graph)))
}
