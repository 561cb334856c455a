//! The local matrix route to Bakry-Emery curvature: the Gamma_2 form on the
//! 2-ball, its Schur complement Q, and the curvature matrix.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use super::operators::{gamma, gamma2};
use super::signature::{switch, Signature, SwitchingFunction};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectra::{eigensolve, Spectrum, SymMatrix};

/// Exact arithmetic for the local matrices. Wider than the transport
/// rationals because Schur complements multiply denominators.
pub type Exact = Ratio<i128>;

pub type ExactMatrix = Vec<Vec<Exact>>;

pub fn exact_to_f64(r: &Exact) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn exact_matrix_to_sym(m: &ExactMatrix) -> Result<SymMatrix> {
    let rows: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(exact_to_f64).collect()).collect();
    SymMatrix::from_rows(&rows)
}

/// `4 Gamma_2^sigma(x)` as an integer matrix over `B_2(x)`, indexed by
/// `vertices = [x, S_1 sorted, S_2 sorted]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma2Form {
    pub vertices: Vec<usize>,
    pub sphere1: usize,
    /// In-degree from `S_1(x)` of each `S_2(x)` vertex, in order.
    pub in_degrees: Vec<i64>,
    pub four_times: Vec<Vec<i64>>,
}

impl Gamma2Form {
    pub fn ball1_len(&self) -> usize {
        1 + self.sphere1
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn to_sym(&self) -> Result<SymMatrix> {
        let rows: Vec<Vec<f64>> = self
            .four_times
            .iter()
            .map(|r| r.iter().map(|&v| v as f64 / 4.0).collect())
            .collect();
        SymMatrix::from_rows(&rows)
    }

    /// Whether the `S_2` block is `diag(in-degrees)` (times 4).
    pub fn s2_block_is_in_degree_diagonal(&self) -> bool {
        let b1 = self.ball1_len();
        (b1..self.order()).all(|i| {
            (b1..self.order()).all(|j| {
                let expected = if i == j { self.in_degrees[i - b1] } else { 0 };
                self.four_times[i][j] == expected
            })
        })
    }
}

/// Sparse-by-construction accumulation of `u v^T + v u^T` style terms.
struct Accumulator {
    index: Vec<usize>,
    m: Vec<Vec<i64>>,
}

impl Accumulator {
    fn dense(&self, terms: &[(usize, i64)]) -> Vec<i64> {
        let mut v = vec![0; self.m.len()];
        for &(u, c) in terms {
            v[self.index[u]] += c;
        }
        v
    }

    fn add_outer(&mut self, coeff: i64, a: &[i64], b: &[i64]) {
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                self.m[i][j] += coeff * ai * bj;
            }
        }
    }
}

/// Builds `4 Gamma_2^sigma(x)`. With `v_wy = sigma_wy e_y - e_w`,
/// `r_u = sum_{z ~ u} v_uz` and `a_y = sigma_xy r_y - r_x`:
///
/// `4 Gamma_2 = sum_{w ~ x} sum_{y ~ w} v_wy v_wy^T - d_x sum_{y ~ x} v_xy v_xy^T
///              - sum_{y ~ x} (a_y v_xy^T + v_xy a_y^T)`.
pub fn gamma2_form(g: &Graph, sigma: &Signature, x: usize) -> Result<Gamma2Form> {
    g.check_vertex(x)?;
    let spheres = g.spheres(x);
    let s1 = spheres.sphere(1).to_vec();
    let s2 = spheres.sphere(2).to_vec();
    let vertices: Vec<usize> = std::iter::once(x).chain(s1.iter().copied()).chain(s2.iter().copied()).collect();
    let order = vertices.len();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let mut acc = Accumulator { index, m: vec![vec![0; order]; order] };
    let v = |w: usize, y: usize| [(y, sigma.sign(w, y) as i64), (w, -1)];
    let r = |u: usize| -> Vec<(usize, i64)> { g.neighbors(u).iter().flat_map(|&z| v(u, z)).collect() };

    for &w in g.neighbors(x) {
        for &y in g.neighbors(w) {
            let vw = acc.dense(&v(w, y));
            acc.add_outer(1, &vw, &vw);
        }
    }
    let dx = g.degree(x) as i64;
    let rx = r(x);
    for &y in g.neighbors(x) {
        let vxy = acc.dense(&v(x, y));
        acc.add_outer(-dx, &vxy, &vxy);
        let s = sigma.sign(x, y) as i64;
        let mut terms: Vec<(usize, i64)> = r(y).into_iter().map(|(u, c)| (u, s * c)).collect();
        terms.extend(rx.iter().map(|&(u, c)| (u, -c)));
        let ay = acc.dense(&terms);
        acc.add_outer(-1, &ay, &vxy);
        acc.add_outer(-1, &vxy, &ay);
    }
    let in_degrees = s2
        .iter()
        .map(|&z| g.neighbors(z).iter().filter(|&&u| acc.index[u] >= 1 && acc.index[u] <= s1.len()).count() as i64)
        .collect();
    Ok(Gamma2Form { vertices, sphere1: s1.len(), in_degrees, four_times: acc.m })
}

/// `Q(x)` over `B_1(x) = [x, S_1 sorted]`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub vertices: Vec<usize>,
    pub entries: ExactMatrix,
}

impl QMatrix {
    pub fn to_sym(&self) -> Result<SymMatrix> {
        exact_matrix_to_sym(&self.entries)
    }

    pub fn max_abs_diff(&self, other: &QMatrix) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| exact_to_f64(&(a - b)).abs())
            .fold(0.0, f64::max)
    }
}

/// Schur complement of the `S_2` block of `Gamma_2^sigma(x)`.
pub fn q_matrix_schur(g: &Graph, sigma: &Signature, x: usize) -> Result<QMatrix> {
    let form = gamma2_form(g, sigma, x)?;
    q_from_form(&form)
}

fn q_from_form(form: &Gamma2Form) -> Result<QMatrix> {
    if !form.s2_block_is_in_degree_diagonal() {
        return Err(Error::Internal(format!(
            "S_2 block of Gamma_2 at {} is not the in-degree diagonal",
            form.vertices[0]
        )));
    }
    let b1 = form.ball1_len();
    let g4 = &form.four_times;
    let mut entries = vec![vec![Exact::zero(); b1]; b1];
    for i in 0..b1 {
        for j in i..b1 {
            let mut q = Exact::from_integer(g4[i][j] as i128);
            for (k, &dz) in form.in_degrees.iter().enumerate() {
                let z = b1 + k;
                let num = g4[i][z] as i128 * g4[j][z] as i128;
                if num != 0 {
                    q -= Exact::new(num, dz as i128);
                }
            }
            q /= 4;
            entries[i][j] = q;
            entries[j][i] = q;
        }
    }
    Ok(QMatrix { vertices: form.vertices[..b1].to_vec(), entries })
}

/// `Q(x)` from the closed entry formulas for a `d`-regular signed graph.
pub fn q_matrix_formula(g: &Graph, sigma: &Signature, x: usize) -> Result<QMatrix> {
    let d = g.require_regular()? as i128;
    g.check_vertex(x)?;
    let ys = g.neighbors(x).to_vec();
    let zs = g.spheres(x).sphere(2).to_vec();
    let s = |u: usize, v: usize| sigma.sign(u, v) as i128;
    let a = |u: usize, v: usize| g.has_edge(u, v);
    let in_degree: Vec<i128> = zs.iter().map(|&z| ys.iter().filter(|&&y| a(y, z)).count() as i128).collect();
    // t_k = sum_i a_{y_i z_k} sigma_{x y_i} sigma_{y_i z_k}
    let t: Vec<i128> = zs
        .iter()
        .map(|&z| ys.iter().filter(|&&y| a(y, z)).map(|&y| s(x, y) * s(y, z)).sum())
        .collect();

    let b1 = ys.len() + 1;
    let mut q4 = vec![vec![Exact::zero(); b1]; b1];
    q4[0][0] = Exact::from_integer(3 * d + d * d)
        - zs.iter().enumerate().map(|(k, _)| Exact::new(t[k] * t[k], in_degree[k])).sum::<Exact>();
    for (i, &yi) in ys.iter().enumerate() {
        let local: i128 = ys.iter().filter(|&&yj| yj != yi && a(yj, yi)).map(|&yj| s(x, yj) * s(yj, yi)).sum();
        let via_s2: Exact = zs
            .iter()
            .enumerate()
            .filter(|&(_, &z)| a(yi, z))
            .map(|(k, &z)| Exact::new(t[k] * s(yi, z), in_degree[k]))
            .sum();
        let entry = Exact::from_integer(local - 2 * (d + 1) * s(x, yi)) + via_s2 * 2;
        q4[0][i + 1] = entry;
        q4[i + 1][0] = entry;

        let local_degree = ys.iter().filter(|&&yj| yj != yi && a(yj, yi)).count() as i128;
        let out: Exact = zs
            .iter()
            .enumerate()
            .filter(|&(_, &z)| a(yi, z))
            .map(|(k, _)| Exact::new(1, in_degree[k]))
            .sum();
        q4[i + 1][i + 1] = Exact::from_integer(local_degree + 2 * (d + 1)) - out * 4;

        for (j, &yj) in ys.iter().enumerate().skip(i + 1) {
            let edge = if a(yi, yj) { -4 * s(yi, yj) } else { 0 };
            let shared: Exact = zs
                .iter()
                .enumerate()
                .filter(|&(_, &z)| a(yi, z) && a(yj, z))
                .map(|(k, &z)| Exact::new(s(yi, z) * s(yj, z), in_degree[k]))
                .sum();
            let entry = Exact::from_integer(edge + 2 * s(x, yi) * s(x, yj)) - shared * 4;
            q4[i + 1][j + 1] = entry;
            q4[j + 1][i + 1] = entry;
        }
    }
    let entries = q4.into_iter().map(|r| r.into_iter().map(|v| v / 4).collect()).collect();
    Ok(QMatrix { vertices: std::iter::once(x).chain(ys).collect(), entries })
}

/// Every intermediate of the curvature computation at one vertex.
#[derive(Debug, Clone)]
pub struct CurvaturePipelineTrace {
    pub x: usize,
    /// The input signature switched so that every edge at `x` is `+1`.
    pub gauged: Signature,
    pub gamma2: Gamma2Form,
    pub q: QMatrix,
    /// Top-left entry of `2 B Q B^T`.
    pub a: Exact,
    /// First column of `2 B Q B^T` below `a`.
    pub omega: Vec<Exact>,
    pub curvature_matrix: ExactMatrix,
    pub spectrum: Spectrum,
    pub k_be: f64,
}

/// Switching that makes every edge at `x` positive and fixes all other
/// vertices.
pub fn star_gauge(g: &Graph, sigma: &Signature, x: usize) -> SwitchingFunction {
    let mut tau = SwitchingFunction::identity(g.vertex_count());
    for &y in g.neighbors(x) {
        tau.0[y] = sigma.sign(x, y);
    }
    tau
}

/// `A_inf = (2 B Q B^T) without first row and column - omega a^+ omega^T`,
/// where `B` is the identity with its first row set to ones. `Q` is taken
/// in the gauge where all edges at `x` are `+1`, which the `B` transform
/// presumes; switching leaves the curvature unchanged.
pub fn curvature_matrix(g: &Graph, sigma: &Signature, x: usize) -> Result<CurvaturePipelineTrace> {
    g.require_regular()?;
    g.check_vertex(x)?;
    if !sigma.matches(g) {
        return Err(Error::Signature("signature edges differ from graph edges".into()));
    }
    let gauged = switch(sigma, &star_gauge(g, sigma, x));
    let gamma2 = gamma2_form(g, &gauged, x)?;
    let q = q_from_form(&gamma2)?;
    let qe = &q.entries;
    let d = qe.len() - 1;
    let a: Exact = qe.iter().flatten().sum::<Exact>() * 2;
    let omega: Vec<Exact> = (1..=d).map(|j| qe.iter().map(|row| row[j]).sum::<Exact>() * 2).collect();
    if a.is_negative() {
        return Err(Error::Internal(format!("negative Schur pivot at vertex {x}")));
    }
    let mut m = vec![vec![Exact::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut v = qe[i + 1][j + 1] * 2;
            if !a.is_zero() {
                v -= omega[i] * omega[j] / a;
            }
            m[i][j] = v;
        }
    }
    let spectrum = eigensolve(&exact_matrix_to_sym(&m)?);
    let k_be = spectrum.min().unwrap_or(0.0);
    Ok(CurvaturePipelineTrace { x, gauged, gamma2, q, a, omega, curvature_matrix: m, spectrum, k_be })
}

/// `K_BE(G, sigma, x, infinity)`, the smallest eigenvalue of the curvature matrix.
pub fn k_be(g: &Graph, sigma: &Signature, x: usize) -> Result<f64> {
    Ok(curvature_matrix(g, sigma, x)?.k_be)
}

/// `K_BE` at every vertex, in vertex order.
pub fn k_be_sweep(g: &Graph, sigma: &Signature) -> Result<Vec<f64>> {
    (0..g.vertex_count()).into_par_iter().map(|x| k_be(g, sigma, x)).collect()
}

/// Smallest `Gamma_2(f)(x) - k Gamma(f)(x)` over `samples` random `f`
/// supported on `B_2(x)` with values in `[-1, 1]`.
pub fn soundness_check<R: Rng>(
    g: &Graph,
    sigma: &Signature,
    x: usize,
    k: f64,
    rng: &mut R,
    samples: usize,
) -> Result<f64> {
    g.check_vertex(x)?;
    let spheres = g.spheres(x);
    let ball: Vec<usize> = (0..=2).flat_map(|i| spheres.sphere(i).to_vec()).collect();
    let mut f = vec![0.0; g.vertex_count()];
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        for &v in &ball {
            f[v] = rng.gen_range(-1.0..=1.0);
        }
        let slack = gamma2(g, sigma, &f, x)? - k * gamma(g, sigma, &f, x)?;
        worst = worst.min(slack);
    }
    Ok(worst)
}
