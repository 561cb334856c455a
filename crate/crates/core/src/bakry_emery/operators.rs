//! The signed Laplacian and the carré du champ operators evaluated directly
//! from their definitions.

use super::signature::Signature;
use crate::error::{Error, Result};
use crate::graph::Graph;

fn check_len(g: &Graph, f: &[f64]) -> Result<()> {
    if f.len() != g.vertex_count() {
        return Err(Error::Precondition(format!(
            "function has {} values for {} vertices",
            f.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

fn laplacian_at(g: &Graph, sigma: &Signature, f: &[f64], u: usize) -> f64 {
    g.neighbors(u).iter().map(|&v| sigma.sign(u, v) as f64 * f[v] - f[u]).sum()
}

/// `(Delta^sigma f)(x) = sum_{y ~ x} (sigma_xy f(y) - f(x))` at every vertex.
pub fn connection_laplacian_apply(g: &Graph, sigma: &Signature, f: &[f64]) -> Result<Vec<f64>> {
    check_len(g, f)?;
    Ok((0..g.vertex_count()).map(|u| laplacian_at(g, sigma, f, u)).collect())
}

/// `Gamma^sigma(f, h)(x)`.
pub fn gamma_pair(g: &Graph, sigma: &Signature, f: &[f64], h: &[f64], x: usize) -> Result<f64> {
    check_len(g, f)?;
    check_len(g, h)?;
    g.check_vertex(x)?;
    Ok(gamma_pair_unchecked(g, sigma, f, h, x))
}

fn gamma_pair_unchecked(g: &Graph, sigma: &Signature, f: &[f64], h: &[f64], x: usize) -> f64 {
    0.5 * g
        .neighbors(x)
        .iter()
        .map(|&y| {
            let s = sigma.sign(x, y) as f64;
            (s * f[y] - f[x]) * (s * h[y] - h[x])
        })
        .sum::<f64>()
}

pub fn gamma(g: &Graph, sigma: &Signature, f: &[f64], x: usize) -> Result<f64> {
    gamma_pair(g, sigma, f, f, x)
}

/// `Gamma_2^sigma(f, h)(x)`, composing the unsigned Laplacian of
/// `Gamma^sigma(f, h)` with the signed Laplacians of `f` and `h`.
pub fn gamma2_pair(g: &Graph, sigma: &Signature, f: &[f64], h: &[f64], x: usize) -> Result<f64> {
    check_len(g, f)?;
    check_len(g, h)?;
    g.check_vertex(x)?;
    let n = g.vertex_count();
    let gxx = gamma_pair_unchecked(g, sigma, f, h, x);
    let unsigned_laplacian: f64 = g
        .neighbors(x)
        .iter()
        .map(|&w| gamma_pair_unchecked(g, sigma, f, h, w) - gxx)
        .sum();
    // Delta^sigma f and Delta^sigma h are only needed on B_1(x)
    let mut lf = vec![0.0; n];
    let mut lh = vec![0.0; n];
    for &u in std::iter::once(&x).chain(g.neighbors(x)) {
        lf[u] = laplacian_at(g, sigma, f, u);
        lh[u] = laplacian_at(g, sigma, h, u);
    }
    let cross = gamma_pair_unchecked(g, sigma, &lf, h, x) + gamma_pair_unchecked(g, sigma, f, &lh, x);
    Ok(0.5 * (unsigned_laplacian - cross))
}

pub fn gamma2(g: &Graph, sigma: &Signature, f: &[f64], x: usize) -> Result<f64> {
    gamma2_pair(g, sigma, f, f, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family};

    #[test]
    fn constants_are_harmonic() {
        let g = generate(&Family::Petersen).unwrap();
        let plus = Signature::all_plus(&g);
        let ones = vec![1.0; 10];
        assert!(connection_laplacian_apply(&g, &plus, &ones).unwrap().iter().all(|&v| v == 0.0));
        assert_eq!(gamma2(&g, &plus, &ones, 3).unwrap(), 0.0);
    }

    #[test]
    fn edge_with_negative_sign() {
        let g = generate(&Family::Complete(2)).unwrap();
        let minus = Signature::all_minus(&g);
        assert_eq!(connection_laplacian_apply(&g, &minus, &[1.0, 1.0]).unwrap(), vec![-2.0, -2.0]);
    }

    #[test]
    fn square_indicator_is_a_laplacian_row() {
        let g = generate(&Family::Cycle(4)).unwrap();
        let plus = Signature::all_plus(&g);
        let f = [0.0, 0.0, 1.0, 0.0];
        assert_eq!(connection_laplacian_apply(&g, &plus, &f).unwrap(), vec![0.0, 1.0, -2.0, 1.0]);
    }

    #[test]
    fn single_edge_gamma() {
        let g = generate(&Family::Complete(2)).unwrap();
        let plus = Signature::all_plus(&g);
        let f = [0.0, 3.0];
        assert_eq!(gamma(&g, &plus, &f, 0).unwrap(), 4.5);
        // Gamma_2(f)(0) = (f(1) - f(0))^2 on K_2
        assert_eq!(gamma2(&g, &plus, &f, 0).unwrap(), 9.0);
    }

    #[test]
    fn wrong_length_rejected() {
        let g = generate(&Family::Cycle(4)).unwrap();
        let plus = Signature::all_plus(&g);
        assert!(matches!(connection_laplacian_apply(&g, &plus, &[1.0]), Err(Error::Precondition(_))));
    }
}
