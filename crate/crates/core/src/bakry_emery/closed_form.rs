//! Closed-form Bakry-Emery curvature of amply regular graphs with the all
//! `+1` and all `-1` signatures, in terms of the local graph spectrum.

use crate::arg::ArgParams;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::spectra::{local_spectrum, SPECTRAL_TOL};

fn negative_part(v: f64) -> f64 {
    v.min(0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormInputs {
    pub params: ArgParams,
    /// Full spectrum of the local graph at the vertex, ascending.
    pub local_spectrum: Vec<f64>,
}

impl ClosedFormInputs {
    /// Local spectrum at `x`; checks that its top eigenvalue is `alpha`.
    pub fn new(g: &Graph, params: ArgParams, x: usize) -> Result<ClosedFormInputs> {
        let spectrum = local_spectrum(g, x)?;
        if let Some(top) = spectrum.max() {
            if (top - params.alpha as f64).abs() > SPECTRAL_TOL {
                return Err(Error::Internal(format!(
                    "local graph at {x} has top eigenvalue {top}, expected {}",
                    params.alpha
                )));
            }
        }
        Ok(ClosedFormInputs { params, local_spectrum: spectrum.values })
    }

    fn min_square(&self, shift: f64) -> f64 {
        self.local_spectrum
            .iter()
            .map(|&l| (l + shift).powi(2))
            .fold(f64::INFINITY, f64::min)
    }

    fn base(&self) -> f64 {
        let (d, alpha, beta) = (self.params.d as f64, self.params.alpha as f64, self.params.beta as f64);
        (2.0 * d * (beta - 2.0) - alpha * alpha) / (2.0 * beta)
    }
}

/// `2 + alpha/2 + ((2d(beta-2) - alpha^2)/(2 beta) + (2/beta) min (lambda - alpha/2)^2)_-`.
pub fn closed_form_plus(inputs: &ClosedFormInputs) -> f64 {
    let (alpha, beta) = (inputs.params.alpha as f64, inputs.params.beta as f64);
    2.0 + alpha / 2.0 + negative_part(inputs.base() + 2.0 / beta * inputs.min_square(-alpha / 2.0))
}

/// `2 + ((2d(beta-2) - alpha^2)/(2 beta) + 5 alpha/2 - 2 beta + (2/beta) min (lambda + beta - alpha/2)^2)_-`.
pub fn closed_form_minus(inputs: &ClosedFormInputs) -> f64 {
    let (alpha, beta) = (inputs.params.alpha as f64, inputs.params.beta as f64);
    let inner = inputs.base() + 2.5 * alpha - 2.0 * beta + 2.0 / beta * inputs.min_square(beta - alpha / 2.0);
    2.0 + negative_part(inner)
}

/// Exact all-`+1` curvature where the parameters alone determine it:
/// `2 + alpha/2 - d` when `beta = 1`, and `2 + alpha/2` when
/// `1 != beta >= alpha` and `(alpha, beta) != (2, 2)`.
pub fn determined_curvature_plus(params: &ArgParams) -> Option<Rational> {
    let half_alpha = Rational::new(params.alpha as i64, 2);
    if params.beta == 1 {
        Some(Rational::from_integer(2) + half_alpha - Rational::from_integer(params.d as i64))
    } else if params.beta_dominates() && (params.alpha, params.beta) != (2, 2) {
        Some(Rational::from_integer(2) + half_alpha)
    } else {
        None
    }
}
