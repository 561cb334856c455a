//! Checks of the diameter, eigenvalue, isoperimetric, expansion and volume
//! bounds for a single graph, each reported with its hypothesis status.

mod curvature;
mod diameter;
mod eigen;
mod isoperimetry;
mod report;
mod volume;

use rayon::prelude::*;

use crate::arg::{detect_arg, ArgParams, ArgVerdict};
use crate::bakry_emery::{k_be_sweep, Signature};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::spectra::{adjacency_spectrum, eigensolve, AdjacencySpectrum, Spectrum, SymMatrix};
use crate::transport::lly_sweep;

pub use curvature::{check_curvature, check_finiteness_hypothesis};
pub use diameter::{check_diameter_bounds, diameter};
pub use eigen::{check_eigenvalue_bounds, smallest_nonzero};
pub use isoperimetry::{check_expander, check_isoperimetry, EXHAUSTIVE_LIMIT, PARTITION_SAMPLE_LIMIT};
pub use report::{format_real, HypothesisStatus, Relation, Value, VerificationReport, Witness, TIGHT_TOL};
pub use volume::{check_volume_growth, VolumeProfile};

/// Default comparison tolerance for spectral bounds.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub tolerance: f64,
    /// Random subsets per sampled isoperimetric or expansion check.
    pub samples: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { seed: DEFAULT_SEED, tolerance: DEFAULT_TOLERANCE, samples: DEFAULT_SAMPLES }
    }
}

/// Everything the checks read: parameters, diameter, spectra and the
/// curvature sweeps (the latter only on regular graphs).
#[derive(Debug, Clone)]
pub struct Analysis<'g> {
    pub graph: &'g Graph,
    /// `None` for complete graphs, where detection is undefined.
    pub verdict: Option<ArgVerdict>,
    pub diameter: usize,
    pub regular_degree: Option<usize>,
    pub bipartite: bool,
    pub adjacency: AdjacencySpectrum,
    pub lly: Option<Vec<((usize, usize), Rational)>>,
    pub be_plus: Option<Vec<f64>>,
    pub be_minus: Option<Vec<f64>>,
    /// Spectrum of `D - A^sigma` for the all `+1` and all `-1` signatures.
    pub laplacian_plus: Spectrum,
    pub laplacian_minus: Spectrum,
    pub options: AnalysisOptions,
}

fn signed_laplacian(g: &Graph, sign: f64) -> SymMatrix {
    let mut m = SymMatrix::zeros(g.vertex_count());
    for v in 0..g.vertex_count() {
        m.set(v, v, g.degree(v) as f64);
    }
    for (u, v) in g.edges() {
        m.set(u, v, -sign);
    }
    m
}

impl<'g> Analysis<'g> {
    pub fn new(graph: &'g Graph, options: AnalysisOptions) -> Result<Analysis<'g>> {
        let diameter = diameter(graph)?;
        let verdict = match detect_arg(graph) {
            Ok(v) => Some(v),
            Err(Error::Complete) => None,
            Err(e) => return Err(e),
        };
        let regular_degree = graph.regular_degree();
        let adjacency = adjacency_spectrum(graph)?;
        let (lly, be_plus, be_minus) = if regular_degree.is_some() {
            let plus = Signature::all_plus(graph);
            let minus = Signature::all_minus(graph);
            let (lly, (bp, bm)) = rayon::join(
                || lly_sweep(graph),
                || rayon::join(|| k_be_sweep(graph, &plus), || k_be_sweep(graph, &minus)),
            );
            (Some(lly?), Some(bp?), Some(bm?))
        } else {
            (None, None, None)
        };
        let mut laplacians: Vec<Spectrum> = [1.0, -1.0]
            .par_iter()
            .map(|&s| eigensolve(&signed_laplacian(graph, s)))
            .collect();
        let laplacian_minus = laplacians.pop().expect("two spectra");
        let laplacian_plus = laplacians.pop().expect("two spectra");
        Ok(Analysis {
            graph,
            verdict,
            diameter,
            regular_degree,
            bipartite: graph.is_bipartite(),
            adjacency,
            lly,
            be_plus,
            be_minus,
            laplacian_plus,
            laplacian_minus,
            options,
        })
    }

    pub fn params(&self) -> Option<ArgParams> {
        match self.verdict {
            Some(ArgVerdict::Amply(p)) => Some(p),
            _ => None,
        }
    }

    /// Smallest edge curvature and its edge.
    pub fn min_lly(&self) -> Option<((usize, usize), Rational)> {
        self.lly.as_ref()?.iter().copied().min_by(|a, b| a.1.cmp(&b.1))
    }

    /// Smallest vertex curvature and its vertex, for the given sweep.
    pub fn min_be(sweep: &Option<Vec<f64>>) -> Option<(usize, f64)> {
        sweep
            .as_ref()?
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub(crate) fn rng(&self, stream: u64) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.options.seed);
        rng.set_stream(stream);
        rng
    }
}

pub(crate) const NOT_AMPLY: &str = "graph is not amply regular";
pub(crate) const NOT_REGULAR: &str = "requires a regular graph";

/// Every report, ordered by bound id (stable, so per-level reports keep
/// their level order).
pub fn verify_all(analysis: &Analysis) -> Vec<VerificationReport> {
    let groups: Vec<fn(&Analysis) -> Vec<VerificationReport>> = vec![
        check_curvature,
        check_diameter_bounds,
        check_eigenvalue_bounds,
        check_isoperimetry,
        check_expander,
        check_volume_growth,
        check_finiteness_hypothesis,
    ];
    let mut reports: Vec<VerificationReport> =
        groups.par_iter().map(|check| check(analysis)).collect::<Vec<_>>().into_iter().flatten().collect();
    reports.sort_by_key(|r| r.bound_id);
    reports
}
