//! Exact optimal transport between local measures and the curvature notions
//! built on it.

pub mod curvature;
mod flow;
pub mod hg;
pub mod matching;
pub mod measure;
pub mod wasserstein;

pub use curvature::{
    lly_curvature, lly_sweep, local_wasserstein, matching_characterization, ollivier_p, MatchingCharacterization,
};
pub use flow::{TransportProblem, TransportSolution};
pub use hg::{
    build_hg, build_hg_with, certified_lower_bound, certified_lower_bound_with, konig_decompose, BipartiteMultigraph,
    CertifiedBound, EdgeClass, HgEdge, HgVertex, Matching,
};
pub use matching::{hopcroft_karp, perfect_matching, MatchingOutcome};
pub use measure::{LocalMeasure, Measure};
pub use wasserstein::{wasserstein, TransportPlan, Wasserstein};
