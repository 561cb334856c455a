//! Curvature of amply regular graphs: exact Lin-Lu-Yau curvature by optimal
//! transport, Bakry-Emery curvature of signed graphs through the local
//! curvature matrix, and checks of the diameter, spectral, isoperimetric and
//! volume bounds that follow from them.

pub mod arg;
pub mod bakry_emery;
pub mod bounds;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod rational;
pub mod spectra;
pub mod transport;

pub use arg::{arg_params, detect_arg, ArgParams, ArgVerdict, ArgViolation};
pub use error::{Error, Result};
pub use generators::{generate, Family};
pub use graph::Graph;
pub use rational::Rational;
