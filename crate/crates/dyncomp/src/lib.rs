//! Discovery of linear subspaces of multivariate time series that maximize
//! Gaussian predictive information (past-future mutual information), with
//! baseline linear methods, synthetic generators, analytic oracles and a
//! cross-validated decode/forecast evaluation harness.

pub mod error;
pub mod io;
pub mod preprocess;
pub mod projection;
pub mod timeseries;

pub use error::{Error, Result};
pub use projection::Projection;
pub use timeseries::TimeSeries;
