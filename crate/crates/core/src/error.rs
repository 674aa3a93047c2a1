use thiserror::Error;

use crate::fillings::FillingError;
use crate::metric::MetricError;
use crate::polytope::PolytopeError;
use crate::simplex::LpError;
use crate::tours::TourError;
use crate::trees::TreeError;

/// Crate-level error, one variant per module.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Tour(#[from] TourError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Filling(#[from] FillingError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
