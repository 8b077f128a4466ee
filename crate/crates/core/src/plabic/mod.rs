//! Consistent dimer models with a prescribed decorated permutation, built
//! from a bridge decomposition through a reduced plabic graph.

mod bridges;
mod graph;

pub use bridges::{bridge_decomposition, AffinePermutation, Bridge, BridgeDecomposition, BridgeOrder};
pub use graph::{dimer_from_plabic, plabic_from_bridges, Colour, PlabicGraph};

use thiserror::Error;

use crate::dimer::{self, DimerError, DimerModel};
use crate::perm::DecoratedPermutation;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PlabicError {
    #[error("permutation is not connected")]
    NotConnected,
    #[error("no bridge can be peeled from {0}")]
    NoBridge(String),
    #[error("boundary vertex {0} does not have degree one")]
    BoundaryDegree(usize),
    #[error("contracting an edge would create a loop")]
    ParallelContraction,
    #[error("trip from boundary vertex {0} does not return to the boundary")]
    TripDoesNotEnd(usize),
    #[error("trip permutation: {0}")]
    Trip(String),
    #[error("degenerate graph: {0}")]
    Degenerate(String),
    #[error("generated model is invalid: {0}")]
    Dimer(#[from] DimerError),
    #[error("model is not reduced: {0}")]
    NotReduced(String),
    #[error("roundtrip gave {got} instead of {expected}")]
    RoundtripFailed { expected: String, got: String },
}

pub fn plabic_from_permutation(p: &DecoratedPermutation) -> Result<PlabicGraph, PlabicError> {
    plabic_with_order(p, BridgeOrder::Least)
}

pub fn plabic_with_order(p: &DecoratedPermutation, order: BridgeOrder) -> Result<PlabicGraph, PlabicError> {
    let d = bridge_decomposition(p, order).ok_or_else(|| PlabicError::NoBridge(p.to_string()))?;
    plabic_from_bridges(p, &d)
}

/// A consistent dimer model whose decorated permutation is `p`.
pub fn realize(p: &DecoratedPermutation) -> Result<DimerModel, PlabicError> {
    realize_with(p, BridgeOrder::Least)
}

pub fn realize_with(p: &DecoratedPermutation, order: BridgeOrder) -> Result<DimerModel, PlabicError> {
    if !p.is_connected() || p.n() < 2 {
        return Err(PlabicError::NotConnected);
    }
    let g = plabic_with_order(p, order)?;
    let m = dimer_from_plabic(&g)?;
    let got = dimer::decorated_permutation(&m)?;
    if &got != p {
        return Err(PlabicError::RoundtripFailed { expected: p.to_string(), got: got.to_string() });
    }
    match dimer::consistency_check(&m) {
        Ok(()) => Ok(m),
        Err(DimerError::Bad(bad)) => Err(PlabicError::NotReduced(format!("{bad:?}"))),
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests;
