//! Exact weightings induced by singular Lie filtrations.
//!
//! Given a filtration of the vector fields on a polynomial chart and a clean
//! coordinate submanifold, the crate builds weighted coordinates, checks the
//! jet-bundle description of the weighting, and computes the osculating graded
//! Lie algebras at a point.

pub mod exactalg;
pub mod jets;
pub mod lieflt;
pub mod osculating;
pub mod vfield;
pub mod weightcoord;
