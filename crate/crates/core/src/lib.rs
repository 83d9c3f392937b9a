//! Twisted face-pairing 3-manifolds.
//!
//! Starting from a faceted 3-ball with an orientation-reversing face-pairing and a
//! multiplier per edge cycle, build the twisted subdivision, its Heegaard diagram,
//! the cylinder decomposition and the framed surgery link, and compute H₁ both ways.

pub mod ball;
pub mod cylinders;
pub mod error;
pub mod grid;
pub mod heegaard;
pub mod homology;
pub mod inverse;
pub mod io;
pub mod pairing;
pub mod registry;
pub mod report;
pub mod surgery;
pub mod twist;

pub use error::{Error, Result};
