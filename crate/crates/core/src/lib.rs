//! Masses, Harder–Narasimhan data and growth invariants for the CY-N
//! categories attached to acyclic quivers, computed at desk scale.

pub mod checks;
pub mod corpus;
pub mod error;
pub mod fp;
pub mod geometry;
pub mod growth;
pub mod hn;
pub mod intmat;
pub mod laurent;
pub mod quiver;
pub mod rep;
pub mod spectral;
pub mod twist;

pub use error::{Error, Result};
