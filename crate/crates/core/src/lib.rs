//! Geometric-algebra toolkit for gauge-covariance checks in Minkowski space.
//!
//! The crate implements the complexified spacetime Clifford algebra, the
//! unitary groups embedded in its even part, jet (truncated Taylor)
//! arithmetic for algebra-valued fields, and the coupled Dirac-type and
//! Yang-Mills systems for a lepton doublet and a quark triplet. Every
//! gauge-covariance statement is reduced to a finite identity between jets
//! that can be evaluated at a point to rounding accuracy.

pub mod algebra;
pub mod error;
pub mod frames;
pub mod jet;
pub mod lattice;
pub mod lepton;
pub mod lie;
pub mod oracle;
pub mod quark;
pub mod random;
pub mod yang_mills;

pub use algebra::{Blade, Idempotent, Multivector};
pub use error::{Error, Result};
pub use jet::{FieldExpr, Jet, Ring};
