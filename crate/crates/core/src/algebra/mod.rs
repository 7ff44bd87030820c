//! The complexified spacetime Clifford algebra ℂ⊗Cl(1,3).
//!
//! Generators `e^0..e^3` satisfy `e^a e^b + e^b e^a = 2η^{ab} e` with
//! `η = diag(1, -1, -1, -1)`. A [`Multivector`] carries one complex
//! coefficient per basis [`Blade`]; the real algebra is the subset with
//! real coefficients.

mod blade;
mod constants;
mod multivector;

pub use blade::{blade_mul, cayley_table, Blade, CANONICAL_ORDER, DIM, ETA};
pub use constants::{
    beta, chi, e, ideal_i_defect, ideal_k_defect, in_ideal_i, in_ideal_k, theta, Idempotent, I,
};
pub use multivector::{mul, Multivector};

/// Default absolute tolerance per coefficient for membership predicates.
pub const DEFAULT_EPS: f64 = 1e-10;

/// `η^{μν}` for diagonal entries, zero off the diagonal.
pub fn eta(mu: usize, nu: usize) -> f64 {
    if mu == nu {
        ETA[mu]
    } else {
        0.0
    }
}
