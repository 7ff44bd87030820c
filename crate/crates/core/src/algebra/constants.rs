use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::blade::Blade;
use super::multivector::Multivector;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Identity element `e`.
pub fn e() -> Multivector {
    Multivector::one()
}

/// `β = e⁰`.
pub fn beta() -> Multivector {
    Multivector::generator(0)
}

/// Pseudoscalar `θ = e⁰¹²³`.
pub fn theta() -> Multivector {
    Multivector::blade(Blade::PSEUDOSCALAR)
}

/// Choice of Hermitian idempotent generating the left ideal of wave functions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Idempotent {
    /// `½(e − iθ)`
    #[default]
    Minus,
    /// `½(e + iθ)`
    Plus,
    /// `e`
    Unit,
}

impl Idempotent {
    pub fn element(self) -> Multivector {
        match self {
            Idempotent::Minus => (e() - theta() * I) * 0.5,
            Idempotent::Plus => (e() + theta() * I) * 0.5,
            Idempotent::Unit => e(),
        }
    }
}

/// The default idempotent `χ = ½(e − iθ)`.
pub fn chi() -> Multivector {
    Idempotent::Minus.element()
}

/// Membership in the left ideal `I(χ) = {U : U = Uχ}`.
pub fn in_ideal_i(u: &Multivector, chi: &Multivector, eps: f64) -> bool {
    ideal_i_defect(u, chi) <= eps
}

/// Membership in `K(χ) = {U ∈ I(χ) : U = χU}`.
pub fn in_ideal_k(u: &Multivector, chi: &Multivector, eps: f64) -> bool {
    ideal_k_defect(u, chi) <= eps
}

pub fn ideal_i_defect(u: &Multivector, chi: &Multivector) -> f64 {
    (*u - u.mul_ref(chi)).max_abs()
}

pub fn ideal_k_defect(u: &Multivector, chi: &Multivector) -> f64 {
    ideal_i_defect(u, chi).max((*u - chi.mul_ref(u)).max_abs())
}
