//! Lie algebras `L₃ ≅ su(2)`, `L₄ ≅ u(2)`, `L(χ)` and the groups `G₃`, `G(χ)`
//! realised inside the algebra, with closed-form exponentials.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{beta, e, theta, Blade, Idempotent, Multivector};
use crate::error::{Error, Result};

/// Norms below this are treated as zero in the exponential.
const SMALL_ANGLE: f64 = 1e-12;

/// `τ¹ = e²³`, `τ² = −e¹³`, `τ³ = e¹²` (`k` in 1..=3).
pub fn tau(k: usize) -> Multivector {
    match k {
        1 => Multivector::blade(Blade::from_indices(&[2, 3]).unwrap()),
        2 => -Multivector::blade(Blade::from_indices(&[1, 3]).unwrap()),
        3 => Multivector::blade(Blade::from_indices(&[1, 2]).unwrap()),
        _ => panic!("tau index {k} out of range 1..=3"),
    }
}

/// `s = s₁τ¹ + s₂τ² + s₃τ³` with real coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct L3Element(pub [f64; 3]);

impl L3Element {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn to_multivector(&self) -> Multivector {
        (1..=3).fold(Multivector::zero(), |acc, k| acc + tau(k).scale(self.0[k - 1]))
    }

    pub fn neg(&self) -> Self {
        L3Element(self.0.map(|x| -x))
    }
}

/// `L₃` part plus a real multiple of `θ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct L4Element {
    pub l3: L3Element,
    pub theta: f64,
}

impl L4Element {
    pub fn to_multivector(&self) -> Multivector {
        self.l3.to_multivector() + theta().scale(self.theta)
    }

    pub fn neg(&self) -> Self {
        L4Element { l3: self.l3.neg(), theta: -self.theta }
    }
}

/// `r = sχ` for `s ∈ L₄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LChiElement {
    pub s: L4Element,
    pub chi: Idempotent,
}

impl LChiElement {
    pub fn to_multivector(&self) -> Multivector {
        self.s.to_multivector() * self.chi.element()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupFlavor {
    /// `G₃ ≅ SU(2)`
    G3,
    /// `G(χ) ≅ U(2)`
    GChi,
}

impl fmt::Display for GroupFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFlavor::G3 => f.write_str("G3"),
            GroupFlavor::GChi => f.write_str("G(chi)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    pub value: Multivector,
    pub flavor: GroupFlavor,
}

/// `exp(s) = e cos|s| + (s/|s|) sin|s|` for `s ∈ L₃`.
pub fn exp_g3(s: &L3Element) -> GroupElement {
    let n = s.norm();
    let value = if n < SMALL_ANGLE {
        // sin|s|/|s| → 1
        e() + s.to_multivector()
    } else {
        e().scale(n.cos()) + s.to_multivector().scale(n.sin() / n)
    };
    GroupElement { value, flavor: GroupFlavor::G3 }
}

/// `exp(s)` in the even subalgebra for `s ∈ L₄`, factored as
/// `exp(L₃ part) · exp(θ part)`; θ is central among even elements.
pub fn exp_l4(s: &L4Element) -> Multivector {
    let rot = exp_g3(&s.l3).value;
    let phase = e().scale(s.theta.cos()) + theta().scale(s.theta.sin());
    rot * phase
}

/// `exp(sχ) = e + (exp(s) − e)χ` for `s ∈ L₄`.
pub fn exp_gchi(s: &L4Element, chi: Idempotent) -> GroupElement {
    let value = e() + (exp_l4(s) - e()) * chi.element();
    GroupElement { value, flavor: GroupFlavor::GChi }
}

/// Returns `S†` after confirming `S†S = e` within `eps`.
pub fn unitary_inverse(s: &GroupElement, eps: f64) -> Result<GroupElement> {
    let inv = s.value.dagger();
    let defect = (inv * s.value - e()).max_abs();
    if defect > eps {
        return Err(Error::NotUnitary { defect });
    }
    Ok(GroupElement { value: inv, flavor: s.flavor })
}

/// Largest violation of the `G₃` conditions: unitarity, `[β,S] = 0`,
/// evenness and realness.
pub fn g3_defect(s: &Multivector) -> f64 {
    let unitary = (s.dagger() * *s - e()).max_abs();
    let commutes = beta().commutator(s).max_abs();
    unitary.max(commutes).max(s.odd().max_abs()).max(s.max_imag())
}

/// Largest violation of the `G(χ)` conditions: `S − e ∈ K(χ)`, unitarity,
/// evenness.
pub fn gchi_defect(s: &Multivector, chi: Idempotent) -> f64 {
    let x = chi.element();
    let shifted = *s - e();
    let k = crate::algebra::ideal_k_defect(&shifted, &x);
    let unitary = (s.dagger() * *s - e()).max_abs();
    k.max(unitary).max(s.odd().max_abs())
}

/// Distance of `s` from `L₃`: anti-Hermitian, commuting with β, real grade 2.
pub fn l3_defect(s: &Multivector) -> f64 {
    let anti = (s.dagger() + *s).max_abs();
    let commutes = beta().commutator(s).max_abs();
    let off_grade = (*s - s.grade(2)).max_abs();
    anti.max(commutes).max(off_grade).max(s.max_imag())
}

/// Distance of `s` from `L₄`: even, real, anti-Hermitian.
pub fn l4_defect(s: &Multivector) -> f64 {
    let anti = (s.dagger() + *s).max_abs();
    anti.max(s.odd().max_abs()).max(s.max_imag())
}

/// Distance of `r` from `L(χ)`: in `K(χ)` and anti-Hermitian.
pub fn lchi_defect(r: &Multivector, chi: Idempotent) -> f64 {
    let k = crate::algebra::ideal_k_defect(r, &chi.element());
    k.max((r.dagger() + *r).max_abs())
}

pub fn random_l3<R: Rng + ?Sized>(rng: &mut R) -> L3Element {
    L3Element([
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
    ])
}

pub fn random_l4<R: Rng + ?Sized>(rng: &mut R) -> L4Element {
    L4Element { l3: random_l3(rng), theta: rng.gen_range(-1.0..=1.0) }
}

pub fn random_lchi<R: Rng + ?Sized>(rng: &mut R, chi: Idempotent) -> LChiElement {
    LChiElement { s: random_l4(rng), chi }
}
