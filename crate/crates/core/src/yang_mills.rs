//! Yang-Mills system over a matrix Lie algebra: curvature, the divergence
//! side of the field equation, gauge transformation and the conservation law
//! that follows once the current is defined by the divergence.
//!
//! Potentials are stored with lower indices; [`divergence_lhs`] raises both
//! indices of the strength with `η` before contracting.

use std::fmt;

use crate::algebra::{Idempotent, Multivector, ETA};
use crate::error::{Error, Result};
use crate::jet::{GroupJet, Jet, Ring};
use crate::lie::{l3_defect, lchi_defect, GroupFlavor};

/// Lie algebra a potential takes values in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    L3,
    LChi(Idempotent),
    U3,
}

impl AlgebraKind {
    /// Group whose derivative terms keep the potential in this algebra.
    pub fn group(self) -> &'static str {
        match self {
            AlgebraKind::L3 => "G3",
            AlgebraKind::LChi(_) => "G(chi)",
            AlgebraKind::U3 => "U(3)",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::L3 => f.write_str("L3"),
            AlgebraKind::LChi(_) => f.write_str("L(chi)"),
            AlgebraKind::U3 => f.write_str("u(3)"),
        }
    }
}

/// Element types that can be tested for membership in an [`AlgebraKind`].
pub trait LieValued: Ring {
    /// Distance from the algebra; `∞` when the kind does not apply.
    fn algebra_defect(&self, kind: AlgebraKind) -> f64;
}

impl LieValued for Multivector {
    fn algebra_defect(&self, kind: AlgebraKind) -> f64 {
        match kind {
            AlgebraKind::L3 => l3_defect(self),
            AlgebraKind::LChi(chi) => lchi_defect(self, chi),
            AlgebraKind::U3 => f64::INFINITY,
        }
    }
}

/// Covector `a_μ` of algebra-valued jets.
#[derive(Clone, Debug, PartialEq)]
pub struct YMPotential<T: Ring> {
    pub kind: AlgebraKind,
    pub a: [Jet<T>; 4],
}

/// Antisymmetric `a_{μν}`, lower indices.
pub type YMStrength<T> = [[Jet<T>; 4]; 4];

impl<T: LieValued> YMPotential<T> {
    pub fn new(kind: AlgebraKind, a: [Jet<T>; 4]) -> Self {
        YMPotential { kind, a }
    }

    /// Largest membership defect over every component and jet entry.
    pub fn defect(&self) -> f64 {
        jets_defect(&self.a, self.kind)
    }

    pub fn curvature(&self) -> Result<YMStrength<T>> {
        curvature(&self.a)
    }
}

/// Largest membership defect over a list of jets.
pub fn jets_defect<T: LieValued>(jets: &[Jet<T>], kind: AlgebraKind) -> f64 {
    jets.iter()
        .flat_map(|j| j.iter().map(|(_, v)| v.algebra_defect(kind)))
        .fold(0.0, f64::max)
}

/// `F_{μν} = ∂_μ a_ν − ∂_ν a_μ − [a_μ, a_ν]`, one order below `a`.
pub fn curvature<T: Ring>(a: &[Jet<T>; 4]) -> Result<YMStrength<T>> {
    let d: Vec<[Jet<T>; 4]> = a
        .iter()
        .map(|an| Ok([an.partial(0)?, an.partial(1)?, an.partial(2)?, an.partial(3)?]))
        .collect::<Result<_>>()?;
    let order = d[0][0].order();
    let point = a[0].point();
    let mut f: YMStrength<T> = std::array::from_fn(|_| std::array::from_fn(|_| Jet::zero(point, order)));
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let v = &(&d[nu][mu] - &d[mu][nu]) - &a[mu].commutator(&a[nu]);
            f[nu][mu] = -&v;
            f[mu][nu] = v;
        }
    }
    Ok(f)
}

/// `∂_μ F^{μν} − [a_μ, F^{μν}]` for each `ν`, one order below `F`.
pub fn divergence_lhs<T: Ring>(a: &[Jet<T>; 4], f: &YMStrength<T>) -> Result<[Jet<T>; 4]> {
    let order = f[0][0].order().checked_sub(1).ok_or(Error::InsufficientOrder { have: 0, need: 1 })?;
    let point = f[0][0].point();
    let mut out: [Jet<T>; 4] = std::array::from_fn(|_| Jet::zero(point, order));
    for (nu, slot) in out.iter_mut().enumerate() {
        for mu in 0..4 {
            let term = &f[mu][nu].partial(mu)? - &a[mu].commutator(&f[mu][nu]);
            *slot = &*slot + &term.scale(ETA[mu] * ETA[nu]);
        }
    }
    Ok(out)
}

/// `∂_ν j^ν − [a_ν, j^ν]` at the base point, with `F := curvature(a)` and
/// `j^ν := divergence_lhs(a, F)`. Vanishes for every potential.
pub fn conservation_residual<T: Ring>(a: &[Jet<T>; 4]) -> Result<T> {
    if a[0].order() < 3 {
        return Err(Error::InsufficientOrder { have: a[0].order(), need: 3 });
    }
    let f = curvature(a)?;
    let j = divergence_lhs(a, &f)?;
    current_conservation(a, &j)
}

/// `∂_ν j^ν − [a_ν, j^ν]` at the base point for a supplied current.
pub fn current_conservation<T: Ring>(a: &[Jet<T>; 4], j: &[Jet<T>; 4]) -> Result<T> {
    let mut total = T::zero();
    for nu in 0..4 {
        let term = &j[nu].partial(nu)? - &a[nu].commutator(&j[nu]);
        total = total.add_ref(term.value());
    }
    Ok(total)
}

/// `a_μ → S⁻¹ a_μ S − c · S⁻¹ ∂_μ S` given jets of `S` and `S⁻¹`.
///
/// `c` multiplies the inhomogeneous term on the left; it is `e` for the
/// ordinary transformation.
pub fn gauge_transform_with<T: Ring>(
    a: &[Jet<T>; 4],
    s: &Jet<T>,
    s_inv: &Jet<T>,
    c: Option<&T>,
) -> Result<[Jet<T>; 4]> {
    let mut out = Vec::with_capacity(4);
    for (mu, am) in a.iter().enumerate() {
        let conj = &(s_inv * am) * s;
        let mut inhom = s_inv * &s.partial(mu)?;
        if let Some(c) = c {
            inhom = inhom.mul_const_left(c);
        }
        out.push(&conj - &inhom);
    }
    Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
}

/// Gauge transformation of a multivector potential by a group field whose
/// flavor must match the potential's algebra.
pub fn gauge_transform(a: &YMPotential<Multivector>, s: &GroupJet) -> Result<YMPotential<Multivector>> {
    let ok = matches!(
        (a.kind, s.flavor),
        (AlgebraKind::L3, GroupFlavor::G3) | (AlgebraKind::LChi(_), GroupFlavor::GChi)
    );
    if let (AlgebraKind::LChi(chi), GroupFlavor::GChi) = (a.kind, s.flavor) {
        if chi != s.chi {
            return Err(Error::FlavorMismatch { group: format!("{}({:?})", s.flavor, s.chi), algebra: a.kind.to_string() });
        }
    }
    if !ok {
        return Err(Error::FlavorMismatch { group: s.flavor.to_string(), algebra: a.kind.to_string() });
    }
    let out = gauge_transform_with(&a.a, &s.jet, &s.inverse(), None)?;
    Ok(YMPotential { kind: a.kind, a: out })
}

/// Antisymmetry defect `max |F_{μν} + F_{νμ}|`.
pub fn antisymmetry_defect<T: Ring>(f: &YMStrength<T>) -> f64 {
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            worst = worst.max((&f[mu][nu] + &f[nu][mu]).max_abs());
        }
    }
    worst
}
