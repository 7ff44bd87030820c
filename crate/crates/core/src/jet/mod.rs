//! Truncated Taylor data ("jets") of algebra-valued fields at a point.
//!
//! A [`Jet`] stores every mixed partial derivative `∂^α f(x)` with
//! `|α| ≤ K`, `K ≤ 3`. Products follow the Leibniz rule exactly and
//! [`Jet::partial`] shifts the table, so any polynomial identity in fields
//! and their derivatives can be checked at a point up to rounding.
//!
//! Binary operations on jets of different orders truncate to the lower
//! order; [`jet_mul`] is the strict variant that rejects mismatches.

mod expr;
mod group;
mod index;

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::algebra::Multivector;
use crate::error::{Error, Result};

pub use expr::{Factor, FieldExpr, Term};
pub use group::{eval_group, Direction, GroupFactor, GroupField, GroupJet};
pub use index::{len_for_order, DerivIndex, MAX_ORDER};

use index::tables;

/// Coefficient types a jet can carry: an associative algebra over ℝ.
pub trait Ring: Clone + Send + Sync {
    fn zero() -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn scaled(&self, s: f64) -> Self;
    /// Largest absolute entry; the error measure used throughout.
    fn max_abs(&self) -> f64;
    fn is_zero(&self) -> bool;

    /// `self += s · a b`
    fn mul_add_scaled(&mut self, a: &Self, b: &Self, s: f64) {
        *self = self.add_ref(&a.mul_ref(b).scaled(s));
    }
}

/// Hermitian conjugation.
pub trait Star {
    fn dagger(&self) -> Self;
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, s: f64) -> Self {
        self * s
    }
    fn max_abs(&self) -> f64 {
        self.abs()
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn mul_add_scaled(&mut self, a: &Self, b: &Self, s: f64) {
        *self += s * a * b;
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, s: f64) -> Self {
        self * s
    }
    fn max_abs(&self) -> f64 {
        self.norm()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn mul_add_scaled(&mut self, a: &Self, b: &Self, s: f64) {
        *self += a * b * s;
    }
}

impl Star for Complex64 {
    fn dagger(&self) -> Self {
        self.conj()
    }
}

impl Ring for Multivector {
    fn zero() -> Self {
        Multivector::zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Multivector::mul_ref(self, rhs)
    }
    fn scaled(&self, s: f64) -> Self {
        self.scale(s)
    }
    fn max_abs(&self) -> f64 {
        Multivector::max_abs(self)
    }
    fn is_zero(&self) -> bool {
        Multivector::is_zero(self)
    }
    fn mul_add_scaled(&mut self, a: &Self, b: &Self, s: f64) {
        self.mul_add_into(a, b, s);
    }
}

impl Star for Multivector {
    fn dagger(&self) -> Self {
        Multivector::dagger(self)
    }
}

/// Value and partial derivatives up to `order` of a field at `point`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T> {
    point: [f64; 4],
    order: usize,
    entries: Vec<T>,
}

impl<T: Ring> Jet<T> {
    pub fn constant(point: [f64; 4], order: usize, value: T) -> Self {
        let mut j = Self::zero(point, order);
        j.entries[0] = value;
        j
    }

    pub fn zero(point: [f64; 4], order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} above {MAX_ORDER}");
        Jet { point, order, entries: vec![T::zero(); len_for_order(order)] }
    }

    /// Builds a jet entry by entry from the derivative each multi-index names.
    pub fn from_fn(point: [f64; 4], order: usize, mut f: impl FnMut(DerivIndex) -> T) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} above {MAX_ORDER}");
        let entries = tables().list[..len_for_order(order)].iter().map(|&a| f(a)).collect();
        Jet { point, order, entries }
    }

    pub fn point(&self) -> [f64; 4] {
        self.point
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> &T {
        &self.entries[0]
    }

    /// `∂^α f(x)`; panics if `|α|` exceeds the jet order.
    pub fn entry(&self, alpha: DerivIndex) -> &T {
        assert!(alpha.order() <= self.order, "derivative beyond jet order");
        &self.entries[alpha.position()]
    }

    /// Entries paired with their multi-indices, graded by order.
    pub fn iter(&self) -> impl Iterator<Item = (DerivIndex, &T)> {
        tables().list.iter().copied().zip(self.entries.iter())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Jet {
            point: self.point,
            order,
            entries: self.entries[..len_for_order(order)].to_vec(),
        }
    }

    /// `∂_μ`, lowering the order by one.
    pub fn partial(&self, mu: usize) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::InsufficientOrder { have: 0, need: 1 });
        }
        let t = tables();
        let n = len_for_order(self.order - 1);
        let entries = (0..n)
            .map(|i| self.entries[t.shift[i][mu].expect("shift within max order")].clone())
            .collect();
        Ok(Jet { point: self.point, order: self.order - 1, entries })
    }

    /// Infallible [`Jet::partial`] for callers that already checked the order.
    pub fn d(&self, mu: usize) -> Self {
        self.partial(mu).expect("jet order exhausted by differentiation")
    }

    fn check_point(&self, other: &Self) {
        assert!(
            self.point == other.point,
            "jets at different base points: {:?} vs {:?}",
            self.point,
            other.point
        );
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        self.check_point(other);
        let order = self.order.min(other.order);
        let n = len_for_order(order);
        let entries = self.entries[..n]
            .iter()
            .zip(&other.entries[..n])
            .map(|(a, b)| f(a, b))
            .collect();
        Jet { point: self.point, order, entries }
    }

    /// Leibniz product, truncated to the lower of the two orders.
    pub fn mul_jet(&self, other: &Self) -> Self {
        self.check_point(other);
        let order = self.order.min(other.order);
        let n = len_for_order(order);
        let t = tables();
        let mut entries = vec![T::zero(); n];
        for (alpha, out) in entries.iter_mut().enumerate() {
            for term in &t.leibniz[alpha] {
                let a = &self.entries[term.left];
                if a.is_zero() {
                    continue;
                }
                out.mul_add_scaled(a, &other.entries[term.right], term.weight);
            }
        }
        Jet { point: self.point, order, entries }
    }

    /// Strict Leibniz product: base points and orders must agree.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.point != other.point {
            return Err(Error::BasePointMismatch);
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(self.mul_jet(other))
    }

    pub fn add_jet(&self, other: &Self) -> Self {
        self.zip_with(other, T::add_ref)
    }

    pub fn sub_jet(&self, other: &Self) -> Self {
        self.zip_with(other, T::sub_ref)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| x.scaled(s))
    }

    /// Multiplies every entry on the left by an `x`-independent element.
    pub fn mul_const_left(&self, c: &T) -> Self {
        self.map(|x| c.mul_ref(x))
    }

    pub fn mul_const_right(&self, c: &T) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul_jet(other).sub_jet(&other.mul_jet(self))
    }

    /// Applies a linear map entrywise; linear maps commute with `∂_μ`.
    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Jet<U> {
        Jet { point: self.point, order: self.order, entries: self.entries.iter().map(f).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(T::max_abs).fold(0.0, f64::max)
    }

    /// Largest entrywise difference over the common orders.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.sub_jet(other).max_abs()
    }

    /// Sum of jets; `None` for an empty iterator.
    pub fn sum<'a>(mut jets: impl Iterator<Item = &'a Jet<T>>) -> Option<Jet<T>>
    where
        T: 'a,
    {
        let first = jets.next()?.clone();
        Some(jets.fold(first, |acc, j| acc.add_jet(j)))
    }
}

impl<T: Ring + Star> Jet<T> {
    pub fn dagger(&self) -> Self {
        self.map(T::dagger)
    }
}

impl Jet<Multivector> {
    pub fn conj(&self) -> Self {
        self.map(Multivector::conj)
    }

    pub fn grade(&self, k: usize) -> Self {
        self.map(|m| m.grade(k))
    }

    pub fn reverse(&self) -> Self {
        self.map(Multivector::reverse)
    }

    pub fn scale_complex(&self, c: Complex64) -> Self {
        self.map(|m| m.scale_complex(c))
    }

    /// Scalar-part jet `π⁰(·)|_{e→1}`.
    pub fn trace(&self) -> Jet<Complex64> {
        self.map(Multivector::trace)
    }
}

impl Jet<f64> {
    /// Lifts a real scalar jet to the multivector jet `f(x) · m`.
    pub fn times(&self, m: &Multivector) -> Jet<Multivector> {
        self.map(|&x| m.scale(x))
    }

    /// Composition `g(f(x))` from the Taylor data of `g` at `f(x)`:
    /// `coeffs[n] = g⁽ⁿ⁾(f(x))/n!`, so the result is `Σ_n coeffs[n] δⁿ` with
    /// `δ = f − f(x)`. Powers of `δ` vanish below their own degree, hence
    /// `order + 1` coefficients suffice and the result is exact.
    pub fn compose<T: Ring>(&self, coeffs: &[T]) -> Jet<T> {
        assert!(coeffs.len() > self.order, "need order + 1 Taylor coefficients");
        let mut delta = self.clone();
        delta.entries[0] = 0.0;
        let mut power = Jet::constant(self.point, self.order, 1.0);
        let mut out = Jet::<T>::zero(self.point, self.order);
        for c in coeffs.iter().take(self.order + 1) {
            for (o, p) in out.entries.iter_mut().zip(&power.entries) {
                if *p != 0.0 {
                    *o = o.add_ref(&c.scaled(*p));
                }
            }
            power = power.mul_jet(&delta);
        }
        out
    }
}

/// Strict Leibniz product of two jets with identical base point and order.
pub fn jet_mul<T: Ring>(a: &Jet<T>, b: &Jet<T>) -> Result<Jet<T>> {
    a.try_mul(b)
}

/// `∂_μ` of a jet of order ≥ 1.
pub fn jet_partial<T: Ring>(j: &Jet<T>, mu: usize) -> Result<Jet<T>> {
    j.partial(mu)
}

macro_rules! jet_binop {
    ($tr:ident, $method:ident, $impl:ident) => {
        impl<T: Ring> $tr<&Jet<T>> for &Jet<T> {
            type Output = Jet<T>;
            fn $method(self, rhs: &Jet<T>) -> Jet<T> {
                self.$impl(rhs)
            }
        }
        impl<T: Ring> $tr<Jet<T>> for Jet<T> {
            type Output = Jet<T>;
            fn $method(self, rhs: Jet<T>) -> Jet<T> {
                self.$impl(&rhs)
            }
        }
        impl<T: Ring> $tr<&Jet<T>> for Jet<T> {
            type Output = Jet<T>;
            fn $method(self, rhs: &Jet<T>) -> Jet<T> {
                self.$impl(rhs)
            }
        }
        impl<T: Ring> $tr<Jet<T>> for &Jet<T> {
            type Output = Jet<T>;
            fn $method(self, rhs: Jet<T>) -> Jet<T> {
                self.$impl(&rhs)
            }
        }
    };
}

jet_binop!(Add, add, add_jet);
jet_binop!(Sub, sub, sub_jet);
jet_binop!(Mul, mul, mul_jet);

impl<T: Ring> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        self.scale(-1.0)
    }
}

impl<T: Ring> Neg for &Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{beta, e, Blade};

    const X: [f64; 4] = [0.3, -0.2, 0.5, 0.1];

    fn coord(mu: usize, order: usize) -> Jet<Multivector> {
        FieldExpr::coordinate(mu).eval(X, order)
    }

    #[test]
    fn constant_jet_has_no_derivatives() {
        let j = Jet::constant(X, 2, beta());
        assert_eq!(*j.value(), beta());
        assert!(j.iter().skip(1).all(|(_, m)| m.is_zero()));
        assert_eq!(j.d(1).max_abs(), 0.0);
    }

    #[test]
    fn unit_constant_is_identity_for_products() {
        let j = coord(0, 3) * coord(2, 3);
        let one = Jet::constant(X, 3, e());
        assert_eq!(jet_mul(&one, &j).unwrap(), j);
    }

    #[test]
    fn square_of_coordinate() {
        let x0 = coord(0, 3);
        let sq = &x0 * &x0;
        let want = FieldExpr::monomial(0, 2).eval(X, 3);
        assert!(sq.max_diff(&want) < 1e-15);
    }

    #[test]
    fn partial_of_coordinate() {
        assert_eq!(coord(0, 2).d(0), Jet::constant(X, 1, e()));
        assert!(Jet::constant(X, 1, e()).d(1).max_abs() == 0.0);
        assert!(matches!(
            Jet::constant(X, 0, e()).partial(0),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn strict_product_rejects_mismatch() {
        let a = Jet::constant(X, 2, e());
        let b = Jet::constant(X, 1, e());
        assert_eq!(jet_mul(&a, &b), Err(Error::OrderMismatch(2, 1)));
        let c = Jet::constant([0.0; 4], 2, e());
        assert_eq!(jet_mul(&a, &c), Err(Error::BasePointMismatch));
        // the operator truncates instead
        assert_eq!((&a * &b).order(), 1);
    }

    #[test]
    fn compose_matches_closed_form_sine() {
        // sin(x¹ x²) via composition vs direct chain rule at order 2
        let f = (FieldExpr::coordinate(1) * FieldExpr::coordinate(2)).eval(X, 3).trace();
        let f = f.map(|c| c.re);
        let v = *f.value();
        let coeffs = [v.sin(), v.cos(), -v.sin() / 2.0, -v.cos() / 6.0];
        let s = f.compose(&coeffs);
        let (x1, x2) = (X[1], X[2]);
        // ∂₁ sin(x1 x2) = x2 cos, ∂₁∂₂ = cos − x1 x2 sin
        assert!((s.entry(DerivIndex([0, 1, 0, 0])) - x2 * (x1 * x2).cos()).abs() < 1e-15);
        let want = (x1 * x2).cos() - x1 * x2 * (x1 * x2).sin();
        assert!((s.entry(DerivIndex([0, 1, 1, 0])) - want).abs() < 1e-15);
        let want = -x2.powi(3) * (x1 * x2).cos();
        assert!((s.entry(DerivIndex([0, 3, 0, 0])) - want).abs() < 1e-15);
    }

    #[test]
    fn entrywise_ops_commute_with_partial() {
        let m = Multivector::blade_with(Blade::from_indices(&[0, 2]).unwrap(), Complex64::new(1.0, 2.0));
        let j = FieldExpr::coordinate(1).eval(X, 2).mul_const_right(&m);
        assert_eq!(j.dagger().d(1), j.d(1).dagger());
        assert_eq!(j.conj().d(1), j.d(1).conj());
        let parts = (0..=4).map(|k| j.grade(k)).collect::<Vec<_>>();
        assert_eq!(Jet::sum(parts.iter()).unwrap(), j);
        assert_eq!(j.commutator(&j).max_abs(), 0.0);
    }
}
