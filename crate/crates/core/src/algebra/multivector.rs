use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use super::blade::{blade_mul, Blade, DIM, SIGN};

const C0: Complex64 = Complex64::new(0.0, 0.0);

/// Element of the complexified algebra ℂ⊗Cl(1,3): one complex coefficient
/// per basis blade, indexed by blade mask.
///
/// The real algebra is the subset with vanishing imaginary parts; see
/// [`Multivector::is_real`].
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    coeffs: [Complex64; DIM],
}

const fn reverse_sign(grade: usize) -> f64 {
    match grade {
        2 | 3 => -1.0,
        _ => 1.0,
    }
}

const fn build_dagger_sign() -> [f64; DIM] {
    let mut t = [0.0; DIM];
    let beta = Blade::generator(0);
    let mut i = 0;
    while i < DIM {
        let b = Blade::from_mask(i as u8);
        let (s1, r1) = blade_mul(beta, b);
        let (s2, _) = blade_mul(r1, beta);
        t[i] = reverse_sign(b.grade()) * (s1 as f64) * (s2 as f64);
        i += 1;
    }
    t
}

/// `β e^B∼ β = DAGGER_SIGN[B] e^B` for every basis blade.
static DAGGER_SIGN: [f64; DIM] = build_dagger_sign();

impl Multivector {
    pub const fn zero() -> Self {
        Multivector { coeffs: [C0; DIM] }
    }

    /// Identity element `e`.
    pub fn one() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    pub fn scalar(c: Complex64) -> Self {
        let mut m = Self::zero();
        m.coeffs[0] = c;
        m
    }

    pub fn real_scalar(x: f64) -> Self {
        Self::scalar(Complex64::new(x, 0.0))
    }

    pub fn blade(b: Blade) -> Self {
        Self::blade_with(b, Complex64::new(1.0, 0.0))
    }

    pub fn blade_with(b: Blade, c: Complex64) -> Self {
        let mut m = Self::zero();
        m.coeffs[b.index()] = c;
        m
    }

    /// Generator `e^a`.
    pub fn generator(a: usize) -> Self {
        Self::blade(Blade::generator(a))
    }

    pub fn from_coeffs(coeffs: [Complex64; DIM]) -> Self {
        Multivector { coeffs }
    }

    pub fn from_real(coeffs: [f64; DIM]) -> Self {
        let mut m = Self::zero();
        for (c, x) in m.coeffs.iter_mut().zip(coeffs) {
            *c = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn coeffs(&self) -> &[Complex64; DIM] {
        &self.coeffs
    }

    pub fn coeff(&self, b: Blade) -> Complex64 {
        self.coeffs[b.index()]
    }

    pub fn set_coeff(&mut self, b: Blade, c: Complex64) {
        self.coeffs[b.index()] = c;
    }

    /// Nonzero terms in canonical blade order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, Complex64)> + '_ {
        Blade::all()
            .map(|b| (b, self.coeff(b)))
            .filter(|(_, c)| *c != C0)
    }

    fn filter_blades(&self, keep: impl Fn(Blade) -> bool) -> Self {
        let mut m = Self::zero();
        for b in Blade::all().filter(|&b| keep(b)) {
            m.coeffs[b.index()] = self.coeffs[b.index()];
        }
        m
    }

    /// Grade projection π^k.
    pub fn grade(&self, k: usize) -> Self {
        self.filter_blades(|b| b.grade() == k)
    }

    pub fn even(&self) -> Self {
        self.filter_blades(|b| b.grade() % 2 == 0)
    }

    pub fn odd(&self) -> Self {
        self.filter_blades(|b| b.grade() % 2 == 1)
    }

    pub fn reverse(&self) -> Self {
        let mut m = *self;
        for b in Blade::all() {
            m.coeffs[b.index()] *= reverse_sign(b.grade());
        }
        m
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> Self {
        let mut m = *self;
        for c in m.coeffs.iter_mut() {
            *c = c.conj();
        }
        m
    }

    /// Hermitian conjugation `U† = β Ū∼ β`.
    pub fn dagger(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m.coeffs[i] = self.coeffs[i].conj() * DAGGER_SIGN[i];
        }
        m
    }

    /// Scalar part with `e → 1`.
    pub fn trace(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Hermitian scalar product `(U, V) = Tr(U† V)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.dagger().mul_ref(other).trace()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul_ref(other) - other.mul_ref(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == C0)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        (*self - *other).max_abs() <= eps
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for c in m.coeffs.iter_mut() {
            *c *= s;
        }
        m
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        let mut m = *self;
        for c in m.coeffs.iter_mut() {
            *c *= s;
        }
        m
    }

    /// Clifford product.
    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        out.mul_add_into(self, rhs, 1.0);
        out
    }

    /// `self += s · (a b)`, skipping zero coefficients of `a`.
    #[inline]
    pub(crate) fn mul_add_into(&mut self, a: &Self, b: &Self, s: f64) {
        for i in 0..DIM {
            let ai = a.coeffs[i];
            if ai == C0 {
                continue;
            }
            let ai = ai * s;
            let row = &SIGN[i];
            for j in 0..DIM {
                let bj = b.coeffs[j];
                let re = ai.re * bj.re - ai.im * bj.im;
                let im = ai.re * bj.im + ai.im * bj.re;
                let k = i ^ j;
                self.coeffs[k].re += row[j] * re;
                self.coeffs[k].im += row[j] * im;
            }
        }
    }
}

impl Default for Multivector {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}{:+}i){}", c.re, c.im, b)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.mul_ref(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale_complex(rhs)
    }
}

/// Clifford product of two multivectors.
pub fn mul(u: &Multivector, v: &Multivector) -> Multivector {
    u.mul_ref(v)
}
