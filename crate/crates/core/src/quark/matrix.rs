//! 3×3 complex matrices and 3×3 matrices with multivector entries.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{e, Multivector};
use crate::jet::{Ring, Star};
use crate::yang_mills::{AlgebraKind, LieValued};

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

/// Complex 3×3 matrix, row-major. Serialized as `[[[re, im]; 3]; 3]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[[f64; 2]; 3]; 3]", into = "[[[f64; 2]; 3]; 3]")]
pub struct CMat3(pub [[Complex64; 3]; 3]);

impl From<[[[f64; 2]; 3]; 3]> for CMat3 {
    fn from(raw: [[[f64; 2]; 3]; 3]) -> Self {
        CMat3(raw.map(|row| row.map(|[re, im]| Complex64::new(re, im))))
    }
}

impl From<CMat3> for [[[f64; 2]; 3]; 3] {
    fn from(m: CMat3) -> Self {
        m.0.map(|row| row.map(|c| [c.re, c.im]))
    }
}

impl CMat3 {
    pub const fn zero() -> Self {
        CMat3([[C0; 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = C1;
        }
        m
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        CMat3(rows.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for k in 0..3 {
                let a = self.0[i][k];
                if a == C0 {
                    continue;
                }
                for j in 0..3 {
                    m.0[i][j] += a * other.0[k][j];
                }
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMat3(self.0.map(|r| r.map(|c| c * s)))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul_ref(other) - other.mul_ref(self)
    }

    /// `max |K† + K|`.
    pub fn antihermitian_defect(&self) -> f64 {
        (self.adjoint() + *self).max_abs()
    }

    /// `max |V†V − 1|`.
    pub fn unitary_defect(&self) -> f64 {
        (self.adjoint().mul_ref(self) - Self::identity()).max_abs()
    }

    /// Matrix exponential by scaling and squaring of the Taylor series.
    pub fn exp(&self) -> Self {
        let norm: f64 = self.0.iter().map(|r| r.iter().map(|c| c.norm()).sum::<f64>()).fold(0.0, f64::max);
        let mut squarings = 0;
        let mut s = 1.0;
        while norm * s > 0.25 {
            s *= 0.5;
            squarings += 1;
        }
        let a = self.scale(Complex64::new(s, 0.0));
        let mut term = Self::identity();
        let mut sum = Self::identity();
        for n in 1..=18 {
            term = term.mul_ref(&a).scale(Complex64::new(1.0 / n as f64, 0.0));
            sum = sum + term;
        }
        for _ in 0..squarings {
            sum = sum.mul_ref(&sum);
        }
        sum
    }
}

impl Add for CMat3 {
    type Output = CMat3;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for CMat3 {
    type Output = CMat3;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Mul for CMat3 {
    type Output = CMat3;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Ring for CMat3 {
    fn zero() -> Self {
        CMat3::zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        CMat3::mul_ref(self, rhs)
    }
    fn scaled(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }
    fn max_abs(&self) -> f64 {
        CMat3::max_abs(self)
    }
    fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|c| *c == C0)
    }
}

impl Star for CMat3 {
    fn dagger(&self) -> Self {
        self.adjoint()
    }
}

impl LieValued for CMat3 {
    fn algebra_defect(&self, kind: AlgebraKind) -> f64 {
        match kind {
            AlgebraKind::U3 => self.antihermitian_defect(),
            _ => f64::INFINITY,
        }
    }
}

/// Random anti-Hermitian matrix with entries in the unit box.
pub fn random_antihermitian<R: Rng + ?Sized>(rng: &mut R) -> CMat3 {
    let mut m = CMat3::zero();
    for i in 0..3 {
        m.0[i][i] = Complex64::new(0.0, rng.gen_range(-1.0..=1.0));
        for j in (i + 1)..3 {
            let z = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            m.0[i][j] = z;
            m.0[j][i] = -z.conj();
        }
    }
    m
}

/// Element of `Mat(3, ℂ) ⊗ ℂ⊗Cl(1,3)`, stored densely.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatMultivector(pub [[Multivector; 3]; 3]);

impl MatMultivector {
    pub const fn zero() -> Self {
        MatMultivector([[Multivector::zero(); 3]; 3])
    }

    /// `E ⊗ e`.
    pub fn identity() -> Self {
        Self::scalar_matrix(&e())
    }

    /// `E ⊗ u`.
    pub fn scalar_matrix(u: &Multivector) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = *u;
        }
        m
    }

    /// `B ⊗ e`.
    pub fn from_cmat(b: &CMat3) -> Self {
        MatMultivector(b.0.map(|r| r.map(Multivector::scalar)))
    }

    /// First-row element `(T ⊗ e)Ψ̌` with entries `Ψ₁, Ψ₂, Ψ₃`.
    pub fn first_row(psi: [Multivector; 3]) -> Self {
        let mut m = Self::zero();
        m.0[0] = psi;
        m
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for k in 0..3 {
                let a = &self.0[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..3 {
                    m.0[i][j].mul_add_into(a, &other.0[k][j], 1.0);
                }
            }
        }
        m
    }

    /// Conjugate transpose with `†` applied to every entry.
    pub fn dagger(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i].dagger();
            }
        }
        m
    }

    /// `tr : Mat(3,ℂ)⊗cl → ℂ⊗cl`.
    pub fn trace(&self) -> Multivector {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Entrywise scalar part `π̇⁰`.
    pub fn pi0_dot(&self) -> CMat3 {
        CMat3(self.0.map(|r| r.map(|m| m.trace())))
    }

    pub fn map(&self, f: impl Fn(&Multivector) -> Multivector) -> Self {
        MatMultivector(self.0.map(|r| r.map(|m| f(&m))))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(Multivector::max_abs).fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul_ref(other) - other.mul_ref(self)
    }
}

impl Add for MatMultivector {
    type Output = MatMultivector;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for MatMultivector {
    type Output = MatMultivector;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Mul for MatMultivector {
    type Output = MatMultivector;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Ring for MatMultivector {
    fn zero() -> Self {
        MatMultivector::zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        MatMultivector::mul_ref(self, rhs)
    }
    fn scaled(&self, s: f64) -> Self {
        self.map(|m| m.scale(s))
    }
    fn max_abs(&self) -> f64 {
        MatMultivector::max_abs(self)
    }
    fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Multivector::is_zero)
    }
    fn mul_add_scaled(&mut self, a: &Self, b: &Self, s: f64) {
        for i in 0..3 {
            for k in 0..3 {
                let x = &a.0[i][k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..3 {
                    self.0[i][j].mul_add_into(x, &b.0[k][j], s);
                }
            }
        }
    }
}

impl Star for MatMultivector {
    fn dagger(&self) -> Self {
        MatMultivector::dagger(self)
    }
}

/// `mat_mul(P, Q)`.
pub fn mat_mul(p: &MatMultivector, q: &MatMultivector) -> MatMultivector {
    p.mul_ref(q)
}

pub fn mat_dagger(p: &MatMultivector) -> MatMultivector {
    p.dagger()
}

pub fn mat_trace(p: &MatMultivector) -> Multivector {
    p.trace()
}

pub fn pi0_dot(p: &MatMultivector) -> CMat3 {
    p.pi0_dot()
}
