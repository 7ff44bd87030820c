//! `U(3)`-valued and `u(3)`-valued closed-form fields.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{random_antihermitian, CMat3};
use crate::error::{Error, Result};
use crate::jet::{FieldExpr, Jet};
use crate::random::random_profile;

/// One factor `exp(f(x) K)` with a constant anti-Hermitian direction `K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct U3Factor {
    pub direction: CMat3,
    pub profile: FieldExpr,
}

/// `V(x) = Π_i exp(f_i(x) K_i)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct U3Field {
    pub factors: Vec<U3Factor>,
}

/// `B(x) = Σ_i f_i(x) K_i` with anti-Hermitian `K_i`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BField {
    pub terms: Vec<U3Factor>,
}

fn validate(factors: &[U3Factor]) -> Result<()> {
    for f in factors {
        let d = f.direction.antihermitian_defect();
        if d > 1e-12 {
            return Err(Error::InvalidDirection(format!("direction is not anti-Hermitian (defect {d:e})")));
        }
        if !f.profile.is_real_scalar() {
            return Err(Error::InvalidDirection("profile must be a real scalar field".into()));
        }
    }
    Ok(())
}

impl U3Field {
    pub fn new(factors: Vec<U3Factor>) -> Result<Self> {
        validate(&factors)?;
        Ok(U3Field { factors })
    }

    pub fn validate(&self) -> Result<()> {
        validate(&self.factors)
    }

    /// Constant field `V(x) = exp(K)`.
    pub fn constant(k: CMat3) -> Result<Self> {
        Self::new(vec![U3Factor { direction: k, profile: FieldExpr::scalar(1.0, vec![]) }])
    }

    /// Exact jet: each factor is `Σ_n exp(f₀K) Kⁿ/n! δⁿ` with `δ = f − f₀`.
    pub fn jet(&self, x: [f64; 4], order: usize) -> Jet<CMat3> {
        let mut acc = Jet::constant(x, order, CMat3::identity());
        for factor in &self.factors {
            let f = factor.profile.scalar_jet(x, order);
            let k = factor.direction;
            let base = k.scale((*f.value()).into()).exp();
            let mut coeffs = Vec::with_capacity(order + 1);
            let mut power = base;
            let mut fact = 1.0;
            for n in 0..=order {
                if n > 0 {
                    power = power.mul_ref(&k);
                    fact *= n as f64;
                }
                coeffs.push(power.scale((1.0 / fact).into()));
            }
            acc = acc.mul_jet(&f.compose(&coeffs));
        }
        acc
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        U3Field {
            factors: (0..2)
                .map(|_| U3Factor { direction: random_antihermitian(rng), profile: random_profile(rng) })
                .collect(),
        }
    }
}

impl BField {
    pub fn new(terms: Vec<U3Factor>) -> Result<Self> {
        validate(&terms)?;
        Ok(BField { terms })
    }

    pub fn validate(&self) -> Result<()> {
        validate(&self.terms)
    }

    pub fn jet(&self, x: [f64; 4], order: usize) -> Jet<CMat3> {
        let mut out = Jet::zero(x, order);
        for t in &self.terms {
            let d = t.direction;
            out = out + t.profile.scalar_jet(x, order).map(|&s| d.scale(s.into()));
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        BField {
            terms: (0..2)
                .map(|_| U3Factor { direction: random_antihermitian(rng), profile: random_profile(rng) })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::DerivIndex;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const X: [f64; 4] = [0.2, 0.1, -0.4, 0.3];

    #[test]
    fn jet_is_unitary_to_every_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = U3Field::random(&mut rng).jet(X, 3);
        let prod = &v.dagger() * &v;
        assert!(prod.max_diff(&Jet::constant(X, 3, CMat3::identity())) < 1e-12);
    }

    #[test]
    fn linear_profile_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let k = random_antihermitian(&mut rng);
        let v = U3Field::new(vec![U3Factor { direction: k, profile: FieldExpr::coordinate(2) }]).unwrap();
        let j = v.jet([0.0; 4], 2);
        assert!((*j.value() - CMat3::identity()).max_abs() < 1e-15);
        assert!((*j.entry(DerivIndex::unit(2)) - k).max_abs() < 1e-15);
        assert!((*j.entry(DerivIndex([0, 0, 2, 0])) - k.mul_ref(&k)).max_abs() < 1e-14);
    }

    #[test]
    fn rejects_hermitian_direction() {
        let h = CMat3::identity();
        assert!(U3Field::constant(h).is_err());
        assert!(U3Field::constant(h.scale(Complex64::new(0.0, 1.0))).is_ok());
    }

    #[test]
    fn b_field_is_antihermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = BField::random(&mut rng).jet(X, 2);
        assert!((&b + &b.dagger()).max_abs() < 1e-15);
    }
}
