//! Group-valued fields built from one-parameter factors with fixed Lie
//! directions, `S(x) = Π_i (e cos f_i(x) + n_i sin f_i(x))`.
//!
//! Each direction squares to `−e`, so every factor is an exact exponential
//! `exp(f_i n_i)` whose derivatives follow from the chain rule alone.

use serde::{Deserialize, Serialize};

use super::{FieldExpr, Jet};
use crate::algebra::{e, theta, Idempotent, Multivector};
use crate::error::{Error, Result};
use crate::lie::{tau, GroupFlavor};

/// Unit Lie-algebra direction `n` with `n² = −e`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDirection", into = "RawDirection")]
pub enum Direction {
    /// `Σ n_k τ^k` with `|n| = 1`.
    Tau([f64; 3]),
    /// The pseudoscalar `θ`; only meaningful in `G(χ)`.
    Theta,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawDirection {
    Named(String),
    Vector([f64; 3]),
}

impl TryFrom<RawDirection> for Direction {
    type Error = Error;

    fn try_from(raw: RawDirection) -> Result<Self> {
        match raw {
            RawDirection::Named(s) => match s.as_str() {
                "tau1" => Ok(Direction::Tau([1.0, 0.0, 0.0])),
                "tau2" => Ok(Direction::Tau([0.0, 1.0, 0.0])),
                "tau3" => Ok(Direction::Tau([0.0, 0.0, 1.0])),
                "theta" => Ok(Direction::Theta),
                _ => Err(Error::InvalidDirection(s)),
            },
            RawDirection::Vector(v) => Direction::tau(v),
        }
    }
}

impl From<Direction> for RawDirection {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Tau(v) => RawDirection::Vector(v),
            Direction::Theta => RawDirection::Named("theta".into()),
        }
    }
}

impl Direction {
    /// Normalised `L₃` direction; rejects zero or non-finite vectors.
    pub fn tau(v: [f64; 3]) -> Result<Self> {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::InvalidDirection(format!("{v:?}")));
        }
        Ok(Direction::Tau(v.map(|x| x / n)))
    }

    pub fn to_multivector(&self) -> Multivector {
        match self {
            Direction::Tau(v) => (1..=3).fold(Multivector::zero(), |acc, k| acc + tau(k).scale(v[k - 1])),
            Direction::Theta => theta(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupFactor {
    pub direction: Direction,
    /// Real scalar profile `f(x)`.
    pub profile: FieldExpr,
}

/// Closed-form `G₃` or `G(χ)` field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupField {
    pub flavor: GroupFlavor,
    pub factors: Vec<GroupFactor>,
    #[serde(default)]
    pub chi: Idempotent,
}

/// Jet of a group-valued field, tagged with the group it lives in.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupJet {
    pub flavor: GroupFlavor,
    pub chi: Idempotent,
    pub jet: Jet<Multivector>,
}

impl GroupJet {
    /// `S⁻¹ = S†` entrywise.
    pub fn inverse(&self) -> Jet<Multivector> {
        self.jet.dagger()
    }

    pub fn identity(flavor: GroupFlavor, chi: Idempotent, x: [f64; 4], order: usize) -> Self {
        GroupJet { flavor, chi, jet: Jet::constant(x, order, e()) }
    }
}

impl GroupField {
    pub fn new(flavor: GroupFlavor, factors: Vec<GroupFactor>, chi: Idempotent) -> Result<Self> {
        let g = GroupField { flavor, factors, chi };
        g.validate()?;
        Ok(g)
    }

    pub fn identity(flavor: GroupFlavor) -> Self {
        GroupField { flavor, factors: Vec::new(), chi: Idempotent::default() }
    }

    /// Checks that directions belong to the flavor's algebra and profiles
    /// are real scalars.
    pub fn validate(&self) -> Result<()> {
        for f in &self.factors {
            if self.flavor == GroupFlavor::G3 && f.direction == Direction::Theta {
                return Err(Error::InvalidDirection("theta is not in L3".into()));
            }
            if !f.profile.is_real_scalar() {
                return Err(Error::InvalidDirection("profile must be a real scalar field".into()));
            }
        }
        Ok(())
    }

    /// Product of the exponential factors in the even subalgebra, before
    /// any `χ` wrapping.
    fn exp_jet(&self, x: [f64; 4], order: usize) -> Jet<Multivector> {
        let mut acc = Jet::constant(x, order, e());
        for factor in &self.factors {
            let n = factor.direction.to_multivector();
            let f = factor.profile.scalar_jet(x, order);
            let v = *f.value();
            let (s, c) = v.sin_cos();
            let (dsin, dcos) = ([s, c, -s, -c], [c, -s, -c, s]);
            let mut fact = 1.0;
            let coeffs: Vec<Multivector> = (0..=order)
                .map(|m| {
                    if m > 0 {
                        fact *= m as f64;
                    }
                    (e().scale(dcos[m % 4]) + n.scale(dsin[m % 4])).scale(1.0 / fact)
                })
                .collect();
            acc = acc.mul_jet(&f.compose(&coeffs));
        }
        acc
    }

    pub fn jet(&self, x: [f64; 4], order: usize) -> GroupJet {
        let exp = self.exp_jet(x, order);
        let jet = match self.flavor {
            GroupFlavor::G3 => exp,
            GroupFlavor::GChi => {
                let one = Jet::constant(x, order, e());
                let chi = self.chi.element();
                one.add_jet(&exp.sub_jet(&one).mul_const_right(&chi))
            }
        };
        GroupJet { flavor: self.flavor, chi: self.chi, jet }
    }
}

/// Jet of `S(x)` with exact chain-rule derivatives.
pub fn eval_group(field: &GroupField, x: [f64; 4], order: usize) -> GroupJet {
    field.jet(x, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::DerivIndex;
    use crate::lie::{exp_g3, L3Element};

    fn factor(direction: Direction, profile: FieldExpr) -> GroupFactor {
        GroupFactor { direction, profile }
    }

    #[test]
    fn zero_profile_is_identity() {
        let g = GroupField::new(
            GroupFlavor::G3,
            vec![factor(Direction::Tau([0.0, 0.0, 1.0]), FieldExpr::zero())],
            Idempotent::Minus,
        )
        .unwrap();
        let j = g.jet([0.1, 0.2, 0.3, 0.4], 2).jet;
        assert_eq!(j, Jet::constant([0.1, 0.2, 0.3, 0.4], 2, e()));
    }

    #[test]
    fn linear_profile_first_derivative() {
        let g = GroupField::new(
            GroupFlavor::G3,
            vec![factor(Direction::Tau([0.0, 0.0, 1.0]), FieldExpr::coordinate(1))],
            Idempotent::Minus,
        )
        .unwrap();
        let j = g.jet([0.0; 4], 1).jet;
        assert_eq!(*j.value(), e());
        assert!(j.entry(DerivIndex::unit(1)).approx_eq(&tau(3), 1e-15));
        for mu in [0, 2, 3] {
            assert!(j.entry(DerivIndex::unit(mu)).is_zero());
        }
    }

    #[test]
    fn value_matches_closed_form_exponential() {
        let g = GroupField::new(
            GroupFlavor::G3,
            vec![factor(Direction::tau([1.0, 2.0, -2.0]).unwrap(), FieldExpr::scalar(1.3, vec![]))],
            Idempotent::Minus,
        )
        .unwrap();
        let j = g.jet([0.0; 4], 0).jet;
        let s = L3Element([1.3 / 3.0, 2.6 / 3.0, -2.6 / 3.0]);
        assert!(j.value().approx_eq(&exp_g3(&s).value, 1e-14));
    }

    #[test]
    fn theta_rejected_for_g3() {
        let r = GroupField::new(
            GroupFlavor::G3,
            vec![factor(Direction::Theta, FieldExpr::coordinate(0))],
            Idempotent::Minus,
        );
        assert!(r.is_err());
        assert!(Direction::tau([0.0; 3]).is_err());
    }

    #[test]
    fn direction_json() {
        let d: Direction = serde_json::from_str(r#""tau2""#).unwrap();
        assert_eq!(d, Direction::Tau([0.0, 1.0, 0.0]));
        let d: Direction = serde_json::from_str("[0.0, 3.0, 4.0]").unwrap();
        assert_eq!(d, Direction::Tau([0.0, 0.6, 0.8]));
        assert!(serde_json::from_str::<Direction>(r#""tau9""#).is_err());
    }
}
