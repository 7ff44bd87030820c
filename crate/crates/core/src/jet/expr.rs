//! Closed-form fields: sums of `coefficient × blade × Π scalar factors`,
//! where each factor is a coordinate monomial or a plane-wave sinusoid.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Jet, Ring};
use crate::algebra::{blade_mul, Blade, Multivector};

/// Elementary real scalar function of `x ∈ ℝ⁴`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", try_from = "RawFactor")]
pub enum Factor {
    /// `(x^μ)^n`
    Mono(usize, u32),
    /// `sin(k·x + phase)`
    Sin { k: [f64; 4], phase: f64 },
    /// `cos(k·x + phase)`
    Cos { k: [f64; 4], phase: f64 },
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum RawFactor {
    Mono(usize, u32),
    Sin { k: [f64; 4], phase: f64 },
    Cos { k: [f64; 4], phase: f64 },
}

impl TryFrom<RawFactor> for Factor {
    type Error = String;

    fn try_from(raw: RawFactor) -> Result<Self, Self::Error> {
        let finite = |k: &[f64; 4], p: f64| k.iter().all(|x| x.is_finite()) && p.is_finite();
        match raw {
            RawFactor::Mono(mu, _) if mu > 3 => Err(format!("coordinate index {mu} out of range 0..=3")),
            RawFactor::Mono(mu, n) => Ok(Factor::Mono(mu, n)),
            RawFactor::Sin { k, phase } | RawFactor::Cos { k, phase } if !finite(&k, phase) => {
                Err("non-finite wave vector or phase".to_string())
            }
            RawFactor::Sin { k, phase } => Ok(Factor::Sin { k, phase }),
            RawFactor::Cos { k, phase } => Ok(Factor::Cos { k, phase }),
        }
    }
}

impl Factor {
    fn eval(&self, x: [f64; 4], order: usize) -> Jet<f64> {
        match *self {
            Factor::Mono(mu, n) => Jet::from_fn(x, order, |a| {
                let m = a.0[mu] as u32;
                if a.order() != m as usize || m > n {
                    return 0.0;
                }
                let falling = ((n - m + 1)..=n).map(|i| i as f64).product::<f64>();
                falling * x[mu].powi((n - m) as i32)
            }),
            Factor::Sin { k, phase } | Factor::Cos { k, phase } => {
                let arg = k.iter().zip(x).map(|(k, x)| k * x).sum::<f64>() + phase;
                let (s, c) = arg.sin_cos();
                // derivatives of sin cycle sin, cos, -sin, -cos
                let cycle = match self {
                    Factor::Sin { .. } => [s, c, -s, -c],
                    _ => [c, -s, -c, s],
                };
                Jet::from_fn(x, order, |a| {
                    let scale: f64 = (0..4).map(|i| k[i].powi(a.0[i] as i32)).product();
                    scale * cycle[a.order() % 4]
                })
            }
        }
    }

    fn value(&self, x: [f64; 4]) -> f64 {
        match *self {
            Factor::Mono(mu, n) => x[mu].powi(n as i32),
            Factor::Sin { k, phase } => (k.iter().zip(x).map(|(k, x)| k * x).sum::<f64>() + phase).sin(),
            Factor::Cos { k, phase } => (k.iter().zip(x).map(|(k, x)| k * x).sum::<f64>() + phase).cos(),
        }
    }

    /// `∂_μ` of the factor as `(scale, replacement)`; `None` replacement
    /// means the constant 1.
    fn partial(&self, mu: usize) -> (f64, Option<Factor>) {
        match *self {
            Factor::Mono(m, n) if m == mu && n > 0 => {
                (n as f64, (n > 1).then_some(Factor::Mono(m, n - 1)))
            }
            Factor::Mono(..) => (0.0, None),
            Factor::Sin { k, phase } => (k[mu], Some(Factor::Cos { k, phase })),
            Factor::Cos { k, phase } => (-k[mu], Some(Factor::Sin { k, phase })),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: Complex64,
    pub blade: Blade,
    #[serde(default)]
    pub factors: Vec<Factor>,
}

impl Term {
    fn scalar_jet(&self, x: [f64; 4], order: usize) -> Jet<f64> {
        self.factors
            .iter()
            .fold(Jet::constant(x, order, 1.0), |acc, f| acc.mul_jet(&f.eval(x, order)))
    }
}

/// A multivector field given in closed form.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldExpr {
    pub terms: Vec<Term>,
}

impl FieldExpr {
    pub fn zero() -> Self {
        FieldExpr { terms: Vec::new() }
    }

    pub fn term(coeff: Complex64, blade: Blade, factors: Vec<Factor>) -> Self {
        FieldExpr { terms: vec![Term { coeff, blade, factors }] }
    }

    /// Real scalar field `c · Π factors`.
    pub fn scalar(c: f64, factors: Vec<Factor>) -> Self {
        Self::term(Complex64::new(c, 0.0), Blade::SCALAR, factors)
    }

    /// `x-independent` multivector.
    pub fn constant(m: &Multivector) -> Self {
        FieldExpr {
            terms: m
                .terms()
                .map(|(blade, coeff)| Term { coeff, blade, factors: Vec::new() })
                .collect(),
        }
    }

    /// `x^μ e`
    pub fn coordinate(mu: usize) -> Self {
        Self::monomial(mu, 1)
    }

    /// `(x^μ)^n e`
    pub fn monomial(mu: usize, n: u32) -> Self {
        Self::scalar(1.0, vec![Factor::Mono(mu, n)])
    }

    pub fn sin(k: [f64; 4], phase: f64) -> Self {
        Self::scalar(1.0, vec![Factor::Sin { k, phase }])
    }

    pub fn cos(k: [f64; 4], phase: f64) -> Self {
        Self::scalar(1.0, vec![Factor::Cos { k, phase }])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coeff == Complex64::new(0.0, 0.0))
    }

    /// True when every term is a real multiple of `e`.
    pub fn is_real_scalar(&self) -> bool {
        self.terms.iter().all(|t| t.blade == Blade::SCALAR && t.coeff.im == 0.0)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        FieldExpr {
            terms: self.terms.iter().map(|t| Term { coeff: t.coeff * c, ..t.clone() }).collect(),
        }
    }

    /// Field times a constant multivector on the right.
    pub fn mul_const_right(&self, m: &Multivector) -> Self {
        self * &Self::constant(m)
    }

    pub fn mul_const_left(&self, m: &Multivector) -> Self {
        &Self::constant(m) * self
    }

    /// Exact `∂_μ` by the product rule; no simplification is attempted.
    pub fn partial(&self, mu: usize) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            for (i, f) in t.factors.iter().enumerate() {
                let (s, replacement) = f.partial(mu);
                if s == 0.0 {
                    continue;
                }
                let mut factors = t.factors.clone();
                match replacement {
                    Some(r) => factors[i] = r,
                    None => {
                        factors.remove(i);
                    }
                }
                terms.push(Term { coeff: t.coeff * s, blade: t.blade, factors });
            }
        }
        FieldExpr { terms }
    }

    /// Jet of the field at `x` with every derivative up to `order`.
    pub fn eval(&self, x: [f64; 4], order: usize) -> Jet<Multivector> {
        let mut out = Jet::<Multivector>::zero(x, order);
        for t in &self.terms {
            let unit = Multivector::blade_with(t.blade, t.coeff);
            out = out.add_jet(&t.scalar_jet(x, order).times(&unit));
        }
        out
    }

    /// Real scalar jet of the `e`-coefficient's real part.
    pub fn scalar_jet(&self, x: [f64; 4], order: usize) -> Jet<f64> {
        let mut out = Jet::<f64>::zero(x, order);
        for t in self.terms.iter().filter(|t| t.blade == Blade::SCALAR) {
            out = out.add_jet(&t.scalar_jet(x, order).scale(t.coeff.re));
        }
        out
    }

    pub fn value(&self, x: [f64; 4]) -> Multivector {
        let mut m = Multivector::zero();
        for t in &self.terms {
            let s: f64 = t.factors.iter().map(|f| f.value(x)).product();
            let c = m.coeff(t.blade) + t.coeff * s;
            m.set_coeff(t.blade, c);
        }
        m
    }
}

impl Add for &FieldExpr {
    type Output = FieldExpr;
    fn add(self, rhs: &FieldExpr) -> FieldExpr {
        FieldExpr { terms: self.terms.iter().chain(&rhs.terms).cloned().collect() }
    }
}

impl Add for FieldExpr {
    type Output = FieldExpr;
    fn add(mut self, rhs: FieldExpr) -> FieldExpr {
        self.terms.extend(rhs.terms);
        self
    }
}

impl Sub for &FieldExpr {
    type Output = FieldExpr;
    fn sub(self, rhs: &FieldExpr) -> FieldExpr {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &FieldExpr {
    type Output = FieldExpr;
    fn mul(self, rhs: &FieldExpr) -> FieldExpr {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let (sign, blade) = blade_mul(a.blade, b.blade);
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(Term { coeff: a.coeff * b.coeff * sign as f64, blade, factors });
            }
        }
        FieldExpr { terms }
    }
}

impl Mul for FieldExpr {
    type Output = FieldExpr;
    fn mul(self, rhs: FieldExpr) -> FieldExpr {
        &self * &rhs
    }
}

impl Ring for FieldExpr {
    fn zero() -> Self {
        FieldExpr::zero()
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
        self.scale(Complex64::new(s, 0.0))
    }
    /// Largest coefficient magnitude (not a sup-norm over `x`).
    fn max_abs(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max)
    }
    fn is_zero(&self) -> bool {
        FieldExpr::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::beta;
    use crate::jet::DerivIndex;

    #[test]
    fn constant_expression_jet() {
        let j = FieldExpr::constant(&beta()).eval([0.1, 0.2, 0.3, 0.4], 2);
        assert_eq!(*j.value(), beta());
        assert_eq!(j.d(0).max_abs(), 0.0);
    }

    #[test]
    fn linear_field_jet() {
        let e1 = Multivector::generator(1);
        let j = FieldExpr::coordinate(0).mul_const_right(&e1).eval([2.0, 0.0, 0.0, 0.0], 1);
        assert_eq!(*j.value(), e1.scale(2.0));
        assert_eq!(*j.entry(DerivIndex::unit(0)), e1);
        for mu in 1..4 {
            assert!(j.entry(DerivIndex::unit(mu)).is_zero());
        }
    }

    #[test]
    fn symbolic_and_jet_partials_agree() {
        let f = &(&FieldExpr::sin([0.7, -1.2, 0.3, 0.5], 0.4) * &FieldExpr::monomial(1, 2))
            * &FieldExpr::constant(&beta());
        let x = [0.2, -0.4, 0.9, 0.1];
        for mu in 0..4 {
            let via_jet = f.eval(x, 3).d(mu);
            let via_expr = f.partial(mu).eval(x, 2);
            assert!(via_jet.max_diff(&via_expr) < 1e-14, "mu = {mu}");
        }
    }

    #[test]
    fn value_matches_jet_value() {
        let f = &FieldExpr::cos([1.0, 0.5, -0.5, 2.0], -0.3) * &FieldExpr::monomial(3, 3);
        let x = [0.5, 0.6, 0.7, 0.8];
        assert!(f.value(x).approx_eq(f.eval(x, 0).value(), 1e-15));
    }

    #[test]
    fn json_shape() {
        let f = FieldExpr::term(
            Complex64::new(1.0, -2.0),
            "e01".parse().unwrap(),
            vec![Factor::Mono(2, 3), Factor::Sin { k: [1.0, 0.0, 0.0, 0.0], phase: 0.5 }],
        );
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"[{"coeff":[1.0,-2.0],"blade":"e01","factors":[{"mono":[2,3]},{"sin":{"k":[1.0,0.0,0.0,0.0],"phase":0.5}}]}]"#
        );
        let back: FieldExpr = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<FieldExpr>(r#"[{"coeff":[1,0],"blade":"e","factors":[{"mono":[7,1]}]}]"#).is_err());
        assert!(serde_json::from_str::<FieldExpr>(r#"[{"coeff":[1,0],"blade":"e5"}]"#).is_err());
    }
}
