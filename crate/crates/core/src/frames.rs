//! Tetrads, genvector fields and the first-order operator `ð = h^μ ∂_μ`.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{beta, e, Multivector, ETA};
use crate::error::{Error, Result};
use crate::jet::{FieldExpr, GroupField, Jet};
use crate::lie::GroupFlavor;

type Mat4 = [[f64; 4]; 4];

/// Real 4×4 matrix `P = (p^μ_ν)`, expected to satisfy `PᵀηP = η`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix(pub Mat4);

impl LorentzMatrix {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        LorentzMatrix(m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..4).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        LorentzMatrix(m)
    }

    /// `max |PᵀηP − η|`.
    pub fn defect(&self) -> f64 {
        let p = &self.0;
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let v: f64 = (0..4).map(|k| p[k][i] * ETA[k] * p[k][j]).sum();
                let want = if i == j { ETA[i] } else { 0.0 };
                worst = worst.max((v - want).abs());
            }
        }
        worst
    }

    /// Boost with rapidity `phi` along the unit spatial direction `n`.
    pub fn boost(n: [f64; 3], phi: f64) -> Self {
        let (ch, sh) = (phi.cosh(), phi.sinh());
        let mut m = Self::identity().0;
        m[0][0] = ch;
        for i in 0..3 {
            m[0][i + 1] = n[i] * sh;
            m[i + 1][0] = n[i] * sh;
            for j in 0..3 {
                m[i + 1][j + 1] += (ch - 1.0) * n[i] * n[j];
            }
        }
        LorentzMatrix(m)
    }

    /// Spatial rotation by `angle` about the unit axis `n` (Rodrigues).
    pub fn rotation(n: [f64; 3], angle: f64) -> Self {
        let (c, s) = (angle.cos(), angle.sin());
        let mut m = Self::identity().0;
        let cross = [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                m[i + 1][j + 1] = c * delta + s * cross[i][j] + (1.0 - c) * n[i] * n[j];
            }
        }
        LorentzMatrix(m)
    }
}

pub fn is_lorentz(p: &LorentzMatrix, eps: f64) -> bool {
    p.defect() <= eps
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

/// Product of three boosts (rapidity ≤ 1) interleaved with three rotations.
pub fn random_lorentz<R: Rng + ?Sized>(rng: &mut R) -> LorentzMatrix {
    let mut p = LorentzMatrix::identity();
    for _ in 0..3 {
        let b = LorentzMatrix::boost(random_unit(rng), rng.gen_range(-1.0..=1.0));
        let r = LorentzMatrix::rotation(random_unit(rng), rng.gen_range(-std::f64::consts::PI..=std::f64::consts::PI));
        p = p.mul(&b).mul(&r);
    }
    p
}

/// Orthonormal frame `y^μ_a`, stored as `y[μ][a]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tetrad(pub Mat4);

impl Tetrad {
    /// `max |y^μ_a y^ν_b η^{ab} − η^{μν}|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let y = &self.0;
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let v: f64 = (0..4).map(|a| y[mu][a] * y[nu][a] * ETA[a]).sum();
                let want = if mu == nu { ETA[mu] } else { 0.0 };
                worst = worst.max((v - want).abs());
            }
        }
        worst
    }
}

/// `y^μ_a = p^μ_a`; orthonormality follows from `PηPᵀ = η`.
pub fn tetrad_from_lorentz(p: &LorentzMatrix, eps: f64) -> Result<Tetrad> {
    let defect = p.defect();
    if defect > eps {
        return Err(Error::NotLorentz { defect });
    }
    Ok(Tetrad(p.0))
}

/// Vector field `h^μ` with values in grade 1.
#[derive(Clone, Debug, PartialEq)]
pub enum GenvectorField {
    /// `x`-independent `h^μ`.
    Constant([Multivector; 4]),
    /// `S(x)⁻¹ h^μ S(x)` for a `G₃` field `S`.
    Conjugated { inner: Box<GenvectorField>, gauge: GroupField },
    /// Arbitrary closed-form components; no genvector conditions implied.
    Expr(Box<[FieldExpr; 4]>),
}

impl GenvectorField {
    /// `h^μ = e^μ`.
    pub fn standard() -> Self {
        GenvectorField::Constant(std::array::from_fn(Multivector::generator))
    }

    pub fn jets(&self, x: [f64; 4], order: usize) -> [Jet<Multivector>; 4] {
        match self {
            GenvectorField::Constant(h) => h.map(|m| Jet::constant(x, order, m)),
            GenvectorField::Conjugated { inner, gauge } => {
                let s = gauge.jet(x, order);
                let inv = s.inverse();
                inner.jets(x, order).map(|h| &(&inv * &h) * &s.jet)
            }
            GenvectorField::Expr(h) => std::array::from_fn(|mu| h[mu].eval(x, order)),
        }
    }
}

/// `h^μ := y^μ_a e^a`.
pub fn genvector(y: &Tetrad) -> GenvectorField {
    GenvectorField::Constant(std::array::from_fn(|mu| {
        (0..4).fold(Multivector::zero(), |acc, a| acc + Multivector::generator(a).scale(y.0[mu][a]))
    }))
}

/// `h́^μ = S⁻¹ h^μ S` for a `G₃` field `S`.
pub fn conjugated_genvector(h: &GenvectorField, s: &GroupField) -> Result<GenvectorField> {
    if s.flavor != GroupFlavor::G3 {
        return Err(Error::FlavorMismatch { group: s.flavor.to_string(), algebra: "genvector".into() });
    }
    Ok(GenvectorField::Conjugated { inner: Box::new(h.clone()), gauge: s.clone() })
}

/// Largest violation of `h^μ h^ν + h^ν h^μ = 2η^{μν} e` over every jet entry.
pub fn anticommutator_defect(h: &[Jet<Multivector>; 4]) -> f64 {
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in mu..4 {
            let anti = &(&h[mu] * &h[nu]) + &(&h[nu] * &h[mu]);
            let want = if mu == nu { e().scale(2.0 * ETA[mu]) } else { Multivector::zero() };
            let target = Jet::constant(anti.point(), anti.order(), want);
            worst = worst.max(anti.max_diff(&target));
        }
    }
    worst
}

/// Largest deviation from grade-1 and real values over every jet entry.
pub fn vector_defect(h: &[Jet<Multivector>; 4]) -> f64 {
    h.iter()
        .map(|j| j.sub_jet(&j.grade(1)).max_abs().max(j.map(|m| m.max_imag()).max_abs()))
        .fold(0.0, f64::max)
}

/// `Σ_μ ∂_μ π⁰(β h^μ)` at the base point; needs jets of order ≥ 1.
pub fn check_divergence(h: &[Jet<Multivector>; 4]) -> Result<Complex64> {
    let b = beta();
    let mut total = Complex64::new(0.0, 0.0);
    for (mu, hm) in h.iter().enumerate() {
        let scalar = hm.mul_const_left(&b).trace();
        total += scalar.partial(mu)?.value();
    }
    Ok(total)
}

/// `ð ψ = h^μ ∂_μ ψ`, one order lower than `ψ`.
pub fn dirac_op(h: &[Jet<Multivector>; 4], psi: &Jet<Multivector>) -> Result<Jet<Multivector>> {
    let mut out: Option<Jet<Multivector>> = None;
    for (mu, hm) in h.iter().enumerate() {
        let term = hm * &psi.partial(mu)?;
        out = Some(match out {
            Some(acc) => acc + term,
            None => term,
        });
    }
    Ok(out.expect("four components"))
}

/// `e ∂^μ ∂_μ ψ`, two orders lower than `ψ`.
pub fn dalembertian(psi: &Jet<Multivector>) -> Result<Jet<Multivector>> {
    let mut out = Jet::<Multivector>::zero(psi.point(), psi.order().saturating_sub(2));
    for mu in 0..4 {
        out = out + psi.partial(mu)?.partial(mu)?.scale(ETA[mu]);
    }
    Ok(out)
}

/// Random genvector field `S(x)⁻¹ (P^μ_a e^a) S(x)` with `P` a random
/// Lorentz matrix and `S` the supplied `G₃` field.
pub fn random_genvector<R: Rng + ?Sized>(rng: &mut R, twist: GroupField) -> GenvectorField {
    let p = random_lorentz(rng);
    let base = genvector(&Tetrad(p.0));
    GenvectorField::Conjugated { inner: Box::new(base), gauge: twist }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Idempotent;
    use crate::jet::{Direction, GroupFactor};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const X: [f64; 4] = [0.2, -0.3, 0.4, 0.7];

    fn twist() -> GroupField {
        GroupField::new(
            GroupFlavor::G3,
            vec![
                GroupFactor {
                    direction: Direction::tau([0.3, -1.0, 0.2]).unwrap(),
                    profile: FieldExpr::sin([0.5, 1.0, -0.7, 0.2], 0.3),
                },
                GroupFactor {
                    direction: Direction::Tau([0.0, 0.0, 1.0]),
                    profile: &FieldExpr::coordinate(0) * &FieldExpr::coordinate(2),
                },
            ],
            Idempotent::Minus,
        )
        .unwrap()
    }

    #[test]
    fn lorentz_membership() {
        assert!(is_lorentz(&LorentzMatrix::identity(), 1e-15));
        let mut m = LorentzMatrix::identity();
        m.0[1][1] = -1.0;
        assert!(is_lorentz(&m, 1e-15));
        let mut m = LorentzMatrix::identity();
        m.0[0][0] = 2.0;
        assert!(!is_lorentz(&m, 1e-6));
        assert!(tetrad_from_lorentz(&m, 1e-6).is_err());
    }

    #[test]
    fn random_lorentz_tetrads_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let p = random_lorentz(&mut rng);
            let y = tetrad_from_lorentz(&p, 1e-12).unwrap();
            assert!(y.orthonormality_defect() < 1e-12);
            let h = genvector(&y).jets(X, 0);
            assert!(anticommutator_defect(&h) < 1e-12);
        }
    }

    #[test]
    fn rotation_keeps_time_leg() {
        let p = LorentzMatrix::rotation([0.0, 0.6, 0.8], 1.1);
        let y = tetrad_from_lorentz(&p, 1e-14).unwrap();
        assert_eq!([y.0[0][0], y.0[1][0], y.0[2][0], y.0[3][0]], [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn standard_genvector() {
        let h = genvector(&tetrad_from_lorentz(&LorentzMatrix::identity(), 0.0).unwrap());
        assert_eq!(h, GenvectorField::standard());
    }

    #[test]
    fn non_orthonormal_frame_fails_anticommutator() {
        let mut y = LorentzMatrix::identity().0;
        y[0][0] = 1.5;
        let h = genvector(&Tetrad(y)).jets(X, 0);
        assert!(anticommutator_defect(&h) > 0.1);
    }

    #[test]
    fn conjugated_genvector_conditions() {
        let h = conjugated_genvector(&GenvectorField::standard(), &twist()).unwrap();
        let jets = h.jets(X, 2);
        assert!(anticommutator_defect(&jets) < 1e-12);
        assert!(vector_defect(&jets) < 1e-12);
        assert!(check_divergence(&jets).unwrap().norm() < 1e-12);
        // π⁰(β h́^μ) equals π⁰(β e^μ) pointwise
        for (mu, j) in jets.iter().enumerate() {
            let s = j.mul_const_left(&beta()).trace();
            let want = if mu == 0 { 1.0 } else { 0.0 };
            assert!((s.value() - want).norm() < 1e-12);
        }
    }

    #[test]
    fn trivial_conjugation_leaves_h() {
        let h = conjugated_genvector(&GenvectorField::standard(), &GroupField::identity(GroupFlavor::G3)).unwrap();
        assert_eq!(h.jets(X, 1), GenvectorField::standard().jets(X, 1));
    }

    #[test]
    fn time_scaled_frame_has_divergence() {
        let mut comps: [FieldExpr; 4] = std::array::from_fn(|mu| FieldExpr::constant(&Multivector::generator(mu)));
        comps[0] = (&FieldExpr::constant(&e()) + &FieldExpr::coordinate(0)).mul_const_right(&beta());
        let h = GenvectorField::Expr(Box::new(comps)).jets(X, 1);
        assert!((check_divergence(&h).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn dirac_operator_examples() {
        let h = GenvectorField::standard().jets(X, 2);
        let psi = FieldExpr::coordinate(0).eval(X, 2);
        let d = dirac_op(&h, &psi).unwrap();
        assert_eq!(*d.value(), beta());
        let c = Jet::constant(X, 2, beta());
        assert_eq!(dirac_op(&h, &c).unwrap().max_abs(), 0.0);
        assert!(dirac_op(&h, &Jet::constant(X, 0, e())).is_err());
    }
}
