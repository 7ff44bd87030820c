//! Random closed-form fields for property checks.
//!
//! Profiles are `a₀ + a₁ sin(k·x + φ) + a₂ x^μ x^ν` with every coefficient
//! drawn from `[−1, 1]`; algebra-valued fields combine such profiles with
//! constant elements chosen so that membership holds by construction.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{theta, Blade, Idempotent, Multivector, DIM};
use crate::frames::{random_lorentz, genvector, GenvectorField, Tetrad};
use crate::jet::{Direction, Factor, FieldExpr, GroupFactor, GroupField};
use crate::lie::{tau, GroupFlavor};

fn unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-1.0..=1.0)
}

/// Point in `[−1, 1]⁴`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    [unit(rng), unit(rng), unit(rng), unit(rng)]
}

/// Real scalar profile `a₀ + a₁ sin(k·x + φ) + a₂ x^μ x^ν`.
pub fn random_profile<R: Rng + ?Sized>(rng: &mut R) -> FieldExpr {
    let a0 = unit(rng);
    let a1 = unit(rng);
    let k = random_point(rng);
    let phase = rng.gen_range(-std::f64::consts::PI..=std::f64::consts::PI);
    let a2 = unit(rng);
    let mu = rng.gen_range(0..4);
    let nu = rng.gen_range(0..4);
    let quad = if mu == nu {
        vec![Factor::Mono(mu, 2)]
    } else {
        vec![Factor::Mono(mu, 1), Factor::Mono(nu, 1)]
    };
    let mut f = FieldExpr::scalar(a0, vec![]);
    f = &f + &FieldExpr::scalar(a1, vec![Factor::Sin { k, phase }]);
    &f + &FieldExpr::scalar(a2, quad)
}

/// Multivector with every complex coefficient in `[−1, 1] + i[−1, 1]`.
pub fn random_multivector<R: Rng + ?Sized>(rng: &mut R) -> Multivector {
    let mut c = [Complex64::new(0.0, 0.0); DIM];
    for z in c.iter_mut() {
        *z = Complex64::new(unit(rng), unit(rng));
    }
    Multivector::from_coeffs(c)
}

pub fn random_real_multivector<R: Rng + ?Sized>(rng: &mut R) -> Multivector {
    let mut c = [0.0; DIM];
    for x in c.iter_mut() {
        *x = unit(rng);
    }
    Multivector::from_real(c)
}

/// Real-profile combination `Σ_n p_n(x) M_n` of the given constants.
pub fn profile_combination<R: Rng + ?Sized>(rng: &mut R, constants: &[Multivector]) -> FieldExpr {
    constants
        .iter()
        .fold(FieldExpr::zero(), |acc, m| &acc + &random_profile(rng).mul_const_right(m))
}

/// `L₃`-valued field `Σ_k p_k(x) τ^k`.
pub fn random_l3_field<R: Rng + ?Sized>(rng: &mut R) -> FieldExpr {
    profile_combination(rng, &[tau(1), tau(2), tau(3)])
}

/// `L(χ)`-valued field `(Σ_k p_k τ^k + p_θ θ) χ`.
pub fn random_lchi_field<R: Rng + ?Sized>(rng: &mut R, chi: Idempotent) -> FieldExpr {
    let x = chi.element();
    let gens = [tau(1) * x, tau(2) * x, tau(3) * x, theta() * x];
    profile_combination(rng, &gens)
}

/// Wave function `Σ_n p_n(x) M_n χ` in the left ideal `I(χ)`.
pub fn random_psi<R: Rng + ?Sized>(rng: &mut R, chi: Idempotent) -> FieldExpr {
    let x = chi.element();
    let constants: Vec<Multivector> = (0..3).map(|_| random_multivector(rng) * x).collect();
    profile_combination(rng, &constants)
}

pub fn random_potential<R: Rng + ?Sized>(rng: &mut R, mut component: impl FnMut(&mut R) -> FieldExpr) -> [FieldExpr; 4] {
    [component(rng), component(rng), component(rng), component(rng)]
}

fn random_tau_direction<R: Rng + ?Sized>(rng: &mut R) -> Direction {
    loop {
        if let Ok(d) = Direction::tau([unit(rng), unit(rng), unit(rng)]) {
            return d;
        }
    }
}

/// `G₃` field with two `τ`-factors, or `G(χ)` field with two `τ`-factors
/// and one `θ`-factor.
pub fn random_group_field<R: Rng + ?Sized>(rng: &mut R, flavor: GroupFlavor, chi: Idempotent) -> GroupField {
    let mut factors = vec![
        GroupFactor { direction: random_tau_direction(rng), profile: random_profile(rng) },
        GroupFactor { direction: random_tau_direction(rng), profile: random_profile(rng) },
    ];
    if flavor == GroupFlavor::GChi {
        factors.push(GroupFactor { direction: Direction::Theta, profile: random_profile(rng) });
    }
    GroupField { flavor, factors, chi }
}

/// Constant genvector from a random Lorentz matrix.
pub fn random_constant_genvector<R: Rng + ?Sized>(rng: &mut R) -> GenvectorField {
    genvector(&Tetrad(random_lorentz(rng).0))
}

/// `S(x)⁻¹ (P^μ_a e^a) S(x)` for random `P` and random `G₃` field `S`.
pub fn random_genvector<R: Rng + ?Sized>(rng: &mut R) -> GenvectorField {
    let base = random_constant_genvector(rng);
    let s = random_group_field(rng, GroupFlavor::G3, Idempotent::default());
    GenvectorField::Conjugated { inner: Box::new(base), gauge: s }
}

/// Blade-by-blade random real polynomial of degree ≤ 2 with real
/// coefficients; used where exactness under second differences matters.
pub fn random_quadratic_field<R: Rng + ?Sized>(rng: &mut R) -> FieldExpr {
    let mut f = FieldExpr::zero();
    for b in Blade::all() {
        let mut poly = FieldExpr::scalar(unit(rng), vec![]);
        for mu in 0..4 {
            poly = &poly + &FieldExpr::scalar(unit(rng), vec![Factor::Mono(mu, 1)]);
            for nu in mu..4 {
                let fac = if mu == nu {
                    vec![Factor::Mono(mu, 2)]
                } else {
                    vec![Factor::Mono(mu, 1), Factor::Mono(nu, 1)]
                };
                poly = &poly + &FieldExpr::scalar(unit(rng), fac);
            }
        }
        f = &f + &poly.mul_const_right(&Multivector::blade_with(b, Complex64::new(unit(rng), unit(rng))));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ideal_i_defect;
    use crate::frames::{anticommutator_defect, check_divergence};
    use crate::lie::{g3_defect, gchi_defect, l3_defect, lchi_defect};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn memberships_hold_by_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for chi in [Idempotent::Minus, Idempotent::Plus, Idempotent::Unit] {
            for _ in 0..10 {
                let x = random_point(&mut rng);
                let a = random_lchi_field(&mut rng, chi).eval(x, 2);
                let c = random_l3_field(&mut rng).eval(x, 2);
                let psi = random_psi(&mut rng, chi).eval(x, 2);
                for (_, v) in a.iter() {
                    assert!(lchi_defect(v, chi) < 1e-12);
                }
                for (_, v) in c.iter() {
                    assert!(l3_defect(v) < 1e-12);
                }
                for (_, v) in psi.iter() {
                    assert!(ideal_i_defect(v, &chi.element()) < 1e-12);
                }
                let u = random_group_field(&mut rng, GroupFlavor::GChi, chi).jet(x, 0);
                assert!(gchi_defect(u.jet.value(), chi) < 1e-12);
                let s = random_group_field(&mut rng, GroupFlavor::G3, chi).jet(x, 0);
                assert!(g3_defect(s.jet.value()) < 1e-12);
            }
        }
    }

    #[test]
    fn random_genvectors_are_genvectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = random_point(&mut rng);
            let h = random_genvector(&mut rng).jets(x, 2);
            assert!(anticommutator_defect(&h) < 1e-11);
            assert!(check_divergence(&h).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn same_seed_same_fields() {
        let a = random_psi(&mut ChaCha8Rng::seed_from_u64(9), Idempotent::Minus);
        let b = random_psi(&mut ChaCha8Rng::seed_from_u64(9), Idempotent::Minus);
        assert_eq!(a, b);
    }
}
