//! Lepton doublet: Dirac-type equation coupled to an `L(χ)` potential `A`
//! and an `L₃` potential `C`, the two currents, both gauge actions and the
//! anti-Hermitian-part identity behind current conservation.
//!
//! ```text
//! h^μ(∂_μΨ + ΨA_μ − C_μΨ) + imΨ = 0
//! ∂_μA^{μν} − [A_μ, A^{μν}] = Ψ† iβ h^ν Ψ
//! ∂_μC^{μν} − [C_μ, C^{μν}] = θβh^ν − π⁴(θβh^ν)
//! ```

use rand::Rng;

use crate::algebra::{beta, ideal_i_defect, theta, Idempotent, Multivector, I};
use crate::error::{Error, Result};
use crate::frames::{anticommutator_defect, GenvectorField};
use crate::jet::{FieldExpr, GroupJet, Jet};
use crate::lie::GroupFlavor;
use crate::random;
use crate::yang_mills::{curvature, divergence_lhs, gauge_transform_with, jets_defect, AlgebraKind};

/// Closed-form lepton fields.
#[derive(Clone, Debug, PartialEq)]
pub struct LeptonFields {
    pub psi: FieldExpr,
    pub a: [FieldExpr; 4],
    pub c: [FieldExpr; 4],
    pub h: GenvectorField,
    pub mass: f64,
    pub chi: Idempotent,
}

/// Jets of every lepton field at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct LeptonConfig {
    pub psi: Jet<Multivector>,
    pub a: [Jet<Multivector>; 4],
    pub c: [Jet<Multivector>; 4],
    pub h: [Jet<Multivector>; 4],
    pub mass: f64,
    pub chi: Idempotent,
}

/// Left sides minus right sides of the three lepton equations.
#[derive(Clone, Debug, PartialEq)]
pub struct LeptonResiduals {
    pub dirac: Jet<Multivector>,
    pub ym_a: [Jet<Multivector>; 4],
    pub ym_c: [Jet<Multivector>; 4],
}

impl LeptonResiduals {
    /// Largest entrywise difference over common jet orders.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut worst = self.dirac.max_diff(&other.dirac);
        for nu in 0..4 {
            worst = worst.max(self.ym_a[nu].max_diff(&other.ym_a[nu]));
            worst = worst.max(self.ym_c[nu].max_diff(&other.ym_c[nu]));
        }
        worst
    }

    pub fn max_abs(&self) -> (f64, f64, f64) {
        let m = |js: &[Jet<Multivector>; 4]| js.iter().map(Jet::max_abs).fold(0.0, f64::max);
        (self.dirac.max_abs(), m(&self.ym_a), m(&self.ym_c))
    }
}

/// Gauge field acting on a lepton configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum LeptonGauge {
    /// `G(χ)` field: `Ψ → ΨU`, `A → U⁻¹AU − U⁻¹∂U`.
    U(GroupJet),
    /// `G₃` field: `Ψ → S⁻¹ΨS`, `h → S⁻¹hS`, `A → S⁻¹AS − χS⁻¹∂S`,
    /// `C → S⁻¹CS − S⁻¹∂S`.
    S(GroupJet),
}

impl LeptonFields {
    pub fn jets(&self, x: [f64; 4], order: usize) -> LeptonConfig {
        LeptonConfig {
            psi: self.psi.eval(x, order),
            a: std::array::from_fn(|mu| self.a[mu].eval(x, order)),
            c: std::array::from_fn(|mu| self.c[mu].eval(x, order)),
            h: self.h.jets(x, order),
            mass: self.mass,
            chi: self.chi,
        }
    }

    /// Random configuration with every type invariant holding by construction.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, chi: Idempotent) -> Self {
        LeptonFields {
            psi: random::random_psi(rng, chi),
            a: random::random_potential(rng, |r| random::random_lchi_field(r, chi)),
            c: random::random_potential(rng, random::random_l3_field),
            h: random::random_genvector(rng),
            mass: rng.gen_range(-1.0..=1.0),
            chi,
        }
    }
}

fn sum4(js: impl IntoIterator<Item = Jet<Multivector>>) -> Jet<Multivector> {
    js.into_iter().reduce(|a, b| a + b).expect("nonempty")
}

/// `Σ_μ h^μ(∂_μΨ + ΨA_μ − C_μΨ) + imΨ`.
pub fn dirac_residual(cfg: &LeptonConfig) -> Result<Jet<Multivector>> {
    let psi = &cfg.psi;
    let mut terms = Vec::with_capacity(5);
    for mu in 0..4 {
        let cov = &(&psi.partial(mu)? + &(psi * &cfg.a[mu])) - &(&cfg.c[mu] * psi);
        terms.push(&cfg.h[mu] * &cov);
    }
    terms.push(psi.scale_complex(I * cfg.mass));
    Ok(sum4(terms))
}

/// `J^ν_(A) = Ψ† iβ h^ν Ψ`.
pub fn current_a(psi: &Jet<Multivector>, h: &[Jet<Multivector>; 4]) -> [Jet<Multivector>; 4] {
    let pd = psi.dagger();
    let ib = beta().scale_complex(I);
    std::array::from_fn(|nu| &(&pd * &h[nu].mul_const_left(&ib)) * psi)
}

/// `θβh^ν`.
pub fn theta_beta_h(h: &[Jet<Multivector>; 4]) -> [Jet<Multivector>; 4] {
    let tb = theta() * beta();
    std::array::from_fn(|nu| h[nu].mul_const_left(&tb))
}

/// `J^ν_(C) = θβh^ν − π⁴(θβh^ν)`.
pub fn current_c(h: &[Jet<Multivector>; 4]) -> [Jet<Multivector>; 4] {
    theta_beta_h(h).map(|t| &t - &t.grade(4))
}

/// `∂_μ a^{μν} − [a_μ, a^{μν}] − j^ν` with `a^{μν}` built from `a`.
fn ym_residual(a: &[Jet<Multivector>; 4], j: &[Jet<Multivector>; 4]) -> Result<[Jet<Multivector>; 4]> {
    let f = curvature(a)?;
    let div = divergence_lhs(a, &f)?;
    Ok(std::array::from_fn(|nu| &div[nu] - &j[nu]))
}

/// Residuals of all three equations; potentials need order ≥ 2.
pub fn residuals(cfg: &LeptonConfig) -> Result<LeptonResiduals> {
    let have = cfg.a[0].order().min(cfg.c[0].order());
    if have < 2 {
        return Err(Error::InsufficientOrder { have, need: 2 });
    }
    Ok(LeptonResiduals {
        dirac: dirac_residual(cfg)?,
        ym_a: ym_residual(&cfg.a, &current_a(&cfg.psi, &cfg.h))?,
        ym_c: ym_residual(&cfg.c, &current_c(&cfg.h))?,
    })
}

fn expect_flavor(g: &GroupJet, want: GroupFlavor) -> Result<()> {
    if g.flavor != want {
        return Err(Error::FlavorMismatch { group: g.flavor.to_string(), algebra: want.to_string() });
    }
    Ok(())
}

/// `G(χ)` action; the result is one order below `cfg` in `A`.
pub fn transform_u(cfg: &LeptonConfig, u: &GroupJet) -> Result<LeptonConfig> {
    expect_flavor(u, GroupFlavor::GChi)?;
    let inv = u.inverse();
    Ok(LeptonConfig {
        psi: &cfg.psi * &u.jet,
        a: gauge_transform_with(&cfg.a, &u.jet, &inv, None)?,
        c: cfg.c.clone(),
        h: cfg.h.clone(),
        mass: cfg.mass,
        chi: cfg.chi,
    })
}

/// `G₃` action; `χ` commutes with the even field `S`.
pub fn transform_s(cfg: &LeptonConfig, s: &GroupJet) -> Result<LeptonConfig> {
    expect_flavor(s, GroupFlavor::G3)?;
    let inv = s.inverse();
    let conj = |j: &Jet<Multivector>| &(&inv * j) * &s.jet;
    Ok(LeptonConfig {
        psi: conj(&cfg.psi),
        a: gauge_transform_with(&cfg.a, &s.jet, &inv, Some(&cfg.chi.element()))?,
        c: gauge_transform_with(&cfg.c, &s.jet, &inv, None)?,
        h: std::array::from_fn(|mu| conj(&cfg.h[mu])),
        mass: cfg.mass,
        chi: cfg.chi,
    })
}

pub fn transform(cfg: &LeptonConfig, gauge: &LeptonGauge) -> Result<LeptonConfig> {
    match gauge {
        LeptonGauge::U(u) => transform_u(cfg, u),
        LeptonGauge::S(s) => transform_s(cfg, s),
    }
}

/// Image of the residuals under the gauge action: `R → RU` for `U`,
/// `R → S⁻¹RS` for `S`; Yang-Mills parts conjugate.
pub fn transform_residuals(r: &LeptonResiduals, gauge: &LeptonGauge) -> LeptonResiduals {
    match gauge {
        LeptonGauge::U(u) => {
            let inv = u.inverse();
            LeptonResiduals {
                dirac: &r.dirac * &u.jet,
                ym_a: std::array::from_fn(|nu| &(&inv * &r.ym_a[nu]) * &u.jet),
                ym_c: r.ym_c.clone(),
            }
        }
        LeptonGauge::S(s) => {
            let inv = s.inverse();
            let conj = |j: &Jet<Multivector>| &(&inv * j) * &s.jet;
            LeptonResiduals {
                dirac: conj(&r.dirac),
                ym_a: std::array::from_fn(|nu| conj(&r.ym_a[nu])),
                ym_c: std::array::from_fn(|nu| conj(&r.ym_c[nu])),
            }
        }
    }
}

/// `max |residuals(transform(cfg)) − transform(residuals(cfg))|`; needs
/// order-3 configurations so the Yang-Mills parts survive the gauge term.
pub fn covariance_check(cfg: &LeptonConfig, gauge: &LeptonGauge) -> Result<f64> {
    let before = residuals(cfg)?;
    let after = residuals(&transform(cfg, gauge)?)?;
    Ok(after.max_diff(&transform_residuals(&before, gauge)))
}

/// Largest violation of the type invariants: `Ψ ∈ I(χ)`, `A ∈ L(χ)`,
/// `C ∈ L₃`, and the anticommutation relation for `h`.
pub fn config_defect(cfg: &LeptonConfig) -> f64 {
    let x = cfg.chi.element();
    let psi = cfg.psi.iter().map(|(_, v)| ideal_i_defect(v, &x)).fold(0.0, f64::max);
    psi.max(jets_defect(&cfg.a, AlgebraKind::LChi(cfg.chi)))
        .max(jets_defect(&cfg.c, AlgebraKind::L3))
        .max(anticommutator_defect(&cfg.h))
}

/// Both sides of the anti-Hermitian-part identity at the base point:
///
/// `Ψ†iβL − (Ψ†iβL)† = (∂_μJ^μ − [A_μ, J^μ]) + Ψ†iθ(∂_μ(θβh^μ) − [C_μ, θβh^μ])Ψ`
///
/// with `L` the full Dirac left side and `J = J_(A)`. Holds for arbitrary
/// fields; returns `(lhs, rhs)`.
pub fn antihermitian_sides(cfg: &LeptonConfig) -> Result<(Multivector, Multivector)> {
    let l = dirac_residual(cfg)?;
    let ib = beta().scale_complex(I);
    let x = &cfg.psi.dagger().mul_const_right(&ib) * &l;
    let lhs = *x.value() - x.value().dagger();

    let j = current_a(&cfg.psi, &cfg.h);
    let tbh = theta_beta_h(&cfg.h);
    let mut cons = Multivector::zero();
    let mut gravity = Multivector::zero();
    for mu in 0..4 {
        cons += *j[mu].partial(mu)?.value() - *cfg.a[mu].commutator(&j[mu]).value();
        gravity += *tbh[mu].partial(mu)?.value() - *cfg.c[mu].commutator(&tbh[mu]).value();
    }
    let psi = *cfg.psi.value();
    let it = theta().scale_complex(I);
    let rhs = cons + psi.dagger() * it * gravity * psi;
    Ok((lhs, rhs))
}

pub fn antihermitian_identity(cfg: &LeptonConfig) -> Result<f64> {
    let (lhs, rhs) = antihermitian_sides(cfg)?;
    Ok((lhs - rhs).max_abs())
}

/// Residuals behind the gravity-current conservation argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GravitySupport {
    /// `max_μ |[C_μ, π⁴(θβh^μ)]|`
    pub cmupi: f64,
    /// `|∂_μ π⁴(θβh^μ)|`
    pub pi4j: f64,
    /// Difference between `∂_μ(θβh^μ) − [C_μ, θβh^μ]` and
    /// `∂_μJ^μ_(C) − [C_μ, J^μ_(C)]`.
    pub equivalence: f64,
}

pub fn gravity_current_support(h: &[Jet<Multivector>; 4], c: &[Jet<Multivector>; 4]) -> Result<GravitySupport> {
    let tbh = theta_beta_h(h);
    let jc = current_c(h);
    let mut cmupi: f64 = 0.0;
    let mut pi4j = Multivector::zero();
    let mut full = Multivector::zero();
    let mut reduced = Multivector::zero();
    for mu in 0..4 {
        let p4 = tbh[mu].grade(4);
        cmupi = cmupi.max(c[mu].commutator(&p4).value().max_abs());
        pi4j += *p4.partial(mu)?.value();
        full += *tbh[mu].partial(mu)?.value() - *c[mu].commutator(&tbh[mu]).value();
        reduced += *jc[mu].partial(mu)?.value() - *c[mu].commutator(&jc[mu]).value();
    }
    Ok(GravitySupport { cmupi, pi4j: pi4j.max_abs(), equivalence: (full - reduced).max_abs() })
}
