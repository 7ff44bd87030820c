//! Quark triplet on `Mat(3,ℂ) ⊗ ℂ⊗Cl(1,3)`.
//!
//! Checked elements carry a matrix factor: `Ψ̌` has the three flavors in its
//! first row, `Ǎ = E⊗A`, `B̌ = B⊗e`, `Č = E⊗C`, `ȟ = E⊗h`. The Dirac-type
//! equation reads
//!
//! ```text
//! ȟ^μ(∂_μΨ̌ + Ψ̌Ǎ_μ + Ψ̌B̌_μ − Č_μΨ̌) + imΨ̌ = 0
//! ```
//!
//! and is invariant under `G(χ)`, `U(3)` and `G₃` gauge fields.

mod matrix;
mod u3;

use rand::Rng;

use crate::algebra::{beta, ideal_i_defect, theta, Idempotent, Multivector, I};
use crate::error::{Error, Result};
use crate::frames::{anticommutator_defect, GenvectorField};
use crate::jet::{FieldExpr, GroupJet, Jet, Ring};
use crate::lepton::{self, current_c, theta_beta_h, LeptonFields};
use crate::lie::GroupFlavor;
use crate::random;
use crate::yang_mills::{
    conservation_residual, curvature, divergence_lhs, gauge_transform_with, jets_defect, AlgebraKind,
};

pub use matrix::{mat_dagger, mat_mul, mat_trace, pi0_dot, random_antihermitian, CMat3, MatMultivector};
pub use u3::{BField, U3Factor, U3Field};

type MvJet = Jet<Multivector>;
type MatJet = Jet<MatMultivector>;

/// Closed-form quark fields.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarkFields {
    pub psi: [FieldExpr; 3],
    pub a: [FieldExpr; 4],
    pub b: [BField; 4],
    pub c: [FieldExpr; 4],
    pub h: GenvectorField,
    pub mass: f64,
    pub chi: Idempotent,
}

/// Jets of every quark field at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarkConfig {
    pub psi: [MvJet; 3],
    pub a: [MvJet; 4],
    pub b: [Jet<CMat3>; 4],
    pub c: [MvJet; 4],
    pub h: [MvJet; 4],
    pub mass: f64,
    pub chi: Idempotent,
}

impl QuarkFields {
    pub fn jets(&self, x: [f64; 4], order: usize) -> QuarkConfig {
        QuarkConfig {
            psi: std::array::from_fn(|l| self.psi[l].eval(x, order)),
            a: std::array::from_fn(|mu| self.a[mu].eval(x, order)),
            b: std::array::from_fn(|mu| self.b[mu].jet(x, order)),
            c: std::array::from_fn(|mu| self.c[mu].eval(x, order)),
            h: self.h.jets(x, order),
            mass: self.mass,
            chi: self.chi,
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, chi: Idempotent) -> Self {
        QuarkFields {
            psi: std::array::from_fn(|_| random::random_psi(rng, chi)),
            a: random::random_potential(rng, |r| random::random_lchi_field(r, chi)),
            b: std::array::from_fn(|_| BField::random(rng)),
            c: random::random_potential(rng, random::random_l3_field),
            h: random::random_genvector(rng),
            mass: rng.gen_range(-1.0..=1.0),
            chi,
        }
    }

    /// Single-flavor embedding: `Ψ₁ = Ψ`, `Ψ₂ = Ψ₃ = 0`, `B = 0`.
    pub fn from_lepton(l: &LeptonFields) -> Self {
        QuarkFields {
            psi: [l.psi.clone(), FieldExpr::zero(), FieldExpr::zero()],
            a: l.a.clone(),
            b: Default::default(),
            c: l.c.clone(),
            h: l.h.clone(),
            mass: l.mass,
            chi: l.chi,
        }
    }
}

fn entry(b: &Jet<CMat3>, k: usize, l: usize) -> MvJet {
    b.map(|m| Multivector::scalar(m.0[k][l]))
}

impl QuarkConfig {
    pub fn order(&self) -> usize {
        self.psi[0].order()
    }

    /// `Ψ̌`, supported on the first row.
    pub fn checked_psi(&self) -> MatJet {
        let p = &self.psi;
        Jet::from_fn(p[0].point(), p[0].order(), |alpha| {
            MatMultivector::first_row([*p[0].entry(alpha), *p[1].entry(alpha), *p[2].entry(alpha)])
        })
    }

    pub fn checked_a(&self, mu: usize) -> MatJet {
        self.a[mu].map(MatMultivector::scalar_matrix)
    }

    pub fn checked_b(&self, mu: usize) -> MatJet {
        self.b[mu].map(MatMultivector::from_cmat)
    }

    pub fn checked_c(&self, mu: usize) -> MatJet {
        self.c[mu].map(MatMultivector::scalar_matrix)
    }

    pub fn checked_h(&self, mu: usize) -> MatJet {
        self.h[mu].map(MatMultivector::scalar_matrix)
    }

    /// Largest violation of the type invariants, including anti-Hermitian `B`.
    pub fn defect(&self) -> f64 {
        let x = self.chi.element();
        let psi = self
            .psi
            .iter()
            .flat_map(|p| p.iter().map(|(_, v)| ideal_i_defect(v, &x)))
            .fold(0.0, f64::max);
        psi.max(jets_defect(&self.a, AlgebraKind::LChi(self.chi)))
            .max(jets_defect(&self.b, AlgebraKind::U3))
            .max(jets_defect(&self.c, AlgebraKind::L3))
            .max(anticommutator_defect(&self.h))
    }
}

/// Matrix form `ȟ^μ(∂_μΨ̌ + Ψ̌Ǎ_μ + Ψ̌B̌_μ − Č_μΨ̌) + imΨ̌`.
pub fn quark_dirac_matrix(cfg: &QuarkConfig) -> Result<MatJet> {
    let psi = cfg.checked_psi();
    let mut out: Option<MatJet> = None;
    for mu in 0..4 {
        let cov = &(&(&psi.partial(mu)? + &(&psi * &cfg.checked_a(mu))) + &(&psi * &cfg.checked_b(mu)))
            - &(&cfg.checked_c(mu) * &psi);
        let term = &cfg.checked_h(mu) * &cov;
        out = Some(match out {
            Some(acc) => acc + term,
            None => term,
        });
    }
    let mass = psi.map(|m| m.map(|u| u.scale_complex(I * cfg.mass)));
    Ok(out.expect("four components") + mass)
}

/// Component form `h^μ(∂_μΨ_l + Ψ_lA_μ + Ψ_k b^k_{lμ} − C_μΨ_l) + imΨ_l`.
pub fn quark_dirac_components(cfg: &QuarkConfig) -> Result<[MvJet; 3]> {
    let mut out = Vec::with_capacity(3);
    for l in 0..3 {
        let psi = &cfg.psi[l];
        let mut acc = psi.scale_complex(I * cfg.mass);
        for mu in 0..4 {
            let mut cov = &(&psi.partial(mu)? + &(psi * &cfg.a[mu])) - &(&cfg.c[mu] * psi);
            for k in 0..3 {
                cov = &cov + &(&cfg.psi[k] * &entry(&cfg.b[mu], k, l));
            }
            acc = &acc + &(&cfg.h[mu] * &cov);
        }
        out.push(acc);
    }
    Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
}

/// Disagreement between the matrix and component forms, including any
/// residual outside the first row.
pub fn matrix_component_agreement(cfg: &QuarkConfig) -> Result<f64> {
    let m = quark_dirac_matrix(cfg)?;
    let c = quark_dirac_components(cfg)?;
    let mut worst: f64 = 0.0;
    for (_, v) in m.iter() {
        for row in 1..3 {
            for u in &v.0[row] {
                worst = worst.max(u.max_abs());
            }
        }
    }
    for (l, cl) in c.iter().enumerate() {
        worst = worst.max(m.map(|v| v.0[0][l]).max_diff(cl));
    }
    Ok(worst)
}

/// `J̌^ν` with entries `J^ν_{kl} = Ψ_k† iβ h^ν Ψ_l`.
pub fn current_matrix(psi: &[MvJet; 3], h: &[MvJet; 4]) -> [MatJet; 4] {
    let ib = beta().scale_complex(I);
    let pd: Vec<MvJet> = psi.iter().map(Jet::dagger).collect();
    std::array::from_fn(|nu| {
        let left: Vec<MvJet> = pd.iter().map(|p| p * &h[nu].mul_const_left(&ib)).collect();
        let entries: Vec<Vec<MvJet>> = (0..3).map(|k| (0..3).map(|l| &left[k] * &psi[l]).collect()).collect();
        Jet::from_fn(psi[0].point(), h[nu].order().min(psi[0].order()), |alpha| {
            MatMultivector(std::array::from_fn(|k| std::array::from_fn(|l| *entries[k][l].entry(alpha))))
        })
    })
}

/// The three currents driving the gauge fields.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarkCurrents {
    /// `⅓ tr J̌^ν`
    pub a: [MvJet; 4],
    /// `π̇⁰(J̌^ν)`
    pub b: [Jet<CMat3>; 4],
    /// `θβh^ν − π⁴(θβh^ν)`
    pub c: [MvJet; 4],
}

pub fn currents(cfg: &QuarkConfig) -> QuarkCurrents {
    let j = current_matrix(&cfg.psi, &cfg.h);
    QuarkCurrents {
        a: std::array::from_fn(|nu| j[nu].map(|m| m.trace().scale(1.0 / 3.0))),
        b: std::array::from_fn(|nu| j[nu].map(MatMultivector::pi0_dot)),
        c: current_c(&cfg.h),
    }
}

/// Membership defects `(J_(A) ∈ L(χ), J̲_(B) ∈ u(3), J_(C) ∈ L₃)`.
pub fn current_typing(cfg: &QuarkConfig, cur: &QuarkCurrents) -> (f64, f64, f64) {
    (
        jets_defect(&cur.a, AlgebraKind::LChi(cfg.chi)),
        jets_defect(&cur.b, AlgebraKind::U3),
        jets_defect(&cur.c, AlgebraKind::L3),
    )
}

/// Left sides minus right sides of the quark system.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarkResiduals {
    pub dirac: [MvJet; 3],
    pub ym_a: [MvJet; 4],
    pub ym_b: [Jet<CMat3>; 4],
    pub ym_c: [MvJet; 4],
}

impl QuarkResiduals {
    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for l in 0..3 {
            worst = worst.max(self.dirac[l].max_diff(&other.dirac[l]));
        }
        for nu in 0..4 {
            worst = worst.max(self.ym_a[nu].max_diff(&other.ym_a[nu]));
            worst = worst.max(self.ym_b[nu].max_diff(&other.ym_b[nu]));
            worst = worst.max(self.ym_c[nu].max_diff(&other.ym_c[nu]));
        }
        worst
    }
}

fn ym_residual<T: Ring>(a: &[Jet<T>; 4], j: &[Jet<T>; 4]) -> Result<[Jet<T>; 4]> {
    let f = curvature(a)?;
    let div = divergence_lhs(a, &f)?;
    Ok(std::array::from_fn(|nu| &div[nu] - &j[nu]))
}

/// All residuals; potentials need order ≥ 2.
pub fn quark_residuals(cfg: &QuarkConfig) -> Result<QuarkResiduals> {
    let have = cfg.a[0].order().min(cfg.b[0].order()).min(cfg.c[0].order());
    if have < 2 {
        return Err(Error::InsufficientOrder { have, need: 2 });
    }
    let cur = currents(cfg);
    Ok(QuarkResiduals {
        dirac: quark_dirac_components(cfg)?,
        ym_a: ym_residual(&cfg.a, &cur.a)?,
        ym_b: ym_residual(&cfg.b, &cur.b)?,
        ym_c: ym_residual(&cfg.c, &cur.c)?,
    })
}

/// Gauge field acting on a quark configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum QuarkGauge {
    /// `Ǔ = E⊗U` with `U ∈ G(χ)`.
    U(GroupJet),
    /// `V̌ = V⊗e` with `V ∈ U(3)`.
    V(Jet<CMat3>),
    /// `Š = E⊗S` with `S ∈ G₃`.
    S(GroupJet),
}

impl QuarkGauge {
    pub fn name(&self) -> &'static str {
        match self {
            QuarkGauge::U(_) => "U",
            QuarkGauge::V(_) => "V",
            QuarkGauge::S(_) => "S",
        }
    }
}

fn expect_flavor(g: &GroupJet, want: GroupFlavor) -> Result<()> {
    if g.flavor != want {
        return Err(Error::FlavorMismatch { group: g.flavor.to_string(), algebra: want.to_string() });
    }
    Ok(())
}

/// `Ψ_l → Σ_k Ψ_k V_{kl}`.
fn mix_flavors(psi: &[MvJet; 3], v: &Jet<CMat3>) -> [MvJet; 3] {
    std::array::from_fn(|l| {
        (0..3)
            .map(|k| &psi[k] * &entry(v, k, l))
            .reduce(|a, b| a + b)
            .expect("three flavors")
    })
}

pub fn transform_quark(cfg: &QuarkConfig, gauge: &QuarkGauge) -> Result<QuarkConfig> {
    let mut out = cfg.clone();
    match gauge {
        QuarkGauge::U(u) => {
            expect_flavor(u, GroupFlavor::GChi)?;
            out.psi = std::array::from_fn(|l| &cfg.psi[l] * &u.jet);
            out.a = gauge_transform_with(&cfg.a, &u.jet, &u.inverse(), None)?;
        }
        QuarkGauge::V(v) => {
            let inv = v.dagger();
            out.psi = mix_flavors(&cfg.psi, v);
            out.b = gauge_transform_with(&cfg.b, v, &inv, None)?;
        }
        QuarkGauge::S(s) => {
            expect_flavor(s, GroupFlavor::G3)?;
            let inv = s.inverse();
            let conj = |j: &MvJet| &(&inv * j) * &s.jet;
            out.psi = std::array::from_fn(|l| conj(&cfg.psi[l]));
            out.h = std::array::from_fn(|mu| conj(&cfg.h[mu]));
            out.a = gauge_transform_with(&cfg.a, &s.jet, &inv, Some(&cfg.chi.element()))?;
            out.c = gauge_transform_with(&cfg.c, &s.jet, &inv, None)?;
        }
    }
    Ok(out)
}

/// Expected image of the residuals: `R → RǓ`, `R → RV̌`, `R → Š⁻¹RŠ`;
/// Yang-Mills parts conjugate in the sector the gauge field acts on.
pub fn transform_quark_residuals(r: &QuarkResiduals, gauge: &QuarkGauge) -> QuarkResiduals {
    let mut out = r.clone();
    match gauge {
        QuarkGauge::U(u) => {
            let inv = u.inverse();
            out.dirac = std::array::from_fn(|l| &r.dirac[l] * &u.jet);
            out.ym_a = std::array::from_fn(|nu| &(&inv * &r.ym_a[nu]) * &u.jet);
        }
        QuarkGauge::V(v) => {
            let inv = v.dagger();
            out.dirac = mix_flavors(&r.dirac, v);
            out.ym_b = std::array::from_fn(|nu| &(&inv * &r.ym_b[nu]) * v);
        }
        QuarkGauge::S(s) => {
            let inv = s.inverse();
            let conj = |j: &MvJet| &(&inv * j) * &s.jet;
            out.dirac = std::array::from_fn(|l| conj(&r.dirac[l]));
            out.ym_a = std::array::from_fn(|nu| conj(&r.ym_a[nu]));
            out.ym_c = std::array::from_fn(|nu| conj(&r.ym_c[nu]));
        }
    }
    out
}

/// `max |residuals(transform(cfg)) − transform(residuals(cfg))|`; needs
/// order-3 configurations.
pub fn quark_covariance_check(cfg: &QuarkConfig, gauge: &QuarkGauge) -> Result<f64> {
    let before = quark_residuals(cfg)?;
    let after = quark_residuals(&transform_quark(cfg, gauge)?)?;
    Ok(after.max_diff(&transform_quark_residuals(&before, gauge)))
}

/// Residuals of the conservation identities for the quark currents.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuarkConservationResiduals {
    /// Matrix anti-Hermitian-part identity.
    pub matrix_identity: f64,
    /// `max_μ |tr [B̌_μ, J̌^μ]|`
    pub trace_annihilation: f64,
    /// `max_μ |π̇⁰([B̌_μ, J̌^μ]) − [B̲_μ, π̇⁰(J̌^μ)]|`
    pub pi0_commutator: f64,
    /// `⅓ tr` of the matrix conservation expression against `∂J_(A) − [A, J_(A)]`.
    pub trace_image: f64,
    /// `π̇⁰` of the matrix conservation expression against `∂J̲_(B) − [B̲, J̲_(B)]`.
    pub pi0_image: f64,
}

impl QuarkConservationResiduals {
    pub fn max(&self) -> f64 {
        [self.matrix_identity, self.trace_annihilation, self.pi0_commutator, self.trace_image, self.pi0_image]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Identities behind current conservation, valid for arbitrary fields;
/// needs order ≥ 1.
pub fn quark_conservation_identities(cfg: &QuarkConfig) -> Result<QuarkConservationResiduals> {
    let psi = cfg.checked_psi();
    let j = current_matrix(&cfg.psi, &cfg.h);
    let cur = currents(cfg);

    // Ψ̌† iβ̌ Ľ minus its dagger
    let l = quark_dirac_matrix(cfg)?;
    let ib = MatMultivector::scalar_matrix(&beta().scale_complex(I));
    let x = psi.dagger().value().mul_ref(&ib).mul_ref(l.value());
    let lhs = x - x.dagger();

    let mut cons = MatMultivector::zero();
    let mut trace_annihilation: f64 = 0.0;
    let mut pi0_commutator: f64 = 0.0;
    let mut cons_a = Multivector::zero();
    let mut cons_b = CMat3::zero();
    let tbh = theta_beta_h(&cfg.h);
    let mut gravity = Multivector::zero();
    for mu in 0..4 {
        let jm = &j[mu];
        let ab = cfg.checked_a(mu) + cfg.checked_b(mu);
        cons = cons + *jm.partial(mu)?.value() - *ab.commutator(jm).value();

        let bj = cfg.checked_b(mu).value().commutator(jm.value());
        trace_annihilation = trace_annihilation.max(bj.trace().max_abs());
        let want = cfg.b[mu].value().commutator(&jm.value().pi0_dot());
        pi0_commutator = pi0_commutator.max((bj.pi0_dot() - want).max_abs());

        cons_a += *cur.a[mu].partial(mu)?.value() - *cfg.a[mu].commutator(&cur.a[mu]).value();
        cons_b = cons_b + *cur.b[mu].partial(mu)?.value() - *cfg.b[mu].commutator(&cur.b[mu]).value();
        gravity += *tbh[mu].partial(mu)?.value() - *cfg.c[mu].commutator(&tbh[mu]).value();
    }
    let it = MatMultivector::scalar_matrix(&(theta().scale_complex(I) * gravity));
    let p = psi.value();
    let rhs = cons + p.dagger().mul_ref(&it).mul_ref(p);

    Ok(QuarkConservationResiduals {
        matrix_identity: (lhs - rhs).max_abs(),
        trace_annihilation,
        pi0_commutator,
        trace_image: (cons.trace().scale(1.0 / 3.0) - cons_a).max_abs(),
        pi0_image: (cons.pi0_dot() - cons_b).max_abs(),
    })
}

/// Yang-Mills relations evaluated with the quark currents.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YmPostulates {
    /// Divergence-equation residuals; vanish only on solutions.
    pub ym_a: f64,
    pub ym_b: f64,
    pub ym_c: f64,
    /// Conservation with the current defined by the divergence; vanishes
    /// for every potential.
    pub cons_a: f64,
    pub cons_b: f64,
    pub cons_c: f64,
}

/// Needs order-3 potentials.
pub fn ym_postulates_residuals(cfg: &QuarkConfig) -> Result<YmPostulates> {
    let r = quark_residuals(cfg)?;
    let m = |js: &[MvJet; 4]| js.iter().map(|j| j.value().max_abs()).fold(0.0, f64::max);
    Ok(YmPostulates {
        ym_a: m(&r.ym_a),
        ym_b: r.ym_b.iter().map(|j| j.value().max_abs()).fold(0.0, f64::max),
        ym_c: m(&r.ym_c),
        cons_a: conservation_residual(&cfg.a)?.max_abs(),
        cons_b: conservation_residual(&cfg.b)?.max_abs(),
        cons_c: conservation_residual(&cfg.c)?.max_abs(),
    })
}

/// Single-flavor reduction: the first Dirac row against the lepton residual
/// and `J_(A)` against a third of the lepton current.
pub fn lepton_reduction_defect(l: &LeptonFields, x: [f64; 4], order: usize) -> Result<f64> {
    let lcfg = l.jets(x, order);
    let qcfg = QuarkFields::from_lepton(l).jets(x, order);
    let qd = quark_dirac_components(&qcfg)?;
    let ld = lepton::dirac_residual(&lcfg)?;
    let mut worst = qd[0].max_diff(&ld).max(qd[1].max_abs()).max(qd[2].max_abs());
    let qm = quark_dirac_matrix(&qcfg)?;
    worst = worst.max(qm.map(|m| m.0[0][0]).max_diff(&ld));
    let qc = currents(&qcfg);
    let la = lepton::current_a(&lcfg.psi, &lcfg.h);
    let lc = current_c(&lcfg.h);
    for nu in 0..4 {
        worst = worst.max(qc.a[nu].scale(3.0).max_diff(&la[nu]));
        worst = worst.max(qc.c[nu].max_diff(&lc[nu]));
    }
    Ok(worst)
}

/// `max |J_{kl}† + J_{lk}|` over all entries and directions.
pub fn current_matrix_skew_defect(j: &[MatJet; 4]) -> f64 {
    j.iter().map(|m| (m + &m.dagger()).max_abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_group_field, random_point};
    use crate::yang_mills::LieValued;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const X: [f64; 4] = [-0.2, 0.3, 0.1, 0.5];

    #[test]
    fn zero_psi_gives_zero_residual_and_currents() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut f = QuarkFields::random(&mut rng, Idempotent::Minus);
        f.psi = Default::default();
        let cfg = f.jets(X, 2);
        assert!(quark_dirac_components(&cfg).unwrap().iter().all(|j| j.max_abs() == 0.0));
        let cur = currents(&cfg);
        assert!(cur.a.iter().all(|j| j.max_abs() == 0.0));
        assert!(quark_conservation_identities(&cfg).unwrap().max() == 0.0);
    }

    #[test]
    fn matrix_and_component_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..3 {
            let cfg = QuarkFields::random(&mut rng, Idempotent::Minus).jets(random_point(&mut rng), 2);
            assert!(cfg.defect() < 1e-11);
            assert!(matrix_component_agreement(&cfg).unwrap() < 1e-12);
        }
    }

    #[test]
    fn current_matrix_matches_matrix_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = QuarkFields::random(&mut rng, Idempotent::Minus).jets(X, 1);
        let j = current_matrix(&cfg.psi, &cfg.h);
        let psi = cfg.checked_psi();
        let ib = MatMultivector::scalar_matrix(&beta().scale_complex(I));
        for nu in 0..4 {
            let direct = &(&psi.dagger().mul_const_right(&ib) * &cfg.checked_h(nu)) * &psi;
            assert!(direct.max_diff(&j[nu]) < 1e-12);
        }
        assert!(current_matrix_skew_defect(&j) < 1e-12);
        let cur = currents(&cfg);
        let (ta, tb, tc) = current_typing(&cfg, &cur);
        assert!(ta < 1e-12 && tb < 1e-12 && tc < 1e-12, "{ta} {tb} {tc}");
    }

    #[test]
    fn reduction_to_lepton() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let l = LeptonFields::random(&mut rng, Idempotent::Minus);
        assert!(lepton_reduction_defect(&l, X, 2).unwrap() < 1e-12);
    }

    #[test]
    fn covariance_under_three_gauges() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let chi = Idempotent::Minus;
        let cfg = QuarkFields::random(&mut rng, chi).jets(X, 3);
        let gauges = [
            QuarkGauge::U(random_group_field(&mut rng, GroupFlavor::GChi, chi).jet(X, 3)),
            QuarkGauge::V(U3Field::random(&mut rng).jet(X, 3)),
            QuarkGauge::S(random_group_field(&mut rng, GroupFlavor::G3, chi).jet(X, 3)),
        ];
        for g in &gauges {
            let err = quark_covariance_check(&cfg, g).unwrap();
            assert!(err < 1e-9, "{} {err}", g.name());
            assert!(transform_quark(&cfg, g).unwrap().defect() < 1e-10);
        }
    }

    #[test]
    fn constant_permutation_mixes_flavors() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cfg = QuarkFields::random(&mut rng, Idempotent::Minus).jets(X, 2);
        let perm = CMat3::from_real([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]);
        let t = transform_quark(&cfg, &QuarkGauge::V(Jet::constant(X, 2, perm))).unwrap();
        // Ψ'_l = Σ_k Ψ_k P_{kl}: Ψ'_1 = Ψ_3, Ψ'_2 = Ψ_1, Ψ'_3 = Ψ_2
        assert_eq!(t.psi[0], cfg.psi[2]);
        assert_eq!(t.psi[1], cfg.psi[0]);
        assert_eq!(t.psi[2], cfg.psi[1]);
        let inv = perm.adjoint();
        for mu in 0..4 {
            assert!(t.b[mu].max_diff(&cfg.b[mu].map(|b| inv * *b * perm)) < 1e-15);
        }
    }

    #[test]
    fn s_gauge_matches_lepton_per_flavor() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let l = LeptonFields::random(&mut rng, Idempotent::Minus);
        let s = random_group_field(&mut rng, GroupFlavor::G3, Idempotent::Minus).jet(X, 2);
        let q = transform_quark(&QuarkFields::from_lepton(&l).jets(X, 2), &QuarkGauge::S(s.clone())).unwrap();
        let lt = lepton::transform_s(&l.jets(X, 2), &s).unwrap();
        assert!(q.psi[0].max_diff(&lt.psi) < 1e-15);
        for mu in 0..4 {
            assert!(q.h[mu].max_diff(&lt.h[mu]) < 1e-15);
            assert!(q.a[mu].max_diff(&lt.a[mu]) < 1e-15);
        }
    }

    #[test]
    fn conservation_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..3 {
            let cfg = QuarkFields::random(&mut rng, Idempotent::Minus).jets(random_point(&mut rng), 2);
            let r = quark_conservation_identities(&cfg).unwrap();
            assert!(r.matrix_identity < 1e-10, "{r:?}");
            assert!(r.trace_annihilation < 1e-12 && r.pi0_commutator < 1e-12, "{r:?}");
            assert!(r.trace_image < 1e-10 && r.pi0_image < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn postulates_report_and_conservation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = QuarkFields::random(&mut rng, Idempotent::Minus).jets(X, 3);
        let p = ym_postulates_residuals(&cfg).unwrap();
        assert!(p.ym_a > 1e-6);
        assert!(p.cons_a < 1e-9 && p.cons_b < 1e-9 && p.cons_c < 1e-9, "{p:?}");
        let mut zero = QuarkFields::from_lepton(&LeptonFields::random(&mut rng, Idempotent::Minus));
        zero.psi = Default::default();
        zero.a = Default::default();
        let p = ym_postulates_residuals(&zero.jets(X, 3)).unwrap();
        assert_eq!((p.ym_a, p.ym_b, p.cons_a, p.cons_b), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn wrong_flavor_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let cfg = QuarkFields::random(&mut rng, Idempotent::Minus).jets(X, 1);
        let s = random_group_field(&mut rng, GroupFlavor::G3, Idempotent::Minus).jet(X, 1);
        assert!(transform_quark(&cfg, &QuarkGauge::U(s)).is_err());
    }

    #[test]
    fn lie_valued_for_cmat() {
        let k = random_antihermitian(&mut ChaCha8Rng::seed_from_u64(11));
        assert!(k.algebra_defect(AlgebraKind::U3) < 1e-15);
        assert!(k.algebra_defect(AlgebraKind::L3).is_infinite());
    }
}
