//! Verification suites: groups of checks sharing one random configuration
//! per trial.

use std::time::Instant;

use cliffgauge::algebra::{beta, chi, e, eta, theta, Blade, Idempotent, Multivector};
use cliffgauge::error::Result;
use cliffgauge::frames::{
    anticommutator_defect, check_divergence, dalembertian, dirac_op, genvector, random_lorentz, tetrad_from_lorentz,
    vector_defect,
};
use cliffgauge::jet::{GroupField, Jet};
use cliffgauge::lepton::{self, LeptonFields, LeptonGauge};
use cliffgauge::lie::{exp_g3, exp_gchi, g3_defect, gchi_defect, random_l3, random_l4, tau, GroupFlavor, L3Element};
use cliffgauge::oracle::{exp_series, mul_by_sorting};
use cliffgauge::quark::{self, QuarkFields, QuarkGauge, U3Field};
use cliffgauge::random::{
    random_constant_genvector, random_genvector, random_group_field, random_l3_field, random_lchi_field,
    random_multivector, random_point, random_potential, random_quadratic_field,
};
use cliffgauge::yang_mills::{
    antisymmetry_defect, conservation_residual, curvature, divergence_lhs, gauge_transform, jets_defect, AlgebraKind,
    YMPotential,
};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::FieldConfig;
use crate::report::Record;
use crate::seed::trial_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Algebra,
    Lie,
    Frames,
    Ym,
    Lepton,
    Quark,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Lie => "lie",
            Suite::Frames => "frames",
            Suite::Ym => "ym",
            Suite::Lepton => "lepton",
            Suite::Quark => "quark",
            Suite::All => "all",
        }
    }
}

/// One reported check: id, equation label, pinned tolerance.
#[derive(Clone, Copy, Debug)]
pub struct Spec {
    pub id: &'static str,
    pub anchor: &'static str,
    pub tol: f64,
}

const fn spec(id: &'static str, anchor: &'static str, tol: f64) -> Spec {
    Spec { id, anchor, tol }
}

/// Everything a trial may read.
#[derive(Clone, Copy, Debug)]
pub struct Ctx<'a> {
    pub chi: Idempotent,
    pub order: usize,
    pub config: Option<&'a FieldConfig>,
}

type Errors = Vec<f64>;

#[derive(Clone, Copy)]
pub enum Run {
    /// Deterministic enumeration; returns the number of cases.
    Cases(fn(&Ctx) -> Result<(usize, Errors)>),
    /// One error per check, per random trial.
    Trials(fn(&mut ChaCha8Rng, &Ctx) -> Result<Errors>),
}

#[derive(Clone, Copy)]
pub struct Group {
    pub suite: Suite,
    pub name: &'static str,
    pub checks: &'static [Spec],
    pub min_order: usize,
    pub run: Run,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub trials: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub order: usize,
    pub chi: Idempotent,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { trials: 200, seed: 0, tol: None, order: 2, chi: Idempotent::Minus, timings: false }
    }
}

// ---- algebra -------------------------------------------------------------

fn defining_relation(_: &Ctx) -> Result<(usize, Errors)> {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let (ea, eb) = (Multivector::generator(a), Multivector::generator(b));
            worst = worst.max((ea * eb + eb * ea - e().scale(2.0 * eta(a, b))).max_abs());
        }
    }
    Ok((16, vec![worst]))
}

fn grade_dims(_: &Ctx) -> Result<(usize, Errors)> {
    const BINOMIAL: [usize; 5] = [1, 4, 6, 4, 1];
    let err = (0..=4).map(|k| Blade::of_grade(k).count().abs_diff(BINOMIAL[k]) as f64).sum();
    Ok((5, vec![err]))
}

fn distinguished(ctx: &Ctx) -> Result<(usize, Errors)> {
    let x = chi();
    let i = Complex64::new(0.0, 1.0);
    let defects = [
        (beta() * beta() - e()).max_abs(),
        (theta() * theta() + e()).max_abs(),
        (x * x - x).max_abs(),
        (x.dagger() - x).max_abs(),
        (theta() * x - x.scale_complex(i)).max_abs(),
        // the configured idempotent must be Hermitian and idempotent too
        (ctx.chi.element() * ctx.chi.element() - ctx.chi.element()).max_abs(),
        (ctx.chi.element().dagger() - ctx.chi.element()).max_abs(),
    ];
    Ok((defects.len(), vec![defects.into_iter().fold(0.0, f64::max)]))
}

fn products(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<Errors> {
    let (u, v, w) = (random_multivector(rng), random_multivector(rng), random_multivector(rng));
    let uv = u * v;
    let grades = (0..=4).fold(Multivector::zero(), |acc, k| acc + u.grade(k));
    Ok(vec![
        ((uv * w) - u * (v * w)).max_abs(),
        (uv - mul_by_sorting(&u, &v)).max_abs(),
        (uv.reverse() - v.reverse() * u.reverse()).max_abs(),
        (uv.dagger() - v.dagger() * u.dagger()).max_abs(),
        (grades - u).max_abs().max((u.even() + u.odd() - u).max_abs()),
    ])
}

// ---- lie -----------------------------------------------------------------

fn su2_brackets(_: &Ctx) -> Result<(usize, Errors)> {
    let mut worst: f64 = 0.0;
    for a in 1..=3 {
        worst = worst.max((tau(a) * tau(a) + e()).max_abs());
        for b in 1..=3 {
            // [τa, τb] = 2 ε_abc τc
            let want = (1..=3).fold(Multivector::zero(), |acc, c| acc + tau(c).scale(2.0 * levi_civita(a, b, c)));
            worst = worst.max((tau(a).commutator(&tau(b)) - want).max_abs());
        }
    }
    Ok((12, vec![worst]))
}

fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

fn exponentials(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let s = L3Element(random_l3(rng).0.map(|x| 3.0 * x));
    let g = exp_g3(&s).value;
    let s4 = random_l4(rng);
    let u = exp_gchi(&s4, ctx.chi).value;
    let series_chi = exp_series(&(s4.to_multivector() * ctx.chi.element()), 40);
    Ok(vec![
        (g - exp_series(&s.to_multivector(), 40)).max_abs(),
        g3_defect(&g),
        (u - series_chi).max_abs(),
        (u.dagger() * u - e()).max_abs().max(gchi_defect(&u, ctx.chi)),
    ])
}

// ---- frames --------------------------------------------------------------

fn tetrads(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<Errors> {
    let p = random_lorentz(rng);
    let y = tetrad_from_lorentz(&p, 1e-9)?;
    let h = genvector(&y).jets([0.0; 4], 0);
    Ok(vec![p.defect().max(y.orthonormality_defect()), anticommutator_defect(&h)])
}

fn conjugated_frames(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let h = random_genvector(rng).jets(x, ctx.order.max(1));
    Ok(vec![anticommutator_defect(&h).max(vector_defect(&h)), check_divergence(&h)?.norm()])
}

fn dirac_squared(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let h = random_constant_genvector(rng).jets(x, ctx.order);
    let psi = random_quadratic_field(rng).eval(x, ctx.order);
    let twice = dirac_op(&h, &dirac_op(&h, &psi)?)?;
    Ok(vec![twice.max_diff(&dalembertian(&psi)?)])
}

// ---- yang-mills ----------------------------------------------------------

fn ym_conservation(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let l3 = random_potential(rng, random_l3_field).map(|f| f.eval(x, ctx.order));
    let lchi = random_potential(rng, |r| random_lchi_field(r, ctx.chi)).map(|f| f.eval(x, ctx.order));
    Ok(vec![conservation_residual(&l3)?.max_abs(), conservation_residual(&lchi)?.max_abs()])
}

/// `[F', j', antisymmetry, closure]` defects for one potential and gauge.
fn gauge_symmetry_one(a: YMPotential<Multivector>, s: &GroupField, x: [f64; 4], order: usize) -> Result<[f64; 4]> {
    let g = s.jet(x, order);
    let inv = g.inverse();
    let conj = |j: &Jet<Multivector>| &(&inv * j) * &g.jet;
    let f = curvature(&a.a)?;
    let j = divergence_lhs(&a.a, &f)?;
    let t = gauge_transform(&a, &g)?;
    let ft = curvature(&t.a)?;
    let jt = divergence_lhs(&t.a, &ft)?;
    let mut strength: f64 = 0.0;
    let mut closure: f64 = 0.0;
    for mu in 0..4 {
        closure = closure.max(jets_defect(&f[mu], a.kind));
        for nu in 0..4 {
            strength = strength.max(ft[mu][nu].max_diff(&conj(&f[mu][nu])));
        }
    }
    let current = (0..4).map(|nu| jt[nu].max_diff(&conj(&j[nu]))).fold(0.0, f64::max);
    Ok([strength, current, antisymmetry_defect(&f), closure])
}

fn ym_gauge_symmetry(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let a3 = random_potential(rng, random_l3_field).map(|f| f.eval(x, ctx.order));
    let s = random_group_field(rng, GroupFlavor::G3, ctx.chi);
    let r3 = gauge_symmetry_one(YMPotential::new(AlgebraKind::L3, a3), &s, x, ctx.order)?;
    let ac = random_potential(rng, |r| random_lchi_field(r, ctx.chi)).map(|f| f.eval(x, ctx.order));
    let u = random_group_field(rng, GroupFlavor::GChi, ctx.chi);
    let rc = gauge_symmetry_one(YMPotential::new(AlgebraKind::LChi(ctx.chi), ac), &u, x, ctx.order)?;
    Ok((0..4).map(|i| r3[i].max(rc[i])).collect())
}

// ---- lepton --------------------------------------------------------------

fn lepton_fields(rng: &mut ChaCha8Rng, ctx: &Ctx) -> LeptonFields {
    match ctx.config {
        Some(c) => c.lepton.clone(),
        None => LeptonFields::random(rng, ctx.chi),
    }
}

fn gauge_field(rng: &mut ChaCha8Rng, ctx: &Ctx, flavor: GroupFlavor) -> GroupField {
    let configured = ctx.config.and_then(|c| match flavor {
        GroupFlavor::GChi => c.u.clone(),
        GroupFlavor::G3 => c.s.clone(),
    });
    configured.unwrap_or_else(|| random_group_field(rng, flavor, ctx.chi))
}

fn lepton_gauge(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let cfg = lepton_fields(rng, ctx).jets(x, ctx.order);
    let u = LeptonGauge::U(gauge_field(rng, ctx, GroupFlavor::GChi).jet(x, ctx.order));
    let s = LeptonGauge::S(gauge_field(rng, ctx, GroupFlavor::G3).jet(x, ctx.order));
    let before = lepton::residuals(&cfg)?;
    let mut out = Vec::with_capacity(2);
    for g in [u, s] {
        let after = lepton::residuals(&lepton::transform(&cfg, &g)?)?;
        out.push(after.max_diff(&lepton::transform_residuals(&before, &g)));
    }
    Ok(out)
}

fn lepton_identities(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let cfg = lepton_fields(rng, ctx).jets(x, ctx.order);
    let support = lepton::gravity_current_support(&cfg.h, &cfg.c)?;
    Ok(vec![
        lepton::config_defect(&cfg),
        lepton::antihermitian_identity(&cfg)?,
        support.cmupi,
        support.pi4j,
        support.equivalence,
    ])
}

// ---- quark ---------------------------------------------------------------

fn quark_fields(rng: &mut ChaCha8Rng, ctx: &Ctx) -> QuarkFields {
    match ctx.config {
        Some(c) => c.quark.clone(),
        None => QuarkFields::random(rng, ctx.chi),
    }
}

fn quark_gauge(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let cfg = quark_fields(rng, ctx).jets(x, ctx.order);
    let u = gauge_field(rng, ctx, GroupFlavor::GChi).jet(x, ctx.order);
    let v = match ctx.config.and_then(|c| c.v.as_ref()) {
        Some(v) => v.jet(x, ctx.order),
        None => U3Field::random(rng).jet(x, ctx.order),
    };
    let s = gauge_field(rng, ctx, GroupFlavor::G3).jet(x, ctx.order);
    let before = quark::quark_residuals(&cfg)?;
    let mut out = Vec::with_capacity(3);
    for g in [QuarkGauge::U(u), QuarkGauge::V(v), QuarkGauge::S(s)] {
        let after = quark::quark_residuals(&quark::transform_quark(&cfg, &g)?)?;
        out.push(after.max_diff(&quark::transform_quark_residuals(&before, &g)));
    }
    Ok(out)
}

fn quark_identities(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let cfg = quark_fields(rng, ctx).jets(x, ctx.order);
    let t = quark::quark_conservation_identities(&cfg)?;
    let (ja, jb, jc) = quark::current_typing(&cfg, &quark::currents(&cfg));
    Ok(vec![
        quark::matrix_component_agreement(&cfg)?,
        t.matrix_identity,
        t.trace_annihilation,
        t.trace_image,
        t.pi0_commutator,
        t.pi0_image,
        ja,
        jb,
        jc,
    ])
}

fn quark_reduction(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let l = lepton_fields(rng, ctx);
    Ok(vec![quark::lepton_reduction_defect(&l, x, ctx.order)?])
}

fn quark_conservation(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<Errors> {
    let x = random_point(rng);
    let cfg = quark_fields(rng, ctx).jets(x, ctx.order);
    Ok(vec![
        conservation_residual(&cfg.a)?.max_abs(),
        conservation_residual(&cfg.b)?.max_abs(),
        conservation_residual(&cfg.c)?.max_abs(),
    ])
}

// ---- registry ------------------------------------------------------------

pub const GROUPS: &[Group] = &[
    Group {
        suite: Suite::Algebra,
        name: "algebra.defining_relation",
        checks: &[spec("algebra.defining_relation", "cl:basis", 0.0)],
        min_order: 0,
        run: Run::Cases(defining_relation),
    },
    Group {
        suite: Suite::Algebra,
        name: "algebra.grade_dims",
        checks: &[spec("algebra.grade_dims", "decomp:u", 0.0)],
        min_order: 0,
        run: Run::Cases(grade_dims),
    },
    Group {
        suite: Suite::Algebra,
        name: "algebra.distinguished_elements",
        checks: &[spec("algebra.distinguished_elements", "sec1", 1e-15)],
        min_order: 0,
        run: Run::Cases(distinguished),
    },
    Group {
        suite: Suite::Algebra,
        name: "algebra.products",
        checks: &[
            spec("algebra.associativity", "cl:basis", 1e-12),
            spec("algebra.sorting_oracle", "cl:basis", 1e-12),
            spec("algebra.reverse_antiautomorphism", "sec1", 1e-12),
            spec("algebra.dagger_antiautomorphism", "sec1", 1e-12),
            spec("algebra.grade_decomposition", "stkU", 1e-12),
        ],
        min_order: 0,
        run: Run::Trials(products),
    },
    Group {
        suite: Suite::Lie,
        name: "lie.su2_brackets",
        checks: &[spec("lie.su2_brackets", "sec2", 0.0)],
        min_order: 0,
        run: Run::Cases(su2_brackets),
    },
    Group {
        suite: Suite::Lie,
        name: "lie.exponentials",
        checks: &[
            spec("lie.exp_g3_series", "sec2", 1e-12),
            spec("lie.g3_membership", "sec2", 1e-12),
            spec("lie.exp_gchi_series", "sec2", 1e-12),
            spec("lie.gchi_unitarity", "sec2", 1e-12),
        ],
        min_order: 0,
        run: Run::Trials(exponentials),
    },
    Group {
        suite: Suite::Frames,
        name: "frames.tetrads",
        checks: &[
            spec("frames.lorentz_tetrad", "acute:x", 1e-12),
            spec("frames.tetrad_genvector", "gen:cond", 1e-12),
        ],
        min_order: 0,
        run: Run::Trials(tetrads),
    },
    Group {
        suite: Suite::Frames,
        name: "frames.conjugated",
        checks: &[
            spec("frames.conjugated_genvector", "gen:cond", 1e-12),
            spec("frames.divergence", "pi0:betah", 1e-12),
        ],
        min_order: 1,
        run: Run::Trials(conjugated_frames),
    },
    Group {
        suite: Suite::Frames,
        name: "frames.dirac_squared",
        checks: &[spec("frames.dirac_squared", "sec3", 1e-12)],
        min_order: 2,
        run: Run::Trials(dirac_squared),
    },
    Group {
        suite: Suite::Ym,
        name: "ym.conservation",
        checks: &[
            spec("ym.conservation_l3", "YM:conseq", 1e-9),
            spec("ym.conservation_lchi", "YM:conseq", 1e-9),
        ],
        min_order: 3,
        run: Run::Trials(ym_conservation),
    },
    Group {
        suite: Suite::Ym,
        name: "ym.gauge_symmetry",
        checks: &[
            spec("ym.strength_covariance", "gauge:sym:0", 1e-9),
            spec("ym.current_covariance", "gauge:sym:0", 1e-9),
            spec("ym.strength_antisymmetry", "YM:aa", 1e-14),
            spec("ym.strength_closure", "YM:aa", 1e-12),
        ],
        min_order: 3,
        run: Run::Trials(ym_gauge_symmetry),
    },
    Group {
        suite: Suite::Lepton,
        name: "lepton.gauge",
        checks: &[
            spec("lepton.covariance_u", "rule:Gt", 1e-9),
            spec("lepton.covariance_s", "rule:G3", 1e-9),
        ],
        min_order: 3,
        run: Run::Trials(lepton_gauge),
    },
    Group {
        suite: Suite::Lepton,
        name: "lepton.identities",
        checks: &[
            spec("lepton.field_typing", "main1bxy", 1e-12),
            spec("lepton.antihermitian_identity", "1st:conb", 1e-10),
            spec("lepton.commutator_pi4", "Cmupi", 1e-12),
            spec("lepton.divergence_pi4", "pi4J", 1e-12),
            spec("lepton.conservation_equivalence", "thetabetah", 1e-10),
        ],
        min_order: 1,
        run: Run::Trials(lepton_identities),
    },
    Group {
        suite: Suite::Quark,
        name: "quark.gauge",
        checks: &[
            spec("quark.covariance_u", "U223:eq", 1e-9),
            spec("quark.covariance_v", "U223:eq", 1e-9),
            spec("quark.covariance_s", "U223:eq", 1e-9),
        ],
        min_order: 3,
        run: Run::Trials(quark_gauge),
    },
    Group {
        suite: Suite::Quark,
        name: "quark.identities",
        checks: &[
            spec("quark.matrix_rows", "U223:eq1", 1e-12),
            spec("quark.matrix_identity", "1st:cons", 1e-10),
            spec("quark.trace_annihilation", "2nd:cons", 1e-12),
            spec("quark.trace_image", "2nd:cons", 1e-10),
            spec("quark.pi0_commutator", "3d:cons", 1e-12),
            spec("quark.pi0_image", "3d:cons", 1e-10),
            spec("quark.current_a_typing", "J:A", 1e-12),
            spec("quark.current_b_antihermitian", "J:B", 1e-12),
            spec("quark.current_c_typing", "J:C", 1e-12),
        ],
        min_order: 1,
        run: Run::Trials(quark_identities),
    },
    Group {
        suite: Suite::Quark,
        name: "quark.lepton_reduction",
        checks: &[spec("quark.lepton_reduction", "U223:eq1", 1e-12)],
        min_order: 2,
        run: Run::Trials(quark_reduction),
    },
    Group {
        suite: Suite::Quark,
        name: "quark.conservation",
        checks: &[
            spec("quark.conservation_a", "YM:A", 1e-9),
            spec("quark.conservation_b", "YM:B", 1e-9),
            spec("quark.conservation_c", "YM:C", 1e-9),
        ],
        min_order: 3,
        run: Run::Trials(quark_conservation),
    },
];

pub fn groups(suite: Suite) -> impl Iterator<Item = &'static Group> {
    GROUPS.iter().filter(move |g| suite == Suite::All || g.suite == suite)
}

pub fn group(name: &str) -> Option<&'static Group> {
    GROUPS.iter().find(|g| g.name == name)
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Runs one group; trials go to the rayon pool, results are folded in trial
/// order.
pub fn run_group(g: &Group, opts: &Options, config: Option<&FieldConfig>) -> Vec<Record> {
    let ctx = Ctx { chi: config.map_or(opts.chi, |c| c.chi), order: opts.order.max(g.min_order), config };
    let start = Instant::now();
    let (trials, outcome): (usize, std::result::Result<Errors, String>) = match g.run {
        Run::Cases(f) => match f(&ctx) {
            Ok((n, errs)) => (n, Ok(errs)),
            Err(e) => (0, Err(e.to_string())),
        },
        Run::Trials(f) => {
            let results: Vec<Result<Errors>> = (0..opts.trials)
                .into_par_iter()
                .map(|t| f(&mut trial_rng(opts.seed, g.name, t), &ctx))
                .collect();
            let mut acc = vec![0.0; g.checks.len()];
            let mut failure = None;
            for (t, r) in results.into_iter().enumerate() {
                match r {
                    Ok(errs) => acc.iter_mut().zip(errs).for_each(|(a, e)| *a = nan_max(*a, e)),
                    Err(e) => {
                        failure = Some(format!("trial {t}: {e}"));
                        break;
                    }
                }
            }
            (opts.trials, failure.map_or(Ok(acc), Err))
        }
    };
    let wall = opts.timings.then(|| start.elapsed().as_secs_f64());
    g.checks
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let tolerance = opts.tol.unwrap_or(s.tol);
            let (max_abs_error, error) = match &outcome {
                Ok(errs) => (Some(errs[i]).filter(|e| !e.is_nan()), None),
                Err(msg) => (None, Some(msg.clone())),
            };
            Record {
                check: s.id.to_string(),
                anchor: s.anchor.to_string(),
                suite: g.suite.name().to_string(),
                trials,
                tolerance,
                max_abs_error,
                pass: max_abs_error.is_some_and(|e| e <= tolerance),
                wall_time_s: wall,
                error,
            }
        })
        .collect()
}

pub fn run_suite(suite: Suite, opts: &Options, config: Option<&FieldConfig>) -> Vec<Record> {
    groups(suite).flat_map(|g| run_group(g, opts, config)).collect()
}
