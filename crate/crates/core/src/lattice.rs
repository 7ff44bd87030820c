//! Finite-difference cross-check of the lepton residuals.
//!
//! Fields are sampled on a uniform 4D grid centred on a point, derivatives
//! are replaced by second-order central differences, and the discrete
//! residuals at the centre node are compared with the jet-exact values.
//! Halving the spacing should divide the error by four.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{Multivector, DIM, ETA, I};
use crate::error::{Error, Result};
use crate::jet::{FieldExpr, GroupField};
use crate::lepton::{self, LeptonFields, LeptonGauge};
use crate::lie::GroupFlavor;

/// Uniform grid with `n` points per axis centred on `center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub center: [f64; 4],
    pub h: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(center: [f64; 4], h: f64, n: usize) -> Self {
        assert!(n % 2 == 1, "odd extent keeps the centre on a node");
        Grid { center, h, n }
    }

    pub fn len(&self) -> usize {
        self.n.pow(4)
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn stride(&self, mu: usize) -> usize {
        self.n.pow(mu as u32)
    }

    fn index_along(&self, p: usize, mu: usize) -> usize {
        (p / self.stride(mu)) % self.n
    }

    pub fn coords(&self, p: usize) -> [f64; 4] {
        let half = (self.n / 2) as f64;
        std::array::from_fn(|mu| self.center[mu] + (self.index_along(p, mu) as f64 - half) * self.h)
    }

    pub fn center_index(&self) -> usize {
        let half = self.n / 2;
        (0..4).map(|mu| half * self.stride(mu)).sum()
    }
}

/// Several multivector fields sampled on a grid, stored flat as
/// `(point, field, blade)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFields {
    pub grid: Grid,
    pub nfields: usize,
    data: Vec<Complex64>,
}

impl GridFields {
    /// Samples `nfields` values per node from `f`.
    pub fn sample_with<F>(grid: Grid, nfields: usize, f: F) -> Self
    where
        F: Fn([f64; 4]) -> Vec<Multivector> + Sync,
    {
        let mut data = vec![Complex64::new(0.0, 0.0); grid.len() * nfields * DIM];
        data.par_chunks_mut(nfields * DIM).enumerate().for_each(|(p, chunk)| {
            let vals = f(grid.coords(p));
            debug_assert_eq!(vals.len(), nfields);
            for (slot, v) in chunk.chunks_mut(DIM).zip(vals) {
                slot.copy_from_slice(v.coeffs());
            }
        });
        GridFields { grid, nfields, data }
    }

    pub fn get(&self, p: usize, field: usize) -> Multivector {
        let start = (p * self.nfields + field) * DIM;
        let mut c = [Complex64::new(0.0, 0.0); DIM];
        c.copy_from_slice(&self.data[start..start + DIM]);
        Multivector::from_coeffs(c)
    }

    pub fn field(&self, field: usize) -> GridField {
        GridField { grid: self.grid, values: (0..self.grid.len()).map(|p| self.get(p, field)).collect() }
    }
}

/// Exact pointwise samples of closed-form fields.
pub fn sample(exprs: &[FieldExpr], grid: Grid) -> GridFields {
    GridFields::sample_with(grid, exprs.len(), |x| exprs.iter().map(|e| e.value(x)).collect())
}

/// One multivector field on a grid. Nodes without a full stencil hold NaN.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    pub grid: Grid,
    pub values: Vec<Multivector>,
}

impl GridField {
    pub fn constant(grid: Grid, m: Multivector) -> Self {
        GridField { grid, values: vec![m; grid.len()] }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Multivector, &Multivector) -> Multivector + Sync + Send) -> Self {
        GridField {
            grid: self.grid,
            values: self.values.par_iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Multivector) -> Multivector + Sync + Send) -> Self {
        GridField { grid: self.grid, values: self.values.par_iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| *a + *b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| *a - *b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.mul_ref(b))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.commutator(b))
    }

    pub fn at_center(&self) -> Multivector {
        self.values[self.grid.center_index()]
    }
}

/// `(f(x + he_μ) − f(x − he_μ)) / 2h`; boundary nodes along `μ` become NaN.
pub fn central_diff(f: &GridField, mu: usize) -> Result<GridField> {
    let g = f.grid;
    if g.n < 3 {
        return Err(Error::InsufficientOrder { have: g.n, need: 3 });
    }
    let s = g.stride(mu);
    let nan = Multivector::from_real([f64::NAN; DIM]);
    let inv = 1.0 / (2.0 * g.h);
    let values = (0..g.len())
        .into_par_iter()
        .map(|p| {
            let i = g.index_along(p, mu);
            if i == 0 || i == g.n - 1 {
                nan
            } else {
                (f.values[p + s] - f.values[p - s]).scale(inv)
            }
        })
        .collect();
    Ok(GridField { grid: g, values })
}

/// Lepton fields sampled on a grid.
#[derive(Clone, Debug)]
pub struct LatticeLepton {
    pub psi: GridField,
    pub a: [GridField; 4],
    pub c: [GridField; 4],
    pub h: [GridField; 4],
    pub mass: f64,
}

const LEPTON_FIELDS: usize = 13;

fn unpack(fields: GridFields, mass: f64) -> LatticeLepton {
    LatticeLepton {
        psi: fields.field(0),
        a: std::array::from_fn(|mu| fields.field(1 + mu)),
        c: std::array::from_fn(|mu| fields.field(5 + mu)),
        h: std::array::from_fn(|mu| fields.field(9 + mu)),
        mass,
    }
}

fn lepton_values(cfg: &lepton::LeptonConfig) -> Vec<Multivector> {
    let mut v = Vec::with_capacity(LEPTON_FIELDS);
    v.push(*cfg.psi.value());
    v.extend(cfg.a.iter().map(|j| *j.value()));
    v.extend(cfg.c.iter().map(|j| *j.value()));
    v.extend(cfg.h.iter().map(|j| *j.value()));
    v
}

pub fn sample_lepton(fields: &LeptonFields, grid: Grid) -> LatticeLepton {
    let data = GridFields::sample_with(grid, LEPTON_FIELDS, |x| lepton_values(&fields.jets(x, 0)));
    unpack(data, fields.mass)
}

/// Gauge-transformed lepton fields sampled pointwise; the inhomogeneous
/// terms use exact first derivatives of the gauge field.
pub fn sample_transformed_lepton(fields: &LeptonFields, gauge: &GroupField, grid: Grid) -> Result<LatticeLepton> {
    gauge.validate()?;
    let data = GridFields::sample_with(grid, LEPTON_FIELDS, |x| {
        let cfg = fields.jets(x, 1);
        let g = gauge.jet(x, 1);
        let t = match gauge.flavor {
            GroupFlavor::GChi => lepton::transform_u(&cfg, &g),
            GroupFlavor::G3 => lepton::transform_s(&cfg, &g),
        };
        lepton_values(&t.expect("flavor matched above"))
    });
    Ok(unpack(data, fields.mass))
}

/// Discrete `h^μ(D_μΨ + ΨA_μ − C_μΨ) + imΨ`.
pub fn dirac_residual_grid(l: &LatticeLepton) -> Result<GridField> {
    let mass = I * l.mass;
    let mut out = l.psi.map(|p| p.scale_complex(mass));
    for mu in 0..4 {
        let cov = central_diff(&l.psi, mu)?.add(&l.psi.mul(&l.a[mu])).sub(&l.c[mu].mul(&l.psi));
        out = out.add(&l.h[mu].mul(&cov));
    }
    Ok(out)
}

/// Discrete `F_{μν} = D_μa_ν − D_νa_μ − [a_μ, a_ν]`.
pub fn curvature_grid(a: &[GridField; 4]) -> Result<[[GridField; 4]; 4]> {
    let g = a[0].grid;
    let mut f: [[GridField; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| GridField::constant(g, Multivector::zero())));
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let v = central_diff(&a[nu], mu)?.sub(&central_diff(&a[mu], nu)?).sub(&a[mu].commutator(&a[nu]));
            f[nu][mu] = v.map(|m| -*m);
            f[mu][nu] = v;
        }
    }
    Ok(f)
}

/// Discrete `D_μF^{μν} − [a_μ, F^{μν}] − j^ν`.
pub fn ym_residual_grid(a: &[GridField; 4], j: &[GridField; 4]) -> Result<[GridField; 4]> {
    let f = curvature_grid(a)?;
    let mut out: Vec<GridField> = Vec::with_capacity(4);
    for nu in 0..4 {
        let mut acc = j[nu].map(|m| -*m);
        for mu in 0..4 {
            if mu == nu {
                continue;
            }
            let term = central_diff(&f[mu][nu], mu)?.sub(&a[mu].commutator(&f[mu][nu]));
            let s = ETA[mu] * ETA[nu];
            acc = acc.add(&term.map(|m| m.scale(s)));
        }
        out.push(acc);
    }
    Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
}

/// Pointwise currents `Ψ†iβh^νΨ` and `θβh^ν − π⁴(θβh^ν)`.
fn currents_grid(l: &LatticeLepton) -> ([GridField; 4], [GridField; 4]) {
    let ib = crate::algebra::beta().scale_complex(I);
    let tb = crate::algebra::theta() * crate::algebra::beta();
    let ja = std::array::from_fn(|nu| l.psi.zip(&l.h[nu], |p, h| p.dagger() * ib * *h * *p));
    let jc = std::array::from_fn(|nu| {
        l.h[nu].map(|h| {
            let t = tb * *h;
            t - t.grade(4)
        })
    });
    (ja, jc)
}

/// Discrete residuals at every node.
#[derive(Clone, Debug)]
pub struct GridResiduals {
    pub dirac: GridField,
    pub ym_a: [GridField; 4],
    pub ym_c: [GridField; 4],
}

pub fn residual_on_grid(l: &LatticeLepton) -> Result<GridResiduals> {
    let (ja, jc) = currents_grid(l);
    Ok(GridResiduals { dirac: dirac_residual_grid(l)?, ym_a: ym_residual_grid(&l.a, &ja)?, ym_c: ym_residual_grid(&l.c, &jc)? })
}

/// Centre-node errors of the discrete residuals against the jet values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CenterErrors {
    pub dirac: f64,
    pub ym_a: f64,
    pub ym_c: f64,
    /// `|R_h[g·cfg] − g·R_h[cfg]|` at the centre.
    pub covariance: f64,
}

fn max4(a: &[GridField; 4], b: impl Fn(usize) -> Multivector) -> f64 {
    (0..4).map(|nu| (a[nu].at_center() - b(nu)).max_abs()).fold(0.0, f64::max)
}

/// Smallest grid that supports the nested Yang-Mills stencil.
pub const MIN_EXTENT: usize = 5;

pub fn center_errors(fields: &LeptonFields, gauge: &GroupField, center: [f64; 4], h: f64, n: usize) -> Result<CenterErrors> {
    if n < MIN_EXTENT {
        return Err(Error::InsufficientOrder { have: n, need: MIN_EXTENT });
    }
    let grid = Grid::new(center, h, n);
    let exact = lepton::residuals(&fields.jets(center, 2))?;
    let lat = residual_on_grid(&sample_lepton(fields, grid))?;
    let dirac = (lat.dirac.at_center() - *exact.dirac.value()).max_abs();
    let ym_a = max4(&lat.ym_a, |nu| *exact.ym_a[nu].value());
    let ym_c = max4(&lat.ym_c, |nu| *exact.ym_c[nu].value());

    let g = gauge.jet(center, 0);
    let gauge_enum = match gauge.flavor {
        GroupFlavor::GChi => LeptonGauge::U(g),
        GroupFlavor::G3 => LeptonGauge::S(g),
    };
    let lat_t = residual_on_grid(&sample_transformed_lepton(fields, gauge, grid)?)?;
    let pick = |r: &GridResiduals| lepton::LeptonResiduals {
        dirac: crate::jet::Jet::constant(center, 0, r.dirac.at_center()),
        ym_a: std::array::from_fn(|nu| crate::jet::Jet::constant(center, 0, r.ym_a[nu].at_center())),
        ym_c: std::array::from_fn(|nu| crate::jet::Jet::constant(center, 0, r.ym_c[nu].at_center())),
    };
    let want = lepton::transform_residuals(&pick(&lat), &gauge_enum);
    let covariance = pick(&lat_t).max_diff(&want);
    Ok(CenterErrors { dirac, ym_a, ym_c, covariance })
}

/// One line of a convergence report.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub equation: &'static str,
    pub h: f64,
    pub error: f64,
    /// `log₂(e(2h)/e(h))`; absent for the coarsest spacing.
    pub order: Option<f64>,
}

/// Errors at each spacing and observed orders between successive halvings.
pub fn convergence_study(
    fields: &LeptonFields,
    gauge: &GroupField,
    center: [f64; 4],
    spacings: &[f64],
    n: usize,
) -> Result<Vec<ConvergenceRow>> {
    let errs: Vec<CenterErrors> = spacings.iter().map(|&h| center_errors(fields, gauge, center, h, n)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let pick: [(&'static str, fn(&CenterErrors) -> f64); 4] = [
        ("dirac", |e| e.dirac),
        ("ym_a", |e| e.ym_a),
        ("ym_c", |e| e.ym_c),
        ("gauge_covariance", |e| e.covariance),
    ];
    for (name, get) in pick {
        for (i, &h) in spacings.iter().enumerate() {
            let error = get(&errs[i]);
            let order = (i > 0).then(|| {
                let prev = get(&errs[i - 1]);
                (prev / error).log2() / (spacings[i - 1] / h).log2()
            });
            rows.push(ConvergenceRow { equation: name, h, error, order });
        }
    }
    Ok(rows)
}

/// CSV with header `equation,h,error,observed_order`.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("equation,h,error,observed_order\n");
    for r in rows {
        let order = r.order.map(|p| format!("{p:.6}")).unwrap_or_default();
        let _ = writeln!(s, "{},{},{:.6e},{}", r.equation, r.h, r.error, order);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{e, Idempotent};
    use crate::random::random_group_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const X: [f64; 4] = [0.1, -0.2, 0.3, 0.05];

    #[test]
    fn grid_geometry() {
        let g = Grid::new(X, 0.1, 5);
        assert_eq!(g.len(), 625);
        assert_eq!(g.coords(g.center_index()), X);
        let c = g.coords(0);
        for mu in 0..4 {
            assert!((c[mu] - (X[mu] - 0.2)).abs() < 1e-15);
        }
    }

    #[test]
    fn sampling_matches_eval() {
        let g = Grid::new(X, 0.1, 3);
        let f = FieldExpr::sin([0.3, -1.0, 0.5, 0.7], 0.4).mul_const_right(&crate::algebra::theta());
        let s = sample(&[FieldExpr::constant(&e()), f.clone()], g);
        for p in 0..g.len() {
            assert_eq!(s.get(p, 0), e());
            assert!(s.get(p, 1).approx_eq(&f.value(g.coords(p)), 1e-14));
        }
    }

    #[test]
    fn central_differences_exact_on_quadratics() {
        let g = Grid::new(X, 0.1, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = crate::random::random_quadratic_field(&mut rng);
        let s = sample(&[f.clone()], g).field(0);
        for mu in 0..4 {
            let d = central_diff(&s, mu).unwrap().at_center();
            assert!(d.approx_eq(&f.partial(mu).value(X), 1e-12));
        }
        assert!(central_diff(&sample(&[f], Grid::new(X, 0.1, 1)).field(0), 0).is_err());
    }

    #[test]
    fn sine_difference_error_is_second_order() {
        let f = FieldExpr::sin([1.0, 0.5, -0.3, 0.8], 0.2);
        let err = |h: f64| {
            let d = central_diff(&sample(&[f.clone()], Grid::new(X, h, 3)).field(0), 0).unwrap().at_center();
            (d - f.partial(0).value(X)).max_abs()
        };
        let p = (err(0.1) / err(0.05)).log2();
        assert!((p - 2.0).abs() < 0.05, "{p}");
    }

    #[test]
    fn constant_fields_have_exact_discrete_residuals() {
        let fields = LeptonFields {
            psi: FieldExpr::constant(&Idempotent::Minus.element()),
            a: std::array::from_fn(|_| FieldExpr::zero()),
            c: std::array::from_fn(|k| FieldExpr::constant(&crate::lie::tau(1 + k % 3))),
            h: crate::frames::GenvectorField::standard(),
            mass: 0.5,
            chi: Idempotent::Minus,
        };
        let gauge = GroupField::identity(GroupFlavor::GChi);
        let e = center_errors(&fields, &gauge, X, 0.1, 5).unwrap();
        assert!(e.dirac < 1e-14 && e.ym_a < 1e-14 && e.ym_c < 1e-13 && e.covariance < 1e-14, "{e:?}");
    }

    #[test]
    fn second_order_convergence() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fields = LeptonFields::random(&mut rng, Idempotent::Minus);
        let gauge = random_group_field(&mut rng, GroupFlavor::GChi, Idempotent::Minus);
        let rows = convergence_study(&fields, &gauge, X, &[0.1, 0.05], 5).unwrap();
        for r in rows.iter().filter(|r| r.order.is_some()) {
            let p = r.order.unwrap();
            assert!((1.8..=2.2).contains(&p), "{r:?}");
        }
        let csv = convergence_csv(&rows);
        assert!(csv.starts_with("equation,h,error,observed_order\ndirac,0.1,"));
    }
}
