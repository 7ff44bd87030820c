//! Acceptance criteria 1-11, run in sequence so the timings are not skewed
//! by sibling tests. Each criterion prints one PASS/FAIL line on stderr
//! (written directly so it survives output capture).

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use cliffgauge::algebra::{beta, chi, e, theta, Blade};
use cliffgauge::lattice::convergence_study;
use cliffgauge::lepton::LeptonFields;
use cliffgauge::lie::GroupFlavor;
use cliffgauge::random::random_group_field;
use cliffgauge::Idempotent;
use cliffgauge_cli::commands::convergence;
use cliffgauge_cli::config;
use cliffgauge_cli::report::Record;
use cliffgauge_cli::suites::{group, run_group, Options};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, detail: String::new() }
    }

    fn require(&mut self, cond: bool, what: impl AsRef<str>) {
        if !cond {
            self.ok = false;
        }
        if !self.detail.is_empty() {
            self.detail += "; ";
        }
        self.detail += &format!("{}{}", if cond { "" } else { "!! " }, what.as_ref());
    }

    /// `max error ≤ tol` for a record, judged here rather than by the
    /// record's own pinned tolerance.
    fn bound(&mut self, recs: &[Record], id: &str, tol: f64) {
        let r = recs.iter().find(|r| r.check == id).unwrap_or_else(|| panic!("no record {id}"));
        let err = r.max_abs_error.unwrap_or(f64::INFINITY);
        self.require(r.error.is_none() && err <= tol, format!("{id} {err:.1e}≤{tol:.0e} over {}", r.trials));
    }

    fn runtime(&mut self, start: Instant, limit: Duration) {
        let t = start.elapsed();
        self.require(t < limit, format!("{:.2}s<{}s", t.as_secs_f64(), limit.as_secs()));
    }
}

fn run(name: &str, trials: usize) -> Vec<Record> {
    let opts = Options { trials, seed: 20240601, ..Options::default() };
    run_group(group(name).unwrap_or_else(|| panic!("no group {name}")), &opts, None)
}

fn algebra_axioms() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let defining = run("algebra.defining_relation", 1);
    o.require(defining[0].max_abs_error == Some(0.0) && defining[0].trials == 16, "16 generator pairs exact");
    let dims: Vec<usize> = (0..=4).map(|k| Blade::of_grade(k).count()).collect();
    o.require(dims == [1, 4, 6, 4, 1], format!("grade dims {dims:?}"));
    o.bound(&run("algebra.grade_dims", 1), "algebra.grade_dims", 0.0);
    let products = run("algebra.products", 1000);
    o.bound(&products, "algebra.associativity", 1e-12);
    o.bound(&products, "algebra.reverse_antiautomorphism", 1e-12);
    o.bound(&products, "algebra.dagger_antiautomorphism", 1e-12);
    o.runtime(start, Duration::from_secs(2));
    o
}

fn distinguished_elements() -> Outcome {
    let mut o = Outcome::new();
    let x = chi();
    o.require(beta() * beta() == e(), "β²=e");
    o.require(theta() * theta() == -e(), "θ²=−e");
    o.require((x * x - x).max_abs() == 0.0, "χ²=χ");
    o.require(x.dagger() == x, "χ†=χ");
    o.require((theta() * x - x.scale_complex(Complex64::new(0.0, 1.0))).max_abs() == 0.0, "θχ=iχ");
    o
}

fn lie_layer() -> Outcome {
    let mut o = Outcome::new();
    let exps = run("lie.exponentials", 500);
    o.bound(&exps, "lie.exp_g3_series", 1e-12);
    o.bound(&exps, "lie.gchi_unitarity", 1e-12);
    o.bound(&run("lie.su2_brackets", 1), "lie.su2_brackets", 0.0);
    o
}

fn frames() -> Outcome {
    let mut o = Outcome::new();
    o.bound(&run("frames.tetrads", 100), "frames.tetrad_genvector", 1e-12);
    o.bound(&run("frames.conjugated", 100), "frames.divergence", 1e-12);
    o.bound(&run("frames.dirac_squared", 100), "frames.dirac_squared", 1e-12);
    o
}

fn ym_conservation() -> Outcome {
    let mut o = Outcome::new();
    let recs = run("ym.conservation", 200);
    o.bound(&recs, "ym.conservation_l3", 1e-9);
    o.bound(&recs, "ym.conservation_lchi", 1e-9);
    o
}

fn lepton_covariance() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let recs = run("lepton.gauge", 200);
    o.bound(&recs, "lepton.covariance_u", 1e-9);
    o.bound(&recs, "lepton.covariance_s", 1e-9);
    o.runtime(start, Duration::from_secs(20));
    o
}

fn lepton_identities() -> Outcome {
    let mut o = Outcome::new();
    let recs = run("lepton.identities", 200);
    o.bound(&recs, "lepton.antihermitian_identity", 1e-10);
    o.bound(&recs, "lepton.commutator_pi4", 1e-12);
    o.bound(&recs, "lepton.divergence_pi4", 1e-12);
    o.bound(&recs, "lepton.conservation_equivalence", 1e-10);
    o
}

fn quark_system() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let gauge = run("quark.gauge", 100);
    for id in ["quark.covariance_u", "quark.covariance_v", "quark.covariance_s"] {
        o.bound(&gauge, id, 1e-9);
    }
    let ids = run("quark.identities", 100);
    o.bound(&ids, "quark.pi0_commutator", 1e-12);
    o.bound(&ids, "quark.trace_annihilation", 1e-12);
    o.bound(&run("quark.lepton_reduction", 100), "quark.lepton_reduction", 1e-12);
    o.runtime(start, Duration::from_secs(30));
    o
}

fn current_typing() -> Outcome {
    let mut o = Outcome::new();
    let recs = run("quark.identities", 200);
    o.bound(&recs, "quark.current_a_typing", 1e-12);
    o.bound(&recs, "quark.current_c_typing", 1e-12);
    o.bound(&recs, "quark.current_b_antihermitian", 1e-12);
    o
}

fn lattice_convergence() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let spacings = [0.1, 0.05, 0.025];
    let sample = config::sample();
    let (csv, ok) = convergence(&sample, spacings[0], 9).expect("sample convergence");
    o.require(ok, "sample config orders in [1.8,2.2]");
    o.require(csv.lines().count() == 13, "12 rows");

    // a random configuration with an x-dependent G(χ) gauge
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let fields = LeptonFields::random(&mut rng, Idempotent::Minus);
    let gauge = random_group_field(&mut rng, GroupFlavor::GChi, Idempotent::Minus);
    let rows = convergence_study(&fields, &gauge, [0.1, -0.1, 0.2, 0.0], &spacings, 9).expect("random convergence");
    for r in rows.iter().filter(|r| r.order.is_some()) {
        let p = r.order.unwrap();
        o.require((1.8..=2.2).contains(&p), format!("{} h={} order {p:.3}", r.equation, r.h));
    }
    o.runtime(start, Duration::from_secs(60));
    o
}

fn reproducible_reports() -> Outcome {
    let mut o = Outcome::new();
    let dir = std::env::temp_dir().join(format!("cliffgauge-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("report{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_cliffgauge"))
            .args(["verify", "all", "--seed", "7", "--report"])
            .arg(&path)
            .status()
            .expect("binary runs");
        o.require(status.code() == Some(0), format!("run {i} exit {:?}", status.code()));
        reports.push(std::fs::read(&path).unwrap());
    }
    o.require(!reports[0].is_empty() && reports[0] == reports[1], format!("{} identical bytes", reports[0].len()));
    std::fs::remove_dir_all(&dir).ok();
    o
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("algebra axioms", algebra_axioms),
        ("distinguished elements", distinguished_elements),
        ("lie layer", lie_layer),
        ("frames", frames),
        ("yang-mills conservation", ym_conservation),
        ("lepton gauge covariance", lepton_covariance),
        ("lepton conservation identities", lepton_identities),
        ("quark system", quark_system),
        ("quark current typing", current_typing),
        ("lattice convergence", lattice_convergence),
        ("reproducible reports", reproducible_reports),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        writeln!(err, "criterion {:>2} {:<32} {}  {}", i + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail).unwrap();
        if !o.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
