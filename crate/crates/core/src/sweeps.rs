//! Seeded verification sweeps, one per check family.
//!
//! Trial `i` of a sweep draws from `trial_rng(seed, i)` only, so results do
//! not depend on scheduling; rows come back sorted by trial index.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bohr::{self, BASE_SLACK, LITTLEWOOD_TOLERANCE};
use crate::generators::{
    random_dilatation, random_in_disk, random_large_function, random_polynomial_from,
    random_schwarz_from, trial_rng, Dilatation, GeneratorError, LargeFunctionSpec, SpecFamily,
};
use crate::geometry::{self, DiskIdentity, PuncturedPlaneCover};
use crate::harmonic;
use crate::modular::{self, CoveringParameter};
use crate::series::Complex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Littlewood,
    Theorem4,
    VonNeumann,
    Harmonic,
    ClassicalBohr,
    Algebra,
    MaxModulus,
    DensityDistance,
    Univalence,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Littlewood,
        Suite::Theorem4,
        Suite::VonNeumann,
        Suite::Harmonic,
        Suite::ClassicalBohr,
        Suite::Algebra,
        Suite::MaxModulus,
        Suite::DensityDistance,
        Suite::Univalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Littlewood => "littlewood",
            Suite::Theorem4 => "theorem4",
            Suite::VonNeumann => "von-neumann",
            Suite::Harmonic => "harmonic",
            Suite::ClassicalBohr => "classical-bohr",
            Suite::Algebra => "algebra",
            Suite::MaxModulus => "max-modulus",
            Suite::DensityDistance => "density-distance",
            Suite::Univalence => "univalence",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Littlewood | Suite::Theorem4 | Suite::ClassicalBohr => 100,
            Suite::VonNeumann | Suite::Harmonic => 50,
            Suite::Algebra => 1000,
            Suite::MaxModulus => 20,
            Suite::DensityDistance => 200,
            Suite::Univalence => 100_000,
        }
    }

    pub fn default_order(self) -> usize {
        match self {
            Suite::Littlewood => 40,
            _ => 64,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// A slack no finite check can meet.
pub const IMPOSSIBLE_SLACK: f64 = -1e300;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub seed: u64,
    /// Defaults to [`Suite::default_trials`].
    pub trials: Option<usize>,
    /// Series order; defaults to [`Suite::default_order`].
    pub order: Option<usize>,
    /// Replaces every row's slack; [`IMPOSSIBLE_SLACK`] makes every row fail.
    pub slack: Option<f64>,
    /// Range of the covering parameter for generated large functions.
    pub alpha_min: f64,
    pub alpha_max: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let family = SpecFamily::theorem4();
        Self {
            seed: 0,
            trials: None,
            order: None,
            slack: None,
            alpha_min: family.alpha_min,
            alpha_max: family.alpha_max,
        }
    }
}

impl SweepConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn trials(&self, suite: Suite) -> usize {
        self.trials.unwrap_or_else(|| suite.default_trials())
    }

    fn order(&self, suite: Suite) -> usize {
        self.order.unwrap_or_else(|| suite.default_order())
    }

    fn slack(&self, default: f64) -> f64 {
        self.slack.unwrap_or(default)
    }

    fn family(&self, base: SpecFamily) -> SpecFamily {
        SpecFamily {
            alpha_min: self.alpha_min,
            alpha_max: self.alpha_max,
            ..base
        }
    }
}

/// One executed check: passes iff its own criterion holds and `lhs <= rhs + slack`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub trial: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    /// Canonical text of the generated input, enough to rebuild it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
    pub detail: Value,
}

impl CheckRow {
    fn new(check: &str, trial: usize, lhs: f64, rhs: f64, slack: f64, own_pass: bool) -> Self {
        Self {
            check: check.to_owned(),
            trial,
            lhs,
            rhs,
            slack,
            pass: own_pass && lhs <= rhs + slack,
            recipe: None,
            detail: Value::Null,
        }
    }

    fn recipe(mut self, recipe: impl Into<String>) -> Self {
        self.recipe = Some(recipe.into());
        self
    }

    fn detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }

    /// A trial that could not be evaluated at all counts as a failure.
    fn errored(check: &str, trial: usize, err: impl fmt::Display) -> Self {
        Self {
            check: check.to_owned(),
            trial,
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            pass: false,
            recipe: None,
            detail: json!({ "error": err.to_string() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub order: usize,
    pub rows: Vec<CheckRow>,
    /// Indices into `rows` of failing checks.
    pub failures: Vec<usize>,
    pub summary: Value,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: Suite, cfg: &SweepConfig, rows: Vec<CheckRow>, summary: Value) -> Self {
        let failures: Vec<usize> = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.pass)
            .map(|(i, _)| i)
            .collect();
        Self {
            suite,
            seed: cfg.seed,
            trials: cfg.trials(suite),
            order: cfg.order(suite),
            pass: failures.is_empty() && !rows.is_empty(),
            rows,
            failures,
            summary,
        }
    }

    pub fn failing_rows(&self) -> impl Iterator<Item = &CheckRow> {
        self.failures.iter().map(move |&i| &self.rows[i])
    }
}

fn max_of(rows: &[CheckRow], f: impl Fn(&CheckRow) -> f64) -> f64 {
    rows.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
}

fn min_margin(rows: &[CheckRow]) -> f64 {
    rows.iter()
        .map(|r| r.rhs + r.slack - r.lhs)
        .fold(f64::INFINITY, f64::min)
}

fn par_trials<F>(trials: usize, f: F) -> Vec<CheckRow>
where
    F: Fn(usize) -> Vec<CheckRow> + Sync + Send,
{
    (0..trials).into_par_iter().flat_map_iter(f).collect()
}

pub fn run(suite: Suite, cfg: &SweepConfig) -> SuiteReport {
    match suite {
        Suite::Littlewood => littlewood(cfg),
        Suite::Theorem4 => theorem4(cfg),
        Suite::VonNeumann => von_neumann(cfg),
        Suite::Harmonic => harmonic_sweep(cfg),
        Suite::ClassicalBohr => classical(cfg),
        Suite::Algebra => algebra(cfg),
        Suite::MaxModulus => max_modulus(cfg),
        Suite::DensityDistance => density_distance(cfg),
        Suite::Univalence => univalence(cfg),
    }
}

/// Every suite at its default size, in [`Suite::ALL`] order.
pub fn run_all(cfg: &SweepConfig) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run(s, cfg)).collect()
}

fn littlewood(cfg: &SweepConfig) -> SuiteReport {
    let suite = Suite::Littlewood;
    let order = cfg.order(suite);
    let slack = cfg.slack(LITTLEWOOD_TOLERANCE);
    let rows = par_trials(cfg.trials(suite), |i| {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let depth = rng.gen_range(1..=4);
        let phi = match random_schwarz_from(&mut rng, cfg.seed, depth, true) {
            Ok(phi) => phi,
            Err(e) => return vec![CheckRow::errored("littlewood", i, e)],
        };
        let row = match bohr::littlewood_check(&phi, order) {
            Ok(rep) => CheckRow::new("littlewood", i, rep.max_ratio, 1.0, slack, true).detail(json!({
                "argmax_degree": rep.argmax_degree,
                "max_ratio_shifted": rep.max_ratio_shifted,
            })),
            Err(e) => CheckRow::errored("littlewood", i, e),
        };
        vec![row.recipe(phi.canonical())]
    });
    let summary = json!({ "max_ratio": max_of(&rows, |r| r.lhs) });
    SuiteReport::new(suite, cfg, rows, summary)
}

/// The large function used by trial `index` of the `theorem4` sweep; even
/// indices draw from the family with a closed-form boundary distance.
pub fn theorem4_spec(cfg: &SweepConfig, index: usize) -> Result<LargeFunctionSpec, GeneratorError> {
    let mut rng = trial_rng(cfg.seed, index as u64);
    theorem4_spec_from(&mut rng, cfg, index)
}

fn theorem4_spec_from<R: Rng>(
    rng: &mut R,
    cfg: &SweepConfig,
    index: usize,
) -> Result<LargeFunctionSpec, GeneratorError> {
    let family = cfg.family(SpecFamily::theorem4());
    random_large_function(rng, cfg.seed, &family, index % 2 == 0, cfg.order(Suite::Theorem4))
}

fn theorem4(cfg: &SweepConfig) -> SuiteReport {
    let suite = Suite::Theorem4;
    let r = modular::e_minus_pi();
    let rows = par_trials(cfg.trials(suite), |i| {
        let spec = match theorem4_spec(cfg, i) {
            Ok(spec) => spec,
            Err(e) => return vec![CheckRow::errored("theorem4", i, e)],
        };
        let row = match bohr::main_theorem_check(&spec, r, cfg.slack(BASE_SLACK)) {
            Ok(rep) => CheckRow::new("theorem4", i, rep.lhs + rep.tail_bound, rep.rhs, rep.slack, true)
                .detail(json!({
                    "majorant": rep.lhs,
                    "tail_bound": rep.tail_bound,
                    "distance_error": rep.distance.error,
                    "distance_method": rep.distance.method,
                    "sampling_certified": spec.sampling_certified(),
                    "delta_diagnostic": rep.delta_diag,
                    "alpha": spec.alpha().value(),
                })),
            Err(e) => CheckRow::errored("theorem4", i, e),
        };
        vec![row.recipe(spec.canonical())]
    });
    let exact = rows
        .iter()
        .filter(|r| r.detail["distance_method"] == json!("omitted-points-exact"))
        .count();
    let summary = json!({
        "radius": r,
        "exact_distance_trials": exact,
        "min_margin": min_margin(&rows),
    });
    SuiteReport::new(suite, cfg, rows, summary)
}

fn von_neumann(cfg: &SweepConfig) -> SuiteReport {
    let suite = Suite::VonNeumann;
    let order = cfg.order(suite);
    let r = modular::e_minus_pi();
    let family = cfg.family(SpecFamily::von_neumann());
    let rows = par_trials(cfg.trials(suite), |i| {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let built = random_large_function(&mut rng, cfg.seed, &family, i % 2 == 0, order).and_then(
            |spec| {
                let degree = rng.gen_range(1..=6);
                Ok((spec, random_polynomial_from(&mut rng, degree, 1.0)?))
            },
        );
        let (spec, p) = match built {
            Ok(x) => x,
            Err(e) => return vec![CheckRow::errored("von-neumann", i, e)],
        };
        let recipe = format!("{}; p={:?}", spec.canonical(), coeff_list(p.coeffs()));
        let row = match bohr::von_neumann_check(&spec, &p, r, cfg.slack(BASE_SLACK)) {
            Ok(rep) => CheckRow::new("von-neumann", i, rep.lhs + rep.tail_bound, rep.sup_norm, rep.slack, true)
                .detail(json!({
                    "majorant": rep.lhs,
                    "tail_bound": rep.tail_bound,
                    "pointwise": rep.pointwise,
                    "distance": rep.distance,
                })),
            Err(e) => CheckRow::errored("von-neumann", i, e),
        };
        vec![row.recipe(recipe)]
    });
    let summary = json!({ "radius": r, "min_margin": min_margin(&rows) });
    SuiteReport::new(suite, cfg, rows, summary)
}

fn coeff_list(c: &[Complex]) -> Vec<[f64; 2]> {
    c.iter().map(|z| [z.re, z.im]).collect()
}

fn harmonic_sweep(cfg: &SweepConfig) -> SuiteReport {
    let suite = Suite::Harmonic;
    let order = cfg.order(suite);
    let r = modular::e_minus_pi();
    let rows = par_trials(cfg.trials(suite), |i| {
        let mut rng = trial_rng(cfg.seed, i as u64);
        // the spec is drawn first, so `h` matches the `theorem4` trial with the same index
        let spec = match theorem4_spec_from(&mut rng, cfg, i) {
            Ok(spec) => spec,
            Err(e) => return vec![CheckRow::errored("harmonic", i, e)],
        };
        let mu = random_dilatation(&mut rng);
        let recipe = format!("{}; mu={mu}", spec.canonical());
        harmonic_rows(&spec, mu, order, r, cfg, i)
            .into_iter()
            .map(|row| row.recipe(recipe.clone()))
            .collect()
    });
    let summary = json!({ "radius": r, "min_margin": min_margin(&rows) });
    SuiteReport::new(suite, cfg, rows, summary)
}

fn harmonic_rows(
    spec: &LargeFunctionSpec,
    mu: Dilatation,
    order: usize,
    r: f64,
    cfg: &SweepConfig,
    i: usize,
) -> Vec<CheckRow> {
    let pair = harmonic::build_pair(spec.series(), &mu.series(order), order);
    let bound = match harmonic::harmonic_bohr_check(&pair, spec, r, cfg.slack(BASE_SLACK)) {
        Ok(rep) => CheckRow::new("harmonic", i, rep.lhs + rep.tail_bound, rep.rhs, rep.slack, true)
            .detail(json!({
                "majorant_h": rep.majorant_h,
                "majorant_g": rep.majorant_g,
                "tail_bound": rep.tail_bound,
                "mu_sup": rep.mu_sup,
                "mu_at_r": rep.mu_at_r,
                "distance": rep.distance,
                "lhs_with_a0": rep.lhs_with_a0,
            })),
        Err(e) => CheckRow::errored("harmonic", i, e),
    };
    let integral = match harmonic::mg_integral_identity_check(&pair, r) {
        Ok(rep) => {
            let tol = 1e-9 * rep.closed_form.max(1.0);
            CheckRow::new("harmonic-integral", i, rep.abs_error, 0.0, cfg.slack(tol), rep.pass)
                .detail(json!({
                    "quadrature": rep.quadrature,
                    "closed_form": rep.closed_form,
                    "majorant_h": rep.majorant_h,
                    "domination_applies": rep.domination_applies,
                    "domination_holds": rep.domination_holds,
                }))
        }
        Err(e) => CheckRow::errored("harmonic-integral", i, e),
    };
    vec![bound, integral]
}

fn classical(cfg: &SweepConfig) -> SuiteReport {
    let suite = Suite::ClassicalBohr;
    let order = cfg.order(suite);
    let r = 1.0 / 3.0;
    let rows = par_trials(cfg.trials(suite), |i| {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let depth = rng.gen_range(1..=3);
        let phi = match random_schwarz_from(&mut rng, cfg.seed, depth, true) {
            Ok(phi) => phi,
            Err(e) => return vec![CheckRow::errored("classical-bohr", i, e)],
        };
        let c = random_in_disk(&mut rng, 0.95);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let mobius = Dilatation::Mobius { c, theta };
        let recipe = format!("{mobius} o {}", phi.canonical());
        let f = match mobius.series(order).compose(&phi.series(order), order) {
            Ok(f) => f,
            Err(e) => return vec![CheckRow::errored("classical-bohr", i, e)],
        };
        let f_eval = |z: Complex| {
            let w = phi.eval(z);
            Complex::from_polar(1.0, theta) * (w + c) / (1.0 + c.conj() * w)
        };
        let row = match bohr::classical_bohr_check(&f, f_eval, r, cfg.slack(BASE_SLACK)) {
            Ok(rep) => CheckRow::new("classical-bohr", i, rep.majorant + rep.tail_bound, 1.0, rep.slack, true)
                .detail(json!({
                    "majorant": rep.majorant,
                    "tail_bound": rep.tail_bound,
                    "sup_sampled": rep.sup_sampled,
                })),
            Err(e) => CheckRow::errored("classical-bohr", i, e),
        };
        vec![row.recipe(recipe)]
    });
    let summary = json!({ "radius": r, "max_majorant": max_of(&rows, |r| r.lhs) });
    SuiteReport::new(suite, cfg, rows, summary)
}

fn algebra(cfg: &SweepConfig) -> SuiteReport {
    let suite = Suite::Algebra;
    let rows = par_trials(cfg.trials(suite), |i| {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let df = rng.gen_range(0..=16);
        let dg = rng.gen_range(0..=16);
        let r = rng.gen_range(0.05..0.95);
        let pair = random_polynomial_from(&mut rng, df, 1.0)
            .and_then(|f| Ok((f, random_polynomial_from(&mut rng, dg, 1.0)?)));
        let (f, g) = match pair {
            Ok(x) => x,
            Err(e) => return vec![CheckRow::errored("algebra", i, e)],
        };
        let recipe = format!(
            "r={r:.16e}; f={:?}; g={:?}",
            coeff_list(f.coeffs()),
            coeff_list(g.coeffs())
        );
        let row = match bohr::algebra_properties_check(&f, &g, r) {
            Ok(rep) => {
                let slack = cfg.slack(1e-12 * rep.product_rhs);
                CheckRow::new("algebra", i, rep.product_lhs, rep.product_rhs, slack, rep.pass)
                    .detail(json!({
                        "radius": r,
                        "sum_lhs": rep.sum_lhs,
                        "sum_rhs": rep.sum_rhs,
                        "unit": rep.unit,
                    }))
            }
            Err(e) => CheckRow::errored("algebra", i, e),
        };
        vec![row.recipe(recipe)]
    });
    SuiteReport::new(suite, cfg, rows, Value::Null)
}

fn max_modulus(cfg: &SweepConfig) -> SuiteReport {
    let suite = Suite::MaxModulus;
    let trials = cfg.trials(suite);
    let nodes = geometry::CIRCLE_NODES;
    let step = std::f64::consts::TAU / nodes as f64;
    let mut rows = par_trials(trials, |i| {
        let r = 0.5 * (i + 1) as f64 / trials as f64;
        let row = match (modular::j_max_modulus(r, nodes), modular::j_eval(Complex::new(-r, 0.0))) {
            (Ok(m), Ok(jr)) => {
                let rhs = jr.norm();
                let angle_ok = (m.argmax_angle - std::f64::consts::PI).abs() <= step;
                CheckRow::new("max-modulus", i, m.max_sampled, rhs, cfg.slack(1e-12 * rhs), angle_ok)
                    .detail(json!({ "radius": r, "argmax_angle": m.argmax_angle }))
            }
            (Err(e), _) | (_, Err(e)) => CheckRow::errored("max-modulus", i, e),
        };
        vec![row]
    });
    let r = modular::e_minus_pi();
    rows.push(match modular::j_max_modulus(r, nodes) {
        Ok(m) => {
            let slack = cfg.slack(1e-10);
            let close = (m.max_sampled - 1.0).abs() <= slack;
            CheckRow::new("max-modulus-bohr-radius", trials, m.max_sampled, 1.0, slack, close)
                .detail(json!({ "radius": r, "argmax_angle": m.argmax_angle }))
        }
        Err(e) => CheckRow::errored("max-modulus-bohr-radius", trials, e),
    });
    let summary = json!({ "nodes": nodes, "grid_step": step });
    SuiteReport::new(suite, cfg, rows, summary)
}

fn density_distance(cfg: &SweepConfig) -> SuiteReport {
    let suite = Suite::DensityDistance;
    let trials = cfg.trials(suite);
    let alpha = CoveringParameter::new(std::f64::consts::PI).expect("pi is a valid parameter");
    let cover = PuncturedPlaneCover::standard(alpha);
    let q_points: Vec<Complex> = (0..trials)
        .map(|i| random_in_disk(&mut trial_rng(cfg.seed, i as u64), 0.9))
        .collect();
    let id_count = trials.div_ceil(2);
    let id_points: Vec<Complex> = (0..id_count)
        .map(|i| random_in_disk(&mut trial_rng(cfg.seed ^ 0x1d, i as u64), 0.99))
        .collect();

    let mut rows = Vec::with_capacity(trials + id_count);
    let q_slack = cfg.slack(1e-6);
    match geometry::density_distance_check(&cover, &q_points, q_slack) {
        Ok(rep) => rows.extend(rep.points.iter().enumerate().map(|(i, p)| {
            CheckRow::new("density-q", i, p.product, 1.0, q_slack, true)
                .detail(json!({ "z": [p.z.re, p.z.im], "density": p.density, "distance": p.distance }))
        })),
        Err(e) => rows.push(CheckRow::errored("density-q", 0, e)),
    }
    let id_slack = cfg.slack(1e-14);
    match geometry::density_distance_check(&DiskIdentity, &id_points, id_slack) {
        Ok(rep) => rows.extend(rep.points.iter().enumerate().map(|(i, p)| {
            let closed = 1.0 / (1.0 + p.w.norm());
            let exact = (p.product - closed).abs() <= id_slack && p.product <= 1.0 + id_slack;
            CheckRow::new("density-identity", i, p.product, closed, id_slack, exact)
                .detail(json!({ "z": [p.z.re, p.z.im] }))
        })),
        Err(e) => rows.push(CheckRow::errored("density-identity", 0, e)),
    }
    let summary = json!({
        "alpha": alpha.value(),
        "max_product_q": max_of(&rows[..trials.min(rows.len())], |r| r.lhs),
    });
    SuiteReport::new(suite, cfg, rows, summary)
}

/// Radius below which `J` is expected to be univalent, with a 10% margin.
pub fn univalence_safe_radius() -> f64 {
    0.9 * (-std::f64::consts::FRAC_PI_2).exp()
}

pub const COLLISION_RADIUS: f64 = 0.35;
pub const COLLISION_GAP: f64 = 1e-8;
const COLLISION_STARTS: usize = 64;

fn univalence(cfg: &SweepConfig) -> SuiteReport {
    let suite = Suite::Univalence;
    let trials = cfg.trials(suite);
    let r = univalence_safe_radius();
    let slack = cfg.slack(0.0);
    let mut rows = Vec::new();
    rows.push(match modular::univalence_probe(r, trials, cfg.seed) {
        Ok(rep) => CheckRow::new("univalence-probe", 0, rep.collisions.len() as f64, 0.0, slack, true)
            .detail(json!({
                "radius": r,
                "pairs": rep.trials,
                "min_ratio": rep.min_ratio,
                "collisions": rep.collisions,
            })),
        Err(e) => CheckRow::errored("univalence-probe", 0, e),
    });
    rows.push(
        match modular::collision_search(COLLISION_RADIUS, COLLISION_STARTS, cfg.seed, COLLISION_GAP) {
            Ok(Some(pair)) => CheckRow::new("collision-search", 1, pair.gap, COLLISION_GAP, slack, true)
                .detail(json!({ "radius": COLLISION_RADIUS, "pair": pair })),
            Ok(None) => CheckRow::new("collision-search", 1, f64::INFINITY, COLLISION_GAP, slack, false)
                .detail(json!({ "radius": COLLISION_RADIUS, "pair": null })),
            Err(e) => CheckRow::errored("collision-search", 1, e),
        },
    );
    SuiteReport::new(suite, cfg, rows, json!({ "safe_radius": r }))
}
