//! Seeded constructions for the verification sweeps: Schwarz functions,
//! functions omitting two prescribed values, dilatations and polynomials.
//!
//! Everything here is a pure function of `(seed, parameters)`. Recipes have
//! a canonical text form with 17 significant digits per real so that any
//! reported counterexample can be rebuilt exactly.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::modular::{self, CoveringParameter, ModularError};
use crate::series::{Complex, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("depth {0} outside [1, 8]")]
    InvalidDepth(usize),
    #[error("polynomial degree {0} above 16")]
    InvalidDegree(usize),
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    #[error("omitted points coincide: a = b = {0}")]
    DegenerateSpec(Complex),
    #[error("cannot parse recipe: {0}")]
    Parse(String),
    #[error(transparent)]
    Modular(#[from] ModularError),
}

/// RNG for trial `stream` of a sweep seeded with `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn random_in_disk<R: Rng>(rng: &mut R, radius: f64) -> Complex {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex::from_polar(r, 2.0 * PI * rng.gen::<f64>())
}

fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_real(s: &str) -> Result<f64, GeneratorError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| GeneratorError::Parse(format!("bad number {s:?}")))
}

/// A self-map of the unit disk fixing the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SchwarzFactor {
    Identity,
    /// `e^{i theta} z`
    Rotation { theta: f64 },
    /// `z (z - c) / (1 - conj(c) z)` with `|c| < 1`
    Blaschke { c: Complex },
    /// `z^k`
    Power { k: u32 },
    /// `s z` with `0 < s <= 1`
    Contraction { s: f64 },
}

impl SchwarzFactor {
    fn validate(&self) -> Result<(), GeneratorError> {
        let ok = match *self {
            Self::Identity => true,
            Self::Rotation { theta } => theta.is_finite(),
            Self::Blaschke { c } => c.is_finite() && c.norm() < 1.0,
            Self::Power { k } => (1..=8).contains(&k),
            Self::Contraction { s } => s > 0.0 && s <= 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(GeneratorError::InvalidFactor(self.to_string()))
        }
    }

    pub fn eval(&self, w: Complex) -> Complex {
        match *self {
            Self::Identity => w,
            Self::Rotation { theta } => w * Complex::from_polar(1.0, theta),
            Self::Blaschke { c } => w * (w - c) / (Complex::new(1.0, 0.0) - c.conj() * w),
            Self::Power { k } => w.powu(k),
            Self::Contraction { s } => w * s,
        }
    }

    pub fn series(&self, order: usize) -> TruncatedSeries {
        let one = Complex::new(1.0, 0.0);
        match *self {
            Self::Identity => TruncatedSeries::identity(order),
            Self::Rotation { theta } => {
                TruncatedSeries::monomial(Complex::from_polar(1.0, theta), 1, order)
            }
            Self::Blaschke { c } => {
                let mut coeffs = vec![Complex::new(0.0, 0.0); order.max(2) + 1];
                // (z^2 - c z) * sum (conj(c) z)^k
                let cc = c.conj();
                let mut p = one;
                for k in 0..coeffs.len() {
                    if k + 1 < coeffs.len() {
                        coeffs[k + 1] -= c * p;
                    }
                    if k + 2 < coeffs.len() {
                        coeffs[k + 2] += p;
                    }
                    p *= cc;
                }
                TruncatedSeries::from_vec(coeffs).truncate(order)
            }
            Self::Power { k } => TruncatedSeries::monomial(one, k as usize, order).truncate(order),
            Self::Contraction { s } => TruncatedSeries::monomial(Complex::new(s, 0.0), 1, order),
        }
    }

    /// Whether the factor maps the disk onto itself.
    pub fn is_surjective(&self) -> bool {
        !matches!(*self, Self::Contraction { s } if s < 1.0)
    }
}

impl fmt::Display for SchwarzFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Identity => write!(f, "identity"),
            Self::Rotation { theta } => write!(f, "rotation({})", fmt_real(theta)),
            Self::Blaschke { c } => write!(f, "blaschke({},{})", fmt_real(c.re), fmt_real(c.im)),
            Self::Power { k } => write!(f, "power({k})"),
            Self::Contraction { s } => write!(f, "contraction({})", fmt_real(s)),
        }
    }
}

impl FromStr for SchwarzFactor {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "identity" {
            return Ok(Self::Identity);
        }
        let (name, rest) = s
            .split_once('(')
            .ok_or_else(|| GeneratorError::Parse(s.to_string()))?;
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| GeneratorError::Parse(s.to_string()))?;
        let factor = match name {
            "rotation" => Self::Rotation {
                theta: parse_real(args)?,
            },
            "blaschke" => {
                let (re, im) = args
                    .split_once(',')
                    .ok_or_else(|| GeneratorError::Parse(s.to_string()))?;
                Self::Blaschke {
                    c: Complex::new(parse_real(re)?, parse_real(im)?),
                }
            }
            "power" => Self::Power {
                k: args
                    .trim()
                    .parse()
                    .map_err(|_| GeneratorError::Parse(s.to_string()))?,
            },
            "contraction" => Self::Contraction {
                s: parse_real(args)?,
            },
            _ => return Err(GeneratorError::Parse(s.to_string())),
        };
        factor.validate()?;
        Ok(factor)
    }
}

/// `phi = f_n ∘ ... ∘ f_1`, applying the recipe left to right. `phi(0) = 0`
/// holds by construction since every factor fixes the origin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchwarzFunction {
    recipe: Vec<SchwarzFactor>,
    seed: u64,
}

impl SchwarzFunction {
    pub fn new(recipe: Vec<SchwarzFactor>, seed: u64) -> Result<Self, GeneratorError> {
        for f in &recipe {
            f.validate()?;
        }
        Ok(Self { recipe, seed })
    }

    pub fn identity() -> Self {
        Self {
            recipe: vec![SchwarzFactor::Identity],
            seed: 0,
        }
    }

    pub fn recipe(&self) -> &[SchwarzFactor] {
        &self.recipe
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.recipe.iter().fold(z, |w, f| f.eval(w))
    }

    pub fn series(&self, order: usize) -> TruncatedSeries {
        self.recipe
            .iter()
            .fold(TruncatedSeries::identity(order).truncate(order), |phi, f| {
                f.series(order)
                    .compose(&phi, order)
                    .expect("Schwarz factors fix the origin")
            })
    }

    /// True when every factor is onto the disk, so the composite is too.
    pub fn surjective_certified(&self) -> bool {
        self.recipe.iter().all(SchwarzFactor::is_surjective)
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SchwarzFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "schwarz(seed={}", self.seed)?;
        for factor in &self.recipe {
            write!(f, "; {factor}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SchwarzFunction {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .strip_prefix("schwarz(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| GeneratorError::Parse(s.to_string()))?;
        let mut parts = body.split("; ");
        let seed = parts
            .next()
            .and_then(|p| p.strip_prefix("seed="))
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| GeneratorError::Parse(s.to_string()))?;
        let recipe = parts.map(str::parse).collect::<Result<Vec<_>, _>>()?;
        Self::new(recipe, seed)
    }
}

fn random_factor<R: Rng>(rng: &mut R, allow_contraction: bool) -> SchwarzFactor {
    let pick = rng.gen::<f64>();
    let contraction_weight = if allow_contraction { 0.2 } else { 0.0 };
    if pick < 0.2 {
        SchwarzFactor::Rotation {
            theta: 2.0 * PI * rng.gen::<f64>(),
        }
    } else if pick < 0.35 {
        SchwarzFactor::Power {
            k: rng.gen_range(2..=3),
        }
    } else if pick < 0.35 + contraction_weight {
        SchwarzFactor::Contraction {
            s: rng.gen_range(0.3..0.9),
        }
    } else {
        SchwarzFactor::Blaschke {
            c: random_in_disk(rng, 0.95),
        }
    }
}

pub(crate) fn random_schwarz_from<R: Rng>(
    rng: &mut R,
    seed: u64,
    depth: usize,
    allow_contraction: bool,
) -> Result<SchwarzFunction, GeneratorError> {
    if !(1..=8).contains(&depth) {
        return Err(GeneratorError::InvalidDepth(depth));
    }
    let recipe = (0..depth)
        .map(|_| random_factor(rng, allow_contraction))
        .collect();
    SchwarzFunction::new(recipe, seed)
}

/// Composition of `depth` random zero-fixing factors.
pub fn random_schwarz(seed: u64, depth: usize) -> Result<SchwarzFunction, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_schwarz_from(&mut rng, seed, depth, true)
}

/// `F = a + (b - a) Q_alpha(phi(z))`, which omits exactly `a` and `b` when
/// `phi` is onto the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct LargeFunctionSpec {
    a: Complex,
    b: Complex,
    alpha: CoveringParameter,
    phi: SchwarzFunction,
    series: TruncatedSeries,
}

pub fn make_large_function(
    a: Complex,
    b: Complex,
    alpha: CoveringParameter,
    phi: SchwarzFunction,
    order: usize,
) -> Result<LargeFunctionSpec, GeneratorError> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(GeneratorError::InvalidFactor(format!("omitted points {a}, {b}")));
    }
    if a == b {
        return Err(GeneratorError::DegenerateSpec(a));
    }
    let q = modular::q_series(alpha, order);
    let composed = q
        .compose(&phi.series(order), order)
        .expect("phi(0) = 0 by construction");
    let series = TruncatedSeries::constant(a, 0)
        .add(&composed.scale(b - a))
        .with_label("F");
    Ok(LargeFunctionSpec {
        a,
        b,
        alpha,
        phi,
        series,
    })
}

impl LargeFunctionSpec {
    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn b(&self) -> Complex {
        self.b
    }

    pub fn omitted(&self) -> [Complex; 2] {
        [self.a, self.b]
    }

    pub fn alpha(&self) -> CoveringParameter {
        self.alpha
    }

    pub fn phi(&self) -> &SchwarzFunction {
        &self.phi
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `F(0) = a + (b - a) J(exp(-alpha))`.
    pub fn f0(&self) -> Complex {
        self.a + (self.b - self.a) * modular::j_unchecked(Complex::new(self.alpha.nome(), 0.0))
    }

    /// `F(z)` evaluated through the product form, not the truncated series.
    pub fn eval(&self, z: Complex) -> Result<Complex, GeneratorError> {
        let w = self.phi.eval(z);
        Ok(self.a + (self.b - self.a) * modular::q_eval(self.alpha, w)?)
    }

    /// `F(z)`, or NaN outside the disk; for use as a plain evaluator.
    pub fn eval_or_nan(&self, z: Complex) -> Complex {
        self.eval(z)
            .unwrap_or_else(|_| Complex::new(f64::NAN, f64::NAN))
    }

    pub fn distance_certified(&self) -> bool {
        self.phi.surjective_certified()
    }

    /// Whether circle sampling measures the distance to `∂F(U)`: `phi` is
    /// surjective factors followed by one contraction `s` on which `Q` is
    /// certified univalent. Otherwise the sampled image of `|z| = rho` may
    /// pass through interior points of `F(U)` and the estimate is only a
    /// lower bound.
    pub fn sampling_certified(&self) -> bool {
        match self.phi.recipe.split_last() {
            Some((SchwarzFactor::Contraction { s }, inner)) => {
                inner.iter().all(SchwarzFactor::is_surjective)
                    && modular::q_disk_certified_univalent(self.alpha, *s)
            }
            _ => false,
        }
    }

    /// Smallest distance from sampled values of `F` on `|z| <= radius` to `{a, b}`.
    pub fn omission_margin(&self, samples: usize, seed: u64, radius: f64) -> Result<f64, GeneratorError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut margin = f64::INFINITY;
        for _ in 0..samples {
            let v = self.eval(random_in_disk(&mut rng, radius))?;
            margin = margin.min((v - self.a).norm()).min((v - self.b).norm());
        }
        Ok(margin)
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LargeFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "large(a={},{}; b={},{}; alpha={}; order={}; phi={})",
            fmt_real(self.a.re),
            fmt_real(self.a.im),
            fmt_real(self.b.re),
            fmt_real(self.b.im),
            fmt_real(self.alpha.value()),
            self.order(),
            self.phi
        )
    }
}

impl FromStr for LargeFunctionSpec {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GeneratorError::Parse(s.to_string());
        let body = s
            .trim()
            .strip_prefix("large(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (head, phi) = body.split_once("; phi=").ok_or_else(bad)?;
        let mut a = None;
        let mut b = None;
        let mut alpha = None;
        let mut order = None;
        for part in head.split("; ") {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key {
                "a" | "b" => {
                    let (re, im) = value.split_once(',').ok_or_else(bad)?;
                    let z = Complex::new(parse_real(re)?, parse_real(im)?);
                    if key == "a" {
                        a = Some(z);
                    } else {
                        b = Some(z);
                    }
                }
                "alpha" => alpha = Some(CoveringParameter::new(parse_real(value)?)?),
                "order" => order = Some(value.parse::<usize>().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        make_large_function(
            a.ok_or_else(bad)?,
            b.ok_or_else(bad)?,
            alpha.ok_or_else(bad)?,
            phi.parse()?,
            order.ok_or_else(bad)?,
        )
    }
}

/// Parameter ranges for randomly drawn large functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpecFamily {
    pub alpha_min: f64,
    pub alpha_max: f64,
    /// `a` and `b` are drawn uniformly from the disk of this radius.
    pub point_radius: f64,
    /// Minimum `|b - a|`.
    pub min_gap: f64,
    pub max_depth: usize,
}

impl SpecFamily {
    /// Covering parameters with `F(0)` well away from `a` and `b`. For a
    /// rotation `phi` the majorant inequality at `e^{-pi}` holds only for
    /// `alpha` in about `(1.18, 8.4)`; at `alpha = 1` the ratio is 1.26.
    pub fn theorem4() -> Self {
        Self {
            alpha_min: 1.5,
            alpha_max: 6.5,
            point_radius: 2.0,
            min_gap: 0.1,
            max_depth: 3,
        }
    }

    /// Omitted points within `1/6` of the origin, so the majorant of `F` at
    /// `e^{-pi}` stays below `1/3`.
    pub fn von_neumann() -> Self {
        Self {
            point_radius: 1.0 / 6.0,
            min_gap: 0.02,
            ..Self::theorem4()
        }
    }
}

/// Draws a spec from `family`. With `certified` the Schwarz factor is onto
/// the disk (exact boundary distance); otherwise it contains a contraction.
pub fn random_large_function<R: Rng>(
    rng: &mut R,
    seed: u64,
    family: &SpecFamily,
    certified: bool,
    order: usize,
) -> Result<LargeFunctionSpec, GeneratorError> {
    let a = random_in_disk(rng, family.point_radius);
    let b = loop {
        let b = random_in_disk(rng, family.point_radius);
        if (b - a).norm() >= family.min_gap {
            break b;
        }
    };
    let alpha = CoveringParameter::new(rng.gen_range(family.alpha_min..=family.alpha_max))?;
    let depth = rng.gen_range(1..=family.max_depth);
    let mut phi = random_schwarz_from(rng, seed, depth, false)?;
    if !certified {
        // F(U) = Q(D_s) with Q univalent there, so F(|z| -> 1) traces ∂F(U)
        let s = rng.gen_range(0.3..0.95) * modular::q_univalence_radius(alpha);
        phi.recipe.push(SchwarzFactor::Contraction { s });
    }
    make_large_function(a, b, alpha, phi, order)
}

/// Polynomial of the given degree with coefficients uniform in the disk of
/// radius `coeff_bound`.
pub fn random_polynomial(
    seed: u64,
    degree: usize,
    coeff_bound: f64,
) -> Result<TruncatedSeries, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_polynomial_from(&mut rng, degree, coeff_bound)
}

pub(crate) fn random_polynomial_from<R: Rng>(
    rng: &mut R,
    degree: usize,
    coeff_bound: f64,
) -> Result<TruncatedSeries, GeneratorError> {
    if degree > 16 {
        return Err(GeneratorError::InvalidDegree(degree));
    }
    let coeffs = (0..=degree)
        .map(|_| random_in_disk(rng, coeff_bound))
        .collect();
    Ok(TruncatedSeries::from_vec(coeffs).with_label("p"))
}

/// Dilatations `mu` for harmonic maps; every variant has `sup |mu| <= 1` on the
/// disk when its parameters are in range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dilatation {
    Zero,
    Constant { c: Complex },
    /// `c z^k`
    Monomial { c: Complex, k: u32 },
    /// `e^{i theta} (z + c)/(1 + conj(c) z)`
    Mobius { c: Complex, theta: f64 },
}

impl Dilatation {
    pub fn series(&self, order: usize) -> TruncatedSeries {
        match *self {
            Self::Zero => TruncatedSeries::zero(order),
            Self::Constant { c } => TruncatedSeries::constant(c, order),
            Self::Monomial { c, k } => TruncatedSeries::monomial(c, k as usize, order).truncate(order),
            Self::Mobius { c, theta } => {
                let num = TruncatedSeries::new(vec![c, Complex::new(1.0, 0.0)]).expect("finite");
                let den = TruncatedSeries::new(vec![Complex::new(1.0, 0.0), c.conj()]).expect("finite");
                num.mul(&den.reciprocal(order).expect("unit constant"), order)
                    .scale(Complex::from_polar(1.0, theta))
            }
        }
    }
}

impl std::fmt::Display for Dilatation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Self::Zero => write!(f, "zero"),
            Self::Constant { c } => write!(f, "constant({:.16e},{:.16e})", c.re, c.im),
            Self::Monomial { c, k } => write!(f, "monomial({:.16e},{:.16e},{k})", c.re, c.im),
            Self::Mobius { c, theta } => {
                write!(f, "mobius({:.16e},{:.16e},{:.16e})", c.re, c.im, theta)
            }
        }
    }
}


/// A dilatation with `sup |mu| < 1` on the disk.
pub fn random_dilatation<R: Rng>(rng: &mut R) -> Dilatation {
    let u: f64 = rng.gen();
    if u < 0.05 {
        Dilatation::Zero
    } else if u < 0.35 {
        Dilatation::Constant {
            c: random_in_disk(rng, 0.9),
        }
    } else if u < 0.65 {
        let c = random_in_disk(rng, 0.9);
        Dilatation::Monomial {
            c,
            k: rng.gen_range(1..=3),
        }
    } else {
        let c = random_in_disk(rng, 0.9);
        Dilatation::Mobius {
            c,
            theta: rng.gen_range(0.0..2.0 * PI),
        }
    }
}
