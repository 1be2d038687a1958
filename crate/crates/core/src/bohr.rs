//! The Bohr majorant `M(f)(r) = sum |a_n| r^n`, the radius `e^{-pi}` as the
//! root of `-J(-r) = 1`, and the inequality checks built on them.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::generators::{GeneratorError, LargeFunctionSpec, SchwarzFunction};
use crate::geometry::{self, DistanceEstimate, GeometryError};
use crate::modular::{self, ModularCoefficients, ModularError};
use crate::series::{Complex, SeriesError, TruncatedSeries};

/// Nodes used to sample `max |f|` on a circle.
pub const SUP_NODES: usize = 4096;
/// Inflation applied to a sampled circle maximum before using it as a bound.
pub const SUP_INFLATION: f64 = 1.01;
/// Circle radius for Cauchy tail bounds at `r = e^{-pi}`.
pub const TAIL_RADIUS: f64 = 0.5;
/// Absolute slack added to every inequality check.
pub const BASE_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BohrError {
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("no sign change on [{lo}, {hi}]: g(lo) = {g_lo}, g(hi) = {g_hi}")]
    Bracket { lo: f64, hi: f64, g_lo: f64, g_hi: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("sampled maximum is not finite")]
    NonFiniteSample,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
}

/// `sum_{n >= from_degree} |a_n| r^n` over the stored prefix.
pub fn bohr_operator(f: &TruncatedSeries, r: f64, from_degree: usize) -> Result<f64, BohrError> {
    if !(0.0..1.0).contains(&r) {
        return Err(BohrError::Domain {
            what: "r",
            value: r,
        });
    }
    Ok(f.coeffs()
        .iter()
        .enumerate()
        .skip(from_degree)
        .rev()
        .fold(0.0, |acc, (_, c)| acc * r + c.norm())
        * r.powi(from_degree as i32))
}

/// Largest `|f|` over `nodes` equally spaced points of `|z| = rho`.
pub fn sampled_sup<F: Fn(Complex) -> Complex>(f: F, rho: f64, nodes: usize) -> f64 {
    (0..nodes)
        .map(|j| f(Complex::from_polar(rho, 2.0 * PI * j as f64 / nodes as f64)).norm())
        .fold(f64::NEG_INFINITY, |m, v| if v.is_nan() { f64::NAN } else { m.max(v) })
}

/// Cauchy-estimate bound on `sum_{n > order} |a_n| r^n`:
/// `M_rho (r/rho)^{order+1} / (1 - r/rho)` with `M_rho` the sampled maximum
/// of `|f|` on `|z| = rho`, inflated by 1%.
pub fn cauchy_tail_bound<F: Fn(Complex) -> Complex>(
    f_eval: F,
    rho: f64,
    order: usize,
    r: f64,
) -> Result<f64, BohrError> {
    if !(r > 0.0 && r < rho && rho < 1.0) {
        return Err(BohrError::Domain {
            what: "r < rho < 1",
            value: r,
        });
    }
    let m = sampled_sup(f_eval, rho, SUP_NODES);
    if !m.is_finite() {
        return Err(BohrError::NonFiniteSample);
    }
    let q = r / rho;
    Ok(SUP_INFLATION * m * q.powi(order as i32 + 1) / (1.0 - q))
}

/// `-J(-r) = 16 sum A_n r^{n+1}` from the coefficient table.
pub fn majorant_value(a: &ModularCoefficients, r: f64) -> f64 {
    16.0 * r * a.float().iter().rev().fold(0.0, |acc, &an| acc * r + an)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BohrRadiusResult {
    pub radius: f64,
    /// `-J(-r) - 1` at the returned radius, from the truncated majorant.
    pub residual: f64,
    pub iterations: usize,
}

pub const RADIUS_BRACKET: (f64, f64) = (0.01, 0.1);

/// Bisection root of `-J(-r) - 1` on `[0.01, 0.1]`; the function is strictly
/// increasing there since all `A_n` are positive.
pub fn bohr_radius_solve(order: usize) -> Result<BohrRadiusResult, BohrError> {
    if order < 100 {
        return Err(BohrError::Domain {
            what: "order",
            value: order as f64,
        });
    }
    let a = modular::a_coeffs(order)?;
    let g = |r: f64| majorant_value(&a, r) - 1.0;
    let (mut lo, mut hi) = RADIUS_BRACKET;
    let (g_lo, g_hi) = (g(lo), g(hi));
    if !(g_lo < 0.0 && g_hi > 0.0) {
        return Err(BohrError::Bracket { lo, hi, g_lo, g_hi });
    }
    let mut iterations = 0;
    while iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let radius = if g(hi).abs() < g(lo).abs() { hi } else { lo };
    Ok(BohrRadiusResult {
        radius,
        residual: g(radius),
        iterations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LittlewoodReport {
    pub order: usize,
    /// `max_k |a_k| / (16 A_{k-1})`, comparing equal degrees.
    pub max_ratio: f64,
    pub argmax_degree: usize,
    /// `max_k |a_k| / (16 A_k)`, the index-shifted comparison, for reference.
    pub max_ratio_shifted: f64,
    pub pass: bool,
}

pub const LITTLEWOOD_TOLERANCE: f64 = 1e-9;

/// Coefficients of `-J(-phi(z))` against those of `-J(-z)`.
pub fn littlewood_check(phi: &SchwarzFunction, order: usize) -> Result<LittlewoodReport, BohrError> {
    let a = modular::a_coeffs(order + 1)?;
    let majorant = TruncatedSeries::new(
        (0..=order)
            .map(|k| Complex::new(a.majorant_coeff(k), 0.0))
            .collect(),
    )?;
    let f = majorant.compose(&phi.series(order), order)?;
    let mut max_ratio = 0.0;
    let mut argmax_degree = 1;
    let mut max_ratio_shifted: f64 = 0.0;
    for k in 1..=order {
        let ak = f.coeff(k).norm();
        let ratio = ak / a.majorant_coeff(k);
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax_degree = k;
        }
        max_ratio_shifted = max_ratio_shifted.max(ak / (16.0 * a.float()[k]));
    }
    Ok(LittlewoodReport {
        order,
        max_ratio,
        argmax_degree,
        max_ratio_shifted,
        pass: max_ratio <= 1.0 + LITTLEWOOD_TOLERANCE,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    /// `sum_{n>=1} |a_n| r^n` over the stored prefix.
    pub lhs: f64,
    /// Boundary distance `d(F(0), ∂F(U))`.
    pub rhs: f64,
    pub tail_bound: f64,
    pub distance: DistanceEstimate,
    /// `min |z g(z)|` near the unit circle with `g = (F - a)/(b - a)`; diagnostic only.
    pub delta_diag: f64,
    pub slack: f64,
    /// `rhs + slack - lhs - tail_bound`; negative means failure.
    pub margin: f64,
    pub pass: bool,
}

/// Radius and node count for the `delta` diagnostic.
const DELTA_RADIUS: f64 = 1.0 - 1.0 / 128.0;
const DELTA_NODES: usize = 512;

fn delta_diagnostic(spec: &LargeFunctionSpec) -> f64 {
    let ba = spec.b() - spec.a();
    (0..DELTA_NODES)
        .map(|j| {
            let z = Complex::from_polar(DELTA_RADIUS, 2.0 * PI * j as f64 / DELTA_NODES as f64);
            (z * (spec.eval_or_nan(z) - spec.a()) / ba).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// `sum_{n>=1} |a_n| r^n <= d(F(0), ∂F(U))` for `r <= e^{-pi}`.
pub fn main_theorem_check(
    spec: &LargeFunctionSpec,
    r: f64,
    slack: f64,
) -> Result<TheoremReport, BohrError> {
    if !(0.0..=modular::e_minus_pi()).contains(&r) {
        return Err(BohrError::Domain {
            what: "r",
            value: r,
        });
    }
    let lhs = bohr_operator(spec.series(), r, 1)?;
    let tail_bound = if r == 0.0 {
        0.0
    } else {
        cauchy_tail_bound(|z| spec.eval_or_nan(z), TAIL_RADIUS, spec.order(), r)?
    };
    let distance = geometry::boundary_distance(spec)?;
    let slack = slack + distance.error;
    let margin = distance.value + slack - lhs - tail_bound;
    Ok(TheoremReport {
        lhs,
        rhs: distance.value,
        tail_bound,
        distance,
        delta_diag: delta_diagnostic(spec),
        slack,
        margin,
        pass: margin >= 0.0,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VonNeumannReport {
    /// `M(p ∘ F)(r)` over the stored prefix.
    pub lhs: f64,
    pub tail_bound: f64,
    /// Sampled `max |p|` on the unit circle.
    pub sup_norm: f64,
    /// `|p(F(0))|`, the pointwise value the literal statement compares.
    pub pointwise: f64,
    pub distance: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Re-expands the polynomial `p(w)` in powers of `w - center`.
pub fn taylor_shift(p: &TruncatedSeries, center: Complex) -> TruncatedSeries {
    let deg = p.order();
    let linear = TruncatedSeries::new(vec![center, Complex::new(1.0, 0.0)]).expect("finite");
    p.coeffs()
        .iter()
        .rev()
        .fold(TruncatedSeries::zero(deg), |acc, &c| {
            let mut next = acc.mul(&linear, deg);
            next = next.add(&TruncatedSeries::constant(c, 0));
            next
        })
}

/// `M(p ∘ F)(r) <= ||p||_inf` for a polynomial `p`, under `d(F(0), ∂F(U)) < 1`.
pub fn von_neumann_check(
    spec: &LargeFunctionSpec,
    p: &TruncatedSeries,
    r: f64,
    slack: f64,
) -> Result<VonNeumannReport, BohrError> {
    if !(r > 0.0 && r <= modular::e_minus_pi()) {
        return Err(BohrError::Domain {
            what: "r",
            value: r,
        });
    }
    let distance = geometry::boundary_distance(spec)?;
    if distance.value >= 1.0 {
        return Err(BohrError::HypothesisViolation(format!(
            "boundary distance {} is not below 1",
            distance.value
        )));
    }
    let order = spec.order();
    let f0 = spec.f0();
    let mut shifted = spec.series().coeffs().to_vec();
    shifted[0] = Complex::new(0.0, 0.0);
    let u = TruncatedSeries::new(shifted)?;
    let composed = taylor_shift(p, f0).compose(&u, order)?;
    let lhs = bohr_operator(&composed, r, 0)?;
    let tail_bound = cauchy_tail_bound(|z| p.eval(spec.eval_or_nan(z)), TAIL_RADIUS, order, r)?;
    let sup_norm = sampled_sup(|z| p.eval(z), 1.0, SUP_NODES);
    Ok(VonNeumannReport {
        lhs,
        tail_bound,
        sup_norm,
        pointwise: p.eval(f0).norm(),
        distance: distance.value,
        slack,
        pass: lhs + tail_bound <= sup_norm + slack,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalReport {
    pub majorant: f64,
    pub tail_bound: f64,
    /// Sampled `max |f|` on `|z| = 0.99`.
    pub sup_sampled: f64,
    pub slack: f64,
    pub pass: bool,
}

pub const CLASSICAL_SUP_RADIUS: f64 = 0.99;

/// `M(f)(r) <= 1` for `|f| <= 1` on the disk and `r <= 1/3`.
///
/// `f_eval` evaluates the underlying function exactly; it is used for the
/// boundedness precondition and the Cauchy tail.
pub fn classical_bohr_check<F: Fn(Complex) -> Complex>(
    f: &TruncatedSeries,
    f_eval: F,
    r: f64,
    slack: f64,
) -> Result<ClassicalReport, BohrError> {
    if !(0.0..=1.0 / 3.0).contains(&r) {
        return Err(BohrError::Domain {
            what: "r",
            value: r,
        });
    }
    let sup_sampled = sampled_sup(&f_eval, CLASSICAL_SUP_RADIUS, SUP_NODES);
    if !(sup_sampled <= 1.0 + 1e-12) {
        return Err(BohrError::HypothesisViolation(format!(
            "sampled sup |f| = {sup_sampled} exceeds 1"
        )));
    }
    let majorant = bohr_operator(f, r, 0)?;
    let tail_bound = if r == 0.0 {
        0.0
    } else {
        cauchy_tail_bound(&f_eval, CLASSICAL_SUP_RADIUS, f.order(), r)?
    };
    Ok(ClassicalReport {
        majorant,
        tail_bound,
        sup_sampled,
        slack,
        pass: majorant + tail_bound <= 1.0 + slack,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub sum_lhs: f64,
    pub sum_rhs: f64,
    pub product_lhs: f64,
    pub product_rhs: f64,
    pub unit: f64,
    pub pass: bool,
}

/// Subadditivity, submultiplicativity and `M(1) = 1`.
///
/// The product is formed at the full order `order(f) + order(g)`, so it is
/// exact and needs no tail; only rounding slack is allowed.
pub fn algebra_properties_check(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    r: f64,
) -> Result<AlgebraReport, BohrError> {
    let mf = bohr_operator(f, r, 0)?;
    let mg = bohr_operator(g, r, 0)?;
    let sum_lhs = bohr_operator(&f.add(g), r, 0)?;
    let product_lhs = bohr_operator(&f.mul(g, f.order() + g.order()), r, 0)?;
    let unit = bohr_operator(&TruncatedSeries::one(0), r, 0)?;
    let sum_rhs = mf + mg;
    let product_rhs = mf * mg;
    let rounding = 1e-12;
    Ok(AlgebraReport {
        sum_lhs,
        sum_rhs,
        product_lhs,
        product_rhs,
        unit,
        pass: sum_lhs <= sum_rhs * (1.0 + rounding)
            && product_lhs <= product_rhs * (1.0 + rounding)
            && unit == 1.0,
    })
}
