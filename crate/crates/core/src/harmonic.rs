//! Harmonic maps `f = h + conj(g)` with `g(0) = 0` and `g' = mu h'`.
//!
//! The majorant of such an `f` is taken as `M(h - a_0)(r) + M(g)(r)` and
//! compared against `(1 + sup_{|z|<=r} |mu|) d(a_0, ∂h(U))`.

use serde::Serialize;

use crate::bohr::{self, BohrError, SUP_NODES, TAIL_RADIUS};
use crate::generators::LargeFunctionSpec;
use crate::geometry;
use crate::modular;
use crate::series::{Complex, TruncatedSeries};

/// Radius at which `sup |mu|` over the whole disk is sampled.
const DISK_SUP_RADIUS: f64 = 0.999;

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicPair {
    pub h: TruncatedSeries,
    pub g: TruncatedSeries,
    pub mu: TruncatedSeries,
    pub a0: Complex,
    /// Sampled `max |mu|` on `|z| = e^{-pi}`.
    pub mu_sup_small: f64,
    /// Sampled `max |mu|` on `|z| = 0.999`.
    pub mu_sup_disk: f64,
}

fn circle_sup(f: &TruncatedSeries, rho: f64) -> f64 {
    bohr::sampled_sup(|z| f.eval(z), rho, SUP_NODES)
}

/// `g = integrate(mu h')` through degree `order`.
pub fn build_pair(h: &TruncatedSeries, mu: &TruncatedSeries, order: usize) -> HarmonicPair {
    let order = order.max(1);
    let h = h.truncate(order);
    let mu = mu.truncate(order);
    let g = mu.mul(&h.differentiate(), order - 1).integrate();
    HarmonicPair {
        a0: h.constant_term(),
        mu_sup_small: circle_sup(&mu, modular::e_minus_pi()),
        mu_sup_disk: circle_sup(&mu, DISK_SUP_RADIUS),
        h,
        g,
        mu,
    }
}

impl HarmonicPair {
    /// `h - a_0`.
    pub fn h_centered(&self) -> TruncatedSeries {
        let mut c = self.h.coeffs().to_vec();
        c[0] = Complex::new(0.0, 0.0);
        TruncatedSeries::new(c).expect("finite")
    }
}

// Uses |b_n| <= sum_k |mu_k| |a_{n-k}| and splits n > N at N/2: one factor
// always sits beyond degree N/2. Coefficients of mu are bounded through
// Cauchy on |z| = 0.999; those of h through the exact evaluator.
fn tail_bound(
    pair: &HarmonicPair,
    spec: &LargeFunctionSpec,
    r: f64,
    majorant_h: f64,
) -> Result<f64, BohrError> {
    let order = pair.h.order();
    let half = order / 2;
    let tail_h_full = bohr::cauchy_tail_bound(|z| spec.eval_or_nan(z), TAIL_RADIUS, order, r)?;
    let tail_h_half = bohr::cauchy_tail_bound(|z| spec.eval_or_nan(z), TAIL_RADIUS, half, r)?;
    let q = r / DISK_SUP_RADIUS;
    let mu_tail = |m: usize| pair.mu_sup_disk * q.powi(m as i32 + 1) / (1.0 - q);
    let majorant_mu = bohr::bohr_operator(&pair.mu, r, 0)? + mu_tail(pair.mu.order());
    let tail_g = majorant_mu * tail_h_half + mu_tail(half) * (majorant_h + tail_h_full);
    Ok(tail_h_full + tail_g)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarmonicReport {
    pub majorant_h: f64,
    pub majorant_g: f64,
    pub tail_bound: f64,
    /// `sup_{|z| <= r} |mu|`, sampled on `|z| = r`.
    pub mu_sup: f64,
    /// `|mu(r)|` on the positive axis.
    pub mu_at_r: f64,
    pub distance: f64,
    pub distance_error: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs + |a_0|`, the variant that keeps the constant term.
    pub lhs_with_a0: f64,
    pub slack: f64,
    pub pass: bool,
}

/// `M(h - a_0)(r) + M(g)(r) <= (1 + sup |mu|) d(a_0, ∂h(U))` for `r <= e^{-pi}`.
///
/// `spec` supplies `h` (its series must be `pair.h`), the exact evaluator
/// for tail bounds, and the boundary distance.
pub fn harmonic_bohr_check(
    pair: &HarmonicPair,
    spec: &LargeFunctionSpec,
    r: f64,
    slack: f64,
) -> Result<HarmonicReport, BohrError> {
    if !(r > 0.0 && r <= modular::e_minus_pi()) {
        return Err(BohrError::HypothesisViolation(format!(
            "r = {r} is outside (0, e^-pi]"
        )));
    }
    if pair.h.max_abs_diff(&spec.series().truncate(pair.h.order())) != 0.0 {
        return Err(BohrError::HypothesisViolation(
            "pair was not built from this spec".into(),
        ));
    }
    let majorant_h = bohr::bohr_operator(&pair.h, r, 1)?;
    let majorant_g = bohr::bohr_operator(&pair.g, r, 1)?;
    let tails = tail_bound(pair, spec, r, majorant_h)?;
    let mu_sup = bohr::sampled_sup(|z| pair.mu.eval(z), r, SUP_NODES);
    let distance = geometry::boundary_distance(spec)?;
    let lhs = majorant_h + majorant_g;
    let rhs = (1.0 + mu_sup) * distance.value;
    let slack = slack + (1.0 + mu_sup) * distance.error;
    Ok(HarmonicReport {
        majorant_h,
        majorant_g,
        tail_bound: tails,
        mu_sup,
        mu_at_r: pair.mu.eval(r).norm(),
        distance: distance.value,
        distance_error: distance.error,
        lhs,
        rhs,
        lhs_with_a0: lhs + pair.a0.norm(),
        slack,
        pass: lhs + tails <= rhs + slack,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralReport {
    /// `int_0^r M(g')(t) dt` by adaptive quadrature.
    pub quadrature: f64,
    /// `M(g)(r)` from the coefficients.
    pub closed_form: f64,
    pub abs_error: f64,
    /// `M(h - a_0)(r)`.
    pub majorant_h: f64,
    /// Whether `M(g) <= M(h - a_0)` is expected: `sup |mu| <= 1` and `r <= 1/3`.
    pub domination_applies: bool,
    pub domination_holds: bool,
    pub pass: bool,
}

pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive_simpson(&f, a, b, fa, fm, fb, whole, tol, 48)
}

/// `M(g)(r) = int_0^r M(g')(t) dt`, and `M(g) <= M(h) - |a_0|` when it applies.
pub fn mg_integral_identity_check(pair: &HarmonicPair, r: f64) -> Result<IntegralReport, BohrError> {
    if !(0.0..1.0).contains(&r) {
        return Err(BohrError::Domain {
            what: "r",
            value: r,
        });
    }
    let dg = pair.g.differentiate();
    let quadrature = integrate_adaptive(
        |t| bohr::bohr_operator(&dg, t, 0).unwrap_or(f64::NAN),
        0.0,
        r,
        QUADRATURE_TOLERANCE,
    );
    let closed_form = bohr::bohr_operator(&pair.g, r, 1)?;
    let majorant_h = bohr::bohr_operator(&pair.h, r, 1)?;
    let abs_error = (quadrature - closed_form).abs();
    let domination_applies = pair.mu_sup_disk <= 1.0 + 1e-12 && r <= 1.0 / 3.0;
    let domination_holds = closed_form <= majorant_h * (1.0 + 1e-12);
    Ok(IntegralReport {
        quadrature,
        closed_form,
        abs_error,
        majorant_h,
        domination_applies,
        domination_holds,
        pass: abs_error <= 1e-9 * closed_form.max(1.0) && (!domination_applies || domination_holds),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_large_function, SchwarzFunction};
    use crate::modular::CoveringParameter;
    use std::f64::consts::PI;

    fn c(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    fn standard_spec() -> LargeFunctionSpec {
        let alpha = CoveringParameter::new(PI).unwrap();
        make_large_function(c(0.0), c(1.0), alpha, SchwarzFunction::identity(), 64).unwrap()
    }

    #[test]
    fn zero_dilatation() {
        let spec = standard_spec();
        let pair = build_pair(spec.series(), &TruncatedSeries::zero(64), 64);
        assert_eq!(pair.g, TruncatedSeries::zero(64));
        let r = modular::e_minus_pi();
        let rep = harmonic_bohr_check(&pair, &spec, r, bohr::BASE_SLACK).unwrap();
        let thm = bohr::main_theorem_check(&spec, r, bohr::BASE_SLACK).unwrap();
        assert_eq!(rep.lhs, thm.lhs);
        assert_eq!(rep.rhs, thm.rhs);
        assert_eq!(rep.pass, thm.pass);
    }

    #[test]
    fn constant_dilatation_scales_h() {
        let spec = standard_spec();
        let k = Complex::new(0.3, -0.4);
        let pair = build_pair(spec.series(), &TruncatedSeries::constant(k, 0), 64);
        let want = pair.h_centered().scale(k);
        let scale = pair.h.coeffs().iter().map(|a| a.norm()).fold(0.0, f64::max);
        assert!(pair.g.max_abs_diff(&want) < 1e-15 * scale);
        let r = modular::e_minus_pi();
        let rep = harmonic_bohr_check(&pair, &spec, r, bohr::BASE_SLACK).unwrap();
        assert!((rep.majorant_g - 0.5 * rep.majorant_h).abs() < 1e-15);
        assert!((rep.mu_sup - 0.5).abs() < 1e-15);
        assert!(rep.pass);
    }

    #[test]
    fn monomial_dilatation_coefficients() {
        let spec = standard_spec();
        let pair = build_pair(spec.series(), &TruncatedSeries::identity(1), 64);
        let h = &pair.h;
        for n in 2..=64 {
            let want = h.coeff(n - 1) * ((n - 1) as f64 / n as f64);
            assert!((pair.g.coeff(n) - want).norm() < 1e-14 * want.norm().max(1.0));
        }
        assert_eq!(pair.g.coeff(0), c(0.0));
        assert_eq!(pair.g.coeff(1), c(0.0));
    }

    #[test]
    fn rejects_radius_beyond_bound() {
        let spec = standard_spec();
        let pair = build_pair(spec.series(), &TruncatedSeries::zero(0), 64);
        assert!(matches!(
            harmonic_bohr_check(&pair, &spec, 0.05, bohr::BASE_SLACK),
            Err(BohrError::HypothesisViolation(_))
        ));
    }

    #[test]
    fn integral_identity_examples() {
        let h = TruncatedSeries::from_real(&[0.0, 1.0]).unwrap();
        // g = z^2 arises from mu = 2z, h = z
        let pair = build_pair(&h, &TruncatedSeries::from_real(&[0.0, 2.0]).unwrap(), 4);
        assert!(pair.g.max_abs_diff(&TruncatedSeries::from_real(&[0.0, 0.0, 1.0]).unwrap()) < 1e-16);
        let rep = mg_integral_identity_check(&pair, 0.3).unwrap();
        assert!((rep.quadrature - 0.09).abs() < 1e-12);
        assert!(!rep.domination_applies);
        assert!(rep.pass);

        // g = z + z^3 from h = z + z^3, mu = 1
        let h = TruncatedSeries::from_real(&[0.0, 1.0, 0.0, 1.0]).unwrap();
        let pair = build_pair(&h, &TruncatedSeries::one(0), 3);
        let rep = mg_integral_identity_check(&pair, 0.2).unwrap();
        assert!((rep.quadrature - 0.208).abs() < 1e-12);
        assert!((rep.closed_form - 0.208).abs() < 1e-15);
        assert!(rep.domination_applies && rep.domination_holds);
    }
}
