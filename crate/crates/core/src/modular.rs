//! The modular function `J(z) = 16 z prod_{n>=1} ((1+z^{2n})/(1+z^{2n-1}))^8`
//! on the unit disk (the elliptic lambda function in the nome), its series
//! coefficients, and the covering map `Q(z) = J(exp(-alpha (1+z)/(1-z)))`
//! of the twice-punctured plane `C \ {0, 1}`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::series::{Complex, IntegerSeries, SeriesError, TruncatedSeries};

/// Largest degree for which the integer oracle is trusted to stay in `i64`.
pub const EXACT_MAX_ORDER: usize = 20;

/// Product factors are included while `|z|^{2n-1}` exceeds this.
const PRODUCT_CUTOFF: f64 = 1e-18;

/// Quadrature nodes for recentring `J` around `exp(-alpha)`.
pub const RECENTRE_NODES: usize = 2048;

/// Minimum quadrature nodes and candidate radii for [`q_series`].
pub const Q_SERIES_NODES: usize = 2048;
const Q_SERIES_RADII: [f64; 4] = [0.5, 0.6, 0.7, 0.8];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModularError {
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("A_{index} = {value} is not positive")]
    NonPositiveCoefficient { index: usize, value: f64 },
    #[error("A_{index}: exact value {exact} disagrees with floating value {float}")]
    RouteMismatch { index: usize, exact: i64, float: f64 },
    #[error("exact coefficients requested to degree {0}, above the i64 cap of {EXACT_MAX_ORDER}")]
    ExactOrderTooLarge(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub fn e_minus_pi() -> f64 {
    (-PI).exp()
}

/// The coefficients `A_n` in `-J(-z) = 16 z sum A_n z^n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModularCoefficients {
    exact: Vec<i64>,
    float: Vec<f64>,
}

impl ModularCoefficients {
    pub fn exact(&self) -> &[i64] {
        &self.exact
    }

    pub fn float(&self) -> &[f64] {
        &self.float
    }

    pub fn order(&self) -> usize {
        self.float.len() - 1
    }

    /// Degree-`k` coefficient of the majorant `-J(-z)`, i.e. `16 A_{k-1}` (zero for `k = 0`).
    pub fn majorant_coeff(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            16.0 * self.float[k - 1]
        }
    }
}

/// Covering parameter `alpha > 0` of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoveringParameter(f64);

impl CoveringParameter {
    pub fn new(alpha: f64) -> Result<Self, ModularError> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Self(alpha))
        } else {
            Err(ModularError::Domain {
                what: "alpha",
                value: alpha,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Base point `exp(-alpha)` of the nome disk, `Q(0) = J(exp(-alpha))`.
    pub fn nome(self) -> f64 {
        (-self.0).exp()
    }
}

/// `A_0..A_order` in floating point, from the positive product
/// `prod ((1+z^{2n})/(1-z^{2n-1}))^8`.
///
/// Substituting `-z` turns every factor into one with nonnegative
/// coefficients, so no cancellation occurs.
fn majorant_product(order: usize) -> Vec<f64> {
    let mut p = vec![0.0; order + 1];
    p[0] = 1.0;
    let mut n = 1;
    while 2 * n - 1 <= order {
        let odd = 2 * n - 1;
        let even = 2 * n;
        for _ in 0..8 {
            // multiply by 1/(1 - z^odd)
            for i in odd..=order {
                p[i] += p[i - odd];
            }
            // multiply by 1 + z^even
            if even <= order {
                for i in (even..=order).rev() {
                    p[i] += p[i - even];
                }
            }
        }
        n += 1;
    }
    p
}

/// Series of `J` through degree `order` (at least 1).
pub fn j_series(order: usize) -> TruncatedSeries {
    let order = order.max(1);
    let a = majorant_product(order - 1);
    let mut coeffs = vec![Complex::new(0.0, 0.0); order + 1];
    for (n, &an) in a.iter().enumerate() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[n + 1] = Complex::new(16.0 * sign * an, 0.0);
    }
    TruncatedSeries::from_vec(coeffs).with_label("J")
}

/// Integer expansion of `J` straight from the signed product, with overflow checks.
pub fn j_series_exact(order: usize) -> Result<IntegerSeries, ModularError> {
    let order = order.max(1);
    if order > EXACT_MAX_ORDER + 1 {
        return Err(ModularError::ExactOrderTooLarge(order));
    }
    let inner = order - 1;
    let mut prod = IntegerSeries::one(inner);
    let mut n = 1;
    while 2 * n - 1 <= inner {
        let mut num = vec![0i64; inner + 1];
        num[0] = 1;
        if 2 * n <= inner {
            num[2 * n] += 1;
        }
        let mut den = vec![0i64; inner + 1];
        den[0] = 1;
        den[2 * n - 1] = 1;
        let num = IntegerSeries::new(num)?;
        let den = IntegerSeries::new(den)?;
        let factor = num.mul(&den.reciprocal_unit(inner)?, inner)?;
        prod = prod.mul(&factor.pow(8, inner)?, inner)?;
        n += 1;
    }
    let mut coeffs = vec![0i64; order + 1];
    for (k, &c) in prod.coeffs().iter().enumerate() {
        coeffs[k + 1] = c
            .checked_mul(16)
            .ok_or(SeriesError::Overflow { degree: k + 1 })?;
    }
    Ok(IntegerSeries::new(coeffs)?)
}

/// `A_0..A_order`: floating values for all `n`, exact integers for
/// `n <= min(order, 20)`, cross-checked against each other.
pub fn a_coeffs(order: usize) -> Result<ModularCoefficients, ModularError> {
    let float = majorant_product(order);
    let m = order.min(EXACT_MAX_ORDER);
    let j = j_series_exact(m + 1)?;
    let exact: Vec<i64> = (0..=m)
        .map(|n| {
            let c = j.coeff(n + 1) / 16;
            if n % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    for (n, &an) in float.iter().enumerate() {
        if an <= 0.0 {
            return Err(ModularError::NonPositiveCoefficient { index: n, value: an });
        }
    }
    for (n, &e) in exact.iter().enumerate() {
        if e as f64 != float[n] {
            return Err(ModularError::RouteMismatch {
                index: n,
                exact: e,
                float: float[n],
            });
        }
    }
    Ok(ModularCoefficients { exact, float })
}

fn check_disk(z: Complex) -> Result<(), ModularError> {
    let r = z.norm();
    if r < 1.0 {
        Ok(())
    } else {
        Err(ModularError::Domain {
            what: "|z|",
            value: r,
        })
    }
}

// prod_{n} (1+z^{2n})/(1+z^{2n-1}) and the log-derivative sum
// sum_n [2n z^{2n-1}/(1+z^{2n}) - (2n-1) z^{2n-2}/(1+z^{2n-1})].
fn product_parts(z: Complex, with_derivative: bool) -> (Complex, Complex) {
    let one = Complex::new(1.0, 0.0);
    let r = z.norm();
    let mut prod = one;
    let mut dsum = Complex::new(0.0, 0.0);
    let mut odd_pow = z; // z^{2n-1}
    let mut prev_even = one; // z^{2n-2}
    let mut n = 1usize;
    let mut rpow = r;
    while rpow > PRODUCT_CUTOFF || (with_derivative && n == 1) {
        let even_pow = odd_pow * z;
        prod *= (one + even_pow) / (one + odd_pow);
        if with_derivative {
            let k = 2.0 * n as f64;
            dsum += odd_pow * k / (one + even_pow) - prev_even * (k - 1.0) / (one + odd_pow);
        }
        prev_even = even_pow;
        odd_pow = even_pow * z;
        rpow *= r * r;
        n += 1;
    }
    if with_derivative {
        // remaining derivative terms decay like n r^{2n-2}
        let mut tail_scale = (n as f64) * prev_even.norm();
        while tail_scale > PRODUCT_CUTOFF * 1e-2 {
            let even_pow = odd_pow * z;
            let k = 2.0 * n as f64;
            dsum += odd_pow * k / (one + even_pow) - prev_even * (k - 1.0) / (one + odd_pow);
            prev_even = even_pow;
            odd_pow = even_pow * z;
            n += 1;
            tail_scale = (n as f64) * prev_even.norm();
        }
    }
    (prod, dsum)
}

/// `J(z)` from the product form; `|z| < 1`.
pub fn j_eval(z: Complex) -> Result<Complex, ModularError> {
    check_disk(z)?;
    Ok(j_unchecked(z))
}

pub(crate) fn j_unchecked(z: Complex) -> Complex {
    let (p, _) = product_parts(z, false);
    z * p.powi(8) * 16.0
}

/// `(J(z), J'(z))`, using `J' = 16 P^8 (1 + 8 z S)` with `S` the log-derivative sum.
pub fn j_eval_with_derivative(z: Complex) -> Result<(Complex, Complex), ModularError> {
    check_disk(z)?;
    let (p, s) = product_parts(z, true);
    let p8 = p.powi(8) * 16.0;
    Ok((z * p8, p8 * (Complex::new(1.0, 0.0) + z * s * 8.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaxModulus {
    pub max_sampled: f64,
    pub argmax_angle: f64,
}

/// Largest `|J|` over `samples` equally spaced points of the circle `|z| = r`.
pub fn j_max_modulus(r: f64, samples: usize) -> Result<MaxModulus, ModularError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(ModularError::Domain {
            what: "radius",
            value: r,
        });
    }
    if samples < 64 {
        return Err(ModularError::Domain {
            what: "samples",
            value: samples as f64,
        });
    }
    let mut best = MaxModulus {
        max_sampled: f64::NEG_INFINITY,
        argmax_angle: 0.0,
    };
    for k in 0..samples {
        let theta = 2.0 * PI * k as f64 / samples as f64;
        let v = j_unchecked(Complex::from_polar(r, theta)).norm();
        if v > best.max_sampled {
            best = MaxModulus {
                max_sampled: v,
                argmax_angle: theta,
            };
        }
    }
    Ok(best)
}

fn cayley_nome(alpha: CoveringParameter, z: Complex) -> Complex {
    let one = Complex::new(1.0, 0.0);
    (-(one + z) / (one - z) * alpha.value()).exp()
}

/// Whether `Q_alpha` is certified univalent on `|z| < s`.
///
/// `Q_alpha(z) = lambda(tau)` with `q = e^{i pi tau}` and
/// `tau = i alpha (1+z) / (pi (1-z))`. The disk `|z| < s` goes to the disk
/// centred at `i m (1+s^2)/(1-s^2)` of radius `2 m s/(1-s^2)`, `m = alpha/pi`;
/// `lambda` is injective on it if it lies inside the open fundamental domain
/// `|Re tau| < 1, |tau -+ 1/2| > 1/2` of its invariance group.
pub fn q_disk_certified_univalent(alpha: CoveringParameter, s: f64) -> bool {
    if !(0.0..1.0).contains(&s) {
        return false;
    }
    let m = alpha.value() / PI;
    let centre = m * (1.0 + s * s) / (1.0 - s * s);
    let radius = m * 2.0 * s / (1.0 - s * s);
    radius < 1.0 && (0.25 + centre * centre).sqrt() > radius + 0.5
}

/// Largest `s` (to 2^-50) passing [`q_disk_certified_univalent`].
pub fn q_univalence_radius(alpha: CoveringParameter) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if q_disk_certified_univalent(alpha, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `Q(z) = J(exp(-alpha (1+z)/(1-z)))`.
pub fn q_eval(alpha: CoveringParameter, z: Complex) -> Result<Complex, ModularError> {
    check_disk(z)?;
    Ok(j_unchecked(cayley_nome(alpha, z)))
}

/// `(Q(z), Q'(z))`.
pub fn q_eval_with_derivative(
    alpha: CoveringParameter,
    z: Complex,
) -> Result<(Complex, Complex), ModularError> {
    check_disk(z)?;
    let one = Complex::new(1.0, 0.0);
    let w = cayley_nome(alpha, z);
    let (j, dj) = j_eval_with_derivative(w)?;
    let dw = w * (-2.0 * alpha.value()) / ((one - z) * (one - z));
    Ok((j, dj * dw))
}

/// Taylor coefficients of `J` about `w0` through degree `order`, by the
/// trapezoidal rule for Cauchy's integral on `|w - w0| = rho`.
pub fn recentred_j_coeffs(w0: f64, rho: f64, order: usize, nodes: usize) -> Vec<Complex> {
    let values: Vec<Complex> = (0..nodes)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / nodes as f64;
            j_unchecked(Complex::new(w0, 0.0) + Complex::from_polar(rho, theta))
        })
        .collect();
    (0..=order)
        .map(|k| {
            let mut acc = Complex::new(0.0, 0.0);
            for (j, &v) in values.iter().enumerate() {
                let angle = -2.0 * PI * ((j * k) % nodes) as f64 / nodes as f64;
                acc += v * Complex::from_polar(1.0, angle);
            }
            acc / (nodes as f64 * rho.powi(k as i32))
        })
        .collect()
}

/// Taylor coefficients of `Q` by circle quadrature of [`q_eval`].
///
/// Coefficient `k` carries rounding error about `eps M_R / R^k` where
/// `M_R = max_{|z|=R} |Q|`; each coefficient uses the candidate radius
/// minimising that. `Q` has real coefficients, so the quadrature's imaginary
/// residue is dropped.
pub fn q_series(alpha: CoveringParameter, order: usize) -> TruncatedSeries {
    let nodes = Q_SERIES_NODES.max((4 * (order + 1)).next_power_of_two());
    let circles: Vec<(f64, f64, Vec<Complex>)> = Q_SERIES_RADII
        .iter()
        .map(|&radius| {
            let values: Vec<Complex> = (0..nodes)
                .map(|j| {
                    let z = Complex::from_polar(radius, 2.0 * PI * j as f64 / nodes as f64);
                    j_unchecked(cayley_nome(alpha, z))
                })
                .collect();
            let m = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
            (radius, m, values)
        })
        .filter(|(_, m, _)| m.is_finite())
        .collect();
    let twiddle: Vec<Complex> = (0..nodes)
        .map(|j| Complex::from_polar(1.0, -2.0 * PI * j as f64 / nodes as f64))
        .collect();
    let coeffs = (0..=order)
        .map(|k| {
            let (radius, _, values) = circles
                .iter()
                .min_by(|a, b| {
                    let ea = a.1 / a.0.powi(k as i32);
                    let eb = b.1 / b.0.powi(k as i32);
                    ea.total_cmp(&eb)
                })
                .expect("Q is finite on |z| = 1/2");
            let acc: Complex = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * twiddle[(j * k) % nodes])
                .sum();
            Complex::new(acc.re / (nodes as f64 * radius.powi(k as i32)), 0.0)
        })
        .collect();
    TruncatedSeries::from_vec(coeffs).with_label(format!("Q[alpha={}]", alpha.value()))
}

/// `Q` by composing `J` recentred at `w0 = e^{-alpha}` with the shifted
/// exponential. Cancellation makes this lose about a digit per degree past
/// the first few; kept as an independent route for low-order checks.
pub fn q_series_recentred(alpha: CoveringParameter, order: usize) -> TruncatedSeries {
    let w0 = alpha.nome();
    let rho = (0.5 * (1.0 - w0)).min(0.5 * w0);
    let outer = TruncatedSeries::from_vec(recentred_j_coeffs(w0, rho, order, RECENTRE_NODES));
    let mut exponent = vec![Complex::new(-2.0 * alpha.value(), 0.0); order + 1];
    exponent[0] = Complex::new(-alpha.value(), 0.0);
    let mut shifted = TruncatedSeries::from_vec(exponent)
        .exp_series(order)
        .coeffs()
        .to_vec();
    shifted[0] = Complex::new(0.0, 0.0);
    let inner = TruncatedSeries::from_vec(shifted);
    outer
        .compose(&inner, order)
        .expect("inner constant cleared above")
        .with_label(format!("Q[alpha={}]", alpha.value()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CollisionPair {
    pub z1: [f64; 2],
    pub z2: [f64; 2],
    /// `|J(z1) - J(z2)|`
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub radius: f64,
    pub trials: usize,
    /// Smallest `|J(z1)-J(z2)| / |z1-z2|` seen.
    pub min_ratio: f64,
    /// Pairs with ratio below `1e-12`.
    pub collisions: Vec<CollisionPair>,
}

/// Relative collision threshold for the univalence probe.
pub const COLLISION_RATIO: f64 = 1e-12;

fn random_in_disk(rng: &mut ChaCha8Rng, r: f64) -> Complex {
    let rad = r * rng.gen::<f64>().sqrt();
    Complex::from_polar(rad, 2.0 * PI * rng.gen::<f64>())
}

/// Random-pair injectivity probe for `J` on `|z| <= r`.
///
/// Evidence, not proof: it reports the smallest difference quotient found.
pub fn univalence_probe(r: f64, trials: usize, seed: u64) -> Result<ProbeReport, ModularError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(ModularError::Domain {
            what: "radius",
            value: r,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_ratio = f64::INFINITY;
    let mut collisions = Vec::new();
    for _ in 0..trials {
        let z1 = random_in_disk(&mut rng, r);
        let z2 = random_in_disk(&mut rng, r);
        let dz = (z1 - z2).norm();
        if dz == 0.0 {
            continue;
        }
        let gap = (j_unchecked(z1) - j_unchecked(z2)).norm();
        let ratio = gap / dz;
        min_ratio = min_ratio.min(ratio);
        if ratio < COLLISION_RATIO {
            collisions.push(CollisionPair {
                z1: [z1.re, z1.im],
                z2: [z2.re, z2.im],
                gap,
            });
        }
    }
    Ok(ProbeReport {
        radius: r,
        trials,
        min_ratio,
        collisions,
    })
}

/// Searches for `z1 != z2` in `|z| <= r` with `J(z1) = J(z2)`.
///
/// For random `z1`, Newton's method is run on `J(z2) - J(z1)` from a random
/// start; a converged `z2` that stays in the disk and away from `z1` is a
/// witness that `J` is not injective there. Returns the first witness with
/// gap below `gap_tol`.
pub fn collision_search(
    r: f64,
    starts: usize,
    seed: u64,
    gap_tol: f64,
) -> Result<Option<CollisionPair>, ModularError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(ModularError::Domain {
            what: "radius",
            value: r,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..starts {
        let z1 = random_in_disk(&mut rng, r);
        let target = j_unchecked(z1);
        let mut z2 = random_in_disk(&mut rng, r);
        for _ in 0..80 {
            if z2.norm() >= 0.95 {
                break;
            }
            let (j, dj) = j_eval_with_derivative(z2)?;
            let residual = j - target;
            if residual.norm() < gap_tol * 1e-3 {
                break;
            }
            if dj.norm() == 0.0 {
                break;
            }
            z2 -= residual / dj;
        }
        if z2.norm() <= r && (z2 - z1).norm() > 1e-3 * r {
            let gap = (j_unchecked(z2) - target).norm();
            if gap < gap_tol {
                return Ok(Some(CollisionPair {
                    z1: [z1.re, z1.im],
                    z2: [z2.re, z2.im],
                    gap,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn leading_coefficients() {
        let j = j_series(1);
        assert_eq!(j.coeffs(), &[c(0.0), c(16.0)]);
        let j = j_series(3);
        assert_eq!(j.coeff(2), c(-128.0));
        assert_eq!(j.coeff(3), c(704.0));
    }

    #[test]
    fn exact_and_float_routes_agree() {
        let exact = j_series_exact(21).unwrap();
        let float = j_series(21);
        for k in 0..=21 {
            assert_eq!(float.coeff(k), c(exact.coeff(k) as f64), "degree {k}");
        }
        assert!(matches!(
            j_series_exact(40),
            Err(ModularError::ExactOrderTooLarge(40))
        ));
    }

    #[test]
    fn first_a_coefficients() {
        let a = a_coeffs(2).unwrap();
        assert_eq!(a.exact(), &[1, 8, 44]);
        assert_eq!(a.float(), &[1.0, 8.0, 44.0]);
        assert_eq!(a.majorant_coeff(1), 16.0);
        assert_eq!(a.majorant_coeff(3), 16.0 * 44.0);
        assert_eq!(a_coeffs(0).unwrap().exact(), &[1]);
    }

    #[test]
    fn even_factor_only_variant_keeps_leading_sixteen() {
        // 16 z prod (1+z^{2n})^8 with the odd denominators dropped
        let order = 12;
        let mut p = TruncatedSeries::one(order);
        for n in 1..=order / 2 {
            let f = TruncatedSeries::one(order)
                .add(&TruncatedSeries::monomial(c(1.0), 2 * n, order));
            p = p.mul(&f.pow(8, order), order);
        }
        let j = p.mul(&TruncatedSeries::monomial(c(16.0), 1, order), order);
        assert_eq!(j.coeff(1), c(16.0));
        assert_eq!(j.coeff(3), c(16.0 * 8.0));
    }

    #[test]
    fn special_values() {
        let q = e_minus_pi();
        assert_eq!(j_eval(c(0.0)).unwrap(), c(0.0));
        assert!((j_eval(c(q)).unwrap() - c(0.5)).norm() < 1e-12);
        let v = j_eval(c(-q)).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-12);
        assert!((v - c(-1.0)).norm() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(j_eval(c(1.0)), Err(ModularError::Domain { .. })));
        assert!(j_max_modulus(1.0, 128).is_err());
        assert!(j_max_modulus(0.1, 10).is_err());
        assert!(CoveringParameter::new(0.0).is_err());
        assert!(CoveringParameter::new(f64::NAN).is_err());
        let alpha = CoveringParameter::new(1.0).unwrap();
        assert!(q_eval(alpha, Complex::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn derivative_matches_series_and_differences() {
        let j = j_series(80);
        let dj = j.differentiate();
        for &z in &[c(0.0), c(0.1), Complex::new(-0.2, 0.15), Complex::new(0.05, -0.3)] {
            let (_, d) = j_eval_with_derivative(z).unwrap();
            assert!((d - dj.eval(z)).norm() < 1e-9 * d.norm().max(1.0), "z = {z}");
        }
        // central differences further out, where the series is slow
        let z = Complex::new(0.3, 0.55);
        let h = 1e-6;
        let fd = (j_eval(z + h).unwrap() - j_eval(z - h).unwrap()) / (2.0 * h);
        let (_, d) = j_eval_with_derivative(z).unwrap();
        assert!((fd - d).norm() < 1e-6 * d.norm());
    }

    #[test]
    fn max_modulus_examples() {
        let r = e_minus_pi();
        let m = j_max_modulus(r, 4096).unwrap();
        assert!((m.max_sampled - 1.0).abs() < 1e-10);
        assert!((m.argmax_angle - PI).abs() <= 2.0 * PI / 4096.0);

        // majorant series at r = 0.01, summed from the A_n oracle
        let a = a_coeffs(40).unwrap();
        let want: f64 = a
            .float()
            .iter()
            .enumerate()
            .map(|(n, an)| 16.0 * an * 0.01f64.powi(n as i32 + 1))
            .sum();
        let m1 = j_max_modulus(0.01, 1024).unwrap();
        assert!((m1.max_sampled - want).abs() < 1e-14);
        // 0.16 (1 + 0.08 + 0.0044 + ...); the two-term value 0.1728 is too small
        assert!((want - 0.1735359).abs() < 1e-6);
        assert!(j_max_modulus(0.02, 1024).unwrap().max_sampled > m1.max_sampled);
    }

    #[test]
    fn univalence_radius_of_covering_map() {
        let rho = q_univalence_radius(CoveringParameter::new(PI).unwrap());
        assert!(rho > 0.35 && rho < 0.45, "{rho}");
        for &a in &[0.2, 1.0, 2.0, 6.5, 20.0] {
            let alpha = CoveringParameter::new(a).unwrap();
            let rho = q_univalence_radius(alpha);
            assert!(rho > 0.0 && q_disk_certified_univalent(alpha, rho));
            assert!(!q_disk_certified_univalent(alpha, rho + 1e-9));
            if a < 1.0 {
                // 1 - Q is ~1e-20 here: values are indistinguishable in f64
                continue;
            }
            // no two sampled points of the certified disk share a value
            let mut rng = crate::generators::trial_rng(3, a.to_bits());
            let pts: Vec<Complex> = (0..200)
                .map(|_| crate::generators::random_in_disk(&mut rng, rho))
                .collect();
            let vals: Vec<Complex> = pts.iter().map(|&z| q_eval(alpha, z).unwrap()).collect();
            let (_, dq0) = q_eval_with_derivative(alpha, c(0.0)).unwrap();
            for i in 0..pts.len() {
                for j in 0..i {
                    let ratio = (vals[i] - vals[j]).norm() / (pts[i] - pts[j]).norm();
                    assert!(ratio > 1e-3 * dq0.norm(), "alpha {a}: {:?} {:?}", pts[i], pts[j]);
                }
            }
        }
        assert!(!q_disk_certified_univalent(CoveringParameter::new(1.0).unwrap(), 1.0));
    }

    #[test]
    fn covering_map_base_point() {
        let alpha = CoveringParameter::new(PI).unwrap();
        let q0 = q_eval(alpha, c(0.0)).unwrap();
        assert!((q0 - c(0.5)).norm() < 1e-12);
        for &a in &[0.5, 1.0, 2.0, PI, 6.0] {
            let alpha = CoveringParameter::new(a).unwrap();
            let q0 = q_eval(alpha, c(0.0)).unwrap();
            assert_eq!(q0, j_eval(c(alpha.nome())).unwrap());
            let s = q_series(alpha, 64);
            assert!((s.constant_term() - q0).norm() < 1e-10, "alpha = {a}");
        }
    }

    #[test]
    fn series_routes_agree_at_low_degree() {
        for &a in &[1.5, PI, 6.5] {
            let alpha = CoveringParameter::new(a).unwrap();
            let direct = q_series(alpha, 64);
            let recentred = q_series_recentred(alpha, 8);
            for k in 0..=6 {
                let d = direct.coeff(k);
                assert!((d - recentred.coeff(k)).norm() < 1e-8 * d.norm().max(1.0), "alpha {a}, k {k}");
            }
            for &z in &[c(0.2), Complex::new(-0.1, 0.25)] {
                let exact = q_eval(alpha, z).unwrap();
                assert!((direct.eval(z) - exact).norm() < 1e-12 * exact.norm().max(1.0));
            }
        }
    }

    #[test]
    fn q_derivative_matches_series() {
        for &a in &[1.5, PI, 5.0] {
            let alpha = CoveringParameter::new(a).unwrap();
            let s = q_series(alpha, 64);
            let (_, d0) = q_eval_with_derivative(alpha, c(0.0)).unwrap();
            assert!((s.coeff(1) - d0).norm() < 1e-10 * d0.norm(), "alpha = {a}");
        }
    }

    #[test]
    fn univalence_small_radius() {
        let rep = univalence_probe(0.01, 2000, 3).unwrap();
        assert!(rep.collisions.is_empty());
        // J is close to 16 z near 0
        assert!((rep.min_ratio - 16.0).abs() < 3.0);
    }

    #[test]
    fn collision_found_beyond_univalence_radius() {
        let pair = collision_search(0.35, 4000, 11, 1e-8).unwrap().expect("witness");
        let z1 = Complex::new(pair.z1[0], pair.z1[1]);
        let z2 = Complex::new(pair.z2[0], pair.z2[1]);
        assert!(z1.norm() <= 0.35 && z2.norm() <= 0.35);
        assert!((z1 - z2).norm() > 1e-3);
        assert!((j_eval(z1).unwrap() - j_eval(z2).unwrap()).norm() < 1e-8);
        // a witness needs one point outside the univalence disk
        assert!(z1.norm().max(z2.norm()) > (-PI / 2.0).exp());
    }

    #[test]
    fn collision_search_finds_nothing_inside_univalence_disk() {
        let r = 0.9 * (-PI / 2.0).exp();
        assert_eq!(collision_search(r, 300, 5, 1e-8).unwrap(), None);
    }
}
