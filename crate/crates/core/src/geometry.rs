//! Hyperbolic density of covering maps and distances to the boundary of an
//! image domain.
//!
//! For a cover `G` of a hyperbolic domain `D` the density at `w = G(z)` is
//! `1 / (|G'(z)| (1 - |z|^2))`, independent of which preimage `z` is used.
//! Comparison with the largest disk about `w` inside `D` gives
//! `lambda(w) d(w, ∂D) <= 1`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::generators::{GeneratorError, LargeFunctionSpec};
use crate::modular::{self, CoveringParameter, ModularError};
use crate::series::Complex;

/// Nodes per circle when sampling an image boundary.
pub const CIRCLE_NODES: usize = 4096;
/// Refinement levels `k` for circles `|z| = 1 - 2^{-k}`.
pub const SAMPLING_LEVELS: std::ops::RangeInclusive<u32> = 4..=14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point {0} is not inside the unit disk")]
    OutsideDisk(Complex),
    #[error("|G'(z)| = {0} is too small to define a density")]
    SingularDerivative(f64),
    #[error("omitted points coincide")]
    DegenerateSpec,
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
}

/// A covering map of the unit disk onto a hyperbolic domain.
pub trait Cover: Sync {
    fn value(&self, z: Complex) -> Result<Complex, GeometryError>;
    fn derivative(&self, z: Complex) -> Result<Complex, GeometryError>;
    /// Euclidean distance from `w` (in the target domain) to its boundary.
    fn boundary_distance_at(&self, w: Complex) -> f64;
}

/// The identity cover of the disk by itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct DiskIdentity;

impl Cover for DiskIdentity {
    fn value(&self, z: Complex) -> Result<Complex, GeometryError> {
        Ok(z)
    }

    fn derivative(&self, _z: Complex) -> Result<Complex, GeometryError> {
        Ok(Complex::new(1.0, 0.0))
    }

    fn boundary_distance_at(&self, w: Complex) -> f64 {
        (1.0 - w.norm()).max(0.0)
    }
}

/// `a + (b - a) Q_alpha(z)`, the universal cover of `C \ {a, b}`.
#[derive(Clone, Copy, Debug)]
pub struct PuncturedPlaneCover {
    pub a: Complex,
    pub b: Complex,
    pub alpha: CoveringParameter,
}

impl PuncturedPlaneCover {
    /// `Q_alpha` itself, covering `C \ {0, 1}`.
    pub fn standard(alpha: CoveringParameter) -> Self {
        Self {
            a: Complex::new(0.0, 0.0),
            b: Complex::new(1.0, 0.0),
            alpha,
        }
    }
}

impl Cover for PuncturedPlaneCover {
    fn value(&self, z: Complex) -> Result<Complex, GeometryError> {
        Ok(self.a + (self.b - self.a) * modular::q_eval(self.alpha, z)?)
    }

    fn derivative(&self, z: Complex) -> Result<Complex, GeometryError> {
        let (_, dq) = modular::q_eval_with_derivative(self.alpha, z)?;
        Ok((self.b - self.a) * dq)
    }

    fn boundary_distance_at(&self, w: Complex) -> f64 {
        (w - self.a).norm().min((w - self.b).norm())
    }
}

/// `G(e^{i theta} z)`: the same cover precomposed with a rotation.
#[derive(Clone, Copy, Debug)]
pub struct Rotated<C> {
    pub inner: C,
    pub theta: f64,
}

impl<C: Cover> Cover for Rotated<C> {
    fn value(&self, z: Complex) -> Result<Complex, GeometryError> {
        self.inner.value(z * Complex::from_polar(1.0, self.theta))
    }

    fn derivative(&self, z: Complex) -> Result<Complex, GeometryError> {
        let u = Complex::from_polar(1.0, self.theta);
        Ok(self.inner.derivative(z * u)? * u)
    }

    fn boundary_distance_at(&self, w: Complex) -> f64 {
        self.inner.boundary_distance_at(w)
    }
}

/// `lambda(G(z)) = 1 / (|G'(z)| (1 - |z|^2))`.
pub fn hyperbolic_density<C: Cover + ?Sized>(cover: &C, z: Complex) -> Result<f64, GeometryError> {
    if z.norm() >= 1.0 {
        return Err(GeometryError::OutsideDisk(z));
    }
    let d = cover.derivative(z)?.norm();
    if !(d >= 1e-300) {
        return Err(GeometryError::SingularDerivative(d));
    }
    Ok(1.0 / (d * (1.0 - z.norm_sqr())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    OmittedPointsExact,
    CircleSampling,
}

/// Estimate of `d(F(0), ∂F(U))`: the true distance lies in
/// `[value - error, value]` up to sampling resolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistanceEstimate {
    pub value: f64,
    pub error: f64,
    pub method: DistanceMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelSample {
    pub level: u32,
    pub radius: f64,
    /// `min |F(z) - F(0)|` over the sampled circle.
    pub min_distance: f64,
}

/// Minimum distance from `F(0)` to `F` on each circle `|z| = 1 - 2^{-k}`.
///
/// The image of the open disk of radius `rho` contains the disk about
/// `F(0)` whose radius is this minimum, so each level is a lower bound for
/// the true boundary distance.
pub fn circle_sampling_levels(
    spec: &LargeFunctionSpec,
    nodes: usize,
) -> Result<Vec<LevelSample>, GeometryError> {
    let f0 = spec.f0();
    SAMPLING_LEVELS
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|level| {
            let radius = 1.0 - 0.5f64.powi(level as i32);
            let mut min_distance = f64::INFINITY;
            for j in 0..nodes {
                let z = Complex::from_polar(radius, 2.0 * PI * j as f64 / nodes as f64);
                min_distance = min_distance.min((spec.eval(z)? - f0).norm());
            }
            Ok(LevelSample {
                level,
                radius,
                min_distance,
            })
        })
        .collect()
}

/// Spread of the last three levels ending at each level (from the third on).
pub fn level_errors(levels: &[LevelSample]) -> Vec<f64> {
    levels
        .windows(3)
        .map(|w| {
            let (lo, hi) = w.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
                (lo.min(s.min_distance), hi.max(s.min_distance))
            });
            hi - lo
        })
        .collect()
}

/// `d(F(0), ∂F(U))` for a large-function spec.
///
/// When the Schwarz factor is onto the disk the image is all of
/// `C \ {a, b}` and the distance is exact. Otherwise it is estimated by
/// circle sampling, capped by the omitted-point distance.
pub fn boundary_distance(spec: &LargeFunctionSpec) -> Result<DistanceEstimate, GeometryError> {
    if spec.a() == spec.b() {
        return Err(GeometryError::DegenerateSpec);
    }
    let f0 = spec.f0();
    let omitted = (f0 - spec.a()).norm().min((f0 - spec.b()).norm());
    if spec.distance_certified() {
        return Ok(DistanceEstimate {
            value: omitted,
            error: 0.0,
            method: DistanceMethod::OmittedPointsExact,
        });
    }
    let levels = circle_sampling_levels(spec, CIRCLE_NODES)?;
    let finest = levels.last().map_or(f64::INFINITY, |l| l.min_distance);
    let error = level_errors(&levels).last().copied().unwrap_or(0.0);
    Ok(DistanceEstimate {
        value: omitted.min(finest),
        error,
        method: DistanceMethod::CircleSampling,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityPoint {
    pub z: Complex,
    pub w: Complex,
    pub density: f64,
    pub distance: f64,
    pub product: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub points: Vec<DensityPoint>,
    pub max_product: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks `lambda(w) d(w, ∂D) <= 1 + tolerance` at `w = G(z)` for each sample `z`.
pub fn density_distance_check<C: Cover>(
    cover: &C,
    points: &[Complex],
    tolerance: f64,
) -> Result<DensityReport, GeometryError> {
    let points = points
        .par_iter()
        .map(|&z| {
            let density = hyperbolic_density(cover, z)?;
            let w = cover.value(z)?;
            let distance = cover.boundary_distance_at(w);
            Ok(DensityPoint {
                z,
                w,
                density,
                distance,
                product: density * distance,
            })
        })
        .collect::<Result<Vec<_>, GeometryError>>()?;
    let max_product = points.iter().map(|p| p.product).fold(f64::NEG_INFINITY, f64::max);
    Ok(DensityReport {
        pass: points.iter().all(|p| p.product <= 1.0 + tolerance),
        points,
        max_product,
        tolerance,
    })
}
