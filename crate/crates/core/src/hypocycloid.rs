//! Hypocycloids and the image of the critical circle of
//! `Q(z) = b z^k + conj(z)^k + b conj(z) + z`.
//!
//! On `|z| = A` with `A = (1/k^2)^(1/(2k-2))` the image is
//!
//! ```text
//! X(t) = (b+1) (A_k cos kt + A cos t)
//! Y(t) = (b-1) (A_k sin kt - A sin t),    A_k = A^k = A / k
//! ```
//!
//! which is the x-coordinate of the `(k+1, k)` hypocycloid with
//! `R = (b+1) A (k+1)/k`, `r = (b+1) A` at `phi = k t`, and its y-coordinate
//! scaled by `(b-1)/(b+1)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use crate::critical::critical_radius;
use crate::curve::CurveSamples;
use crate::error::{Error, Result};
use crate::harmonic::{ComplexPoint, QuadrinomialParams};

/// Largest denominator considered by [`classify_pq`].
pub const MAX_DENOMINATOR: u64 = 1_000_000;
/// Absolute tolerance on `|R/r - p/q|`.
pub const RATIO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypocycloidSpec {
    pub outer_radius: f64,
    pub rolling_radius: f64,
    pub p: u64,
    pub q: u64,
}

impl HypocycloidSpec {
    pub fn new(outer_radius: f64, rolling_radius: f64) -> Result<Self> {
        let (p, q) = classify_pq(outer_radius, rolling_radius)?;
        Ok(Self {
            outer_radius,
            rolling_radius,
            p,
            q,
        })
    }

    pub fn point(&self, phi: f64) -> ComplexPoint {
        raw_point(self.outer_radius, self.rolling_radius, phi)
    }

    pub fn cusp_count(&self) -> u64 {
        self.p
    }

    /// `[0, 2 pi q]` traces the closed curve once.
    pub fn trace_range(&self) -> (f64, f64) {
        (0.0, TAU * self.q as f64)
    }
}

fn raw_point(outer: f64, rolling: f64, phi: f64) -> ComplexPoint {
    let arm = outer - rolling;
    let spin = arm / rolling * phi;
    Complex64::new(
        arm * phi.cos() + rolling * spin.cos(),
        arm * phi.sin() - rolling * spin.sin(),
    )
}

fn check_radii(outer: f64, rolling: f64) -> Result<()> {
    if !(rolling > 0.0 && outer > rolling && outer.is_finite()) {
        return Err(Error::InvalidRadii { outer, rolling });
    }
    Ok(())
}

/// Point of the hypocycloid traced by a circle of radius `rolling` inside
/// one of radius `outer`.
pub fn hypocycloid_point(outer: f64, rolling: f64, phi: f64) -> Result<ComplexPoint> {
    check_radii(outer, rolling)?;
    Ok(raw_point(outer, rolling, phi))
}

/// Reduced `(p, q)` with `R/r = p/q`.
///
/// Walks the continued-fraction convergents of `R/r`. Denominators are
/// capped at `1/sqrt(tol)` as well: past that point every real number has a
/// convergent within `tol`, so a hit says nothing about closure.
pub fn classify_pq(outer: f64, rolling: f64) -> Result<(u64, u64)> {
    check_radii(outer, rolling)?;
    let ratio = outer / rolling;
    let tol = RATIO_TOL;
    let max_denominator = MAX_DENOMINATOR.min(RATIO_TOL.sqrt().recip() as u64);

    let (mut p_prev, mut q_prev) = (1u64, 0u64);
    let (mut p, mut q) = (ratio.floor() as u64, 1u64);
    let mut rest = ratio - ratio.floor();
    loop {
        if (ratio - p as f64 / q as f64).abs() <= tol {
            let reduced = Ratio::new(p, q);
            return Ok((*reduced.numer(), *reduced.denom()));
        }
        if rest <= f64::EPSILON {
            break;
        }
        let inverse = rest.recip();
        let term = inverse.floor();
        rest = inverse - term;
        let term = term as u64;
        let next_q = term.saturating_mul(q).saturating_add(q_prev);
        if next_q > max_denominator {
            break;
        }
        let next_p = term.saturating_mul(p).saturating_add(p_prev);
        (p_prev, q_prev, p, q) = (p, q, next_p, next_q);
    }
    Err(Error::IrrationalRatio(ratio))
}

/// Closed-form model of the critical-circle image for the symmetric member
/// with parameter `b` and degree `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageModel {
    pub b: f64,
    pub k: u32,
    /// Critical radius `(1/k^2)^(1/(2k-2))`.
    pub a: f64,
    /// `A^k`, equal to `A / k`.
    pub a_k: f64,
    /// `(b - 1) / (b + 1)`.
    pub lambda: f64,
}

impl ImageModel {
    pub fn new(b: f64, k: u32) -> Result<Self> {
        let params = QuadrinomialParams::symmetric(b, k)?;
        let a = critical_radius(&params)?.radius;
        Ok(Self {
            b,
            k,
            a,
            a_k: a / k as f64,
            lambda: (b - 1.0) / (b + 1.0),
        })
    }

    pub fn from_params(params: &QuadrinomialParams) -> Result<Self> {
        require_symmetric(params)?;
        Self::new(params.b(), params.k())
    }

    /// `R = (b+1) A (k+1)/k`.
    pub fn outer_radius(&self) -> f64 {
        (self.b + 1.0) * self.a * (self.k as f64 + 1.0) / self.k as f64
    }

    /// `r = (b+1) A`.
    pub fn rolling_radius(&self) -> f64 {
        (self.b + 1.0) * self.a
    }

    /// Exact `R/r = (k+1)/k`.
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.k as u64 + 1, self.k as u64)
    }

    pub fn hypocycloid(&self) -> HypocycloidSpec {
        HypocycloidSpec {
            outer_radius: self.outer_radius(),
            rolling_radius: self.rolling_radius(),
            p: *self.ratio().numer(),
            q: *self.ratio().denom(),
        }
    }

    /// Bound on the curve modulus, `(b+1)(A + A_k)`; also the speed scale.
    pub fn scale(&self) -> f64 {
        (self.b + 1.0) * (self.a + self.a_k)
    }

    pub fn point(&self, theta: f64) -> ComplexPoint {
        let kt = self.k as f64 * theta;
        Complex64::new(
            (self.b + 1.0) * (self.a_k * kt.cos() + self.a * theta.cos()),
            (self.b - 1.0) * (self.a_k * kt.sin() - self.a * theta.sin()),
        )
    }

    /// `(dX/dt, dY/dt)`.
    pub fn velocity(&self, theta: f64) -> Complex64 {
        let kt = self.k as f64 * theta;
        Complex64::new(
            -(self.b + 1.0) * self.a * (kt.sin() + theta.sin()),
            (self.b - 1.0) * self.a * (kt.cos() - theta.cos()),
        )
    }

    pub fn speed(&self, theta: f64) -> f64 {
        self.velocity(theta).norm()
    }

    pub fn sample(&self, count: usize) -> CurveSamples {
        CurveSamples::uniform(count, |theta| self.point(theta))
    }
}

/// Free-function form of [`ImageModel::point`].
pub fn image_model_point(model: &ImageModel, theta: f64) -> ComplexPoint {
    model.point(theta)
}

fn require_symmetric(params: &QuadrinomialParams) -> Result<()> {
    if params.is_symmetric() {
        return Ok(());
    }
    Err(Error::SubfamilyRequired(format!(
        "got b = {}, c = {}, k = {}, n = {}, m = {}",
        params.b(),
        params.c(),
        params.k(),
        params.n(),
        params.m()
    )))
}

/// `Q(M e^(i theta_j))` at `count` uniform angles.
pub fn image_direct(params: &QuadrinomialParams, count: usize) -> Result<CurveSamples> {
    require_symmetric(params)?;
    if count < 3 {
        return Err(Error::TooFewSamples {
            required: 3,
            given: count,
        });
    }
    let radius = critical_radius(params)?.radius;
    let poly = params.polynomial();
    Ok(CurveSamples::uniform(count, |theta| {
        poly.eval(Complex64::from_polar(radius, theta))
    }))
}

/// `2 pi j / (k+1)`, `j = 0..=k`.
pub fn cusp_parameters(k: u32) -> Vec<f64> {
    let p = k as f64 + 1.0;
    (0..=k).map(|j| TAU * j as f64 / p).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CuspReport {
    pub cusp_parameters: Vec<f64>,
    pub cusp_count: usize,
    /// Largest model speed at a cusp parameter.
    pub max_cusp_speed: f64,
    /// Smallest model speed at the arc midpoints between cusps.
    pub min_midpoint_speed: f64,
    /// Smallest sampled speed away from `1e-3` neighbourhoods of the cusps.
    pub min_offcusp_speed: f64,
    pub scale: f64,
}

impl CuspReport {
    /// Speed vanishes at every cusp and is bounded away from zero between them.
    pub fn is_verified(&self) -> bool {
        self.max_cusp_speed <= 1e-9 * self.scale
            && self.min_midpoint_speed >= 1e-3 * self.scale
            && self.min_offcusp_speed > 0.0
    }
}

/// Checks the cusp parameters against the model speed.
pub fn cusp_report(model: &ImageModel) -> CuspReport {
    const OFFCUSP_SAMPLES: usize = 10_000;
    const NEIGHBOURHOOD: f64 = 1e-3;
    let cusps = cusp_parameters(model.k);
    let spacing = TAU / cusps.len() as f64;
    let max_cusp_speed = cusps.iter().map(|&t| model.speed(t)).fold(0.0, f64::max);
    let min_midpoint_speed = cusps
        .iter()
        .map(|&t| model.speed(t + 0.5 * spacing))
        .fold(f64::INFINITY, f64::min);
    let min_offcusp_speed = (0..OFFCUSP_SAMPLES)
        .map(|i| TAU * i as f64 / OFFCUSP_SAMPLES as f64)
        .filter(|t| {
            let offset = t.rem_euclid(spacing);
            offset.min(spacing - offset) > NEIGHBOURHOOD
        })
        .map(|t| model.speed(t))
        .fold(f64::INFINITY, f64::min);
    CuspReport {
        cusp_count: cusps.len(),
        cusp_parameters: cusps,
        max_cusp_speed,
        min_midpoint_speed,
        min_offcusp_speed,
        scale: model.scale(),
    }
}

/// Direct image against the model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    /// `max_j |Q(M e^(i t_j)) - model(t_j)|`.
    pub max_residual: f64,
    #[serde(rename = "R")]
    pub outer_radius: f64,
    #[serde(rename = "r")]
    pub rolling_radius: f64,
    pub p: u64,
    pub q: u64,
    pub lambda: f64,
    /// Sign of the `2/(b+1)` correction term in the y-coordinate written as
    /// hypocycloid y plus a correction; the direct image decides it.
    pub auxiliary_y_sign: i8,
}

impl FitReport {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.p, self.q)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fit report serializes")
    }
}

/// Hypocycloid y-coordinate plus `sign` times
/// `2 (R-r)/(b+1) sin phi - 2 r/(b+1) sin((R-r)/r phi)`.
pub fn corrected_y(model: &ImageModel, theta: f64, sign: f64) -> f64 {
    let (outer, rolling) = (model.outer_radius(), model.rolling_radius());
    let phi = model.k as f64 * theta;
    let spin = (outer - rolling) / rolling * phi;
    let base = raw_point(outer, rolling, phi).im;
    let correction = 2.0 * (outer - rolling) / (model.b + 1.0) * phi.sin()
        - 2.0 * rolling / (model.b + 1.0) * spin.sin();
    base + sign * correction
}

pub fn fit_report(params: &QuadrinomialParams, count: usize) -> Result<FitReport> {
    let model = ImageModel::from_params(params)?;
    let direct = image_direct(params, count)?;
    let mut max_residual = 0.0f64;
    let (mut plus, mut minus) = (0.0f64, 0.0f64);
    for sample in direct.iter() {
        max_residual = max_residual.max((sample.point - model.point(sample.theta)).norm());
        plus = plus.max((sample.point.im - corrected_y(&model, sample.theta, 1.0)).abs());
        minus = minus.max((sample.point.im - corrected_y(&model, sample.theta, -1.0)).abs());
    }
    let spec = model.hypocycloid();
    Ok(FitReport {
        max_residual,
        outer_radius: spec.outer_radius,
        rolling_radius: spec.rolling_radius,
        p: spec.p,
        q: spec.q,
        lambda: model.lambda,
        auxiliary_y_sign: if minus <= plus { -1 } else { 1 },
    })
}
