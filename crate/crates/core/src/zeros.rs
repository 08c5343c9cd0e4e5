//! Zeros of harmonic polynomials: Newton on the real 2x2 system, seeded
//! search over a disk, winding numbers, and argument-principle accounting
//! `winding = N+ - N-`.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::critical::critical_radius;
use crate::curve::CurveSamples;
use crate::error::{Error, Result};
use crate::export::{csv_table, format_number};
use crate::harmonic::{
    default_singular_tol, ComplexPoint, HarmonicPolynomial, OrientationClass, QuadrinomialParams,
};

/// Minimum number of contour samples accepted by [`winding_number`].
pub const MIN_CONTOUR_SAMPLES: usize = 64;
/// Contour closure tolerance.
pub const CLOSURE_TOL: f64 = 1e-12;
/// `|f|` on a contour must exceed this times the magnitude scale.
pub const CONTOUR_MODULUS_TOL: f64 = 1e-9;
const MAX_BISECTION_DEPTH: u32 = 20;

pub const DEFAULT_GRID_RESOLUTION: usize = 48;
pub const DEFAULT_MAX_ITER: usize = 100;
pub const DEFAULT_TOL: f64 = 1e-12;
/// Dedupe radius relative to the search disk.
pub const DEDUPE_REL_TOL: f64 = 1e-8;
const SINGULAR_DET_TOL: f64 = 1e-14;
const MAX_FALLBACKS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub location: ComplexPoint,
    pub orientation: OrientationClass,
    /// `|f(location)|`.
    pub residual: f64,
    /// 1 for a simple zero; 2 when the real Jacobian vanishes there.
    pub multiplicity_hint: u32,
}

impl ZeroRecord {
    fn at(poly: &HarmonicPolynomial, z: ComplexPoint) -> Self {
        let orientation = poly.orientation(z);
        Self {
            location: z,
            orientation,
            residual: poly.eval(z).norm(),
            multiplicity_hint: if orientation == OrientationClass::Singular {
                2
            } else {
                1
            },
        }
    }
}

/// CSV with header `re,im,class,residual`.
pub fn zeros_to_csv(zeros: &[ZeroRecord]) -> String {
    csv_table(
        "re,im,class,residual",
        zeros.iter().map(|z| {
            vec![
                format_number(z.location.re),
                format_number(z.location.im),
                z.orientation.code().to_string(),
                format_number(z.residual),
            ]
        }),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindingResult {
    pub value: i64,
    pub min_modulus_on_contour: f64,
}

fn principal_increment(from: Complex64, to: Complex64) -> f64 {
    // arg(to / from) in (-pi, pi]
    let ratio = to * from.conj();
    let angle = ratio.im.atan2(ratio.re);
    if angle == -PI {
        PI
    } else {
        angle
    }
}

struct Accumulator<'a> {
    poly: &'a HarmonicPolynomial,
    min_modulus: f64,
}

impl Accumulator<'_> {
    fn value(&mut self, z: Complex64) -> Complex64 {
        let w = self.poly.eval(z);
        self.min_modulus = self.min_modulus.min(w.norm());
        w
    }

    /// Argument change of `f` along the chord `a -> b`, splitting while an
    /// increment exceeds `pi/2`.
    fn segment(
        &mut self,
        a: Complex64,
        fa: Complex64,
        b: Complex64,
        fb: Complex64,
        depth: u32,
    ) -> f64 {
        let step = principal_increment(fa, fb);
        if step.abs() <= PI / 2.0 || depth >= MAX_BISECTION_DEPTH {
            return step;
        }
        let mid = (a + b) * 0.5;
        let fm = self.value(mid);
        self.segment(a, fa, mid, fm, depth + 1) + self.segment(mid, fm, b, fb, depth + 1)
    }
}

/// Winding number of `f` along the closed polygon through the samples.
///
/// The first and last samples must coincide; see [`CurveSamples::closed`].
pub fn winding_number(poly: &HarmonicPolynomial, contour: &CurveSamples) -> Result<WindingResult> {
    let points: Vec<Complex64> = contour.points().collect();
    if points.len() < MIN_CONTOUR_SAMPLES {
        return Err(Error::TooFewSamples {
            required: MIN_CONTOUR_SAMPLES,
            given: points.len(),
        });
    }
    let gap = (points[0] - points[points.len() - 1]).norm();
    if gap > CLOSURE_TOL {
        return Err(Error::NonClosedContour(gap));
    }
    let extent = points.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let floor = CONTOUR_MODULUS_TOL * poly.magnitude_scale(extent);

    let mut acc = Accumulator {
        poly,
        min_modulus: f64::INFINITY,
    };
    let mut previous = (points[0], acc.value(points[0]));
    let mut total = 0.0;
    for &z in &points[1..] {
        let fz = acc.value(z);
        if acc.min_modulus < floor {
            return Err(Error::ZeroOnContour {
                min_modulus: acc.min_modulus,
            });
        }
        total += acc.segment(previous.0, previous.1, z, fz, 0);
        previous = (z, fz);
    }
    if acc.min_modulus < floor {
        return Err(Error::ZeroOnContour {
            min_modulus: acc.min_modulus,
        });
    }
    Ok(WindingResult {
        value: (total / TAU).round() as i64,
        min_modulus_on_contour: acc.min_modulus,
    })
}

/// Winding number of the polygon itself about `point`.
fn encloses(contour: &CurveSamples, point: Complex64) -> bool {
    let pts: Vec<Complex64> = contour.points().map(|p| p - point).collect();
    if pts.iter().any(|p| p.norm() == 0.0) {
        return false;
    }
    let turns: f64 = pts
        .windows(2)
        .map(|w| principal_increment(w[0], w[1]))
        .sum();
    (turns / TAU).round() != 0.0
}

/// Outcome of one Newton run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonTrace {
    pub record: ZeroRecord,
    pub iterations: usize,
    /// Damped gradient steps taken where the real Jacobian was singular.
    pub fallback_steps: usize,
}

fn solve_2x2(m: [[f64; 2]; 2], rhs: [f64; 2]) -> [f64; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [
        (rhs[0] * m[1][1] - rhs[1] * m[0][1]) / det,
        (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det,
    ]
}

/// Backtracking descent on `|f|^2 / 2` along `-J^T (u, v)`.
fn gradient_step(
    poly: &HarmonicPolynomial,
    z: Complex64,
    f: Complex64,
    m: [[f64; 2]; 2],
) -> Complex64 {
    let grad = Complex64::new(
        m[0][0] * f.re + m[1][0] * f.im,
        m[0][1] * f.re + m[1][1] * f.im,
    );
    let energy = f.norm_sqr();
    let grad_norm = grad.norm_sqr();
    if grad_norm == 0.0 {
        // stationary point of |f|^2: nudge off it
        return z + Complex64::new(1e-6, 1e-6) * (1.0 + z.norm());
    }
    let mut alpha = energy / grad_norm;
    for _ in 0..40 {
        let candidate = z - grad * alpha;
        if poly.eval(candidate).norm_sqr() < energy {
            return candidate;
        }
        alpha *= 0.5;
    }
    z - grad * alpha
}

/// Newton iteration with its bookkeeping.
pub fn newton_refine_traced(
    poly: &HarmonicPolynomial,
    seed: ComplexPoint,
    max_iter: usize,
    tol: f64,
) -> Result<NewtonTrace> {
    if max_iter == 0 || tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "max_iter = {max_iter} must be >= 1 and tol = {tol} positive"
        )));
    }
    let mut z = seed;
    let mut fallback_steps = 0;
    for iteration in 1..=max_iter {
        let f = poly.eval(z);
        let d = poly.eval_derivatives(z);
        let m = d.real_matrix();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let next = if det.abs()
            < SINGULAR_DET_TOL * (1.0 + d.analytic.norm_sqr() + d.coanalytic.norm_sqr())
        {
            if fallback_steps == MAX_FALLBACKS {
                return Err(Error::SingularJacobian(fallback_steps));
            }
            fallback_steps += 1;
            gradient_step(poly, z, f, m)
        } else {
            let [dx, dy] = solve_2x2(m, [-f.re, -f.im]);
            z + Complex64::new(dx, dy)
        };
        if !next.re.is_finite() || !next.im.is_finite() || next.norm() > 1e150 {
            return Err(Error::NoConvergence(iteration));
        }
        let step = (next - z).norm();
        z = next;
        let residual = poly.eval(z).norm();
        if step <= tol * (1.0 + z.norm()) && residual <= tol * poly.magnitude_scale(z.norm()) {
            return Ok(NewtonTrace {
                record: ZeroRecord::at(poly, z),
                iterations: iteration,
                fallback_steps,
            });
        }
    }
    Err(Error::NoConvergence(max_iter))
}

/// Solves `Re f = Im f = 0` from `seed`.
pub fn newton_refine(
    poly: &HarmonicPolynomial,
    seed: ComplexPoint,
    max_iter: usize,
    tol: f64,
) -> Result<ZeroRecord> {
    newton_refine_traced(poly, seed, max_iter, tol).map(|t| t.record)
}

/// Seeds for the zero search: a polar grid over the disk plus full rings.
pub fn seed_points(disk_radius: f64, resolution: usize, rings: &[f64]) -> Vec<Complex64> {
    let mut seeds = vec![Complex64::new(0.0, 0.0)];
    for i in 0..resolution {
        let radius = disk_radius * (i as f64 + 0.5) / resolution as f64;
        // stagger alternate rings by half a cell
        let shift = if i % 2 == 0 { 0.0 } else { 0.5 };
        seeds.extend(
            (0..resolution).map(|j| {
                Complex64::from_polar(radius, TAU * (j as f64 + shift) / resolution as f64)
            }),
        );
    }
    for &radius in rings {
        seeds.extend(
            (0..resolution).map(|j| {
                Complex64::from_polar(radius, TAU * (j as f64 + 0.25) / resolution as f64)
            }),
        );
    }
    seeds
}

fn lexicographic(a: &ZeroRecord, b: &ZeroRecord) -> Ordering {
    a.location
        .re
        .total_cmp(&b.location.re)
        .then(a.location.im.total_cmp(&b.location.im))
}

/// Merges records closer than `tol`, keeping the smaller residual; output
/// is sorted by `(re, im)` and independent of input order.
pub fn dedupe(mut records: Vec<ZeroRecord>, tol: f64) -> Vec<ZeroRecord> {
    records.sort_by(|a, b| lexicographic(a, b).then(a.residual.total_cmp(&b.residual)));
    let mut kept: Vec<ZeroRecord> = Vec::new();
    for record in records {
        match kept
            .iter_mut()
            .find(|k| (k.location - record.location).norm() <= tol)
        {
            Some(existing) => {
                if record.residual < existing.residual {
                    *existing = record;
                }
            }
            None => kept.push(record),
        }
    }
    kept.sort_by(lexicographic);
    kept
}

/// Configuration of [`find_zeros_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSearch {
    pub disk_radius: f64,
    pub grid_resolution: usize,
    /// Extra seed rings, e.g. the critical radius.
    pub rings: Vec<f64>,
    pub max_iter: usize,
    pub tol: f64,
}

impl ZeroSearch {
    pub fn new(disk_radius: f64, grid_resolution: usize) -> Self {
        Self {
            disk_radius,
            grid_resolution,
            rings: Vec::new(),
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_rings(mut self, rings: Vec<f64>) -> Self {
        self.rings = rings;
        self
    }
}

/// All zeros of `poly` in `|z| <= disk_radius`.
pub fn find_zeros(
    poly: &HarmonicPolynomial,
    disk_radius: f64,
    grid_resolution: usize,
) -> Result<Vec<ZeroRecord>> {
    find_zeros_with(poly, &ZeroSearch::new(disk_radius, grid_resolution))
}

/// `deg g <= deg h = n >= 1`, with `|a_n| != |b_n|` when the degrees tie,
/// so that `f -> infinity` and the zero set is finite with at most `n^2` points.
pub fn dominant_analytic_part(poly: &HarmonicPolynomial) -> bool {
    let (h, g) = (poly.analytic_coeffs(), poly.coanalytic_coeffs());
    let n = poly.analytic_degree();
    if h.len() < 2 || g.len() > h.len() {
        return false;
    }
    g.len() < h.len() || h[n].norm() != g[n].norm()
}

pub fn find_zeros_with(poly: &HarmonicPolynomial, search: &ZeroSearch) -> Result<Vec<ZeroRecord>> {
    let (analytic, coanalytic) = (poly.analytic_degree(), poly.coanalytic_degree());
    if !dominant_analytic_part(poly) {
        return Err(Error::DegreeOrder {
            analytic,
            coanalytic,
        });
    }
    if search.disk_radius <= 0.0 || !search.disk_radius.is_finite() || search.grid_resolution == 0 {
        return Err(Error::InvalidGrid(format!(
            "disk radius {} and resolution {} must be positive",
            search.disk_radius, search.grid_resolution
        )));
    }
    let seeds = seed_points(search.disk_radius, search.grid_resolution, &search.rings);
    let limit = search.disk_radius * (1.0 + 1e-9);
    let candidates: Vec<ZeroRecord> = seeds
        .par_iter()
        .filter_map(|&seed| newton_refine(poly, seed, search.max_iter, search.tol).ok())
        .filter(|record| record.location.norm() <= limit)
        .collect();
    let zeros = dedupe(candidates, DEDUPE_REL_TOL * search.disk_radius);
    let cap = analytic * analytic;
    if zeros.len() > cap {
        return Err(Error::CapExceeded {
            found: zeros.len(),
            cap,
        });
    }
    Ok(zeros)
}

/// Seeds the search with rings around the critical radius when it exists.
pub fn find_quadrinomial_zeros(
    params: &QuadrinomialParams,
    disk_radius: f64,
    grid_resolution: usize,
) -> Result<Vec<ZeroRecord>> {
    let rings = match critical_radius(params) {
        Ok(circle) => [0.99, 1.0, 1.01]
            .iter()
            .map(|s| s * circle.radius)
            .collect(),
        Err(_) => Vec::new(),
    };
    find_zeros_with(
        &params.polynomial(),
        &ZeroSearch::new(disk_radius, grid_resolution).with_rings(rings),
    )
}

/// Winding number next to the signed zero count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountingReport {
    pub winding: i64,
    pub n_preserving: usize,
    pub n_reversing: usize,
    pub n_singular: usize,
    /// `None` when singular zeros make the check inapplicable.
    pub consistent: Option<bool>,
}

impl CountingReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("counting report serializes")
    }
}

pub fn counting_report(
    poly: &HarmonicPolynomial,
    contour: &CurveSamples,
    zeros: &[ZeroRecord],
) -> Result<CountingReport> {
    if let Some(outside) = zeros.iter().find(|z| !encloses(contour, z.location)) {
        return Err(Error::ZeroOutsideContour {
            re: outside.location.re,
            im: outside.location.im,
        });
    }
    let winding = winding_number(poly, contour)?.value;
    let count = |class| zeros.iter().filter(|z| z.orientation == class).count();
    let (n_preserving, n_reversing, n_singular) = (
        count(OrientationClass::Preserving),
        count(OrientationClass::Reversing),
        count(OrientationClass::Singular),
    );
    Ok(CountingReport {
        winding,
        n_preserving,
        n_reversing,
        n_singular,
        consistent: (n_singular == 0).then(|| winding == n_preserving as i64 - n_reversing as i64),
    })
}

/// `winding == N+ - N-` for zeros strictly inside `contour`.
pub fn argument_principle_check(
    poly: &HarmonicPolynomial,
    contour: &CurveSamples,
    zeros: &[ZeroRecord],
) -> Result<bool> {
    counting_report(poly, contour, zeros)?
        .consistent
        .ok_or(Error::SingularZeroPresent)
}

/// Closed circle contour of `count` samples (plus the closing repeat).
pub fn circle_contour(radius: f64, count: usize) -> Result<CurveSamples> {
    Ok(crate::critical::sample_circle(radius, count)?.closed(TAU))
}

/// Records within `band` of the critical circle.
pub fn modular_roots(
    params: &QuadrinomialParams,
    zeros: &[ZeroRecord],
    band: f64,
) -> Result<Vec<ZeroRecord>> {
    let radius = critical_radius(params)?.radius;
    Ok(zeros
        .iter()
        .filter(|z| (z.location.norm() - radius).abs() <= band)
        .copied()
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleMinimum {
    pub theta: f64,
    pub modulus: f64,
}

/// `min_theta |Q(M e^(i theta))|`: uniform sampling, then golden-section
/// search on the bracketing cell.
pub fn circle_min_modulus(params: &QuadrinomialParams, count: usize) -> Result<CircleMinimum> {
    if count < 256 {
        return Err(Error::TooFewSamples {
            required: 256,
            given: count,
        });
    }
    let radius = critical_radius(params)?.radius;
    let poly = params.polynomial();
    let modulus = |theta: f64| poly.eval(Complex64::from_polar(radius, theta)).norm();
    let cell = TAU / count as f64;
    let (best, _) = (0..count)
        .map(|j| (j, modulus(cell * j as f64)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("count >= 256");
    let center = cell * best as f64;
    let (theta, value) = golden_section(&modulus, center - cell, center + cell);
    let sampled = modulus(center);
    Ok(if value <= sampled {
        CircleMinimum {
            theta: theta.rem_euclid(TAU),
            modulus: value,
        }
    } else {
        CircleMinimum {
            theta: center,
            modulus: sampled,
        }
    })
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-15 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Jacobian band used to call a located zero singular.
pub fn singular_band(poly: &HarmonicPolynomial, z: ComplexPoint) -> f64 {
    default_singular_tol(&poly.eval_derivatives(z))
}
