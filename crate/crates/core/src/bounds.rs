//! Origin-centred disks guaranteed to contain every zero, from the positive
//! root of a bound polynomial, plus Descartes sign counting.
//!
//! Both bound families vanish identically at `x = 1`:
//!
//! * general: `x^(n+1) - (1 + M) x^n + M`
//! * quadrinomial: `|b| x^(k+1) - (|b| + |c|) x^k + |c|`
//!
//! so the trivial root is divided out before solving. Coefficient lists in
//! this module are in descending powers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic::{HarmonicPolynomial, QuadrinomialParams};

const DEFLATION_TOL: f64 = 1e-10;

/// Coefficients together with their Descartes sign-change count.
#[derive(Debug, Clone, PartialEq)]
pub struct SignSequence {
    pub coeffs: Vec<f64>,
    pub changes: usize,
}

impl SignSequence {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let changes = sign_changes(&coeffs)?;
        Ok(Self { coeffs, changes })
    }
}

/// Number of strict sign alternations, zeros skipped.
pub fn sign_changes(coeffs: &[f64]) -> Result<usize> {
    let mut signs = coeffs
        .iter()
        .filter(|c| **c != 0.0)
        .map(|c| c.is_sign_positive());
    let Some(mut previous) = signs.next() else {
        return Err(Error::AllZero);
    };
    let mut changes = 0;
    for sign in signs {
        if sign != previous {
            changes += 1;
            previous = sign;
        }
    }
    Ok(changes)
}

/// Synthetic division by `(x - root)`; returns the quotient and remainder.
pub fn synthetic_division(coeffs: &[f64], root: f64) -> (Vec<f64>, f64) {
    let mut quotient = Vec::with_capacity(coeffs.len().saturating_sub(1));
    let mut acc = 0.0;
    for (i, &a) in coeffs.iter().enumerate() {
        acc = acc * root + a;
        if i + 1 < coeffs.len() {
            quotient.push(acc);
        }
    }
    (quotient, acc)
}

fn horner(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut slope = 0.0;
    for &a in coeffs {
        slope = slope * x + value;
        value = value * x + a;
    }
    (value, slope)
}

/// The unique positive root of `coeffs / (x - 1)`.
pub fn positive_root_after_deflation(coeffs: &[f64]) -> Result<f64> {
    let start = coeffs
        .iter()
        .position(|c| *c != 0.0)
        .ok_or(Error::AllZero)?;
    let coeffs = &coeffs[start..];
    let (quotient, remainder) = synthetic_division(coeffs, 1.0);
    let size: f64 = coeffs.iter().map(|c| c.abs()).sum();
    if remainder.abs() > DEFLATION_TOL * (1.0 + size) {
        return Err(Error::NotBoundFamily(remainder));
    }
    // factor out powers of x so the bracket starts at a nonzero value
    let end = quotient
        .iter()
        .rposition(|c| *c != 0.0)
        .ok_or(Error::NoPositiveRoot)?;
    let quotient = &quotient[..=end];
    match sign_changes(quotient)? {
        0 => return Err(Error::NoPositiveRoot),
        1 => {}
        more => return Err(Error::AmbiguousPositiveRoot(more)),
    }
    let lead = quotient[0];
    let cauchy = 1.0
        + quotient[1..]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);

    let mut lo = 0.0;
    let mut hi = cauchy;
    let lo_sign = quotient[end].is_sign_positive();
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (value, _) = horner(quotient, mid);
        if value == 0.0 {
            return Ok(mid);
        }
        if value.is_sign_positive() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish, kept inside the bracket
    let mut root = 0.5 * (lo + hi);
    for _ in 0..8 {
        let (value, slope) = horner(quotient, root);
        if slope == 0.0 {
            break;
        }
        let next = root - value / slope;
        if !(lo..=hi).contains(&next) || (next - root).abs() <= 1e-16 * root {
            break;
        }
        root = next;
    }
    Ok(root)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum BoundFamily {
    /// `x^(n+1) - (1 + M) x^n + M`
    General { m: f64, degree: usize },
    /// `|b| x^(k+1) - (|b| + |c|) x^k + |c|`
    Quadrinomial { b_abs: f64, c_abs: f64, k: u32 },
}

/// Disk `D(0, radius)` containing every zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionDisk {
    pub radius: f64,
    #[serde(flatten)]
    pub family: BoundFamily,
    /// Positive root after deflation; `None` when it does not exist.
    pub deflated_root: Option<f64>,
    /// Bound polynomial, descending powers.
    #[serde(skip)]
    pub bound_poly_coeffs: Vec<f64>,
    pub deflated: bool,
    /// Set when |c| <= 1 or k <= n; the radius is then advisory.
    pub advisory: Option<String>,
}

impl InclusionDisk {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("inclusion disk serializes")
    }
}

fn disk_from_bound(
    coeffs: Vec<f64>,
    family: BoundFamily,
    advisory: Option<String>,
) -> Result<InclusionDisk> {
    let deflated_root = match positive_root_after_deflation(&coeffs) {
        Ok(root) => Some(root),
        Err(Error::NoPositiveRoot) => None,
        Err(e) => return Err(e),
    };
    Ok(InclusionDisk {
        radius: deflated_root.map_or(1.0, |r| r.max(1.0)),
        family,
        deflated_root,
        bound_poly_coeffs: coeffs,
        deflated: true,
        advisory,
    })
}

/// `x^(n+1) - (1 + M) x^n + M`, descending.
pub fn general_bound_polynomial(m: f64, degree: usize) -> Vec<f64> {
    let mut coeffs = vec![0.0; degree + 2];
    coeffs[0] = 1.0;
    coeffs[1] = -(1.0 + m);
    coeffs[degree + 1] += m;
    coeffs
}

/// `|b| x^(k+1) - (|b| + |c|) x^k + |c|`, descending.
pub fn quadrinomial_bound_polynomial(b_abs: f64, c_abs: f64, k: u32) -> Vec<f64> {
    let k = k as usize;
    let mut coeffs = vec![0.0; k + 2];
    coeffs[0] = b_abs;
    coeffs[1] = -(b_abs + c_abs);
    coeffs[k + 1] += c_abs;
    coeffs
}

/// Disk for an arbitrary harmonic polynomial with `deg h = n >= deg g`,
/// `M = max_{j < n} (|a_j| + |b_j|) / |a_n|`.
pub fn inclusion_radius_general(poly: &HarmonicPolynomial) -> Result<InclusionDisk> {
    let n = poly.analytic_degree();
    let (analytic, coanalytic) = (poly.analytic_coeffs(), poly.coanalytic_coeffs());
    if analytic.is_empty() || poly.coanalytic_degree() > n {
        return Err(Error::DegreeOrder {
            analytic: n,
            coanalytic: poly.coanalytic_degree(),
        });
    }
    let lead = analytic[n].norm();
    let m = (0..n)
        .map(|j| {
            let a = analytic.get(j).map_or(0.0, |c| c.norm());
            let b = coanalytic.get(j).map_or(0.0, |c| c.norm());
            (a + b) / lead
        })
        .fold(0.0, f64::max);
    disk_from_bound(
        general_bound_polynomial(m, n),
        BoundFamily::General { m, degree: n },
        None,
    )
}

/// Disk for `b z^k + conj(z)^n + c conj(z)^m + z` with `b, c` nonzero reals.
///
/// Valid under `|c| > 1` and `k > n`; outside those the radius is still
/// returned with `advisory` set.
pub fn inclusion_radius_quadrinomial(b: f64, c: f64, k: u32, n: u32) -> Result<InclusionDisk> {
    if !b.is_finite() || !c.is_finite() || b == 0.0 || c == 0.0 {
        return Err(Error::InvalidParams(format!(
            "b = {b} and c = {c} must be finite and nonzero"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParams("k must be positive".to_string()));
    }
    let mut violated = Vec::new();
    if c.abs() <= 1.0 {
        violated.push(format!("|c| = {} <= 1", c.abs()));
    }
    if k <= n {
        violated.push(format!("k = {k} <= n = {n}"));
    }
    let advisory = (!violated.is_empty()).then(|| {
        format!(
            "hypothesis violated ({}); radius is advisory",
            violated.join(", ")
        )
    });
    let (b_abs, c_abs) = (b.abs(), c.abs());
    disk_from_bound(
        quadrinomial_bound_polynomial(b_abs, c_abs, k),
        BoundFamily::Quadrinomial { b_abs, c_abs, k },
        advisory,
    )
}

/// Quadrinomial disk for validated family parameters.
pub fn quadrinomial_disk(params: &QuadrinomialParams) -> InclusionDisk {
    inclusion_radius_quadrinomial(params.b(), params.c(), params.k(), params.n())
        .expect("validated parameters satisfy the bound preconditions")
}
