//! Complex-valued harmonic polynomials `f = h + conj(g)` and their pointwise
//! differential data: derivatives, Jacobian, dilatation and orientation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the complex plane.
pub type ComplexPoint = Complex64;

/// Absolute floor on `|h'|` below which the dilatation is reported undefined.
pub const DILATATION_EPSILON: f64 = 1e-300;

/// Relative factor for the default singularity band of [`HarmonicPolynomial::orientation`].
pub const SINGULAR_REL_TOL: f64 = 1e-9;

/// Local orientation of a harmonic map, decided by the sign of its Jacobian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrientationClass {
    Preserving,
    Reversing,
    Singular,
}

impl OrientationClass {
    /// One-letter code used in CSV output.
    pub fn code(self) -> char {
        match self {
            OrientationClass::Preserving => 'P',
            OrientationClass::Reversing => 'R',
            OrientationClass::Singular => 'S',
        }
    }

    pub fn from_code(code: char) -> Option<Self> {
        match code {
            'P' => Some(OrientationClass::Preserving),
            'R' => Some(OrientationClass::Reversing),
            'S' => Some(OrientationClass::Singular),
            _ => None,
        }
    }
}

/// `h'(z)` and `g'(z)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivatives {
    pub analytic: Complex64,
    pub coanalytic: Complex64,
}

impl Derivatives {
    pub fn jacobian(&self) -> f64 {
        self.analytic.norm_sqr() - self.coanalytic.norm_sqr()
    }

    /// Real 2x2 Jacobian `[[u_x, u_y], [v_x, v_y]]` of `(u, v) = (Re f, Im f)`.
    ///
    /// With `f_z = h'` and `f_zbar = conj(g')`, `f_x = h' + conj(g')` and
    /// `f_y = i (h' - conj(g'))`.
    pub fn real_matrix(&self) -> [[f64; 2]; 2] {
        let sum = self.analytic + self.coanalytic;
        let diff = self.analytic - self.coanalytic;
        [[sum.re, -sum.im], [diff.im, diff.re]]
    }

    fn magnitude(&self) -> f64 {
        self.analytic.norm_sqr() + self.coanalytic.norm_sqr()
    }
}

/// Harmonic polynomial `f(z) = h(z) + conj(g(z))`.
///
/// Both parts are stored densely by ascending power. Trailing zero
/// coefficients are trimmed so the last stored coefficient is nonzero; the
/// zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPolynomial {
    analytic: Vec<Complex64>,
    coanalytic: Vec<Complex64>,
}

fn trim(mut coeffs: Vec<Complex64>) -> Vec<Complex64> {
    while coeffs
        .last()
        .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
    {
        coeffs.pop();
    }
    coeffs
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn horner_derivative(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (j, &a)| {
            acc * z + a * j as f64
        })
}

fn degree(coeffs: &[Complex64]) -> usize {
    coeffs.len().saturating_sub(1)
}

impl HarmonicPolynomial {
    pub fn new(analytic: Vec<Complex64>, coanalytic: Vec<Complex64>) -> Result<Self> {
        if analytic
            .iter()
            .chain(coanalytic.iter())
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidParams(
                "coefficients must be finite".to_string(),
            ));
        }
        Ok(Self {
            analytic: trim(analytic),
            coanalytic: trim(coanalytic),
        })
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(analytic: &[f64], coanalytic: &[f64]) -> Result<Self> {
        let lift = |c: &[f64]| c.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(lift(analytic), lift(coanalytic))
    }

    /// An analytic polynomial (`g = 0`).
    pub fn analytic(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs, Vec::new())
    }

    pub fn analytic_coeffs(&self) -> &[Complex64] {
        &self.analytic
    }

    pub fn coanalytic_coeffs(&self) -> &[Complex64] {
        &self.coanalytic
    }

    pub fn analytic_degree(&self) -> usize {
        degree(&self.analytic)
    }

    pub fn coanalytic_degree(&self) -> usize {
        degree(&self.coanalytic)
    }

    pub fn is_analytic(&self) -> bool {
        self.coanalytic.iter().skip(1).all(|c| c.norm_sqr() == 0.0)
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.analytic
            .iter()
            .chain(self.coanalytic.iter())
            .all(|c| c.im == 0.0)
    }

    /// `1 + sum |a_j| r^j + sum |b_j| r^j`, the magnitude against which
    /// residuals of `f` on `|z| <= r` are measured.
    pub fn magnitude_scale(&self, radius: f64) -> f64 {
        let part = |coeffs: &[Complex64]| {
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c.norm() * radius.powi(j as i32))
                .sum::<f64>()
        };
        1.0 + part(&self.analytic) + part(&self.coanalytic)
    }

    pub fn eval(&self, z: ComplexPoint) -> ComplexPoint {
        horner(&self.analytic, z) + horner(&self.coanalytic, z).conj()
    }

    pub fn eval_derivatives(&self, z: ComplexPoint) -> Derivatives {
        Derivatives {
            analytic: horner_derivative(&self.analytic, z),
            coanalytic: horner_derivative(&self.coanalytic, z),
        }
    }

    /// `J_f(z) = |h'(z)|^2 - |g'(z)|^2`.
    pub fn jacobian(&self, z: ComplexPoint) -> f64 {
        self.eval_derivatives(z).jacobian()
    }

    /// Dilatation `g'(z) / h'(z)`.
    pub fn dilatation(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        let d = self.eval_derivatives(z);
        let modulus = d.analytic.norm();
        if modulus < DILATATION_EPSILON {
            return Err(Error::DegenerateDerivative(modulus));
        }
        Ok(d.coanalytic / d.analytic)
    }

    /// Classifies with an absolute band: singular when `|J| <= tol`.
    pub fn classify_orientation(&self, z: ComplexPoint, tol: f64) -> OrientationClass {
        classify_jacobian(self.jacobian(z), tol)
    }

    /// Classifies with the default relative band
    /// `1e-9 * (1 + |h'|^2 + |g'|^2)`.
    pub fn orientation(&self, z: ComplexPoint) -> OrientationClass {
        let d = self.eval_derivatives(z);
        classify_jacobian(d.jacobian(), default_singular_tol(&d))
    }
}

pub(crate) fn default_singular_tol(d: &Derivatives) -> f64 {
    SINGULAR_REL_TOL * (1.0 + d.magnitude())
}

fn classify_jacobian(jacobian: f64, tol: f64) -> OrientationClass {
    if jacobian > tol {
        OrientationClass::Preserving
    } else if jacobian < -tol {
        OrientationClass::Reversing
    } else {
        OrientationClass::Singular
    }
}

/// Parameters of the quadrinomial `Q(z) = b z^k + conj(z)^n + c conj(z)^m + z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadrinomialParams {
    b: f64,
    c: f64,
    k: u32,
    n: u32,
    m: u32,
}

impl QuadrinomialParams {
    /// Requires `k >= n > m >= 1` and `b, c` positive reals other than 1.
    pub fn new(b: f64, c: f64, k: u32, n: u32, m: u32) -> Result<Self> {
        for (name, value) in [("b", b), ("c", c)] {
            if !value.is_finite() || value <= 0.0 || value == 1.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} = {value} must be a positive real other than 1"
                )));
            }
        }
        if m < 1 || n <= m || k < n {
            return Err(Error::InvalidParams(format!(
                "degrees must satisfy k >= n > m >= 1, got k = {k}, n = {n}, m = {m}"
            )));
        }
        Ok(Self { b, c, k, n, m })
    }

    /// The `b = c, k = n, m = 1` member whose critical circle maps to a hypocycloid.
    pub fn symmetric(b: f64, k: u32) -> Result<Self> {
        Self::new(b, b, k, k, 1)
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_symmetric(&self) -> bool {
        self.b == self.c && self.k == self.n && self.m == 1
    }

    /// Both parts quadratic: `k = n = 2`.
    pub fn is_quadratic(&self) -> bool {
        self.k == 2 && self.n == 2
    }

    /// `h(z) = b z^k + z`, `g(z) = z^n + c z^m`.
    pub fn polynomial(&self) -> HarmonicPolynomial {
        let mut analytic = vec![Complex64::new(0.0, 0.0); self.k as usize + 1];
        analytic[1] += 1.0;
        analytic[self.k as usize] += self.b;
        let mut coanalytic = vec![Complex64::new(0.0, 0.0); self.n as usize + 1];
        coanalytic[self.n as usize] += 1.0;
        coanalytic[self.m as usize] += self.c;
        HarmonicPolynomial::new(analytic, coanalytic)
            .expect("validated parameters give finite coefficients")
    }
}

/// Free-function form of [`QuadrinomialParams::polynomial`].
pub fn make_quadrinomial(params: &QuadrinomialParams) -> HarmonicPolynomial {
    params.polynomial()
}
