use num_complex::Complex64;

use crate::export::{csv_table, format_number};
use crate::harmonic::ComplexPoint;

/// One sample of a parametrized plane curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub theta: f64,
    pub point: ComplexPoint,
}

/// Ordered samples of a curve, ascending in the parameter.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CurveSamples {
    samples: Vec<CurveSample>,
}

impl CurveSamples {
    pub fn new(samples: Vec<CurveSample>) -> Self {
        Self { samples }
    }

    /// Samples `curve` at `count` uniform parameters `2 pi j / count`.
    pub fn uniform<F>(count: usize, curve: F) -> Self
    where
        F: Fn(f64) -> ComplexPoint,
    {
        let samples = (0..count)
            .map(|j| {
                let theta = std::f64::consts::TAU * j as f64 / count as f64;
                CurveSample {
                    theta,
                    point: curve(theta),
                }
            })
            .collect();
        Self { samples }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn iter(&self) -> impl Iterator<Item = &CurveSample> {
        self.samples.iter()
    }

    pub fn points(&self) -> impl Iterator<Item = ComplexPoint> + '_ {
        self.samples.iter().map(|s| s.point)
    }

    /// Appends a repeat of the first point at `theta + period`, unless the
    /// curve already ends where it starts.
    pub fn closed(mut self, period: f64) -> Self {
        if let (Some(first), Some(last)) = (self.samples.first().copied(), self.samples.last()) {
            if self.samples.len() < 2 || first.point != last.point {
                self.samples.push(CurveSample {
                    theta: first.theta + period,
                    point: first.point,
                });
            }
        }
        self
    }

    /// Rotates the starting sample of a periodic, not-yet-closed sample list.
    pub fn rotated(&self, offset: usize) -> Self {
        let mut samples = self.samples.clone();
        if !samples.is_empty() {
            let len = samples.len();
            samples.rotate_left(offset % len);
        }
        Self { samples }
    }

    pub fn max_modulus(&self) -> f64 {
        self.points().map(Complex64::norm).fold(0.0, f64::max)
    }

    /// CSV with header `theta,re,im`.
    pub fn to_csv(&self) -> String {
        csv_table(
            "theta,re,im",
            self.samples.iter().map(|s| {
                vec![
                    format_number(s.theta),
                    format_number(s.point.re),
                    format_number(s.point.im),
                ]
            }),
        )
    }
}

impl FromIterator<CurveSample> for CurveSamples {
    fn from_iter<T: IntoIterator<Item = CurveSample>>(iter: T) -> Self {
        Self {
            samples: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closing_appends_first_point_once() {
        let curve = CurveSamples::uniform(4, |t| Complex64::from_polar(1.0, t));
        let closed = curve.closed(std::f64::consts::TAU);
        assert_eq!(closed.len(), 5);
        assert_eq!(closed.samples()[4].point, closed.samples()[0].point);
        assert_eq!(closed.clone().closed(std::f64::consts::TAU).len(), 5);
    }

    #[test]
    fn csv_layout() {
        let curve = CurveSamples::new(vec![CurveSample {
            theta: 0.0,
            point: Complex64::new(2.25, -0.0),
        }]);
        assert_eq!(curve.to_csv(), "theta,re,im\n0,2.25,0\n");
    }
}
