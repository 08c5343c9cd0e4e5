//! The critical circle `|z| = M` of a quadrinomial and grid maps of local
//! orientation.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::quadrinomial_disk;
use crate::curve::CurveSamples;
use crate::error::{Error, Result};
use crate::export::{csv_table, format_number};
use crate::harmonic::{OrientationClass, QuadrinomialParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalCircle {
    pub radius: f64,
}

/// `M = ((c^2 - 1) / (k^2 (b^2 - 1)))^(1 / (2k - 2))`.
///
/// For the `b = c, k = n, m = 1` members this is exactly the locus
/// `|g'/h'| = 1`; it then only depends on `k`.
pub fn critical_radius(params: &QuadrinomialParams) -> Result<CriticalCircle> {
    let (b, c, k) = (params.b(), params.c(), params.k());
    if k < 2 {
        return Err(Error::DegenerateDegree(k));
    }
    let numerator = c * c - 1.0;
    let denominator = (k as f64).powi(2) * (b * b - 1.0);
    let ratio = numerator / denominator;
    if ratio <= 0.0 || !ratio.is_finite() {
        return Err(Error::MixedParameters { b, c });
    }
    let radius = if b == c {
        // the b-dependence cancels exactly
        (k as f64)
            .powi(2)
            .recip()
            .powf(1.0 / (2.0 * k as f64 - 2.0))
    } else {
        ratio.powf(1.0 / (2.0 * k as f64 - 2.0))
    };
    Ok(CriticalCircle { radius })
}

impl CriticalCircle {
    pub fn sample(&self, count: usize) -> Result<CurveSamples> {
        sample_circle(self.radius, count)
    }
}

/// `count` points `radius * e^(2 pi i j / count)`, `j = 0..count`.
pub fn sample_circle(radius: f64, count: usize) -> Result<CurveSamples> {
    if count < 3 {
        return Err(Error::TooFewSamples {
            required: 3,
            given: count,
        });
    }
    Ok(CurveSamples::uniform(count, |theta| {
        Complex64::new(radius * theta.cos(), radius * theta.sin())
    }))
}

/// Axis-aligned sampling lattice; row `i` is `y = y_min + i * dy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub columns: usize,
    pub rows: usize,
}

impl GridSpec {
    pub fn square(half_width: f64, resolution: usize) -> Self {
        Self {
            x_range: (-half_width, half_width),
            y_range: (-half_width, half_width),
            columns: resolution,
            rows: resolution,
        }
    }

    /// 512 x 512 over half-width `1.5 * max(1, inclusion radius)`.
    pub fn default_for(params: &QuadrinomialParams) -> Self {
        Self::square(1.5 * quadrinomial_disk(params).radius.max(1.0), 512)
    }

    fn validate(&self) -> Result<()> {
        let ordered = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo < hi;
        if self.columns < 2 || self.rows < 2 {
            return Err(Error::InvalidGrid(format!(
                "resolution {}x{} needs at least 2 nodes per axis",
                self.columns, self.rows
            )));
        }
        if !ordered(self.x_range) || !ordered(self.y_range) {
            return Err(Error::InvalidGrid(
                "ranges must be finite and increasing".to_string(),
            ));
        }
        Ok(())
    }

    pub fn node(&self, row: usize, column: usize) -> Complex64 {
        let lerp = |(lo, hi): (f64, f64), i: usize, count: usize| {
            lo + (hi - lo) * i as f64 / (count - 1) as f64
        };
        Complex64::new(
            lerp(self.x_range, column, self.columns),
            lerp(self.y_range, row, self.rows),
        )
    }
}

/// Orientation class at every node of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SenseMap {
    pub grid: GridSpec,
    pub critical_radius: f64,
    cells: Vec<OrientationClass>,
}

impl SenseMap {
    pub fn get(&self, row: usize, column: usize) -> OrientationClass {
        self.cells[row * self.grid.columns + column]
    }

    pub fn cells(&self) -> &[OrientationClass] {
        &self.cells
    }

    pub fn count(&self, class: OrientationClass) -> usize {
        self.cells.iter().filter(|c| **c == class).count()
    }

    /// CSV with header `x,y,class`, row-major.
    pub fn to_csv(&self) -> String {
        let grid = self.grid;
        csv_table(
            "x,y,class",
            (0..grid.rows).flat_map(|row| {
                (0..grid.columns).map(move |column| {
                    let z = grid.node(row, column);
                    vec![
                        format_number(z.re),
                        format_number(z.im),
                        self.get(row, column).code().to_string(),
                    ]
                })
            }),
        )
    }
}

/// Classifies every grid node with the default relative singular band.
pub fn sense_map(params: &QuadrinomialParams, grid: GridSpec) -> Result<SenseMap> {
    grid.validate()?;
    let circle = critical_radius(params)?;
    let poly = params.polynomial();
    let cells = (0..grid.rows)
        .into_par_iter()
        .flat_map_iter(|row| {
            let poly = &poly;
            (0..grid.columns).map(move |column| poly.orientation(grid.node(row, column)))
        })
        .collect();
    Ok(SenseMap {
        grid,
        critical_radius: circle.radius,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(b: f64, c: f64, k: u32, n: u32, m: u32) -> QuadrinomialParams {
        QuadrinomialParams::new(b, c, k, n, m).unwrap()
    }

    #[test]
    fn radius_examples() {
        for b in [1.1, 2.0, 12.0, 0.4] {
            let r = critical_radius(&params(b, b, 2, 2, 1)).unwrap().radius;
            assert!((r - 0.5).abs() < 1e-15);
        }
        let r3 = critical_radius(&params(2.0, 2.0, 3, 3, 1)).unwrap().radius;
        assert!((r3 - 0.577_350_269_189_625_7).abs() < 1e-15);
        let mixed = critical_radius(&params(3.0, 2.0, 2, 2, 1)).unwrap().radius;
        assert!((mixed - (3.0f64 / 32.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn straddling_parameters_fail() {
        assert_eq!(
            critical_radius(&params(2.0, 0.5, 2, 2, 1)),
            Err(Error::MixedParameters { b: 2.0, c: 0.5 })
        );
    }

    #[test]
    fn circle_samples() {
        let s = sample_circle(1.0, 4).unwrap();
        let expected = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (p, (x, y)) in s.points().zip(expected) {
            assert!((p.re - x).abs() < 1e-15 && (p.im - y).abs() < 1e-15);
        }
        assert!(sample_circle(0.5, 2).is_err());
        let s = sample_circle(0.7, 1000).unwrap();
        assert!(s.points().all(|p| (p.norm() - 0.7).abs() < 1e-15));
        assert!(s.samples().windows(2).all(|w| w[0].theta < w[1].theta));
    }

    #[test]
    fn sense_map_nodes() {
        let p = params(2.0, 2.0, 2, 2, 1);
        // 5x5 over [-1, 1]^2 puts nodes at 0, +-0.5, +-1
        let map = sense_map(&p, GridSpec::square(1.0, 5)).unwrap();
        assert_eq!(map.get(2, 2), OrientationClass::Reversing);
        assert_eq!(map.get(2, 4), OrientationClass::Preserving);
        assert_eq!(map.get(2, 3), OrientationClass::Singular);
        assert_eq!(map.get(3, 2), OrientationClass::Singular);
        assert_eq!(map.get(2, 1), OrientationClass::Singular);
        assert_eq!(map.cells().len(), 25);
    }

    #[test]
    fn sense_map_csv() {
        let p = params(2.0, 2.0, 2, 2, 1);
        let csv = sense_map(&p, GridSpec::square(1.0, 3)).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,y,class");
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[1], "-1,-1,P");
        assert_eq!(lines[5], "0,0,R");
    }

    #[test]
    fn sense_map_rejects_bad_grid() {
        let p = params(2.0, 2.0, 2, 2, 1);
        assert!(matches!(
            sense_map(&p, GridSpec::square(1.0, 1)),
            Err(Error::InvalidGrid(_))
        ));
        assert!(sense_map(&params(2.0, 0.5, 2, 2, 1), GridSpec::square(1.0, 4)).is_err());
    }

    #[test]
    fn default_grid_covers_inclusion_disk() {
        let g = GridSpec::default_for(&params(2.0, 2.0, 2, 2, 1));
        assert_eq!((g.columns, g.rows), (512, 512));
        assert!((g.x_range.1 - 1.5 * (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn subfamily_sign_separates_at_radius() {
        let delta = 1e-3;
        for (b, k) in [(2.0, 2), (12.0, 3), (0.5, 4), (1.5, 7)] {
            let p = params(b, b, k, k, 1);
            let radius = critical_radius(&p).unwrap().radius;
            let poly = p.polynomial();
            for i in 0..100 {
                let t = (i as f64 + 0.5) / 100.0;
                let inner = radius * (1.0 - delta) * t;
                let outer = radius * (1.0 + delta) + 3.0 * t;
                for j in 0..100 {
                    let theta = std::f64::consts::TAU * j as f64 / 100.0;
                    let ji = poly.jacobian(Complex64::from_polar(inner, theta));
                    let jo = poly.jacobian(Complex64::from_polar(outer, theta));
                    // b < 1 flips both signs
                    let s = (b - 1.0f64).signum();
                    assert!(s * ji < 0.0, "b={b} k={k} r={inner}");
                    assert!(s * jo > 0.0, "b={b} k={k} r={outer}");
                }
            }
        }
    }

    fn symmetric_family() -> impl Strategy<Value = QuadrinomialParams> {
        (0.05f64..20.0, 2u32..12).prop_filter_map("b near 1", |(b, k)| {
            ((b - 1.0).abs() > 1e-3).then(|| params(b, b, k, k, 1))
        })
    }

    proptest! {
        #[test]
        fn dilatation_is_unimodular_on_circle(p in symmetric_family(), theta in 0.0f64..std::f64::consts::TAU) {
            let radius = critical_radius(&p).unwrap().radius;
            let omega = p.polynomial().dilatation(Complex64::from_polar(radius, theta)).unwrap();
            prop_assert!((omega.norm() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn symmetric_radius_depends_only_on_k(b1 in 1.01f64..50.0, b2 in 0.01f64..0.99, k in 2u32..20) {
            let r1 = critical_radius(&params(b1, b1, k, k, 1)).unwrap().radius;
            let r2 = critical_radius(&params(b2, b2, k, k, 1)).unwrap().radius;
            let expected = (1.0 / (k as f64).powi(2)).powf(1.0 / (2.0 * k as f64 - 2.0));
            prop_assert!((r1 - expected).abs() < 1e-15);
            prop_assert_eq!(r1, r2);
        }
    }
}
