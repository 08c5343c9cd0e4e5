//! The commands behind the `harmonic-locus` binary. Each returns its
//! artifacts in memory; the binary only parses flags and writes files.
//!
//! Exit codes: 0 success, 2 precondition violation, 3 internal consistency
//! failure, 4 claim-check failure.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{inclusion_radius_general, inclusion_radius_quadrinomial, quadrinomial_disk};
use crate::critical::{critical_radius, sample_circle, sense_map, GridSpec};
use crate::error::Error;
use crate::harmonic::{HarmonicPolynomial, OrientationClass, QuadrinomialParams};
use crate::hypocycloid::{cusp_report, fit_report, image_direct, ImageModel};
use crate::svg::Plot;
use crate::zeros::{
    circle_contour, circle_min_modulus, counting_report, find_quadrinomial_zeros, find_zeros_with,
    modular_roots, zeros_to_csv, ZeroRecord, ZeroSearch, DEFAULT_GRID_RESOLUTION,
};

pub const DEFAULT_SAMPLES: usize = 4096;
pub const DEFAULT_SENSE_GRID: usize = 512;
pub const DEFAULT_MODULAR_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Svg => "svg",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Precondition = 2,
    Internal = 3,
    ClaimFailed = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Exit status for a failed command.
pub fn exit_status(error: &Error) -> ExitStatus {
    match error {
        Error::CapExceeded { .. }
        | Error::NoConvergence(_)
        | Error::SingularJacobian(_)
        | Error::ZeroOnContour { .. }
        | Error::ZeroOutsideContour { .. } => ExitStatus::Internal,
        _ => ExitStatus::Precondition,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub format: Format,
    pub contents: String,
}

/// Artifacts of one run; `primary` is in the requested format.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub primary: Artifact,
    pub companions: Vec<Artifact>,
    pub status: ExitStatus,
    /// Warnings for stderr.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandError {
    Failed(Error),
    UnsupportedFormat {
        command: &'static str,
        format: Format,
    },
}

impl CommandError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CommandError::Failed(e) => exit_status(e),
            CommandError::UnsupportedFormat { .. } => ExitStatus::Precondition,
        }
    }
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandError::Failed(e) => write!(f, "{e}"),
            CommandError::UnsupportedFormat { command, format } => {
                write!(f, "{command} cannot emit {format}")
            }
        }
    }
}

impl std::error::Error for CommandError {}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Failed(e)
    }
}

pub type CommandResult = Result<CommandOutput, CommandError>;

fn assemble(
    command: &'static str,
    wanted: Format,
    mut artifacts: Vec<Artifact>,
    status: ExitStatus,
    notes: Vec<String>,
) -> CommandResult {
    let index = artifacts.iter().position(|a| a.format == wanted).ok_or(
        CommandError::UnsupportedFormat {
            command,
            format: wanted,
        },
    )?;
    let primary = artifacts.remove(index);
    Ok(CommandOutput {
        primary,
        companions: artifacts,
        status,
        notes,
    })
}

fn artifact(format: Format, contents: String) -> Artifact {
    Artifact { format, contents }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn params_json(params: &QuadrinomialParams) -> serde_json::Value {
    json!({
        "b": params.b(),
        "c": params.c(),
        "k": params.k(),
        "n": params.n(),
        "m": params.m(),
    })
}

/// Critical radius as JSON, the sampled circle as CSV or SVG.
pub fn critical_circle(
    params: &QuadrinomialParams,
    samples: usize,
    format: Format,
) -> CommandResult {
    let circle = critical_radius(params)?;
    let curve = sample_circle(circle.radius, samples)?;
    let report = json!({
        "radius": circle.radius,
        "samples": samples,
        "params": params_json(params),
    });
    let svg = Plot::new()
        .title(format!("critical circle, radius {}", circle.radius))
        .polyline(curve.points(), "black", false, true)
        .marker(Complex64::new(0.0, 0.0), "gray")
        .render();
    assemble(
        "critical-circle",
        format,
        vec![
            artifact(Format::Json, pretty(&report)),
            artifact(Format::Csv, curve.to_csv()),
            artifact(Format::Svg, svg),
        ],
        ExitStatus::Success,
        Vec::new(),
    )
}

#[derive(Serialize)]
struct ImageReport {
    #[serde(flatten)]
    fit: crate::hypocycloid::FitReport,
    cusp_count: usize,
    cusps_verified: bool,
}

/// Image of the critical circle against the hypocycloid model.
pub fn image(params: &QuadrinomialParams, samples: usize, format: Format) -> CommandResult {
    let fit = fit_report(params, samples)?;
    let model = ImageModel::from_params(params)?;
    let direct = image_direct(params, samples)?;
    let cusps = cusp_report(&model);
    let tolerance = 1e-9 * (1.0 + direct.max_modulus());
    let status = if fit.max_residual <= tolerance && cusps.is_verified() {
        ExitStatus::Success
    } else {
        ExitStatus::Internal
    };
    let mut plot = Plot::new()
        .title(format!(
            "image of the critical circle, b = {}, k = {}",
            params.b(),
            params.k()
        ))
        .polyline(direct.points(), "black", false, true)
        .polyline(
            model.sample(samples.min(2048)).points(),
            "tomato",
            true,
            true,
        );
    for &theta in &cusps.cusp_parameters {
        plot = plot.marker(model.point(theta), "royalblue");
    }
    let report = ImageReport {
        cusp_count: cusps.cusp_count,
        cusps_verified: cusps.is_verified(),
        fit,
    };
    assemble(
        "image",
        format,
        vec![
            artifact(Format::Svg, plot.render()),
            artifact(Format::Json, pretty(&report)),
            artifact(Format::Csv, direct.to_csv()),
        ],
        status,
        Vec::new(),
    )
}

/// What `zeros` operates on.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroTarget {
    Quadrinomial(QuadrinomialParams),
    General(HarmonicPolynomial),
}

fn zero_plot(zeros: &[ZeroRecord], circles: &[(f64, &str)]) -> String {
    let mut plot = Plot::new().title("zeros");
    for &(radius, stroke) in circles {
        plot = plot.polyline(
            (0..720).map(|j| Complex64::from_polar(radius, TAU * j as f64 / 720.0)),
            stroke,
            true,
            true,
        );
    }
    for zero in zeros {
        let fill = match zero.orientation {
            OrientationClass::Preserving => "seagreen",
            OrientationClass::Reversing => "crimson",
            OrientationClass::Singular => "black",
        };
        plot = plot.marker(zero.location, fill);
    }
    plot.render()
}

/// Zero list, scatter plot and argument-principle report.
///
/// Zeros are searched on, and counted inside, the circle of twice the
/// inclusion radius.
pub fn zeros(
    target: &ZeroTarget,
    grid: Option<usize>,
    samples: usize,
    format: Format,
) -> CommandResult {
    let resolution = grid.unwrap_or(DEFAULT_GRID_RESOLUTION);
    let mut notes = Vec::new();
    let (poly, inclusion, critical) = match target {
        ZeroTarget::Quadrinomial(params) => {
            let disk = quadrinomial_disk(params);
            notes.extend(disk.advisory.clone());
            (
                params.polynomial(),
                disk.radius,
                critical_radius(params).ok().map(|c| c.radius),
            )
        }
        ZeroTarget::General(poly) => (poly.clone(), inclusion_radius_general(poly)?.radius, None),
    };
    let contour_radius = 2.0 * inclusion;
    let found = match target {
        ZeroTarget::Quadrinomial(params) => {
            find_quadrinomial_zeros(params, contour_radius, resolution)?
        }
        ZeroTarget::General(poly) => {
            find_zeros_with(poly, &ZeroSearch::new(contour_radius, resolution))?
        }
    };
    let report = counting_report(
        &poly,
        &circle_contour(contour_radius, samples.max(64))?,
        &found,
    )?;
    let status = if report.consistent == Some(false) {
        notes.push(format!(
            "winding {} disagrees with N+ - N- = {}",
            report.winding,
            report.n_preserving as i64 - report.n_reversing as i64
        ));
        ExitStatus::Internal
    } else {
        ExitStatus::Success
    };
    let mut circles = vec![(inclusion, "lightgray")];
    circles.extend(critical.map(|r| (r, "royalblue")));
    let json = json!({
        "winding": report.winding,
        "n_preserving": report.n_preserving,
        "n_reversing": report.n_reversing,
        "n_singular": report.n_singular,
        "consistent": report.consistent,
        "inclusion_radius": inclusion,
        "critical_radius": critical,
        "zero_count": found.len(),
    });
    assemble(
        "zeros",
        format,
        vec![
            artifact(Format::Csv, zeros_to_csv(&found)),
            artifact(Format::Svg, zero_plot(&found, &circles)),
            artifact(Format::Json, pretty(&json)),
        ],
        status,
        notes,
    )
}

/// Quadrinomial inclusion disk; `b, c` are any nonzero reals.
pub fn bound(b: f64, c: f64, k: u32, n: u32, format: Format) -> CommandResult {
    let disk = inclusion_radius_quadrinomial(b, c, k, n)?;
    let notes = disk.advisory.iter().cloned().collect();
    assemble(
        "bound",
        format,
        vec![artifact(Format::Json, pretty(&disk))],
        ExitStatus::Success,
        notes,
    )
}

/// Minimum of `|Q|` on the critical circle and the count of zeros within
/// `band` of it; exit 4 when any are found.
pub fn modular_check(
    params: &QuadrinomialParams,
    samples: usize,
    grid: Option<usize>,
    band: f64,
    format: Format,
) -> CommandResult {
    let circle = critical_radius(params)?;
    let minimum = circle_min_modulus(params, samples.max(256))?;
    let disk = quadrinomial_disk(params);
    let found = find_quadrinomial_zeros(
        params,
        2.0 * disk.radius,
        grid.unwrap_or(DEFAULT_GRID_RESOLUTION),
    )?;
    let modular = modular_roots(params, &found, band)?;
    let report = json!({
        "min_modulus_on_circle": minimum.modulus,
        "theta_at_minimum": minimum.theta,
        "modular_root_count": modular.len(),
        "critical_radius": circle.radius,
        "band": band,
        "zero_count": found.len(),
        "params": params_json(params),
    });
    let status = if modular.is_empty() {
        ExitStatus::Success
    } else {
        ExitStatus::ClaimFailed
    };
    let mut notes = Vec::new();
    if !(params.is_symmetric() && params.is_quadratic()) {
        notes.push("outside the quadratic b = c family: count is empirical".to_string());
    }
    assemble(
        "modular-check",
        format,
        vec![
            artifact(Format::Json, pretty(&report)),
            artifact(Format::Csv, zeros_to_csv(&modular)),
        ],
        status,
        notes,
    )
}

/// Orientation classes on the default or a `grid x grid` lattice.
pub fn sense(params: &QuadrinomialParams, grid: Option<usize>, format: Format) -> CommandResult {
    let mut spec = GridSpec::default_for(params);
    if let Some(resolution) = grid {
        spec.columns = resolution;
        spec.rows = resolution;
    }
    let map = sense_map(params, spec)?;
    let summary = json!({
        "critical_radius": map.critical_radius,
        "half_width": spec.x_range.1,
        "resolution": spec.columns,
        "preserving": map.count(OrientationClass::Preserving),
        "reversing": map.count(OrientationClass::Reversing),
        "singular": map.count(OrientationClass::Singular),
    });
    assemble(
        "sense-map",
        format,
        vec![
            artifact(Format::Csv, map.to_csv()),
            artifact(Format::Json, pretty(&summary)),
        ],
        ExitStatus::Success,
        Vec::new(),
    )
}

/// Parses `re` or `re:im` terms separated by commas, ascending powers.
pub fn parse_coefficients(text: &str) -> Result<Vec<Complex64>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|term| {
            let term = term.trim();
            let (re, im) = term.split_once(':').unwrap_or((term, "0"));
            match (re.trim().parse::<f64>(), im.trim().parse::<f64>()) {
                (Ok(re), Ok(im)) => Ok(Complex64::new(re, im)),
                _ => Err(Error::InvalidParams(format!("bad coefficient `{term}`"))),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(b: f64, c: f64, k: u32, n: u32, m: u32) -> QuadrinomialParams {
        QuadrinomialParams::new(b, c, k, n, m).unwrap()
    }

    fn json_of(output: &CommandOutput) -> serde_json::Value {
        let artifact = std::iter::once(&output.primary)
            .chain(&output.companions)
            .find(|a| a.format == Format::Json)
            .unwrap();
        serde_json::from_str(&artifact.contents).unwrap()
    }

    #[test]
    fn critical_circle_outputs() {
        let out = critical_circle(&q(2.0, 2.0, 2, 2, 1), DEFAULT_SAMPLES, Format::Json).unwrap();
        assert_eq!(json_of(&out)["radius"], 0.5);
        let out = critical_circle(&q(2.0, 2.0, 3, 3, 1), DEFAULT_SAMPLES, Format::Csv).unwrap();
        assert_eq!(out.primary.contents.lines().count(), DEFAULT_SAMPLES + 1);
        let err =
            critical_circle(&q(2.0, 0.5, 2, 2, 1), DEFAULT_SAMPLES, Format::Json).unwrap_err();
        assert_eq!(err.status(), ExitStatus::Precondition);
    }

    #[test]
    fn image_outputs() {
        let out = image(&q(2.0, 2.0, 2, 2, 1), DEFAULT_SAMPLES, Format::Json).unwrap();
        let report = json_of(&out);
        assert!(report["max_residual"].as_f64().unwrap() <= 1e-9);
        assert_eq!(report["cusp_count"], 3);
        assert_eq!(out.status, ExitStatus::Success);
        let out = image(&q(2.0, 2.0, 49, 49, 1), DEFAULT_SAMPLES, Format::Svg).unwrap();
        assert_eq!(json_of(&out)["cusp_count"], 50);
        assert_eq!(
            out.primary.contents.matches("fill=\"royalblue\"").count(),
            50
        );
        let err = image(&q(2.0, 3.0, 2, 2, 1), 64, Format::Svg).unwrap_err();
        assert_eq!(err.status(), ExitStatus::Precondition);
    }

    #[test]
    fn zeros_outputs() {
        let out = zeros(
            &ZeroTarget::Quadrinomial(q(2.0, 2.0, 2, 2, 1)),
            None,
            1024,
            Format::Csv,
        )
        .unwrap();
        assert!(out.primary.contents.contains("\n0,0,R,"));
        assert_eq!(json_of(&out)["consistent"], true);
        assert!(!out.notes.is_empty());

        let poly =
            HarmonicPolynomial::new(parse_coefficients("-1,0,1").unwrap(), Vec::new()).unwrap();
        let out = zeros(&ZeroTarget::General(poly), None, 1024, Format::Json).unwrap();
        assert_eq!(json_of(&out)["zero_count"], 2);
    }

    #[test]
    fn bound_outputs() {
        let out = bound(2.0, 2.0, 2, 2, Format::Json).unwrap();
        let radius = json_of(&out)["radius"].as_f64().unwrap();
        assert!((radius - 1.618_033_988_749_895).abs() < 1e-10);
        let out = bound(2.0, 0.5, 3, 2, Format::Json).unwrap();
        assert!(json_of(&out)["advisory"].is_string());
        assert!(matches!(
            bound(2.0, 2.0, 2, 2, Format::Svg),
            Err(CommandError::UnsupportedFormat { .. })
        ));
    }

    #[test]
    fn modular_check_outputs() {
        for b in [2.0, 12.0] {
            let out = modular_check(
                &q(b, b, 2, 2, 1),
                4096,
                None,
                DEFAULT_MODULAR_BAND,
                Format::Json,
            )
            .unwrap();
            let report = json_of(&out);
            assert_eq!(report["modular_root_count"], 0);
            assert!(report["min_modulus_on_circle"].as_f64().unwrap() > 0.0);
            assert_eq!(out.status, ExitStatus::Success);
        }
        let out = modular_check(
            &q(2.0, 3.0, 3, 3, 1),
            4096,
            None,
            DEFAULT_MODULAR_BAND,
            Format::Json,
        )
        .unwrap();
        assert!(json_of(&out)["modular_root_count"].is_u64());
        assert!(!out.notes.is_empty());
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!(
            parse_coefficients("1, -2:0.5").unwrap(),
            vec![Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.5)]
        );
        assert!(parse_coefficients("").unwrap().is_empty());
        assert!(parse_coefficients("1,x").is_err());
    }
}
