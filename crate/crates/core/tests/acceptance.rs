//! Acceptance suite. One line per criterion; exits non-zero if any fails.

use std::f64::consts::TAU;
use std::fs;
use std::panic;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::Ratio;

use harmonic_locus::bounds::{
    general_bound_polynomial, inclusion_radius_general, positive_root_after_deflation,
    quadrinomial_disk, synthetic_division,
};
use harmonic_locus::critical::critical_radius;
use harmonic_locus::hypocycloid::{cusp_report, fit_report, image_direct, ImageModel};
use harmonic_locus::zeros::{
    circle_contour, circle_min_modulus, counting_report, find_quadrinomial_zeros, find_zeros,
    modular_roots, ZeroRecord, DEFAULT_GRID_RESOLUTION,
};
use harmonic_locus::QuadrinomialParams;

// min |Q_{b,b}(e^(i theta) / 2)|, frozen from a 2e5-sample scan polished by
// golden-section search in an independent double-precision script.
const CIRCLE_MINIMA: [(f64, f64); 4] = [
    (1.1, 0.029483491485627896),
    (2.0, 0.28785869186252916),
    (5.0, 1.0825669206363508),
    (12.0, 2.855997689223748),
];

const QUADRATIC_B: [f64; 4] = [1.1, 2.0, 5.0, 12.0];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn family() -> Vec<QuadrinomialParams> {
    let mut set: Vec<_> = QUADRATIC_B
        .iter()
        .map(|&b| QuadrinomialParams::symmetric(b, 2).unwrap())
        .collect();
    set.push(QuadrinomialParams::new(2.0, 3.0, 3, 2, 1).unwrap());
    set.push(QuadrinomialParams::new(3.0, 2.0, 3, 2, 1).unwrap());
    set
}

fn search(params: &QuadrinomialParams) -> (f64, Vec<ZeroRecord>) {
    let radius = quadrinomial_disk(params).radius;
    let zeros = find_quadrinomial_zeros(params, 2.0 * radius, DEFAULT_GRID_RESOLUTION).unwrap();
    (radius, zeros)
}

fn critical_radius_criterion() -> Outcome {
    let mut worst_radius = 0.0f64;
    for b in [1.1, 2.0, 12.0] {
        let params = QuadrinomialParams::symmetric(b, 2).unwrap();
        worst_radius = worst_radius.max((critical_radius(&params).unwrap().radius - 0.5).abs());
    }
    let mut worst_modulus = 0.0f64;
    for b in [1.1, 2.0, 12.0] {
        for k in 3..=10 {
            let params = QuadrinomialParams::symmetric(b, k).unwrap();
            let poly = params.polynomial();
            let radius = critical_radius(&params).unwrap().radius;
            for j in 0..1024 {
                let z = Complex64::from_polar(radius, TAU * j as f64 / 1024.0);
                let omega = poly.dilatation(z).unwrap();
                worst_modulus = worst_modulus.max((omega.norm() - 1.0).abs());
            }
        }
    }
    check(
        worst_radius <= 1e-12 && worst_modulus <= 1e-10,
        format!("|M - 1/2| <= {worst_radius:.1e}, ||omega| - 1| <= {worst_modulus:.1e}"),
    )
}

fn hypocycloid_criterion() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for b in [2.0, 12.0] {
        for k in [2, 3, 49] {
            let params = QuadrinomialParams::symmetric(b, k).unwrap();
            let fit = fit_report(&params, 4096).unwrap();
            let radius = image_direct(&params, 4096).unwrap().max_modulus();
            let bound = 1e-9 * (1.0 + radius);
            worst = worst.max(fit.max_residual / bound);
            let cusps = cusp_report(&ImageModel::from_params(&params).unwrap());
            let expected = Ratio::new(k as u64 + 1, k as u64);
            if fit.max_residual > bound {
                failures.push(format!("b={b} k={k}: residual {:.2e}", fit.max_residual));
            }
            if fit.ratio() != expected {
                failures.push(format!("b={b} k={k}: ratio {}", fit.ratio()));
            }
            if cusps.cusp_count != k as usize + 1 || !cusps.is_verified() {
                failures.push(format!("b={b} k={k}: cusps {cusps:?}"));
            }
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!("6 members, worst residual {worst:.1e} of bound, R/r = (k+1)/k, k+1 cusps")
        } else {
            failures.join("; ")
        },
    )
}

fn zero_free_curve_criterion() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (b, golden) in CIRCLE_MINIMA {
        let params = QuadrinomialParams::symmetric(b, 2).unwrap();
        let minimum = circle_min_modulus(&params, 4096).unwrap().modulus;
        let (_, zeros) = search(&params);
        let on_circle = modular_roots(&params, &zeros, 1e-6).unwrap();
        worst = worst.max((minimum - golden).abs());
        if minimum < 1e-3 || (minimum - golden).abs() > 1e-6 || !on_circle.is_empty() {
            failures.push(format!(
                "b={b}: min {minimum} (golden {golden}), {} modular roots",
                on_circle.len()
            ));
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!("4 members, |min - golden| <= {worst:.1e}, no modular roots")
        } else {
            failures.join("; ")
        },
    )
}

fn inclusion_criterion() -> Outcome {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for params in family() {
        let (radius, zeros) = search(&params);
        let k = params.k() as usize;
        let farthest = zeros.iter().map(|z| z.location.norm()).fold(0.0, f64::max);
        counts.push(zeros.len().to_string());
        if farthest > radius + 1e-8 {
            failures.push(format!("{params:?}: |z| = {farthest} > {radius}"));
        }
        if zeros.len() > k * k || (params.is_quadratic() && zeros.len() > 4) {
            failures.push(format!("{params:?}: {} zeros", zeros.len()));
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!("zero counts [{}] inside their disks", counts.join(", "))
        } else {
            failures.join("; ")
        },
    )
}

fn argument_principle_criterion() -> Outcome {
    let mut failures = Vec::new();
    let mut windings = Vec::new();
    for params in family() {
        let (radius, zeros) = search(&params);
        let contour = circle_contour(2.0 * radius, 4096).unwrap();
        let report = counting_report(&params.polynomial(), &contour, &zeros).unwrap();
        windings.push(report.winding.to_string());
        if report.n_singular != 0 || report.consistent != Some(true) {
            failures.push(format!("{params:?}: {report:?}"));
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!("winding [{}] = N+ - N-", windings.join(", "))
        } else {
            failures.join("; ")
        },
    )
}

fn bound_solver_criterion() -> Outcome {
    let golden = positive_root_after_deflation(&[1.0, -2.0, 0.0, 1.0]).unwrap();
    let golden_error = (golden - (1.0 + 5f64.sqrt()) / 2.0).abs();
    let q22 = QuadrinomialParams::symmetric(2.0, 2).unwrap().polynomial();
    let general = inclusion_radius_general(&q22).unwrap().radius;
    let general_error = (general - (1.5 + 8.25f64.sqrt()) / 2.0).abs();
    let mut remainder = 0.0f64;
    for m in [0.5, 1.0, 1.5, 10.0] {
        for degree in 1..=8 {
            let (_, r) = synthetic_division(&general_bound_polynomial(m, degree), 1.0);
            remainder = remainder.max(r.abs());
        }
    }
    check(
        golden_error <= 1e-10 && general_error <= 1e-10 && remainder <= 1e-12,
        format!(
            "golden root err {golden_error:.1e}, Q_2,2 radius err {general_error:.1e}, remainder {remainder:.1e}"
        ),
    )
}

// Dense-grid oracle: evaluates Q from its formula, keeps the 8-neighbour
// local minima of |Q| on a 2048^2 lattice and polishes them with a
// finite-difference Newton iteration.
fn q_formula(b: f64, z: Complex64) -> Complex64 {
    let w = z.conj();
    b * z * z + w * w + b * w + z
}

fn polish(b: f64, mut z: Complex64) -> Option<Complex64> {
    let h = 1e-7;
    for _ in 0..60 {
        let f = q_formula(b, z);
        let fx = (q_formula(b, z + h) - q_formula(b, z - h)) / (2.0 * h);
        let fy = (q_formula(b, z + Complex64::i() * h) - q_formula(b, z - Complex64::i() * h))
            / (2.0 * h);
        let det = fx.re * fy.im - fy.re * fx.im;
        if det.abs() < 1e-14 {
            return None;
        }
        let dx = (-f.re * fy.im + f.im * fy.re) / det;
        let dy = (-fx.re * f.im + fx.im * f.re) / det;
        z += Complex64::new(dx, dy);
        if dx.hypot(dy) < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    (q_formula(b, z).norm() < 1e-11 * (1.0 + b)).then_some(z)
}

fn oracle_zeros(b: f64, half_width: f64) -> Vec<Complex64> {
    const N: usize = 2048;
    let node = |i: usize| -half_width + 2.0 * half_width * i as f64 / (N - 1) as f64;
    let modulus: Vec<f64> = (0..N * N)
        .map(|idx| q_formula(b, Complex64::new(node(idx % N), node(idx / N))).norm())
        .collect();
    let mut found: Vec<Complex64> = Vec::new();
    for row in 1..N - 1 {
        for col in 1..N - 1 {
            let here = modulus[row * N + col];
            let is_min = (-1isize..=1).all(|dr| {
                (-1isize..=1).all(|dc| {
                    let other =
                        modulus[(row as isize + dr) as usize * N + (col as isize + dc) as usize];
                    (dr == 0 && dc == 0) || here <= other
                })
            });
            if !is_min {
                continue;
            }
            if let Some(z) = polish(b, Complex64::new(node(col), node(row))) {
                if z.norm() <= half_width && found.iter().all(|w| (w - z).norm() > 1e-7) {
                    found.push(z);
                }
            }
        }
    }
    found
}

fn oracle_criterion() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for b in [2.0, 12.0] {
        let params = QuadrinomialParams::symmetric(b, 2).unwrap();
        let radius = quadrinomial_disk(&params).radius;
        let oracle = oracle_zeros(b, 1.1 * radius);
        let found =
            find_zeros(&params.polynomial(), 1.1 * radius, DEFAULT_GRID_RESOLUTION).unwrap();
        if oracle.len() != found.len() {
            failures.push(format!(
                "b={b}: oracle {} vs find_zeros {}",
                oracle.len(),
                found.len()
            ));
            continue;
        }
        for z in &oracle {
            let nearest = found
                .iter()
                .map(|r| (r.location - z).norm())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
            if nearest > 1e-6 {
                failures.push(format!("b={b}: oracle zero {z} unmatched ({nearest:.1e})"));
            }
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!("Q_2,2 and Q_12,12 match the dense oracle, worst distance {worst:.1e}")
        } else {
            failures.join("; ")
        },
    )
}

fn run_cli(args: &[&str], dir: &Path) -> (Vec<u8>, Vec<(String, Vec<u8>)>) {
    fs::create_dir_all(dir).unwrap();
    let stdout = Command::new(env!("CARGO_BIN_EXE_harmonic-locus"))
        .args(args)
        .output()
        .unwrap()
        .stdout;
    let output = dir.join("out.dat");
    Command::new(env!("CARGO_BIN_EXE_harmonic-locus"))
        .args(args)
        .arg("--output")
        .arg(&output)
        .output()
        .unwrap();
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|entry| {
            let path = entry.unwrap().path();
            (
                path.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&path).unwrap(),
            )
        })
        .collect();
    files.sort();
    (stdout, files)
}

fn determinism_criterion() -> Outcome {
    let invocations: [&[&str]; 12] = [
        &["critical-circle", "--b", "2", "--k", "3"],
        &["critical-circle", "--b", "2", "--k", "3", "--format", "csv"],
        &["image", "--b", "2", "--k", "49", "--format", "json"],
        &["image", "--b", "12", "--k", "3", "--format", "csv"],
        &["zeros", "--b", "2", "--c", "3", "--k", "3", "--n", "2"],
        &["zeros", "--b", "12", "--k", "2", "--format", "json"],
        &["zeros", "--h=-1,0,1", "--g", "0,0.5"],
        &["bound", "--b", "1", "--c", "3", "--k", "3", "--n", "1"],
        &["modular-check", "--b", "2", "--k", "2"],
        &["modular-check", "--b", "5", "--k", "2", "--format", "csv"],
        &["sense-map", "--b", "2", "--k", "2", "--grid", "128"],
        &[
            "sense-map",
            "--b",
            "2",
            "--c",
            "3",
            "--k",
            "3",
            "--n",
            "2",
            "--format",
            "json",
        ],
    ];
    let root = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();
    let mut compared = 0;
    for (i, args) in invocations.iter().enumerate() {
        let first = run_cli(args, &root.path().join(format!("{i}a")));
        let second = run_cli(args, &root.path().join(format!("{i}b")));
        if first.0.is_empty() {
            failures.push(format!("`{}` printed nothing", args.join(" ")));
        }
        if first != second {
            failures.push(format!("`{}` differs between runs", args.join(" ")));
        }
        compared += 1 + first.1.len();
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{} invocations, {compared} outputs byte-identical",
                invocations.len()
            )
        } else {
            failures.join("; ")
        },
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("critical radius", critical_radius_criterion),
        ("hypocycloid image", hypocycloid_criterion),
        ("zero-free critical circle", zero_free_curve_criterion),
        ("inclusion disk and zero caps", inclusion_criterion),
        ("argument principle", argument_principle_criterion),
        ("bound solver", bound_solver_criterion),
        ("dense-grid oracle", oracle_criterion),
        ("CLI determinism", determinism_criterion),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (index, (name, criterion)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(criterion).unwrap_or_else(|e| {
            let message = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", index + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", index + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
