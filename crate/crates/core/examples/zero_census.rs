//! Zeros of quadrinomials with their orientation class and the signed count.

use harmonic_locus::bounds::quadrinomial_disk;
use harmonic_locus::zeros::{circle_contour, counting_report, find_quadrinomial_zeros};
use harmonic_locus::QuadrinomialParams;

fn main() -> harmonic_locus::Result<()> {
    let members = [
        QuadrinomialParams::symmetric(2.0, 2)?,
        QuadrinomialParams::symmetric(12.0, 2)?,
        QuadrinomialParams::new(2.0, 3.0, 3, 2, 1)?,
        QuadrinomialParams::new(3.0, 2.0, 3, 2, 1)?,
    ];
    for params in members {
        let radius = 2.0 * quadrinomial_disk(&params).radius;
        let zeros = find_quadrinomial_zeros(&params, radius, 48)?;
        println!(
            "b = {}, c = {}, (k, n, m) = ({}, {}, {})",
            params.b(),
            params.c(),
            params.k(),
            params.n(),
            params.m()
        );
        for z in &zeros {
            println!(
                "  {:>+.10} {:>+.10}i  {}  |Q| = {:.1e}",
                z.location.re,
                z.location.im,
                z.orientation.code(),
                z.residual
            );
        }
        let report = counting_report(&params.polynomial(), &circle_contour(radius, 4096)?, &zeros)?;
        println!(
            "  winding {} = {} - {}",
            report.winding, report.n_preserving, report.n_reversing
        );
    }
    Ok(())
}
