//! Critical radius of Q(z) = b z^k + conj(z)^k + b conj(z) + z for a few
//! degrees, and the dilatation modulus on the circle.

use harmonic_locus::critical::{critical_radius, sample_circle};
use harmonic_locus::QuadrinomialParams;

fn main() -> harmonic_locus::Result<()> {
    let b = 2.0;
    for k in 2..=6 {
        let params = QuadrinomialParams::symmetric(b, k)?;
        let circle = critical_radius(&params)?;
        let poly = params.polynomial();
        let worst = sample_circle(circle.radius, 256)?
            .points()
            .map(|z| (poly.dilatation(z).map(|w| w.norm()).unwrap_or(f64::NAN) - 1.0).abs())
            .fold(0.0, f64::max);
        println!(
            "k = {k}: M = {:.12}, max ||omega| - 1| = {worst:.1e}",
            circle.radius
        );
    }
    Ok(())
}
