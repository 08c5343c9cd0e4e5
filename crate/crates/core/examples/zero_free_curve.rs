//! The critical circle of Q_{b,b} (k = n = 2) carries no zeros: the minimum
//! of |Q| on it stays away from zero.

use harmonic_locus::bounds::quadrinomial_disk;
use harmonic_locus::zeros::{circle_min_modulus, find_quadrinomial_zeros, modular_roots};
use harmonic_locus::QuadrinomialParams;

fn main() -> harmonic_locus::Result<()> {
    for b in [1.01, 1.1, 2.0, 5.0, 12.0] {
        let params = QuadrinomialParams::symmetric(b, 2)?;
        let minimum = circle_min_modulus(&params, 4096)?;
        let zeros = find_quadrinomial_zeros(&params, 2.0 * quadrinomial_disk(&params).radius, 48)?;
        let on_circle = modular_roots(&params, &zeros, 1e-6)?;
        println!(
            "b = {b:>5}: min |Q| = {:.12} at theta = {:.6}, {} zeros on the circle",
            minimum.modulus,
            minimum.theta,
            on_circle.len()
        );
    }
    Ok(())
}
