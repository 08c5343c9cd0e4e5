//! Winding number of f along circles of growing radius against the signed
//! count of enclosed zeros, for a harmonic polynomial given by coefficients.

use harmonic_locus::zeros::{circle_contour, find_zeros, winding_number};
use harmonic_locus::HarmonicPolynomial;

fn main() -> harmonic_locus::Result<()> {
    // f(z) = z^3 - 1 + conj(z)/2
    let poly = HarmonicPolynomial::from_real(&[-1.0, 0.0, 0.0, 1.0], &[0.0, 0.5])?;
    let zeros = find_zeros(&poly, 3.0, 48)?;
    for z in &zeros {
        println!(
            "zero {:+.10} {:+.10}i  {}",
            z.location.re,
            z.location.im,
            z.orientation.code()
        );
    }
    for radius in [0.25, 0.5, 0.9, 1.5, 3.0] {
        let inside: i64 = zeros
            .iter()
            .filter(|z| z.location.norm() < radius)
            .map(|z| match z.orientation.code() {
                'P' => 1,
                'R' => -1,
                _ => 0,
            })
            .sum();
        match winding_number(&poly, &circle_contour(radius, 1024)?) {
            Ok(w) => println!("r = {radius}: winding {}, signed count {inside}", w.value),
            Err(e) => println!("r = {radius}: {e}"),
        }
    }
    Ok(())
}
