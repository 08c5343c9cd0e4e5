//! Zero-inclusion radii from the deflated bound polynomials.

use harmonic_locus::bounds::{inclusion_radius_general, inclusion_radius_quadrinomial};
use harmonic_locus::QuadrinomialParams;

fn main() -> harmonic_locus::Result<()> {
    for (b, c, k, n) in [
        (1.0, 3.0, 3, 1),
        (2.0, 3.0, 3, 2),
        (3.0, 2.0, 3, 2),
        (2.0, 0.5, 3, 2),
    ] {
        let disk = inclusion_radius_quadrinomial(b, c, k, n)?;
        print!(
            "b = {b}, c = {c}, k = {k}, n = {n}: radius {:.12}",
            disk.radius
        );
        match disk.advisory {
            Some(note) => println!(" ({note})"),
            None => println!(),
        }
    }
    for b in [1.1, 2.0, 12.0] {
        let poly = QuadrinomialParams::symmetric(b, 2)?.polynomial();
        let disk = inclusion_radius_general(&poly)?;
        println!("general bound for Q_{{{b},{b}}}: {:.12}", disk.radius);
    }
    Ok(())
}
