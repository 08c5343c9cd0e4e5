//! Orientation classes on a coarse lattice, drawn as characters.

use harmonic_locus::critical::{sense_map, GridSpec};
use harmonic_locus::{OrientationClass, QuadrinomialParams};

fn main() -> harmonic_locus::Result<()> {
    let params = QuadrinomialParams::symmetric(2.0, 3)?;
    let map = sense_map(&params, GridSpec::square(1.2, 41))?;
    println!(
        "critical radius {:.6}; '+' preserving, '.' reversing",
        map.critical_radius
    );
    for row in (0..map.grid.rows).rev() {
        let line: String = (0..map.grid.columns)
            .map(|column| match map.get(row, column) {
                OrientationClass::Preserving => '+',
                OrientationClass::Reversing => '.',
                OrientationClass::Singular => 'o',
            })
            .collect();
        println!("{line}");
    }
    Ok(())
}
