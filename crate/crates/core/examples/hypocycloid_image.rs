//! Image of the critical circle under Q_{b,b} and its hypocycloid model.
//! The gray curve is the hypocycloid itself; the image is its vertical
//! squeeze by lambda. Writes `image_b2_k3.svg` to the working directory.

use harmonic_locus::hypocycloid::{cusp_report, fit_report, image_direct, ImageModel};
use harmonic_locus::svg::Plot;
use harmonic_locus::QuadrinomialParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = QuadrinomialParams::symmetric(2.0, 3)?;
    let model = ImageModel::from_params(&params)?;
    let fit = fit_report(&params, 4096)?;
    let cusps = cusp_report(&model);
    println!(
        "R = {}, r = {}, R/r = {}",
        fit.outer_radius,
        fit.rolling_radius,
        fit.ratio()
    );
    println!(
        "lambda = {}, max residual = {:.2e}",
        fit.lambda, fit.max_residual
    );
    println!(
        "{} cusps, verified: {}",
        cusps.cusp_count,
        cusps.is_verified()
    );

    let spec = model.hypocycloid();
    let (lo, hi) = spec.trace_range();
    let rolled: Vec<_> = (0..2048)
        .map(|j| spec.point(lo + (hi - lo) * j as f64 / 2048.0))
        .collect();
    let corners: Vec<_> = cusps
        .cusp_parameters
        .iter()
        .map(|&t| model.point(t))
        .collect();
    let mut plot = Plot::new()
        .title("image of the critical circle")
        .polyline(rolled, "lightgray", true, true)
        .polyline(image_direct(&params, 2048)?.points(), "black", false, true);
    for corner in corners {
        plot = plot.marker(corner, "crimson");
    }
    std::fs::write("image_b2_k3.svg", plot.render())?;
    println!("wrote image_b2_k3.svg");
    Ok(())
}
