//! Exact spectrum of the LMG Hamiltonian in both parity sectors, and the
//! isotropic closed form.

use spinlab::lmg::{build_parity_block, isotropic_spectrum, LmgParams};
use spinlab::symspace::Parity;

fn main() -> spinlab::Result<()> {
    let n = 64;
    let params = LmgParams::new(5.0, -3.0, 1.0)?;
    for sector in [Parity::Positive, Parity::Negative] {
        let block = build_parity_block(&params, n, sector)?;
        let dec = block.solve(false)?;
        let j = n as f64 / 2.0;
        let low: Vec<String> = dec.values.iter().take(4).map(|e| format!("{:.5}", e / j)).collect();
        println!("{params} N={n} {} sector (dim {}): lowest E/j = [{}]", sector.as_str(), block.dim(), low.join(", "));
    }

    let iso = LmgParams::new(1.0, 1.0, 1.0)?;
    let mut numeric: Vec<f64> = [Parity::Positive, Parity::Negative]
        .iter()
        .flat_map(|&s| build_parity_block(&iso, n, s).unwrap().solve(false).unwrap().values)
        .collect();
    numeric.sort_by(f64::total_cmp);
    let closed = isotropic_spectrum(1.0, 1.0, n)?;
    let diff = numeric
        .iter()
        .zip(&closed)
        .map(|(a, (b, _))| (a - b).abs())
        .fold(0.0, f64::max);
    println!("isotropic N={n}: max |numeric - closed form| = {diff:.2e}");
    Ok(())
}
