//! Normalized average entanglement of LMG eigenstates versus 1/S_max with a
//! fixed-intercept fit and an intercept scan.

use spinlab::analysis::{intercept_scan, lmg_average, scaling_points, SectorChoice};
use spinlab::lmg::LmgParams;

fn main() -> spinlab::Result<()> {
    let params = LmgParams::new(5.0, -3.0, 1.0)?;
    let samples = [64, 128, 256, 512]
        .iter()
        .map(|&n| lmg_average(&params, n, 0.5, SectorChoice::Positive))
        .collect::<spinlab::Result<Vec<_>>>()?;
    for s in &samples {
        println!("N={:>4}: avg/S_max = {:.6}", s.n_qubits, s.normalized);
    }
    let scan = intercept_scan(&scaling_points(&samples), 0.48, 0.52, 0.001)?;
    let best = scan.best_fit();
    println!(
        "best intercept {:.3}: slope {:.4}, 1-R^2 {:.3e}",
        best.intercept_a, best.slope_b, best.one_minus_r2
    );
    Ok(())
}
