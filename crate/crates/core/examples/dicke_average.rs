//! Average bipartite entanglement over the Dicke basis, compared with the
//! Page-like value 1/2 of the maximal entropy.

use spinlab::analysis::{dicke_average, fixed_intercept_fit, intercept_scan};

fn main() -> spinlab::Result<()> {
    let mut points = Vec::new();
    println!("{:>7} {:>12} {:>12} {:>12}", "N", "avg S", "S_max", "avg/S_max");
    for n in [10_000, 20_000, 30_000, 40_000, 50_000, 60_000] {
        let s = dicke_average(n, 0.5)?;
        println!("{n:>7} {:>12.6} {:>12.6} {:>12.8}", s.avg_ee, s.s_max, s.normalized);
        points.push((1.0 / s.s_max, s.normalized));
    }
    let fit = fixed_intercept_fit(&points, 0.5)?;
    println!("fit with a = 0.5: b = {:.6}, 1-R^2 = {:.3e}", fit.slope_b, fit.one_minus_r2);
    let scan = intercept_scan(&points, 0.48, 0.52, 0.001)?;
    println!("best intercept in scan: {:.3}", scan.best_fit().intercept_a);
    Ok(())
}
