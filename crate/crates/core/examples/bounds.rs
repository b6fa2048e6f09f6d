//! Analytic lower and upper bounds on the Dicke-basis average entropy.

use spinlab::analysis::{dicke_average, dicke_average_lower_bound, dicke_average_upper_bound};

fn main() -> spinlab::Result<()> {
    for n in [96, 1_000, 10_000] {
        for p in [0.125, 0.25, 0.5] {
            let avg = dicke_average(n, p)?.avg_ee;
            let lo = dicke_average_lower_bound(n, p)?;
            let hi = dicke_average_upper_bound(n, p)?;
            println!("N={n:>6} p={p:<5} {lo:.5} < {avg:.5} < {hi:.5}");
        }
    }
    Ok(())
}
