//! Classical phase diagram: zone, fixed points and their stability.

use spinlab::classical::classify_zone;
use spinlab::lmg::LmgParams;

fn main() -> spinlab::Result<()> {
    for (gx, gy, h) in [(0.5, 1.0 / 3.0, 1.0), (2.0, 0.5, 1.0), (5.0, -3.0, 1.0), (5.0, 3.0, 1.0)] {
        let report = classify_zone(&LmgParams::new(gx, gy, h)?)?;
        println!("{} -> zone {} ({})", report.params, report.zone.as_str(), report.sub_case.as_str());
        for fp in report.fixed_points.iter().filter(|fp| fp.exists) {
            println!(
                "  {:<5} h0 = {:>9.5} {}",
                fp.label.as_str(),
                fp.h0.unwrap_or(f64::NAN),
                if fp.stable { "stable" } else { "unstable" }
            );
        }
        println!("  transition energies: {:?}", report.esqpt_energies);
    }
    Ok(())
}
