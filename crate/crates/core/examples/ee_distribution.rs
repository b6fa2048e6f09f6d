//! Entanglement across the spectrum: density of states, smoothed entropy
//! profile and its dips near the excited-state transitions.

use spinlab::analysis::{dos_histogram, ee_distribution, entropy_dips, SectorChoice};
use spinlab::classical::classify_zone;
use spinlab::lmg::LmgParams;

fn main() -> spinlab::Result<()> {
    let params = LmgParams::new(2.0, 0.5, 1.0)?;
    let profile = ee_distribution(&params, 512, 0.5, SectorChoice::Positive)?;
    let dos = dos_histogram(&profile.scaled_energies, 51)?;
    let (lo, hi) = dos.bin(dos.mode_bin());
    println!("{} states, DOS peak in [{lo:.3}, {hi:.3}]", profile.len());
    let report = classify_zone(&params)?;
    println!("zone {}, predicted transitions at {:?}", report.zone.as_str(), report.esqpt_energies);
    for i in entropy_dips(&profile)? {
        println!("dip at E/j = {:.4}, S = {:.4}", profile.scaled_energies[i], profile.entropies[i]);
    }
    Ok(())
}
