//! The ratio c0(p) = avg S / S_max across subsystem fractions.

use spinlab::analysis::{c0_profile, Basis, SectorChoice};
use spinlab::lmg::LmgParams;

fn main() -> spinlab::Result<()> {
    let fractions = [0.125, 0.25, 0.375, 0.5];
    let bases = [
        (Basis::Dicke, 4096),
        (
            Basis::Lmg { params: LmgParams::new(5.0, -3.0, 1.0)?, sector: SectorChoice::Positive },
            256,
        ),
    ];
    for (basis, n) in bases {
        for e in c0_profile(basis, n, &fractions)? {
            println!("{basis} N={n} p={:<5} c0 = {:.5}", e.fraction, e.c0);
        }
    }
    Ok(())
}
