//! Entanglement of the superpositions (|j,m> +/- |j,-m>)/sqrt(2).

use spinlab::entangle::{
    one_qubit_rdm, rdm_symmetric_bipartition, superposition_ee_halfcut, von_neumann_entropy,
    SuperpositionSign,
};
use spinlab::symspace::{Bipartition, DickeIndex, SymmetricState};

fn main() -> spinlab::Result<()> {
    let n = 40;
    let cut = Bipartition::half(n)?;
    println!("{:>3} {:>10} {:>10} {:>10}", "m", "RDM", "closed", "1 qubit");
    for m in [2, 8, 12, 16, 20] {
        let state = SymmetricState::conjugate_superposition(n, m, 1.0)?;
        let generic = von_neumann_entropy(&rdm_symmetric_bipartition(&state, cut)?)?.bits();
        let closed = if 2 * m > n as i64 / 2 {
            let idx = DickeIndex::from_magnetization(n, m)?;
            format!("{:.6}", superposition_ee_halfcut(idx, cut, SuperpositionSign::Plus)?.bits())
        } else {
            "-".to_string()
        };
        let single = one_qubit_rdm(&state)?.entropy().bits();
        println!("{m:>3} {generic:>10.6} {closed:>10} {single:>10.6}");
    }
    Ok(())
}
