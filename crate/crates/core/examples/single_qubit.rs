//! One-qubit entanglement of Dicke states: the closed form and its average,
//! which tends to log2(e)/2.

use spinlab::analysis::average_ee;
use spinlab::entangle::{one_qubit_entropy_closed_form, one_qubit_rdm};
use spinlab::symspace::{DickeIndex, SymmetricState};

fn main() -> spinlab::Result<()> {
    let n = 20;
    for k in [0, 1, 5, 10] {
        let idx = DickeIndex::new(n, k)?;
        let rdm = one_qubit_rdm(&SymmetricState::dicke(idx))?;
        println!(
            "N={n} k={k:>2}: closed form {:.6}, from <J> {:.6}",
            one_qubit_entropy_closed_form(idx).bits(),
            rdm.entropy().bits()
        );
    }
    let target = std::f64::consts::E.log2() / 2.0;
    for n in [100, 1_000, 10_000] {
        let values: Vec<f64> = (0..=n)
            .map(|k| one_qubit_entropy_closed_form(DickeIndex::new(n, k).unwrap()).bits())
            .collect();
        let avg = average_ee(&values)?;
        println!("N={n:>6}: average {avg:.6} (limit {target:.6})");
    }
    Ok(())
}
