//! Fidelity of the low-area and high-area truncations against the full state.

use motzkin_rainbow::arith::Deformation;
use motzkin_rainbow::observables::{truncation_fidelity, Window};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (window, ts) in [
        (Window::SmallT, [0.2, 0.1, 0.05, 0.01]),
        (Window::LargeT, [5.0, 10.0, 20.0, 100.0]),
    ] {
        println!("{window}:");
        for t in ts {
            let f = truncation_fidelity(3, 2, &Deformation::Float(t), window)?;
            println!("  t={t:<6} fidelity {f:.8}  infidelity {:.2e}", 1.0 - f);
        }
    }
    Ok(())
}
