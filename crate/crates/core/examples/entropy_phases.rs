//! Half-chain entanglement entropy across the three regimes of t.

use motzkin_rainbow::arith::Deformation;
use motzkin_rainbow::observables::{entropy_sweep, write_sweep_csv, CutRule, SweepPoint};
use motzkin_rainbow::state::entanglement_entropy;
use motzkin_rainbow::walks::Model;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("j=2 half-chain entropy (nats):");
    println!("{:>4} {:>10} {:>10} {:>10}", "2n", "t=0.5", "t=1", "t=10");
    for n in [2, 4, 8, 16, 32, 64] {
        let s: Vec<f64> = [Deformation::Float(0.5), Deformation::exact(1, 1), Deformation::exact(10, 1)]
            .iter()
            .map(|t| entanglement_entropy(n, 2, Model::Motzkin, t, n))
            .collect::<Result<_, _>>()?;
        println!("{:>4} {:>10.5} {:>10.5} {:>10.5}   n ln 2 = {:.5}", 2 * n, s[0], s[1], s[2], n as f64 * 2f64.ln());
    }

    println!("\nsweep as CSV:");
    let grid: Vec<SweepPoint> = [0.25, 1.0, 4.0]
        .iter()
        .map(|&t| SweepPoint { model: Model::Fredkin, n: 6, colors: 2, t: Deformation::Float(t) })
        .collect();
    write_sweep_csv(&entropy_sweep(&grid, CutRule::Half), std::io::stdout())?;
    Ok(())
}
