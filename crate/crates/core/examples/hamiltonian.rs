//! Build the deformed Hamiltonian, find its kernel and check that the
//! ground state annihilates every term.

use motzkin_rainbow::arith::Deformation;
use motzkin_rainbow::hamiltonian::{
    build_hamiltonian, ground_energy_and_kernel, spectral_gap, state_vector,
    verify_frustration_free,
};
use motzkin_rainbow::state::build_ground_state;
use motzkin_rainbow::walks::Model;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, j) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        for t in [Deformation::Float(0.5), Deformation::exact(1, 1), Deformation::exact(3, 1)] {
            let h = build_hamiltonian(n, j, &t)?;
            let g = ground_energy_and_kernel(&h)?;
            let gap = spectral_gap(&h)?;
            let state = build_ground_state(n, j, Model::Motzkin, t.clone(), true)?;
            let report = verify_frustration_free(&h, &state_vector(&h, &state)?)?;
            println!(
                "n={n} j={j} t={t:<4} dim {:>5} nnz {:>6}  lambda_min {:+.2e}  kernel {}  gap {gap:.5}  max residual {:.1e}",
                h.dim(),
                h.nnz(),
                g.lambda_min,
                g.kernel_dim,
                report.max_residual
            );
        }
    }
    Ok(())
}
