//! Contract the tile network and compare it with the direct construction.

use motzkin_rainbow::arith::Deformation;
use motzkin_rainbow::network::{contract, contract_symbolic, walk_to_tiling, DEFAULT_CONTRACT_CAP};
use motzkin_rainbow::state::{build_ground_state, fidelity};
use motzkin_rainbow::walks::{Model, Walk};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let symbolic = contract_symbolic(2, 2, Model::Motzkin, DEFAULT_CONTRACT_CAP)?;
    println!("symbolic amplitudes, n=2, j=2 (x = sqrt t):");
    for (w, poly) in &symbolic {
        println!("  {w:<12} {poly}");
    }

    let w = Walk::parse("U1 U2 D2 D1", Model::Motzkin, 2)?;
    let tiling = walk_to_tiling(&w)?;
    println!("\n{w}: tiling weight {} = 2 * area {}", tiling.weight(), w.area()?);

    let t = Deformation::exact(3, 2);
    for model in [Model::Motzkin, Model::Fredkin] {
        let a = contract(3, 2, model, &t, t.mode())?;
        let b = build_ground_state(3, 2, model, t.clone(), true)?;
        println!("{model} n=3: fidelity(contracted, direct) = {}", fidelity(&a, &b)?);
    }
    Ok(())
}
