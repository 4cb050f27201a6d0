//! Export the network as a matrix product state and evaluate it at a rational t.

use motzkin_rainbow::network::{contract_to_mps, evaluate_exact, DEFAULT_MPS_CAP};
use motzkin_rainbow::walks::Model;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, j) in [(2, 2), (3, 1), (3, 2), (4, 2)] {
        let mps = contract_to_mps(n, j, Model::Motzkin, DEFAULT_MPS_CAP)?;
        println!("n={n} j={j} bond dims {:?}", mps.bond_dims());
    }

    let mps = contract_to_mps(2, 1, Model::Motzkin, DEFAULT_MPS_CAP)?;
    let t = BigRational::new(1.into(), 4.into());
    println!("\nn=2, j=1 amplitudes at t=1/4:");
    for (w, poly) in mps.expand()? {
        match evaluate_exact(&poly, &t) {
            Some(v) => println!("  {w:<10} {poly:<6} = {v}"),
            None => println!("  {w:<10} {poly:<6} (irrational)"),
        }
    }
    Ok(())
}
