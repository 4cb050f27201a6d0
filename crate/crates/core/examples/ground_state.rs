//! Build the area-weighted ground state exactly and in floating point.

use motzkin_rainbow::arith::Deformation;
use motzkin_rainbow::state::build_ground_state;
use motzkin_rainbow::walks::Model;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let exact = build_ground_state(2, 1, Model::Motzkin, Deformation::exact(2, 1), true)?;
    println!("n=2, j=1, t=2 (exact), norm^2 = {}", exact.norm_sq());
    for (w, a) in exact.iter() {
        println!(
            "  {w:<12} amplitude {a}  probability {}",
            exact.probability_exact(w).unwrap()
        );
    }

    let float = build_ground_state(3, 2, Model::Fredkin, Deformation::Float(0.5), true)?;
    println!("\nFredkin n=3, j=2, t=0.5: {} walks", float.len());
    let mut top: Vec<_> = float.walks().map(|w| (float.probability(w), w.clone())).collect();
    top.sort_by(|a, b| b.0.total_cmp(&a.0));
    for (p, w) in top.iter().take(5) {
        println!("  {w:<20} {p:.6}");
    }
    Ok(())
}
