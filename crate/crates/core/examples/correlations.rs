//! Color correlations, matched probabilities and the large-t exponent.

use motzkin_rainbow::arith::Deformation;
use motzkin_rainbow::observables::{correlation_report, exponent_fit, max_area_deficit};
use motzkin_rainbow::walks::Model;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = correlation_report(3, Model::Motzkin, &Deformation::exact(4, 1))?;
    println!("n=3, j=2, t=4:");
    for r in report.records.iter().filter(|r| r.x1 == 1) {
        println!(
            "  G({}, {}) = {:.6}  P(matched) = {:.6}  max area deficit {:?}",
            r.x1, r.x2, r.g, r.matched_probability, r.deficit
        );
    }

    println!("\nexponent fit -ln G / ln t at n=4, pair (1,3):");
    let target = max_area_deficit(4, Model::Motzkin, 1, 3)?.unwrap();
    for t in [10, 100, 1000] {
        let fit = exponent_fit(4, 2, &Deformation::exact(t, 1), 1, 3)?;
        println!("  t={t:<5} {fit:.4}   (2 * deficit = {})", 2 * target);
    }
    Ok(())
}
