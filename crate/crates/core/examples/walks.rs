//! Count and list colored Motzkin and Fredkin walks.

use motzkin_rainbow::walks::{count_walks, enumerate_walks, Model};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for model in [Model::Motzkin, Model::Fredkin] {
        for n in 1..=6 {
            print!("{model} n={n}:");
            for j in 1..=3 {
                print!(" j={j} -> {}", count_walks(n, j, model));
            }
            println!();
        }
    }

    println!("\n2-colored Motzkin walks of length 4:");
    for w in enumerate_walks(2, 2, Model::Motzkin, 1000)? {
        let pairs: Vec<String> = w
            .matched_pairs()?
            .iter()
            .map(|p| format!("({},{})", p.x, p.y))
            .collect();
        println!("  {w:<12} area {}  pairs {}", w.area()?, pairs.join(" "));
    }
    Ok(())
}
