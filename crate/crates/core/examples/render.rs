//! Write SVG figures of a walk, its arcs and its tiling into a directory.

use std::path::PathBuf;

use motzkin_rainbow::network::walk_to_tiling;
use motzkin_rainbow::render::{render_arcs, render_tiling, render_walk};
use motzkin_rainbow::walks::{Model, Walk};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let w = Walk::parse("U1 U2 F D2 U1 D1 D1 F", Model::Motzkin, 2)?;
    for (name, svg) in [
        ("walk.svg", render_walk(&w)?),
        ("arcs.svg", render_arcs(&w)?),
        ("tiling.svg", render_tiling(&walk_to_tiling(&w)?)?),
    ] {
        let path = dir.join(name);
        std::fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
