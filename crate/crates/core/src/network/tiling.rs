use std::fmt;

use serde::Serialize;

use super::geometry::{Cell, PyramidGeometry};
use super::tiles::{EdgeValue, Tile, TileKind, TileSet};
use crate::error::{Error, Result};
use crate::walks::{Model, Step, Walk};

/// An assignment of tiles to the cells of a pyramid. Cells may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    geometry: PyramidGeometry,
    model: Model,
    colors: u8,
    cells: Vec<Option<Tile>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingViolation {
    Unfilled(Cell),
    ForeignTile(Cell),
    HorizontalMismatch { left: Cell, right: Cell },
    VerticalMismatch { upper: Cell, lower: Cell },
    OmegaBoundary(Cell),
    OmegaPhysical(Cell),
}

impl fmt::Display for TilingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingViolation::Unfilled(c) => write!(f, "cell ({}, {}) is empty", c.z, c.y),
            TilingViolation::ForeignTile(c) => {
                write!(f, "cell ({}, {}) holds a tile outside the tile set", c.z, c.y)
            }
            TilingViolation::HorizontalMismatch { left, right } => write!(
                f,
                "edge between ({}, {}) and ({}, {}) does not match",
                left.z, left.y, right.z, right.y
            ),
            TilingViolation::VerticalMismatch { upper, lower } => write!(
                f,
                "edge between ({}, {}) and ({}, {}) does not match",
                upper.z, upper.y, lower.z, lower.y
            ),
            TilingViolation::OmegaBoundary(c) => {
                write!(f, "cell ({}, {}) has a non-ω outer boundary edge", c.z, c.y)
            }
            TilingViolation::OmegaPhysical(c) => {
                write!(f, "cell ({}, {}) has ω on a physical edge", c.z, c.y)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingCheck {
    pub valid: bool,
    pub first_violation: Option<TilingViolation>,
}

impl Tiling {
    pub fn empty(n: usize, model: Model, colors: u8) -> Tiling {
        let geometry = PyramidGeometry::new(n);
        Tiling {
            geometry,
            model,
            colors,
            cells: vec![None; geometry.cell_count()],
        }
    }

    pub fn geometry(&self) -> &PyramidGeometry {
        &self.geometry
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn colors(&self) -> u8 {
        self.colors
    }

    pub fn get(&self, z: usize, y: usize) -> Option<Tile> {
        self.geometry
            .index(Cell { z, y })
            .and_then(|i| self.cells[i])
    }

    pub fn set(&mut self, z: usize, y: usize, tile: Tile) {
        let i = self
            .geometry
            .index(Cell { z, y })
            .unwrap_or_else(|| panic!("({z}, {y}) is not a cell"));
        self.cells[i] = Some(tile);
    }

    /// Assigned tiles in geometry order.
    pub fn tiles(&self) -> impl Iterator<Item = (Cell, Option<Tile>)> + '_ {
        self.geometry.cells().into_iter().zip(self.cells.iter().copied())
    }

    /// Total weight as a power of `x`.
    pub fn weight(&self) -> u32 {
        self.cells.iter().flatten().map(|t| t.weight).sum()
    }

    /// Interior vertical edges (between neighboring columns) carrying a color.
    pub fn horizontal_crossings(&self) -> usize {
        (1..self.geometry.columns())
            .map(|z| {
                self.bond_vector(z)
                    .iter()
                    .filter(|e| **e != EdgeValue::Omega)
                    .count()
            })
            .sum()
    }

    /// Values on the bonds of cut `z`, top to bottom.
    pub fn bond_vector(&self, z: usize) -> Vec<EdgeValue> {
        self.geometry
            .bond_rows(z)
            .into_iter()
            .map(|y| self.get(z, y).map_or(EdgeValue::Omega, |t| t.right))
            .collect()
    }

    pub fn snapshot(&self) -> TilingSnapshot {
        TilingSnapshot {
            schema: 1,
            n: self.geometry.n(),
            model: self.model,
            colors: self.colors,
            cells: self
                .tiles()
                .map(|(cell, tile)| CellSnapshot {
                    z: cell.z,
                    y: cell.y,
                    kind: tile.map(|t| t.kind.name().to_string()),
                    color: tile.and_then(|t| t.color),
                    edges: tile.map(|t| {
                        let [l, r, tp, b] = t.edges();
                        [l, r, tp, b].map(|e| e.to_string())
                    }),
                    weight: tile.map(|t| t.weight),
                })
                .collect(),
        }
    }
}

/// JSON form of a tiling.
#[derive(Clone, Debug, Serialize)]
pub struct TilingSnapshot {
    pub schema: u32,
    pub n: usize,
    pub model: Model,
    pub colors: u8,
    pub cells: Vec<CellSnapshot>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellSnapshot {
    pub z: usize,
    pub y: usize,
    pub kind: Option<String>,
    pub color: Option<u8>,
    /// Left, right, top, bottom.
    pub edges: Option<[String; 4]>,
    pub weight: Option<u32>,
}

pub fn validate_tiling(tiling: &Tiling) -> TilingCheck {
    let fail = |v| TilingCheck {
        valid: false,
        first_violation: Some(v),
    };
    let g = tiling.geometry;
    let set = TileSet::new(tiling.model, tiling.colors);
    for (cell, tile) in tiling.tiles() {
        let Some(tile) = tile else {
            return fail(TilingViolation::Unfilled(cell));
        };
        if !set.contains(&tile) {
            return fail(TilingViolation::ForeignTile(cell));
        }
        let Cell { z, y } = cell;
        if g.contains(z + 1, y) {
            if let Some(right) = tiling.get(z + 1, y) {
                if right.left != tile.right {
                    return fail(TilingViolation::HorizontalMismatch {
                        left: cell,
                        right: Cell { z: z + 1, y },
                    });
                }
            }
        } else if tile.right != EdgeValue::Omega {
            return fail(TilingViolation::OmegaBoundary(cell));
        }
        if !(z > 1 && g.contains(z - 1, y)) && tile.left != EdgeValue::Omega {
            return fail(TilingViolation::OmegaBoundary(cell));
        }
        if !g.contains(z, y + 1) && tile.top != EdgeValue::Omega {
            return fail(TilingViolation::OmegaBoundary(cell));
        }
        if y > 1 && g.contains(z, y - 1) {
            if let Some(lower) = tiling.get(z, y - 1) {
                if lower.top != tile.bottom {
                    return fail(TilingViolation::VerticalMismatch {
                        upper: cell,
                        lower: Cell { z, y: y - 1 },
                    });
                }
            }
        } else if tile.bottom == EdgeValue::Omega {
            return fail(TilingViolation::OmegaPhysical(cell));
        }
    }
    TilingCheck {
        valid: true,
        first_violation: None,
    }
}

/// The canonical packing of a walk. The pair at nesting depth `k` runs
/// horizontally on row `n + 1 - k`; a flat step at height `h` rises from the
/// bottom and stops on row `n - h`, directly below the lowest covering pair.
pub fn walk_to_tiling(walk: &Walk) -> Result<Tiling> {
    let pairs = walk.matched_pairs()?;
    let heights = walk.height_profile();
    let n = walk.half_len();
    let set = TileSet::new(walk.model(), walk.colors());
    let tile = |kind, color| set.find(kind, color).expect("tile in set");
    let mut tiling = Tiling::empty(n, walk.model(), walk.colors());
    let g = *tiling.geometry();
    for p in &pairs {
        let depth = heights[p.x - 1] as usize;
        let row = n + 1 - depth;
        let c = Some(p.color);
        for y in g.bottom(p.x)..row {
            tiling.set(p.x, y, tile(TileKind::VerticalUp, c));
        }
        tiling.set(p.x, row, tile(TileKind::CornerUpRight, c));
        for z in p.x + 1..p.y {
            tiling.set(z, row, tile(TileKind::Horizontal, c));
        }
        tiling.set(p.y, row, tile(TileKind::CornerRightDown, c));
        for y in g.bottom(p.y)..row {
            tiling.set(p.y, y, tile(TileKind::VerticalDown, c));
        }
    }
    for (i, step) in walk.steps().iter().enumerate() {
        if *step == Step::Flat {
            let z = i + 1;
            let stop = n - heights[i] as usize;
            for y in g.bottom(z)..stop {
                tiling.set(z, y, tile(TileKind::FlatRun, None));
            }
            tiling.set(z, stop, tile(TileKind::FlatStop, None));
        }
    }
    Ok(tiling)
}

/// Reads the walk off the physical (bottom) edges of a valid tiling.
pub fn tiling_to_walk(tiling: &Tiling) -> Result<Walk> {
    let check = validate_tiling(tiling);
    if let Some(v) = check.first_violation {
        return Err(Error::InvalidTiling(v.to_string()));
    }
    let g = tiling.geometry;
    let steps = (1..=g.columns())
        .map(|z| {
            let bottom = tiling.get(z, g.bottom(z)).expect("validated").bottom;
            bottom
                .to_step()
                .ok_or_else(|| Error::InvalidTiling(format!("ω on physical leg {z}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Walk::new(steps, tiling.model, tiling.colors)
}

/// Largest `n` accepted by the exhaustive tiling search.
pub const MAX_TILING_SEARCH_N: usize = 4;

/// Every valid tiling, found by backtracking over all tiles cell by cell.
/// This search knows nothing about walks and serves as an oracle for the
/// walk/tiling correspondence.
pub fn enumerate_valid_tilings(n: usize, colors: u8, model: Model) -> Result<Vec<Tiling>> {
    if n == 0 || colors == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and colors >= 1".into()));
    }
    if n > MAX_TILING_SEARCH_N {
        return Err(Error::cap("exhaustive tiling search (n)", n, MAX_TILING_SEARCH_N));
    }
    let set = TileSet::new(model, colors);
    let mut tiling = Tiling::empty(n, model, colors);
    let cells = tiling.geometry.cells();
    let mut out = Vec::new();
    search(&set, &cells, 0, &mut tiling, &mut out);
    Ok(out)
}

fn search(set: &TileSet, cells: &[Cell], at: usize, tiling: &mut Tiling, out: &mut Vec<Tiling>) {
    let Some(&cell) = cells.get(at) else {
        out.push(tiling.clone());
        return;
    };
    let g = tiling.geometry;
    let Cell { z, y } = cell;
    let left = if z > 1 && g.contains(z - 1, y) {
        tiling.get(z - 1, y).expect("filled").right
    } else {
        EdgeValue::Omega
    };
    let top = if g.contains(z, y + 1) {
        tiling.get(z, y + 1).expect("filled").bottom
    } else {
        EdgeValue::Omega
    };
    let right_open = g.contains(z + 1, y);
    let physical = !g.contains(z, y.wrapping_sub(1));
    let candidates: Vec<Tile> = set.matching(left, top).copied().collect();
    for tile in candidates {
        if !right_open && tile.right != EdgeValue::Omega {
            continue;
        }
        if physical && tile.bottom == EdgeValue::Omega {
            continue;
        }
        tiling.set(z, y, tile);
        search(set, cells, at + 1, tiling, out);
    }
    let i = g.index(cell).expect("cell");
    tiling.cells[i] = None;
}
