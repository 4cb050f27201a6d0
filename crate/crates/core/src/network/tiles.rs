use std::collections::BTreeMap;
use std::fmt;

use crate::walks::{Model, Step};

/// Value carried by a tile edge. Vertical edges use all four kinds; horizontal
/// bonds only carry `Omega` or a color marker `Plus(c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeValue {
    Omega,
    Zero,
    Plus(u8),
    Minus(u8),
}

impl EdgeValue {
    /// The full index set `{ω, 0, ±1, …, ±j}` of size `2j + 2`.
    pub fn all(colors: u8) -> Vec<EdgeValue> {
        let mut v = vec![EdgeValue::Omega, EdgeValue::Zero];
        v.extend((1..=colors).map(EdgeValue::Plus));
        v.extend((1..=colors).map(EdgeValue::Minus));
        v
    }

    /// Physical spin read from a downward-facing boundary edge.
    pub fn to_step(self) -> Option<Step> {
        match self {
            EdgeValue::Omega => None,
            EdgeValue::Zero => Some(Step::Flat),
            EdgeValue::Plus(c) => Some(Step::Up(c)),
            EdgeValue::Minus(c) => Some(Step::Down(c)),
        }
    }

    pub fn from_step(step: Step) -> EdgeValue {
        match step {
            Step::Up(c) => EdgeValue::Plus(c),
            Step::Flat => EdgeValue::Zero,
            Step::Down(c) => EdgeValue::Minus(c),
        }
    }
}

impl fmt::Display for EdgeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeValue::Omega => write!(f, "w"),
            EdgeValue::Zero => write!(f, "0"),
            EdgeValue::Plus(c) => write!(f, "+{c}"),
            EdgeValue::Minus(c) => write!(f, "-{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TileKind {
    VerticalUp,
    CornerUpRight,
    Horizontal,
    CornerRightDown,
    VerticalDown,
    FlatRun,
    FlatStop,
}

impl TileKind {
    pub fn name(self) -> &'static str {
        match self {
            TileKind::VerticalUp => "vertical-up",
            TileKind::CornerUpRight => "corner-up-right",
            TileKind::Horizontal => "horizontal",
            TileKind::CornerRightDown => "corner-right-down",
            TileKind::VerticalDown => "vertical-down",
            TileKind::FlatRun => "flat-run",
            TileKind::FlatStop => "flat-stop",
        }
    }

    pub fn is_arrowed(self) -> bool {
        !matches!(self, TileKind::FlatRun | TileKind::FlatStop)
    }
}

/// A rank-one delta tensor: nonzero only on one assignment of its four
/// edges (left, right, top, bottom), where it equals `x^weight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    pub kind: TileKind,
    pub color: Option<u8>,
    pub left: EdgeValue,
    pub right: EdgeValue,
    pub top: EdgeValue,
    pub bottom: EdgeValue,
    /// Power of `x = √t`: one per half horizontal arrow segment.
    pub weight: u32,
}

impl Tile {
    fn new(
        kind: TileKind,
        color: Option<u8>,
        [left, right, top, bottom]: [EdgeValue; 4],
        weight: u32,
    ) -> Tile {
        Tile {
            kind,
            color,
            left,
            right,
            top,
            bottom,
            weight,
        }
    }

    pub fn edges(&self) -> [EdgeValue; 4] {
        [self.left, self.right, self.top, self.bottom]
    }
}

/// The tiles summed into the bulk tensor `B` (Motzkin) or `B′` (Fredkin).
#[derive(Clone, Debug)]
pub struct TileSet {
    model: Model,
    colors: u8,
    tiles: Vec<Tile>,
    by_left_top: BTreeMap<(EdgeValue, EdgeValue), Vec<usize>>,
}

impl TileSet {
    pub fn new(model: Model, colors: u8) -> TileSet {
        use EdgeValue::{Minus, Omega as W, Plus, Zero};
        let mut tiles = Vec::new();
        for c in 1..=colors {
            let k = Some(c);
            tiles.push(Tile::new(TileKind::VerticalUp, k, [W, W, Plus(c), Plus(c)], 0));
            tiles.push(Tile::new(TileKind::CornerUpRight, k, [W, Plus(c), W, Plus(c)], 1));
            tiles.push(Tile::new(TileKind::Horizontal, k, [Plus(c), Plus(c), W, W], 2));
            tiles.push(Tile::new(TileKind::CornerRightDown, k, [Plus(c), W, W, Minus(c)], 1));
            tiles.push(Tile::new(TileKind::VerticalDown, k, [W, W, Minus(c), Minus(c)], 0));
        }
        if model.has_flat() {
            tiles.push(Tile::new(TileKind::FlatRun, None, [W, W, Zero, Zero], 0));
            tiles.push(Tile::new(TileKind::FlatStop, None, [W, W, W, Zero], 0));
        }
        let mut by_left_top: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for (i, t) in tiles.iter().enumerate() {
            by_left_top.entry((t.left, t.top)).or_default().push(i);
        }
        TileSet {
            model,
            colors,
            tiles,
            by_left_top,
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn colors(&self) -> u8 {
        self.colors
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn contains(&self, tile: &Tile) -> bool {
        self.tiles.contains(tile)
    }

    /// Tiles whose left and top edges take the given values.
    pub fn matching(&self, left: EdgeValue, top: EdgeValue) -> impl Iterator<Item = &Tile> {
        self.by_left_top
            .get(&(left, top))
            .into_iter()
            .flatten()
            .map(|&i| &self.tiles[i])
    }

    pub fn find(&self, kind: TileKind, color: Option<u8>) -> Option<Tile> {
        self.tiles
            .iter()
            .copied()
            .find(|t| t.kind == kind && t.color == color)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn tile_counts() {
        assert_eq!(TileSet::new(Model::Motzkin, 2).len(), 12);
        assert_eq!(TileSet::new(Model::Fredkin, 1).len(), 5);
        for j in 1..=4 {
            assert_eq!(TileSet::new(Model::Motzkin, j).len(), 5 * usize::from(j) + 2);
            assert_eq!(TileSet::new(Model::Fredkin, j).len(), 5 * usize::from(j));
        }
        assert_eq!(EdgeValue::all(3).len(), 8);
    }

    #[test]
    fn edge_tuples_are_distinct() {
        let set = TileSet::new(Model::Motzkin, 3);
        let distinct: BTreeSet<_> = set.tiles().iter().map(|t| t.edges()).collect();
        assert_eq!(distinct.len(), set.len());
    }

    #[test]
    fn weights_follow_horizontal_segments() {
        for t in TileSet::new(Model::Motzkin, 2).tiles() {
            let halves = [t.left, t.right]
                .iter()
                .filter(|e| **e != EdgeValue::Omega)
                .count() as u32;
            assert_eq!(t.weight, halves);
        }
    }
}
