/// A cell at column `z` (1-based, left to right) and row `y` (1 = bottom).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub z: usize,
    pub y: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
    Top,
    Bottom,
}

/// What a boundary edge is contracted with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryRole {
    /// Fixed to `|ω⟩`.
    Omega,
    /// Physical leg, projected with `I − |ω⟩⟨ω|`.
    Physical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryEdge {
    pub cell: Cell,
    pub side: Side,
    pub role: BoundaryRole,
}

/// The inverted step pyramid holding `n(n+1)` bulk tensors: row `y` spans
/// columns `n+1-y ..= n+y`, and the `2n` physical legs hang from the
/// bottom cell of each column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PyramidGeometry {
    n: usize,
}

impl PyramidGeometry {
    pub fn new(n: usize) -> PyramidGeometry {
        assert!(n >= 1, "pyramid needs n >= 1");
        PyramidGeometry { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> usize {
        2 * self.n
    }

    /// Lowest row of column `z`.
    pub fn bottom(&self, z: usize) -> usize {
        self.n + 1 - z.min(2 * self.n + 1 - z)
    }

    pub fn contains(&self, z: usize, y: usize) -> bool {
        z >= 1 && z <= 2 * self.n && y <= self.n && y >= self.bottom(z)
    }

    pub fn cell_count(&self) -> usize {
        self.n * (self.n + 1)
    }

    /// Cells column by column, top row first within a column.
    pub fn cells(&self) -> Vec<Cell> {
        (1..=self.columns())
            .flat_map(|z| (self.bottom(z)..=self.n).rev().map(move |y| Cell { z, y }))
            .collect()
    }

    /// Position of a cell in [`cells`](Self::cells).
    pub fn index(&self, cell: Cell) -> Option<usize> {
        if !self.contains(cell.z, cell.y) {
            return None;
        }
        let before: usize = (1..cell.z).map(|z| self.n + 1 - self.bottom(z)).sum();
        Some(before + (self.n - cell.y))
    }

    /// Rows crossed by the cut between columns `z` and `z + 1`, top first.
    pub fn bond_rows(&self, z: usize) -> Vec<usize> {
        if z == 0 || z >= self.columns() {
            return Vec::new();
        }
        let lowest = self.bottom(z).max(self.bottom(z + 1));
        (lowest..=self.n).rev().collect()
    }

    pub fn bond_count(&self, z: usize) -> usize {
        if z == 0 || z >= self.columns() {
            0
        } else {
            z.min(self.columns() - z)
        }
    }

    pub fn boundary_edges(&self) -> Vec<BoundaryEdge> {
        let mut out = Vec::new();
        for cell in self.cells() {
            let Cell { z, y } = cell;
            let mut push = |side, role| out.push(BoundaryEdge { cell, side, role });
            if !self.contains(z, y + 1) {
                push(Side::Top, BoundaryRole::Omega);
            }
            if z == 1 || !self.contains(z - 1, y) {
                push(Side::Left, BoundaryRole::Omega);
            }
            if !self.contains(z + 1, y) {
                push(Side::Right, BoundaryRole::Omega);
            }
            if y == 1 || !self.contains(z, y - 1) {
                push(Side::Bottom, BoundaryRole::Physical);
            }
        }
        out
    }
}
