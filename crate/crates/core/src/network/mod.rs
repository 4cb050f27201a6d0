//! The rainbow tensor network.
//!
//! Bulk tensors are sums of rank-one tiles placed on an inverted step
//! pyramid. Valid tilings are in bijection with walks, and contracting the
//! network with `ω` on the outer boundary and `I − |ω⟩⟨ω|` on the physical
//! legs produces the deformed ground state.

mod contract;
mod geometry;
mod tiles;
mod tiling;

pub use contract::{
    bond_to_stack, column_configs, contract, contract_symbolic, contract_to_mps,
    contract_truncated, evaluate_exact, network_snapshot, stack_basis, stack_to_bond,
    ColumnConfig, Mps, NetworkSnapshot, SiteTensor, TileRow, DEFAULT_CONTRACT_CAP,
    DEFAULT_MPS_CAP,
};
pub use geometry::{BoundaryEdge, BoundaryRole, Cell, PyramidGeometry, Side};
pub use tiles::{EdgeValue, Tile, TileKind, TileSet};
pub use tiling::{
    enumerate_valid_tilings, tiling_to_walk, validate_tiling, walk_to_tiling, CellSnapshot,
    Tiling, TilingCheck, TilingSnapshot, TilingViolation, MAX_TILING_SEARCH_N,
};
