pub mod arith;
pub mod cli;
pub mod error;
pub mod hamiltonian;
pub mod network;
pub mod observables;
pub mod render;
pub mod state;
mod transfer;
pub mod walks;
