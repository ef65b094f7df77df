//! Exact high-temperature Ising partition functions of graphs embedded in
//! closed surfaces, computed from Pfaffians of Kasteleyn-type orientations of
//! the terminal graph.

mod drawing;
pub mod embedding;
pub mod error;
pub mod generate;
pub mod homology;
pub mod poly;
pub mod orientation;
pub mod partition;
pub mod pfaffian;
pub mod terminal;
pub mod verify;

pub use error::{Error, Result};
