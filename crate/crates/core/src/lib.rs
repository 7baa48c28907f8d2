//! Graph burning: exact burning numbers, upper bounds, degree criteria for
//! trees, and exhaustive tree campaigns.

pub mod bitset;
pub mod bounds;
pub mod burn;
pub mod campaign;
pub mod degree;
pub mod graph;
pub mod intmath;
pub mod random;
pub mod registry;
pub mod report;
pub mod trees;
