//! Exact verification of weak modularity for the 1-skeleta of affine `A_n`
//! Coxeter complexes and of affine `A_3` buildings.
//!
//! * [`lattice`]: the Coxeter complex 1-skeleton as a sublattice of
//!   `Z^{n+1}`, with heights and vertex types.
//! * [`ladder`]: rung bookkeeping and the constructive triangle and
//!   quadrangle completions.
//! * [`graph`]: balls grown from a neighbor oracle, the triangle and
//!   quadrangle checkers, induced 4-cycles and their central edges.
//! * [`building`]: the p-adic lattice-class model of an affine `A_3`
//!   building.
//!
//! Arithmetic is generic over [`scalar::Integer`]; the aliases below fix
//! the scalar to `i64`.

pub mod building;
pub mod error;
pub mod graph;
pub mod ladder;
pub mod lattice;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{
    check_quadrangle, check_triangle, find_square_center, induced_4cycles_through, Ball,
    BallOptions, CheckOptions, Condition, ConditionReport, FiniteGraph, NeighborOracle, Typed,
    VertexId,
};
pub use ladder::{quadrangle_complete, triangle_complete};
pub use lattice::{is_edge_vector, is_vertex, EdgeStep, Sign};

pub type Vertex = lattice::Vertex<i64>;
pub type Ladder = ladder::Ladder<i64>;
pub type LatticeModel = lattice::LatticeModel<i64>;
pub type LatticeClass = building::LatticeClass<i64>;
pub type BuildingModel = building::BuildingModel<i64>;

/// 128-bit variants for larger primes or radii.
pub type Vertex128 = lattice::Vertex<i128>;
pub type LatticeClass128 = building::LatticeClass<i128>;
pub type BuildingModel128 = building::BuildingModel<i128>;
