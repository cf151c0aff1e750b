//! Exact tools for the combinatorics of finite multigraphs and tropical
//! curves: cyclic equivalence and connectivizations, Albanese lattices,
//! Delaunay and Voronoi decompositions, orientation posets, and the tropical
//! Jacobian.

pub mod arith;
pub mod c1;
pub mod cyclic;
pub mod delaunay;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod iso;
pub mod lattice;
pub mod par;
pub mod poset;
pub mod posets;
pub mod suite;
pub mod tropical;
pub mod voronoi;

pub use error::{Error, Result};
