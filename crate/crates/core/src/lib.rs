//! Verification toolkit for Artin groups that are extra-large relative to a
//! family of parabolic subgroups.
//!
//! The crate checks the relative extra-large conditions on a labeled defining
//! graph, builds the subset posets and their derived complexes with the exact
//! piecewise-Euclidean metric (angles in units of π/8), develops the vertex
//! links as weighted graphs, and certifies the CAT(0) link condition by exact
//! girth computation. On top of that it audits the complete-and-K(π,1) family
//! used for the K(π,1) reduction and extracts witnesses for acylindrical
//! hyperbolicity.

pub mod acyl;
pub mod complex;
pub mod coxeter;
pub mod error;
pub mod garside;
pub mod girth;
pub mod graph;
pub mod instances;
pub mod kpi1;
pub mod link;
pub mod par;
pub mod subset;

pub use error::{Error, InputError, Result};
pub use graph::{DefiningGraph, Instance, InterEdge, SubgraphFamily};
pub use par::ExecMode;
pub use subset::VertexSet;

/// One angle unit is π/8; every angle and link edge length in the crate is an
/// integer number of these units.
pub const ANGLE_UNIT_DENOMINATOR: u32 = 8;

/// 2π in angle units.
pub const TWO_PI_UNITS: u32 = 16;
