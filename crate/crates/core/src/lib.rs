//! Exact enumeration of symmetric and asymmetric peaks and valleys in Dyck
//! paths.
//!
//! The crate is organised bottom-up:
//!
//! * [`path`] lattice paths, their kinds, enumeration and cut points;
//! * [`stats`] peak/valley scanning, weights and symmetry classes;
//! * [`bijection`] the constructive bijections between marked path sets and
//!   pairs of paths;
//! * [`series`] truncated integer power series and Riordan arrays;
//! * [`formulas`] closed-form counts on big integers;
//! * [`oracle`] brute-force recounting by enumeration;
//! * [`verify`] the self-check suites that tie the three together.

pub mod bijection;
pub mod cli;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod path;
pub mod series;
pub mod stats;
pub mod svg;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use path::{enumerate, enumerate_primitive, LatticePath, PathKind, Step};
pub use stats::{MarkedPath, Statistic, SymmetryClass};
