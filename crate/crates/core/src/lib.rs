//! Uniform random plane partitions.
//!
//! Plane partitions are drawn by sampling a multiset diagram under a
//! Boltzmann model, rejecting until its size lands in the target window, and
//! mapping the accepted diagram through Pak's size-preserving bijection.
//! Unconstrained, `(a x b)`-boxed and skew (staircase-domain) partitions are
//! supported, in exact-size and approximate-size modes.
//!
//! The [`oracle`] and [`verify`] modules provide the independent checks:
//! exact coefficient tables, size moments, brute-force enumerators and
//! goodness-of-fit tests.

pub mod dist;
pub mod domain;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod pak;
pub mod sampler;
pub mod target;
pub mod verify;

pub use dist::RandomSource;
pub use domain::{IndexDomain, SkewFilling};
pub use error::{Error, Result};
pub use grid::{validate_plane_partition, Diagram, PlanePartition};
pub use oracle::{CountTable, OracleConfig};
pub use pak::{pak_forward, pak_forward_skew, pak_inverse, pak_inverse_skew, TransformStats};
pub use sampler::{Class, SampleReport, SamplerOptions};
pub use target::{BoltzmannParam, TargetMode, TargetSpec};
