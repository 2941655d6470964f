//! Symbolic spin graphs on hyperelliptic Riemann surfaces.
//!
//! A non-singular even spin bundle assigns to every point `Q` of a
//! hyperelliptic surface of genus `g` a degree-`g` integral divisor `A_Q`.
//! Following the points of `A_Q` from vertex to vertex produces a finite
//! leaf, which carries the structure of a decorated multigraph. This crate
//! models those divisors purely symbolically, builds the standard,
//! Weierstrass and exceptional graphs, classifies exceptional graphs by
//! partitions of `g + 1`, and enumerates the surface types allowed by the
//! total branch number `4g`.
//!
//! Module layout:
//!
//! - [`divisor`]: point labels, conjugation and integral divisors.
//! - [`partitions`]: restricted partition enumeration and counting.
//! - [`atlas`]: exceptional classes, class counts and surface types.
//! - [`graphs`]: graph constructors, heads and validation.
//! - [`iso`]: brute-force isomorphism of small decorated multigraphs.
//! - [`render`]: deterministic DOT and JSON export.
//! - [`verify`]: the invariant suite behind `spingraph verify`.

#![forbid(unsafe_code)]

pub mod atlas;
pub mod divisor;
pub mod error;
pub mod graphs;
pub mod iso;
pub mod partitions;
pub mod render;
pub mod verify;

pub use atlas::{ExceptionalClass, LeafCensus, SurfaceType};
pub use divisor::{Divisor, Genus, PointKind, PointLabel};
pub use error::{Error, Result};
pub use graphs::{Edge, GraphKind, OrientedArc, SpinGraph, Violation};
pub use partitions::Partition;
