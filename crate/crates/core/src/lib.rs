//! Good drawings of complete graphs `K_n`, stored as planarized
//! combinatorial maps.
//!
//! The crate decides where a drawing sits in the convexity hierarchy
//! (convex, h-convex, f-convex), detects the forbidden five- and
//! six-vertex subdrawings, computes natural-subgraph decompositions and
//! crossing metrics, and applies the crossing-reducing reroute for drawings
//! containing a single non-convex `K_5`.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line front-end live in the `convexdraw` crate.

#![no_std]

extern crate alloc;

pub mod canon;
pub mod convexity;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod hierarchy;
pub mod map;
pub mod reduction;
pub mod regions;
pub mod reroute;
pub mod structure;

pub use error::{CanonError, ConvexityError, GeometryError, Goodness, HierarchyError, MapError, RerouteError, StructureError};
pub use map::{CrossingId, Drawing, Edge, Face, FaceId, Node, RawDrawing, RawEdge, RawNode, RawRotation};
