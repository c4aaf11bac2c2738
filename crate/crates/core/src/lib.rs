//! Piecewise translation maps on compact regions of the line, the plane and
//! the flat 2-torus.
//!
//! A piecewise translation with branches `B_i` and vectors `v_i` acts on
//! compact sets by `F(K) = ⋃ (K ∩ B_i) + v_i`. Iterating `F` from the whole
//! domain gives a nested sequence whose intersection is the attractor; the
//! map is of finite type when the sequence stabilizes after finitely many
//! steps.
//!
//! Two engines are provided:
//!
//! * [`itm`]: exact rational arithmetic on finite unions of closed intervals
//!   (interval translation maps, interval exchanges, circle double rotations).
//! * [`grid`]: bitset rasters with whole-cell translations, exact Euclidean
//!   distance transforms and (directed) Hausdorff distances.
//!
//! [`torus`] builds double rotations and the lattice projection on top of the
//! grid engine, [`experiments`] drives parameter sweeps and probes, and
//! [`render`] writes PGM masks and PPM figures.

pub mod error;
pub mod experiments;
pub mod grid;
pub mod itm;
pub mod manifest;
pub mod rational;
pub mod render;
pub mod torus;

pub use error::{Error, Result};

/// Engine version recorded in every run manifest.
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));
