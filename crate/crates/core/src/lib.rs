//! Exact fixed-point representations of shifted affine Yangians of `gl(1)`.
//!
//! The crate builds the raising and lowering operators on plane partitions
//! (the Hilbert scheme of points on `C^3`) and on finite pyramid partitions
//! (the resolved conifold), checks the defining relations entry by entry with
//! exact arithmetic, and detects the shift of the acting Yangian.

pub mod cli;
pub mod error;
pub mod exact;
pub mod partitions3d;
pub mod pyramid;
pub mod relations;
pub mod reps;
pub mod shuffle;

pub use error::Error;
