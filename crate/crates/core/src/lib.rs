//! Desk-scale checker for equilogical spaces, partitioned assemblies,
//! and their presentations by groupoids and 2-groupoids.
//!
//! The crate represents finite T0 spaces, equilogical spaces, equivalence
//! spans, partitioned assemblies with recursive trackers, groupoids, and
//! free-dagger 2-groupoids as concrete finite data, and verifies by
//! exhaustive and property-based checking that the category of
//! equilogical spaces and the exact completion of partitioned assemblies
//! arise as homotopical quotients of the corresponding groupoid
//! categories, via explicit constructions.

pub mod cat;
pub mod cli;
pub mod equ;
pub mod fintop;
pub mod fixtures;
pub mod groupoid;
pub mod interval;
pub mod mask;
pub mod ncat;
pub mod pasm;
pub mod spans;
pub mod tracklang;
pub mod twogroupoid;
