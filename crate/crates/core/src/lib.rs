//! Perfect colorings of Hamming graphs: codes, constructions, verification,
//! parameter bounds and the admissibility catalog.

pub mod algebra;
pub mod analysis;
pub mod bounds;
pub mod catalog;
pub mod codes;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod hamming;
pub mod io;
pub mod recipe;
pub mod rng;

pub use bounds::{Admissibility, LowerBound, Params2};
pub use catalog::{AdmissibilityRecord, Column, Status, Witness};
pub use coloring::{Coloring, FacePartition, QuotientMatrix};
pub use error::{Error, Result};
pub use hamming::{Face, GraphShape, Symbol, Vertex};
pub use recipe::{FaceVariant, InvasionMode, Prediction, Recipe};
pub use rng::SplitMix64;
