//! Finite pairs `(A, A₀)`: validation, classification, congruence lattices
//! and twist-product spectra.

pub mod classify;
pub mod congruence;
pub mod constructions;
pub mod hyper;
pub mod io;
pub mod pair;
pub mod spectrum;
pub mod structure;
pub mod verify;

pub use classify::{classify_pair, Kind, PairClassification};
pub use congruence::{Congruence, CongruenceLattice};
pub use hyper::HyperStructure;
pub use pair::{Pair, PairError};
pub use structure::{Elem, FiniteStructure, Operations};
