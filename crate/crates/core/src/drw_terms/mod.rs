//! Canonical sums of basic Witt differentials.

pub mod basis;
pub mod element;
pub mod enumerate;
pub mod weight;

pub use basis::{Partition, Shape, TypeTag};
pub use element::{BasicWittDifferential, DRWElement, Drw, RingSpec, TermKey};
pub use weight::{Exp, Weight};
