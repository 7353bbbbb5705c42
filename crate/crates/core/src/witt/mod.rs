//! Witt vectors: generic truncated vectors over any ring, and the fast
//! residue model of W(𝔽_q).

pub mod scalar;
pub mod universal;
pub mod vector;
pub mod zq;

pub use scalar::{ScalarRing, WittScalar};
pub use vector::{WittRing, WittVec};
pub use zq::{Zq, ZqElem};
