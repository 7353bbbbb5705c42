//! Milnor K-theory of 𝔽_q and 𝔽_q(t), residue maps and Gersten complexes
//! of the curves 𝔸¹, ℙ¹ and 𝔾_m.

mod factor;
mod gersten;
mod rational;
mod symbol;

pub use factor::Factorization;
pub use gersten::{ChowClass, ChowGroup, ClassValue, Cochain, Curve, GroupDesc, PbfLine, PbfReport, Representative};
pub use rational::{FunctionField, Place, RationalFunction, ResidueField};
pub use symbol::{residue_vector, FunctionSymbol, K2Certificate, KValue, MilnorSymbol};
