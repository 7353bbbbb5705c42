//! Exact arithmetic for truncated de Rham–Witt complexes of polynomial and
//! Laurent algebras over finite fields, with Milnor K-theory of curves,
//! dlog, transfers and first Chern classes on ℙ¹.

pub mod drw_rewrite;
pub mod dlog_chern;
pub mod drw_terms;
pub mod error;
pub mod ff;
pub mod linalg;
pub mod milnor;
pub mod overconv;
pub mod poly;
pub mod transfer;
pub mod ring;
pub mod witt;

pub use error::{Error, Result};
pub use ff::{FiniteField, FqElem, PrimePower};
pub use poly::{LPoly, LaurentRing, UPoly, UPolyRing, VarDecl};
pub use witt::{ScalarRing, WittRing, WittScalar, WittVec, Zq, ZqElem};
pub use drw_terms::{DRWElement, Drw, RingSpec};
pub use drw_rewrite::{DRWExpr, Engine, Strategy};
pub use milnor::{ChowGroup, Curve, FunctionField, FunctionSymbol, MilnorSymbol, Place, RationalFunction};
pub use dlog_chern::{LineBundleP1, P1Cech};
pub use transfer::{ConstantFieldExtension, QuadraticExtension};
