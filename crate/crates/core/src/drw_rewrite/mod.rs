//! Normalization of dga expressions to canonical form.

pub mod engine;
pub mod expr;
pub mod form;
pub mod lattice;
pub mod rewrite;

pub use engine::{Engine, Strategy};
pub use expr::DRWExpr;
pub use form::Form;
