//! Command-line front end for `drw-core`.

pub mod commands;
pub mod corpus;
pub mod dsl;
pub mod golden;
pub mod output;
pub mod suite;
