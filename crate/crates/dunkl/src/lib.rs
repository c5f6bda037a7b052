//! Command-line front end and verification suite for `dunkl-core`.
//!
//! The binary `dunkl` has three subcommands: `jack` renders Jack
//! polynomials exactly, `eval` evaluates one special function with its
//! accuracy diagnostic, and `verify` runs the identity checks of [`suite`].
//! Every JSON document carries `"schema": 1`.

pub mod commands;
pub mod exit;
pub mod parse;
pub mod suite;
