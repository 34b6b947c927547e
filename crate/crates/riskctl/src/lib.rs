//! Parsing, reporting, and export layers behind the `riskctl` binary.
//!
//! The binary itself only wires these pieces to the command line:
//! [`parse::parse`] turns model text into library objects with positioned
//! diagnostics, [`report`] renders the analysis reports, [`dot`] exports
//! Hasse diagrams, and [`model`] holds the parsed file and its canonical
//! text form.

pub mod dot;
pub mod model;
pub mod parse;
pub mod report;
