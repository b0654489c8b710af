//! Command-line front end for `geostream`.

pub mod cli;
pub mod experiment;
pub mod instances;
