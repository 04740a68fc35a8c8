//! Command-line front end for `qel-core`: model files, reports and the `qel`
//! commands.

pub mod cli;
pub mod commands;
pub mod model_text;
pub mod report;
