//! Command implementations behind the `wspec` binary.

pub mod commands;
pub mod document;
pub mod matrix_file;
