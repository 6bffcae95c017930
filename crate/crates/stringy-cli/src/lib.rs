//! Dataset file format, report rendering, and command implementations for
//! the `stringy` command-line tool.

pub mod commands;
pub mod dataset;
pub mod render;
