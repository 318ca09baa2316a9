//! Command implementations and output schemas for the `merodec` binary.

pub mod commands;
pub mod render;
