//! Command implementations and the reproduction registry behind the
//! `f2curves` binary.

pub mod commands;
pub mod registry;
pub mod verify;
