//! Figures, the `verify` suite and input handling for the `eph` tool.

pub mod figures;
pub mod input;
pub mod random;
pub mod verify;
