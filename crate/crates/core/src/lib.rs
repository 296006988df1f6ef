//! Crease-pattern compiler and evaluator.

pub mod cp;
pub mod diagnostics;
pub mod foldability;
pub mod folder;
pub mod geometry;
pub mod evaluator;
pub mod session;
pub mod render;
pub mod cli;
