//! Text and JSON front ends: the word grammar, input loading, the Hall-basis
//! cache and the command line.

pub mod cache;
pub mod cli;
pub mod grammar;
pub mod input;
pub mod render;
