//! Exact combinatorics of weight functions for `sl(∞)`: integrality and local
//! constancy of functions on countable linear orders, the modified
//! Robinson–Schensted shape, coherent local systems and their level sets.

pub mod cli;
pub mod cls;
pub mod levels;
pub mod orders;
mod parse;
pub mod scalars;
pub mod sweep;
pub mod tableaux;

pub use parse::ParseError;
