//! Morphism files, command dispatch and reports for the `formanifold`
//! binary.

pub mod commands;
pub mod parse;
pub mod print;
pub mod report;

pub use commands::{run, Cli, Command};
pub use parse::{parse_expression, parse_morphism, parse_point, InputError, ParseError, Vars};
pub use print::print_morphism;
pub use report::Report;
