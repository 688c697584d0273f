//! Library side of the `tec` command-line tool: the measure input
//! grammar, report rendering/parsing, and the command implementations.

pub mod exec;
pub mod input;
pub mod report;
