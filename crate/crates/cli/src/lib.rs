//! Library side of the `cfum` command: named experiments and the command
//! implementations, kept here so they can be tested without a subprocess.

pub mod commands;
pub mod experiments;
