//! File formats, the command-line front end and the reproduction suite for
//! [`fiberstab_core`].

pub mod cli;
pub mod error;
pub mod json;
pub mod oracle;
pub mod suite;

pub use cli::{run, Outcome};
