//! Text formats, Graphviz export and the `scdes` command-line driver for
//! [`scdes_core`].

pub mod aut;
pub mod cli;
pub mod condat;
pub mod dot;
pub mod error;
pub mod trace;
mod text;

pub use aut::{parse, parse_with, serialize, ParseOptions};
pub use condat::{parse_condat, serialize_condat, CondatDocument};
pub use dot::to_dot;
pub use error::FormatError;
pub use trace::serialize_trace;
