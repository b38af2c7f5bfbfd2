//! Library side of the `inertia-kit` command: the family DSL parser, table
//! rendering and command dispatch.

pub mod app;
pub mod dsl;
pub mod render;

pub use app::run;
pub use dsl::{parse_family_spec, parse_t_notation, ParseError, SpecError};
pub use render::{render_ascii, render_svg};
