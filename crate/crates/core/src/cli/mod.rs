pub mod analyze;
pub mod commands;
pub mod parse;
pub mod render;

pub use analyze::{analyze, Conclusion, HasseReport, Options};
pub use commands::{run_cli, Outcome, EXAMPLE_183};
pub use parse::{parse_form, ParsedForm};
pub use render::{render, Format};
