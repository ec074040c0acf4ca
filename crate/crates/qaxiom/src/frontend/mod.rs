//! Expression and file parsers plus the CLI dispatch layer.

pub mod dispatch;
pub mod files;
pub mod parser;

pub use dispatch::{dispatch, dispatch_args, render_json, CommandResult};
pub use files::{parse_algebra_file, parse_substitution_file, resolve_algebra, resolve_substitution};
pub use parser::{lower, parse_expression, parse_polynomial, print_ast, Ast};
