//! Expression syntax, canonical printing and the workspace file format.

mod expr;
mod printer;
mod workspace;

pub use expr::{is_reserved, lower, parse_expr, parse_expr_at, parse_poly, Expr, ParseError, ParseErrorKind, Symbol};
pub use printer::print_canonical;
pub use workspace::{load_workspace, save_workspace, Value, Workspace, HEADER};
