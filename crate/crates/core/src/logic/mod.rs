//! Formulas over `(R, <, +, 0, 1, (lambda_r)_{r in Q}, E)`.
//!
//! Atoms are kept as `form = 0` or `form < 0`; the other comparisons are
//! expanded by the parser. The E-free fragment admits quantifier
//! elimination ([`qe_linear`]); formulas with `E` are evaluated through
//! their block normal form ([`to_blocks`]).

mod blocks;
mod dnf;
mod eval;
pub mod fm;
mod form;
mod formula;
mod parser;
mod qe;

pub use blocks::{to_blocks, BlockFormula, EBlock};
pub use dnf::{to_dnf, CellSystem};
pub(crate) use dnf::normalize_cell;
pub use eval::{evaluate, evaluate_with_budget};
pub(crate) use eval::{cell_system, evaluate_by};
pub use form::{Assignment, Atom, AtomRel, LinearForm};
pub use formula::Formula;
pub use parser::{parse_formula, parse_formula_in};
pub use qe::{qe_cells, qe_linear};
