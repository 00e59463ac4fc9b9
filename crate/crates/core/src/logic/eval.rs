use num_traits::Zero;

use super::blocks::{to_blocks, BlockFormula, EBlock};
use super::form::{Assignment, Atom, AtomRel};
use super::formula::Formula;
use super::qe::{qe_cells, qe_linear};
use crate::error::{Error, Result};
use crate::numeric::GeoBase;
use crate::progression::{esystem_sat, CoeffVector, EConstraint, EConstraintSystem, Relation, SatResult, DEFAULT_DEPTH_BUDGET};

/// Truth of `f` at `values` in the expansion by `E = {rho^k}`.
///
/// Every free variable must be assigned. Fails with [`Error::Unknown`] when
/// an `E`-block cannot be decided within the default depth budget.
pub fn evaluate(f: &Formula, values: &Assignment, base: &GeoBase) -> Result<bool> {
    evaluate_with_budget(f, values, base, DEFAULT_DEPTH_BUDGET)
}

pub fn evaluate_with_budget(f: &Formula, values: &Assignment, base: &GeoBase, depth_budget: u32) -> Result<bool> {
    evaluate_by(f, values, &mut |sys| {
        Ok(match esystem_sat(base, sys, depth_budget)? {
            SatResult::Sat { .. } => Some(true),
            SatResult::Unsat { .. } => Some(false),
            SatResult::Unknown { .. } => None,
        })
    })
}

/// Evaluation with a caller-supplied decision procedure for the exponent
/// systems `E`-blocks reduce to. `decide` returns `None` when undecided.
pub(crate) fn evaluate_by(
    f: &Formula,
    values: &Assignment,
    decide: &mut dyn FnMut(&EConstraintSystem) -> Result<Option<bool>>,
) -> Result<bool> {
    if let Some(v) = f.free_vars().into_iter().find(|v| !values.contains_key(v)) {
        return Err(Error::UnboundVariable(v));
    }
    let closed = f.substitute_values(values);
    eval_blocks(&to_blocks(&closed)?, decide)
}

fn eval_blocks(
    b: &BlockFormula,
    decide: &mut dyn FnMut(&EConstraintSystem) -> Result<Option<bool>>,
) -> Result<bool> {
    match b {
        BlockFormula::Free(f) => match qe_linear(f)? {
            Formula::True => Ok(true),
            Formula::False => Ok(false),
            g => Err(Error::invalid(format!("formula did not reduce to a constant: {g}"))),
        },
        BlockFormula::Not(g) => Ok(!eval_blocks(g, decide)?),
        BlockFormula::And(gs) => {
            for g in gs {
                if !eval_blocks(g, decide)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        BlockFormula::Or(gs) => {
            for g in gs {
                if eval_blocks(g, decide)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        BlockFormula::Block(blk) => {
            let mut undecided = None;
            for sys in block_systems(blk)? {
                match decide(&sys)? {
                    Some(true) => return Ok(true),
                    Some(false) => {}
                    None => undecided = Some(sys),
                }
            }
            match undecided {
                None => Ok(false),
                Some(sys) => Err(Error::Unknown(format!(
                    "could not decide the exponent system\n{sys}"
                ))),
            }
        }
    }
}

/// One exponent system per cell of the block's matrix. The matrix must
/// mention no variables besides the block's own.
pub(crate) fn block_systems(blk: &EBlock) -> Result<Vec<EConstraintSystem>> {
    qe_cells(&blk.matrix)?
        .cells
        .iter()
        .map(|cell| cell_system(&blk.vars, cell))
        .collect()
}

/// Reads a cell over `vars` as exponent constraints on `rho^k` values.
pub(crate) fn cell_system(vars: &[String], cell: &[Atom]) -> Result<EConstraintSystem> {
    let mut out = Vec::with_capacity(cell.len());
    for a in cell {
        if let Some(v) = a.form().vars().find(|v| !vars.contains(v)) {
            return Err(Error::UnboundVariable(v.clone()));
        }
        let coeffs = CoeffVector::new(vars.iter().map(|v| a.form().coeff(v)).collect());
        let rel = match a.rel() {
            AtomRel::Eq => Relation::Eq,
            AtomRel::Lt => Relation::Lt,
        };
        out.push(EConstraint::new(coeffs, rel, -a.form().constant_term().clone()));
    }
    if out.is_empty() {
        // trivially satisfiable; keep the dimension
        out.push(EConstraint::new(CoeffVector::zeros(vars.len()), Relation::Eq, Zero::zero()));
    }
    EConstraintSystem::new(vars.len(), out)
}
