use std::collections::BTreeSet;
use std::fmt;

use super::fm;
use super::form::{Assignment, Atom};
use super::formula::Formula;
use crate::error::{Error, Result};

/// A disjunction of cells, each a conjunction of atoms. The empty system is
/// false; a system containing the empty cell is true.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CellSystem {
    pub cells: Vec<Vec<Atom>>,
}

impl CellSystem {
    pub fn tautology() -> Self {
        CellSystem { cells: vec![vec![]] }
    }

    pub fn is_false(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn to_formula(&self) -> Formula {
        Formula::or(
            self.cells
                .iter()
                .map(|c| Formula::and(c.iter().cloned().map(Formula::Atom).collect()))
                .collect(),
        )
    }

    pub fn evaluate(&self, values: &Assignment) -> Option<bool> {
        let mut any = false;
        for cell in &self.cells {
            let mut all = true;
            for a in cell {
                all &= a.evaluate(values)?;
            }
            any |= all;
        }
        Some(any)
    }

    /// Drops cells that are unsatisfiable over the reals.
    pub fn prune_infeasible(mut self) -> Self {
        self.cells.retain(|c| fm::cell_feasible(c));
        self
    }

    /// Sorted, deduplicated cells of sorted, deduplicated atoms.
    pub fn canonical(self) -> Self {
        let cells: BTreeSet<Vec<Atom>> = self.cells.into_iter().filter_map(normalize_cell).collect();
        if cells.contains(&Vec::new()) {
            return CellSystem::tautology();
        }
        CellSystem {
            cells: cells.into_iter().collect(),
        }
    }
}

impl fmt::Display for CellSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// Folds constant atoms and sorts; `None` if the cell is trivially false.
pub(crate) fn normalize_cell(cell: Vec<Atom>) -> Option<Vec<Atom>> {
    let mut out = BTreeSet::new();
    for a in cell {
        match a.truth() {
            Some(true) => {}
            Some(false) => return None,
            None => {
                out.insert(a);
            }
        }
    }
    Some(out.into_iter().collect())
}

/// Disjunctive normal form of a quantifier-free, E-free formula. Negations
/// are resolved with the order dichotomy, so only `=` and `<` atoms appear.
pub fn to_dnf(f: &Formula) -> Result<CellSystem> {
    if !f.is_quantifier_free() {
        return Err(Error::invalid(format!("formula is not quantifier-free: {f}")));
    }
    if !f.is_e_free() {
        return Err(Error::Fragment(format!("formula mentions E: {f}")));
    }
    Ok(CellSystem { cells: dnf(f, false) }.canonical())
}

fn dnf(f: &Formula, negated: bool) -> Vec<Vec<Atom>> {
    match (f, negated) {
        (Formula::True, false) | (Formula::False, true) => vec![vec![]],
        (Formula::True, true) | (Formula::False, false) => vec![],
        (Formula::Atom(a), false) => vec![vec![a.clone()]],
        (Formula::Atom(a), true) => a.negate().into_iter().map(|n| vec![n]).collect(),
        (Formula::Not(g), _) => dnf(g, !negated),
        (Formula::And(gs), false) | (Formula::Or(gs), true) => {
            let mut acc: Vec<Vec<Atom>> = vec![vec![]];
            for g in gs {
                let part = dnf(g, negated);
                let mut next = BTreeSet::new();
                for a in &acc {
                    for b in &part {
                        let mut cell = a.clone();
                        cell.extend(b.iter().cloned());
                        if let Some(c) = normalize_cell(cell) {
                            next.insert(c);
                        }
                    }
                }
                acc = next.into_iter().collect();
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        (Formula::Or(gs), false) | (Formula::And(gs), true) => gs.iter().flat_map(|g| dnf(g, negated)).collect(),
        _ => unreachable!("checked quantifier-free and E-free"),
    }
}
