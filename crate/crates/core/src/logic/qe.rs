use super::dnf::{to_dnf, CellSystem};
use super::fm;
use super::formula::Formula;
use crate::error::{Error, Result};

/// Quantifier elimination for the E-free linear theory.
///
/// Quantifiers are removed innermost first; `forall v. g` is read as
/// `not exists v. not g`. Each `exists` is eliminated cell by cell from the
/// DNF of its body. The result is a pruned DNF over the free variables of
/// the input.
pub fn qe_linear(f: &Formula) -> Result<Formula> {
    if !f.is_e_free() {
        return Err(Error::Fragment(format!("quantifier elimination needs an E-free formula: {f}")));
    }
    let g = qe(f)?;
    Ok(to_dnf(&g)?.prune_infeasible().to_formula())
}

/// Like [`qe_linear`], returning the cell system.
pub fn qe_cells(f: &Formula) -> Result<CellSystem> {
    if !f.is_e_free() {
        return Err(Error::Fragment(format!("quantifier elimination needs an E-free formula: {f}")));
    }
    Ok(to_dnf(&qe(f)?)?.prune_infeasible())
}

fn qe(f: &Formula) -> Result<Formula> {
    Ok(match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(qe(g)?),
        Formula::And(gs) => Formula::and(gs.iter().map(qe).collect::<Result<_>>()?),
        Formula::Or(gs) => Formula::or(gs.iter().map(qe).collect::<Result<_>>()?),
        Formula::Exists(v, g) => exists_qf(v, &qe(g)?)?,
        Formula::Forall(v, g) => Formula::not(exists_qf(v, &Formula::not(qe(g)?))?),
        Formula::InE(_) | Formula::ExistsE(..) | Formula::ForallE(..) => {
            return Err(Error::Fragment(format!("unexpected E-construct: {f}")))
        }
    })
}

fn exists_qf(var: &str, body: &Formula) -> Result<Formula> {
    let cells = to_dnf(body)?.cells;
    let mut out = Vec::with_capacity(cells.len());
    for cell in cells {
        if !cell.iter().any(|a| a.mentions(var)) {
            out.push(cell);
        } else if let Some(c) = fm::eliminate_from_cell(&cell, var) {
            out.push(c);
        }
    }
    Ok(CellSystem { cells: out }.canonical().prune_infeasible().to_formula())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn qe_str(s: &str) -> Formula {
        qe_linear(&parse_formula(s).unwrap()).unwrap()
    }

    fn same(a: &str, b: &str) {
        assert_eq!(qe_str(a), qe_str(b), "{a}  vs  {b}");
    }

    #[test]
    fn density() {
        same("exists y. x < y and y < 1", "x < 1");
    }

    #[test]
    fn equality_substitution() {
        same("exists y. y = x and y < 0", "x < 0");
    }

    #[test]
    fn unbounded() {
        assert_eq!(qe_str("exists y. y > x"), Formula::True);
        assert_eq!(qe_str("forall y. y > x"), Formula::False);
    }

    #[test]
    fn universal() {
        // forall y (y < x -> y < 1)  iff  x <= 1
        same("forall y. not y < x or y < 1", "x <= 1");
    }

    #[test]
    fn output_is_quantifier_free_over_free_vars() {
        let f = parse_formula("exists y. forall z. (z < y or x + z > 2) and y < x").unwrap();
        let g = qe_linear(&f).unwrap();
        assert!(g.is_quantifier_free());
        assert!(g.free_vars().is_subset(&f.free_vars()));
    }

    #[test]
    fn rejects_e() {
        assert!(qe_linear(&parse_formula("exists y. E(y) and x < y").unwrap()).is_err());
    }
}
