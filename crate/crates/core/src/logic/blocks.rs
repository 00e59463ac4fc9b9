//! Normal form for formulas with `E`: boolean combinations of E-free
//! formulas and existential blocks `exists y1..ym in E. theta` with `theta`
//! E-free.
//!
//! An atom `E(t)` becomes the block `exists z in E. z = t` for a fresh `z`.
//! Existential quantifiers, real or over `E`, are pushed through
//! disjunctions and merged with the positive blocks of a conjunction; a real
//! existential commutes with the `E`-block it meets. Universal quantifiers
//! go through complement. A quantifier whose variable reaches a negated
//! block is an alternation the normal form cannot express and is rejected.

use std::cell::Cell;

use super::form::{Atom, LinearForm};
use super::formula::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EBlock {
    /// Bound variables, ranging over `E`. Names are generated and cannot
    /// clash with user identifiers.
    pub vars: Vec<String>,
    /// E-free; may contain real quantifiers.
    pub matrix: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockFormula {
    Free(Formula),
    Block(EBlock),
    Not(Box<BlockFormula>),
    And(Vec<BlockFormula>),
    Or(Vec<BlockFormula>),
}

impl BlockFormula {
    pub fn mentions(&self, var: &str) -> bool {
        match self {
            BlockFormula::Free(f) => f.mentions_free(var),
            BlockFormula::Block(b) => !b.vars.iter().any(|v| v == var) && b.matrix.mentions_free(var),
            BlockFormula::Not(g) => g.mentions(var),
            BlockFormula::And(gs) | BlockFormula::Or(gs) => gs.iter().any(|g| g.mentions(var)),
        }
    }

    /// Number of `E`-blocks.
    pub fn block_count(&self) -> usize {
        match self {
            BlockFormula::Free(_) => 0,
            BlockFormula::Block(_) => 1,
            BlockFormula::Not(g) => g.block_count(),
            BlockFormula::And(gs) | BlockFormula::Or(gs) => gs.iter().map(BlockFormula::block_count).sum(),
        }
    }
}

fn neg(b: BlockFormula) -> BlockFormula {
    match b {
        BlockFormula::Free(f) => BlockFormula::Free(Formula::not(f)),
        BlockFormula::Not(g) => *g,
        BlockFormula::And(gs) => BlockFormula::Or(gs.into_iter().map(neg).collect()),
        BlockFormula::Or(gs) => BlockFormula::And(gs.into_iter().map(neg).collect()),
        blk @ BlockFormula::Block(_) => BlockFormula::Not(Box::new(blk)),
    }
}

fn conj(items: Vec<BlockFormula>) -> BlockFormula {
    let mut flat = Vec::new();
    for it in items {
        match it {
            BlockFormula::And(gs) => flat.extend(gs),
            g => flat.push(g),
        }
    }
    if flat.iter().all(|g| matches!(g, BlockFormula::Free(_))) {
        return BlockFormula::Free(Formula::and(
            flat.into_iter()
                .map(|g| match g {
                    BlockFormula::Free(f) => f,
                    _ => unreachable!(),
                })
                .collect(),
        ));
    }
    if flat.len() == 1 {
        return flat.pop().unwrap();
    }
    BlockFormula::And(flat)
}

fn disj(items: Vec<BlockFormula>) -> BlockFormula {
    let mut flat = Vec::new();
    for it in items {
        match it {
            BlockFormula::Or(gs) => flat.extend(gs),
            g => flat.push(g),
        }
    }
    if flat.iter().all(|g| matches!(g, BlockFormula::Free(_))) {
        return BlockFormula::Free(Formula::or(
            flat.into_iter()
                .map(|g| match g {
                    BlockFormula::Free(f) => f,
                    _ => unreachable!(),
                })
                .collect(),
        ));
    }
    if flat.len() == 1 {
        return flat.pop().unwrap();
    }
    BlockFormula::Or(flat)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Quant {
    Real,
    OverE,
}

struct Normalizer {
    counter: Cell<usize>,
}

impl Normalizer {
    fn fresh(&self) -> String {
        let n = self.counter.get();
        self.counter.set(n + 1);
        format!("%e{n}")
    }

    fn norm(&self, f: &Formula) -> Result<BlockFormula> {
        if f.is_e_free() {
            return Ok(BlockFormula::Free(f.clone()));
        }
        match f {
            Formula::InE(t) => {
                let z = self.fresh();
                Ok(BlockFormula::Block(EBlock {
                    matrix: Formula::atom(Atom::eq(LinearForm::var(z.clone()), t.clone())),
                    vars: vec![z],
                }))
            }
            Formula::Not(g) => Ok(neg(self.norm(g)?)),
            Formula::And(gs) => Ok(conj(gs.iter().map(|g| self.norm(g)).collect::<Result<_>>()?)),
            Formula::Or(gs) => Ok(disj(gs.iter().map(|g| self.norm(g)).collect::<Result<_>>()?)),
            Formula::ExistsE(y, g) => {
                let z = self.fresh();
                let body = self.norm(&g.rename_free(y, &z))?;
                self.exists(Quant::OverE, &z, body)
            }
            Formula::ForallE(y, g) => {
                let z = self.fresh();
                let body = self.norm(&g.rename_free(y, &z))?;
                Ok(neg(self.exists(Quant::OverE, &z, neg(body))?))
            }
            Formula::Exists(v, g) => {
                let body = self.norm(g)?;
                self.exists(Quant::Real, v, body)
            }
            Formula::Forall(v, g) => {
                let body = self.norm(g)?;
                Ok(neg(self.exists(Quant::Real, v, neg(body))?))
            }
            Formula::True | Formula::False | Formula::Atom(_) => unreachable!("E-free"),
        }
    }

    fn exists(&self, q: Quant, var: &str, body: BlockFormula) -> Result<BlockFormula> {
        // Both domains are non-empty.
        if !body.mentions(var) {
            return Ok(body);
        }
        match body {
            BlockFormula::Free(f) => Ok(match q {
                Quant::OverE => BlockFormula::Block(EBlock {
                    vars: vec![var.to_string()],
                    matrix: f,
                }),
                Quant::Real => BlockFormula::Free(Formula::exists(var, f)),
            }),
            BlockFormula::Block(b) => Ok(BlockFormula::Block(self.absorb(q, var, vec![], vec![b]))),
            BlockFormula::Or(gs) => Ok(disj(
                gs.into_iter().map(|g| self.exists(q, var, g)).collect::<Result<_>>()?,
            )),
            BlockFormula::And(gs) => self.exists_conj(q, var, gs),
            BlockFormula::Not(_) => Err(alternation(q)),
        }
    }

    fn exists_conj(&self, q: Quant, var: &str, items: Vec<BlockFormula>) -> Result<BlockFormula> {
        if let Some(pos) = items
            .iter()
            .position(|g| matches!(g, BlockFormula::Or(_)) && g.mentions(var))
        {
            let mut rest = items;
            let BlockFormula::Or(alts) = rest.remove(pos) else {
                unreachable!()
            };
            let expanded = alts
                .into_iter()
                .map(|alt| {
                    let mut c = rest.clone();
                    c.push(alt);
                    self.exists(q, var, conj(c))
                })
                .collect::<Result<_>>()?;
            return Ok(disj(expanded));
        }
        let (inner, outer): (Vec<_>, Vec<_>) = items.into_iter().partition(|g| g.mentions(var));
        let mut free = Vec::new();
        let mut blocks = Vec::new();
        for g in inner {
            match g {
                BlockFormula::Free(f) => free.push(f),
                BlockFormula::Block(b) => blocks.push(b),
                BlockFormula::Not(_) => return Err(alternation(q)),
                BlockFormula::And(_) | BlockFormula::Or(_) => unreachable!("flattened and expanded"),
            }
        }
        let merged = if blocks.is_empty() && q == Quant::Real {
            BlockFormula::Free(Formula::exists(var, Formula::and(free)))
        } else {
            BlockFormula::Block(self.absorb(q, var, free, blocks))
        };
        let mut all = outer;
        all.push(merged);
        Ok(conj(all))
    }

    /// `exists var. (free and blocks...)` as a single block.
    fn absorb(&self, q: Quant, var: &str, free: Vec<Formula>, blocks: Vec<EBlock>) -> EBlock {
        let mut vars = Vec::new();
        if q == Quant::OverE {
            vars.push(var.to_string());
        }
        let mut parts = free;
        for b in blocks {
            vars.extend(b.vars);
            parts.push(b.matrix);
        }
        let mut matrix = Formula::and(parts);
        if q == Quant::Real {
            matrix = Formula::exists(var, matrix);
        }
        EBlock { vars, matrix }
    }
}

fn alternation(q: Quant) -> Error {
    Error::Fragment(match q {
        Quant::Real => "real quantifier scoping over a negated E-quantifier".into(),
        Quant::OverE => "E-quantifier scoping over a negated E-quantifier".into(),
    })
}

/// Converts a formula into block normal form.
pub fn to_blocks(f: &Formula) -> Result<BlockFormula> {
    Normalizer { counter: Cell::new(0) }.norm(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn blocks(s: &str) -> Result<BlockFormula> {
        to_blocks(&parse_formula(s).unwrap())
    }

    #[test]
    fn e_atom_is_a_block() {
        match blocks("E(x)").unwrap() {
            BlockFormula::Block(b) => {
                assert_eq!(b.vars.len(), 1);
                assert!(b.matrix.mentions_free("x"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nested_existentials_merge() {
        match blocks("exists y in E. exists z in E. x = y - z").unwrap() {
            BlockFormula::Block(b) => assert_eq!(b.vars.len(), 2),
            other => panic!("{other:?}"),
        }
        match blocks("exists y in E. E(y + x) and y < 3").unwrap() {
            BlockFormula::Block(b) => assert_eq!(b.vars.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn real_quantifier_commutes_with_positive_block() {
        match blocks("exists v. E(v) and x = 2*v").unwrap() {
            BlockFormula::Block(b) => {
                assert_eq!(b.vars.len(), 1);
                assert!(matches!(b.matrix, Formula::Exists(..)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn universal_e_is_a_complement() {
        let b = blocks("forall y in E. x < y").unwrap();
        assert!(matches!(b, BlockFormula::Not(_)));
    }

    #[test]
    fn alternations_rejected() {
        assert!(matches!(blocks("forall v. E(v) or x < v"), Err(Error::Fragment(_))));
        assert!(matches!(
            blocks("exists y in E. not E(y + x)"),
            Err(Error::Fragment(_))
        ));
        // a negated block not involving the quantified variable is fine
        assert!(blocks("exists y in E. y < x and not E(x)").is_ok());
    }

    #[test]
    fn e_free_stays_free() {
        assert!(matches!(blocks("exists y. x < y").unwrap(), BlockFormula::Free(_)));
    }
}
