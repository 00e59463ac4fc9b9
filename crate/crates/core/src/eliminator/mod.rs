//! Removal of `E` from bounded definable sets.
//!
//! Inside a box `(-R, R)^n` an atom `v_x(x) + s(y) REL 0` whose `E`-part
//! `s = b.y + c` lies outside `[-H, H]`, `H = sup |v_x|`, is constant on
//! the box. Otherwise `s` ranges over the finite window `v(E^m) ∩ [-H, H]`.
//! So each block `exists y in E^m. theta(x, y)` is a finite union of E-free
//! cells in `x`, one per realizable choice of status for its atoms.

mod semilinear;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::logic::{
    cell_system, evaluate, evaluate_with_budget, qe_cells, to_blocks, Assignment, Atom, AtomRel, BlockFormula,
    EBlock, Formula, LinearForm,
};
use crate::numeric::{ExactRational, GeoBase};
use crate::progression::{enumerate_window, esystem_sat, CoeffVector, EConstraint, Relation, SatResult};

pub use crate::progression::DEFAULT_DEPTH_BUDGET;
pub use semilinear::{OpenBox, Piece, SemilinearSet};

/// How an atom with a nonzero real part behaves on the box for a given
/// value of its `E`-part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomStatus {
    /// The `E`-part takes this exact value.
    Window(ExactRational),
    AlwaysTrue,
    AlwaysFalse,
}

impl fmt::Display for AtomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomStatus::Window(v) => write!(f, "window {v}"),
            AtomStatus::AlwaysTrue => write!(f, "always true"),
            AtomStatus::AlwaysFalse => write!(f, "always false"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Exact,
    UnderApprox,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::UnderApprox => "under_approx",
        }
    }
}

/// A realizability query the exponent solver left open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    /// The cell in `x` the status vector would contribute.
    pub cell: Vec<Atom>,
    /// One status per atom with both a real and an `E` part.
    pub statuses: Vec<AtomStatus>,
    /// The exponent system, in the constraint file format.
    pub system: String,
}

impl Diagnostic {
    fn to_json(&self) -> Value {
        json!({
            "cell": self.cell.iter().map(semilinear::atom_json).collect::<Vec<_>>(),
            "statuses": self.statuses.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "system": self.system,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationResult {
    pub set: SemilinearSet,
    pub status: Status,
    pub diagnostics: Vec<Diagnostic>,
}

impl EliminationResult {
    /// The machine-readable document.
    pub fn to_json(&self) -> Value {
        let bx = self.set.bounding_box();
        json!({
            "status": self.status.as_str(),
            "box": { "n": bx.n(), "R": bx.radius().to_string() },
            "vars": self.set.vars(),
            "cells": self.set.cells_json(),
            "diagnostics": self.diagnostics.iter().map(Diagnostic::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Lower and upper approximations of a set. `upper` is `None` when the
/// two coincide.
#[derive(Clone)]
struct Bounds {
    lower: SemilinearSet,
    upper: Option<SemilinearSet>,
}

impl Bounds {
    fn exact(s: SemilinearSet) -> Self {
        Bounds { lower: s, upper: None }
    }

    fn upper(&self) -> &SemilinearSet {
        self.upper.as_ref().unwrap_or(&self.lower)
    }

    fn combine(&self, other: &Bounds, op: impl Fn(&SemilinearSet, &SemilinearSet) -> Result<SemilinearSet>) -> Result<Bounds> {
        let lower = op(&self.lower, &other.lower)?;
        let upper = if self.upper.is_none() && other.upper.is_none() {
            None
        } else {
            Some(op(self.upper(), other.upper())?)
        };
        Ok(Bounds { lower, upper })
    }
}

struct Eliminator<'a> {
    vars: &'a [String],
    bx: &'a OpenBox,
    base: &'a GeoBase,
    depth_budget: u32,
    diagnostics: Vec<Diagnostic>,
}

/// An `E`-free set equal to `f` inside the box, with the free variables of
/// `f` in sorted order as coordinates.
pub fn eliminate_bounded(f: &Formula, bx: &OpenBox, base: &GeoBase, depth_budget: u32) -> Result<EliminationResult> {
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    eliminate_bounded_in(f, &vars, bx, base, depth_budget)
}

/// Like [`eliminate_bounded`] with explicit coordinates; `vars` must cover
/// the free variables of `f`.
pub fn eliminate_bounded_in(
    f: &Formula,
    vars: &[String],
    bx: &OpenBox,
    base: &GeoBase,
    depth_budget: u32,
) -> Result<EliminationResult> {
    if depth_budget == 0 {
        return Err(Error::invalid("depth budget must be at least 1"));
    }
    if vars.len() != bx.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for a box of dimension {}",
            vars.len(),
            bx.n()
        )));
    }
    if vars.iter().collect::<BTreeSet<_>>().len() != vars.len() {
        return Err(Error::invalid("repeated coordinate variable"));
    }
    if let Some(v) = f.free_vars().into_iter().find(|v| !vars.contains(v)) {
        return Err(Error::UnboundVariable(v));
    }
    let blocks = to_blocks(f)?;
    let mut el = Eliminator {
        vars,
        bx,
        base,
        depth_budget,
        diagnostics: Vec::new(),
    };
    let bounds = el.set_of(&blocks)?;
    let status = if el.diagnostics.is_empty() {
        Status::Exact
    } else {
        Status::UnderApprox
    };
    Ok(EliminationResult {
        set: bounds.lower,
        status,
        diagnostics: el.diagnostics,
    })
}

impl Eliminator<'_> {
    fn make(&self, cells: Vec<Vec<Atom>>) -> Result<SemilinearSet> {
        SemilinearSet::new(self.vars.to_vec(), cells, self.bx.clone())
    }

    fn set_of(&mut self, b: &BlockFormula) -> Result<Bounds> {
        match b {
            BlockFormula::Free(g) => Ok(Bounds::exact(self.make(qe_cells(g)?.cells)?)),
            BlockFormula::Block(blk) => self.block(blk),
            BlockFormula::Not(g) => {
                let inner = self.set_of(g)?;
                Ok(match &inner.upper {
                    None => Bounds::exact(inner.lower.complement()?),
                    Some(up) => Bounds {
                        lower: up.complement()?,
                        upper: Some(inner.lower.complement()?),
                    },
                })
            }
            BlockFormula::And(gs) | BlockFormula::Or(gs) => {
                let is_and = matches!(b, BlockFormula::And(_));
                let mut acc: Option<Bounds> = None;
                for g in gs {
                    let s = self.set_of(g)?;
                    acc = Some(match acc {
                        None => s,
                        Some(a) if is_and => a.combine(&s, SemilinearSet::intersection)?,
                        Some(a) => a.combine(&s, SemilinearSet::union)?,
                    });
                }
                match acc {
                    Some(a) => Ok(a),
                    None if is_and => Ok(Bounds::exact(self.make(vec![vec![]])?)),
                    None => Ok(Bounds::exact(self.make(vec![])?)),
                }
            }
        }
    }

    fn block(&mut self, blk: &EBlock) -> Result<Bounds> {
        let mut lower: BTreeSet<Vec<Atom>> = BTreeSet::new();
        let mut upper: BTreeSet<Vec<Atom>> = BTreeSet::new();
        for cell in qe_cells(&blk.matrix)?.cells {
            self.block_cell(blk, &cell, &mut lower, &mut upper)?;
        }
        let exact = lower == upper;
        let lower = self.make(lower.into_iter().collect())?;
        Ok(if exact {
            Bounds::exact(lower)
        } else {
            Bounds {
                lower,
                upper: Some(self.make(upper.into_iter().collect())?),
            }
        })
    }

    fn block_cell(
        &mut self,
        blk: &EBlock,
        cell: &[Atom],
        lower: &mut BTreeSet<Vec<Atom>>,
        upper: &mut BTreeSet<Vec<Atom>>,
    ) -> Result<()> {
        let is_block_var = |v: &str| blk.vars.iter().any(|b| b == v);
        let mut x_atoms = Vec::new();
        let mut e_atoms = Vec::new();
        let mut mixed = Vec::new();
        for a in cell {
            let x_part = a.form().restrict(|v| !is_block_var(v));
            let has_x = !x_part.is_constant();
            let has_e = a.form().vars().any(|v| is_block_var(v));
            match (has_x, has_e) {
                (_, false) => x_atoms.push(a.clone()),
                (false, true) => e_atoms.push(a.clone()),
                (true, true) => mixed.push(self.options(a, &blk.vars)?),
            }
        }
        let probe = self.make(vec![])?;
        if !probe.cell_feasible(&x_atoms) {
            return Ok(());
        }
        let mut choice = Vec::with_capacity(mixed.len());
        self.search(blk, &mixed, &mut choice, &x_atoms, &e_atoms, &probe, lower, upper)
    }

    /// The possible statuses of a mixed atom. Each status comes with the
    /// `E`-constraint it imposes and the `x`-atom it leaves, if any.
    fn options(&self, a: &Atom, block_vars: &[String]) -> Result<Vec<MixedOption>> {
        let is_block_var = |v: &str| block_vars.iter().any(|b| b == v);
        let x_part = a.form().restrict(|v| !is_block_var(v));
        let e_lin = a.form().restrict(is_block_var);
        let c = a.form().constant_term().clone();
        let h = self.bx.radius() * x_part.l1_norm();
        let e_coeffs: Vec<ExactRational> = block_vars.iter().map(|v| e_lin.coeff(v)).collect();

        // values w of b.y with |w + c| <= H
        let support: Vec<usize> = (0..e_coeffs.len()).filter(|&j| !e_coeffs[j].is_zero()).collect();
        let sub = CoeffVector::new(support.iter().map(|&j| e_coeffs[j].clone()).collect());
        let radius = &h + c.abs() + BigRational::one();
        let window = enumerate_window(self.base, &sub, &radius)?;

        let mut out = Vec::new();
        for w in window.values() {
            let s = w + &c;
            if s.abs() > h {
                continue;
            }
            let x_atom = Atom::new(x_part.clone() + LinearForm::constant(s.clone()), a.rel());
            out.push(MixedOption {
                status: AtomStatus::Window(s),
                row: Some(EConstraint::new(CoeffVector::new(e_coeffs.clone()), Relation::Eq, w.clone())),
                x_atom: Some(x_atom),
            });
        }
        if a.rel() == AtomRel::Lt {
            // s < -H: v_x < H <= -s on the open box
            out.push(MixedOption {
                status: AtomStatus::AlwaysTrue,
                row: Some(EConstraint::new(CoeffVector::new(e_coeffs), Relation::Lt, -&h - &c)),
                x_atom: None,
            });
        }
        // For `=` atoms a value outside [-H, H] is never attained, and for
        // `<` atoms s > H is always false; neither contributes a cell.
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &mut self,
        blk: &EBlock,
        mixed: &[Vec<MixedOption>],
        choice: &mut Vec<usize>,
        x_atoms: &[Atom],
        e_atoms: &[Atom],
        probe: &SemilinearSet,
        lower: &mut BTreeSet<Vec<Atom>>,
        upper: &mut BTreeSet<Vec<Atom>>,
    ) -> Result<()> {
        let i = choice.len();
        if i == mixed.len() {
            return self.leaf(blk, mixed, choice, x_atoms, e_atoms, lower, upper);
        }
        for (j, opt) in mixed[i].iter().enumerate() {
            let mut xs = x_atoms.to_vec();
            if let Some(a) = &opt.x_atom {
                xs.push(a.clone());
                if !probe.cell_feasible(&xs) {
                    continue;
                }
            }
            choice.push(j);
            self.search(blk, mixed, choice, &xs, e_atoms, probe, lower, upper)?;
            choice.pop();
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn leaf(
        &mut self,
        blk: &EBlock,
        mixed: &[Vec<MixedOption>],
        choice: &[usize],
        x_atoms: &[Atom],
        e_atoms: &[Atom],
        lower: &mut BTreeSet<Vec<Atom>>,
        upper: &mut BTreeSet<Vec<Atom>>,
    ) -> Result<()> {
        let Some(x_cell) = crate::logic::normalize_cell(x_atoms.to_vec()) else {
            return Ok(());
        };
        if lower.contains(&x_cell) {
            return Ok(());
        }
        let mut system = cell_system(&blk.vars, e_atoms)?;
        let mut rows = system.constraints().to_vec();
        for (opts, &j) in mixed.iter().zip(choice) {
            if let Some(r) = &opts[j].row {
                rows.push(r.clone());
            }
        }
        system = crate::progression::EConstraintSystem::new(blk.vars.len(), rows)?;
        match esystem_sat(self.base, &system, self.depth_budget)? {
            SatResult::Sat { .. } => {
                upper.insert(x_cell.clone());
                lower.insert(x_cell);
            }
            SatResult::Unsat { .. } => {}
            SatResult::Unknown { .. } => {
                self.diagnostics.push(Diagnostic {
                    cell: x_cell.clone(),
                    statuses: mixed.iter().zip(choice).map(|(o, &j)| o[j].status.clone()).collect(),
                    system: system.to_string(),
                });
                upper.insert(x_cell);
            }
        }
        Ok(())
    }
}

struct MixedOption {
    status: AtomStatus,
    row: Option<EConstraint>,
    x_atom: Option<Atom>,
}

/// Union, intersection or complement inside the common box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Complement,
}

pub fn semilinear_boolean(op: SetOp, a: &SemilinearSet, b: Option<&SemilinearSet>) -> Result<SemilinearSet> {
    let need = || Error::invalid("binary set operation needs two sets");
    match op {
        SetOp::Union => a.union(b.ok_or_else(need)?),
        SetOp::Intersection => a.intersection(b.ok_or_else(need)?),
        SetOp::Complement => match b {
            None => a.complement(),
            Some(_) => Err(Error::invalid("complement takes one set")),
        },
    }
}

/// Truth of `f` at `point`, coordinates matched to the sorted free
/// variables of `f`.
pub fn decide_membership(f: &Formula, point: &[ExactRational], base: &GeoBase) -> Result<bool> {
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    decide_membership_in(f, &vars, point, base, DEFAULT_DEPTH_BUDGET)
}

pub fn decide_membership_in(
    f: &Formula,
    vars: &[String],
    point: &[ExactRational],
    base: &GeoBase,
    depth_budget: u32,
) -> Result<bool> {
    if vars.len() != point.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for {} variables",
            point.len(),
            vars.len()
        )));
    }
    let values: Assignment = vars.iter().cloned().zip(point.iter().cloned()).collect();
    if depth_budget == DEFAULT_DEPTH_BUDGET {
        evaluate(f, &values, base)
    } else {
        evaluate_with_budget(f, &values, base, depth_budget)
    }
}
