//! Fourier–Motzkin elimination over exact rationals.
//!
//! Constraints have the shape `form REL 0` with `REL` one of `=`, `<`, `<=`.
//! Equalities are eliminated by substitution; otherwise every lower bound is
//! paired with every upper bound. Over a dense order without endpoints this
//! is exact, including for strict bounds.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::form::{Atom, AtomRel, LinearForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Eq,
    Lt,
    Le,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinConstraint {
    form: LinearForm,
    kind: Kind,
}

impl LinConstraint {
    pub fn new(form: LinearForm, kind: Kind) -> Self {
        let form = match form.leading().map(|(_, c)| c.clone()) {
            None => form,
            Some(lead) => match kind {
                Kind::Eq => form.scale(&lead.recip()),
                _ => form.scale(&lead.abs().recip()),
            },
        };
        LinConstraint { form, kind }
    }

    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    fn truth(&self) -> Option<bool> {
        if !self.form.is_constant() {
            return None;
        }
        let c = self.form.constant_term();
        Some(match self.kind {
            Kind::Eq => c.is_zero(),
            Kind::Lt => c.is_negative(),
            Kind::Le => !c.is_positive(),
        })
    }
}

impl From<&Atom> for LinConstraint {
    fn from(a: &Atom) -> Self {
        let kind = match a.rel() {
            AtomRel::Eq => Kind::Eq,
            AtomRel::Lt => Kind::Lt,
        };
        LinConstraint::new(a.form().clone(), kind)
    }
}

/// Eliminates `var` from a conjunction. Returns `None` when a ground
/// constraint turns out false.
pub fn eliminate(constraints: Vec<LinConstraint>, var: &str) -> Option<Vec<LinConstraint>> {
    let pivot = constraints
        .iter()
        .position(|c| c.kind == Kind::Eq && c.form.mentions(var));

    let mut out = BTreeSet::new();
    let push = |c: LinConstraint, out: &mut BTreeSet<LinConstraint>| -> bool {
        match c.truth() {
            Some(true) => true,
            Some(false) => false,
            None => {
                out.insert(c);
                true
            }
        }
    };

    if let Some(p) = pivot {
        let (a, rest) = constraints[p].form.split(var);
        // var = -rest / a
        let value = (-rest).scale(&a.recip());
        for (i, c) in constraints.iter().enumerate() {
            if i == p {
                continue;
            }
            let sub = LinConstraint::new(c.form.substitute(var, &value), c.kind);
            if !push(sub, &mut out) {
                return None;
            }
        }
        return Some(out.into_iter().collect());
    }

    // a*var + t REL 0. For a > 0 this is var REL -t/a (upper bound),
    // for a < 0 it is var REL' -t/a with the direction reversed (lower bound).
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    for c in constraints {
        let (a, rest) = c.form.split(var);
        if a.is_zero() {
            if !push(c, &mut out) {
                return None;
            }
            continue;
        }
        let bound = (-rest).scale(&a.recip());
        let strict = c.kind == Kind::Lt;
        if a.is_positive() {
            uppers.push((bound, strict));
        } else {
            lowers.push((bound, strict));
        }
    }
    for (lo, lo_strict) in &lowers {
        for (hi, hi_strict) in &uppers {
            let kind = if *lo_strict || *hi_strict { Kind::Lt } else { Kind::Le };
            if !push(LinConstraint::new(lo.clone() - hi.clone(), kind), &mut out) {
                return None;
            }
        }
    }
    Some(out.into_iter().collect())
}

/// Satisfiability of a conjunction over the reals.
pub fn feasible(constraints: Vec<LinConstraint>) -> bool {
    let mut current = Vec::with_capacity(constraints.len());
    for c in constraints {
        match c.truth() {
            Some(false) => return false,
            Some(true) => {}
            None => current.push(c),
        }
    }
    loop {
        let var = match current.iter().flat_map(|c| c.form.vars()).next() {
            None => return true,
            Some(v) => v.clone(),
        };
        match eliminate(current, &var) {
            None => return false,
            Some(next) => current = next,
        }
    }
}

/// Eliminates `var` from a conjunction of `=`/`<` atoms; `None` means the
/// result is unsatisfiable.
pub fn eliminate_from_cell(cell: &[Atom], var: &str) -> Option<Vec<Atom>> {
    let cs = cell.iter().map(LinConstraint::from).collect();
    let out = eliminate(cs, var)?;
    Some(
        out.into_iter()
            .map(|c| {
                let rel = match c.kind {
                    Kind::Eq => AtomRel::Eq,
                    Kind::Lt => AtomRel::Lt,
                    Kind::Le => unreachable!("strict and equality inputs yield no weak bounds"),
                };
                Atom::new(c.form, rel)
            })
            .collect(),
    )
}

pub fn cell_feasible(cell: &[Atom]) -> bool {
    feasible(cell.iter().map(LinConstraint::from).collect())
}
