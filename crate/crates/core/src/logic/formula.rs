use std::collections::BTreeSet;
use std::fmt;

use super::form::{Assignment, Atom, LinearForm};

/// First-order formulas over `<, =, +, 0, 1`, rational scalars and `E`.
///
/// Real quantifiers range over all reals; `ExistsE`/`ForallE` range over `E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    /// `E(t)`
    InE(LinearForm),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    ExistsE(String, Box<Formula>),
    ForallE(String, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Self {
        match a.truth() {
            Some(true) => Formula::True,
            Some(false) => Formula::False,
            None => Formula::Atom(a),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        match f {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(g) => *g,
            g => Formula::Not(Box::new(g)),
        }
    }

    /// Conjunction with constant folding; no flattening of nested `And`s.
    pub fn and(items: Vec<Formula>) -> Self {
        let mut out = Vec::with_capacity(items.len());
        for f in items {
            match f {
                Formula::True => {}
                Formula::False => return Formula::False,
                g => out.push(g),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    pub fn or(items: Vec<Formula>) -> Self {
        let mut out = Vec::with_capacity(items.len());
        for f in items {
            match f {
                Formula::False => {}
                Formula::True => return Formula::True,
                g => out.push(g),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists_e(v: impl Into<String>, body: Formula) -> Self {
        Formula::ExistsE(v.into(), Box::new(body))
    }

    pub fn forall_e(v: impl Into<String>, body: Formula) -> Self {
        Formula::ForallE(v.into(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add_form = |form: &LinearForm, bound: &Vec<String>| {
            for v in form.vars() {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => add_form(a.form(), bound),
            Formula::InE(t) => add_form(t, bound),
            Formula::Not(g) => g.collect_free(bound, out),
            Formula::And(gs) | Formula::Or(gs) => {
                for g in gs {
                    g.collect_free(bound, out);
                }
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) | Formula::ExistsE(v, g) | Formula::ForallE(v, g) => {
                bound.push(v.clone());
                g.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn mentions_free(&self, var: &str) -> bool {
        self.free_vars().contains(var)
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) | Formula::InE(_) => true,
            Formula::Not(g) => g.is_quantifier_free(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().all(Formula::is_quantifier_free),
            _ => false,
        }
    }

    /// No `E` atoms and no `E`-quantifiers.
    pub fn is_e_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::InE(_) | Formula::ExistsE(..) | Formula::ForallE(..) => false,
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.is_e_free(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().all(Formula::is_e_free),
        }
    }

    /// Replaces free occurrences of assigned variables by their values.
    pub fn substitute_values(&self, values: &Assignment) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::atom(a.partial_eval(values)),
            Formula::InE(t) => Formula::InE(t.partial_eval(values)),
            Formula::Not(g) => Formula::not(g.substitute_values(values)),
            Formula::And(gs) => Formula::and(gs.iter().map(|g| g.substitute_values(values)).collect()),
            Formula::Or(gs) => Formula::or(gs.iter().map(|g| g.substitute_values(values)).collect()),
            Formula::Exists(v, g) | Formula::Forall(v, g) | Formula::ExistsE(v, g) | Formula::ForallE(v, g) => {
                let body = if values.contains_key(v) {
                    let mut inner = values.clone();
                    inner.remove(v);
                    g.substitute_values(&inner)
                } else {
                    g.substitute_values(values)
                };
                self.rebind(v.clone(), body)
            }
        }
    }

    /// Renames free occurrences of `from` to `to`; `to` must not be captured.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::Atom(a.rename(from, to)),
            Formula::InE(t) => Formula::InE(t.rename(from, to)),
            Formula::Not(g) => Formula::Not(Box::new(g.rename_free(from, to))),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.rename_free(from, to)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.rename_free(from, to)).collect()),
            Formula::Exists(v, g) | Formula::Forall(v, g) | Formula::ExistsE(v, g) | Formula::ForallE(v, g) => {
                if v == from {
                    self.clone()
                } else {
                    self.rebind(v.clone(), g.rename_free(from, to))
                }
            }
        }
    }

    /// Same quantifier as `self`, new variable and body.
    fn rebind(&self, v: String, body: Formula) -> Formula {
        let body = Box::new(body);
        match self {
            Formula::Exists(..) => Formula::Exists(v, body),
            Formula::Forall(..) => Formula::Forall(v, body),
            Formula::ExistsE(..) => Formula::ExistsE(v, body),
            Formula::ForallE(..) => Formula::ForallE(v, body),
            _ => unreachable!("rebind on a non-quantifier"),
        }
    }

    /// Truth of a quantifier-free, E-free formula; `None` if a variable is
    /// unassigned.
    pub fn eval_qf(&self, values: &Assignment) -> Option<bool> {
        match self {
            Formula::True => Some(true),
            Formula::False => Some(false),
            Formula::Atom(a) => a.evaluate(values),
            Formula::Not(g) => g.eval_qf(values).map(|b| !b),
            Formula::And(gs) => {
                let mut all = true;
                for g in gs {
                    all &= g.eval_qf(values)?;
                }
                Some(all)
            }
            Formula::Or(gs) => {
                let mut any = false;
                for g in gs {
                    any |= g.eval_qf(values)?;
                }
                Some(any)
            }
            _ => None,
        }
    }

    fn is_quantifier(&self) -> bool {
        matches!(
            self,
            Formula::Exists(..) | Formula::Forall(..) | Formula::ExistsE(..) | Formula::ForallE(..)
        )
    }

    fn write_item(&self, f: &mut fmt::Formatter<'_>, wrap: bool) -> fmt::Result {
        if wrap {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::InE(t) => write!(f, "E({t})"),
            Formula::Not(g) => {
                write!(f, "not ")?;
                let wrap = !matches!(
                    **g,
                    Formula::True | Formula::False | Formula::Atom(_) | Formula::InE(_) | Formula::Not(_)
                );
                g.write_item(f, wrap)
            }
            Formula::And(gs) => {
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " and ")?;
                    }
                    let wrap = matches!(g, Formula::And(_) | Formula::Or(_)) || g.is_quantifier();
                    g.write_item(f, wrap)?;
                }
                Ok(())
            }
            Formula::Or(gs) => {
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " or ")?;
                    }
                    let wrap = matches!(g, Formula::Or(_)) || g.is_quantifier();
                    g.write_item(f, wrap)?;
                }
                Ok(())
            }
            Formula::Exists(v, g) => write!(f, "exists {v}. {g}"),
            Formula::Forall(v, g) => write!(f, "forall {v}. {g}"),
            Formula::ExistsE(v, g) => write!(f, "exists {v} in E. {g}"),
            Formula::ForallE(v, g) => write!(f, "forall {v} in E. {g}"),
        }
    }
}
