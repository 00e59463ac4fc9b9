use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::logic::{fm, normalize_cell, Assignment, Atom, AtomRel, LinearForm};
use crate::numeric::ExactRational;

/// The open box `(-R, R)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpenBox {
    n: usize,
    radius: ExactRational,
}

impl OpenBox {
    pub fn new(n: usize, radius: ExactRational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::invalid(format!("box radius must be positive, got {radius}")));
        }
        Ok(OpenBox { n, radius })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> &ExactRational {
        &self.radius
    }

    pub fn contains(&self, point: &[ExactRational]) -> bool {
        point.len() == self.n && point.iter().all(|x| x.abs() < self.radius)
    }

    /// `-R < v < R` for each variable.
    pub fn atoms(&self, vars: &[String]) -> Vec<Atom> {
        let r = LinearForm::constant(self.radius.clone());
        vars.iter()
            .flat_map(|v| {
                let x = LinearForm::var(v.clone());
                [Atom::lt(x.clone(), r.clone()), Atom::lt(-r.clone(), x)]
            })
            .collect()
    }
}

/// A finite union of cells intersected with a box. Cells are conjunctions of
/// `=`/`<` atoms over `vars`; each is non-empty inside the box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearSet {
    vars: Vec<String>,
    cells: Vec<Vec<Atom>>,
    bx: OpenBox,
}

/// A connected piece of a one-dimensional set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    Point(ExactRational),
    /// Open interval `(lo, hi)`, `lo < hi`.
    Interval(ExactRational, ExactRational),
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Point(p) => write!(f, "{{{p}}}"),
            Piece::Interval(lo, hi) => write!(f, "({lo}, {hi})"),
        }
    }
}

impl SemilinearSet {
    /// Builds a set from raw cells: empty cells are dropped and the rest
    /// canonicalized.
    pub fn new(vars: Vec<String>, cells: Vec<Vec<Atom>>, bx: OpenBox) -> Result<Self> {
        if vars.len() != bx.n {
            return Err(Error::DimensionMismatch(format!(
                "{} variables for a box of dimension {}",
                vars.len(),
                bx.n
            )));
        }
        let known: BTreeSet<&String> = vars.iter().collect();
        for cell in &cells {
            for a in cell {
                if let Some(v) = a.form().vars().find(|v| !known.contains(v)) {
                    return Err(Error::UnboundVariable(v.clone()));
                }
            }
        }
        let mut s = SemilinearSet { vars, cells, bx };
        s.normalize();
        Ok(s)
    }

    pub fn empty(vars: Vec<String>, bx: OpenBox) -> Result<Self> {
        Self::new(vars, vec![], bx)
    }

    /// The whole box.
    pub fn full(vars: Vec<String>, bx: OpenBox) -> Result<Self> {
        Self::new(vars, vec![vec![]], bx)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn cells(&self) -> &[Vec<Atom>] {
        &self.cells
    }

    pub fn bounding_box(&self) -> &OpenBox {
        &self.bx
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub(crate) fn cell_feasible(&self, cell: &[Atom]) -> bool {
        let mut all = cell.to_vec();
        all.extend(self.bx.atoms(&self.vars));
        fm::cell_feasible(&all)
    }

    fn normalize(&mut self) {
        let cells: BTreeSet<Vec<Atom>> = std::mem::take(&mut self.cells)
            .into_iter()
            .filter_map(normalize_cell)
            .filter(|c| self.cell_feasible(c))
            .collect();
        self.cells = if cells.contains(&Vec::new()) {
            vec![vec![]]
        } else {
            cells.into_iter().collect()
        };
    }

    pub fn contains(&self, point: &[ExactRational]) -> bool {
        if !self.bx.contains(point) {
            return false;
        }
        let values: Assignment = self.vars.iter().cloned().zip(point.iter().cloned()).collect();
        self.cells
            .iter()
            .any(|cell| cell.iter().all(|a| a.evaluate(&values) == Some(true)))
    }

    fn check_compatible(&self, other: &SemilinearSet) -> Result<()> {
        if self.bx != other.bx || self.vars != other.vars {
            return Err(Error::DimensionMismatch(format!(
                "sets over {:?} in radius {} and {:?} in radius {}",
                self.vars, self.bx.radius, other.vars, other.bx.radius
            )));
        }
        Ok(())
    }

    pub fn union(&self, other: &SemilinearSet) -> Result<Self> {
        self.check_compatible(other)?;
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Self::new(self.vars.clone(), cells, self.bx.clone())
    }

    pub fn intersection(&self, other: &SemilinearSet) -> Result<Self> {
        self.check_compatible(other)?;
        let mut cells = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                let mut c = a.clone();
                c.extend(b.iter().cloned());
                cells.push(c);
            }
        }
        Self::new(self.vars.clone(), cells, self.bx.clone())
    }

    /// Complement inside the box: each cell is negated atom by atom and the
    /// disjunctions are distributed, pruning empty cells as they appear.
    pub fn complement(&self) -> Result<Self> {
        let mut acc: Vec<Vec<Atom>> = vec![vec![]];
        for cell in &self.cells {
            let negs: Vec<Atom> = cell.iter().flat_map(Atom::negate).collect();
            let mut next = BTreeSet::new();
            for a in &acc {
                for n in &negs {
                    let mut c = a.clone();
                    c.push(n.clone());
                    if let Some(c) = normalize_cell(c) {
                        if self.cell_feasible(&c) {
                            next.insert(c);
                        }
                    }
                }
            }
            acc = next.into_iter().collect();
            if acc.is_empty() {
                break;
            }
        }
        Self::new(self.vars.clone(), acc, self.bx.clone())
    }

    /// Same cells in a smaller or larger box.
    pub fn with_box(&self, bx: OpenBox) -> Result<Self> {
        Self::new(self.vars.clone(), self.cells.clone(), bx)
    }

    /// Decomposition of a one-dimensional set into disjoint points and open
    /// intervals, in increasing order.
    pub fn pieces(&self) -> Result<Vec<Piece>> {
        if self.bx.n != 1 {
            return Err(Error::DimensionMismatch(format!(
                "interval decomposition needs dimension 1, got {}",
                self.bx.n
            )));
        }
        let var = &self.vars[0];
        let r = &self.bx.radius;
        let mut raw = Vec::new();
        for cell in &self.cells {
            let mut lo = -r.clone();
            let mut hi = r.clone();
            let mut point: Option<ExactRational> = None;
            for a in cell {
                let (coef, rest) = a.form().split(var);
                let t = -rest.constant_term() / &coef;
                match a.rel() {
                    AtomRel::Eq => point = Some(t),
                    AtomRel::Lt if coef.is_positive() => hi = hi.min(t),
                    AtomRel::Lt => lo = lo.max(t),
                }
            }
            match point {
                Some(p) if lo < p && p < hi => raw.push(Piece::Point(p)),
                Some(_) => {}
                None if lo < hi => raw.push(Piece::Interval(lo, hi)),
                None => {}
            }
        }
        Ok(merge_pieces(raw))
    }

    /// Human-readable rendering: interval chains in one dimension, atom
    /// conjunctions otherwise.
    pub fn render(&self) -> String {
        if self.cells.is_empty() {
            return "empty".into();
        }
        if let Ok(pieces) = self.pieces() {
            let var = &self.vars[0];
            return pieces
                .iter()
                .map(|p| match p {
                    Piece::Point(q) => format!("{var} = {q}"),
                    Piece::Interval(lo, hi) => format!("{lo} < {var} < {hi}"),
                })
                .collect::<Vec<_>>()
                .join("\n");
        }
        self.cells
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "true".to_string()
                } else {
                    c.iter().map(Atom::to_string).collect::<Vec<_>>().join(" and ")
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn cells_json(&self) -> Value {
        Value::Array(
            self.cells
                .iter()
                .map(|c| Value::Array(c.iter().map(atom_json).collect()))
                .collect(),
        )
    }
}

pub(crate) fn atom_json(a: &Atom) -> Value {
    let coeffs: serde_json::Map<String, Value> = a
        .form()
        .coeffs()
        .iter()
        .map(|(v, c)| (v.clone(), Value::String(c.to_string())))
        .collect();
    json!({
        "coeffs": coeffs,
        "const": a.form().constant_term().to_string(),
        "rel": a.rel().symbol(),
    })
}

fn merge_pieces(mut raw: Vec<Piece>) -> Vec<Piece> {
    // Sort by left end, points before intervals starting there.
    let key = |p: &Piece| -> (ExactRational, u8) {
        match p {
            Piece::Point(q) => (q.clone(), 0),
            Piece::Interval(lo, _) => (lo.clone(), 1),
        }
    };
    raw.sort_by_key(key);
    let mut out: Vec<Piece> = Vec::new();
    for p in raw {
        let merged = match (out.last_mut(), &p) {
            (Some(Piece::Interval(_, hi)), Piece::Point(q)) if q < hi => true,
            (Some(Piece::Interval(_, hi)), Piece::Interval(lo, hi2)) if lo < hi => {
                if hi2 > hi {
                    *hi = hi2.clone();
                }
                true
            }
            (Some(Piece::Point(q)), Piece::Point(q2)) => q == q2,
            _ => false,
        };
        if !merged {
            out.push(p);
        }
    }
    // (a, b) {b} (b, c) becomes (a, c); a point touching one interval end stays.
    let mut joined: Vec<Piece> = Vec::new();
    let mut i = 0;
    while i < out.len() {
        if let (Some(Piece::Interval(_, hi)), Some(Piece::Point(q)), Some(Piece::Interval(lo2, hi2))) =
            (joined.last_mut(), out.get(i), out.get(i + 1))
        {
            if hi == q && lo2 == q {
                *hi = hi2.clone();
                i += 2;
                continue;
            }
        }
        joined.push(out[i].clone());
        i += 1;
    }
    debug_assert!(joined.windows(2).all(|w| match (&w[0], &w[1]) {
        (Piece::Interval(_, a), Piece::Interval(b, _)) => a <= b,
        _ => true,
    }));
    joined
}
