//! Satisfiability of linear constraint systems over exponent tuples.
//!
//! A system `sum_j a_ij rho^(k_j) REL_i c_i` is decided in three stages:
//!
//! 1. constant rows and a small exhaustive search near the origin;
//! 2. rows whose direction is bounded on both sides (or fixed by `=`) are
//!    replaced by the finitely many values their window admits;
//! 3. the remaining systems are split by the order type of the exponents.
//!    A case fixes a permutation and, for each consecutive gap (the first
//!    gap is measured from 0), either its exact size or a lower bound.
//!    Variables joined by exact gaps move together, so a case with at most
//!    one free block reduces to a one-dimensional exact problem; cases with
//!    more free blocks are tested against their real relaxation and refined
//!    when the relaxation is feasible.
//!
//! The case split covers every tuple, so exhausting it proves UNSAT. Cases
//! still open when the gap budget runs out make the answer UNKNOWN.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{enumerate_window, CoeffVector};
use crate::error::{Error, Result};
use crate::logic::fm::{self, Kind, LinConstraint};
use crate::logic::LinearForm;
use crate::numeric::{parse_rational, ExactRational, Exponent, GeoBase};

pub const DEFAULT_DEPTH_BUDGET: u32 = 64;

const MAX_CASES: usize = 200_000;
const MAX_BRANCHES: usize = 256;
const QUICK_SEARCH_TUPLES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &ExactRational, rhs: &ExactRational) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    /// The relation obtained by multiplying both sides by a negative number.
    pub fn mirrored(self) -> Self {
        match self {
            Relation::Eq => Relation::Eq,
            Relation::Lt => Relation::Gt,
            Relation::Le => Relation::Ge,
            Relation::Gt => Relation::Lt,
            Relation::Ge => Relation::Le,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    fn is_upper(self) -> bool {
        matches!(self, Relation::Lt | Relation::Le)
    }

    fn is_lower(self) -> bool {
        matches!(self, Relation::Gt | Relation::Ge)
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "=" => Relation::Eq,
            "<" => Relation::Lt,
            "<=" => Relation::Le,
            ">" => Relation::Gt,
            ">=" => Relation::Ge,
            _ => return Err(Error::invalid(format!("unknown relation `{s}`"))),
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `sum_j coeffs_j rho^(k_j) REL bound`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EConstraint {
    pub coeffs: CoeffVector,
    pub rel: Relation,
    pub bound: ExactRational,
}

impl EConstraint {
    pub fn new(coeffs: CoeffVector, rel: Relation, bound: ExactRational) -> Self {
        EConstraint { coeffs, rel, bound }
    }

    pub fn satisfied_by(&self, base: &GeoBase, exponents: &[Exponent]) -> bool {
        self.rel.holds(&self.coeffs.evaluate(base, exponents), &self.bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EConstraintSystem {
    m: usize,
    constraints: Vec<EConstraint>,
}

impl EConstraintSystem {
    pub fn new(m: usize, constraints: Vec<EConstraint>) -> Result<Self> {
        if let Some((i, c)) = constraints.iter().enumerate().find(|(_, c)| c.coeffs.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "constraint {i} has {} coefficients, expected {m}",
                c.coeffs.len()
            )));
        }
        Ok(EConstraintSystem { m, constraints })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn constraints(&self) -> &[EConstraint] {
        &self.constraints
    }

    pub fn satisfied_by(&self, base: &GeoBase, exponents: &[Exponent]) -> bool {
        exponents.len() == self.m && self.constraints.iter().all(|c| c.satisfied_by(base, exponents))
    }

    /// Reads the line format `a1 a2 ... am REL c`, with `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = None;
        let mut constraints = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax {
                line: lineno + 1,
                column: 1,
                message,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() < 2 {
                return Err(syntax("expected `a1 ... am REL c`".into()));
            }
            let bound = parse_rational(tokens[tokens.len() - 1]).map_err(|e| syntax(e.to_string()))?;
            let rel: Relation = tokens[tokens.len() - 2].parse().map_err(|e: Error| syntax(e.to_string()))?;
            let coeffs = tokens[..tokens.len() - 2]
                .iter()
                .map(|t| parse_rational(t))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| syntax(e.to_string()))?;
            match m {
                None => m = Some(coeffs.len()),
                Some(m) if m != coeffs.len() => {
                    return Err(syntax(format!("expected {m} coefficients, found {}", coeffs.len())));
                }
                _ => {}
            }
            constraints.push(EConstraint::new(CoeffVector::new(coeffs), rel, bound));
        }
        EConstraintSystem::new(m.unwrap_or(0), constraints)
    }
}

impl FromStr for EConstraintSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EConstraintSystem::parse(s)
    }
}

impl fmt::Display for EConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            if c.coeffs.is_empty() {
                writeln!(f, "{} {}", c.rel, c.bound)?;
            } else {
                writeln!(f, "{} {} {}", c.coeffs, c.rel, c.bound)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnsatCertificate {
    /// A constraint with all-zero coefficients is false.
    ConstantFalse { constraint: usize },
    /// Constraints sharing one direction bound it to a window containing no
    /// achievable value.
    EmptyWindow {
        constraints: Vec<usize>,
        radius: ExactRational,
    },
    /// Every case of the order-type split was refuted.
    CasesExhausted {
        branches: usize,
        cases: usize,
        max_gap: Exponent,
    },
}

impl fmt::Display for UnsatCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnsatCertificate::ConstantFalse { constraint } => {
                write!(f, "constraint {constraint} is constant and false")
            }
            UnsatCertificate::EmptyWindow { constraints, radius } => {
                write!(f, "constraints {constraints:?} admit no value in the window of radius {radius}")
            }
            UnsatCertificate::CasesExhausted {
                branches,
                cases,
                max_gap,
            } => write!(
                f,
                "{cases} order-type cases over {branches} branch(es) refuted, gaps refined to {max_gap}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat { witness: Vec<Exponent> },
    Unsat { certificate: UnsatCertificate },
    Unknown { depth_budget: u32, open_cases: usize },
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat { .. })
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SatResult::Unsat { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, SatResult::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&[Exponent]> {
        match self {
            SatResult::Sat { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            SatResult::Sat { .. } => "sat",
            SatResult::Unsat { .. } => "unsat",
            SatResult::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<ExactRational>,
    rel: Relation,
    bound: ExactRational,
}

impl Row {
    /// Direction scaled so that its first nonzero coefficient is 1.
    fn normalized(&self) -> Row {
        let lead = self.coeffs.iter().find(|c| !c.is_zero()).cloned().expect("non-constant row");
        let inv = lead.recip();
        Row {
            coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
            rel: if lead.is_negative() { self.rel.mirrored() } else { self.rel },
            bound: &self.bound * &inv,
        }
    }
}

/// Decides whether some `k in N^m` satisfies the system. `depth_budget`
/// bounds the gap sizes the case split refines to.
pub fn esystem_sat(base: &GeoBase, system: &EConstraintSystem, depth_budget: u32) -> Result<SatResult> {
    if depth_budget == 0 {
        return Err(Error::invalid("depth budget must be at least 1"));
    }
    let zero = BigRational::zero();
    for (i, c) in system.constraints.iter().enumerate() {
        if c.coeffs.is_zero() && !c.rel.holds(&zero, &c.bound) {
            return Ok(SatResult::Unsat {
                certificate: UnsatCertificate::ConstantFalse { constraint: i },
            });
        }
    }
    let m = system.m;
    let live: Vec<(usize, Row)> = system
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.coeffs.is_zero())
        .map(|(i, c)| {
            (
                i,
                Row {
                    coeffs: c.coeffs.as_slice().to_vec(),
                    rel: c.rel,
                    bound: c.bound.clone(),
                },
            )
        })
        .collect();
    if live.is_empty() {
        return Ok(SatResult::Sat { witness: vec![0; m] });
    }

    let rows: Vec<Row> = live.iter().map(|(_, r)| r.clone()).collect();
    let max_exp = (depth_budget as usize + 1) * m + 1;
    let powers = base.powers(max_exp as Exponent);

    if let Some(w) = quick_search(&powers, m, &rows, depth_budget) {
        return Ok(finish(base, system, w, depth_budget));
    }

    // Directions bounded on both sides take finitely many values.
    let mut groups: BTreeMap<Vec<ExactRational>, Vec<usize>> = BTreeMap::new();
    let normalized: Vec<Row> = rows.iter().map(Row::normalized).collect();
    for (idx, r) in normalized.iter().enumerate() {
        groups.entry(r.coeffs.clone()).or_default().push(idx);
    }
    let mut windows: Vec<(Vec<usize>, Vec<ExactRational>)> = Vec::new();
    for (dir, members) in &groups {
        let rels: Vec<Relation> = members.iter().map(|&i| normalized[i].rel).collect();
        let bounded = rels.contains(&Relation::Eq)
            || (rels.iter().any(|r| r.is_upper()) && rels.iter().any(|r| r.is_lower()));
        if !bounded {
            continue;
        }
        let radius = members
            .iter()
            .map(|&i| normalized[i].bound.abs())
            .max()
            .expect("non-empty group")
            + BigRational::one();
        let window = enumerate_window(base, &CoeffVector::new(dir.clone()), &radius)?;
        let values: Vec<ExactRational> = window
            .values()
            .filter(|v| members.iter().all(|&i| normalized[i].rel.holds(v, &normalized[i].bound)))
            .cloned()
            .collect();
        if values.is_empty() {
            return Ok(SatResult::Unsat {
                certificate: UnsatCertificate::EmptyWindow {
                    constraints: members.iter().map(|&i| live[i].0).collect(),
                    radius,
                },
            });
        }
        windows.push((members.clone(), values));
    }

    let branch_count = windows
        .iter()
        .try_fold(1usize, |acc, (_, vs)| acc.checked_mul(vs.len()))
        .unwrap_or(usize::MAX);
    let branches: Vec<Vec<Row>> = if !windows.is_empty() && branch_count <= MAX_BRANCHES {
        let in_window: Vec<bool> = (0..rows.len())
            .map(|i| windows.iter().any(|(ms, _)| ms.contains(&i)))
            .collect();
        let fixed: Vec<Row> = rows
            .iter()
            .zip(&in_window)
            .filter(|(_, &w)| !w)
            .map(|(r, _)| r.clone())
            .collect();
        let mut out = vec![fixed];
        for (members, values) in &windows {
            let dir = normalized[members[0]].coeffs.clone();
            let mut next = Vec::with_capacity(out.len() * values.len());
            for partial in &out {
                for v in values {
                    let mut b = partial.clone();
                    b.push(Row {
                        coeffs: dir.clone(),
                        rel: Relation::Eq,
                        bound: v.clone(),
                    });
                    next.push(b);
                }
            }
            out = next;
        }
        out
    } else {
        vec![rows.clone()]
    };

    let mut cases = 0usize;
    let mut max_gap = 0;
    let mut open = 0usize;
    for branch in &branches {
        let search = CaseSearch {
            base,
            m,
            rows: branch,
            budget: depth_budget,
            powers: &powers,
        };
        match search.run(&mut cases, &mut max_gap) {
            Search::Sat(w) => return Ok(finish(base, system, w, depth_budget)),
            Search::Exhausted => {}
            Search::Open(n) => open += n,
        }
    }
    if open > 0 {
        Ok(SatResult::Unknown {
            depth_budget,
            open_cases: open,
        })
    } else {
        Ok(SatResult::Unsat {
            certificate: UnsatCertificate::CasesExhausted {
                branches: branches.len(),
                cases,
                max_gap,
            },
        })
    }
}

fn finish(base: &GeoBase, system: &EConstraintSystem, witness: Vec<Exponent>, budget: u32) -> SatResult {
    if system.satisfied_by(base, &witness) {
        SatResult::Sat { witness }
    } else {
        debug_assert!(false, "witness {witness:?} does not verify");
        SatResult::Unknown {
            depth_budget: budget,
            open_cases: 1,
        }
    }
}

fn row_value(powers: &[ExactRational], row: &Row, exps: &[Exponent]) -> ExactRational {
    row.coeffs
        .iter()
        .zip(exps)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, &k)| a * &powers[k as usize])
        .sum()
}

fn quick_search(powers: &[ExactRational], m: usize, rows: &[Row], budget: u32) -> Option<Vec<Exponent>> {
    let mut depth = 0u32;
    while depth < budget && (depth as usize + 2).checked_pow(m as u32).is_some_and(|n| n <= QUICK_SEARCH_TUPLES) {
        depth += 1;
    }
    let mut tuple = vec![0 as Exponent; m];
    loop {
        if rows.iter().all(|r| r.rel.holds(&row_value(powers, r, &tuple), &r.bound)) {
            return Some(tuple);
        }
        // odometer, last coordinate fastest
        let mut i = m;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if tuple[i] < depth {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gap {
    Exact(Exponent),
    AtLeast(Exponent),
}

#[derive(Clone, Debug)]
struct Case {
    order: Vec<usize>,
    gaps: Vec<Gap>,
}

struct Block {
    gap: Exponent,
    members: Vec<(usize, Exponent)>,
    last_offset: Exponent,
}

enum Outcome {
    Sat(Vec<Exponent>),
    Closed,
    Refine,
}

enum Search {
    Sat(Vec<Exponent>),
    Exhausted,
    Open(usize),
}

struct CaseSearch<'a> {
    base: &'a GeoBase,
    m: usize,
    rows: &'a [Row],
    budget: u32,
    powers: &'a [ExactRational],
}

impl CaseSearch<'_> {
    fn run(&self, cases: &mut usize, max_gap: &mut Exponent) -> Search {
        let mut queue: VecDeque<Case> = permutations(self.m)
            .into_iter()
            .map(|order| Case {
                order,
                gaps: vec![Gap::AtLeast(0); self.m],
            })
            .collect();
        let mut open = 0;
        while let Some(case) = queue.pop_front() {
            *cases += 1;
            if *cases > MAX_CASES {
                return Search::Open(open + queue.len() + 1);
            }
            match self.process(&case) {
                Outcome::Sat(w) => return Search::Sat(w),
                Outcome::Closed => {}
                Outcome::Refine => {
                    let (idx, g) = case
                        .gaps
                        .iter()
                        .enumerate()
                        .filter_map(|(i, g)| match g {
                            Gap::AtLeast(g) => Some((i, *g)),
                            Gap::Exact(_) => None,
                        })
                        .min_by_key(|&(i, g)| (g, i))
                        .expect("a case with several free blocks has a lower-bounded gap");
                    if g >= self.budget {
                        open += 1;
                        continue;
                    }
                    *max_gap = (*max_gap).max(g + 1);
                    let mut exact = case.clone();
                    exact.gaps[idx] = Gap::Exact(g);
                    let mut wider = case;
                    wider.gaps[idx] = Gap::AtLeast(g + 1);
                    queue.push_back(exact);
                    queue.push_back(wider);
                }
            }
        }
        if open > 0 {
            Search::Open(open)
        } else {
            Search::Exhausted
        }
    }

    fn process(&self, case: &Case) -> Outcome {
        // Ties are only represented in ascending index order.
        for t in 1..self.m {
            if case.gaps[t] == Gap::Exact(0) && case.order[t - 1] > case.order[t] {
                return Outcome::Closed;
            }
        }

        let mut fixed: Vec<(usize, Exponent)> = Vec::new();
        let mut blocks: Vec<Block> = Vec::new();
        let mut cur: Exponent = 0;
        for (t, &var) in case.order.iter().enumerate() {
            match case.gaps[t] {
                Gap::Exact(g) => match blocks.last_mut() {
                    None => {
                        cur += g;
                        fixed.push((var, cur));
                    }
                    Some(b) => {
                        b.last_offset += g;
                        b.members.push((var, b.last_offset));
                    }
                },
                Gap::AtLeast(g) => blocks.push(Block {
                    gap: g,
                    members: vec![(var, 0)],
                    last_offset: 0,
                }),
            }
        }

        let fixed_part: Vec<ExactRational> = self
            .rows
            .iter()
            .map(|r| {
                fixed
                    .iter()
                    .map(|&(v, k)| &r.coeffs[v] * &self.powers[k as usize])
                    .sum()
            })
            .collect();
        let weights: Vec<Vec<ExactRational>> = self
            .rows
            .iter()
            .map(|r| {
                blocks
                    .iter()
                    .map(|b| {
                        b.members
                            .iter()
                            .map(|&(v, off)| &r.coeffs[v] * &self.powers[off as usize])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let lower = if fixed.is_empty() { 0 } else { cur };

        match blocks.len() {
            0 => {
                let ok = self
                    .rows
                    .iter()
                    .zip(&fixed_part)
                    .all(|(r, v)| r.rel.holds(v, &r.bound));
                if ok {
                    Outcome::Sat(self.assemble(&fixed, &blocks, &[]))
                } else {
                    Outcome::Closed
                }
            }
            1 => {
                let start = lower + blocks[0].gap;
                match self.solve_scalar(&weights, &fixed_part, start) {
                    Some(e) => Outcome::Sat(self.assemble(&fixed, &blocks, &[e])),
                    None => Outcome::Closed,
                }
            }
            _ => {
                if self.relaxation_feasible(&blocks, &weights, &fixed_part, lower) {
                    Outcome::Refine
                } else {
                    Outcome::Closed
                }
            }
        }
    }

    fn assemble(&self, fixed: &[(usize, Exponent)], blocks: &[Block], leaders: &[Exponent]) -> Vec<Exponent> {
        let mut out = vec![0; self.m];
        for &(v, k) in fixed {
            out[v] = k;
        }
        for (b, &e) in blocks.iter().zip(leaders) {
            for &(v, off) in &b.members {
                out[v] = e + off;
            }
        }
        out
    }

    /// Least `e >= start` with `w_i rho^e + f_i REL_i c_i` for every row.
    fn solve_scalar(
        &self,
        weights: &[Vec<ExactRational>],
        fixed_part: &[ExactRational],
        start: Exponent,
    ) -> Option<Exponent> {
        let one = BigRational::one();
        let mut lo = start;
        let mut hi: Option<Exponent> = None;
        let cap = |hi: &mut Option<Exponent>, h: Exponent| *hi = Some(hi.map_or(h, |x| x.min(h)));
        for ((row, w), f) in self.rows.iter().zip(weights).zip(fixed_part) {
            let w = &w[0];
            let target = &row.bound - f;
            if w.is_zero() {
                if !row.rel.holds(&BigRational::zero(), &target) {
                    return None;
                }
                continue;
            }
            let u = &target / w;
            let rel = if w.is_negative() { row.rel.mirrored() } else { row.rel };
            match rel {
                Relation::Eq => {
                    let k = self.base.log_exact(&u)?;
                    lo = lo.max(k);
                    cap(&mut hi, k + 1);
                }
                Relation::Lt => cap(&mut hi, self.base.first_exponent(&one, &u, false)),
                Relation::Le => cap(&mut hi, self.base.first_exponent(&one, &u, true)),
                Relation::Gt => lo = lo.max(self.base.first_exponent(&one, &u, true)),
                Relation::Ge => lo = lo.max(self.base.first_exponent(&one, &u, false)),
            }
        }
        match hi {
            Some(h) if h <= lo => None,
            _ => Some(lo),
        }
    }

    /// Real relaxation: block scales `y_b` with `y_0 >= rho^lower0`,
    /// `y_b >= rho^(gap) y_(b-1)`, and the rows as linear constraints.
    fn relaxation_feasible(
        &self,
        blocks: &[Block],
        weights: &[Vec<ExactRational>],
        fixed_part: &[ExactRational],
        lower: Exponent,
    ) -> bool {
        let name = |b: usize| format!("y{b}");
        let mut cs = Vec::new();
        let first = lower + blocks[0].gap;
        cs.push(LinConstraint::new(
            LinearForm::constant(self.base.pow(first)) - LinearForm::var(name(0)),
            Kind::Le,
        ));
        for b in 1..blocks.len() {
            let step = self.base.pow(blocks[b - 1].last_offset + blocks[b].gap);
            cs.push(LinConstraint::new(
                LinearForm::term(step, name(b - 1)) - LinearForm::var(name(b)),
                Kind::Le,
            ));
        }
        for ((row, w), f) in self.rows.iter().zip(weights).zip(fixed_part) {
            let lhs = LinearForm::from_parts(
                w.iter().enumerate().map(|(b, c)| (name(b), c.clone())),
                f - &row.bound,
            );
            let (form, kind) = match row.rel {
                Relation::Eq => (lhs, Kind::Eq),
                Relation::Lt => (lhs, Kind::Lt),
                Relation::Le => (lhs, Kind::Le),
                Relation::Gt => (-lhs, Kind::Lt),
                Relation::Ge => (-lhs, Kind::Le),
            };
            cs.push(LinConstraint::new(form, kind));
        }
        fm::feasible(cs)
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn sys(text: &str) -> EConstraintSystem {
        text.parse().unwrap()
    }

    fn two() -> GeoBase {
        GeoBase::integer(2).unwrap()
    }

    #[test]
    fn difference_at_least_five() {
        let r = esystem_sat(&two(), &sys("1 -1 >= 5"), 64).unwrap();
        assert_eq!(r, SatResult::Sat { witness: vec![3, 0] });
    }

    #[test]
    fn sum_at_most_one_is_unsat() {
        let r = esystem_sat(&two(), &sys("1 1 <= 1"), 64).unwrap();
        assert!(r.is_unsat(), "{r:?}");
    }

    #[test]
    fn difference_equal_five_is_unsat() {
        let r = esystem_sat(&two(), &sys("1 -1 = 5"), 64).unwrap();
        assert!(r.is_unsat(), "{r:?}");
    }

    #[test]
    fn large_witness_found_by_shift() {
        // 2^a - 2^b = 2^40 needs a = 41, b = 40.
        let text = format!("1 -1 = {}", 1u64 << 40);
        let r = esystem_sat(&two(), &sys(&text), 64).unwrap();
        assert_eq!(r, SatResult::Sat { witness: vec![41, 40] });
    }

    #[test]
    fn one_sided_needing_large_gap() {
        // 2^a > 1000 * 2^b
        let r = esystem_sat(&two(), &sys("1 -1000 > 0"), 64).unwrap();
        let w = r.witness().unwrap().to_vec();
        assert!(sys("1 -1000 > 0").satisfied_by(&two(), &w));
    }

    #[test]
    fn relaxation_refutes_separated_scales() {
        // 2^a - 3*2^b in [0, 1/2] has no solution: the value is an integer
        // unless b = 0 ... and 2^a = 3*2^b is impossible.
        let r = esystem_sat(&two(), &sys("1 -3 >= 0\n1 -3 <= 1/2"), 64).unwrap();
        assert!(r.is_unsat(), "{r:?}");
    }

    #[test]
    fn constant_rows() {
        let s = EConstraintSystem::new(
            2,
            vec![EConstraint::new(CoeffVector::zeros(2), Relation::Lt, int(0))],
        )
        .unwrap();
        assert_eq!(
            esystem_sat(&two(), &s, 8).unwrap(),
            SatResult::Unsat {
                certificate: UnsatCertificate::ConstantFalse { constraint: 0 }
            }
        );
        let empty = EConstraintSystem::new(3, vec![]).unwrap();
        assert_eq!(esystem_sat(&two(), &empty, 8).unwrap().witness(), Some(&[0, 0, 0][..]));
    }

    #[test]
    fn malformed_inputs() {
        assert!(EConstraintSystem::new(
            2,
            vec![EConstraint::new(CoeffVector::zeros(3), Relation::Eq, int(0))]
        )
        .is_err());
        assert!(esystem_sat(&two(), &sys("1 = 1"), 0).is_err());
        let err = EConstraintSystem::parse("1 2 < 3\n1 < 2").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        assert!(EConstraintSystem::parse("1 2 ~ 3").is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let s = sys("# comment\n1 -1/2 >= 5  # trailing\n\n0 3 < -7/3\n");
        assert_eq!(s.m(), 2);
        assert_eq!(s.to_string().parse::<EConstraintSystem>().unwrap(), s);
    }

    #[test]
    fn rational_base() {
        let b: GeoBase = "3/2".parse().unwrap();
        // (3/2)^a - (3/2)^b = 5/4: a = 2, b = 0
        let r = esystem_sat(&b, &sys("1 -1 = 5/4"), 32).unwrap();
        assert!(r.is_sat());
        let r = esystem_sat(&b, &sys("1 -1 = 1/3"), 32).unwrap();
        assert!(r.is_unsat(), "{r:?}");
    }
}
