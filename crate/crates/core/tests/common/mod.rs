//! Shared references and generators for the integration tests.
#![allow(dead_code)]

pub mod corpus;

use std::collections::BTreeSet;

use geoprog::logic::{Assignment, Atom, AtomRel, Formula, LinearForm};
use geoprog::numeric::{int, rat};
use geoprog::progression::{CoeffVector, EConstraint, EConstraintSystem, Relation};
use geoprog::{ExactRational, GeoBase};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn bases() -> Vec<GeoBase> {
    vec![
        GeoBase::integer(2).unwrap(),
        GeoBase::new(rat(3, 2)).unwrap(),
        GeoBase::new(rat(5, 2)).unwrap(),
        GeoBase::integer(3).unwrap(),
    ]
}

pub fn small_rational(rng: &mut impl Rng, span: i64) -> ExactRational {
    let d = *[1i64, 1, 2, 3, 4, 6, 8].choose(rng).unwrap();
    rat(rng.gen_range(-span * d..=span * d), d)
}

/// A point of `(-r, r)^n`, biased towards short denominators so that
/// points of lower-dimensional cells are hit.
pub fn point_in_box(rng: &mut impl Rng, n: usize, r: &ExactRational) -> Vec<ExactRational> {
    (0..n)
        .map(|_| loop {
            let q = match rng.gen_range(0..4) {
                0 => {
                    let d = rng.gen_range(1..=1000i64);
                    let bound = (r * int(d)).ceil().to_integer();
                    let bound: i64 = bound.try_into().unwrap();
                    rat(rng.gen_range(-bound..=bound), d)
                }
                _ => {
                    let d = *[1i64, 2, 3, 4, 6, 8, 9, 16].choose(rng).unwrap();
                    let bound = (r * int(d)).ceil().to_integer();
                    let bound: i64 = bound.try_into().unwrap();
                    rat(rng.gen_range(-bound..=bound), d)
                }
            };
            if &num_traits::Signed::abs(&q) < r {
                break q;
            }
        })
        .collect()
}

pub fn random_coeffs(rng: &mut impl Rng, m: usize, span: i64) -> CoeffVector {
    CoeffVector::new((0..m).map(|_| int(rng.gen_range(-span..=span))).collect())
}

pub fn random_form(rng: &mut impl Rng, vars: &[&str]) -> LinearForm {
    let k = rng.gen_range(1..=vars.len().min(3));
    let chosen: Vec<String> = vars.choose_multiple(rng, k).map(|v| v.to_string()).collect();
    let mut coeffs = Vec::with_capacity(k);
    for v in chosen {
        let sign = if rng.gen() { 1 } else { -1 };
        coeffs.push((v, rat(sign * rng.gen_range(1..=3), rng.gen_range(1..=2))));
    }
    LinearForm::from_parts(coeffs, int(rng.gen_range(-4..=4)))
}

pub fn random_atom(rng: &mut impl Rng, vars: &[&str]) -> Formula {
    let rel = if rng.gen_range(0..4) == 0 { AtomRel::Eq } else { AtomRel::Lt };
    Formula::atom(Atom::new(random_form(rng, vars), rel))
}

pub fn random_qf(rng: &mut impl Rng, vars: &[&str], atoms: usize) -> Formula {
    if atoms <= 1 {
        let a = random_atom(rng, vars);
        return if rng.gen_range(0..4) == 0 { Formula::not(a) } else { a };
    }
    let left = rng.gen_range(1..atoms);
    let l = random_qf(rng, vars, left);
    let r = random_qf(rng, vars, atoms - left);
    let g = if rng.gen() { Formula::And(vec![l, r]) } else { Formula::Or(vec![l, r]) };
    if rng.gen_range(0..5) == 0 {
        Formula::not(g)
    } else {
        g
    }
}

pub const QE_VARS: [&str; 4] = ["w", "x", "y", "z"];

/// A random E-free formula over at most four variables with at most
/// `quantifiers` quantifiers, placed at random depths.
pub fn random_quantified(rng: &mut impl Rng, quantifiers: usize) -> Formula {
    fn build(rng: &mut impl Rng, q: usize, atoms: usize) -> Formula {
        if q == 0 {
            return random_qf(rng, &QE_VARS, atoms.max(1));
        }
        match rng.gen_range(0..3) {
            0 if atoms >= 2 => {
                // split the quantifiers over a connective
                let ql = rng.gen_range(0..=q);
                let al = rng.gen_range(1..atoms);
                let l = build(rng, ql, al);
                let r = build(rng, q - ql, atoms - al);
                if rng.gen() {
                    Formula::And(vec![l, r])
                } else {
                    Formula::Or(vec![l, r])
                }
            }
            _ => {
                let v = *QE_VARS.choose(rng).unwrap();
                let body = build(rng, q - 1, atoms);
                if rng.gen() {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                }
            }
        }
    }
    let atoms = rng.gen_range(2..=4);
    build(rng, quantifiers, atoms)
}

pub fn random_system(rng: &mut impl Rng, m: usize, rows: usize) -> EConstraintSystem {
    let rels = [Relation::Eq, Relation::Lt, Relation::Le, Relation::Gt, Relation::Ge];
    let constraints = (0..rows)
        .map(|_| {
            let coeffs = CoeffVector::new((0..m).map(|_| int(rng.gen_range(-3..=3))).collect());
            let rel = *rels.choose(rng).unwrap();
            let bound = if rel == Relation::Eq {
                small_rational(rng, 12)
            } else {
                small_rational(rng, 40)
            };
            EConstraint::new(coeffs, rel, bound)
        })
        .collect();
    EConstraintSystem::new(m, constraints).unwrap()
}

// ---------------------------------------------------------------------------
// Test-point semantics for E-free formulas.
//
// With every free variable fixed, the truth of `exists v. g` can only change
// at values of `v` where the arrangement of atom hyperplanes in the space of
// `v` and the variables bound inside `g` has a face on which `v` is
// constant. Evaluating `g` at those values, at midpoints between them and
// beyond both ends decides the quantifier. No elimination is involved.
// ---------------------------------------------------------------------------

/// Truth of an E-free formula at a point assigning all its free variables.
pub fn semantic_eval(f: &Formula, values: &Assignment) -> bool {
    let mut counter = 0;
    let f = rename_bound(f, &mut counter);
    sem(&f, values)
}

fn rename_bound(f: &Formula, counter: &mut usize) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) | Formula::InE(_) => f.clone(),
        Formula::Not(g) => Formula::Not(Box::new(rename_bound(g, counter))),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| rename_bound(g, counter)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| rename_bound(g, counter)).collect()),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let fresh = format!("b{counter}_");
            *counter += 1;
            let body = rename_bound(&g.rename_free(v, &fresh), counter);
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(fresh, body)
            } else {
                Formula::forall(fresh, body)
            }
        }
        Formula::ExistsE(..) | Formula::ForallE(..) => panic!("E-free formulas only"),
    }
}

fn sem(f: &Formula, values: &Assignment) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => a.evaluate(values).expect("all variables assigned"),
        Formula::Not(g) => !sem(g, values),
        Formula::And(gs) => gs.iter().all(|g| sem(g, values)),
        Formula::Or(gs) => gs.iter().any(|g| sem(g, values)),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let exists = matches!(f, Formula::Exists(..));
            let mut inner = values.clone();
            for t in test_points(v, g, values) {
                inner.insert(v.clone(), t);
                if sem(g, &inner) == exists {
                    return exists;
                }
            }
            !exists
        }
        Formula::InE(_) | Formula::ExistsE(..) | Formula::ForallE(..) => panic!("E-free formulas only"),
    }
}

fn collect(f: &Formula, atoms: &mut Vec<LinearForm>, bound: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(a) => atoms.push(a.form().clone()),
        Formula::Not(g) => collect(g, atoms, bound),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| collect(g, atoms, bound)),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            bound.insert(v.clone());
            collect(g, atoms, bound);
        }
        _ => {}
    }
}

fn test_points(v: &str, body: &Formula, values: &Assignment) -> Vec<ExactRational> {
    let mut forms = Vec::new();
    let mut bound = BTreeSet::new();
    collect(body, &mut forms, &mut bound);
    let mut cols = vec![v.to_string()];
    cols.extend(bound.into_iter().filter(|b| b != v));
    let rows: BTreeSet<Vec<ExactRational>> = forms
        .iter()
        .map(|fm| fm.partial_eval(values))
        .filter(|fm| !fm.is_constant())
        .map(|fm| {
            let mut row: Vec<ExactRational> = cols.iter().map(|c| fm.coeff(c)).collect();
            row.push(fm.constant_term().clone());
            row
        })
        .collect();
    let rows: Vec<_> = rows.into_iter().collect();

    let mut crit = BTreeSet::new();
    let max = cols.len().min(rows.len());
    let mut subset = Vec::new();
    subsets(rows.len(), max, 0, &mut subset, &mut |idx| {
        let sys: Vec<Vec<ExactRational>> = idx.iter().map(|&i| rows[i].clone()).collect();
        if let Some(t) = determined_first(sys) {
            crit.insert(t);
        }
    });

    let crit: Vec<_> = crit.into_iter().collect();
    let mut pts = Vec::with_capacity(2 * crit.len() + 1);
    match (crit.first(), crit.last()) {
        (Some(lo), Some(hi)) => {
            pts.push(lo - BigRational::one());
            pts.push(hi + BigRational::one());
        }
        _ => pts.push(BigRational::zero()),
    }
    for w in crit.windows(2) {
        pts.push((&w[0] + &w[1]) / int(2));
    }
    pts.extend(crit);
    pts
}

fn subsets(n: usize, max: usize, start: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if !cur.is_empty() {
        visit(cur);
    }
    if cur.len() == max {
        return;
    }
    for i in start..n {
        cur.push(i);
        subsets(n, max, i + 1, cur, visit);
        cur.pop();
    }
}

/// Solves `row . (cols, 1) = 0` for all rows; if the system is consistent
/// and fixes the first column, returns its value.
fn determined_first(mut m: Vec<Vec<ExactRational>>) -> Option<ExactRational> {
    let ncols = m[0].len() - 1;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    // inconsistent: a zero row with nonzero constant
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    if pivots.first() != Some(&0) {
        return None;
    }
    let row = &m[0];
    if (1..ncols).any(|c| !pivots.contains(&c) && !row[c].is_zero()) {
        return None;
    }
    Some(-row[ncols].clone())
}

pub fn assignment(vars: &[&str], vals: &[ExactRational]) -> Assignment {
    vars.iter().map(|v| v.to_string()).zip(vals.iter().cloned()).collect()
}
