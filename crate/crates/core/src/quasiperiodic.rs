//! Residues of the progression modulo a lattice `rZ`.
//!
//! For an integer base the residues `rho^k mod r` are eventually periodic.
//! For a non-integer rational base the reduced denominators of the residues
//! grow without bound, so no two residues coincide.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::numeric::{modulo, ExactRational, Exponent, GeoBase};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueTrace {
    pub base: GeoBase,
    pub modulus: ExactRational,
    pub max_k: Exponent,
    /// `rho^k mod r` for `k = 0..=max_k`, each in `[0, r)`.
    pub residues: Vec<ExactRational>,
    pub distinct_count: usize,
}

/// One line of the residue table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRow {
    pub k: Exponent,
    pub power: ExactRational,
    pub residue: ExactRational,
    pub denominator: BigInt,
}

impl ResidueTrace {
    pub fn rows(&self) -> Vec<ResidueRow> {
        self.base
            .powers(self.max_k)
            .into_iter()
            .zip(&self.residues)
            .enumerate()
            .map(|(k, (power, residue))| ResidueRow {
                k: k as Exponent,
                power,
                residue: residue.clone(),
                denominator: residue.denom().clone(),
            })
            .collect()
    }
}

pub fn residues(base: &GeoBase, r: &ExactRational, max_k: Exponent) -> Result<ResidueTrace> {
    if !r.is_positive() {
        return Err(Error::invalid(format!("modulus must be positive, got {r}")));
    }
    let residues: Vec<_> = base.powers(max_k).iter().map(|p| modulo(p, r)).collect();
    let distinct_count = residues.iter().collect::<BTreeSet<_>>().len();
    Ok(ResidueTrace {
        base: base.clone(),
        modulus: r.clone(),
        max_k,
        residues,
        distinct_count,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleReport {
    Cycle { preperiod: usize, period: usize },
    NoCycleWithin(Exponent),
}

impl fmt::Display for CycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleReport::Cycle { preperiod, period } => write!(f, "preperiod {preperiod}, period {period}"),
            CycleReport::NoCycleWithin(k) => write!(f, "no cycle within {k}"),
        }
    }
}

/// Whether `residues[k + period] == residues[k]` for every `k >= preperiod`
/// inside the trace.
pub fn cycle_holds(residues: &[ExactRational], preperiod: usize, period: usize) -> bool {
    period >= 1 && (preperiod..residues.len().saturating_sub(period)).all(|k| residues[k] == residues[k + period])
}

/// The least `(preperiod, period)`, ordered by `preperiod + period`, that is
/// witnessed by at least one repetition and holds on the whole trace.
pub fn detect_cycle(trace: &ResidueTrace) -> CycleReport {
    let res = &trace.residues;
    let mut seen: HashMap<&ExactRational, Vec<usize>> = HashMap::new();
    let mut candidates = Vec::new();
    for (k, v) in res.iter().enumerate() {
        let earlier = seen.entry(v).or_default();
        for &j in earlier.iter() {
            candidates.push((k, j));
        }
        earlier.push(k);
    }
    // candidates are produced in increasing order of their closing index
    for (k, j) in candidates {
        if cycle_holds(res, j, k - j) {
            return CycleReport::Cycle {
                preperiod: j,
                period: k - j,
            };
        }
    }
    CycleReport::NoCycleWithin(trace.max_k)
}

/// Reduced denominators of `rho^k mod r` for `k = 0..=max_k`. Defined for
/// non-integer bases only.
pub fn denominator_growth(base: &GeoBase, r: &ExactRational, max_k: Exponent) -> Result<Vec<BigInt>> {
    if base.rho().denom().is_one() {
        return Err(Error::invalid(format!(
            "denominator growth needs a non-integer base, got {}",
            base.rho()
        )));
    }
    Ok(residues(base, r, max_k)?
        .residues
        .iter()
        .map(|q| q.denom().clone())
        .collect())
}
