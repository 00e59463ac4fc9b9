use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CoeffVector;
use crate::error::{Error, Result};
use crate::numeric::{ExactRational, Exponent, GeoBase};

/// Witness tuples kept per value. The full witness set of a value can be
/// infinite (`rho^k - rho^k + 1 = 1` for every `k`).
pub const MAX_WITNESSES: usize = 16;

/// Data recorded for one pivot coordinate `i`: the level-0 set
/// `L(0) = { v(x) : x in E^m, x_j >= x_i = 1 } ∩ (-R, R)` and the stopping
/// exponent `N_i` past which every scaled copy of `L(0)` leaves the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotLevel {
    pub pivot: usize,
    pub level0: BTreeSet<ExactRational>,
    /// `None` when `L(0) ⊆ {0}` and no scaling is needed.
    pub stop: Option<Exponent>,
}

/// The finite set `v(E^m) ∩ (-R, R)` with exponent witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowEnumeration {
    pub coeffs: CoeffVector,
    pub radius: ExactRational,
    /// Each value maps to witness exponent tuples (at most [`MAX_WITNESSES`],
    /// lexicographically smallest first).
    pub witnesses: BTreeMap<ExactRational, Vec<Vec<Exponent>>>,
    pub pivots: Vec<PivotLevel>,
    /// Every value has a witness whose components are all `<= depth_bound`.
    pub depth_bound: Exponent,
}

impl WindowEnumeration {
    pub fn values(&self) -> impl Iterator<Item = &ExactRational> + '_ {
        self.witnesses.keys()
    }

    pub fn value_set(&self) -> BTreeSet<ExactRational> {
        self.witnesses.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn contains(&self, value: &ExactRational) -> bool {
        self.witnesses.contains_key(value)
    }

    /// `rho^k * L(0) ∩ (-R, R)` for the given pivot, from the stored level-0 set.
    pub fn scaled_level(&self, base: &GeoBase, pivot: usize, k: Exponent) -> BTreeSet<ExactRational> {
        let scale = base.pow(k);
        self.pivots
            .iter()
            .find(|p| p.pivot == pivot)
            .map(|p| {
                p.level0
                    .iter()
                    .map(|c| c * &scale)
                    .filter(|v| v.abs() < self.radius)
                    .collect()
            })
            .unwrap_or_default()
    }
}

fn check_radius(radius: &ExactRational) -> Result<()> {
    if !radius.is_positive() {
        return Err(Error::invalid(format!("radius must be positive, got {radius}")));
    }
    Ok(())
}

/// Enumerates `v(E^m) ∩ (-R, R)` by the pivot recursion: each coordinate in
/// turn is taken as the smallest exponent, the level-0 set is obtained from the
/// window of the remaining coefficients at radius `R + |a_i|`, and the scaled
/// copies `rho^k L(0)` are collected up to the first `k` that pushes every
/// nonzero value out of the window.
pub fn enumerate_window(
    base: &GeoBase,
    coeffs: &CoeffVector,
    radius: &ExactRational,
) -> Result<WindowEnumeration> {
    check_radius(radius)?;
    Ok(enumerate(base, coeffs.as_slice(), radius))
}

fn enumerate(base: &GeoBase, coeffs: &[ExactRational], radius: &ExactRational) -> WindowEnumeration {
    if coeffs.is_empty() {
        let mut witnesses = BTreeMap::new();
        witnesses.insert(BigRational::zero(), vec![Vec::new()]);
        return WindowEnumeration {
            coeffs: CoeffVector::default(),
            radius: radius.clone(),
            witnesses,
            pivots: Vec::new(),
            depth_bound: 0,
        };
    }

    let mut merged: BTreeMap<ExactRational, BTreeSet<Vec<Exponent>>> = BTreeMap::new();
    let mut pivots = Vec::with_capacity(coeffs.len());
    let mut depth_bound = 0;

    for (i, a) in coeffs.iter().enumerate() {
        let rest: Vec<ExactRational> = coeffs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| c.clone())
            .collect();
        let sub = enumerate(base, &rest, &(radius + a.abs()));

        let mut level0: BTreeMap<ExactRational, Vec<Vec<Exponent>>> = BTreeMap::new();
        for (s, ws) in &sub.witnesses {
            let c = a + s;
            if c.abs() < *radius {
                let entry = level0.entry(c).or_default();
                entry.extend(ws.iter().map(|w| insert_at(w, i, 0)));
            }
        }

        let d = level0.keys().filter(|c| !c.is_zero()).map(|c| c.abs()).min();
        let stop = d.map(|d| base.first_exponent(&d, radius, true));

        let top = stop.unwrap_or(0);
        let mut scale = BigRational::one();
        for k in 0..=top {
            for (c, ws) in &level0 {
                let v = c * &scale;
                if v.abs() < *radius {
                    let entry = merged.entry(v).or_default();
                    for w in ws {
                        entry.insert(w.iter().map(|e| e + k).collect());
                    }
                }
            }
            scale *= base.rho();
        }
        depth_bound = depth_bound.max(top + sub.depth_bound);

        pivots.push(PivotLevel {
            pivot: i,
            level0: level0.into_keys().collect(),
            stop,
        });
    }

    let witnesses = merged
        .into_iter()
        .map(|(v, ws)| (v, ws.into_iter().take(MAX_WITNESSES).collect()))
        .collect();

    WindowEnumeration {
        coeffs: CoeffVector::new(coeffs.to_vec()),
        radius: radius.clone(),
        witnesses,
        pivots,
        depth_bound,
    }
}

fn insert_at(w: &[Exponent], i: usize, e: Exponent) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(w.len() + 1);
    out.extend_from_slice(&w[..i]);
    out.push(e);
    out.extend_from_slice(&w[i..]);
    out
}

/// `L(k)` for the given pivot: the values `sum a_j rho^(k_j)` inside
/// `(-R, R)` with `k_pivot = k` and `k_j >= k` for every `j`. Pivots are
/// zero-based.
///
/// Computed directly from the definition (window of the other coefficients at
/// radius `R / rho^k + |a_pivot|`), not by scaling `L(0)`.
pub fn level_set(
    base: &GeoBase,
    coeffs: &CoeffVector,
    pivot: usize,
    k: Exponent,
    radius: &ExactRational,
) -> Result<BTreeSet<ExactRational>> {
    check_radius(radius)?;
    if pivot >= coeffs.len() {
        return Err(Error::invalid(format!(
            "pivot {pivot} out of range for {} coefficients",
            coeffs.len()
        )));
    }
    let scale = base.pow(k);
    let shrunk = radius / &scale;
    let a = &coeffs.as_slice()[pivot];
    let rest = coeffs.without(pivot);
    let sub = enumerate(base, rest.as_slice(), &(&shrunk + a.abs()));
    Ok(sub
        .values()
        .map(|s| a + s)
        .filter(|c| c.abs() < shrunk)
        .map(|c| c * &scale)
        .collect())
}

/// A radius `r > 0` with `v(E^m) ∩ (-r, r) ⊆ {0}`.
pub fn separation_radius(base: &GeoBase, coeffs: &CoeffVector) -> ExactRational {
    let total: ExactRational = coeffs.iter().sum();
    let probe = total.abs() + BigRational::one();
    let window = enumerate(base, coeffs.as_slice(), &probe);
    window
        .values()
        .filter(|v| !v.is_zero())
        .map(|v| v.abs())
        .min()
        .unwrap_or(probe)
}
