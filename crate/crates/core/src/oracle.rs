//! Brute-force references. Everything here enumerates exponent tuples up to
//! a fixed depth with no pruning, so that correctness is evident by reading.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::logic::{evaluate_by, Assignment, Formula};
use crate::numeric::{ExactRational, Exponent, GeoBase};
use crate::progression::{CoeffVector, EConstraintSystem};

/// Largest exponent component searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Depth(pub Exponent);

/// Calls `visit` on every tuple in `{0..=depth}^m` in lexicographic order,
/// last coordinate fastest, until it returns `true`.
fn for_each_tuple(m: usize, depth: Exponent, mut visit: impl FnMut(&[Exponent]) -> bool) -> bool {
    let mut k = vec![0; m];
    loop {
        if visit(&k) {
            return true;
        }
        let mut i = m;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if k[i] < depth {
                k[i] += 1;
                break;
            }
            k[i] = 0;
        }
    }
}

/// `{ sum a_j rho^(k_j) : 0 <= k_j <= D } ∩ (-R, R)`.
pub fn brute_window(
    base: &GeoBase,
    coeffs: &CoeffVector,
    radius: &ExactRational,
    depth: Depth,
) -> Result<BTreeSet<ExactRational>> {
    if !radius.is_positive() {
        return Err(Error::invalid(format!("radius must be positive, got {radius}")));
    }
    // Work with integers: every value times `scale` is integral.
    let rho = base.rho();
    let d = depth.0;
    let coeff_lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = rho.denom().pow(d) * &coeff_lcm;
    let terms: Vec<Vec<BigInt>> = coeffs
        .iter()
        .map(|a| {
            (0..=d)
                .map(|k| {
                    let num = a.numer() * (&coeff_lcm / a.denom());
                    num * rho.numer().pow(k) * rho.denom().pow(d - k)
                })
                .collect()
        })
        .collect();
    let scale_q = BigRational::from_integer(scale.clone());
    let limit = radius * &scale_q;
    let m = coeffs.len();

    let mut hits: BTreeSet<BigInt> = BTreeSet::new();
    let small: Option<Vec<Vec<i128>>> = terms
        .iter()
        .map(|row| row.iter().map(|t| t.to_i128().filter(|v| v.unsigned_abs() < 1u128 << 120)).collect())
        .collect();
    match small {
        Some(small) if m <= 16 => {
            let lim = limit.ceil().to_integer();
            let lim = lim.to_i128().unwrap_or(i128::MAX);
            let mut seen: BTreeSet<i128> = BTreeSet::new();
            for_each_tuple(m, d, |k| {
                let v: i128 = (0..m).map(|j| small[j][k[j] as usize]).sum();
                // integral v: |v| < limit iff |v| < ceil(limit)
                if v.abs() < lim {
                    seen.insert(v);
                }
                false
            });
            hits.extend(seen.into_iter().map(BigInt::from));
        }
        _ => {
            for_each_tuple(m, d, |k| {
                let v: BigInt = (0..m).map(|j| &terms[j][k[j] as usize]).sum();
                if BigRational::from_integer(v.abs()) < limit {
                    hits.insert(v);
                }
                false
            });
        }
    }
    Ok(hits
        .into_iter()
        .map(|v| BigRational::new(v, scale.clone()))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteSat {
    Sat(Vec<Exponent>),
    NoWitnessWithin(Depth),
}

impl BruteSat {
    pub fn is_sat(&self) -> bool {
        matches!(self, BruteSat::Sat(_))
    }
}

impl fmt::Display for BruteSat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BruteSat::Sat(w) => write!(f, "sat {w:?}"),
            BruteSat::NoWitnessWithin(d) => write!(f, "no witness within depth {}", d.0),
        }
    }
}

/// The lexicographically least tuple with components `<= D` satisfying the
/// system, if any.
pub fn brute_esat(base: &GeoBase, system: &EConstraintSystem, depth: Depth) -> BruteSat {
    let powers = base.powers(depth.0);
    let mut found = None;
    for_each_tuple(system.m(), depth.0, |k| {
        let ok = system.constraints().iter().all(|c| {
            let lhs: ExactRational = c
                .coeffs
                .iter()
                .zip(k)
                .map(|(a, &kj)| a * &powers[kj as usize])
                .fold(BigRational::zero(), |acc, t| acc + t);
            c.rel.holds(&lhs, &c.bound)
        });
        if ok {
            found = Some(k.to_vec());
        }
        ok
    });
    match found {
        Some(w) => BruteSat::Sat(w),
        None => BruteSat::NoWitnessWithin(depth),
    }
}

/// Truth of `f` at `point`, coordinates matched to the sorted free
/// variables. `E`-blocks are decided by [`brute_esat`]: a block without a
/// witness up to depth `D` counts as false.
pub fn brute_member(f: &Formula, point: &[ExactRational], base: &GeoBase, depth: Depth) -> Result<bool> {
    let vars = f.free_vars();
    if vars.len() != point.len() {
        return Err(Error::DimensionMismatch(format!(
            "formula has {} free variables, point has {} coordinates",
            vars.len(),
            point.len()
        )));
    }
    let values: Assignment = vars.into_iter().zip(point.iter().cloned()).collect();
    brute_member_at(f, &values, base, depth)
}

pub fn brute_member_at(f: &Formula, values: &Assignment, base: &GeoBase, depth: Depth) -> Result<bool> {
    evaluate_by(f, values, &mut |sys| Ok(Some(brute_esat(base, sys, depth).is_sat())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::numeric::{int, rat};

    fn set(vals: &[i64]) -> BTreeSet<ExactRational> {
        vals.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn windows() {
        let two = GeoBase::integer(2).unwrap();
        assert_eq!(brute_window(&two, &vec![int(1)].into(), &int(5), Depth(10)).unwrap(), set(&[1, 2, 4]));
        assert_eq!(
            brute_window(&two, &vec![int(1), int(-1)].into(), &int(3), Depth(12)).unwrap(),
            set(&[-2, -1, 0, 1, 2])
        );
        let c: CoeffVector = vec![rat(1, 3), int(2), int(-4)].into();
        assert_eq!(brute_window(&two, &c, &int(3), Depth(0)).unwrap(), BTreeSet::from([rat(-5, 3)]));
        assert!(brute_window(&two, &c, &int(1), Depth(0)).unwrap().is_empty());
        assert!(brute_window(&two, &c, &int(0), Depth(0)).is_err());
    }

    #[test]
    fn window_boundary_is_open() {
        let b = GeoBase::new(rat(3, 2)).unwrap();
        let w = brute_window(&b, &vec![int(1)].into(), &rat(9, 4), Depth(5)).unwrap();
        assert_eq!(w, BTreeSet::from([int(1), rat(3, 2)]));
    }

    #[test]
    fn big_terms_take_the_slow_path() {
        let b = GeoBase::new(rat(5, 2)).unwrap();
        let c: CoeffVector = vec![int(1), int(-1)].into();
        let w = brute_window(&b, &c, &int(4), Depth(60)).unwrap();
        assert!(w.contains(&int(0)) && w.contains(&rat(3, 2)) && w.contains(&rat(-15, 4)));
        assert!(w.iter().all(|v| v.abs() < int(4)));
    }

    #[test]
    fn esat() {
        let two = GeoBase::integer(2).unwrap();
        let s: EConstraintSystem = "1 -1 >= 5".parse().unwrap();
        assert_eq!(brute_esat(&two, &s, Depth(6)), BruteSat::Sat(vec![3, 0]));
        let s: EConstraintSystem = "1 1 <= 1".parse().unwrap();
        assert_eq!(brute_esat(&two, &s, Depth(6)), BruteSat::NoWitnessWithin(Depth(6)));
        let empty = EConstraintSystem::new(3, vec![]).unwrap();
        assert_eq!(brute_esat(&two, &empty, Depth(6)), BruteSat::Sat(vec![0, 0, 0]));
    }

    #[test]
    fn members() {
        let two = GeoBase::integer(2).unwrap();
        assert!(brute_member(&parse_formula("E(x)").unwrap(), &[int(4)], &two, Depth(12)).unwrap());
        let diff = parse_formula("exists y in E. exists z in E. x = y - z").unwrap();
        assert!(!brute_member(&diff, &[int(5)], &two, Depth(12)).unwrap());
        assert!(brute_member(&diff, &[int(6)], &two, Depth(12)).unwrap());
        let free = parse_formula("x < 1 or x = 3").unwrap();
        assert!(brute_member(&free, &[int(3)], &two, Depth(0)).unwrap());
        assert!(brute_member(&free, &[int(1)], &two, Depth(0)).is_ok_and(|b| !b));
    }
}
