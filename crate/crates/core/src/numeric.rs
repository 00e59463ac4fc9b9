//! Exact rational arithmetic and powers of the progression base.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactRational = BigRational;

/// Exponent of the progression base.
pub type Exponent = u32;

/// Parses `p`, `-p`, `p/q` or `-p/q`.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let t = text.trim();
    let bad = || Error::invalid(format!("malformed rational `{text}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = match den {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::invalid(format!("zero denominator in `{text}`")));
    }
    Ok(BigRational::new(num, den))
}

/// Shorthand for building small constants.
pub fn rat(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Largest integer `<= q`.
pub fn floor(q: &ExactRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// `x - r * floor(x / r)`, the representative of `x` in `[0, r)`.
pub fn modulo(x: &ExactRational, r: &ExactRational) -> ExactRational {
    let quotient = BigRational::from_integer(floor(&(x / r)));
    x - r * quotient
}

/// The base `rho > 1` of the progression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeoBase {
    rho: ExactRational,
}

impl GeoBase {
    pub fn new(rho: ExactRational) -> Result<Self> {
        if rho <= BigRational::one() {
            return Err(Error::invalid(format!("base must exceed 1, got {rho}")));
        }
        Ok(GeoBase { rho })
    }

    pub fn integer(n: i64) -> Result<Self> {
        Self::new(int(n))
    }

    pub fn rho(&self) -> &ExactRational {
        &self.rho
    }

    pub fn is_integer(&self) -> bool {
        self.rho.is_integer()
    }

    /// `rho^k`, exactly.
    pub fn pow(&self, k: Exponent) -> ExactRational {
        BigRational::new(self.rho.numer().pow(k), self.rho.denom().pow(k))
    }

    /// Powers `rho^0 ..= rho^k_max`.
    pub fn powers(&self, k_max: Exponent) -> Vec<ExactRational> {
        let mut out = Vec::with_capacity(k_max as usize + 1);
        let mut cur = BigRational::one();
        for _ in 0..=k_max {
            out.push(cur.clone());
            cur *= &self.rho;
        }
        out
    }

    /// Least `N >= 0` with `rho^N * d > bound`.
    ///
    /// Requires `d > 0`; a non-positive `d` never exceeds a positive bound, so
    /// it is rejected rather than looping.
    pub fn min_exponent_exceeding(
        &self,
        d: &ExactRational,
        bound: &ExactRational,
    ) -> Result<Exponent> {
        if !d.is_positive() {
            return Err(Error::invalid(format!("threshold must be positive, got {d}")));
        }
        Ok(self.first_exponent(d, bound, true))
    }

    /// Least `k >= 0` with `rho^k * scale > bound` (`strict`) or `>= bound`.
    /// `scale` must be positive.
    pub(crate) fn first_exponent(
        &self,
        scale: &ExactRational,
        bound: &ExactRational,
        strict: bool,
    ) -> Exponent {
        let mut k = 0;
        let mut cur = scale.clone();
        loop {
            let done = if strict { &cur > bound } else { &cur >= bound };
            if done {
                return k;
            }
            cur *= &self.rho;
            k += 1;
        }
    }

    /// Returns `k` with `rho^k = q`, if any.
    pub fn log_exact(&self, q: &ExactRational) -> Option<Exponent> {
        if !q.is_positive() {
            return None;
        }
        // rho = s/t in lowest terms, so rho^k = s^k / t^k is already reduced.
        let (s, t) = (self.rho.numer(), self.rho.denom());
        let (mut a, mut b) = (q.numer().clone(), q.denom().clone());
        let mut k = 0;
        while !(a.is_one() && b.is_one()) {
            let (qa, ra) = a.div_rem(s);
            let (qb, rb) = b.div_rem(t);
            if !ra.is_zero() || !rb.is_zero() {
                return None;
            }
            a = qa;
            b = qb;
            k += 1;
        }
        Some(k)
    }

    /// Membership of `q` in `E`.
    pub fn is_in_e(&self, q: &ExactRational) -> Option<Exponent> {
        self.log_exact(q)
    }
}

impl fmt::Display for GeoBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rho)
    }
}

impl FromStr for GeoBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeoBase::new(parse_rational(s)?)
    }
}
