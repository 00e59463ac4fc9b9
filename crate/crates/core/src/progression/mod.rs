//! Linear combinations of elements of `E`: bounded windows, separation radii
//! and constraint systems over exponent tuples.

mod esat;
mod window;

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::numeric::{ExactRational, Exponent, GeoBase};

pub use esat::{
    esystem_sat, EConstraint, EConstraintSystem, Relation, SatResult, UnsatCertificate,
    DEFAULT_DEPTH_BUDGET,
};
pub use window::{
    enumerate_window, level_set, separation_radius, PivotLevel, WindowEnumeration, MAX_WITNESSES,
};

/// Coefficients `(a_1, ..., a_m)` of the map `v(x) = sum a_i x_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffVector(Vec<ExactRational>);

impl CoeffVector {
    pub fn new(coeffs: Vec<ExactRational>) -> Self {
        CoeffVector(coeffs)
    }

    pub fn zeros(m: usize) -> Self {
        CoeffVector(vec![BigRational::zero(); m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[ExactRational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactRational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn without(&self, i: usize) -> CoeffVector {
        let mut v = self.0.clone();
        v.remove(i);
        CoeffVector(v)
    }

    /// `sum a_j rho^(k_j)`.
    pub fn evaluate(&self, base: &GeoBase, exponents: &[Exponent]) -> ExactRational {
        assert_eq!(exponents.len(), self.0.len(), "exponent tuple length");
        self.0
            .iter()
            .zip(exponents)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, &k)| a * base.pow(k))
            .sum()
    }
}

impl From<Vec<ExactRational>> for CoeffVector {
    fn from(v: Vec<ExactRational>) -> Self {
        CoeffVector(v)
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
