use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numeric::ExactRational;

pub type Assignment = BTreeMap<String, ExactRational>;

/// `sum a_i x_i + c` with exact coefficients. Zero coefficients are never
/// stored, so structural equality is semantic equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: BTreeMap<String, ExactRational>,
    constant: ExactRational,
}

impl LinearForm {
    pub fn constant(c: ExactRational) -> Self {
        LinearForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self::term(BigRational::one(), name)
    }

    pub fn term(coeff: ExactRational, name: impl Into<String>) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(name.into(), coeff);
        }
        LinearForm {
            coeffs,
            constant: BigRational::zero(),
        }
    }

    pub fn from_parts(
        coeffs: impl IntoIterator<Item = (String, ExactRational)>,
        constant: ExactRational,
    ) -> Self {
        let mut out = LinearForm::constant(constant);
        for (v, c) in coeffs {
            out.add_term(&v, &c);
        }
        out
    }

    fn add_term(&mut self, var: &str, c: &ExactRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(var.to_string()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(var);
        }
    }

    pub fn coeff(&self, var: &str) -> ExactRational {
        self.coeffs.get(var).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<String, ExactRational> {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &ExactRational {
        &self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mentions(&self, var: &str) -> bool {
        self.coeffs.contains_key(var)
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> + '_ {
        self.coeffs.keys()
    }

    /// First variable (in name order) with its coefficient.
    pub fn leading(&self) -> Option<(&String, &ExactRational)> {
        self.coeffs.iter().next()
    }

    pub fn scale(&self, k: &ExactRational) -> Self {
        if k.is_zero() {
            return LinearForm::zero();
        }
        LinearForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * k)).collect(),
            constant: &self.constant * k,
        }
    }

    /// Splits off the coefficient of `var`.
    pub fn split(&self, var: &str) -> (ExactRational, LinearForm) {
        let mut rest = self.clone();
        let c = rest.coeffs.remove(var).unwrap_or_else(BigRational::zero);
        (c, rest)
    }

    /// Keeps only the variables accepted by `keep`; the constant is dropped.
    pub fn restrict(&self, keep: impl Fn(&str) -> bool) -> LinearForm {
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(v, _)| keep(v))
                .map(|(v, c)| (v.clone(), c.clone()))
                .collect(),
            constant: BigRational::zero(),
        }
    }

    pub fn substitute(&self, var: &str, by: &LinearForm) -> LinearForm {
        match self.coeffs.get(var) {
            None => self.clone(),
            Some(c) => {
                let (_, rest) = self.split(var);
                rest + by.scale(c)
            }
        }
    }

    pub fn rename(&self, from: &str, to: &str) -> LinearForm {
        self.substitute(from, &LinearForm::var(to))
    }

    /// Replaces every assigned variable by its value.
    pub fn partial_eval(&self, values: &Assignment) -> LinearForm {
        let mut out = LinearForm::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            match values.get(v) {
                Some(x) => out.constant += c * x,
                None => out.add_term(v, c),
            }
        }
        out
    }

    pub fn evaluate(&self, values: &Assignment) -> Option<ExactRational> {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            acc += c * values.get(v)?;
        }
        Some(acc)
    }

    /// Sum of `|a_i|`.
    pub fn l1_norm(&self) -> ExactRational {
        self.coeffs.values().map(|c| c.abs()).sum()
    }
}

impl Add for LinearForm {
    type Output = LinearForm;

    fn add(mut self, rhs: LinearForm) -> LinearForm {
        for (v, c) in &rhs.coeffs {
            self.add_term(v, c);
        }
        self.constant += rhs.constant;
        self
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;

    fn sub(self, rhs: LinearForm) -> LinearForm {
        self + (-rhs)
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;

    fn neg(self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.into_iter().map(|(v, c)| (v, -c)).collect(),
            constant: -self.constant,
        }
    }
}

impl Mul<&ExactRational> for LinearForm {
    type Output = LinearForm;

    fn mul(self, rhs: &ExactRational) -> LinearForm {
        self.scale(rhs)
    }
}

fn write_coeff_term(f: &mut fmt::Formatter<'_>, c: &ExactRational, v: &str, first: bool) -> fmt::Result {
    let mag = c.abs();
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if mag.is_one() {
        write!(f, "{v}")
    } else {
        write!(f, "{mag}*{v}")
    }
}

/// Writes the variable part of a form, or `0` when there is none.
pub(crate) fn fmt_var_part(f: &mut fmt::Formatter<'_>, form: &LinearForm) -> fmt::Result {
    if form.coeffs.is_empty() {
        return write!(f, "0");
    }
    for (i, (v, c)) in form.coeffs.iter().enumerate() {
        write_coeff_term(f, c, v, i == 0)?;
    }
    Ok(())
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "{}", self.constant);
        }
        fmt_var_part(f, self)?;
        if !self.constant.is_zero() {
            if self.constant.is_negative() {
                write!(f, " - {}", self.constant.abs())?;
            } else {
                write!(f, " + {}", self.constant)?;
            }
        }
        Ok(())
    }
}

/// Relation of an atom against zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomRel {
    Eq,
    Lt,
}

impl AtomRel {
    pub fn symbol(self) -> &'static str {
        match self {
            AtomRel::Eq => "=",
            AtomRel::Lt => "<",
        }
    }
}

/// `form REL 0` in canonical form: for `=` the leading coefficient is 1, for
/// `<` its absolute value is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    form: LinearForm,
    rel: AtomRel,
}

impl Atom {
    pub fn new(form: LinearForm, rel: AtomRel) -> Self {
        let form = match form.leading().map(|(_, c)| c.clone()) {
            None => form,
            Some(lead) => match rel {
                AtomRel::Eq => form.scale(&lead.recip()),
                AtomRel::Lt => form.scale(&lead.abs().recip()),
            },
        };
        Atom { form, rel }
    }

    /// `lhs < rhs`
    pub fn lt(lhs: LinearForm, rhs: LinearForm) -> Self {
        Atom::new(lhs - rhs, AtomRel::Lt)
    }

    /// `lhs = rhs`
    pub fn eq(lhs: LinearForm, rhs: LinearForm) -> Self {
        Atom::new(lhs - rhs, AtomRel::Eq)
    }

    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    pub fn rel(&self) -> AtomRel {
        self.rel
    }

    pub fn holds_for(&self, value: &ExactRational) -> bool {
        match self.rel {
            AtomRel::Eq => value.is_zero(),
            AtomRel::Lt => value.is_negative(),
        }
    }

    /// Truth value when the form is constant.
    pub fn truth(&self) -> Option<bool> {
        if self.form.is_constant() {
            Some(self.holds_for(self.form.constant_term()))
        } else {
            None
        }
    }

    pub fn evaluate(&self, values: &Assignment) -> Option<bool> {
        self.form.evaluate(values).map(|v| self.holds_for(&v))
    }

    /// The negation as a disjunction, using the order dichotomy:
    /// `not (t < 0)` is `t = 0 or -t < 0`, `not (t = 0)` is `t < 0 or -t < 0`.
    pub fn negate(&self) -> Vec<Atom> {
        let neg = Atom::new(-self.form.clone(), AtomRel::Lt);
        match self.rel {
            AtomRel::Lt => vec![Atom::new(self.form.clone(), AtomRel::Eq), neg],
            AtomRel::Eq => vec![Atom::new(self.form.clone(), AtomRel::Lt), neg],
        }
    }

    pub fn substitute(&self, var: &str, by: &LinearForm) -> Atom {
        Atom::new(self.form.substitute(var, by), self.rel)
    }

    pub fn partial_eval(&self, values: &Assignment) -> Atom {
        Atom::new(self.form.partial_eval(values), self.rel)
    }

    pub fn rename(&self, from: &str, to: &str) -> Atom {
        Atom::new(self.form.rename(from, to), self.rel)
    }

    pub fn mentions(&self, var: &str) -> bool {
        self.form.mentions(var)
    }
}

impl fmt::Display for Atom {
    /// Prints `vars REL constant`, e.g. `1/2*x + y < 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_var_part(f, &self.form)?;
        write!(f, " {} {}", self.rel.symbol(), -self.form.constant_term())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn zero_coefficients_vanish() {
        let f = LinearForm::var("x") - LinearForm::var("x") + LinearForm::constant(int(2));
        assert!(f.is_constant());
        assert_eq!(f, LinearForm::constant(int(2)));
    }

    #[test]
    fn atoms_are_canonical() {
        let a = Atom::eq(LinearForm::term(int(-2), "x"), LinearForm::constant(int(4)));
        let b = Atom::eq(LinearForm::var("x"), LinearForm::constant(int(-2)));
        assert_eq!(a, b);
        let c = Atom::lt(LinearForm::term(int(3), "x"), LinearForm::constant(int(3)));
        assert_eq!(c.to_string(), "x < 1");
        let d = Atom::lt(LinearForm::term(int(-3), "x"), LinearForm::zero());
        assert_eq!(d.to_string(), "-x < 0");
    }

    #[test]
    fn display_forms() {
        let f = LinearForm::term(rat(1, 2), "x") + LinearForm::var("y") - LinearForm::constant(int(3));
        assert_eq!(f.to_string(), "1/2*x + y - 3");
        assert_eq!(Atom::lt(f, LinearForm::zero()).to_string(), "x + 2*y < 6");
    }

    #[test]
    fn negation_covers_complement() {
        let a = Atom::lt(LinearForm::var("x"), LinearForm::constant(int(1)));
        for x in [int(0), int(1), int(2)] {
            let asg: Assignment = [("x".to_string(), x)].into_iter().collect();
            let orig = a.evaluate(&asg).unwrap();
            let neg = a.negate().iter().any(|n| n.evaluate(&asg).unwrap());
            assert_ne!(orig, neg);
        }
    }
}
