//! Exact scalars and polynomials.
//!
//! [`Rational`] is the arbitrary-precision rational of `num-rational`; it is
//! always stored in lowest terms with a positive denominator. [`Poly2`] is a
//! sparse polynomial in `x, y` and [`Poly1`] a dense univariate polynomial.

mod poly1;
mod poly2;
mod surd;

pub use poly1::{resultant, Poly1, RootSet};
pub use poly2::{Poly2, Var};
pub use surd::Surd3;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or an integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Generalized binomial `n(n-1)...(n-j+1)/j!`.
pub fn binomial(n: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc *= n - int(i as i64);
        acc /= int(i as i64 + 1);
    }
    acc
}

pub fn binomial_i(n: i64, j: u32) -> Rational {
    binomial(&int(n), j)
}

/// `(-1)^n`.
pub fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Coefficient ring of states: rationals or polynomials in the highest weight.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero_c() -> Self;
    fn one_c() -> Self;
    fn is_zero_c(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn from_rational(r: Rational) -> Self;
    fn neg_ref(&self) -> Self {
        self.scale(&-<Rational as One>::one())
    }
}

impl Coeff for Rational {
    fn zero_c() -> Self {
        Zero::zero()
    }
    fn one_c() -> Self {
        One::one()
    }
    fn is_zero_c(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl Coeff for Poly2 {
    fn zero_c() -> Self {
        Poly2::zero()
    }
    fn one_c() -> Self {
        Poly2::one()
    }
    fn is_zero_c(&self) -> bool {
        Poly2::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        Poly2::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        Poly2::constant(r)
    }
}

/// Serde helper storing a rational as its exact string.
pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn fmt_coeff_prefix(c: &Rational, is_unit_monomial: bool) -> String {
    if is_unit_monomial {
        return c.abs().to_string();
    }
    if c.abs().is_one() {
        String::new()
    } else {
        format!("{}*", c.abs())
    }
}

/// Joins signed terms as `a + b - c`.
pub(crate) fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-5/3").unwrap(), rat(-5, 3));
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
        assert_eq!(rat(-10, 6).to_string(), "-5/3");
        assert_eq!(int(7).to_string(), "7");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_i(4, 3), int(4));
        assert_eq!(binomial_i(9, 0), int(1));
        assert_eq!(binomial_i(1, 3), int(0));
        assert_eq!(binomial_i(-1, 3), int(-1));
        assert_eq!(binomial_i(-2, 2), int(3));
        assert_eq!(binomial(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn lowest_terms() {
        let r = rat(6, 4) + rat(1, 4);
        assert_eq!(r.numer(), &BigInt::from(7));
        assert_eq!(r.denom(), &BigInt::from(4));
    }
}
