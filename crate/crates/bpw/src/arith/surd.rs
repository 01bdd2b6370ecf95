use super::{Coeff, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// `a + b s` with `s^2 = 3`: the field `Q(sqrt 3)` with `s` kept formal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Surd3 {
    pub a: Rational,
    pub b: Rational,
}

impl Surd3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero() }
    }

    /// The symbol `s`.
    pub fn s() -> Self {
        Self { a: Rational::zero(), b: Rational::one() }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }
}

impl Coeff for Surd3 {
    fn zero_c() -> Self {
        Self::default()
    }
    fn one_c() -> Self {
        Self::rational(Rational::one())
    }
    fn is_zero_c(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        self.a += &o.a;
        self.b += &o.b;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let three = Rational::from_integer(3.into());
        Self { a: &self.a * &o.a + three * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }
    fn scale(&self, r: &Rational) -> Self {
        Self { a: &self.a * r, b: &self.b * r }
    }
    fn from_rational(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl fmt::Display for Surd3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => f.write_str("s"),
            (true, false) => write!(f, "{}*s", self.b),
            (false, false) => {
                let op = if self.b.is_negative() { "-" } else { "+" };
                let m = self.b.abs();
                if m.is_one() {
                    write!(f, "{} {op} s", self.a)
                } else {
                    write!(f, "{} {op} {m}*s", self.a)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn square_root_of_three() {
        let s = Surd3::s();
        assert_eq!(s.mul_ref(&s), Surd3::rational(int(3)));
        let u = Surd3::new(int(1), rat(1, 2));
        assert_eq!(u.to_string(), "1 + 1/2*s");
        assert_eq!(u.mul_ref(&Surd3::new(int(1), rat(-1, 2))), Surd3::rational(rat(1, 4)));
    }
}
