use super::{fmt_coeff_prefix, int, join_terms, parse_rational, Poly1, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Sparse polynomial `sum c_ij x^i y^j` with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::X { i } else { j })
            .max()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow_r(x, i) * pow_r(y, j);
        }
        acc
    }

    /// Substitutes `x -> px`, `y -> py`.
    pub fn substitute(&self, px: &Poly2, py: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            out += &(&px.pow(i) * &py.pow(j)).scale(c);
        }
        out
    }

    /// Coefficients as polynomials in the other variable, indexed by the power of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly1> {
        let n = self.degree_in(v).map_or(0, |d| d as usize + 1);
        let mut rows = vec![Vec::<Rational>::new(); n];
        for (&(i, j), c) in &self.terms {
            let (outer, inner) = if v == Var::X { (i, j) } else { (j, i) };
            let row = &mut rows[outer as usize];
            if row.len() <= inner as usize {
                row.resize(inner as usize + 1, Rational::zero());
            }
            row[inner as usize] += c;
        }
        rows.into_iter().map(Poly1::new).collect()
    }

    /// Restriction to a univariate polynomial when only `v` occurs.
    pub fn to_poly1(&self, v: Var) -> Option<Poly1> {
        let other = if v == Var::X { Var::Y } else { Var::X };
        if self.degree_in(other).unwrap_or(0) > 0 {
            return None;
        }
        let cs = self.coefficients_in(v);
        Some(Poly1::new(
            cs.iter().map(|p| p.coeff(0)).collect::<Vec<_>>(),
        ))
    }

    pub fn from_poly1(p: &Poly1, v: Var) -> Poly2 {
        Poly2::from_terms(p.coeffs().iter().enumerate().map(|(e, c)| {
            let e = e as u32;
            if v == Var::X {
                (e, 0, c.clone())
            } else {
                (0, e, c.clone())
            }
        }))
    }

    /// Terms ordered graded-lexicographically with `x > y`, leading term first.
    pub fn sorted_terms(&self) -> Vec<(u32, u32, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&(i, j), c)| (i, j, c.clone())).collect();
        v.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        v
    }

    pub fn to_string_in(&self, xn: &str, yn: &str) -> String {
        let terms: Vec<(bool, String)> = self
            .sorted_terms()
            .into_iter()
            .map(|(i, j, c)| {
                let mut vars = Vec::new();
                if i > 0 {
                    vars.push(power(xn, i));
                }
                if j > 0 {
                    vars.push(power(yn, j));
                }
                let body = vars.join("*");
                let prefix = fmt_coeff_prefix(&c, body.is_empty());
                (c < Rational::zero(), format!("{prefix}{body}"))
            })
            .collect();
        join_terms(&terms)
    }
}

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

pub(crate) fn pow_r(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x", "y"))
    }
}

impl From<Rational> for Poly2 {
    fn from(c: Rational) -> Self {
        Poly2::constant(c)
    }
}

impl From<i64> for Poly2 {
    fn from(c: i64) -> Self {
        Poly2::constant(int(c))
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, c.clone());
        }
    }
}

impl SubAssign<&Poly2> for Poly2 {
    fn sub_assign(&mut self, rhs: &Poly2) {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, -c.clone());
        }
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $m(self, rhs: Poly2) -> Poly2 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

impl Serialize for Poly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(u32, u32, String)> = self
            .sorted_terms()
            .into_iter()
            .map(|(i, j, c)| (i, j, c.to_string()))
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(u32, u32, String)> = Vec::deserialize(d)?;
        let mut p = Poly2::zero();
        for (i, j, c) in v {
            p.add_term(i, j, parse_rational(&c).map_err(serde::de::Error::custom)?);
        }
        Ok(p)
    }
}
