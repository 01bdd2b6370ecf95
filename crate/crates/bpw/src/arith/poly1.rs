use super::{fmt_coeff_prefix, int, join_terms, Poly2, Rational, Var};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly1 {
    coeffs: Vec<Rational>,
}

/// Rational roots with multiplicities and the cofactor left after removing them.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<(Rational, u32)>,
    pub cofactor: Poly1,
}

impl RootSet {
    /// True when every root of the input is rational.
    pub fn is_complete(&self) -> bool {
        self.cofactor.degree() == Some(0)
    }

    pub fn distinct(&self) -> Vec<Rational> {
        self.roots.iter().map(|(r, _)| r.clone()).collect()
    }
}

impl Poly1 {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Poly1) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// Generalized binomial `C(self, j)` as a polynomial.
    pub fn binomial(&self, j: u32) -> Self {
        let mut acc = Self::one();
        for i in 0..j {
            acc = &acc * &(self - &Self::constant(int(i as i64)));
        }
        acc.scale(&(Rational::one() / factorial(j)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly1) -> (Poly1, Poly1) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &f * c;
            }
            quo[shift] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly1::new(quo), Poly1::new(rem))
    }

    pub fn gcd(&self, other: &Poly1) -> Poly1 {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rational roots via the rational root theorem on the primitive integer form.
    pub fn rational_roots(&self) -> Result<RootSet> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rest = self.clone();
        let mut roots: Vec<(Rational, u32)> = Vec::new();
        let mut zero_mult = 0;
        while rest.coeff(0).is_zero() {
            rest = Poly1::new(rest.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
        }
        if rest.degree().unwrap() > 0 {
            let ints = rest.integer_coeffs();
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let mut cands = Vec::new();
            for p in divisors(&a0) {
                for q in divisors(&an) {
                    let r = Rational::new(p.clone(), q.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for r in cands {
                let lin = Poly1::linear(-r.clone(), Rational::one());
                let mut m = 0;
                while rest.degree().unwrap() > 0 && rest.eval(&r).is_zero() {
                    rest = rest.div_rem(&lin).0;
                    m += 1;
                }
                if m > 0 {
                    roots.push((r, m));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(RootSet { roots, cofactor: rest })
    }

    /// Integer coefficients of a positive multiple of `self` with content 1.
    fn integer_coeffs(&self) -> Vec<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn to_string_in(&self, v: &str) -> String {
        let terms: Vec<(bool, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let body = match e {
                    0 => String::new(),
                    1 => v.to_string(),
                    _ => format!("{v}^{e}"),
                };
                let prefix = fmt_coeff_prefix(c, body.is_empty());
                (c.is_negative(), format!("{prefix}{body}"))
            })
            .collect();
        join_terms(&terms)
    }
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
        if d.to_u64().is_none() {
            break;
        }
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1::new(out)
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        self.scale(&-Rational::one())
    }
}

/// Sylvester resultant of `p` and `q` with respect to `eliminate`.
///
/// The Sylvester matrix has the `deg q` shifted rows of `p` (leading
/// coefficient first) above the `deg p` shifted rows of `q`; the result is its
/// determinant, a polynomial in the remaining variable. With this convention
/// `resultant(x - y, x + y, x) = 2y`.
pub fn resultant(p: &Poly2, q: &Poly2, eliminate: Var) -> Result<Poly1> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pc = p.coefficients_in(eliminate);
    let qc = q.coefficients_in(eliminate);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    if m == 0 && n == 0 {
        return Err(Error::DegenerateResultant);
    }
    let size = m + n;
    let mut mat = vec![vec![Poly1::zero(); size]; size];
    for r in 0..n {
        for (i, c) in pc.iter().rev().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in qc.iter().rev().enumerate() {
            mat[n + r][r + i] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Fraction-free determinant over `Q[t]`.
fn bareiss_det(mut a: Vec<Vec<Poly1>>) -> Poly1 {
    let n = a.len();
    let mut negate = false;
    let mut prev = Poly1::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Poly1::zero();
        };
        if piv != k {
            a.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                let (quo, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero());
                a[i][j] = quo;
            }
            a[i][k] = Poly1::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}
