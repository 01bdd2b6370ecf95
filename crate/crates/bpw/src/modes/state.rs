use super::{Convention, Mode};
use crate::arith::{Coeff, Poly2, Rational};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseTag {
    #[serde(rename = "vacuum")]
    Vacuum,
    #[serde(rename = "highest_weight")]
    HighestWeight,
}

/// An ordered product of modes; the leftmost mode acts last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[Mode; 6]>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_modes(modes: &[Mode]) -> Self {
        Self(SmallVec::from_slice(modes))
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Twice the weight above the base vector.
    pub fn depth2(&self) -> i64 {
        self.0.iter().map(|m| m.shift2()).sum()
    }

    pub fn charge(&self) -> i64 {
        self.0.iter().map(|m| m.gen.charge()).sum()
    }

    pub fn prepend(&self, m: Mode) -> Self {
        let mut v = SmallVec::with_capacity(self.0.len() + 1);
        v.push(m);
        v.extend_from_slice(&self.0);
        Self(v)
    }

    pub fn tail(&self) -> Self {
        Self(SmallVec::from_slice(&self.0[1..]))
    }

    pub fn labels(&self) -> Vec<String> {
        self.0.iter().map(|m| m.label()).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let ms = &self.0;
        let mut first = true;
        while i < ms.len() {
            let mut j = i;
            while j < ms.len() && ms[j] == ms[i] {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}^{}", ms[i], j - i)?;
            } else {
                write!(f, "{}", ms[i])?;
            }
            i = j;
        }
        Ok(())
    }
}

pub type Terms<C> = BTreeMap<Monomial, C>;

pub(crate) fn add_term<C: Coeff>(t: &mut Terms<C>, m: Monomial, c: C) {
    if c.is_zero_c() {
        return;
    }
    match t.get_mut(&m) {
        Some(e) => {
            e.add_assign_ref(&c);
            if e.is_zero_c() {
                t.remove(&m);
            }
        }
        None => {
            t.insert(m, c);
        }
    }
}

pub(crate) fn add_scaled<C: Coeff>(t: &mut Terms<C>, other: &Terms<C>, c: &C) {
    for (m, d) in other {
        add_term(t, m.clone(), d.mul_ref(c));
    }
}

pub(crate) fn add_scaled_q<C: Coeff>(t: &mut Terms<C>, other: &Terms<C>, c: &Rational) {
    for (m, d) in other {
        add_term(t, m.clone(), d.scale(c));
    }
}

/// A vector in a vacuum or highest-weight module, as a combination of monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct State<C> {
    pub conv: Convention,
    pub base: BaseTag,
    pub terms: Terms<C>,
}

impl<C: Coeff> State<C> {
    pub fn zero(conv: Convention, base: BaseTag) -> Self {
        Self { conv, base, terms: Terms::new() }
    }

    pub fn base_vector(conv: Convention, base: BaseTag) -> Self {
        Self::monomial(conv, base, Monomial::one(), C::one_c())
    }

    pub fn monomial(conv: Convention, base: BaseTag, m: Monomial, c: C) -> Self {
        let mut s = Self::zero(conv, base);
        add_term(&mut s.terms, m, c);
        s
    }

    pub fn from_terms(conv: Convention, base: BaseTag, terms: Terms<C>) -> Self {
        let mut s = Self::zero(conv, base);
        for (m, c) in terms {
            add_term(&mut s.terms, m, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero_c)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.conv, self.base), (other.conv, other.base));
        let mut out = self.clone();
        add_scaled(&mut out.terms, &other.terms, &C::one_c());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-<Rational as num_traits::One>::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.conv, self.base);
        add_scaled_q(&mut out.terms, &self.terms, r);
        out
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        let mut out = Self::zero(self.conv, self.base);
        add_scaled(&mut out.terms, &self.terms, c);
        out
    }

    /// `(2 * weight, charge)` when every term shares it.
    pub fn grading(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|m| (m.depth2(), m.charge()));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    /// Weight and charge, failing on inhomogeneous states; zero has grading `(0, 0)`.
    pub fn homogeneous_grading(&self) -> Result<(i64, i64)> {
        if self.is_zero() {
            return Ok((0, 0));
        }
        self.grading().ok_or(Error::Inhomogeneous)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next()
    }
}

impl State<Rational> {
    pub fn to_poly(&self) -> State<Poly2> {
        State {
            conv: self.conv,
            base: self.base,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), Poly2::constant(c.clone()))).collect(),
        }
    }

    /// Scales so that the coefficient of `m` becomes `target`.
    pub fn normalized_to(&self, m: &Monomial, target: &Rational) -> Option<Self> {
        let c = self.terms.get(m)?;
        Some(self.scale(&(target / c)))
    }

    /// Monic in the first monomial of the canonical order.
    pub fn monic(&self) -> Self {
        match self.terms.iter().next() {
            Some((_, c)) => self.scale(&(Rational::from_integer(1.into()) / c)),
            None => self.clone(),
        }
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for State<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let base = match self.base {
            BaseTag::Vacuum => "1",
            BaseTag::HighestWeight => "v",
        };
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            if m.is_empty() {
                write!(f, "{cs}*{base}")?;
            } else {
                write!(f, "{cs}*{m}*{base}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    convention: Convention,
    base: BaseTag,
    terms: Vec<(Vec<String>, Poly2)>,
}

/// Coefficients that embed into `Q[x, y]` for serialization.
pub trait PolyCoeff: Coeff {
    fn to_poly2(&self) -> Poly2;
    fn from_poly2(p: &Poly2) -> Option<Self>;
}

impl PolyCoeff for Rational {
    fn to_poly2(&self) -> Poly2 {
        Poly2::constant(self.clone())
    }
    fn from_poly2(p: &Poly2) -> Option<Self> {
        p.as_constant()
    }
}

impl PolyCoeff for Poly2 {
    fn to_poly2(&self) -> Poly2 {
        self.clone()
    }
    fn from_poly2(p: &Poly2) -> Option<Self> {
        Some(p.clone())
    }
}

impl<C: PolyCoeff> State<C> {
    pub fn to_json(&self) -> serde_json::Value {
        let j = StateJson {
            convention: self.conv,
            base: self.base,
            terms: self.terms.iter().map(|(m, c)| (m.labels(), c.to_poly2())).collect(),
        };
        serde_json::to_value(j).expect("state serializes")
    }

    /// Reads a state; monomials are taken as written, not normal-ordered.
    pub fn raw_words_from_json(v: &serde_json::Value) -> Result<(Convention, BaseTag, Vec<(Vec<Mode>, C)>)> {
        let j: StateJson = serde_json::from_value(v.clone()).map_err(|e| Error::Data(e.to_string()))?;
        let mut words = Vec::new();
        for (labels, p) in j.terms {
            let modes = labels
                .iter()
                .map(|l| Mode::parse_label(l, j.convention))
                .collect::<Result<Vec<_>>>()?;
            let c = C::from_poly2(&p).ok_or_else(|| Error::Data(format!("coefficient {p} not allowed")))?;
            words.push((modes, c));
        }
        Ok((j.convention, j.base, words))
    }
}
