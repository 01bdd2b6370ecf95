//! The integer-graded Zhu algebra and its Smith presentation.
//!
//! Elements of the Smith algebra are stored in the normal form
//! `F^a p(X, Y) E^d`, one polynomial `p` per pair `(a, d)`.

mod reduce;

pub use reduce::{smith_relation, zero_mode_poly, Reducer};

use crate::arith::{int, join_terms, Poly2, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// `g(x, y) = -(3x^2 - (2k+3)x - (k+3)y)`.
pub fn g_poly(k: &Rational) -> Poly2 {
    Poly2::from_terms([
        (2, 0, int(-3)),
        (1, 0, int(2) * k + int(3)),
        (0, 1, k + int(3)),
    ])
}

/// `h_i = (g(x,y) + g(x+1,y) + ... + g(x+i-1,y)) / i`.
pub fn h_poly(i: i64, k: &Rational) -> Result<Poly2> {
    if i < 1 {
        return Err(Error::InvalidIndex(i));
    }
    let g = g_poly(k);
    let mut acc = Poly2::zero();
    for j in 0..i {
        acc += &g.substitute(&(&Poly2::x() + &Poly2::constant(int(j))), &Poly2::y());
    }
    Ok(acc.scale(&(Rational::from_integer(1.into()) / int(i))))
}

/// `-i^2 + ki - 3xi + 3i - 3x^2 - k + 2kx + 6x + ky + 3y - 2`.
pub fn h_closed_form(i: i64, k: &Rational) -> Poly2 {
    let i = int(i);
    let c0 = -(&i * &i) + k * &i + int(3) * &i - k - int(2);
    Poly2::from_terms([
        (0, 0, c0),
        (1, 0, int(-3) * &i + int(2) * k + int(6)),
        (2, 0, int(-3)),
        (0, 1, k + int(3)),
    ])
}

/// The Smith algebra with parameter polynomial `g`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub g: Poly2,
}

/// Generators of the Smith algebra; the derived order is the normal-form order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    F,
    X,
    Y,
    E,
}

/// A Smith-algebra element in normal form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZhuWord {
    /// `(a, d) -> p` meaning `F^a p(X, Y) E^d`.
    pub terms: BTreeMap<(u32, u32), Poly2>,
}

impl ZhuWord {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(int(1))
    }

    pub fn scalar(c: Rational) -> Self {
        Self::from_part(0, 0, Poly2::constant(c))
    }

    pub fn from_part(a: u32, d: u32, p: Poly2) -> Self {
        let mut w = Self::zero();
        w.add_part(a, d, &p);
        w
    }

    pub fn letter(l: Letter) -> Self {
        match l {
            Letter::F => Self::from_part(1, 0, Poly2::one()),
            Letter::X => Self::from_part(0, 0, Poly2::x()),
            Letter::Y => Self::from_part(0, 0, Poly2::y()),
            Letter::E => Self::from_part(0, 1, Poly2::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_part(&mut self, a: u32, d: u32, p: &Poly2) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry((a, d)).or_insert_with(Poly2::zero);
        *e += p;
        if e.is_zero() {
            self.terms.remove(&(a, d));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, d), p) in &o.terms {
            out.add_part(a, d, p);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(a, d), p) in &self.terms {
            out.add_part(a, d, &p.scale(r));
        }
        out
    }

    /// The words `F^a X^b Y^c E^d` with coefficients.
    pub fn words(&self) -> Vec<((u32, u32, u32, u32), Rational)> {
        let mut v = Vec::new();
        for (&(a, d), p) in &self.terms {
            for (b, c, r) in p.sorted_terms() {
                v.push(((a, b, c, d), r));
            }
        }
        v
    }

    /// Charge of a homogeneous element (`d - a`).
    pub fn charge(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|&(a, d)| d as i64 - a as i64);
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    /// Factored text such as `44*E^2*(Y+1/9)` when a single `(a, d)` block is present.
    pub fn factored(&self) -> String {
        if self.terms.len() != 1 {
            return self.to_string();
        }
        let (&(a, d), p) = self.terms.iter().next().unwrap();
        let lead = p.sorted_terms()[0].2.clone();
        let inner = p.scale(&(Rational::from_integer(1.into()) / &lead));
        let mut parts = Vec::new();
        if lead != int(1) || (a == 0 && d == 0 && inner == Poly2::one()) {
            parts.push(lead.to_string());
        }
        if a > 0 {
            parts.push(power("F", a));
        }
        if d > 0 {
            parts.push(power("E", d));
        }
        if inner != Poly2::one() {
            let s = inner.to_string_in("X", "Y").replace(' ', "");
            parts.push(if inner.num_terms() > 1 { format!("({s})") } else { s });
        }
        parts.join("*")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .words()
            .into_iter()
            .map(|((a, b, c, d), r)| serde_json::json!({"F": a, "X": b, "Y": c, "E": d, "coeff": r.to_string()}))
            .collect();
        serde_json::json!({ "text": self.to_string(), "factored": self.factored(), "terms": terms })
    }
}

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

/// Text form with each term written `F^a*X^b*E^d*Y^c` (`Y` is central).
impl fmt::Display for ZhuWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for ((a, b, c, d), r) in self.words() {
            let mut vars = Vec::new();
            for (n, e) in [("F", a), ("X", b), ("E", d), ("Y", c)] {
                if e > 0 {
                    vars.push(power(n, e));
                }
            }
            let body = vars.join("*");
            let prefix = crate::arith::fmt_coeff_prefix(&r, body.is_empty());
            terms.push((r < Rational::zero(), format!("{prefix}{body}")));
        }
        f.write_str(&join_terms(&terms))
    }
}

impl Smith {
    pub fn new(g: Poly2) -> Self {
        Self { g }
    }

    pub fn for_level(k: &Rational) -> Self {
        Self::new(g_poly(k))
    }

    /// `w * l` for a single generator `l`.
    pub fn mul_letter(&self, w: &ZhuWord, l: Letter) -> ZhuWord {
        let mut out = ZhuWord::zero();
        let xm1 = &Poly2::x() - &Poly2::one();
        for (&(a, d), p) in &w.terms {
            match l {
                Letter::E => out.add_part(a, d + 1, p),
                Letter::Y => out.add_part(a, d, &(p * &Poly2::y())),
                // E^d X = (X - d) E^d
                Letter::X => out.add_part(a, d, &(p * &(&Poly2::x() - &Poly2::constant(int(d as i64))))),
                Letter::F => {
                    // p(X) F = F p(X - 1) and E^d F = F E^d + sum_{j<d} g(X - j, Y) E^{d-1}
                    out.add_part(a + 1, d, &p.substitute(&xm1, &Poly2::y()));
                    if d > 0 {
                        let mut s = Poly2::zero();
                        for j in 0..d {
                            let shift = &Poly2::x() - &Poly2::constant(int(j as i64));
                            s += &self.g.substitute(&shift, &Poly2::y());
                        }
                        out.add_part(a, d - 1, &(p * &s));
                    }
                }
            }
        }
        out
    }

    /// Letters of the normal-form word `F^a p E^d` as a sum of letter strings.
    fn letter_strings(w: &ZhuWord) -> Vec<(Vec<Letter>, Rational)> {
        let mut out = Vec::new();
        for ((a, b, c, d), r) in w.words() {
            let mut s = vec![Letter::F; a as usize];
            s.extend(std::iter::repeat(Letter::X).take(b as usize));
            s.extend(std::iter::repeat(Letter::Y).take(c as usize));
            s.extend(std::iter::repeat(Letter::E).take(d as usize));
            out.push((s, r));
        }
        out
    }

    pub fn mul(&self, u: &ZhuWord, v: &ZhuWord) -> ZhuWord {
        let mut out = ZhuWord::zero();
        for (s, r) in Self::letter_strings(v) {
            let mut acc = u.scale(&r);
            for l in s {
                acc = self.mul_letter(&acc, l);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Normal form of an arbitrary product of generators.
    pub fn word(&self, letters: &[Letter]) -> ZhuWord {
        letters.iter().fold(ZhuWord::one(), |w, &l| self.mul_letter(&w, l))
    }

    /// Normal form of a letter string by adjacent-swap rewriting, the next
    /// inversion chosen by `pick(count)`; independent of [`Smith::mul_letter`].
    pub fn word_by_rewriting(&self, letters: &[Letter], pick: &mut dyn FnMut(usize) -> usize) -> ZhuWord {
        let mut pending: BTreeMap<Vec<Letter>, Rational> = BTreeMap::new();
        pending.insert(letters.to_vec(), int(1));
        let mut done = ZhuWord::zero();
        let g_strings: Vec<(Vec<Letter>, Rational)> = self
            .g
            .terms()
            .map(|(i, j, c)| {
                let mut s = vec![Letter::X; i as usize];
                s.extend(std::iter::repeat(Letter::Y).take(j as usize));
                (s, c.clone())
            })
            .collect();
        while !pending.is_empty() {
            let keys: Vec<_> = pending.keys().cloned().collect();
            let key = keys[pick(keys.len()) % keys.len()].clone();
            let coef = pending.remove(&key).unwrap();
            let inversions: Vec<usize> = (0..key.len().saturating_sub(1)).filter(|&i| key[i] > key[i + 1]).collect();
            if inversions.is_empty() {
                let mut counts = [0u32; 4];
                for l in &key {
                    counts[*l as usize] += 1;
                }
                let p = Poly2::monomial(counts[1], counts[2], coef);
                done = done.add(&ZhuWord::from_part(counts[0], counts[3], p));
                continue;
            }
            let i = inversions[pick(inversions.len()) % inversions.len()];
            let (l, r) = (key[i], key[i + 1]);
            let mut swapped = key.clone();
            swapped.swap(i, i + 1);
            let mut push = |s: Vec<Letter>, c: Rational| {
                let e = pending.entry(s.clone()).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    pending.remove(&s);
                }
            };
            push(swapped, coef.clone());
            let splice = |mid: &[Letter]| {
                let mut s = key[..i].to_vec();
                s.extend_from_slice(mid);
                s.extend_from_slice(&key[i + 2..]);
                s
            };
            match (l, r) {
                // EX = XE - E, XF = FX - F
                (Letter::E, Letter::X) => push(splice(&[Letter::E]), -coef.clone()),
                (Letter::X, Letter::F) => push(splice(&[Letter::F]), -coef.clone()),
                // EF = FE + g(X, Y)
                (Letter::E, Letter::F) => {
                    for (s, c) in &g_strings {
                        push(splice(s), &coef * c);
                    }
                }
                _ => {}
            }
        }
        done
    }

    /// Action on the top level of `L(x, y)` read off on `v`: `E^d v = w_d`,
    /// `X w_i = (x+i) w_i`, `F w_i = -i h_i w_{i-1}`. Only charge-zero parts contribute.
    pub fn eval_on_highest_weight(&self, w: &ZhuWord, k: &Rational) -> Result<Poly2> {
        let mut out = Poly2::zero();
        for (&(a, d), p) in &w.terms {
            if a != d {
                continue;
            }
            let shifted = p.substitute(&(&Poly2::x() + &Poly2::constant(int(d as i64))), &Poly2::y());
            let mut acc = shifted;
            for i in 1..=d as i64 {
                acc = &acc * &h_poly(i, k)?.scale(&int(-i));
            }
            out += &acc;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use rand::{Rng, SeedableRng};
    use Letter::*;

    #[test]
    fn h_matches_closed_form() {
        for k in [rat(-5, 3), rat(-9, 4), int(-1), int(0), rat(7, 2)] {
            assert_eq!(h_poly(1, &k).unwrap(), g_poly(&k));
            for i in 1..=10 {
                assert_eq!(h_poly(i, &k).unwrap(), h_closed_form(i, &k), "k={k} i={i}");
            }
        }
        assert!(h_poly(0, &int(0)).is_err());
    }

    #[test]
    fn smith_relations() {
        let s = Smith::for_level(&rat(-5, 3));
        let x = ZhuWord::letter(X);
        let e = ZhuWord::letter(E);
        let f = ZhuWord::letter(F);
        let y = ZhuWord::letter(Y);
        assert_eq!(s.mul(&x, &e).sub(&s.mul(&e, &x)), e);
        assert_eq!(s.mul(&x, &f).sub(&s.mul(&f, &x)), f.scale(&int(-1)));
        assert_eq!(s.mul(&e, &f).sub(&s.mul(&f, &e)), ZhuWord::from_part(0, 0, s.g.clone()));
        assert_eq!(s.mul(&e, &y), s.mul(&y, &e));
        let w = s.word(&[E, E, Y]).add(&s.word(&[E, E]).scale(&rat(1, 9))).scale(&int(44));
        assert_eq!(w.to_string(), "44*E^2*Y + 44/9*E^2");
        assert_eq!(w.factored(), "44*E^2*(Y+1/9)");
    }

    #[test]
    fn rewriting_agrees_with_multiplication() {
        let s = Smith::for_level(&rat(-9, 4));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(0..7);
            let letters: Vec<Letter> = (0..n).map(|_| [F, X, Y, E][rng.gen_range(0..4)]).collect();
            let mut pick = |m: usize| rng.gen_range(0..m);
            let a = s.word_by_rewriting(&letters, &mut pick);
            assert_eq!(a, s.word(&letters), "{letters:?}");
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let s = Smith::for_level(&int(0));
        let a = s.word(&[E, F, X]);
        let b = s.word(&[F, E, E, Y]);
        let c = s.word(&[X, F, F]);
        assert_eq!(s.mul(&s.mul(&a, &b), &c), s.mul(&a, &s.mul(&b, &c)));
    }
}
