//! Modes of composite states acting on a module.
//!
//! For `s = a_(q) t` with `a` a generating field,
//! `s_(n) = sum_{j>=0} (-1)^j C(q,j) (a_(q-j) t_(n+j) - (-1)^q t_(q+n-j) a_(j))`,
//! which terminates on every vector because the module is bounded below.

use super::state::{add_scaled, add_scaled_q};
use super::{Convention, Generator, Mode, Module, Monomial, State, Terms};
use crate::arith::{binomial_i, sign, Coeff, Rational};
use crate::error::{Error, Result};

/// Twice the conformal weight of a generating field.
pub fn field_weight2(g: Generator, conv: Convention) -> i64 {
    match (conv, g) {
        (_, Generator::J) => 2,
        (_, Generator::L) => 4,
        (Convention::OmegaBar, Generator::Gp) => 2,
        (Convention::OmegaBar, Generator::Gm) => 4,
        (Convention::Omega, _) => 3,
    }
}

impl<C: Coeff> Module<C> {
    /// `s_(n) w` for a vacuum-module state `s` of this convention.
    pub fn field_mode(&self, s: &State<Rational>, n: i64, w: &State<C>) -> State<C> {
        assert_eq!(s.conv, self.conv(), "state convention mismatch");
        let mut out = Terms::new();
        for (sm, sc) in &s.terms {
            let part = self.field_terms(sm, n, &w.terms);
            add_scaled_q(&mut out, &part, sc);
        }
        self.state(out)
    }

    /// The zero mode `o(s) = s_(wt s - 1)` applied to `w`.
    pub fn zero_mode(&self, s: &State<Rational>, w: &State<C>) -> Result<State<C>> {
        let (w2, _) = s.homogeneous_grading()?;
        if w2 % 2 != 0 {
            return Err(Error::Shape("zero mode of a half-integer weight state".into()));
        }
        Ok(self.field_mode(s, w2 / 2 - 1, w))
    }

    pub(crate) fn field_terms(&self, s: &Monomial, n: i64, w: &Terms<C>) -> Terms<C> {
        let mut out = Terms::new();
        for (m, c) in w {
            add_scaled(&mut out, &self.field_mono(s, n, m), c);
        }
        out
    }

    fn field_mono(&self, s: &Monomial, n: i64, w: &Monomial) -> Terms<C> {
        let mut out = Terms::new();
        if s.is_empty() {
            if n == -1 {
                out.insert(w.clone(), C::one_c());
            }
            return out;
        }
        let d2 = w.depth2();
        // s_(n) shifts the weight by wt(s) - n - 1
        if s.depth2() - 2 * (n + 1) + d2 < 0 {
            return out;
        }
        if s.len() == 1 {
            let a = s.modes()[0];
            let q = a.field_index();
            if q == -1 {
                return self.act_mono(Mode::from_field(a.gen, n, self.conv()), w);
            }
        }
        let key = (s.clone(), n, w.clone());
        if let Some(hit) = self.field_memo.borrow().get(&key) {
            return hit.clone();
        }
        let a = s.modes()[0];
        let conv = self.conv();
        let q = a.field_index();
        let t = s.tail();
        let h2 = field_weight2(a.gen, conv);
        let wt2_t = t.depth2();
        let jmax1 = (d2 + wt2_t).div_euclid(2) - 1 - n;
        let jmax2 = (d2 + h2).div_euclid(2) - 1;
        let twisted = -sign(q);
        for j in 0..=jmax1.max(jmax2) {
            let coef = sign(j as i64) * binomial_i(q, j as u32);
            if coef == Rational::from_integer(0.into()) {
                continue;
            }
            if j <= jmax1 {
                let inner = self.field_mono(&t, n + j, w);
                if !inner.is_empty() {
                    let am = Mode::from_field(a.gen, q - j, conv);
                    add_scaled_q(&mut out, &self.act_terms(am, &inner), &coef);
                }
            }
            if j <= jmax2 {
                let inner = self.act_mono(Mode::from_field(a.gen, j, conv), w);
                if !inner.is_empty() {
                    let part = self.field_terms(&t, q + n - j, &inner);
                    add_scaled_q(&mut out, &part, &(&coef * &twisted));
                }
            }
        }
        out.retain(|_, c| !c.is_zero_c());
        self.field_memo.borrow_mut().insert(key, out.clone());
        out
    }
}
