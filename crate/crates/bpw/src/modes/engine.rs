use super::state::{add_scaled, add_scaled_q, add_term};
use super::{BaseTag, BracketResult, Convention, Generator, Mode, ModeAlgebra, Monomial, State, Terms};
use crate::arith::{Coeff, Rational};
use std::cell::RefCell;
use std::collections::HashMap;

/// Base vector of a module together with the eigenvalues it carries.
#[derive(Clone, Debug, PartialEq)]
pub enum Base<C> {
    Vacuum,
    /// `J(0) v = x v`, `L(0) v = y v` for the zero modes of the module's convention.
    HighestWeight { x: C, y: C },
}

impl<C> Base<C> {
    pub fn tag(&self) -> BaseTag {
        match self {
            Base::Vacuum => BaseTag::Vacuum,
            Base::HighestWeight { .. } => BaseTag::HighestWeight,
        }
    }
}

/// A vacuum or highest-weight module on which modes act by normal ordering.
///
/// Results of single-mode actions on monomials are memoized; the cache makes a
/// module value thread-confined.
pub struct Module<C: Coeff> {
    pub alg: ModeAlgebra,
    pub base: Base<C>,
    memo: RefCell<HashMap<(Mode, Monomial), Terms<C>>>,
    pub(super) field_memo: RefCell<HashMap<(Monomial, i64, Monomial), Terms<C>>>,
}

impl<C: Coeff> Module<C> {
    pub fn new(k: Rational, conv: Convention, base: Base<C>) -> Self {
        Self {
            alg: ModeAlgebra::new(k, conv),
            base,
            memo: RefCell::new(HashMap::new()),
            field_memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn vacuum(k: Rational, conv: Convention) -> Self {
        Self::new(k, conv, Base::Vacuum)
    }

    pub fn highest_weight(k: Rational, conv: Convention, x: C, y: C) -> Self {
        Self::new(k, conv, Base::HighestWeight { x, y })
    }

    pub fn conv(&self) -> Convention {
        self.alg.conv
    }

    pub fn tag(&self) -> BaseTag {
        self.base.tag()
    }

    pub fn mode(&self, g: Generator, n: i64) -> Mode {
        Mode::new(g, n, self.conv())
    }

    pub fn zero_state(&self) -> State<C> {
        State::zero(self.conv(), self.tag())
    }

    pub fn base_state(&self) -> State<C> {
        State::base_vector(self.conv(), self.tag())
    }

    pub fn state(&self, terms: Terms<C>) -> State<C> {
        State::from_terms(self.conv(), self.tag(), terms)
    }

    /// Whether `m` acts freely on the base vector.
    pub fn is_creation(&self, m: Mode) -> bool {
        let n = m.index;
        match (self.tag(), self.conv(), m.gen) {
            (BaseTag::Vacuum, _, Generator::J) => n <= -1,
            (BaseTag::Vacuum, _, Generator::L) => n <= -2,
            (BaseTag::Vacuum, _, Generator::Gp) => n <= -1,
            (BaseTag::Vacuum, Convention::OmegaBar, Generator::Gm) => n <= -2,
            (BaseTag::Vacuum, Convention::Omega, Generator::Gm) => n <= -1,
            (BaseTag::HighestWeight, _, Generator::J | Generator::L) => n <= -1,
            (BaseTag::HighestWeight, _, Generator::Gp) => n <= 0,
            (BaseTag::HighestWeight, Convention::OmegaBar, Generator::Gm) => n <= -1,
            (BaseTag::HighestWeight, Convention::Omega, Generator::Gm) => n <= 0,
        }
    }

    /// Whether a monomial is a canonical basis element of this module.
    pub fn is_canonical(&self, m: &Monomial) -> bool {
        m.modes().iter().all(|&x| x.conv == self.conv() && self.is_creation(x))
            && m.modes().windows(2).all(|w| w[0] <= w[1])
    }

    fn base_action(&self, a: Mode) -> Terms<C> {
        let mut out = Terms::new();
        if self.is_creation(a) {
            out.insert(Monomial::from_modes(&[a]), C::one_c());
            return out;
        }
        if let Base::HighestWeight { x, y } = &self.base {
            match (a.gen, a.index) {
                (Generator::J, 0) => add_term(&mut out, Monomial::one(), x.clone()),
                (Generator::L, 0) => add_term(&mut out, Monomial::one(), y.clone()),
                _ => {}
            }
        }
        out
    }

    /// `a` applied to the basis vector `mono`.
    pub fn act_mono(&self, a: Mode, mono: &Monomial) -> Terms<C> {
        debug_assert_eq!(a.conv, self.conv());
        if a.shift2() + mono.depth2() < 0 {
            return Terms::new();
        }
        if mono.is_empty() {
            return self.base_action(a);
        }
        let b = mono.modes()[0];
        if self.is_creation(a) && a <= b {
            let mut out = Terms::new();
            out.insert(mono.prepend(a), C::one_c());
            return out;
        }
        let key = (a, mono.clone());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let rest = mono.tail();
        let inner = self.act_mono(a, &rest);
        let mut out = Terms::new();
        for (m, c) in &inner {
            add_scaled(&mut out, &self.act_mono(b, m), c);
        }
        let br = self.alg.bracket(a, b);
        let mut single = Terms::new();
        single.insert(rest, C::one_c());
        let extra = self.apply_bracket_terms(&br, &single);
        add_scaled(&mut out, &extra, &C::one_c());
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn act_terms(&self, a: Mode, t: &Terms<C>) -> Terms<C> {
        let mut out = Terms::new();
        for (m, c) in t {
            add_scaled(&mut out, &self.act_mono(a, m), c);
        }
        out
    }

    pub fn apply_mode(&self, a: Mode, s: &State<C>) -> State<C> {
        assert_eq!((s.conv, s.base), (self.conv(), self.tag()), "state does not live in this module");
        self.state(self.act_terms(a, &s.terms))
    }

    /// Applies `word` to `s`, rightmost mode first.
    pub fn apply_word(&self, word: &[Mode], s: &State<C>) -> State<C> {
        let mut t = s.terms.clone();
        for &m in word.iter().rev() {
            t = self.act_terms(m, &t);
        }
        self.state(t)
    }

    /// Canonical form of `word` applied to the base vector.
    pub fn normal_form(&self, word: &[Mode]) -> State<C> {
        self.apply_word(word, &self.base_state())
    }

    /// Sum of `c * word` applied to the base vector.
    pub fn normal_form_sum(&self, words: &[(Vec<Mode>, C)]) -> State<C> {
        let mut out = Terms::new();
        for (w, c) in words {
            add_scaled(&mut out, &self.normal_form(w).terms, c);
        }
        self.state(out)
    }

    pub fn apply_bracket(&self, br: &BracketResult, s: &State<C>) -> State<C> {
        self.state(self.apply_bracket_terms(br, &s.terms))
    }

    pub(crate) fn apply_bracket_terms(&self, br: &BracketResult, t: &Terms<C>) -> Terms<C> {
        let mut out = Terms::new();
        if !br.scalar.is_zero_c() {
            add_scaled_q(&mut out, t, &br.scalar);
        }
        for (m, c) in &br.linear {
            add_scaled_q(&mut out, &self.act_terms(*m, t), c);
        }
        for (p, c) in &br.quadratic {
            add_scaled_q(&mut out, &self.apply_jsq(*p, t), c);
        }
        out
    }

    /// `(J^2)_p = sum_{j<=-1} J_j J_{p-j} + sum_{j>=0} J_{p-j} J_j`, truncated on `t`.
    pub fn apply_jsq(&self, p: i64, t: &Terms<C>) -> Terms<C> {
        let mut out = Terms::new();
        for (m, c) in t {
            let d = m.depth2().div_euclid(2);
            let mut single = Terms::new();
            single.insert(m.clone(), c.clone());
            for j in (p - d)..=-1 {
                let inner = self.act_terms(self.mode(Generator::J, p - j), &single);
                add_scaled(&mut out, &self.act_terms(self.mode(Generator::J, j), &inner), &C::one_c());
            }
            if p <= d {
                for j in 0..=d {
                    let inner = self.act_terms(self.mode(Generator::J, j), &single);
                    add_scaled(&mut out, &self.act_terms(self.mode(Generator::J, p - j), &inner), &C::one_c());
                }
            }
        }
        out
    }

    pub fn clear_cache(&self) {
        self.memo.borrow_mut().clear();
        self.field_memo.borrow_mut().clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Poly2};
    use Generator::*;

    fn vac(k: Rational) -> Module<Rational> {
        Module::vacuum(k, Convention::OmegaBar)
    }

    fn gp_power(m: &Module<Rational>, g: Generator, idx: i64, n: usize) -> State<Rational> {
        m.normal_form(&vec![m.mode(g, idx); n])
    }

    #[test]
    fn vacuum_annihilation() {
        let m = vac(rat(-5, 3));
        assert_eq!(m.normal_form(&[]), m.base_state());
        assert!(m.normal_form(&[m.mode(L, -1)]).is_zero());
        assert!(m.normal_form(&[m.mode(Gm, -1)]).is_zero());
        let s = m.normal_form(&[m.mode(J, 1), m.mode(J, -1)]);
        assert_eq!(s, m.base_state().scale(&rat(-1, 9)));
    }

    #[test]
    fn lowering_closed_forms() {
        for kk in [int(-1), int(0), int(1), rat(-5, 3), rat(7, 2)] {
            let m = vac(kk.clone());
            for n in 1..=5usize {
                let nn = int(n as i64);
                let s = gp_power(&m, Gp, -1, n);
                let got = m.apply_mode(m.mode(Gm, 1), &s);
                let f = -&nn * (&kk - (&nn - int(2))) * (int(2) * &kk - (&nn - int(4)));
                assert_eq!(got, gp_power(&m, Gp, -1, n - 1).scale(&f), "k={kk} n={n}");
                let s = gp_power(&m, Gm, -2, n);
                let got = m.apply_mode(m.mode(Gp, 2), &s);
                let a = &kk - (&nn - int(2));
                let f = int(2) * &nn * &a * (&a + &nn / int(2));
                assert_eq!(got, gp_power(&m, Gm, -2, n - 1).scale(&f), "k={kk} n={n}");
            }
        }
    }

    #[test]
    fn highest_weight_zero_modes() {
        let m = Module::highest_weight(rat(-5, 3), Convention::OmegaBar, Poly2::x(), Poly2::y());
        let v = m.base_state();
        assert_eq!(m.apply_mode(m.mode(J, 0), &v), v.mul_coeff(&Poly2::x()));
        assert_eq!(m.apply_mode(m.mode(L, 0), &v), v.mul_coeff(&Poly2::y()));
        assert!(m.apply_mode(m.mode(Gm, 0), &v).is_zero());
        let w1 = m.apply_mode(m.mode(Gp, 0), &v);
        assert_eq!(m.apply_mode(m.mode(J, 0), &w1), w1.mul_coeff(&(&Poly2::x() + &Poly2::one())));
    }
}
