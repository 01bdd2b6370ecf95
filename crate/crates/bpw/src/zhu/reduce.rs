use super::{Letter, Smith, ZhuWord};
use crate::arith::{binomial_i, int, Poly2, Rational};
use crate::error::{Error, Result};
use crate::modes::{convert_convention, field_weight2, BaseTag, Convention, Generator, Mode, Module, Monomial, State};
use std::cell::RefCell;
use std::collections::HashMap;

/// `p(x, y)` with `o(s) v = p(x, y) v` on a highest-weight vector whose zero
/// modes in `grading` are `(J, L) = (x, y)`.
pub fn zero_mode_poly(s: &State<Rational>, k: &Rational, grading: Convention) -> Result<Poly2> {
    if s.base != BaseTag::Vacuum {
        return Err(Error::Shape("zero-mode projection needs a vacuum-module state".into()));
    }
    if s.is_zero() {
        return Ok(Poly2::zero());
    }
    let (_, q) = s.homogeneous_grading()?;
    if q != 0 {
        return Err(Error::NonzeroCharge(q));
    }
    let s = convert_convention(s, k, grading);
    let hw = Module::highest_weight(k.clone(), grading, Poly2::x(), Poly2::y());
    let out = hw.zero_mode(&s, &hw.base_state())?;
    if out.terms.keys().any(|m| !m.is_empty()) {
        return Err(Error::Shape("zero mode left the highest-weight line".into()));
    }
    Ok(out.coeff(&Monomial::one()))
}

/// Zhu products and the reduction of vacuum states to Smith words, in the
/// omega-bar grading at a fixed level.
pub struct Reducer {
    pub module: Module<Rational>,
    pub smith: Smith,
    memo: RefCell<HashMap<Monomial, ZhuWord>>,
}

impl Reducer {
    pub fn new(k: Rational) -> Self {
        let smith = Smith::for_level(&k);
        Self { module: Module::vacuum(k, Convention::OmegaBar), smith, memo: RefCell::new(HashMap::new()) }
    }

    pub fn k(&self) -> &Rational {
        &self.module.alg.k
    }

    /// `X(-1) 1`-type generator state of the Zhu image `[X]`.
    pub fn generator_state(&self, l: Letter) -> State<Rational> {
        let m = &self.module;
        let (g, n, c) = match l {
            Letter::X => (Generator::J, -1, int(1)),
            Letter::Y => (Generator::L, -2, int(1)),
            Letter::E => (Generator::Gp, -1, int(1)),
            Letter::F => (Generator::Gm, -2, int(-1)),
        };
        m.normal_form(&[m.mode(g, n)]).scale(&c)
    }

    fn degree(&self, a: &State<Rational>) -> Result<Option<i64>> {
        if a.is_zero() {
            return Ok(None);
        }
        let (w2, _) = a.homogeneous_grading()?;
        Ok(Some(w2 / 2))
    }

    fn residue(&self, a: &State<Rational>, b: &State<Rational>, shift: i64, deg: impl Fn(i64) -> i64) -> Result<State<Rational>> {
        let Some(d) = self.degree(a)? else {
            return Ok(self.module.zero_state());
        };
        let d = deg(d);
        let mut out = self.module.zero_state();
        for j in 0..=d.max(0) {
            let c = binomial_i(d, j as u32);
            out = out.add(&self.module.field_mode(a, j - shift, b).scale(&c));
        }
        Ok(out)
    }

    /// `a * b = sum_j C(deg a, j) a_(j-1) b`.
    pub fn star(&self, a: &State<Rational>, b: &State<Rational>) -> Result<State<Rational>> {
        self.residue(a, b, 1, |d| d)
    }

    /// `a o b = sum_j C(deg a, j) a_(j-2) b`, an element of `O(V)`.
    pub fn circle(&self, a: &State<Rational>, b: &State<Rational>) -> Result<State<Rational>> {
        self.residue(a, b, 2, |d| d)
    }

    /// `sum_j C(deg a - 1, j) a_(j) b`, congruent to `a*b - b*a` modulo `O(V)`.
    pub fn commutator(&self, a: &State<Rational>, b: &State<Rational>) -> Result<State<Rational>> {
        self.residue(a, b, 0, |d| d - 1)
    }

    /// The Smith word of `[s]`.
    pub fn reduce(&self, s: &State<Rational>) -> Result<ZhuWord> {
        if (s.conv, s.base) != (Convention::OmegaBar, BaseTag::Vacuum) {
            return Err(Error::Shape("reduction needs an omega-bar vacuum state".into()));
        }
        let mut out = ZhuWord::zero();
        for (m, c) in &s.terms {
            out = out.add(&self.reduce_mono(m).scale(c));
        }
        Ok(out)
    }

    fn reduce_terms(&self, t: &crate::modes::Terms<Rational>) -> ZhuWord {
        let mut out = ZhuWord::zero();
        for (m, c) in t {
            out = out.add(&self.reduce_mono(m).scale(c));
        }
        out
    }

    /// Writes the monomial as `a_(q) t` with `a` its leftmost mode and uses
    /// `a o t in O(V)` (for `q <= -2`) or `a * t` (for `q = -1`).
    fn reduce_mono(&self, m: &Monomial) -> ZhuWord {
        if m.is_empty() {
            return ZhuWord::one();
        }
        if let Some(hit) = self.memo.borrow().get(m) {
            return hit.clone();
        }
        let a = m.modes()[0];
        let t = m.tail();
        let q = a.field_index();
        let h = field_weight2(a.gen, Convention::OmegaBar) / 2;
        let mut out = ZhuWord::zero();
        let conv = Convention::OmegaBar;
        if q <= -2 {
            for j in 1..=h {
                let s = self.module.act_mono(Mode::from_field(a.gen, q + j, conv), &t);
                out = out.sub(&self.reduce_terms(&s).scale(&binomial_i(h, j as u32)));
            }
        } else {
            debug_assert_eq!(q, -1);
            let (l, sgn) = match a.gen {
                Generator::J => (Letter::X, 1),
                Generator::L => (Letter::Y, 1),
                Generator::Gp => (Letter::E, 1),
                Generator::Gm => (Letter::F, -1),
            };
            let gen = ZhuWord::letter(l).scale(&int(sgn));
            out = self.smith.mul(&gen, &self.reduce_mono(&t));
            for j in 1..=h {
                let s = self.module.act_mono(Mode::from_field(a.gen, j - 1, conv), &t);
                out = out.sub(&self.reduce_terms(&s).scale(&binomial_i(h, j as u32)));
            }
        }
        self.memo.borrow_mut().insert(m.clone(), out.clone());
        out
    }

    /// The six commutation relations of the Smith generators computed from
    /// Zhu products: `(name, computed, expected)`.
    pub fn generator_relations(&self) -> Result<Vec<(&'static str, ZhuWord, ZhuWord)>> {
        use Letter::*;
        let st = |l| self.generator_state(l);
        let w = ZhuWord::letter;
        let comm = |a: Letter, b: Letter| -> Result<ZhuWord> {
            let (sa, sb) = (st(a), st(b));
            let d = self.star(&sa, &sb)?.sub(&self.star(&sb, &sa)?);
            self.reduce(&d)
        };
        Ok(vec![
            ("X*E - E*X = E", comm(X, E)?, w(E)),
            ("X*F - F*X = -F", comm(X, F)?, w(F).scale(&int(-1))),
            ("X*Y - Y*X = 0", comm(X, Y)?, ZhuWord::zero()),
            ("E*F - F*E = g(X,Y)", comm(E, F)?, ZhuWord::from_part(0, 0, self.smith.g.clone())),
            ("E*Y - Y*E = 0", comm(E, Y)?, ZhuWord::zero()),
            ("F*Y - Y*F = 0", comm(F, Y)?, ZhuWord::zero()),
        ])
    }
}

/// `[G+(0)^power s]` for an omega-bar vacuum state `s`.
pub fn smith_relation(k: &Rational, s: &State<Rational>, power: u32) -> Result<(State<Rational>, ZhuWord)> {
    let r = Reducer::new(k.clone());
    let gp0 = r.module.mode(Generator::Gp, 0);
    let mut t = convert_convention(s, k, Convention::OmegaBar);
    for _ in 0..power {
        t = r.module.apply_mode(gp0, &t);
    }
    let w = r.reduce(&t)?;
    Ok((t, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use Generator::*;

    fn st(r: &Reducer, word: &[(Generator, i64)]) -> State<Rational> {
        let m = &r.module;
        let modes: Vec<Mode> = word.iter().map(|&(g, n)| m.mode(g, n)).collect();
        m.normal_form(&modes)
    }

    #[test]
    fn listed_reductions() {
        let r = Reducer::new(rat(-5, 3));
        let s = &r.smith;
        assert_eq!(r.reduce(&st(&r, &[])).unwrap(), ZhuWord::one());
        assert_eq!(r.reduce(&st(&r, &[(Gp, -2), (Gp, -2)])).unwrap(), s.word(&[Letter::E, Letter::E]));
        assert_eq!(r.reduce(&st(&r, &[(Gp, -1), (Gp, -3)])).unwrap(), s.word(&[Letter::E, Letter::E]));
        assert_eq!(
            r.reduce(&st(&r, &[(J, -2), (Gp, -1), (Gp, -1)])).unwrap(),
            s.word(&[Letter::E, Letter::E, Letter::X]).scale(&int(-1))
        );
        let want = s.word(&[Letter::E, Letter::E, Letter::Y]).add(&s.word(&[Letter::E, Letter::E]).scale(&int(2)));
        assert_eq!(r.reduce(&st(&r, &[(L, -2), (Gp, -1), (Gp, -1)])).unwrap(), want);
    }

    #[test]
    fn relations_from_zhu_products() {
        for k in [rat(-5, 3), rat(-9, 4), int(0), rat(2, 7)] {
            let r = Reducer::new(k.clone());
            for (name, got, want) in r.generator_relations().unwrap() {
                assert_eq!(got, want, "k={k}: {name}");
            }
        }
    }

    #[test]
    fn unit_and_zero_mode_of_vacuum() {
        let r = Reducer::new(rat(-9, 4));
        let one = r.module.base_state();
        let s = st(&r, &[(J, -2), (Gp, -1)]);
        assert_eq!(r.star(&one, &s).unwrap(), s);
        assert_eq!(zero_mode_poly(&one, r.k(), Convention::Omega).unwrap(), Poly2::one());
        assert!(zero_mode_poly(&st(&r, &[(Gp, -1)]), r.k(), Convention::Omega).is_err());
    }
}
