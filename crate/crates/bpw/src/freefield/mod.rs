//! Free-field modules: the Weyl (beta-gamma) system, Clifford fermions and
//! symplectic fermions, with n-th products of composite states.
//!
//! Every field `x` acts through its n-th product modes `x_(n)`, fermions
//! included, so `Y(x, z) = sum x_(n) z^(-n-1)` and the vacuum is killed by
//! `x_(n)` for `n >= 0`. Creation modes pairwise supercommute, so a Fock
//! vector is a sorted product of creation modes up to a Koszul sign.

mod embed;

pub use embed::{
    symplectic_in_clifford, weyl_charge_decomposition, Embedding, EmbeddingReport, LemmaLine, OpeLine, Sector,
};

use crate::arith::{binomial_i, sign, Coeff, Rational, Surd3};
use num_traits::{One, Zero};
use serde::Serialize;
use smallvec::SmallVec;
use std::cell::RefCell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    #[serde(rename = "even")]
    Even,
    #[serde(rename = "odd")]
    Odd,
}

impl Parity {
    fn odd(self) -> bool {
        self == Parity::Odd
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FFGenerator {
    pub name: &'static str,
    pub parity: Parity,
    /// Twice the weight used to truncate sums; any grading with positive
    /// generator weights works.
    pub weight2: i64,
}

/// The only nonzero supercommutators between generator modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pairing {
    /// `[x_(m), y_(n)] = delta_{m+n+1,0}` (Weyl, Clifford).
    Delta,
    /// `[x_(m), y_(n)] = m delta_{m+n,0}` (symplectic fermions).
    Linear,
}

/// A mode `x_(n)` of generator number `gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFMode {
    pub gen: u8,
    pub n: i64,
}

/// Creation modes in ascending `(gen, n)` order applied to the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFMono(pub SmallVec<[FFMode; 8]>);

impl FFMono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn modes(&self) -> &[FFMode] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

type RTerms = BTreeMap<FFMono, Rational>;

fn add_to(out: &mut RTerms, m: FFMono, c: Rational) {
    if c.is_zero() {
        return;
    }
    match out.entry(m) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn add_scaled(out: &mut RTerms, t: &RTerms, c: &Rational) {
    for (m, v) in t {
        add_to(out, m.clone(), v * c);
    }
}

/// A vector of a free-field module with coefficients in `Q(sqrt 3)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FFState {
    pub terms: BTreeMap<FFMono, Surd3>,
}

impl FFState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(FFMono::one(), Surd3::one_c())
    }

    pub fn monomial(m: FFMono, c: Surd3) -> Self {
        let mut s = Self::zero();
        if !c.is_zero_c() {
            s.terms.insert(m, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(Surd3::zero_c);
            e.add_assign_ref(c);
            if e.is_zero_c() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.mul_coeff(&Surd3::rational(r.clone()))
    }

    pub fn mul_coeff(&self, c: &Surd3) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v.mul_ref(c)))
            .filter(|(_, v)| !v.is_zero_c())
            .collect();
        Self { terms }
    }

    pub fn coeff(&self, m: &FFMono) -> Surd3 {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn from_rterms(t: RTerms) -> Self {
        Self { terms: t.into_iter().map(|(m, c)| (m, Surd3::rational(c))).collect() }
    }
}

/// A free-field vertex superalgebra given by generators and a pairing table.
///
/// Products of monomials are memoized; the cache makes a value thread-confined.
pub struct FreeFieldAlgebra {
    pub gens: Vec<FFGenerator>,
    pub pairings: Vec<(u8, u8, Pairing)>,
    memo: RefCell<HashMap<(FFMono, i64, FFMono), RTerms>>,
}

impl FreeFieldAlgebra {
    pub fn new(gens: Vec<FFGenerator>, pairings: Vec<(u8, u8, Pairing)>) -> Self {
        Self { gens, pairings, memo: RefCell::new(HashMap::new()) }
    }

    /// `a+`, `a-` even, `[a+_(m), a-_(n)] = delta_{m+n+1,0}`.
    pub fn weyl() -> Self {
        let g = |name| FFGenerator { name, parity: Parity::Even, weight2: 1 };
        Self::new(vec![g("a+"), g("a-")], vec![(0, 1, Pairing::Delta)])
    }

    /// `psi+`, `psi-` odd, `{psi+_(m), psi-_(n)} = delta_{m+n+1,0}`.
    pub fn clifford() -> Self {
        let g = |name| FFGenerator { name, parity: Parity::Odd, weight2: 1 };
        Self::new(vec![g("psi+"), g("psi-")], vec![(0, 1, Pairing::Delta)])
    }

    /// Clifford fermions tensored with symplectic fermions `b`, `c`,
    /// `{b_(m), c_(n)} = m delta_{m+n,0}`.
    pub fn clifford_symplectic() -> Self {
        let g = |name, weight2| FFGenerator { name, parity: Parity::Odd, weight2 };
        Self::new(
            vec![g("psi+", 1), g("psi-", 1), g("b", 2), g("c", 2)],
            vec![(0, 1, Pairing::Delta), (2, 3, Pairing::Linear)],
        )
    }

    pub fn generator(&self, name: &str) -> Option<u8> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as u8)
    }

    fn odd(&self, g: u8) -> bool {
        self.gens[g as usize].parity.odd()
    }

    /// `x_(-1) 1` for generator `g`.
    pub fn field(&self, g: u8) -> FFState {
        FFState::from_rterms(self.act(FFMode { gen: g, n: -1 }, &FFMono::one()))
    }

    pub fn field_named(&self, name: &str) -> FFState {
        self.field(self.generator(name).expect("known generator"))
    }

    /// The supercommutator `[x_(m), y_(n)]` as a scalar.
    pub fn bracket(&self, x: FFMode, y: FFMode) -> Rational {
        let eval = |kind: Pairing, m: i64, n: i64| match kind {
            Pairing::Delta if m + n + 1 == 0 => Rational::one(),
            Pairing::Linear if m + n == 0 => Rational::from_integer(m.into()),
            _ => Rational::zero(),
        };
        for &(i, j, kind) in &self.pairings {
            if (x.gen, y.gen) == (i, j) {
                return eval(kind, x.n, y.n);
            }
            if (x.gen, y.gen) == (j, i) {
                // [y, x] = -(-1)^{|x||y|} [x, y]
                let v = eval(kind, y.n, x.n);
                return if self.odd(x.gen) && self.odd(y.gen) { v } else { -v };
            }
        }
        Rational::zero()
    }

    pub fn mono_weight2(&self, m: &FFMono) -> i64 {
        m.0.iter().map(|x| self.mode_shift2(*x)).sum()
    }

    fn mode_shift2(&self, x: FFMode) -> i64 {
        self.gens[x.gen as usize].weight2 - 2 * x.n - 2
    }

    fn mono_odd(&self, m: &FFMono) -> bool {
        m.0.iter().filter(|x| self.odd(x.gen)).count() % 2 == 1
    }

    /// `x_(n)` applied to a Fock monomial.
    pub fn act(&self, x: FFMode, m: &FFMono) -> RTerms {
        let mut out = RTerms::new();
        let xodd = self.odd(x.gen);
        if x.n < 0 {
            let pos = m.0.partition_point(|y| *y <= x);
            if xodd && pos > 0 && m.0[pos - 1] == x {
                return out;
            }
            let passed = m.0[..pos].iter().filter(|y| self.odd(y.gen)).count();
            let mut v = m.0.clone();
            v.insert(pos, x);
            let c = if xodd && passed % 2 == 1 { -Rational::one() } else { Rational::one() };
            out.insert(FFMono(v), c);
            return out;
        }
        let mut passed = 0;
        for (i, y) in m.0.iter().enumerate() {
            let b = self.bracket(x, *y);
            if !b.is_zero() {
                let mut v = m.0.clone();
                v.remove(i);
                let c = if xodd && passed % 2 == 1 { -b } else { b };
                add_to(&mut out, FFMono(v), c);
            }
            if self.odd(y.gen) {
                passed += 1;
            }
        }
        out
    }

    fn act_terms(&self, x: FFMode, t: &RTerms) -> RTerms {
        let mut out = RTerms::new();
        for (m, c) in t {
            add_scaled(&mut out, &self.act(x, m), c);
        }
        out
    }

    fn product_terms(&self, u: &FFMono, n: i64, w: &RTerms) -> RTerms {
        let mut out = RTerms::new();
        for (m, c) in w {
            add_scaled(&mut out, &self.mono_product(u, n, m), c);
        }
        out
    }

    /// `u_(n) w` for Fock monomials, by the iterate recursion on the leftmost
    /// mode `u = x_(m) t`:
    /// `u_(n) = sum_j (-1)^j C(m,j) (x_(m-j) t_(n+j) - (-1)^(m + |x||t|) t_(m+n-j) x_(j))`.
    fn mono_product(&self, u: &FFMono, n: i64, w: &FFMono) -> RTerms {
        if u.is_empty() {
            let mut out = RTerms::new();
            if n == -1 {
                out.insert(w.clone(), Rational::one());
            }
            return out;
        }
        if u.0.len() == 1 && u.0[0].n == -1 {
            return self.act(FFMode { gen: u.0[0].gen, n }, w);
        }
        if self.mono_weight2(u) + self.mono_weight2(w) - 2 * n - 2 < 0 {
            return RTerms::new();
        }
        let key = (u.clone(), n, w.clone());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let x = u.0[0];
        let t = FFMono(SmallVec::from_slice(&u.0[1..]));
        let m = x.n;
        let w2 = self.mono_weight2(w);
        let koszul = self.odd(x.gen) && self.mono_odd(&t);
        let eps = if koszul { -sign(m) } else { sign(m) };
        let mut out = RTerms::new();
        let first_max = (self.mono_weight2(&t) + w2 - 2).div_euclid(2) - n;
        for j in 0..=first_max.max(-1) {
            let inner = self.mono_product(&t, n + j, w);
            if inner.is_empty() {
                continue;
            }
            let c = sign(j) * binomial_i(m, j as u32);
            add_scaled(&mut out, &self.act_terms(FFMode { gen: x.gen, n: m - j }, &inner), &c);
        }
        let second_max = (self.gens[x.gen as usize].weight2 + w2 - 2).div_euclid(2);
        for j in 0..=second_max.max(-1) {
            let inner = self.act(FFMode { gen: x.gen, n: j }, w);
            if inner.is_empty() {
                continue;
            }
            let c = -(sign(j) * binomial_i(m, j as u32) * &eps);
            add_scaled(&mut out, &self.product_terms(&t, m + n - j, &inner), &c);
        }
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// `u_(n) v`.
    pub fn product(&self, u: &FFState, n: i64, v: &FFState) -> FFState {
        let mut out = FFState::zero();
        for (um, uc) in &u.terms {
            for (vm, vc) in &v.terms {
                let t = FFState::from_rterms(self.mono_product(um, n, vm));
                out = out.add(&t.mul_coeff(&uc.mul_ref(vc)));
            }
        }
        out
    }

    /// `x_(n) v` for a generator `x`.
    pub fn apply(&self, x: FFMode, v: &FFState) -> FFState {
        let mut out = FFState::zero();
        for (m, c) in &v.terms {
            out = out.add(&FFState::from_rterms(self.act(x, m)).mul_coeff(c));
        }
        out
    }

    /// `Dv = v_(-2) 1`.
    pub fn derivative(&self, v: &FFState) -> FFState {
        self.product(v, -2, &FFState::vacuum())
    }

    /// `u_(-1) v`.
    pub fn normal_product(&self, u: &FFState, v: &FFState) -> FFState {
        self.product(u, -1, v)
    }

    /// Fock monomials of the given doubled weight, in ascending order.
    pub fn fock_basis(&self, weight2: i64) -> Vec<FFMono> {
        let mut modes = Vec::new();
        for g in 0..self.gens.len() as u8 {
            let mut n = -1;
            while self.mode_shift2(FFMode { gen: g, n }) <= weight2 {
                modes.push(FFMode { gen: g, n });
                n -= 1;
            }
        }
        modes.sort();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.fill(&modes, 0, weight2, &mut cur, &mut out);
        out.sort();
        out
    }

    fn fill(&self, modes: &[FFMode], from: usize, left: i64, cur: &mut Vec<FFMode>, out: &mut Vec<FFMono>) {
        if left == 0 {
            out.push(FFMono(SmallVec::from_slice(cur)));
            return;
        }
        for i in from..modes.len() {
            let x = modes[i];
            let s = self.mode_shift2(x);
            if s > left {
                continue;
            }
            cur.push(x);
            let next = if self.odd(x.gen) { i + 1 } else { i };
            self.fill(modes, next, left - s, cur, out);
            cur.pop();
        }
    }

    pub fn mono_label(&self, m: &FFMono) -> String {
        if m.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let ms = &m.0;
        let mut i = 0;
        while i < ms.len() {
            let mut j = i;
            while j < ms.len() && ms[j] == ms[i] {
                j += 1;
            }
            let base = format!("{}({})", self.gens[ms[i].gen as usize].name, ms[i].n);
            parts.push(if j - i > 1 { format!("{base}^{}", j - i) } else { base });
            i = j;
        }
        parts.join("*")
    }

    pub fn display(&self, s: &FFState) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let mut out = Vec::new();
        for (m, c) in &s.terms {
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            if m.is_empty() {
                out.push(format!("{cs}*1"));
            } else {
                out.push(format!("{cs}*{}*1", self.mono_label(m)));
            }
        }
        out.join(" + ")
    }

    /// `{"terms": [[["a+(-1)", ...], "coeff"], ...]}` with `s` the square root of 3.
    pub fn to_json(&self, s: &FFState) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = s
            .terms
            .iter()
            .map(|(m, c)| {
                let labels: Vec<String> =
                    m.0.iter().map(|x| format!("{}({})", self.gens[x.gen as usize].name, x.n)).collect();
                serde_json::json!([labels, c.to_string()])
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn clear_cache(&self) {
        self.memo.borrow_mut().clear();
    }
}

impl fmt::Debug for FreeFieldAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeFieldAlgebra").field("gens", &self.gens).field("pairings", &self.pairings).finish()
    }
}
