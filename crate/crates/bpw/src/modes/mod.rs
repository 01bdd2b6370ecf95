//! Modes of the generating fields `J, L, G+, G-` and their commutators.
//!
//! Two index conventions coexist. In [`Convention::Omega`] `L_n` are the modes
//! of the original Virasoro field and `J_n, G±_n` are n-th product modes. In
//! [`Convention::OmegaBar`] the Virasoro field is shifted by half the
//! derivative of `J`, giving the integer-graded modes
//! `J(n) = J_n`, `L(n) = L_n - (n+1)/2 J_n`, `G+(n) = G+_n`, `G-(n) = G-_{n+1}`.

mod convert;
mod engine;
mod fields;
mod flow;
mod rewrite;
mod state;

pub use convert::convert_convention;
pub use engine::{Base, Module};
pub use fields::field_weight2;
pub use flow::{spectral_flow_bracket, spectral_flow_mode};
pub use state::{BaseTag, Monomial, PolyCoeff, State, Terms};

use crate::arith::{int, rat, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Generators in canonical PBW order: a canonical monomial lists `L` modes
/// first, then `J`, `G+`, `G-`, each block with the most negative index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    L,
    J,
    Gp,
    Gm,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::J, Generator::L, Generator::Gp, Generator::Gm];

    pub fn charge(self) -> i64 {
        match self {
            Generator::Gp => 1,
            Generator::Gm => -1,
            _ => 0,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Generator::J => "J",
            Generator::L => "L",
            Generator::Gp => "Gp",
            Generator::Gm => "Gm",
        }
    }

    fn pretty(self) -> &'static str {
        match self {
            Generator::J => "J",
            Generator::L => "L",
            Generator::Gp => "G+",
            Generator::Gm => "G-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Convention {
    #[serde(rename = "omega")]
    Omega,
    #[serde(rename = "omegabar")]
    OmegaBar,
}

impl Convention {
    pub fn other(self) -> Self {
        match self {
            Convention::Omega => Convention::OmegaBar,
            Convention::OmegaBar => Convention::Omega,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub gen: Generator,
    pub index: i64,
    pub conv: Convention,
}

impl Mode {
    pub fn new(gen: Generator, index: i64, conv: Convention) -> Self {
        Self { gen, index, conv }
    }

    pub fn bar(gen: Generator, index: i64) -> Self {
        Self::new(gen, index, Convention::OmegaBar)
    }

    pub fn omega(gen: Generator, index: i64) -> Self {
        Self::new(gen, index, Convention::Omega)
    }

    /// Twice the change of grading weight caused by acting with this mode.
    pub fn shift2(self) -> i64 {
        match (self.conv, self.gen) {
            (Convention::Omega, Generator::Gp | Generator::Gm) => 1 - 2 * self.index,
            _ => -2 * self.index,
        }
    }

    /// Index of the mode as an n-th product of its field.
    pub fn field_index(self) -> i64 {
        match (self.conv, self.gen) {
            (_, Generator::L) => self.index + 1,
            (Convention::OmegaBar, Generator::Gm) => self.index + 1,
            _ => self.index,
        }
    }

    /// The mode `X_(r)` of the field of `gen` with n-th product index `r`.
    pub fn from_field(gen: Generator, r: i64, conv: Convention) -> Self {
        let index = match (conv, gen) {
            (_, Generator::L) => r - 1,
            (Convention::OmegaBar, Generator::Gm) => r - 1,
            _ => r,
        };
        Self::new(gen, index, conv)
    }

    /// Serialization label such as `Gp(-1)`.
    pub fn label(self) -> String {
        format!("{}({})", self.gen.label(), self.index)
    }

    pub fn parse_label(s: &str, conv: Convention) -> Result<Self> {
        let bad = || Error::Data(format!("bad mode label {s:?}"));
        let (g, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let idx: i64 = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let gen = match g.trim() {
            "J" => Generator::J,
            "L" => Generator::L,
            "Gp" | "G+" => Generator::Gp,
            "Gm" | "G-" => Generator::Gm,
            _ => return Err(bad()),
        };
        Ok(Self::new(gen, idx, conv))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.conv {
            Convention::OmegaBar => write!(f, "{}({})", self.gen.pretty(), self.index),
            Convention::Omega => write!(f, "{}_{{{}}}", self.gen.pretty(), self.index),
        }
    }
}

/// A commutator `[a, b]` as `sum c_p (J^2)_p + sum c_m m + scalar`.
///
/// The quadratic part is kept as unexpanded markers `(J^2)_p`; the engine
/// expands them only against a concrete state.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BracketResult {
    pub quadratic: Vec<(i64, Rational)>,
    pub linear: Vec<(Mode, Rational)>,
    pub scalar: Rational,
}

impl BracketResult {
    pub fn is_zero(&self) -> bool {
        self.quadratic.is_empty() && self.linear.is_empty() && self.scalar.is_zero()
    }

    fn push_linear(&mut self, m: Mode, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(e) = self.linear.iter_mut().find(|(n, _)| *n == m) {
            e.1 += c;
        } else {
            self.linear.push((m, c));
        }
        self.linear.retain(|(_, c)| !c.is_zero());
    }

    fn push_quadratic(&mut self, p: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(e) = self.quadratic.iter_mut().find(|(q, _)| *q == p) {
            e.1 += c;
        } else {
            self.quadratic.push((p, c));
        }
        self.quadratic.retain(|(_, c)| !c.is_zero());
    }

    fn add_scaled(&mut self, other: &BracketResult, c: &Rational) {
        for (p, d) in &other.quadratic {
            self.push_quadratic(*p, d * c);
        }
        for (m, d) in &other.linear {
            self.push_linear(*m, d * c);
        }
        self.scalar += &other.scalar * c;
    }

    fn scaled(&self, c: &Rational) -> BracketResult {
        let mut out = BracketResult::default();
        out.add_scaled(self, c);
        out
    }

    /// Canonical form for comparisons.
    pub fn normalized(&self) -> BracketResult {
        let mut out = self.clone();
        out.quadratic.sort_by_key(|(p, _)| *p);
        out.linear.sort_by_key(|(m, _)| *m);
        out
    }
}

/// The mode algebra at a fixed rational level in one convention.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeAlgebra {
    pub k: Rational,
    pub conv: Convention,
    /// `[J_m, J_n] = kappa m delta_{m+n,0}`, `kappa = (2k+3)/3`.
    pub kappa: Rational,
    /// Central charge of `L_n`.
    pub c: Rational,
}

impl ModeAlgebra {
    pub fn new(k: Rational, conv: Convention) -> Self {
        assert!(k != int(-3), "level -3 is critical");
        let kappa = (int(2) * &k + int(3)) / int(3);
        let c = -(int(3) * &k + int(1)) * (int(2) * &k + int(3)) / (&k + int(3));
        Self { k, conv, kappa, c }
    }

    /// Central charge of the Virasoro field of this convention.
    pub fn central_charge(&self) -> Rational {
        match self.conv {
            Convention::Omega => self.c.clone(),
            Convention::OmegaBar => &self.c - int(3) * &self.kappa,
        }
    }

    pub fn bracket(&self, a: Mode, b: Mode) -> BracketResult {
        assert!(a.conv == self.conv && b.conv == self.conv, "mode convention mismatch");
        match self.conv {
            Convention::Omega => self.bracket_omega(a, b),
            Convention::OmegaBar => {
                let mut raw = BracketResult::default();
                for (am, ac) in to_omega(a) {
                    for (bm, bc) in to_omega(b) {
                        raw.add_scaled(&self.bracket_omega(am, bm), &(&ac * &bc));
                    }
                }
                let mut out = BracketResult::default();
                for (p, c) in raw.quadratic {
                    out.push_quadratic(p, c);
                }
                for (m, c) in raw.linear {
                    for (bm, bc) in from_omega(m) {
                        out.push_linear(bm, &c * &bc);
                    }
                }
                out.scalar = raw.scalar;
                out
            }
        }
    }

    /// The commutation relations with `L_m` conformal and `J, G±` n-th product indexed.
    fn bracket_omega(&self, a: Mode, b: Mode) -> BracketResult {
        use Generator::*;
        let (m, n) = (a.index, b.index);
        let (mq, nq) = (int(m), int(n));
        let om = |g, i| Mode::omega(g, i);
        let mut out = BracketResult::default();
        match (a.gen, b.gen) {
            (J, J) => {
                if m + n == 0 {
                    out.scalar = &self.kappa * &mq;
                }
            }
            (J, L) => out.push_linear(om(J, m + n), mq),
            (L, J) => out.push_linear(om(J, m + n), -nq),
            (J, Gp) => out.push_linear(om(Gp, m + n), Rational::one()),
            (J, Gm) => out.push_linear(om(Gm, m + n), -Rational::one()),
            (Gp, J) => out.push_linear(om(Gp, m + n), -Rational::one()),
            (Gm, J) => out.push_linear(om(Gm, m + n), Rational::one()),
            (L, L) => {
                out.push_linear(om(L, m + n), &mq - &nq);
                if m + n == 0 {
                    out.scalar = &self.c * int(m * m * m - m) / int(12);
                }
            }
            (L, g @ (Gp | Gm)) => out.push_linear(om(g, m + n), &mq / int(2) - &nq + rat(1, 2)),
            (g @ (Gp | Gm), L) => {
                out.push_linear(om(g, m + n), -(&nq / int(2) - &mq + rat(1, 2)))
            }
            (Gp, Gm) => out = self.gpgm(m, n),
            (Gm, Gp) => out = self.gpgm(n, m).scaled(&-Rational::one()),
            (Gp, Gp) | (Gm, Gm) => {}
        }
        out
    }

    /// `[G+_m, G-_n]`.
    fn gpgm(&self, m: i64, n: i64) -> BracketResult {
        let k = &self.k;
        let p = m + n - 1;
        let mut out = BracketResult::default();
        out.push_quadratic(p, int(3));
        out.push_linear(
            Mode::omega(Generator::J, p),
            rat(3, 2) * (k + int(1)) * int(m - n),
        );
        out.push_linear(Mode::omega(Generator::L, p), -(k + int(3)));
        if m + n == 1 {
            out.scalar = (k + int(1)) * (int(2) * k + int(3)) * int((m - 1) * m) / int(2);
        }
        out
    }
}

/// An omega-bar mode as a combination of omega modes.
pub fn to_omega(m: Mode) -> Vec<(Mode, Rational)> {
    assert_eq!(m.conv, Convention::OmegaBar);
    let n = m.index;
    match m.gen {
        Generator::J => vec![(Mode::omega(Generator::J, n), Rational::one())],
        Generator::L => vec![
            (Mode::omega(Generator::L, n), Rational::one()),
            (Mode::omega(Generator::J, n), -int(n + 1) / int(2)),
        ],
        Generator::Gp => vec![(Mode::omega(Generator::Gp, n), Rational::one())],
        Generator::Gm => vec![(Mode::omega(Generator::Gm, n + 1), Rational::one())],
    }
}

/// An omega mode as a combination of omega-bar modes.
pub fn from_omega(m: Mode) -> Vec<(Mode, Rational)> {
    assert_eq!(m.conv, Convention::Omega);
    let n = m.index;
    match m.gen {
        Generator::J => vec![(Mode::bar(Generator::J, n), Rational::one())],
        Generator::L => vec![
            (Mode::bar(Generator::L, n), Rational::one()),
            (Mode::bar(Generator::J, n), int(n + 1) / int(2)),
        ],
        Generator::Gp => vec![(Mode::bar(Generator::Gp, n), Rational::one())],
        Generator::Gm => vec![(Mode::bar(Generator::Gm, n - 1), Rational::one())],
    }
}

/// Expresses `m` in convention `target`.
pub fn convert_mode(m: Mode, target: Convention) -> Vec<(Mode, Rational)> {
    if m.conv == target {
        vec![(m, Rational::one())]
    } else if target == Convention::Omega {
        to_omega(m)
    } else {
        from_omega(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn alg(k: Rational, conv: Convention) -> ModeAlgebra {
        ModeAlgebra::new(k, conv)
    }

    #[test]
    fn heisenberg_and_virasoro() {
        let a = alg(rat(-5, 3), Convention::Omega);
        let b = a.bracket(Mode::omega(J, 2), Mode::omega(J, -2));
        assert_eq!(b.scalar, int(2) * rat(-1, 9));
        assert!(a.bracket(Mode::omega(J, 0), Mode::omega(J, 0)).is_zero());
        let b = a.bracket(Mode::omega(L, 3), Mode::omega(J, -1));
        assert_eq!(b.linear, vec![(Mode::omega(J, 2), int(1))]);
        assert_eq!(a.c, int(-1));
        assert_eq!(alg(int(0), Convention::Omega).c, int(-1));
    }

    #[test]
    fn antisymmetry_in_both_conventions() {
        for conv in [Convention::Omega, Convention::OmegaBar] {
            let a = alg(rat(-9, 4), conv);
            for g in Generator::ALL {
                for h in Generator::ALL {
                    for m in -3..=3 {
                        for n in -3..=3 {
                            let x = Mode::new(g, m, conv);
                            let y = Mode::new(h, n, conv);
                            let lhs = a.bracket(x, y).normalized();
                            let rhs = a.bracket(y, x).scaled(&-Rational::one()).normalized();
                            assert_eq!(lhs, rhs, "{x} {y}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn omegabar_brackets() {
        let k = rat(-5, 3);
        let a = alg(k.clone(), Convention::OmegaBar);
        // [L(m), G+(n)] = -n G+(m+n), [L(m), G-(n)] = (m-n) G-(m+n)
        let b = a.bracket(Mode::bar(L, 1), Mode::bar(Gp, -2));
        assert_eq!(b.linear, vec![(Mode::bar(Gp, -1), int(2))]);
        let b = a.bracket(Mode::bar(L, 1), Mode::bar(Gm, -2));
        assert_eq!(b.linear, vec![(Mode::bar(Gm, -1), int(3))]);
        // Virasoro with the shifted central charge
        let b = a.bracket(Mode::bar(L, 2), Mode::bar(L, -2));
        assert_eq!(b.scalar, a.central_charge() * int(6) / int(12));
        assert_eq!(
            a.central_charge(),
            -int(4) * (&k + int(1)) * (int(2) * &k + int(3)) / (&k + int(3))
        );
        // [G+(0), G-(-2)] = 3(J^2)_{-2} + (2k+3) J(-2) - (k+3) L(-2)
        let b = a.bracket(Mode::bar(Gp, 0), Mode::bar(Gm, -2)).normalized();
        assert_eq!(b.quadratic, vec![(-2, int(3))]);
        let mut lin = vec![
            (Mode::bar(J, -2), int(2) * &k + int(3)),
            (Mode::bar(L, -2), -(&k + int(3))),
        ];
        lin.sort_by_key(|(m, _)| *m);
        assert_eq!(b.linear, lin);
    }

    #[test]
    fn field_indices_round_trip() {
        for conv in [Convention::Omega, Convention::OmegaBar] {
            for g in Generator::ALL {
                for n in -4..4 {
                    let m = Mode::new(g, n, conv);
                    assert_eq!(Mode::from_field(g, m.field_index(), conv), m);
                }
            }
        }
        assert_eq!(Mode::parse_label("Gp(-1)", Convention::OmegaBar).unwrap(), Mode::bar(Gp, -1));
        assert_eq!(Mode::bar(Gm, -2).label(), "Gm(-2)");
        assert_eq!(Mode::bar(Gm, -2).to_string(), "G-(-2)");
    }
}
