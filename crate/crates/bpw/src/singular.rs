//! Singular vectors as kernels of annihilation operators on weight spaces.

use crate::arith::{int, Rational};
use crate::error::Result;
use crate::linalg::nullspace;
use crate::modes::{convert_mode, BaseTag, Convention, Generator, Mode, Module, Monomial, State, Terms};
use crate::verma::enumerate_basis;
use std::collections::BTreeMap;

/// Omega-bar modes a singular vector must be annihilated by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorSet {
    pub modes: Vec<Mode>,
}

impl Default for AnnihilatorSet {
    /// `J(1), L(1), L(2), G+(1), G-(1)`, which generate all positive modes.
    fn default() -> Self {
        use Generator::*;
        Self { modes: [(J, 1), (L, 1), (L, 2), (Gp, 1), (Gm, 1)].iter().map(|&(g, n)| Mode::bar(g, n)).collect() }
    }
}

impl AnnihilatorSet {
    /// Adds `G-(0)`, the extra condition on a highest-weight vector.
    pub fn with_gm0(mut self) -> Self {
        self.modes.push(Mode::bar(Generator::Gm, 0));
        self
    }

    pub fn with_gp0(mut self) -> Self {
        self.modes.push(Mode::bar(Generator::Gp, 0));
        self
    }
}

#[derive(Clone, Debug)]
pub struct SingularSolution {
    pub k: Rational,
    pub weight: Rational,
    pub charge: i64,
    pub grading: Convention,
    pub conv: Convention,
    pub basis_dim: usize,
    /// Kernel basis, each vector monic in its first canonical monomial.
    pub solutions: Vec<State<Rational>>,
}

impl SingularSolution {
    pub fn dim(&self) -> usize {
        self.solutions.len()
    }
}

/// `a` written in the module's convention and applied to `t`.
fn act_converted(m: &Module<Rational>, a: Mode, t: &State<Rational>) -> State<Rational> {
    let mut out = m.zero_state();
    for (b, c) in convert_mode(a, m.conv()) {
        out = out.add(&m.apply_mode(b, t).scale(&c));
    }
    out
}

/// The kernel of the annihilators on the vacuum weight space of weight `n`
/// (measured in `grading`) and charge `q`, with monomials in `conv`.
pub fn find_singular(
    k: &Rational,
    n: &Rational,
    q: i64,
    grading: Convention,
    conv: Convention,
    ann: &AnnihilatorSet,
    bound: u32,
) -> Result<SingularSolution> {
    let basis = enumerate_basis(k, BaseTag::Vacuum, conv, grading, n, q, bound)?;
    let m = Module::<Rational>::vacuum(k.clone(), conv);
    let cols = basis.basis.len();
    let mut rows: BTreeMap<(usize, Monomial), Vec<Rational>> = BTreeMap::new();
    for (j, b) in basis.basis.iter().enumerate() {
        let v = State::monomial(conv, BaseTag::Vacuum, b.clone(), int(1));
        for (i, &a) in ann.modes.iter().enumerate() {
            for (mono, c) in act_converted(&m, a, &v).terms {
                rows.entry((i, mono)).or_insert_with(|| vec![int(0); cols])[j] = c;
            }
        }
    }
    let kernel = nullspace(rows.into_values().collect(), cols);
    let solutions = kernel
        .into_iter()
        .map(|v| {
            let terms: Terms<Rational> =
                basis.basis.iter().zip(v).filter(|(_, c)| c != &int(0)).map(|(b, c)| (b.clone(), c)).collect();
            m.state(terms).monic()
        })
        .collect();
    Ok(SingularSolution { k: k.clone(), weight: n.clone(), charge: q, grading, conv, basis_dim: cols, solutions })
}

/// Outcome of [`verify_singular`]: the first annihilator with a nonzero image.
#[derive(Clone, Debug)]
pub struct Verification {
    pub witness: Option<(Mode, State<Rational>)>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn verify_singular(k: &Rational, s: &State<Rational>, ann: &AnnihilatorSet) -> Result<Verification> {
    s.homogeneous_grading()?;
    let m = Module::<Rational>::new(k.clone(), s.conv, crate::modes::Base::Vacuum);
    for &a in &ann.modes {
        let img = act_converted(&m, a, s);
        if !img.is_zero() {
            return Ok(Verification { witness: Some((a, img)) });
        }
    }
    Ok(Verification { witness: None })
}


/// `G+(-1)^n 1` (if `plus`) or `G-(-2)^n 1` in the omega-bar convention.
pub fn integral_power(k: &Rational, plus: bool, n: u32) -> State<Rational> {
    let m = Module::<Rational>::vacuum(k.clone(), Convention::OmegaBar);
    let a = if plus { m.mode(Generator::Gp, -1) } else { m.mode(Generator::Gm, -2) };
    m.normal_form(&vec![a; n as usize])
}

/// One closed form of a positive mode applied to a power, both sides expanded.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub name: &'static str,
    pub n: u32,
    pub lhs: State<Rational>,
    pub rhs: State<Rational>,
}

impl ClosedForm {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The induction formulas behind the singularity of the powers at integral
/// level, for `n >= 1`:
/// `G+(1) G-(-2)^n = 3n(k-n+2) J(-1) G-(-2)^(n-1) + n(n-1)(k-n+2) G-(-3) G-(-2)^(n-2)`,
/// `G+(2) G-(-2)^n = 2n(k-n+2)(k-n+2+n/2) G-(-2)^(n-1)`,
/// `G-(1) G+(-1)^n = -n(k-n+2)(2k-n+4) G+(-1)^(n-1)`.
pub fn integral_closed_forms(k: &Rational, n: u32) -> Vec<ClosedForm> {
    use Generator::*;
    let m = Module::<Rational>::vacuum(k.clone(), Convention::OmegaBar);
    let nn = int(n as i64);
    let a = k - &nn + int(2);
    let gm = |e: u32| integral_power(k, false, e);
    let gp = |e: u32| integral_power(k, true, e);
    let below = |e: i64, f: &dyn Fn(u32) -> State<Rational>| if e < 0 { m.zero_state() } else { f(e as u32) };
    let rhs1 = m
        .apply_mode(m.mode(J, -1), &below(n as i64 - 1, &gm))
        .scale(&(int(3) * &nn * &a))
        .add(&m.apply_mode(m.mode(Gm, -3), &below(n as i64 - 2, &gm)).scale(&(&nn * (&nn - int(1)) * &a)));
    let rhs2 = below(n as i64 - 1, &gm).scale(&(int(2) * &nn * &a * (&a + &nn / int(2))));
    let rhs3 = below(n as i64 - 1, &gp).scale(&(-(&nn * &a * (int(2) * k - &nn + int(4)))));
    vec![
        ClosedForm { name: "G+(1) G-(-2)^n", n, lhs: m.apply_mode(m.mode(Gp, 1), &gm(n)), rhs: rhs1 },
        ClosedForm { name: "G+(2) G-(-2)^n", n, lhs: m.apply_mode(m.mode(Gp, 2), &gm(n)), rhs: rhs2 },
        ClosedForm { name: "G-(1) G+(-1)^n", n, lhs: m.apply_mode(m.mode(Gm, 1), &gp(n)), rhs: rhs3 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn heisenberg_witness() {
        let k = rat(2, 5);
        let m = Module::<Rational>::vacuum(k.clone(), Convention::OmegaBar);
        let s = m.normal_form(&[m.mode(Generator::J, -1)]);
        let v = verify_singular(&k, &s, &AnnihilatorSet::default()).unwrap();
        let (a, img) = v.witness.unwrap();
        assert_eq!(a, Mode::bar(Generator::J, 1));
        assert_eq!(img, m.base_state().scale(&((int(2) * &k + int(3)) / int(3))));
    }

    #[test]
    fn gplus_power_at_level_zero() {
        let sol = find_singular(&int(0), &int(2), 2, Convention::OmegaBar, Convention::OmegaBar, &AnnihilatorSet::default(), 8)
            .unwrap();
        let m = Module::<Rational>::vacuum(int(0), Convention::OmegaBar);
        let g = m.normal_form(&[m.mode(Generator::Gp, -1), m.mode(Generator::Gp, -1)]);
        assert!(sol.solutions.contains(&g));
    }

    #[test]
    fn closed_forms_at_several_levels() {
        for k in [int(-1), int(0), int(2), rat(2, 7), rat(-5, 3)] {
            for n in 1..=5 {
                for f in integral_closed_forms(&k, n) {
                    assert!(f.holds(), "k={k} n={n} {}: {} vs {}", f.name, f.lhs, f.rhs);
                }
            }
        }
    }

    #[test]
    fn powers_at_integral_levels() {
        let ann = AnnihilatorSet::default();
        for k in -1..=3i64 {
            for n in 1..=5u32 {
                for plus in [true, false] {
                    let ok = verify_singular(&int(k), &integral_power(&int(k), plus, n), &ann).unwrap().passed();
                    // G-(1) G+(-1)^n carries the extra factor 2k - n + 4
                    let want = n as i64 == k + 2 || (plus && n as i64 == 2 * k + 4);
                    assert_eq!(ok, want, "k={k} n={n} plus={plus}");
                }
            }
        }
    }
}
