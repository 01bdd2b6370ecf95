//! The spectral flow automorphism on omega-bar modes.

use super::{BracketResult, Convention, Generator, Mode, ModeAlgebra};
use crate::arith::Rational;
use num_traits::Zero;

/// `psi(a)` as a combination of modes plus a scalar.
pub fn spectral_flow_mode(alg: &ModeAlgebra, a: Mode) -> (Vec<(Mode, Rational)>, Rational) {
    assert_eq!(a.conv, Convention::OmegaBar);
    let one = Rational::from_integer(1.into());
    let n = a.index;
    let delta = if n == 0 { alg.kappa.clone() } else { Rational::zero() };
    match a.gen {
        Generator::J => (vec![(a, one)], -delta),
        Generator::L => (vec![(a, one.clone()), (Mode::bar(Generator::J, n), -one)], delta),
        Generator::Gp => (vec![(Mode::bar(Generator::Gp, n - 1), one)], Rational::zero()),
        Generator::Gm => (vec![(Mode::bar(Generator::Gm, n + 1), one)], Rational::zero()),
    }
}

/// `psi` applied to a commutator, using
/// `psi((J^2)_p) = (J^2)_p - 2 kappa J(p) + kappa^2 delta_{p,0}`.
pub fn spectral_flow_bracket(alg: &ModeAlgebra, br: &BracketResult) -> BracketResult {
    let mut out = BracketResult { scalar: br.scalar.clone(), ..Default::default() };
    for (p, c) in &br.quadratic {
        out.push_quadratic(*p, c.clone());
        out.push_linear(Mode::bar(Generator::J, *p), -(c * &alg.kappa) * Rational::from_integer(2.into()));
        if *p == 0 {
            out.scalar += c * &alg.kappa * &alg.kappa;
        }
    }
    for (m, c) in &br.linear {
        let (lin, s) = spectral_flow_mode(alg, *m);
        for (x, d) in lin {
            out.push_linear(x, c * d);
        }
        out.scalar += c * s;
    }
    out
}
