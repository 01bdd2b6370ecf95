//! Weight spaces of vacuum and highest-weight modules, the top level of a
//! highest-weight module, and the weight maps relating modules.

use crate::arith::{int, rat, Coeff, Poly2, Rational};
use crate::error::{Error, Result};
use crate::modes::{BaseTag, Convention, Generator, Mode, Module, Monomial, State};
use crate::zhu::h_poly;
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightSpaceBasis {
    #[serde(with = "crate::arith::rational_str")]
    pub k: Rational,
    pub base: BaseTag,
    /// Convention of the listed monomials.
    pub conv: Convention,
    /// Grading in which `weight` is measured.
    pub grading: Convention,
    #[serde(with = "crate::arith::rational_str")]
    pub weight: Rational,
    pub charge: i64,
    #[serde(serialize_with = "ser_monomials")]
    pub basis: Vec<Monomial>,
}

fn ser_monomials<S: serde::Serializer>(b: &[Monomial], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(b.iter().map(|m| m.labels()))
}

impl WeightSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Creation modes of `(base, conv)` raising twice the weight by at most `max2`.
pub fn creation_modes(base: BaseTag, conv: Convention, max2: i64) -> Vec<Mode> {
    let probe: Module<Rational> = match base {
        BaseTag::Vacuum => Module::vacuum(int(0), conv),
        BaseTag::HighestWeight => Module::highest_weight(int(0), conv, int(0), int(0)),
    };
    let mut out = Vec::new();
    for g in Generator::ALL {
        for n in -(max2 / 2 + 1)..=0 {
            let m = Mode::new(g, n, conv);
            if probe.is_creation(m) && m.shift2() <= max2 {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// Twice the weight in the convention of the monomials, given a weight in `grading`.
fn target_depth2(conv: Convention, grading: Convention, weight: &Rational, charge: i64) -> Option<i64> {
    let w2 = weight * int(2);
    if !w2.is_integer() {
        return None;
    }
    let w2: i64 = w2.to_integer().try_into().ok()?;
    Some(match (conv, grading) {
        (a, b) if a == b => w2,
        // omega weight = omega-bar weight + charge/2
        (Convention::OmegaBar, Convention::Omega) => w2 - charge,
        _ => w2 + charge,
    })
}

/// All canonical monomials of the given weight and charge, in canonical order.
pub fn enumerate_basis(
    k: &Rational,
    base: BaseTag,
    conv: Convention,
    grading: Convention,
    weight: &Rational,
    charge: i64,
    bound: u32,
) -> Result<WeightSpaceBasis> {
    if weight < &Rational::zero() {
        return Err(Error::Shape("negative weight".into()));
    }
    if weight > &int(bound as i64) {
        return Err(Error::WeightBound { requested: weight.to_string(), bound });
    }
    let mut basis = Vec::new();
    if let Some(d2) = target_depth2(conv, grading, weight, charge) {
        if d2 >= 0 {
            let modes = creation_modes(base, conv, d2);
            let cap = (charge.abs() + d2 + 1) as usize;
            let mut cur = Vec::new();
            collect(&modes, 0, d2, charge, cap, &mut cur, &mut basis);
        }
    }
    basis.sort();
    Ok(WeightSpaceBasis { k: k.clone(), base, conv, grading, weight: weight.clone(), charge, basis })
}

fn collect(
    modes: &[Mode],
    start: usize,
    left2: i64,
    charge_left: i64,
    cap: usize,
    cur: &mut Vec<Mode>,
    out: &mut Vec<Monomial>,
) {
    if start == modes.len() {
        if left2 == 0 && charge_left == 0 {
            out.push(Monomial::from_modes(cur));
        }
        return;
    }
    let m = modes[start];
    let s = m.shift2();
    let c = m.gen.charge();
    let mut count = 0;
    loop {
        collect(modes, start + 1, left2 - s * count as i64, charge_left - c * count as i64, cap, cur, out);
        count += 1;
        if s * count as i64 > left2 || count > cap {
            break;
        }
        cur.push(m);
    }
    for _ in 1..count {
        cur.pop();
    }
}

/// Operators on the top level `span{ G+(0)^i v }` of a highest-weight module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopOp {
    /// `G+(0)`.
    E,
    /// `G-(0)`.
    F,
    /// `J(0)`.
    X,
    /// `L(0)`.
    Y,
}

/// The top level of a highest-weight module with `(J(0), L(0)) v = (x, y) v`.
pub struct TopLevelRep<C: Coeff> {
    pub module: Module<C>,
    /// Number of stored vectors `w_0 .. w_{dim-1}`.
    pub dim: usize,
}

impl<C: Coeff> TopLevelRep<C> {
    pub fn new(k: Rational, x: C, y: C, dim: usize) -> Self {
        Self { module: Module::highest_weight(k, Convention::OmegaBar, x, y), dim }
    }

    /// `w_i = G+(0)^i v`.
    pub fn vector(&self, i: usize) -> Result<State<C>> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange(i as i64));
        }
        let gp0 = self.module.mode(Generator::Gp, 0);
        Ok(self.module.normal_form(&vec![gp0; i]))
    }

    pub fn act(&self, op: TopOp, i: usize) -> Result<State<C>> {
        let w = self.vector(i)?;
        let m = match op {
            TopOp::E => {
                if i + 1 >= self.dim {
                    return Err(Error::IndexOutOfRange(i as i64 + 1));
                }
                self.module.mode(Generator::Gp, 0)
            }
            TopOp::F => self.module.mode(Generator::Gm, 0),
            TopOp::X => self.module.mode(Generator::J, 0),
            TopOp::Y => self.module.mode(Generator::L, 0),
        };
        Ok(self.module.apply_mode(m, &w))
    }

    /// The result of `act` written as `c * w_j`.
    pub fn act_coefficient(&self, op: TopOp, i: usize) -> Result<(usize, C)> {
        let s = self.act(op, i)?;
        let j = match op {
            TopOp::E => i + 1,
            TopOp::F => i.saturating_sub(1),
            _ => i,
        };
        let target = Monomial::from_modes(&vec![self.module.mode(Generator::Gp, 0); j]);
        if s.terms.keys().any(|m| m != &target) {
            return Err(Error::Shape("top-level action left the top level".into()));
        }
        Ok((j, s.coeff(&target)))
    }
}

impl TopLevelRep<Poly2> {
    pub fn symbolic(k: Rational, dim: usize) -> Self {
        Self::new(k, Poly2::x(), Poly2::y(), dim)
    }

    /// Compares the computed action with `E w_i = w_{i+1}`, `F w_i = i h_i w_{i-1}`,
    /// `X w_i = (x+i) w_i`, `Y w_i = y w_i`.
    pub fn closed_forms_hold(&self, i: usize) -> Result<bool> {
        let k = self.module.alg.k.clone();
        let ii = int(i as i64);
        let f_expected = if i == 0 { Poly2::zero() } else { h_poly(i as i64, &k)?.scale(&ii) };
        let checks = [
            (TopOp::F, f_expected),
            (TopOp::X, &Poly2::x() + &Poly2::constant(ii.clone())),
            (TopOp::Y, Poly2::y()),
        ];
        for (op, want) in checks {
            if self.act_coefficient(op, i)?.1 != want {
                return Ok(false);
            }
        }
        if i + 1 < self.dim && self.act_coefficient(TopOp::E, i)?.1 != Poly2::one() {
            return Ok(false);
        }
        Ok(true)
    }
}

/// `L(x, y)` is a module iff `L(-x, y + x)` is (omega-bar weights).
pub fn contragredient_weight(x: &Rational, y: &Rational) -> (Rational, Rational) {
    (-x.clone(), y + x)
}

/// Contragredient in omega weights: `(x, y) -> (-x, y)`.
pub fn conjugate_weight_omega(x: &Rational, y: &Rational) -> (Rational, Rational) {
    (-x.clone(), y.clone())
}

/// Omega-bar weight `(x, y)` to omega weight `(x, y + x/2)`.
pub fn to_omega_weight(x: &Rational, y: &Rational) -> (Rational, Rational) {
    (x.clone(), y + x * rat(1, 2))
}

fn kappa(k: &Rational) -> Rational {
    (int(2) * k + int(3)) / int(3)
}

/// Highest weight of the spectral-flow image of `L(x, y)` whose top level has dimension `i`.
pub fn spectral_flow_weight(x: &Rational, y: &Rational, i: u32, k: &Rational) -> (Rational, Rational) {
    let kp = kappa(k);
    let i = int(i as i64);
    (x + &i - int(1) - &kp, y - x - &i + int(1) + &kp)
}

/// Inverse of [`spectral_flow_weight`]: the weight whose image with top dimension `i` is `(xh, yh)`.
pub fn inverse_spectral_flow_weight(xh: &Rational, yh: &Rational, i: u32, k: &Rational) -> (Rational, Rational) {
    let kp = kappa(k);
    let x = xh - int(i as i64) + int(1) + &kp;
    (x, yh + xh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    /// Coefficient table of `prod 1/(1 - z^c t^w)` by polynomial multiplication.
    fn series_count(base: BaseTag, conv: Convention, grading: Convention, max2: i64, q: i64, w2: i64) -> usize {
        let mut series: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        series.insert((0, 0), 1);
        let extra = 2 * max2 + 4;
        for m in creation_modes(base, conv, max2 + extra) {
            let gw = match (conv, grading) {
                (a, b) if a == b => m.shift2(),
                (Convention::OmegaBar, _) => m.shift2() + m.gen.charge(),
                _ => m.shift2() - m.gen.charge(),
            };
            let mut next = BTreeMap::new();
            for (&(a, c), &n) in &series {
                let mut p = 0;
                while a + gw * p <= max2 && p <= extra {
                    *next.entry((a + gw * p, c + m.gen.charge() * p)).or_insert(0) += n;
                    if gw == 0 && p > extra {
                        break;
                    }
                    p += 1;
                }
            }
            series = next;
        }
        series.get(&(w2, q)).copied().unwrap_or(0)
    }

    #[test]
    fn known_dimensions() {
        let k = rat(-5, 3);
        let b = enumerate_basis(&k, BaseTag::Vacuum, Convention::OmegaBar, Convention::Omega, &int(4), 0, 8).unwrap();
        assert_eq!(b.dim(), 13);
        let b = enumerate_basis(&k, BaseTag::Vacuum, Convention::Omega, Convention::Omega, &int(4), 0, 8).unwrap();
        assert_eq!(b.dim(), 13);
        let b = enumerate_basis(&k, BaseTag::Vacuum, Convention::OmegaBar, Convention::OmegaBar, &int(0), 0, 8).unwrap();
        assert_eq!(b.basis, vec![Monomial::one()]);
        let b = enumerate_basis(&rat(-9, 4), BaseTag::Vacuum, Convention::OmegaBar, Convention::OmegaBar, &int(3), 0, 8)
            .unwrap();
        assert_eq!(b.dim(), 6);
        assert!(enumerate_basis(&k, BaseTag::Vacuum, Convention::OmegaBar, Convention::OmegaBar, &int(9), 0, 8).is_err());
    }

    #[test]
    fn dimensions_match_product_formula() {
        let k = rat(-5, 3);
        for base in [BaseTag::Vacuum, BaseTag::HighestWeight] {
            for conv in [Convention::Omega, Convention::OmegaBar] {
                for grading in [Convention::Omega, Convention::OmegaBar] {
                    for w2 in (0..=12).filter(|w| grading == Convention::Omega || w % 2 == 0) {
                        for q in -3..=3 {
                            let weight = Rational::new(w2.into(), 2.into());
                            let b = enumerate_basis(&k, base, conv, grading, &weight, q, 8).unwrap();
                            let mut seen = b.basis.clone();
                            seen.dedup();
                            assert_eq!(seen.len(), b.dim());
                            assert_eq!(b.dim(), series_count(base, conv, grading, w2, q, w2), "{base:?} {conv:?} {grading:?} {w2} {q}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn weight_maps() {
        let z = int(0);
        assert_eq!(contragredient_weight(&z, &z), (z.clone(), z.clone()));
        assert_eq!(contragredient_weight(&rat(-1, 18), &rat(-1, 9)), (rat(1, 18), rat(-1, 6)));
        let (a, b) = contragredient_weight(&rat(2, 7), &rat(-3, 5));
        assert_eq!(contragredient_weight(&a, &b), (rat(2, 7), rat(-3, 5)));
        let k = rat(-5, 3);
        assert_eq!(spectral_flow_weight(&z, &z, 1, &k), (rat(1, 9), rat(-1, 9)));
        assert_eq!(inverse_spectral_flow_weight(&rat(-1, 3), &rat(2, 3), 1, &k), (rat(-4, 9), rat(1, 3)));
        assert_eq!(spectral_flow_weight(&rat(-1, 2), &z, 1, &rat(-9, 4)), (z.clone(), z.clone()));
        let (x, y) = spectral_flow_weight(&rat(3, 7), &rat(1, 5), 3, &k);
        assert_eq!(inverse_spectral_flow_weight(&x, &y, 3, &k), (rat(3, 7), rat(1, 5)));
    }
}
