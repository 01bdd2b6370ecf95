//! Highest weights `(x, y)` of irreducible modules of the simple quotient at
//! the levels `-5/3, -9/4, -1, 0`, re-derived from the engine.
//!
//! At `-5/3` and `-9/4` the inputs are computed, not looked up: the lowest
//! singular vector in weights up to the bound, its zero-mode polynomial
//! (the filter), and the relation `[G+]^p ([w] - y*) = 0` obtained by reducing
//! `G+(0)^p` applied to it.

use crate::arith::{binomial, int, rat, resultant, Poly1, Poly2, Rational, Var};
use crate::error::{Error, Result};
use crate::modes::{convert_convention, Convention, State};
use crate::singular::{find_singular, AnnihilatorSet};
use crate::verma::{contragredient_weight, spectral_flow_weight, TopLevelRep, TopOp};
use crate::zhu::{h_poly, smith_relation, zero_mode_poly};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

pub type Weight = (Rational, Rational);

/// Common rational zeros of two polynomials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionSet {
    #[serde(serialize_with = "ser_weights")]
    pub points: Vec<Weight>,
    /// False when irrational common zeros cannot be ruled out.
    pub complete: bool,
}

fn ser_weights<S: serde::Serializer>(w: &[Weight], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(|(x, y)| (x.to_string(), y.to_string())))
}

fn ser_weight<S: serde::Serializer>(w: &Weight, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&(w.0.to_string(), w.1.to_string()), s)
}

pub fn fmt_weight(w: &Weight) -> String {
    format!("({}, {})", w.0, w.1)
}

/// Roots in `y` of `p(x0, y)` and `q(x0, y)` together.
fn common_y(p: &Poly2, q: &Poly2, x0: &Rational) -> Result<(Vec<Rational>, bool)> {
    let px = Poly2::constant(x0.clone());
    let a = p.substitute(&px, &Poly2::y()).to_poly1(Var::Y).expect("univariate");
    let b = q.substitute(&px, &Poly2::y()).to_poly1(Var::Y).expect("univariate");
    let g = a.gcd(&b);
    if g.is_zero() {
        return Err(Error::InfiniteSolutions);
    }
    let rs = g.rational_roots()?;
    Ok((rs.distinct(), rs.is_complete()))
}

/// All common rational zeros of `p` and `q`.
pub fn solve_system(p: &Poly2, q: &Poly2) -> Result<SolutionSet> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p == q {
        return Err(Error::InfiniteSolutions);
    }
    let mut points = BTreeSet::new();
    let mut complete = true;
    let diff = p - q;
    let linear_in_y = diff.degree_in(Var::Y) == Some(1) && diff.degree() == Some(1);
    if linear_in_y && diff.degree_in(Var::X).unwrap_or(0) <= 1 {
        // diff = a*x + b*y + c gives y = -(a*x + c)/b
        let b = diff.coeff(0, 1);
        let ysub = Poly2::from_terms([(1, 0, -diff.coeff(1, 0) / &b), (0, 0, -diff.coeff(0, 0) / &b)]);
        let u = p.substitute(&Poly2::x(), &ysub);
        let u1 = u.to_poly1(Var::X).expect("only x remains");
        if u1.is_zero() {
            return Err(Error::InfiniteSolutions);
        }
        let rs = u1.rational_roots()?;
        complete &= rs.is_complete();
        for x0 in rs.distinct() {
            let y0 = ysub.eval(&x0, &Rational::zero());
            points.insert((x0, y0));
        }
    } else {
        let r = resultant(p, q, Var::Y)?;
        if r.is_zero() {
            return Err(Error::InfiniteSolutions);
        }
        let rs = r.rational_roots()?;
        complete &= rs.is_complete();
        for x0 in rs.distinct() {
            let (ys, c) = common_y(p, q, &x0)?;
            complete &= c;
            for y0 in ys {
                points.insert((x0.clone(), y0));
            }
        }
    }
    Ok(SolutionSet { points: points.into_iter().collect(), complete })
}

/// `h_i(x0, y0)` as a polynomial in `i`.
///
/// `i h_i = sum_{j<i} g(x0 + j, y0)` is a cubic in `i` vanishing at 0, so it is
/// fixed by its values at `i = 1, 2, 3` read from [`h_poly`].
pub fn h_in_i(k: &Rational, w: &Weight) -> Result<Poly1> {
    let pts: Vec<(Rational, Rational)> = (1..=3)
        .map(|i| Ok((int(i), h_poly(i, k)?.eval(&w.0, &w.1) * int(i))))
        .collect::<Result<_>>()?;
    // Lagrange interpolation through (0, 0) and the three points
    let mut nodes = vec![(int(0), int(0))];
    nodes.extend(pts);
    let mut s = Poly1::zero();
    for (a, (xa, ya)) in nodes.iter().enumerate() {
        let mut basis = Poly1::constant(ya.clone());
        for (b, (xb, _)) in nodes.iter().enumerate() {
            if a != b {
                let f = Poly1::linear(-xb.clone(), int(1)).scale(&(Rational::one() / (xa - xb)));
                basis = &basis * &f;
            }
        }
        s = &s + &basis;
    }
    let (q, r) = s.div_rem(&Poly1::var());
    debug_assert!(r.is_zero());
    Ok(q)
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "ser_weight")]
    pub weight: Weight,
    /// `h_i` at the weight, as a polynomial in `i`.
    pub h: String,
    #[serde(skip)]
    pub h_poly: Poly1,
    pub rational_roots: Vec<String>,
    /// No root of `h_i` is a positive integer, so no top level is finite.
    pub infinite_top: bool,
}

pub fn infinite_top_certificates(k: &Rational, weights: &[Weight]) -> Result<Vec<Certificate>> {
    if weights.is_empty() {
        return Err(Error::Shape("no weights given".into()));
    }
    weights
        .iter()
        .map(|w| {
            let h = h_in_i(k, w)?;
            let roots = h.rational_roots()?.distinct();
            let hits = roots.iter().any(|r| r.is_integer() && r > &Rational::zero());
            Ok(Certificate {
                weight: w.clone(),
                h: h.to_string_in("i"),
                h_poly: h,
                rational_roots: roots.iter().map(|r| r.to_string()).collect(),
                infinite_top: !hits,
            })
        })
        .collect()
}

/// Engine-derived inputs at a level with a low-weight singular vector.
#[derive(Clone, Debug, Serialize)]
pub struct LevelInputs {
    #[serde(with = "crate::arith::rational_str")]
    pub k: Rational,
    /// Weight of the singular vector (both gradings agree at charge 0).
    pub weight: u32,
    /// Omega-bar form of the singular vector.
    #[serde(skip)]
    pub singular: State<Rational>,
    /// Zero-mode polynomial in the omega grading.
    pub filter: String,
    #[serde(skip)]
    pub filter_poly: Poly2,
    /// Relation `[G+]^power ([w] - y_star) = 0` with scalar `constant`.
    pub power: u32,
    #[serde(with = "crate::arith::rational_str")]
    pub y_star: Rational,
    #[serde(with = "crate::arith::rational_str")]
    pub constant: Rational,
    pub relation: String,
}

/// Finds the lowest charge-zero singular vector and its Zhu data.
pub fn level_inputs(k: &Rational, bound: u32) -> Result<LevelInputs> {
    let ann = AnnihilatorSet::default();
    for n in 1..=bound {
        let sol = find_singular(k, &int(n as i64), 0, Convention::Omega, Convention::Omega, &ann, bound)?;
        let Some(s) = sol.solutions.first() else { continue };
        // scaling only: use the reference normalization when one is bundled
        let s = crate::golden::singular_for_level(k, Convention::Omega)
            .and_then(|g| {
                let (m, c) = g.state.terms.iter().next()?;
                s.normalized_to(m, c)
            })
            .unwrap_or_else(|| s.clone());
        let s = &s;
        let filter = zero_mode_poly(s, k, Convention::Omega)?;
        let bar = convert_convention(s, k, Convention::OmegaBar);
        for p in 1..=n {
            let (_, w) = smith_relation(k, &bar, p)?;
            if w.terms.len() != 1 {
                continue;
            }
            let (&(a, d), poly) = w.terms.iter().next().unwrap();
            if (a, d) != (0, p) || poly.degree_in(Var::X).unwrap_or(0) > 0 || poly.degree_in(Var::Y) != Some(1) {
                continue;
            }
            let c = poly.coeff(0, 1);
            let y_star = -poly.coeff(0, 0) / &c;
            return Ok(LevelInputs {
                k: k.clone(),
                weight: n,
                singular: bar,
                filter: filter.to_string(),
                filter_poly: filter,
                power: p,
                y_star,
                constant: c,
                relation: w.factored(),
            });
        }
        return Err(Error::Data(format!("no relation of the form E^p (Y - y*) from the weight-{n} singular vector")));
    }
    Err(Error::WeightBound { requested: format!("singular vector at level {k}"), bound })
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditEntry {
    pub branch: String,
    pub system: Vec<String>,
    #[serde(serialize_with = "ser_weights")]
    pub solutions: Vec<Weight>,
    pub complete: bool,
    /// One verdict per solution.
    pub verdicts: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Member {
    #[serde(serialize_with = "ser_weight")]
    pub weight: Weight,
    /// Top-level dimension used by the branch, when finite.
    pub top_dim: Option<u32>,
    pub branch: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Family {
    pub description: String,
    /// `y` as a polynomial in `x`.
    pub y_of_x: String,
    pub identity: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    #[serde(with = "crate::arith::rational_str")]
    pub k: Rational,
    pub inputs: Option<LevelInputs>,
    /// Weights whose top level is finite-dimensional.
    pub finite: Vec<Member>,
    /// Weights whose top level is infinite-dimensional.
    pub infinite: Vec<Member>,
    pub certificates: Vec<Certificate>,
    pub families: Vec<Family>,
    pub flags: Vec<String>,
    pub audit: Vec<AuditEntry>,
}

impl Classification {
    pub fn finite_weights(&self) -> Vec<Weight> {
        self.finite.iter().map(|m| m.weight.clone()).collect()
    }

    pub fn infinite_weights(&self) -> Vec<Weight> {
        self.infinite.iter().map(|m| m.weight.clone()).collect()
    }

    /// Whether both lists are stable under the contragredient map and under
    /// spectral flow of the finite ones (with their top dimension).
    pub fn closure_holds(&self) -> bool {
        let all: BTreeSet<Weight> = self.finite_weights().into_iter().chain(self.infinite_weights()).collect();
        let contra = all.iter().all(|(x, y)| all.contains(&contragredient_weight(x, y)));
        let flow = self.finite.iter().all(|m| {
            let (x, y) = &m.weight;
            m.top_dim.map_or(true, |i| all.contains(&spectral_flow_weight(x, y, i, &self.k)))
        });
        contra && flow
    }
}

fn sys_strings(p: &Poly2, q: &Poly2) -> Vec<String> {
    vec![format!("{p} = 0"), format!("{q} = 0")]
}

/// `p(x, y)` at the spectral-flow image `psi_i(x, y)`.
fn at_flow(p: &Poly2, i: u32, k: &Rational) -> Poly2 {
    let kappa = (int(2) * k + int(3)) / int(3);
    let ii = int(i as i64);
    let xh = &Poly2::x() + &Poly2::constant(&ii - int(1) - &kappa);
    let yh = &(&Poly2::y() - &Poly2::x()) + &Poly2::constant(-&ii + int(1) + &kappa);
    p.substitute(&xh, &yh)
}

fn filter_at(inputs: &LevelInputs, w: &Weight) -> Rational {
    // the filter lives in the omega grading: y_omega = y + x/2
    inputs.filter_poly.eval(&w.0, &(&w.1 + &w.0 * rat(1, 2)))
}

fn classify_with_relation(inputs: LevelInputs) -> Result<Classification> {
    let k = inputs.k.clone();
    let p = inputs.power;
    let ys = inputs.y_star.clone();
    let kappa = (int(2) * &k + int(3)) / int(3);
    let mut audit = Vec::new();
    let mut finite: Vec<Member> = Vec::new();
    let mut accept = |w: Weight, dim: u32, branch: &str, verdicts: &mut Vec<String>| {
        let f = filter_at(&inputs, &w);
        if !f.is_zero() {
            verdicts.push(format!("{} excluded: filter value {f}", fmt_weight(&w)));
        } else if w.1 == ys {
            verdicts.push(format!("{} left to the y = {ys} branch", fmt_weight(&w)));
        } else {
            verdicts.push(format!("{} accepted", fmt_weight(&w)));
            if !finite.iter().any(|m| m.weight == w) {
                finite.push(Member { weight: w, top_dim: Some(dim), branch: branch.to_string() });
            }
        }
    };

    // finite top of dimension i <= p and y != y*: h_i(x, y) = 0
    for i in 1..=p {
        let hi = h_poly(i as i64, &k)?;
        // the flowed module again has y != y*, so its top has dimension j <= p
        for j in 1..=p {
            let hj = at_flow(&h_poly(j as i64, &k)?, i, &k);
            let sol = solve_system(&hi, &hj)?;
            let branch = format!("top dim {i}, flowed top dim {j}");
            let mut verdicts = Vec::new();
            for w in &sol.points {
                let (_, yh) = spectral_flow_weight(&w.0, &w.1, i, &k);
                if yh == ys {
                    verdicts.push(format!("{} belongs to the diagonal branch", fmt_weight(w)));
                    continue;
                }
                accept(w.clone(), i, &branch, &mut verdicts);
            }
            audit.push(AuditEntry { branch, system: sys_strings(&hi, &hj), solutions: sol.points, complete: sol.complete, verdicts });
        }
        // flowed y equals y*: y = y* + x + i - 1 - kappa
        let ydiag = &Poly2::x() + &Poly2::constant(&ys + int(i as i64) - int(1) - &kappa);
        let u = hi.substitute(&Poly2::x(), &ydiag).to_poly1(Var::X).expect("univariate");
        let branch = format!("top dim {i}, flowed y = {ys}");
        let (points, complete) = if u.is_zero() {
            return Err(Error::InfiniteSolutions);
        } else {
            let rs = u.rational_roots()?;
            let pts: Vec<Weight> = rs.distinct().into_iter().map(|x| {
                let y = ydiag.eval(&x, &Rational::zero());
                (x, y)
            }).collect();
            (pts, rs.is_complete())
        };
        let mut verdicts = Vec::new();
        for w in &points {
            accept(w.clone(), i, &branch, &mut verdicts);
        }
        audit.push(AuditEntry {
            branch,
            system: vec![format!("h_{i}(x, {}) = 0", ydiag), format!("{} = 0", u.to_string_in("x"))],
            solutions: points,
            complete,
            verdicts,
        });
    }

    // y = y*: the filter alone constrains x
    let yw = &Poly2::constant(ys.clone()) + &Poly2::x().scale(&rat(1, 2));
    let u = inputs.filter_poly.substitute(&Poly2::x(), &yw).to_poly1(Var::X).expect("univariate");
    let rs = u.rational_roots()?;
    let mut verdicts = Vec::new();
    let mut candidates = Vec::new();
    let points: Vec<Weight> = rs.distinct().into_iter().map(|x| (x, ys.clone())).collect();
    for w in &points {
        let (cx, cy) = contragredient_weight(&w.0, &w.1);
        if cy != ys {
            // the contragredient module has y != y*, hence a top of dimension <= p
            let mut ok = false;
            for i in 1..=p {
                ok |= h_poly(i as i64, &k)?.eval(&cx, &cy).is_zero();
            }
            if !ok {
                verdicts.push(format!(
                    "{} excluded: contragredient {} has h_i != 0 for all i <= {p}",
                    fmt_weight(w),
                    fmt_weight(&(cx, cy))
                ));
                continue;
            }
        }
        verdicts.push(format!("{} kept", fmt_weight(w)));
        candidates.push(w.clone());
    }
    audit.push(AuditEntry {
        branch: format!("y = {ys}"),
        system: vec![format!("filter(x, {ys} + x/2) = {} = 0", u.to_string_in("x"))],
        solutions: points,
        complete: rs.is_complete(),
        verdicts,
    });

    let certificates = if candidates.is_empty() { Vec::new() } else { infinite_top_certificates(&k, &candidates)? };
    let mut infinite = Vec::new();
    let mut flags = Vec::new();
    for c in &certificates {
        if c.infinite_top {
            infinite.push(Member { weight: c.weight.clone(), top_dim: None, branch: format!("y = {ys}") });
        } else {
            flags.push(format!("{} on y = {ys} admits a finite top (h_i roots {:?})", fmt_weight(&c.weight), c.rational_roots));
        }
    }
    finite.sort_by(|a, b| a.weight.cmp(&b.weight));
    infinite.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(Classification { k, inputs: Some(inputs), finite, infinite, certificates, families: Vec::new(), flags, audit })
}

/// `h_i(x, f(x)) = 0` identically.
fn family(k: &Rational, i: i64, f: &Poly2, description: &str) -> Result<Family> {
    let h = h_poly(i, k)?.substitute(&Poly2::x(), f);
    Ok(Family {
        description: description.into(),
        y_of_x: f.to_string(),
        identity: format!("h_{i}(x, {f}) = {}", if h.is_zero() { "0".to_string() } else { h.to_string() }),
        holds: h.is_zero(),
    })
}

fn classify_integral(k: &Rational) -> Result<Classification> {
    let mut families = Vec::new();
    let mut flags = Vec::new();
    if k == &int(-1) {
        // h_1 must be a scalar multiple of y - (3x^2 - x)/2
        let curve = Poly2::from_terms([(0, 1, int(1)), (2, 0, rat(-3, 2)), (1, 0, rat(1, 2))]);
        let h1 = h_poly(1, k)?;
        let c = h1.coeff(0, 1);
        let proportional = !c.is_zero() && h1 == curve.scale(&c);
        let f = Poly2::from_terms([(2, 0, rat(3, 2)), (1, 0, rat(-1, 2))]);
        let mut fam = family(k, 1, &f, "top dimension 1")?;
        fam.holds &= proportional;
        fam.identity = format!("h_1 = {c}*({curve}); {}", fam.identity);
        families.push(fam);
    } else if k == &int(0) {
        let f1 = Poly2::from_terms([(2, 0, int(1)), (1, 0, int(-1))]);
        let f2 = Poly2::from_terms([(2, 0, int(1))]);
        families.push(family(k, 1, &f1, "top dimension 1")?);
        families.push(family(k, 2, &f2, "top dimension 2, x != 0")?);
        // the families meet at x = 0, where h_1 vanishes on the two-dimensional top
        let top = TopLevelRep::new(k.clone(), int(0), int(0), 3);
        let (_, f_on_w1) = top.act_coefficient(TopOp::F, 1)?;
        let h2 = h_poly(2, k)?.eval(&int(0), &int(0));
        if f_on_w1.is_zero() && h2.is_zero() {
            flags.push(
                "x = 0: both families give (0, 0) and h_1(0, 0) = h_2(0, 0) = 0; G-(0) G+(0) v = 0, so a \
                 two-dimensional top spanned by v, G+(0) v is indecomposable, not irreducible"
                    .into(),
            );
        }
    } else {
        return Err(Error::UnsupportedLevel(k.to_string()));
    }
    Ok(Classification {
        k: k.clone(),
        inputs: None,
        finite: Vec::new(),
        infinite: Vec::new(),
        certificates: Vec::new(),
        families,
        flags,
        audit: Vec::new(),
    })
}

pub fn classify_level(k: &Rational, bound: u32) -> Result<Classification> {
    if k == &rat(-5, 3) || k == &rat(-9, 4) {
        classify_with_relation(level_inputs(k, bound)?)
    } else if k == &int(-1) || k == &int(0) {
        classify_integral(k)
    } else {
        Err(Error::UnsupportedLevel(k.to_string()))
    }
}

/// `nu^2 (C(4r, 3) - C(4r - 4, 3)) = 3r^2 - 9r/2 + 15/8` with `nu^2 = 6/64`, in `Q[r]`.
pub fn pi0_bracket_identity() -> (Poly1, Poly1, bool) {
    let r4 = Poly1::linear(int(0), int(4));
    let r4m = Poly1::linear(int(-4), int(4));
    let lhs = (&r4.binomial(3) - &r4m.binomial(3)).scale(&rat(6, 64));
    let rhs = Poly1::new(vec![rat(15, 8), rat(-9, 2), int(3)]);
    let ok = lhs == rhs;
    (lhs, rhs, ok)
}

/// Scalar binomial check used alongside [`pi0_bracket_identity`].
pub fn pi0_sides_at(r: &Rational) -> (Rational, Rational) {
    let lhs = (binomial(&(int(4) * r), 3) - binomial(&(int(4) * r - int(4)), 3)) * rat(6, 64);
    let rhs = int(3) * r * r - rat(9, 2) * r + rat(15, 8);
    (lhs, rhs)
}
