use super::{FFMono, FFState, FreeFieldAlgebra};
use crate::arith::{int, rat, Rational, Surd3};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::modes::{convert_convention, BaseTag, Convention, Generator, Mode, Module, Monomial, State};
use crate::verma::enumerate_basis;
use num_traits::Zero;
use serde::Serialize;
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

fn gen_name(g: Generator) -> &'static str {
    match g {
        Generator::J => "J",
        Generator::L => "L",
        Generator::Gp => "G+",
        Generator::Gm => "G-",
    }
}

/// A map from the universal algebra at level `k` into a free-field algebra,
/// fixed by the images of `J, L, G+, G-` (omega convention; `L` is `omega`).
pub struct Embedding {
    pub name: &'static str,
    pub k: Rational,
    pub alg: FreeFieldAlgebra,
    images: BTreeMap<Generator, FFState>,
    bp: Module<Rational>,
    memo: RefCell<HashMap<Monomial, FFState>>,
}

/// One n-th product `x_(n) y` of generators, on both sides of the map.
#[derive(Clone, Debug, Serialize)]
pub struct OpeLine {
    pub product: String,
    pub bp: String,
    pub image: String,
    pub ok: bool,
}

/// A named identity with its expected and computed sides.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaLine {
    pub identity: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub name: String,
    pub level: String,
    pub central_charge: String,
    pub expected_central_charge: String,
    pub lemma: Vec<LemmaLine>,
    pub coefficients: Vec<OpeLine>,
    pub ideal: Vec<LemmaLine>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.central_charge == self.expected_central_charge
            && self.lemma.iter().all(|l| l.ok)
            && self.coefficients.iter().all(|l| l.ok)
            && self.ideal.iter().all(|l| l.ok)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("## {} at k = {}\n\n", self.name, self.level);
        s += &format!(
            "central charge of the image of L: {} (expected {})\n\n",
            self.central_charge, self.expected_central_charge
        );
        let table = |s: &mut String, head: &str, rows: &[LemmaLine]| {
            *s += &format!("| {head} | expected | computed | ok |\n|---|---|---|---|\n");
            for l in rows {
                *s += &format!("| {} | {} | {} | {} |\n", l.identity, l.expected, l.computed, mark(l.ok));
            }
            *s += "\n";
        };
        table(&mut s, "identity", &self.lemma);
        s += "| product | in W^k | image | ok |\n|---|---|---|---|\n";
        for l in self.coefficients.iter().filter(|l| l.bp != "0" || l.image != "0") {
            s += &format!("| {} | {} | {} | {} |\n", l.product, l.bp, l.image, mark(l.ok));
        }
        let zeros = self.coefficients.iter().filter(|l| l.bp == "0" && l.image == "0").count();
        s += &format!("\n{zeros} further products vanish on both sides.\n\n");
        table(&mut s, "state", &self.ideal);
        s += &format!("result: {}\n", if self.passed() { "pass" } else { "FAIL" });
        s
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "NO"
    }
}

impl Embedding {
    fn build(name: &'static str, k: Rational, alg: FreeFieldAlgebra, images: [FFState; 4]) -> Self {
        let [j, l, gp, gm] = images;
        let images = [(Generator::J, j), (Generator::L, l), (Generator::Gp, gp), (Generator::Gm, gm)].into_iter().collect();
        let bp = Module::vacuum(k.clone(), Convention::Omega);
        Self { name, k, alg, images, bp, memo: RefCell::new(HashMap::new()) }
    }

    /// The Weyl realization at `k = -5/3`:
    /// `J = -1/3 a+ a-`, `omega = 1/2 (a-_(-2) a+ - a+_(-2) a-)`,
    /// `G+ = 1/3 (a+)^3`, `G- = 1/9 (a-)^3`.
    pub fn theta() -> Self {
        let w = FreeFieldAlgebra::weyl();
        let (p, m) = (w.field(0), w.field(1));
        let np = |a: &FFState, b: &FFState| w.normal_product(a, b);
        let j = np(&p, &m).scale(&rat(-1, 3));
        let l = np(&w.derivative(&m), &p).sub(&np(&w.derivative(&p), &m)).scale(&rat(1, 2));
        let gp = np(&p, &np(&p, &p)).scale(&rat(1, 3));
        let gm = np(&m, &np(&m, &m)).scale(&rat(1, 9));
        Self::build("Weyl realization", rat(-5, 3), w, [j, l, gp, gm])
    }

    /// The fermionic realization at `k = 0` in Clifford tensor symplectic
    /// fermions: `J = :psi+ psi-:`, `L = omega_F + :c b:`,
    /// `G+ = s :psi+ b:`, `G- = s :c psi-:` with `s^2 = 3`.
    ///
    /// With `{b_(m), c_(n)} = m delta_{m+n,0}` the field `:b c:` gives `b` and
    /// `c` weight -1; `:c b: = -:b c:` is the weight-one Virasoro field, and
    /// `G-` takes the matching order so that `G+_(2) G- = (k+1)(2k+3) = 3`.
    pub fn phi() -> Self {
        let f = FreeFieldAlgebra::clifford_symplectic();
        let [pp, pm, b, c] = ["psi+", "psi-", "b", "c"].map(|n| f.field_named(n));
        let np = |a: &FFState, b: &FFState| f.normal_product(a, b);
        let alpha = np(&pp, &pm);
        let omega_f = np(&alpha, &alpha).scale(&rat(1, 2));
        let l = omega_f.add(&np(&c, &b));
        let s = Surd3::s();
        let gp = np(&pp, &b).mul_coeff(&s);
        let gm = np(&c, &pm).mul_coeff(&s);
        Self::build("Fermionic realization", int(0), f, [alpha, l, gp, gm])
    }

    pub fn for_level(k: &Rational) -> Result<Self> {
        if *k == rat(-5, 3) {
            Ok(Self::theta())
        } else if k.is_zero() {
            Ok(Self::phi())
        } else {
            Err(Error::UnsupportedLevel(k.to_string()))
        }
    }

    pub fn image(&self, g: Generator) -> &FFState {
        &self.images[&g]
    }

    /// The generating state `X_(-1) 1` in the omega convention.
    pub fn bp_generator(&self, g: Generator) -> State<Rational> {
        self.bp.normal_form(&[Mode::from_field(g, -1, Convention::Omega)])
    }

    /// The image of a vacuum-module state of either convention.
    pub fn push(&self, s: &State<Rational>) -> Result<FFState> {
        if s.base != BaseTag::Vacuum {
            return Err(Error::Shape("only vacuum-module states have images".into()));
        }
        let s = convert_convention(s, &self.k, Convention::Omega);
        let mut out = FFState::zero();
        for (m, c) in &s.terms {
            out = out.add(&self.push_mono(m).scale(c));
        }
        Ok(out)
    }

    fn push_mono(&self, m: &Monomial) -> FFState {
        if m.is_empty() {
            return FFState::vacuum();
        }
        if let Some(hit) = self.memo.borrow().get(m) {
            return hit.clone();
        }
        let a = m.modes()[0];
        let out = self.alg.product(self.image(a.gen), a.field_index(), &self.push_mono(&m.tail()));
        self.memo.borrow_mut().insert(m.clone(), out.clone());
        out
    }

    pub fn check_ideal_vanishing(&self, s: &State<Rational>) -> Result<bool> {
        Ok(self.push(s)?.is_zero())
    }

    fn show(&self, s: &FFState) -> String {
        self.alg.display(s)
    }

    /// `G+_(n) G-` for `n = 2, 1, 0` against
    /// `(k+1)(2k+3) 1`, `3(k+1) J`, `3 J_(-1) J + 3(k+1)/2 DJ - (k+3) L`,
    /// on the free-field side and in the universal algebra.
    pub fn lemma_lines(&self) -> Vec<LemmaLine> {
        let k = &self.k;
        let (j, l) = (self.image(Generator::J), self.image(Generator::L));
        let c2 = (k + int(1)) * (int(2) * k + int(3));
        let c1 = int(3) * (k + int(1));
        let cd = int(3) * (k + int(1)) / int(2);
        let cl = -(k + int(3));
        let ff = [
            FFState::vacuum().scale(&c2),
            j.scale(&c1),
            self.alg
                .normal_product(j, j)
                .scale(&int(3))
                .add(&self.alg.derivative(j).scale(&cd))
                .add(&l.scale(&cl)),
        ];
        let bj = self.bp_generator(Generator::J);
        let bl = self.bp_generator(Generator::L);
        let jm1 = self.bp.mode(Generator::J, -1);
        let jm2 = self.bp.mode(Generator::J, -2);
        let bp = [
            self.bp.base_state().scale(&c2),
            bj.scale(&c1),
            self.bp
                .apply_mode(jm1, &bj)
                .scale(&int(3))
                .add(&self.bp.normal_form(&[jm2]).scale(&cd))
                .add(&bl.scale(&cl)),
        ];
        let texts = [
            format!("{c2}*1"),
            format!("{c1}*J"),
            format!("3*J_(-1)J + {cd}*DJ + {cl}*L"),
        ];
        let (gp, gm) = (self.image(Generator::Gp), self.image(Generator::Gm));
        let (bgp, bgm) = (self.bp_generator(Generator::Gp), self.bp_generator(Generator::Gm));
        (0..3)
            .map(|i| {
                let n = 2 - i as i64;
                let got = self.alg.product(gp, n, gm);
                let bp_ok = self.bp.field_mode(&bgp, n, &bgm) == bp[i];
                LemmaLine {
                    identity: format!("G+_({n}) G-"),
                    expected: format!("{} = {}", texts[i], self.show(&ff[i])),
                    computed: self.show(&got),
                    ok: got == ff[i] && bp_ok,
                }
            })
            .collect()
    }

    /// Every n-th product of generators computed on the free-field side and
    /// compared with the image of the product in the universal algebra.
    pub fn ope_lines(&self) -> Result<Vec<OpeLine>> {
        let mut out = Vec::new();
        let w2 = |g| crate::modes::field_weight2(g, Convention::Omega);
        for x in Generator::ALL {
            for y in Generator::ALL {
                let top = (w2(x) + w2(y)).div_euclid(2) - 1;
                for n in 0..=top {
                    let bp = self.bp.field_mode(&self.bp_generator(x), n, &self.bp_generator(y));
                    let image = self.alg.product(self.image(x), n, self.image(y));
                    let ok = image == self.push(&bp)?;
                    out.push(OpeLine {
                        product: format!("{}_({n}) {}", gen_name(x), gen_name(y)),
                        bp: bp.to_string(),
                        image: self.show(&image),
                        ok,
                    });
                }
            }
        }
        Ok(out)
    }

    /// States of the universal algebra whose images are checked: those
    /// expected to vanish, then one that must survive.
    pub fn ideal_states(&self) -> Result<Vec<(String, State<Rational>, bool)>> {
        let mut out = Vec::new();
        if self.k == rat(-5, 3) {
            let g = crate::golden::omega4();
            out.push(("Omega_4".to_string(), g.state.clone(), true));
            out.push(("Omega_4 (omega-bar form)".to_string(), crate::golden::omega4bar().state, true));
        } else {
            let bar = Module::<Rational>::vacuum(self.k.clone(), Convention::OmegaBar);
            let gp = bar.mode(Generator::Gp, -1);
            let gm = bar.mode(Generator::Gm, -2);
            out.push(("G+(-1)^2 1".to_string(), bar.normal_form(&[gp, gp]), true));
            out.push(("G-(-2)^2 1".to_string(), bar.normal_form(&[gm, gm]), true));
        }
        out.push(("J(-1) 1".to_string(), self.bp_generator(Generator::J), false));
        Ok(out)
    }

    pub fn ideal_lines(&self) -> Result<Vec<LemmaLine>> {
        let mut out = Vec::new();
        for (name, s, vanish) in self.ideal_states()? {
            let img = self.push(&s)?;
            out.push(LemmaLine {
                identity: name,
                expected: if vanish { "0".into() } else { "nonzero".into() },
                computed: if img.is_zero() { "0".into() } else { "nonzero".into() },
                ok: img.is_zero() == vanish,
            });
        }
        Ok(out)
    }

    /// Twice the coefficient of the vacuum in `L_(3) L`.
    pub fn central_charge(&self) -> Rational {
        let l = self.image(Generator::L);
        let v = self.alg.product(l, 3, l).coeff(&FFMono::one());
        v.as_rational().expect("rational central term") * int(2)
    }

    pub fn check_embedding(&self) -> Result<EmbeddingReport> {
        Ok(EmbeddingReport {
            name: self.name.to_string(),
            level: self.k.to_string(),
            central_charge: self.central_charge().to_string(),
            expected_central_charge: self.bp.alg.central_charge().to_string(),
            lemma: self.lemma_lines(),
            coefficients: self.ope_lines()?,
            ideal: self.ideal_lines()?,
        })
    }

    /// Dimension of the omega-graded piece of the universal algebra and a
    /// basis of the kernel of the map on it.
    pub fn kernel_on_weight_space(&self, weight: &Rational, charge: i64) -> Result<(usize, Vec<State<Rational>>)> {
        let basis = enumerate_basis(
            &self.k,
            BaseTag::Vacuum,
            Convention::Omega,
            Convention::Omega,
            weight,
            charge,
            crate::DEFAULT_WEIGHT_BOUND,
        )?;
        let images: Vec<FFState> = basis
            .basis
            .iter()
            .map(|m| self.push_mono(m))
            .collect();
        let rows: BTreeSet<&FFMono> = images.iter().flat_map(|s| s.terms.keys()).collect();
        let mut mat = Vec::new();
        for r in rows {
            let c: Vec<Surd3> = images.iter().map(|s| s.coeff(r)).collect();
            mat.push(c.iter().map(|v| v.a.clone()).collect());
            mat.push(c.iter().map(|v| v.b.clone()).collect());
        }
        let ker = nullspace(mat, basis.dim());
        let states = ker
            .into_iter()
            .map(|v| {
                let terms = basis.basis.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect();
                State::from_terms(Convention::Omega, BaseTag::Vacuum, terms).monic()
            })
            .collect();
        Ok((basis.dim(), states))
    }

    /// `(x, y)` with `J(0) v = x v`, `Lbar(0) v = y v` if `v` is a highest-weight
    /// vector for the omega-bar modes, else `None`.
    pub fn highest_weight(&self, v: &FFState) -> Result<Option<(Rational, Rational)>> {
        let bar = Module::<Rational>::vacuum(self.k.clone(), Convention::OmegaBar);
        let lbar = self.push(&bar.normal_form(&[Mode::bar(Generator::L, -2)]))?;
        let (j, gp, gm) = (self.image(Generator::J), self.image(Generator::Gp), self.image(Generator::Gm));
        let depth = v.terms.keys().map(|m| self.alg.mono_weight2(m)).max().unwrap_or(0) / 2 + 4;
        // field indices of the positive modes J(n), Lbar(n), G+(n) for n >= 1, and G-(n) for n >= 0
        for n in 1..=depth {
            for (f, r) in [(j, n), (&lbar, n + 1), (gp, n), (gm, n)] {
                if !self.alg.product(f, r, v).is_zero() {
                    return Ok(None);
                }
            }
        }
        let eigen = |w: FFState| -> Option<Rational> {
            let (m, c) = v.terms.iter().next()?;
            let ratio = w.coeff(m).as_rational()? / c.as_rational()?;
            (w == v.scale(&ratio)).then_some(ratio)
        };
        let x = eigen(self.alg.product(j, 0, v));
        let y = eigen(self.alg.product(&lbar, 1, v));
        Ok(x.zip(y))
    }

    pub fn clear_cache(&self) {
        self.memo.borrow_mut().clear();
        self.alg.clear_cache();
    }
}

/// One graded piece of the Weyl algebra: weight, J(0)-charge, its class
/// modulo the integers as `0, 1, -1`, and the dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sector {
    #[serde(with = "crate::arith::rational_str")]
    pub weight: Rational,
    #[serde(with = "crate::arith::rational_str")]
    pub charge: Rational,
    pub class: i64,
    pub dim: usize,
}

/// Dimensions of the Weyl algebra by weight (in half-integer steps up to
/// `max_weight`) and J(0)-charge; `a+` has charge 1/3, `a-` charge -1/3.
pub fn weyl_charge_decomposition(max_weight: u32) -> Result<Vec<Sector>> {
    if max_weight > crate::DEFAULT_WEIGHT_BOUND {
        return Err(Error::WeightBound { requested: max_weight.to_string(), bound: crate::DEFAULT_WEIGHT_BOUND });
    }
    let w = FreeFieldAlgebra::weyl();
    let mut out = Vec::new();
    for w2 in 0..=2 * max_weight as i64 {
        let mut by_charge: BTreeMap<i64, usize> = BTreeMap::new();
        for m in w.fock_basis(w2) {
            let q: i64 = m.modes().iter().map(|x| if x.gen == 0 { 1 } else { -1 }).sum();
            *by_charge.entry(q).or_default() += 1;
        }
        for (q, dim) in by_charge {
            let class = match q.rem_euclid(3) {
                2 => -1,
                r => r,
            };
            out.push(Sector { weight: rat(w2, 2), charge: rat(q, 3), class, dim });
        }
    }
    Ok(out)
}

/// Checks that `b = -D psi+`, `c = psi-` inside the Clifford algebra satisfy
/// the symplectic-fermion brackets and that `:c b: = -:b c:` is the central
/// charge -2 Virasoro vector `1/2 (:alpha alpha: + D alpha)`.
pub fn symplectic_in_clifford() -> Vec<LemmaLine> {
    let f = FreeFieldAlgebra::clifford();
    let (pp, pm) = (f.field(0), f.field(1));
    let b = f.derivative(&pp).scale(&int(-1));
    let c = pm.clone();
    let one = FFState::vacuum();
    let alpha = f.normal_product(&pp, &pm);
    let aa = f.normal_product(&alpha, &alpha);
    let omega_f = aa.scale(&rat(1, 2));
    let omega2 = aa.add(&f.derivative(&alpha)).scale(&rat(1, 2));
    let line = |identity: &str, expected: &FFState, computed: FFState| LemmaLine {
        identity: identity.to_string(),
        expected: f.display(expected),
        computed: f.display(&computed),
        ok: *expected == computed,
    };
    let zero = FFState::zero();
    let mut out = vec![
        line("b_(1) c", &one, f.product(&b, 1, &c)),
        line("c_(1) b", &one.scale(&int(-1)), f.product(&c, 1, &b)),
    ];
    for n in 0..3 {
        if n != 1 {
            out.push(line(&format!("b_({n}) c"), &zero, f.product(&b, n, &c)));
        }
        out.push(line(&format!("b_({n}) b"), &zero, f.product(&b, n, &b)));
        out.push(line(&format!("c_({n}) c"), &zero, f.product(&c, n, &c)));
    }
    out.push(line(":c b: = 1/2 (:alpha alpha: + D alpha)", &omega2, f.normal_product(&c, &b)));
    out.push(line(":b c: = -:c b:", &omega2.scale(&int(-1)), f.normal_product(&b, &c)));
    out.push(line("omega_(3) omega, c = -2", &one.scale(&int(-1)), f.product(&omega2, 3, &omega2)));
    out.push(line("omega_F(3) omega_F, c = 1", &one.scale(&rat(1, 2)), f.product(&omega_f, 3, &omega_f)));
    out.push(line("omega_(1) psi+ = 0", &zero, f.product(&omega2, 1, &pp)));
    out.push(line("omega_(1) psi- = psi-", &pm, f.product(&omega2, 1, &pm)));
    out.push(line("omega_F(1) psi+ = 1/2 psi+", &pp.scale(&rat(1, 2)), f.product(&omega_f, 1, &pp)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_reproduces_lemma_and_all_coefficients() {
        let e = Embedding::theta();
        let r = e.check_embedding().unwrap();
        for l in &r.lemma {
            assert!(l.ok, "{l:?}");
        }
        for l in &r.coefficients {
            assert!(l.ok, "{l:?}");
        }
        assert_eq!(r.central_charge, "-1");
        assert!(r.passed());
    }

    #[test]
    fn phi_reproduces_all_coefficients() {
        let e = Embedding::phi();
        let r = e.check_embedding().unwrap();
        for l in r.lemma.iter().chain(&r.ideal) {
            assert!(l.ok, "{l:?}");
        }
        for l in &r.coefficients {
            assert!(l.ok, "{l:?}");
        }
        assert_eq!(r.central_charge, "-1");
    }

    #[test]
    fn kernel_at_weight_four() {
        let e = Embedding::theta();
        let (dim, ker) = e.kernel_on_weight_space(&int(4), 0).unwrap();
        assert_eq!(dim, 13);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], crate::golden::omega4().state.monic());
    }

    #[test]
    fn highest_weights_of_generators() {
        let e = Embedding::theta();
        let (p, m) = (e.alg.field(0), e.alg.field(1));
        assert_eq!(e.highest_weight(&p).unwrap(), Some((rat(1, 3), rat(1, 3))));
        assert_eq!(e.highest_weight(&m).unwrap(), Some((rat(-1, 3), rat(2, 3))));
        assert_eq!(e.highest_weight(&FFState::vacuum()).unwrap(), Some((int(0), int(0))));
        assert_eq!(e.highest_weight(&e.alg.derivative(&p)).unwrap(), None);
    }

    #[test]
    fn charge_sectors() {
        let t = weyl_charge_decomposition(4).unwrap();
        let get = |w: Rational, q: Rational| t.iter().find(|s| s.weight == w && s.charge == q).map(|s| s.dim);
        assert_eq!(get(int(0), int(0)), Some(1));
        assert_eq!(get(int(4), int(0)), Some(12));
        assert!(weyl_charge_decomposition(9).is_err());
    }

    #[test]
    fn symplectic_fermions_inside_clifford() {
        for l in symplectic_in_clifford() {
            assert!(l.ok, "{l:?}");
        }
    }
}
