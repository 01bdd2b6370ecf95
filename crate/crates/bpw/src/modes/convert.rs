use super::state::add_scaled;
use super::{convert_mode, Base, Convention, Mode, Module, State, Terms};
use crate::arith::{rat, Coeff, Rational};

impl<C: Coeff> Module<C> {
    /// The same module presented in the other convention.
    ///
    /// A highest-weight vector with `(J(0), L(0)) = (x, y)` has
    /// `(J_0, L_0) = (x, y + x/2)`.
    pub fn partner(&self) -> Module<C> {
        let conv = self.conv().other();
        let base = match &self.base {
            Base::Vacuum => Base::Vacuum,
            Base::HighestWeight { x, y } => {
                let half = match conv {
                    Convention::Omega => rat(1, 2),
                    Convention::OmegaBar => rat(-1, 2),
                };
                let mut y2 = y.clone();
                y2.add_assign_ref(&x.scale(&half));
                Base::HighestWeight { x: x.clone(), y: y2 }
            }
        };
        Module::new(self.alg.k.clone(), conv, base)
    }

    /// Re-expresses `s` (written in either convention over this base) in this
    /// module's canonical basis by substituting modes and normal ordering.
    pub fn convert_from(&self, s: &State<C>) -> State<C> {
        assert_eq!(s.base, self.tag());
        if s.conv == self.conv() {
            return s.clone();
        }
        let mut out = Terms::new();
        for (m, c) in &s.terms {
            let mut words: Vec<(Vec<Mode>, Rational)> = vec![(Vec::new(), Rational::from_integer(1.into()))];
            for &x in m.modes() {
                let opts = convert_mode(x, self.conv());
                let mut next = Vec::with_capacity(words.len() * opts.len());
                for (w, wc) in &words {
                    for (y, yc) in &opts {
                        let mut w2 = w.clone();
                        w2.push(*y);
                        next.push((w2, wc * yc));
                    }
                }
                words = next;
            }
            for (w, wc) in words {
                let nf = self.normal_form(&w);
                add_scaled(&mut out, &nf.terms, &c.scale(&wc));
            }
        }
        self.state(out)
    }
}

/// Converts a vacuum state between conventions at level `k`.
pub fn convert_convention(s: &State<Rational>, k: &Rational, target: Convention) -> State<Rational> {
    if s.conv == target {
        return s.clone();
    }
    Module::<Rational>::vacuum(k.clone(), target).convert_from(s)
}
