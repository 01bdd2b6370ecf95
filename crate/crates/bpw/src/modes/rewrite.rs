//! Normal ordering by rewriting whole words, as an independent reduction strategy.
//!
//! A word is reduced by two rules applied in any order: swapping an adjacent
//! out-of-order pair `u v -> v u + [u, v]`, and evaluating a non-creation mode
//! standing directly on the base vector. Modes are ordered with creation modes
//! before all others, so fully sorted words are canonical monomials.

use super::state::add_term;
use super::{Generator, Mode, Module, Monomial, State, Terms};
use crate::arith::Coeff;

impl<C: Coeff> Module<C> {
    fn rewrite_key(&self, m: Mode) -> (bool, Mode) {
        (!self.is_creation(m), m)
    }

    /// Canonical form of `word` on the base vector; `pick(n)` chooses among `n` options.
    pub fn normal_form_by_rewriting(&self, word: &[Mode], pick: &mut dyn FnMut(usize) -> usize) -> State<C> {
        let mut pending: Vec<(Vec<Mode>, C)> = vec![(word.to_vec(), C::one_c())];
        let mut out = Terms::new();
        while !pending.is_empty() {
            let (w, c) = pending.swap_remove(pick(pending.len()) % pending.len());
            if vanishes_by_grading(&w) {
                continue;
            }
            let mut redexes: Vec<Option<usize>> = (0..w.len().saturating_sub(1))
                .filter(|&i| self.rewrite_key(w[i]) > self.rewrite_key(w[i + 1]))
                .map(Some)
                .collect();
            if w.last().is_some_and(|&m| !self.is_creation(m)) {
                redexes.push(None);
            }
            if redexes.is_empty() {
                add_term(&mut out, Monomial::from_modes(&w), c);
                continue;
            }
            match redexes[pick(redexes.len()) % redexes.len()] {
                None => {
                    let last = *w.last().unwrap();
                    let head = &w[..w.len() - 1];
                    for (m, d) in self.act_mono(last, &Monomial::one()) {
                        debug_assert!(m.is_empty());
                        pending.push((head.to_vec(), c.mul_ref(&d)));
                    }
                }
                Some(i) => {
                    let (u, v) = (w[i], w[i + 1]);
                    let head = &w[..i];
                    let tail = &w[i + 2..];
                    let join = |mid: &[Mode]| -> Vec<Mode> {
                        let mut x = head.to_vec();
                        x.extend_from_slice(mid);
                        x.extend_from_slice(tail);
                        x
                    };
                    pending.push((join(&[v, u]), c.clone()));
                    let br = self.alg.bracket(u, v);
                    if !br.scalar.is_zero_c() {
                        pending.push((join(&[]), c.scale(&br.scalar)));
                    }
                    for (m, d) in &br.linear {
                        pending.push((join(&[*m]), c.scale(d)));
                    }
                    let depth = tail.iter().map(|m| m.shift2()).sum::<i64>().div_euclid(2);
                    for (p, d) in &br.quadratic {
                        let jm = |n| self.mode(Generator::J, n);
                        let cd = c.scale(d);
                        for j in (p - depth)..=-1 {
                            pending.push((join(&[jm(j), jm(p - j)]), cd.clone()));
                        }
                        if *p <= depth {
                            for j in 0..=depth {
                                pending.push((join(&[jm(p - j), jm(j)]), cd.clone()));
                            }
                        }
                    }
                }
            }
        }
        self.state(out)
    }
}

fn vanishes_by_grading(w: &[Mode]) -> bool {
    let mut acc = 0;
    for m in w.iter().rev() {
        acc += m.shift2();
        if acc < 0 {
            return true;
        }
    }
    false
}
