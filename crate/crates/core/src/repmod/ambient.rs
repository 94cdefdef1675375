//! Tensor powers of the two 3-dimensional fundamental modules, used as the
//! ambient space in which every simple module is cut out.

use std::collections::BTreeMap;

use super::{Gen, Weight};
use crate::exactalg::LaurentPoly;
use crate::qcomb::qfact;

/// `V(omega_1)` has basis `x1, x2 = f1 x1, x3 = f2 x2`; `V(omega_2)` is the
/// same with the indices swapped. Digits 0, 1, 2 index the basis top-down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fundamental {
    W1,
    W2,
}

impl Fundamental {
    fn first(self) -> u8 {
        match self {
            Fundamental::W1 => 1,
            Fundamental::W2 => 2,
        }
    }

    pub fn weight(self, d: u8) -> Weight {
        let w = match d {
            0 => Weight::new(1, 0),
            1 => Weight::new(-1, 1),
            2 => Weight::new(0, -1),
            _ => panic!("digit {d} out of range"),
        };
        match self {
            Fundamental::W1 => w,
            Fundamental::W2 => w.swap(),
        }
    }

    /// Image of basis digit `d` under `gen`; every nonzero coefficient is 1.
    pub fn act(self, gen: Gen, d: u8) -> Option<u8> {
        let first = gen.index() == self.first();
        match (gen.is_e(), first, d) {
            (false, true, 0) => Some(1),
            (false, false, 1) => Some(2),
            (true, true, 1) => Some(0),
            (true, false, 2) => Some(1),
            _ => None,
        }
    }
}

pub type AmbientVec = BTreeMap<Vec<u8>, LaurentPoly>;

#[derive(Clone, Debug)]
pub struct Ambient {
    factors: Vec<Fundamental>,
}

impl Ambient {
    /// `V(omega_1)^{n1} (x) V(omega_2)^{n2}`
    pub fn new(n1: usize, n2: usize) -> Self {
        let mut factors = vec![Fundamental::W1; n1];
        factors.extend(std::iter::repeat_n(Fundamental::W2, n2));
        Ambient { factors }
    }

    pub fn top(&self) -> AmbientVec {
        AmbientVec::from([(vec![0; self.factors.len()], LaurentPoly::one())])
    }

    pub fn bottom(&self) -> AmbientVec {
        AmbientVec::from([(vec![2; self.factors.len()], LaurentPoly::one())])
    }

    pub fn weight(&self, key: &[u8]) -> Weight {
        self.factors
            .iter()
            .zip(key)
            .fold(Weight::ZERO, |w, (f, &d)| w + f.weight(d))
    }

    /// One generator via the iterated coproduct `e -> e(x)1 + k(x)e`, `f -> f(x)k^-1 + 1(x)f`.
    pub fn apply(&self, gen: Gen, x: &AmbientVec) -> AmbientVec {
        let i = gen.index();
        let mut out = AmbientVec::new();
        for (key, c) in x {
            let pairings: Vec<i64> = self
                .factors
                .iter()
                .zip(key)
                .map(|(f, &d)| f.weight(d).pairing(i))
                .collect();
            let total: i64 = pairings.iter().sum();
            let mut before = 0;
            for (p, f) in self.factors.iter().enumerate() {
                if let Some(d) = f.act(gen, key[p]) {
                    let exp = if gen.is_e() {
                        before
                    } else {
                        -(total - before - pairings[p])
                    };
                    let mut k = key.clone();
                    k[p] = d;
                    let slot = out.entry(k).or_default();
                    *slot += &c.shift(exp as i32);
                }
                before += pairings[p];
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn apply_divided(&self, gen: Gen, n: i64, x: &AmbientVec) -> AmbientVec {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.apply(gen, &y);
        }
        if n > 1 {
            let d = qfact(n);
            for c in y.values_mut() {
                *c = c.exact_div(&d).expect("divided powers act integrally");
            }
        }
        y
    }

    /// Apply a word written left to right; the rightmost factor acts first.
    pub fn apply_word(&self, word: &[(Gen, i64)], x: &AmbientVec) -> AmbientVec {
        word.iter()
            .rev()
            .fold(x.clone(), |y, &(g, n)| self.apply_divided(g, n, &y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_strings() {
        let amb = Ambient::new(1, 0);
        let x2 = amb.apply(Gen::F1, &amb.top());
        assert_eq!(x2.keys().next().unwrap(), &vec![1]);
        assert!(amb.apply(Gen::F2, &amb.top()).is_empty());
        let amb2 = Ambient::new(0, 1);
        assert_eq!(amb2.weight(&[1]), Weight::new(1, -1));
        assert_eq!(
            amb2.apply(Gen::E1, &amb2.bottom()).keys().next().unwrap(),
            &vec![1]
        );
    }

    #[test]
    fn commutator_on_tensor_square() {
        // [e1, f1] acts on a weight vector of weight mu by [<alpha_1, mu>].
        let amb = Ambient::new(2, 0);
        let top = amb.top();
        let ef = amb.apply(Gen::E1, &amb.apply(Gen::F1, &top));
        let fe = amb.apply(Gen::F1, &amb.apply(Gen::E1, &top));
        assert!(fe.is_empty());
        assert_eq!(ef[&vec![0, 0]], crate::qcomb::qint(2));
    }
}
