//! The tensor product `V(-s w1 - t w2) (x) V(a w1 + b w2)`, its standard basis
//! of pairs, the coproduct action of divided powers, and the pair order.

mod psi;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::exactalg::{Int, LaurentPoly};
use crate::repmod::{
    build_highest_module, build_lowest_module, Gen, ModuleRealization, MonomialLabel, Weight,
};

pub use psi::{
    build_psi, build_psi_with_budget, PsiOperator, PsiReport, WeightBlock, CACHE_VERSION,
};

/// `(s, t, a, b)`: lowest factor `V(-s w1 - t w2)`, highest factor `V(a w1 + b w2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params {
    pub s: i64,
    pub t: i64,
    pub a: i64,
    pub b: i64,
}

impl Params {
    pub const fn new(s: i64, t: i64, a: i64, b: i64) -> Self {
        Params { s, t, a, b }
    }

    /// Weight of `xi (x) eta`.
    pub fn zeta(&self) -> Weight {
        Weight::new(self.a - self.s, self.b - self.t)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.s, self.t, self.a, self.b)
    }
}

/// A vector of the tensor space in standard coordinates; zero coordinates are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorVec {
    coords: BTreeMap<usize, LaurentPoly>,
}

impl TensorVec {
    pub fn zero() -> Self {
        TensorVec::default()
    }

    pub fn basis(p: usize) -> Self {
        TensorVec {
            coords: BTreeMap::from([(p, LaurentPoly::one())]),
        }
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (usize, LaurentPoly)>) -> Self {
        let mut x = TensorVec::zero();
        for (p, c) in coords {
            x.add_term(p, &c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, p: usize) -> LaurentPoly {
        self.coords.get(&p).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.coords.iter().map(|(p, c)| (*p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.keys().copied()
    }

    pub fn add_term(&mut self, p: usize, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.coords.entry(p).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coords.remove(&p);
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &TensorVec, c: &LaurentPoly) {
        for (p, x) in other.iter() {
            self.add_term(p, &(x * c));
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> TensorVec {
        TensorVec::from_coords(self.iter().map(|(p, x)| (p, x * c)))
    }

    pub fn sub(&self, other: &TensorVec) -> TensorVec {
        let mut y = self.clone();
        y.add_scaled(other, &LaurentPoly::constant(-1));
        y
    }

    /// Coordinatewise bar.
    pub fn bar(&self) -> TensorVec {
        TensorVec {
            coords: self.coords.iter().map(|(p, c)| (*p, c.bar())).collect(),
        }
    }
}

impl Serialize for TensorVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coords.len()))?;
        for (p, c) in &self.coords {
            seq.serialize_element(&(p, c))?;
        }
        seq.end()
    }
}

/// `(b1, b1')` with `b1` labelling the lowest factor and `b1'` the highest.
pub type Pair = (MonomialLabel, MonomialLabel);

/// `p <= q` iff `tr|p1| - tr|p1'| = tr|q1| - tr|q1'|` and either `p = q` or both
/// traces of `p` are strictly smaller than those of `q`.
pub fn pair_order_leq(p: &Pair, q: &Pair) -> bool {
    p == q || strictly_below((p.0.tr(), p.1.tr()), (q.0.tr(), q.1.tr()))
}

fn strictly_below(p: (i64, i64), q: (i64, i64)) -> bool {
    p.0 - p.1 == q.0 - q.1 && p.0 < q.0 && p.1 < q.1
}

/// The same order on trace pairs, with the reflexive clause read on traces.
pub fn trace_order_leq(p: (i64, i64), q: (i64, i64)) -> bool {
    p == q || strictly_below(p, q)
}

#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub params: Params,
    pub low: Arc<ModuleRealization>,
    pub high: Arc<ModuleRealization>,
    /// Pairs of each weight space, sorted by total degree then index.
    spaces: BTreeMap<Weight, Vec<usize>>,
}

impl TensorSpace {
    pub fn new(params: Params) -> Result<Self> {
        let low = Arc::new(build_lowest_module(params.s, params.t)?);
        let high = Arc::new(build_highest_module(params.a, params.b)?);
        Ok(Self::from_modules(params, low, high))
    }

    pub fn from_modules(
        params: Params,
        low: Arc<ModuleRealization>,
        high: Arc<ModuleRealization>,
    ) -> Self {
        assert_eq!(low.params, (params.s, params.t));
        assert_eq!(high.params, (params.a, params.b));
        let mut spaces: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        let dh = high.dim();
        for i in 0..low.dim() {
            for j in 0..dh {
                spaces
                    .entry(low.weights[i] + high.weights[j])
                    .or_default()
                    .push(i * dh + j);
            }
        }
        let mut ts = TensorSpace {
            params,
            low,
            high,
            spaces,
        };
        let mut spaces = std::mem::take(&mut ts.spaces);
        for v in spaces.values_mut() {
            v.sort_by_key(|&p| (ts.degree(p), p));
        }
        ts.spaces = spaces;
        ts
    }

    pub fn dim(&self) -> usize {
        self.low.dim() * self.high.dim()
    }

    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.high.dim(), p % self.high.dim())
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        i * self.high.dim() + j
    }

    pub fn pair(&self, p: usize) -> Pair {
        let (i, j) = self.split(p);
        (self.low.basis[i], self.high.basis[j])
    }

    pub fn index_of(&self, pair: &Pair) -> Option<usize> {
        Some(self.join(
            self.low.label_index(&pair.0)?,
            self.high.label_index(&pair.1)?,
        ))
    }

    pub fn traces(&self, p: usize) -> (i64, i64) {
        let (b1, b2) = self.pair(p);
        (b1.tr(), b2.tr())
    }

    pub fn degree(&self, p: usize) -> i64 {
        let (x, y) = self.traces(p);
        x + y
    }

    pub fn weight(&self, p: usize) -> Weight {
        let (i, j) = self.split(p);
        self.low.weights[i] + self.high.weights[j]
    }

    /// Index of `xi (x) eta`.
    pub fn cyclic(&self) -> usize {
        0
    }

    pub fn weight_spaces(&self) -> &BTreeMap<Weight, Vec<usize>> {
        &self.spaces
    }

    pub fn weight_space(&self, w: Weight) -> &[usize] {
        self.spaces.get(&w).map_or(&[], Vec::as_slice)
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        p == q || strictly_below(self.traces(p), self.traces(q))
    }

    /// `gen^(n)` acting through the coproduct.
    pub fn delta_act(&self, g: Gen, n: i64, x: &TensorVec) -> TensorVec {
        if n == 0 {
            return x.clone();
        }
        let i = g.index();
        let mut out = TensorVec::zero();
        for (p, c) in x.iter() {
            let (li, hj) = self.split(p);
            for n1 in 0..=n {
                let n2 = n - n1;
                let left = self.low.act_basis(g, n1, li);
                if left.is_empty() {
                    continue;
                }
                let right = self.high.act_basis(g, n2, hj);
                if right.is_empty() {
                    continue;
                }
                let exp = if g.is_e() {
                    n1 * n2 + n2 * self.low.weights[li].pairing(i)
                } else {
                    n1 * n2 - n1 * self.high.weights[hj].pairing(i)
                };
                let cv = c.mul_monomial(&Int::ONE, exp as i32);
                for (l2, ca) in &left {
                    let cl = &cv * ca;
                    for (h2, cb) in &right {
                        out.add_term(self.join(*l2, *h2), &(&cl * cb));
                    }
                }
            }
        }
        out
    }

    /// Apply a word written left to right; the rightmost factor acts first.
    pub fn apply_word(&self, word: &[(Gen, i64)], x: &TensorVec) -> TensorVec {
        word.iter()
            .rev()
            .fold(x.clone(), |y, &(g, n)| self.delta_act(g, n, &y))
    }

    /// `w(b1, b1') = b1^+ (b1')^- (xi (x) eta)`; equals the standard vector plus smaller pairs.
    pub fn pair_word_vector(&self, p: usize) -> TensorVec {
        let (i, j) = self.split(p);
        let start = TensorVec::basis(self.join(0, j));
        self.apply_word(&self.low.basis[i].word(true), &start)
    }

    pub fn render(&self, x: &TensorVec) -> Vec<(String, String, String)> {
        x.iter()
            .map(|(p, c)| {
                let (b1, b2) = self.pair(p);
                (b1.to_string(), b2.to_string(), c.to_string())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        let e = MonomialLabel::EMPTY;
        let t1 = MonomialLabel::s212(0, 1, 0).unwrap();
        assert!(pair_order_leq(&(e, e), &(e, e)));
        assert!(pair_order_leq(&(e, e), &(t1, t1)));
        assert!(!pair_order_leq(&(t1, t1), &(e, e)));
        assert!(!pair_order_leq(&(e, t1), &(t1, t1)));
        assert!(trace_order_leq((0, 0), (1, 1)));
        assert!(!trace_order_leq((0, 1), (1, 1)));
    }

    #[test]
    fn f_kills_the_lowest_factor() {
        let ts = TensorSpace::new(Params::new(1, 1, 1, 1)).unwrap();
        let x = ts.delta_act(Gen::F1, 1, &TensorVec::basis(0));
        let j = ts
            .high
            .label_index(&MonomialLabel::s212(0, 1, 0).unwrap())
            .unwrap();
        assert_eq!(x, TensorVec::basis(ts.join(0, j)));
    }

    #[test]
    fn dimensions_and_weights() {
        let ts = TensorSpace::new(Params::new(1, 0, 1, 1)).unwrap();
        assert_eq!(ts.dim(), 24);
        assert_eq!(ts.weight(0), ts.params.zeta());
        let total: usize = ts.weight_spaces().values().map(Vec::len).sum();
        assert_eq!(total, 24);
    }
}
