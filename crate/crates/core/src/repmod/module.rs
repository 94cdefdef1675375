//! Simple modules realized inside tensor powers of fundamental modules, with
//! exact structure matrices in the canonical monomial basis.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::ambient::{Ambient, AmbientVec};
use super::{enumerate_b, Gen, MonomialLabel, Weight};
use crate::error::{Error, Result};
use crate::exactalg::{solve_exact_multi, ExactMatrix, LaurentPoly, RatFunc};
use crate::qcomb::{qfact, qint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Extremal {
    Highest,
    Lowest,
}

/// A sparse square matrix stored by columns: column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMatrix {
    cols: Vec<Vec<(usize, LaurentPoly)>>,
}

impl GenMatrix {
    pub fn identity(dim: usize) -> Self {
        GenMatrix {
            cols: (0..dim).map(|j| vec![(j, LaurentPoly::one())]).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        GenMatrix {
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, LaurentPoly)] {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn entry(&self, i: usize, j: usize) -> LaurentPoly {
        self.cols[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    fn apply_sparse(&self, x: &[(usize, LaurentPoly)]) -> Vec<(usize, LaurentPoly)> {
        let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (j, c) in x {
            for (i, a) in &self.cols[*j] {
                *acc.entry(*i).or_default() += &(a * c);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn apply(&self, x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let sparse: Vec<(usize, LaurentPoly)> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let mut out = vec![LaurentPoly::zero(); self.dim()];
        for (i, c) in self.apply_sparse(&sparse) {
            out[i] = c;
        }
        out
    }

    /// `self * other`
    pub fn compose(&self, other: &GenMatrix) -> GenMatrix {
        GenMatrix {
            cols: other.cols.iter().map(|c| self.apply_sparse(c)).collect(),
        }
    }

    pub fn add(&self, other: &GenMatrix) -> GenMatrix {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GenMatrix) -> GenMatrix {
        self.combine(other, |a, b| a - b)
    }

    fn combine(
        &self,
        other: &GenMatrix,
        op: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly,
    ) -> GenMatrix {
        let zero = LaurentPoly::zero();
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let rows: BTreeSet<usize> = a.iter().chain(b).map(|(i, _)| *i).collect();
                let get = |v: &[(usize, LaurentPoly)], i| {
                    v.iter()
                        .find(|(r, _)| *r == i)
                        .map_or(&zero, |(_, c)| c)
                        .clone()
                };
                rows.into_iter()
                    .map(|i| (i, op(&get(a, i), &get(b, i))))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        GenMatrix { cols }
    }

    pub fn scale_rows(&self, f: impl Fn(usize) -> LaurentPoly) -> GenMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(i, a)| (*i, a * &f(*i)))
                    .filter(|(_, a)| !a.is_zero())
                    .collect()
            })
            .collect();
        GenMatrix { cols }
    }

    fn div_exact(&self, d: &LaurentPoly) -> Result<GenMatrix> {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(i, a)| Ok((*i, a.exact_div(d)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GenMatrix { cols })
    }
}

fn gen_slot(g: Gen) -> usize {
    match g {
        Gen::E1 => 0,
        Gen::E2 => 1,
        Gen::F1 => 2,
        Gen::F2 => 3,
    }
}

/// `V(a w1 + b w2)` (highest) or `V(-s w1 - t w2)` (lowest) with basis
/// `b^- eta` resp. `b^+ xi` for `b` running over the canonical labels.
#[derive(Clone, Debug)]
pub struct ModuleRealization {
    pub kind: Extremal,
    /// `(a, b)` for a highest-weight module, `(s, t)` for a lowest-weight module.
    pub params: (i64, i64),
    pub basis: Vec<MonomialLabel>,
    pub weights: Vec<Weight>,
    gens: [GenMatrix; 4],
    /// `divided[g][n - 1]` is `g^(n)`; powers past the end vanish.
    divided: [Vec<GenMatrix>; 4],
    index: HashMap<MonomialLabel, usize>,
    by_weight: BTreeMap<Weight, Vec<usize>>,
}

impl ModuleRealization {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Weight of the cyclic (highest or lowest) vector, which is basis vector 0.
    pub fn extremal_weight(&self) -> Weight {
        self.weights[0]
    }

    pub fn label_index(&self, label: &MonomialLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn weight_space(&self, w: Weight) -> &[usize] {
        self.by_weight.get(&w).map_or(&[], Vec::as_slice)
    }

    pub fn weight_spaces(&self) -> impl Iterator<Item = (&Weight, &Vec<usize>)> {
        self.by_weight.iter()
    }

    pub fn gen_matrix(&self, g: Gen) -> &GenMatrix {
        &self.gens[gen_slot(g)]
    }

    /// `g^(n)` as a matrix, or `None` when it acts by zero.
    pub fn divided_matrix(&self, g: Gen, n: i64) -> Option<&GenMatrix> {
        assert!(n >= 1);
        self.divided[gen_slot(g)].get(n as usize - 1)
    }

    /// `g^(n)` as a matrix for any `n >= 0`.
    pub fn divided_power(&self, g: Gen, n: i64) -> GenMatrix {
        if n == 0 {
            return GenMatrix::identity(self.dim());
        }
        self.divided_matrix(g, n)
            .cloned()
            .unwrap_or_else(|| GenMatrix::zero(self.dim()))
    }

    pub fn max_divided(&self, g: Gen) -> i64 {
        self.divided[gen_slot(g)].len() as i64
    }

    /// `g^(n)` applied to basis vector `j`.
    pub fn act_basis(&self, g: Gen, n: i64, j: usize) -> Vec<(usize, LaurentPoly)> {
        if n == 0 {
            return vec![(j, LaurentPoly::one())];
        }
        self.divided_matrix(g, n)
            .map_or_else(Vec::new, |m| m.column(j).to_vec())
    }

    /// `g^n` applied to `x`, then divided coordinatewise by `[n]!`.
    pub fn act_divided(&self, g: Gen, n: i64, x: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        assert!(n >= 0);
        let m = self.gen_matrix(g);
        let mut y = x.to_vec();
        for _ in 0..n {
            y = m.apply(&y);
        }
        let d = qfact(n);
        y.iter().map(|c| c.exact_div(&d)).collect()
    }

    /// Apply a word written left to right; the rightmost factor acts first.
    pub fn apply_word(&self, word: &[(Gen, i64)], x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        word.iter().rev().fold(x.to_vec(), |y, &(g, n)| {
            if n == 0 {
                y
            } else {
                self.divided_matrix(g, n)
                    .map_or_else(|| vec![LaurentPoly::zero(); self.dim()], |m| m.apply(&y))
            }
        })
    }

    pub fn unit_vector(&self, j: usize) -> Vec<LaurentPoly> {
        let mut v = vec![LaurentPoly::zero(); self.dim()];
        v[j] = LaurentPoly::one();
        v
    }
}

pub fn build_highest_module(a: i64, b: i64) -> Result<ModuleRealization> {
    realize(Extremal::Highest, a, b)
}

pub fn build_lowest_module(s: i64, t: i64) -> Result<ModuleRealization> {
    realize(Extremal::Lowest, s, t)
}

fn realize(kind: Extremal, p: i64, q: i64) -> Result<ModuleRealization> {
    if p < 0 || q < 0 {
        return Err(Error::Domain(format!(
            "module parameters ({p},{q}) must be nonnegative"
        )));
    }
    let lambda = Weight::new(p, q);
    let basis = enumerate_b(lambda)?;
    let (amb, start, raising) = match kind {
        Extremal::Highest => {
            let amb = Ambient::new(p as usize, q as usize);
            let top = amb.top();
            (amb, top, false)
        }
        Extremal::Lowest => {
            let amb = Ambient::new(q as usize, p as usize);
            let bottom = amb.bottom();
            (amb, bottom, true)
        }
    };
    let vectors: Vec<AmbientVec> = basis
        .iter()
        .map(|l| amb.apply_word(&l.word(raising), &start))
        .collect();

    let mut weights = Vec::with_capacity(basis.len());
    for (label, vec) in basis.iter().zip(&vectors) {
        let (n1, n2) = label.nu();
        let expected = match kind {
            Extremal::Highest => lambda.add_root(1, -n1).add_root(2, -n2),
            Extremal::Lowest => (-lambda).add_root(1, n1).add_root(2, n2),
        };
        let Some(key) = vec.keys().next() else {
            return Err(Error::Realization(format!("basis vector {label} vanishes")));
        };
        if vec.keys().any(|k| amb.weight(k) != expected) {
            return Err(Error::Realization(format!(
                "basis vector {label} is not of weight {expected}"
            )));
        }
        debug_assert_eq!(amb.weight(key), expected);
        weights.push(expected);
    }
    let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (j, w) in weights.iter().enumerate() {
        by_weight.entry(*w).or_default().push(j);
    }

    // Images of every basis vector under each generator, grouped by target weight space.
    let mut pending: BTreeMap<Weight, Vec<(usize, usize, AmbientVec)>> = BTreeMap::new();
    for g in Gen::ALL {
        for (j, v) in vectors.iter().enumerate() {
            let img = amb.apply(g, v);
            if !img.is_empty() {
                pending
                    .entry(weights[j].after(g, 1))
                    .or_default()
                    .push((gen_slot(g), j, img));
            }
        }
    }

    let dim = basis.len();
    let mut cols: [Vec<Vec<(usize, LaurentPoly)>>; 4] =
        std::array::from_fn(|_| vec![Vec::new(); dim]);
    for (w, jobs) in pending {
        let Some(space) = by_weight.get(&w) else {
            return Err(Error::Realization(format!(
                "image lands in weight {w}, outside the module"
            )));
        };
        let mut keys: BTreeSet<&Vec<u8>> = BTreeSet::new();
        for &j in space {
            keys.extend(vectors[j].keys());
        }
        for (_, _, img) in &jobs {
            keys.extend(img.keys());
        }
        let keys: Vec<&Vec<u8>> = keys.into_iter().collect();
        let column = |v: &AmbientVec| -> Vec<RatFunc> {
            keys.iter()
                .map(|k| {
                    v.get(*k)
                        .cloned()
                        .map(RatFunc::from)
                        .unwrap_or_else(RatFunc::zero)
                })
                .collect()
        };
        let basis_cols: Vec<Vec<RatFunc>> = space.iter().map(|&j| column(&vectors[j])).collect();
        let rhs_cols: Vec<Vec<RatFunc>> = jobs.iter().map(|(_, _, img)| column(img)).collect();
        let a = ExactMatrix::from_rows(
            (0..keys.len())
                .map(|r| basis_cols.iter().map(|c| c[r].clone()).collect())
                .collect(),
        );
        let b = ExactMatrix::from_rows(
            (0..keys.len())
                .map(|r| rhs_cols.iter().map(|c| c[r].clone()).collect())
                .collect(),
        );
        let (x, rank) = solve_exact_multi(&a, &b).map_err(|e| match e {
            Error::Inconsistent { .. } => {
                Error::Realization(format!("generator image leaves the span at weight {w}"))
            }
            other => other,
        })?;
        if rank != space.len() {
            return Err(Error::Realization(format!(
                "basis vectors of weight {w} are dependent"
            )));
        }
        for (k, (slot, j, _)) in jobs.iter().enumerate() {
            for (r, &i) in space.iter().enumerate() {
                let c = x.get(r, k);
                if c.is_zero() {
                    continue;
                }
                let Some(c) = c.to_laurent() else {
                    return Err(Error::Realization(format!(
                        "non-integral structure constant {c} at weight {w}"
                    )));
                };
                cols[*slot][*j].push((i, c));
            }
        }
    }
    for slot in cols.iter_mut() {
        for c in slot.iter_mut() {
            c.sort_by_key(|(i, _)| *i);
        }
    }
    let gens = cols.map(|cols| GenMatrix { cols });
    let divided = std::array::from_fn(|s| {
        let mut powers: Vec<GenMatrix> = Vec::new();
        let m = &gens[s];
        let mut cur = m.clone();
        let mut n = 1;
        while !cur.is_zero() {
            powers.push(cur.clone());
            n += 1;
            cur = cur
                .compose(m)
                .div_exact(&qint(n))
                .expect("divided powers act integrally");
        }
        powers
    });
    let index = basis.iter().enumerate().map(|(j, l)| (*l, j)).collect();
    Ok(ModuleRealization {
        kind,
        params: (p, q),
        basis,
        weights,
        gens,
        divided,
        index,
        by_weight,
    })
}

struct Matrix<'a>(&'a GenMatrix);

impl Serialize for Matrix<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<(usize, usize, &LaurentPoly)> = self
            .0
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, a)| (i.to_owned(), j, a)))
            .collect();
        entries.serialize(s)
    }
}

struct Gens<'a>(&'a ModuleRealization);

impl Serialize for Gens<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(4))?;
        for g in Gen::ALL {
            map.serialize_entry(g.name(), &Matrix(self.0.gen_matrix(g)))?;
        }
        map.end()
    }
}

/// JSON form: generator matrices are lists of nonzero `[row, col, poly]` entries.
impl Serialize for ModuleRealization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ModuleRealization", 6)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("dimension", &self.dim())?;
        st.serialize_field(
            "basis",
            &self
                .basis
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
        )?;
        st.serialize_field("weights", &self.weights)?;
        st.serialize_field("matrices", &Gens(self))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_module() {
        let m = build_highest_module(0, 0).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(Gen::ALL.iter().all(|&g| m.gen_matrix(g).is_zero()));
    }

    #[test]
    fn first_fundamental() {
        let m = build_highest_module(1, 0).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(
            m.weights,
            vec![Weight::new(1, 0), Weight::new(-1, 1), Weight::new(0, -1)]
        );
        let eta = m.unit_vector(0);
        assert!(m
            .gen_matrix(Gen::F1)
            .apply(&eta)
            .iter()
            .any(|c| !c.is_zero()));
        assert!(m
            .gen_matrix(Gen::F2)
            .apply(&eta)
            .iter()
            .all(LaurentPoly::is_zero));
    }

    #[test]
    fn lowest_fundamental() {
        let m = build_lowest_module(1, 0).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(m.extremal_weight(), Weight::new(-1, 0));
        let xi = m.unit_vector(0);
        assert!(m
            .gen_matrix(Gen::E1)
            .apply(&xi)
            .iter()
            .any(|c| !c.is_zero()));
        assert!(m
            .gen_matrix(Gen::E2)
            .apply(&xi)
            .iter()
            .all(LaurentPoly::is_zero));
        assert!(m
            .gen_matrix(Gen::F1)
            .apply(&xi)
            .iter()
            .all(LaurentPoly::is_zero));
        assert_eq!(build_lowest_module(2, 1).unwrap().dim(), 15);
    }

    #[test]
    fn divided_square_joins_string_ends() {
        // In V(2 w1) the e1-string through the lowest weight of the 1-string has length 2.
        let m = build_highest_module(2, 0).unwrap();
        let bottom = m
            .label_index(&MonomialLabel::s212(0, 2, 0).unwrap())
            .unwrap();
        let y = m.act_divided(Gen::E1, 2, &m.unit_vector(bottom)).unwrap();
        assert_eq!(y, m.unit_vector(0));
        let eta = m.unit_vector(0);
        let b = build_highest_module(1, 2).unwrap();
        assert!(b
            .act_divided(Gen::F2, 3, &b.unit_vector(0))
            .unwrap()
            .iter()
            .all(LaurentPoly::is_zero));
        assert!(m.act_divided(Gen::F1, 0, &eta).unwrap() == eta);
    }
}
