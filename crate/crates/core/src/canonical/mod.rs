//! Canonical basis of the tensor space by triangular correction, plus
//! verification of explicit elements of the modified algebra against it.

mod verify;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::LaurentPoly;
use crate::tensorspace::{Params, PsiOperator, TensorSpace, TensorVec};

pub use verify::{
    check_sigma_image, rank_one_verify, sigma_closure_check, theorem31_verify, verify_expr,
    window_params, Outcome, RankOneClass, SigmaReport, SpaceOutcome, VerificationReport,
};

/// How to break ties between pairs of equal total degree. Any choice yields the same basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Forward,
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalElement {
    pub pair: usize,
    pub vector: TensorVec,
}

impl CanonicalElement {
    /// Coordinates other than the leading one; all lie in `v^-1 Z[v^-1]`.
    pub fn corrections(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.vector.iter().filter(move |(p, _)| *p != self.pair)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub params: Params,
    elements: BTreeMap<usize, CanonicalElement>,
}

impl CanonicalBasis {
    pub fn get(&self, p: usize) -> &CanonicalElement {
        &self.elements[&p]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CanonicalElement> {
        self.elements.values()
    }
}

/// `sum_{n > 0} a_n v^-n` for `f = sum_{n > 0} a_n (v^-n - v^n)`.
fn negative_part(f: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        f.terms()
            .filter(|(n, _)| *n < 0)
            .map(|(n, c)| (n, c.clone())),
    )
}

pub fn canonical_basis(ts: &TensorSpace, psi: &PsiOperator) -> Result<CanonicalBasis> {
    canonical_basis_ordered(ts, psi, TieBreak::Forward)
}

pub fn canonical_basis_ordered(
    ts: &TensorSpace,
    psi: &PsiOperator,
    order: TieBreak,
) -> Result<CanonicalBasis> {
    let blocks: Vec<&Vec<usize>> = ts.weight_spaces().values().collect();
    let parts = blocks
        .into_par_iter()
        .map(|pairs| correct_block(ts, psi, pairs, order))
        .collect::<Result<Vec<_>>>()?;
    let elements = parts.into_iter().flatten().map(|e| (e.pair, e)).collect();
    Ok(CanonicalBasis {
        params: ts.params,
        elements,
    })
}

fn correct_block(
    ts: &TensorSpace,
    psi: &PsiOperator,
    pairs: &[usize],
    order: TieBreak,
) -> Result<Vec<CanonicalElement>> {
    let mut sorted = pairs.to_vec();
    match order {
        TieBreak::Forward => sorted.sort_by_key(|&p| (ts.degree(p), p)),
        TieBreak::Reverse => sorted.sort_by_key(|&p| (ts.degree(p), std::cmp::Reverse(p))),
    }
    let mut done: BTreeMap<usize, TensorVec> = BTreeMap::new();
    let limit = pairs.len() * pairs.len() + 8;
    for &p in &sorted {
        let mut y = TensorVec::basis(p);
        let mut steps = 0;
        loop {
            let d = psi.apply(&y).sub(&y);
            if d.is_zero() {
                break;
            }
            steps += 1;
            if steps > limit {
                return Err(Error::NonterminatingCorrection(p));
            }
            let key = |q: &usize| match order {
                TieBreak::Forward => (ts.degree(*q), -(*q as i64)),
                TieBreak::Reverse => (ts.degree(*q), *q as i64),
            };
            let q = d.support().max_by_key(key).expect("nonzero");
            let f = d.get(q);
            if q == p || f.bar() != -&f {
                return Err(Error::Antisymmetry {
                    pair: q,
                    coefficient: f.to_string(),
                });
            }
            let Some(cq) = done.get(&q) else {
                return Err(Error::NonterminatingCorrection(p));
            };
            y.add_scaled(cq, &negative_part(&f));
        }
        done.insert(p, y);
    }
    Ok(done
        .into_iter()
        .map(|(pair, vector)| CanonicalElement { pair, vector })
        .collect())
}

/// `Psi(x) = x`, coefficient 1 at `pair`, every other coefficient in `v^-1 Z[v^-1]`.
pub fn verify_canonical(psi: &PsiOperator, x: &TensorVec, pair: usize) -> bool {
    x.get(pair).is_one()
        && x.iter().all(|(p, c)| p == pair || c.in_vinv_lattice())
        && psi.apply(x) == *x
}

/// [`verify_canonical`] plus support below the leading pair in the pair order.
pub fn check_element(ts: &TensorSpace, psi: &PsiOperator, e: &CanonicalElement) -> bool {
    verify_canonical(psi, &e.vector, e.pair) && e.vector.support().all(|q| ts.leq(q, e.pair))
}

/// If `x` is canonical, the pair it is canonical for: the unique coordinate equal to 1
/// while all others lie in `v^-1 Z[v^-1]` and `x` is `Psi`-fixed.
pub fn canonical_leading_pair(psi: &PsiOperator, x: &TensorVec) -> Option<usize> {
    let mut lead = None;
    for (p, c) in x.iter() {
        if c.in_vinv_lattice() {
            continue;
        }
        if !c.is_one() || lead.is_some() {
            return None;
        }
        lead = Some(p);
    }
    let lead = lead?;
    (psi.apply(x) == *x).then_some(lead)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorspace::build_psi;

    #[test]
    fn cyclic_vector_is_canonical() {
        let ts = TensorSpace::new(Params::new(1, 1, 1, 0)).unwrap();
        let psi = build_psi(&ts).unwrap();
        let cb = canonical_basis(&ts, &psi).unwrap();
        assert_eq!(cb.get(0).vector, TensorVec::basis(0));
        assert!(verify_canonical(&psi, &TensorVec::basis(0), 0));
        assert!(!verify_canonical(
            &psi,
            &TensorVec::basis(0).scale(&LaurentPoly::v_pow(1)),
            0
        ));
    }

    #[test]
    fn small_basis_is_canonical_and_unique() {
        let ts = TensorSpace::new(Params::new(1, 0, 1, 0)).unwrap();
        let psi = build_psi(&ts).unwrap();
        let fwd = canonical_basis(&ts, &psi).unwrap();
        let rev = canonical_basis_ordered(&ts, &psi, TieBreak::Reverse).unwrap();
        assert_eq!(fwd, rev);
        assert_eq!(fwd.len(), 9);
        for e in fwd.iter() {
            assert!(check_element(&ts, &psi, e));
            assert_eq!(canonical_leading_pair(&psi, &e.vector), Some(e.pair));
        }
        assert!(
            fwd.iter().any(|e| e.vector.len() > 1),
            "some correction expected"
        );
    }
}
