//! The explicit families of canonical elements `E 1_(l,m) F` (and their images
//! under `sigma` and the index swap), with their admissibility conditions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{UdotExpr, UdotWord};
use crate::error::{Error, Result};
use crate::exactalg::LaurentPoly;
use crate::qcomb::qbinom;
use crate::repmod::{Gen, MonomialLabel, Weight};

/// Which of the four related lists a family belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Part {
    /// `e`-word, idempotent, `f`-word.
    P11,
    /// `f`-word, idempotent, `e`-word: the `sigma` images of `P11`.
    P12,
    /// Index swap of `P11`.
    Mirror11,
    /// Index swap of `P12`.
    Mirror12,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilyId {
    pub part: Part,
    pub index: u8,
}

impl FamilyId {
    pub fn new(part: Part, index: u8) -> Result<Self> {
        if !(1..=13).contains(&index) {
            return Err(Error::Domain(format!(
                "family index {index} outside 1..=13"
            )));
        }
        Ok(FamilyId { part, index })
    }

    pub fn all() -> Vec<FamilyId> {
        [Part::P11, Part::P12, Part::Mirror11, Part::Mirror12]
            .into_iter()
            .flat_map(|part| (1..=13).map(move |index| FamilyId { part, index }))
            .collect()
    }

    /// Number of `q`-binomial factors in the coefficient of each summand.
    pub fn binomial_count(&self) -> usize {
        match self.index {
            1 | 8 => 0,
            2 | 9 | 10 => 1,
            3 | 4 | 11 | 12 => 2,
            5 | 13 => 3,
            6 => 4,
            7 => 5,
            _ => unreachable!(),
        }
    }
}

/// `7`, `7'`, `m7`, `m7'`.
impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            Part::P11 => write!(f, "{}", self.index),
            Part::P12 => write!(f, "{}'", self.index),
            Part::Mirror11 => write!(f, "m{}", self.index),
            Part::Mirror12 => write!(f, "m{}'", self.index),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mirror, rest) = match s.strip_prefix('m') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (primed, digits) = match rest.strip_suffix('\'') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let index = digits
            .parse::<u8>()
            .map_err(|_| Error::Parse(format!("bad family `{s}`")))?;
        let part = match (mirror, primed) {
            (false, false) => Part::P11,
            (false, true) => Part::P12,
            (true, false) => Part::Mirror11,
            (true, true) => Part::Mirror12,
        };
        FamilyId::new(part, index)
    }
}

/// `E = e2^(h) e1^(k) e2^(j)`, idempotent `(l, m)`, `F = f2^(u) f1^(v) f2^(w)`
/// (or `f1 f2 f1` for families 8-13); the roles are permuted in the other parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyParams {
    pub h: i64,
    pub k: i64,
    pub j: i64,
    pub l: i64,
    pub m: i64,
    pub u: i64,
    pub v: i64,
    pub w: i64,
}

impl FamilyParams {
    pub fn new(exps: [i64; 6], l: i64, m: i64) -> Self {
        let [h, k, j, u, v, w] = exps;
        FamilyParams {
            h,
            k,
            j,
            l,
            m,
            u,
            v,
            w,
        }
    }

    pub fn exps(&self) -> [i64; 6] {
        [self.h, self.k, self.j, self.u, self.v, self.w]
    }

    fn check(&self) -> Result<()> {
        if self.exps().iter().any(|&x| x < 0)
            || self.k < self.h + self.j
            || self.v < self.u + self.w
        {
            return Err(Error::Domain(format!(
                "exponents {:?} need k >= h + j and v >= u + w",
                self.exps()
            )));
        }
        Ok(())
    }

    /// The parameters whose `sigma` image is the primed family with these parameters.
    fn sigma_preimage(&self) -> Self {
        FamilyParams {
            h: self.j,
            k: self.k,
            j: self.h,
            l: -self.l,
            m: -self.m,
            u: self.w,
            v: self.v,
            w: self.u,
        }
    }

    fn swap_lm(&self) -> Self {
        FamilyParams {
            l: self.m,
            m: self.l,
            ..*self
        }
    }
}

/// Corrupt one `q`-binomial factor by raising its top argument by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub slot: usize,
}

#[derive(Clone, Debug)]
pub struct FamilyElement {
    pub id: FamilyId,
    pub params: FamilyParams,
    pub expr: UdotExpr,
    pub admissible: bool,
    /// The predicted label pair `(lowest factor, highest factor)`.
    pub labels: (MonomialLabel, MonomialLabel),
    /// Weight of `xi (x) eta` on which the element acts nontrivially.
    pub zeta: Weight,
}

pub fn family_element(
    id: FamilyId,
    params: FamilyParams,
    mutation: Option<Mutation>,
) -> Result<FamilyElement> {
    params.check()?;
    if let Some(mu) = mutation {
        if mu.slot >= id.binomial_count() {
            return Err(Error::Domain(format!(
                "family {id} has no binomial slot {}",
                mu.slot
            )));
        }
    }
    let (expr, admissible) = match id.part {
        Part::P11 => p11(id.index, &params, mutation),
        Part::P12 => {
            let (e, ok) = p11(id.index, &params.sigma_preimage(), mutation);
            (e.sigma(), ok)
        }
        Part::Mirror11 => {
            let (e, ok) = p11(id.index, &params.swap_lm(), mutation);
            (e.index_swap(), ok)
        }
        Part::Mirror12 => {
            let (e, ok) = p11(id.index, &params.swap_lm().sigma_preimage(), mutation);
            (e.sigma().index_swap(), ok)
        }
    };
    let labels = written_labels(id, &params);
    let zeta = expr
        .source()
        .ok_or_else(|| Error::Domain(format!("family {id}: summands have different weights")))?;
    Ok(FamilyElement {
        id,
        params,
        expr,
        admissible,
        labels,
        zeta,
    })
}

fn written_labels(id: FamilyId, p: &FamilyParams) -> (MonomialLabel, MonomialLabel) {
    let e = MonomialLabel::s212(p.h, p.k, p.j).expect("checked");
    let f = if id.index <= 7 {
        MonomialLabel::s212(p.u, p.v, p.w)
    } else {
        MonomialLabel::s121(p.u, p.v, p.w)
    }
    .expect("checked");
    match id.part {
        Part::P11 | Part::P12 => (e, f),
        Part::Mirror11 | Part::Mirror12 => (e.swap_index(), f.swap_index()),
    }
}

/// The primed families 1', 2' and 8' written out directly rather than through `sigma`.
pub fn transcribed_primed(index: u8, p: &FamilyParams) -> Result<(UdotExpr, bool)> {
    p.check()?;
    let FamilyParams {
        h,
        k,
        j,
        l,
        m,
        u,
        v,
        w,
    } = *p;
    let e = [(Gen::E2, h), (Gen::E1, k), (Gen::E2, j)];
    let mut out = UdotExpr::zero();
    let ok = match index {
        1 => {
            out.add_term(
                &LaurentPoly::one(),
                UdotWord::new(
                    vec![(Gen::F2, u), (Gen::F1, v), (Gen::F2, w)],
                    Weight::new(l, m),
                    e.to_vec(),
                ),
            );
            -l <= w - v + h - k && -m <= -w - h
        }
        2 => {
            for q in 0..=h.min(w) {
                let c = &LaurentPoly::constant(sign(q)) * &qbinom(w - m + h + q - 1, q);
                let word = UdotWord::new(
                    vec![(Gen::F2, u), (Gen::F1, v), (Gen::F2, w - q)],
                    Weight::new(l + q, m - 2 * q),
                    vec![(Gen::E2, h - q), (Gen::E1, k), (Gen::E2, j)],
                );
                out.add_term(&c, word);
            }
            -l <= w - v + h - k
                && -w - h <= -m
                && -m <= -w - h + v - u - w
                && -m <= -w - h + (k - j - h)
        }
        8 => {
            out.add_term(
                &LaurentPoly::one(),
                UdotWord::new(
                    vec![(Gen::F1, u), (Gen::F2, v), (Gen::F1, w)],
                    Weight::new(l, m),
                    e.to_vec(),
                ),
            );
            -l <= h - k - w && -m <= w - v - h
        }
        _ => {
            return Err(Error::Domain(format!(
                "no direct transcription of family {index}'"
            )))
        }
    };
    Ok((out, ok))
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Accumulates summands `(-1)^s prod [top, bottom] E 1 F`, applying an optional mutation.
struct Builder {
    out: UdotExpr,
    mutation: Option<Mutation>,
    f121: bool,
}

impl Builder {
    fn add(&mut self, s: i64, binoms: &[(i64, i64)], e: [i64; 3], idem: (i64, i64), f: [i64; 3]) {
        let mut c = LaurentPoly::constant(sign(s));
        for (slot, &(top, bottom)) in binoms.iter().enumerate() {
            let top = if self.mutation.is_some_and(|mu| mu.slot == slot) {
                top + 1
            } else {
                top
            };
            c = &c * &qbinom(top, bottom);
            if c.is_zero() {
                return;
            }
        }
        let (f_out, f_mid) = if self.f121 {
            (Gen::F1, Gen::F2)
        } else {
            (Gen::F2, Gen::F1)
        };
        let word = UdotWord::new(
            vec![(Gen::E2, e[0]), (Gen::E1, e[1]), (Gen::E2, e[2])],
            Weight::new(idem.0, idem.1),
            vec![(f_out, f[0]), (f_mid, f[1]), (f_out, f[2])],
        );
        self.out.add_term(&c, word);
    }
}

/// Family `index` of the first list: the sum and whether `(l, m)` is admissible.
fn p11(index: u8, p: &FamilyParams, mutation: Option<Mutation>) -> (UdotExpr, bool) {
    let FamilyParams {
        h,
        k,
        j,
        l,
        m,
        u,
        v,
        w,
    } = *p;
    let a = j + h - k;
    let bv = u + w - v;
    let mut b = Builder {
        out: UdotExpr::zero(),
        mutation,
        f121: index >= 8,
    };
    let ok = match index {
        1 => {
            b.add(0, &[], [h, k, j], (l, m), [u, v, w]);
            -l >= v + k - j - u && -m >= u + j
        }
        2 => {
            for p in 0..=j.min(u) {
                b.add(
                    p,
                    &[(m + u + j + p - 1, p)],
                    [h, k, j - p],
                    (l - p, m + 2 * p),
                    [u - p, v, w],
                );
            }
            -l >= v - u + k - j && u + j + bv <= -m && -m <= u + j && -m >= u + j + a
        }
        3 => {
            for p in 0..=j {
                for q in 0..=h.min(u - p) {
                    b.add(
                        p + q,
                        &[(m + u + j + q + p - 1, p), (m + u + j + a + q - 1, q)],
                        [h - q, k, j - p],
                        (l - p - q, m + 2 * p + 2 * q),
                        [u - p - q, v, w],
                    );
                }
            }
            -l >= v - u + k - j && -m >= u + j + bv && -m <= u + j + a
        }
        4 => {
            for p in 0..=u.min(j) {
                for q in 0..=w.min(j - p) {
                    b.add(
                        p + q,
                        &[(u + j + m + q + p - 1, p), (u + j + m + bv + q - 1, q)],
                        [h, k, j - p - q],
                        (l - p - q, m + 2 * p + 2 * q),
                        [u - p, v, w - q],
                    );
                }
            }
            -l >= v - u + k - j && -m <= u + j + bv && -m >= u + j + a
        }
        5 => {
            for p in 0..=j.min(u) {
                for q in 0..=w.min(j - p) {
                    for r in 0..=h.min(u - p) {
                        b.add(
                            p + q + r,
                            &[
                                (u + j + m + r + q + p - 1, p),
                                (u + j + m + bv + q - 1, q),
                                (m + u + j + a + r - 1, r),
                            ],
                            [h - r, k, j - p - q],
                            (l - p - q - r, m + 2 * (p + q + r)),
                            [u - p - r, v, w - q],
                        );
                    }
                }
            }
            -l >= v - u + k - j && -m <= u + j + bv && u + j + a + bv <= -m && -m <= u + j + a
        }
        6 => {
            for p in 0..=j.min(u) {
                for q in 0..=w.min(j - p) {
                    for r in 0..=h.min(u - p) {
                        for i in 0..=(h - r).min(w - q) {
                            b.add(
                                p + q + r + i,
                                &[
                                    (u + j + m + r + 2 * i + q + p - 1, p),
                                    (u + j + m + bv + i + q - 1, q),
                                    (m + u + j + a + i + r - 1, r),
                                    (m + u + j + a + bv + i - 1, i),
                                ],
                                [h - r - i, k, j - p - q],
                                (l - p - q - r - i, m + 2 * (p + q + r + i)),
                                [u - p - r, v, w - q - i],
                            );
                        }
                    }
                }
            }
            -m <= u + j + a + bv && -l - m >= j + h + u + w
        }
        7 => {
            for z in 0..=k.min(v).min(h).min(w) {
                for p in 0..=j.min(u) {
                    for q in 0..=(w - z).min(j - p) {
                        for r in 0..=(h - z).min(u - p) {
                            for i in 0..=(h - r - z).min(w - q - z) {
                                b.add(
                                    p + q + r + i + z,
                                    &[
                                        (u + j + m + r + 2 * i + q + z + p - 1, p),
                                        (u + j + m + bv + z + i + q - 1, q),
                                        (m + u + j + a + z + i + r - 1, r),
                                        (m + u + j + a + bv + z + i - 1, i),
                                        (l + m + j + h + u + w + z - 1, z),
                                    ],
                                    [h - r - i - z, k - z, j - p - q],
                                    (l - p - q - r - i + z, m + 2 * (p + q + r + i) + z),
                                    [u - p - r, v - z, w - q - i - z],
                                );
                            }
                        }
                    }
                }
            }
            -l >= v - u + k - j && -l - m <= j + h + u + w
        }
        8 => {
            b.add(0, &[], [h, k, j], (l, m), [u, v, w]);
            -l >= u + k - j && -m >= j + v - u
        }
        9 => {
            for p in 0..=j.min(v) {
                b.add(
                    p,
                    &[(m + j + v - u + p - 1, p)],
                    [h, k, j - p],
                    (l - p, m + 2 * p),
                    [u, v - p, w],
                );
            }
            -l >= u + k - j && v + j - u + a <= -m && -m <= v + j - u
        }
        10 => {
            for p in 0..=k.min(u) {
                b.add(
                    p,
                    &[(l + u + k - j + p - 1, p)],
                    [h, k - p, j],
                    (l + 2 * p, m - p),
                    [u - p, v, w],
                );
            }
            u + k - j + bv <= -l && -l <= u + k - j && -m >= v + j - u
        }
        11 => {
            for p in 0..=j.min(v) {
                for q in 0..=k.min(u) {
                    b.add(
                        p + q,
                        &[(m + j + v - u + p - 1, p), (l + u + k - j + q - 1, q)],
                        [h, k - q, j - p],
                        (l - p + 2 * q, m + 2 * p - q),
                        [u - q, v - p, w],
                    );
                }
            }
            u + k - j + bv <= -l && -l <= u + k - j && v + j - u + a <= -m && -m <= v + j - u
        }
        12 => {
            for p in 0..=u.min(k) {
                for q in 0..=w.min(k - p) {
                    b.add(
                        p + q,
                        &[
                            (u + l + k - j + q + p - 1, p),
                            (u + l + k - j + bv + q - 1, q),
                        ],
                        [h, k - p - q, j],
                        (l + 2 * p + 2 * q, m - p - q),
                        [u - p, v, w - q],
                    );
                }
            }
            -l - m >= u + w + k && -l <= u + k - j + bv
        }
        13 => {
            for r in 0..=j.min(v).min(w).min(k) {
                for p in 0..=u.min(k - r) {
                    for q in 0..=(w - r).min(k - p - r) {
                        b.add(
                            p + q + r,
                            &[
                                (u + l + k - j + r + q + p - 1, p),
                                (u + l + k - j + bv + r + q - 1, q),
                                (u + w + l + m + k + r - 1, r),
                            ],
                            [h, k - p - q - r, j - r],
                            (l + 2 * p + 2 * q + r, m - p - q + r),
                            [u - p, v - r, w - q - r],
                        );
                    }
                }
            }
            -l - m <= u + w + k && -m >= v - u + j
        }
        _ => unreachable!("family index checked"),
    };
    (b.out, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        let all = FamilyId::all();
        assert_eq!(all.len(), 52);
        for id in all {
            assert_eq!(id.to_string().parse::<FamilyId>().unwrap(), id);
        }
        assert!("14".parse::<FamilyId>().is_err());
        assert!("x1".parse::<FamilyId>().is_err());
    }

    #[test]
    fn every_family_has_a_common_weight() {
        for id in FamilyId::all() {
            for exps in [[1, 2, 1, 1, 2, 1], [0, 2, 1, 1, 2, 0], [1, 1, 0, 0, 1, 1]] {
                for (l, m) in [(-6, -6), (-3, 2), (0, 0), (4, -5)] {
                    let e = family_element(id, FamilyParams::new(exps, l, m), None).unwrap();
                    assert!(!e.expr.is_zero(), "{id} {exps:?} ({l},{m})");
                }
            }
        }
    }

    #[test]
    fn direct_primed_transcriptions_agree_with_sigma() {
        let mut checked = 0;
        for exps in [
            [0, 1, 0, 0, 1, 0],
            [1, 2, 1, 1, 2, 1],
            [1, 1, 0, 1, 2, 0],
            [0, 2, 2, 2, 2, 0],
        ] {
            for l in -5..=5 {
                for m in -5..=5 {
                    let p = FamilyParams::new(exps, l, m);
                    for index in [1, 2, 8] {
                        let id = FamilyId::new(Part::P12, index).unwrap();
                        let gen = family_element(id, p, None).unwrap();
                        let (direct, ok) = transcribed_primed(index, &p).unwrap();
                        assert_eq!(gen.admissible, ok, "{id} {p:?}");
                        if ok {
                            assert_eq!(gen.expr, direct, "{id} {p:?}");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn mutation_changes_some_coefficient() {
        let p = FamilyParams::new([1, 2, 1, 1, 2, 1], -6, -1);
        let id = FamilyId::new(Part::P11, 2).unwrap();
        let a = family_element(id, p, None).unwrap();
        let b = family_element(id, p, Some(Mutation { slot: 0 })).unwrap();
        assert_ne!(a.expr, b.expr);
        assert!(family_element(id, p, Some(Mutation { slot: 1 })).is_err());
    }

    #[test]
    fn documented_examples() {
        let one = FamilyId::new(Part::P11, 1).unwrap();
        let e = family_element(one, FamilyParams::new([0; 6], 0, 0), None).unwrap();
        assert!(e.admissible);
        assert_eq!(e.expr.to_string(), "1[(0,0)]");
        let e = family_element(one, FamilyParams::new([0, 1, 0, 0, 1, 0], -2, 1), None).unwrap();
        assert!(!e.admissible);
        let two = FamilyId::new(Part::P11, 2).unwrap();
        let e = family_element(two, FamilyParams::new([0, 1, 1, 1, 1, 0], -2, -1), None).unwrap();
        let terms: Vec<_> = e.expr.terms().collect();
        assert_eq!(terms.len(), 2);
        let (w, c) = terms
            .iter()
            .find(|(w, _)| w.idem == Weight::new(-3, 1))
            .unwrap();
        // -[m+2, 1] with m = -1
        assert_eq!(*c, &-&qbinom(1, 1));
        assert_eq!(w.to_string(), "e1^1 1[(-3,1)] f1^1");
        assert!(family_element(one, FamilyParams::new([0, 0, 0, -1, 0, 0], 0, 0), None).is_err());
    }

    #[test]
    fn rank_one_collapse() {
        // With only k and v nonzero, family 1 is a single word.
        let e = family_element(
            FamilyId::new(Part::P11, 1).unwrap(),
            FamilyParams::new([0, 2, 0, 0, 1, 0], -3, 0),
            None,
        )
        .unwrap();
        assert!(e.admissible);
        assert_eq!(e.expr.to_string(), "e1^2 1[(-3,0)] f1^1");
        assert_eq!(e.zeta, Weight::new(-1, -1));
    }
}
