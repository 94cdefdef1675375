//! Checking explicit elements of the modified algebra against computed canonical bases.

use serde::Serialize;

use super::canonical_leading_pair;
use crate::engine::Engine;
use crate::error::Result;
use crate::repmod::{MonomialLabel, Weight};
use crate::tensorspace::{Params, TensorVec};
use crate::udot::{family_element, FamilyId, FamilyParams, Mutation, UdotExpr, UdotWord};

/// Every `(s, t, a, b)` with `s + t <= window`, `a + b <= window` and `(a - s, b - t) = zeta`.
pub fn window_params(zeta: Weight, window: i64) -> Vec<Params> {
    let mut out = Vec::new();
    for s in 0..=window {
        for t in 0..=window - s {
            let (a, b) = (s + zeta.l1, t + zeta.l2);
            if a >= 0 && b >= 0 && a + b <= window {
                out.push(Params::new(s, t, a, b));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// Equal to the canonical element of this pair.
    MatchedCanonical { lowest: String, highest: String },
    /// Zero, as predicted because a label falls outside its basis set.
    MatchedZero,
    Mismatch {
        expected: Vec<(String, String, String)>,
        got: Vec<(String, String, String)>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceOutcome {
    pub params: Params,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub expr: String,
    pub admissible: bool,
    pub zeta: Weight,
    pub labels: (String, String),
    pub outcomes: Vec<SpaceOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches() == 0
    }

    pub fn mismatches(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| matches!(o.outcome, Outcome::Mismatch { .. }))
            .count()
    }

    pub fn canonical_matches(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| matches!(o.outcome, Outcome::MatchedCanonical { .. }))
            .count()
    }
}

/// Evaluate `expr` on every tensor space of the window and compare with the
/// canonical element labelled `labels` (or with zero when a label is not a basis label).
pub fn verify_expr(
    engine: &Engine,
    subject: String,
    expr: &UdotExpr,
    labels: (MonomialLabel, MonomialLabel),
    window: i64,
) -> Result<VerificationReport> {
    let zeta = expr.source().unwrap_or(Weight::ZERO);
    let mut outcomes = Vec::new();
    if !expr.is_zero() {
        for params in window_params(zeta, window) {
            let space = engine.space(params)?;
            let got = expr.evaluate(&space.ts);
            let expected = match space.ts.index_of(&labels) {
                Some(p) => space.basis.get(p).vector.clone(),
                None => TensorVec::zero(),
            };
            // Psi-fixedness is checked on its own, before comparing with the basis.
            let outcome = if got != expected || space.psi.apply(&got) != got {
                Outcome::Mismatch {
                    expected: space.ts.render(&expected),
                    got: space.ts.render(&got),
                }
            } else if got.is_zero() {
                Outcome::MatchedZero
            } else {
                Outcome::MatchedCanonical {
                    lowest: labels.0.to_string(),
                    highest: labels.1.to_string(),
                }
            };
            outcomes.push(SpaceOutcome { params, outcome });
        }
    }
    Ok(VerificationReport {
        subject,
        expr: expr.to_string(),
        admissible: true,
        zeta,
        labels: (labels.0.to_string(), labels.1.to_string()),
        outcomes,
    })
}

/// Verify one family member on the window. Inadmissible parameters give an empty report.
pub fn theorem31_verify(
    engine: &Engine,
    id: FamilyId,
    params: FamilyParams,
    window: i64,
    mutation: Option<Mutation>,
) -> Result<VerificationReport> {
    let el = family_element(id, params, mutation)?;
    let subject = format!(
        "family {id} {:?} at ({},{})",
        params.exps(),
        params.l,
        params.m
    );
    if !el.admissible {
        return Ok(VerificationReport {
            subject,
            expr: el.expr.to_string(),
            admissible: false,
            zeta: el.zeta,
            labels: (el.labels.0.to_string(), el.labels.1.to_string()),
            outcomes: vec![],
        });
    }
    verify_expr(engine, subject, &el.expr, el.labels, window)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SigmaReport {
    pub canonical: usize,
    pub zero: usize,
    pub failures: Vec<String>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every evaluation of `expr` on the window must be zero or a canonical element.
pub fn check_sigma_image(engine: &Engine, expr: &UdotExpr, window: i64) -> Result<SigmaReport> {
    let mut report = SigmaReport::default();
    let Some(zeta) = expr.source() else {
        return Ok(report);
    };
    for params in window_params(zeta, window) {
        let space = engine.space(params)?;
        let x = expr.evaluate(&space.ts);
        if x.is_zero() {
            report.zero += 1;
        } else if canonical_leading_pair(&space.psi, &x).is_some() {
            report.canonical += 1;
        } else {
            report
                .failures
                .push(format!("{expr} on {params} is not canonical"));
        }
    }
    Ok(report)
}

/// The `sigma` image of an admissible family member evaluates to canonical elements or zero.
pub fn sigma_closure_check(
    engine: &Engine,
    id: FamilyId,
    params: FamilyParams,
    window: i64,
) -> Result<SigmaReport> {
    let el = family_element(id, params, None)?;
    if !el.admissible {
        return Ok(SigmaReport::default());
    }
    check_sigma_image(engine, &el.expr.sigma(), window)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankOneClass {
    /// `e1^(a) 1_(l,m) f1^(b)` with `-l >= a + b`.
    RaiseLower,
    /// `f1^(b) 1_(l,m) e1^(a)` with `l >= a + b`.
    LowerRaise,
}

/// Single-index elements; `None` when `(l, m)` is not admissible.
pub fn rank_one_verify(
    engine: &Engine,
    class: RankOneClass,
    a: i64,
    b: i64,
    idem: Weight,
    window: i64,
) -> Result<Option<VerificationReport>> {
    use crate::repmod::Gen;
    let (word, ok) = match class {
        RankOneClass::RaiseLower => (
            UdotWord::new(vec![(Gen::E1, a)], idem, vec![(Gen::F1, b)]),
            -idem.l1 >= a + b,
        ),
        RankOneClass::LowerRaise => (
            UdotWord::new(vec![(Gen::F1, b)], idem, vec![(Gen::E1, a)]),
            idem.l1 >= a + b,
        ),
    };
    if !ok {
        return Ok(None);
    }
    let labels = (MonomialLabel::s212(0, a, 0)?, MonomialLabel::s212(0, b, 0)?);
    let subject = format!("{word}");
    verify_expr(engine, subject, &UdotExpr::word(word), labels, window).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::udot::Part;

    #[test]
    fn window_enumeration() {
        let w = window_params(Weight::new(0, 0), 2);
        assert_eq!(w.len(), 6);
        assert!(window_params(Weight::new(3, 0), 2).is_empty());
        assert_eq!(
            window_params(Weight::new(-1, 1), 2),
            vec![
                Params::new(1, 0, 0, 1),
                Params::new(1, 1, 0, 2),
                Params::new(2, 0, 1, 1)
            ]
        );
    }

    #[test]
    fn empty_words_give_the_cyclic_vector() {
        let engine = Engine::new(None);
        let id = FamilyId::new(Part::P11, 1).unwrap();
        let r = theorem31_verify(&engine, id, FamilyParams::new([0; 6], 0, 0), 3, None).unwrap();
        assert_eq!(r.outcomes.len(), 10);
        for o in &r.outcomes {
            assert_eq!((o.params.s, o.params.t), (o.params.a, o.params.b));
            assert!(matches!(o.outcome, Outcome::MatchedCanonical { .. }));
        }
    }

    #[test]
    fn family_two_minimal() {
        let engine = Engine::new(None);
        let id = FamilyId::new(Part::P11, 2).unwrap();
        // u = j = 1, k = v = 2: the conditions allow m in {-1, -2} and l <= -2.
        let p = FamilyParams::new([0, 2, 1, 1, 2, 0], -2, -1);
        let el = family_element(id, p, None).unwrap();
        assert!(el.admissible);
        assert_eq!(el.expr.len(), 2);
        let r = theorem31_verify(&engine, id, p, 4, None).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert!(r.canonical_matches() > 0);
    }

    #[test]
    fn sigma_of_idempotent() {
        let engine = Engine::new(None);
        let e = UdotExpr::word(UdotWord::idempotent(Weight::new(1, -1)));
        let r = check_sigma_image(&engine, &e.sigma(), 3).unwrap();
        assert!(r.passed());
        assert!(r.canonical > 0);
    }

    #[test]
    fn rank_one_classes() {
        let engine = Engine::new(None);
        let r = rank_one_verify(
            &engine,
            RankOneClass::RaiseLower,
            1,
            1,
            Weight::new(-2, 0),
            3,
        )
        .unwrap()
        .unwrap();
        assert!(r.passed() && r.canonical_matches() > 0, "{r:#?}");
        let r = rank_one_verify(
            &engine,
            RankOneClass::LowerRaise,
            1,
            1,
            Weight::new(2, 0),
            3,
        )
        .unwrap()
        .unwrap();
        assert!(r.passed() && r.canonical_matches() > 0, "{r:#?}");
        assert!(rank_one_verify(
            &engine,
            RankOneClass::LowerRaise,
            1,
            1,
            Weight::new(1, 0),
            3
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn family_one_small() {
        let engine = Engine::new(None);
        let id = FamilyId::new(Part::P11, 1).unwrap();
        let r = theorem31_verify(
            &engine,
            id,
            FamilyParams::new([0, 1, 0, 0, 1, 0], -2, 0),
            3,
            None,
        )
        .unwrap();
        assert!(r.admissible);
        assert!(r.passed(), "{r:#?}");
        assert!(r.canonical_matches() > 0);
    }
}
