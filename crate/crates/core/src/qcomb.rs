//! Quantum integers, factorials and binomials, plus exact checkers for a few
//! q-binomial summation identities.
//!
//! Conventions: `[a] = (v^a - v^-a)/(v - v^-1)`, `[-b]! = (-1)^b [b]!`, and
//! `[a, b]` is the product formula for `b > 0`, `1` for `b = 0` and `0` for
//! every negative `b`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Int, LaurentPoly};

pub fn qint(a: i64) -> LaurentPoly {
    if a < 0 {
        return -qint(-a);
    }
    let a = a as i32;
    LaurentPoly::from_terms((0..a).map(|i| (a - 1 - 2 * i, Int::ONE)))
}

pub fn qfact(b: i64) -> LaurentPoly {
    let n = b.abs();
    let mut acc = LaurentPoly::one();
    for h in 1..=n {
        acc = &acc * &qint(h);
    }
    if b < 0 && n % 2 == 1 {
        -acc
    } else {
        acc
    }
}

fn memo() -> &'static RwLock<HashMap<(i64, i64), LaurentPoly>> {
    static MEMO: OnceLock<RwLock<HashMap<(i64, i64), LaurentPoly>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `v^n - v^-n`
fn antisym(n: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(n as i32, Int::ONE), (-n as i32, Int::from(-1i64))])
}

pub fn qbinom(a: i64, b: i64) -> LaurentPoly {
    if b < 0 {
        return LaurentPoly::zero();
    }
    if b == 0 {
        return LaurentPoly::one();
    }
    if (0..b).contains(&a) {
        return LaurentPoly::zero();
    }
    if let Some(x) = memo().read().unwrap().get(&(a, b)) {
        return x.clone();
    }
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for h in 1..=b {
        num = &num * &antisym(a - h + 1);
        den = &den * &antisym(h);
    }
    let x = num
        .exact_div(&den)
        .expect("q-binomial coefficients are integral");
    memo().write().unwrap().insert((a, b), x.clone());
    x
}

/// `[k_i; c, a]` evaluated on a vector where `k_i` acts by `v^w`.
pub fn ki_binom_at(c: i64, a: i64, w: i64) -> LaurentPoly {
    assert!(a >= 0, "ki_binom_at needs a >= 0");
    qbinom(w + c, a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

impl IdentityCheck {
    fn compare(lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        IdentityCheck {
            holds: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn term(c: i64, e: i64, parts: &[LaurentPoly]) -> LaurentPoly {
    let mut acc = LaurentPoly::monomial(Int::from(c), e as i32);
    for p in parts {
        if acc.is_zero() {
            break;
        }
        acc = &acc * p;
    }
    acc
}

fn nonneg(name: &str, x: i64) -> Result<()> {
    if x < 0 {
        return Err(Error::Domain(format!("{name} = {x} must be nonnegative")));
    }
    Ok(())
}

/// `[m+n, r] = sum_{t <= min(n, r)} v^{t(m+n) - nr} [m, r-t] [n, t]`
pub fn lemma41a_check(n: i64, r: i64, m: i64) -> Result<IdentityCheck> {
    nonneg("n", n)?;
    nonneg("r", r)?;
    let lhs = qbinom(m + n, r);
    let mut rhs = LaurentPoly::zero();
    for t in 0..=n.min(r) {
        rhs += &term(1, t * (m + n) - n * r, &[qbinom(m, r - t), qbinom(n, t)]);
    }
    Ok(IdentityCheck::compare(lhs, rhs))
}

/// `sum_{i <= d} (-1)^i [k+i-1, i][m, d-i] v^{i(m-k)} = [m-k, d] v^{-kd}` for `m >= k >= 0`.
pub fn lemma41b_check(m: i64, k: i64, delta: i64) -> Result<IdentityCheck> {
    nonneg("k", k)?;
    nonneg("delta", delta)?;
    if m < k {
        return Err(Error::Domain(format!("need m >= k, got m = {m}, k = {k}")));
    }
    let mut lhs = LaurentPoly::zero();
    for i in 0..=delta {
        lhs += &term(
            sign(i),
            i * (m - k),
            &[qbinom(k + i - 1, i), qbinom(m, delta - i)],
        );
    }
    let rhs = term(1, -k * delta, &[qbinom(m - k, delta)]);
    Ok(IdentityCheck::compare(lhs, rhs))
}

/// The three-binomial summation identity with parameters `a >= c >= 0`, `u, r >= 0`.
pub fn lemma41c_check(a: i64, c: i64, u: i64, r: i64, b: i64) -> Result<IdentityCheck> {
    nonneg("c", c)?;
    nonneg("u", u)?;
    nonneg("r", r)?;
    if a < c {
        return Err(Error::Domain(format!("need a >= c, got a = {a}, c = {c}")));
    }
    let mut lhs = LaurentPoly::zero();
    for f in 0..=u {
        lhs += &term(
            sign(f),
            f * (u + c - r),
            &[
                qbinom(a - c + f - 1, f),
                qbinom(b + r - f, r),
                qbinom(a + u, u - f),
            ],
        );
    }
    let mut rhs = LaurentPoly::zero();
    for d in 0..=u.min(r) {
        rhs += &term(
            1,
            d * b + (u - d) * (c - a - r),
            &[
                qbinom(b + r - u, r - d),
                qbinom(c + u - d, u - d),
                qbinom(a + u, d),
            ],
        );
    }
    Ok(IdentityCheck::compare(lhs, rhs))
}

/// `[a+u, u-f] = v^{-u+f}[a+u-1, u-f] + v^{a+f}[a+u-1, u-1-f]`
pub fn pascal_check(a: i64, u: i64, f: i64) -> IdentityCheck {
    let lhs = qbinom(a + u, u - f);
    let rhs = &term(1, f - u, &[qbinom(a + u - 1, u - f)])
        + &term(1, a + f, &[qbinom(a + u - 1, u - 1 - f)]);
    IdentityCheck::compare(lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quantum_integers() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(2), p("v^-1 + v"));
        assert_eq!(qint(-3), p("-v^-2 - 1 - v^2"));
        assert_eq!(qfact(0), LaurentPoly::one());
        assert_eq!(qfact(2), p("v^-1 + v"));
        assert_eq!(qfact(-2), p("v^-1 + v"));
        assert_eq!(qfact(-3), -qfact(3));
    }

    #[test]
    fn binomials() {
        assert_eq!(qbinom(7, 0), LaurentPoly::one());
        assert_eq!(qbinom(-7, 0), LaurentPoly::one());
        assert!(qbinom(1, 2).is_zero());
        assert!(qbinom(3, -1).is_zero());
        assert_eq!(qbinom(-1, 1), p("-1"));
        assert_eq!(qbinom(4, 2), p("v^-4 + v^-2 + 2 + v^2 + v^4"));
        // [a, t] = (-1)^t [-a+t-1, t]
        for a in -6..6 {
            for t in 0..5 {
                assert_eq!(
                    qbinom(a, t),
                    &LaurentPoly::constant(sign(t)) * &qbinom(-a + t - 1, t)
                );
            }
        }
    }

    #[test]
    fn ki_binom_examples() {
        assert_eq!(ki_binom_at(5, 0, -3), LaurentPoly::one());
        assert_eq!(ki_binom_at(0, 1, 2), p("v^-1 + v"));
        assert!(ki_binom_at(-1, 1, 1).is_zero());
    }

    #[test]
    fn identity_examples() {
        for m in -4..4 {
            assert!(lemma41a_check(0, 3, m).unwrap().holds);
        }
        assert!(lemma41a_check(1, 1, 0).unwrap().holds);
        assert!(lemma41a_check(3, 2, -2).unwrap().holds);
        assert!(lemma41b_check(4, 2, 0).unwrap().holds);
        assert!(lemma41b_check(3, 1, 2).unwrap().holds);
        assert!(lemma41b_check(5, 5, 3).unwrap().holds);
        assert!(lemma41c_check(2, 1, 0, 2, 3).unwrap().holds);
        assert!(lemma41c_check(0, 0, 2, 3, -1).unwrap().holds);
        assert!(lemma41c_check(3, 1, 2, 2, -1).unwrap().holds);
        assert!(matches!(lemma41b_check(1, 2, 0), Err(Error::Domain(_))));
        assert!(matches!(
            lemma41c_check(1, 2, 0, 0, 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(lemma41a_check(-1, 0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn failure_reports_both_sides() {
        let c = IdentityCheck::compare(qint(2), qint(3));
        assert!(!c.holds);
        assert_eq!(c.lhs, "v^-1 + v");
        assert_eq!(c.rhs, "v^-2 + 1 + v^2");
    }
}
