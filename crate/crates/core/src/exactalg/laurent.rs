//! Laurent polynomials in one variable `v` with integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::int::Int;
use crate::error::{Error, Result};

/// An element of `Z[v, v^-1]`.
///
/// Stored densely: `coeffs[i]` is the coefficient of `v^(low + i)`. The first
/// and last stored coefficients are nonzero; zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<Int>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(Int::from(c), 0)
    }

    /// `v^n`
    pub fn v_pow(n: i32) -> Self {
        Self::monomial(Int::ONE, n)
    }

    pub fn monomial(c: Int, n: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: n,
            coeffs: vec![c],
        }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, Int)>,
    {
        let terms: Vec<(i32, Int)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Int::ZERO; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = &*slot + &c;
        }
        Self::from_dense(lo, coeffs)
    }

    pub(crate) fn from_dense(low: i32, mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Int::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        if lead > 0 {
            coeffs.drain(..lead);
        }
        LaurentPoly {
            low: low + lead as i32,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for `c * v^n`, including zero.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, n: i32) -> Int {
        let i = n as i64 - self.low as i64;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Int::ZERO
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Int)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    /// Replaces `v` by `v^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            low: -self.max_exp().unwrap(),
            coeffs,
        }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        *self == self.bar()
    }

    pub fn is_bar_antisymmetric(&self) -> bool {
        *self == -self.bar()
    }

    /// Membership in `v^-1 Z[v^-1]`.
    pub fn in_vinv_lattice(&self) -> bool {
        self.max_exp().is_none_or(|e| e < 0)
    }

    /// Membership in `Z[v^-1]`.
    pub fn in_lattice(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= 0)
    }

    /// Multiplies by `v^n`.
    pub fn shift(&self, n: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + n,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `self * c * v^n`
    pub fn mul_monomial(&self, c: &Int, n: i32) -> Self {
        if c.is_one() {
            return self.shift(n);
        }
        let mut r = self.scale(c);
        if !r.is_zero() {
            r.low += n;
        }
        r
    }

    /// Adds `c * v^n * other` into `self` in place.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &Int, n: i32) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.mul_monomial(c, n);
            return;
        }
        let olow = other.low + n;
        let ohigh = olow + other.coeffs.len() as i32 - 1;
        let shigh = self.low + self.coeffs.len() as i32 - 1;
        if olow < self.low {
            let pad = (self.low - olow) as usize;
            self.coeffs
                .splice(0..0, std::iter::repeat_n(Int::ZERO, pad));
            self.low = olow;
        }
        if ohigh > shigh {
            let pad = (ohigh - shigh) as usize;
            self.coeffs.extend(std::iter::repeat_n(Int::ZERO, pad));
        }
        let off = (olow - self.low) as usize;
        let unit = c.is_one();
        for (i, x) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[off + i];
            *slot = if unit { &*slot + x } else { &*slot + &(x * c) };
        }
        let tmp = std::mem::take(&mut self.coeffs);
        *self = Self::from_dense(self.low, tmp);
    }

    /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g.abs()
    }

    pub fn leading_coeff(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub(crate) fn dense(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn div_scalar_exact(&self, c: &Int) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| {
                x.div_exact(c)
                    .ok_or_else(|| Error::NotDivisible(format!("({self}) / {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly {
            low: self.low,
            coeffs,
        })
    }

    /// Exact quotient `self / divisor` in `Z[v, v^-1]`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible(format!("({self}) / 0")));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.is_monomial() {
            return Ok(self
                .div_scalar_exact(&divisor.coeffs[0])?
                .shift(-divisor.low));
        }
        let fail = || Error::NotDivisible(format!("({self}) / ({divisor})"));
        // long division from the top on the Z[v] parts
        let d = &divisor.coeffs;
        let dlen = d.len();
        if self.coeffs.len() < dlen {
            return Err(fail());
        }
        let dl = d.last().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut q = vec![Int::ZERO; qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let c = top.div_exact(dl).ok_or_else(fail)?;
            for (k, dk) in d.iter().enumerate() {
                if !dk.is_zero() {
                    rem[i + k] = &rem[i + k] - &(&c * dk);
                }
            }
            q[i] = c;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return Err(fail());
        }
        Ok(Self::from_dense(self.low - divisor.low, q))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<Int> for LaurentPoly {
    fn from(c: Int) -> Self {
        Self::monomial(c, 0)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r.add_scaled(rhs, &Int::ONE, 0);
        r
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r.add_scaled(rhs, &Int::from(-1), 0);
        r
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.is_monomial() {
            return self.mul_monomial(&rhs.coeffs[0], rhs.low);
        }
        if self.is_monomial() {
            return rhs.mul_monomial(&self.coeffs[0], self.low);
        }
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        let n = a.len() + b.len() - 1;
        // fast path: everything small, accumulate in i128
        let small_a: Option<Vec<i64>> = a.iter().map(Int::as_i64).collect();
        let small_b: Option<Vec<i64>> = b.iter().map(Int::as_i64).collect();
        if let (Some(sa), Some(sb)) = (small_a, small_b) {
            let mut acc = vec![0i128; n];
            let mut ok = true;
            'outer: for (i, x) in sa.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                for (j, y) in sb.iter().enumerate() {
                    match acc[i + j].checked_add(*x as i128 * *y as i128) {
                        Some(s) => acc[i + j] = s,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                let coeffs = acc
                    .into_iter()
                    .map(|c| match i64::try_from(c) {
                        Ok(x) => Int::Small(x),
                        Err(_) => Int::from(num_bigint::BigInt::from(c)),
                    })
                    .collect();
                return LaurentPoly::from_dense(self.low + rhs.low, coeffs);
            }
        }
        let mut coeffs = vec![Int::ZERO; n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(x * y);
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_scaled(&rhs, &Int::ONE, 0);
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_scaled(&rhs, &Int::from(-1), 0);
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, &Int::ONE, 0);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, &Int::from(-1), 0);
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.signum() < 0;
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match e {
                0 => None,
                1 => Some("v".to_string()),
                _ => Some(format!("v^{e}")),
            };
            match (var, mag.is_one()) {
                (None, _) => write!(f, "{mag}")?,
                (Some(v), true) => write!(f, "{v}")?,
                (Some(v), false) => write!(f, "{mag}*{v}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid Laurent polynomial `{s}`"));
        if s.is_empty() {
            return Err(bad());
        }
        // split into signed terms; a '-' right after '^' belongs to the exponent
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);
        let mut terms = Vec::new();
        for p in pieces {
            let (neg, body) = match p.as_bytes()[0] {
                b'-' => (true, &p[1..]),
                b'+' => (false, &p[1..]),
                _ => (false, p),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, var) = match body.find('v') {
                None => (body, None),
                Some(pos) => {
                    let c = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    if !body[..pos].is_empty() && !body[..pos].ends_with('*') {
                        return Err(bad());
                    }
                    (c, Some(&body[pos + 1..]))
                }
            };
            let mut c: Int = if coef.is_empty() {
                Int::ONE
            } else {
                coef.parse().map_err(|_| bad())?
            };
            if neg {
                c = -c;
            }
            let e = match var {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<i32>()
                    .map_err(|_| bad())?,
            };
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.num_terms()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i32, String)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        let mut last = None;
        for (e, c) in raw {
            if last.is_some_and(|l| l >= e) {
                return Err(de::Error::custom("exponents must be strictly increasing"));
            }
            last = Some(e);
            let c: Int = c.parse().map_err(de::Error::custom)?;
            if c.is_zero() {
                return Err(de::Error::custom("zero coefficient in encoding"));
            }
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
