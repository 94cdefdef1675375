//! Elements of the fraction field `Q(v)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::int::Int;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// `num / den` in lowest terms.
///
/// Normal form: `gcd(num, den) = 1` in `Z[v, v^-1]`, the lowest exponent of
/// `den` is 0 and its leading coefficient is positive. Equality and hashing
/// are structural on that form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotDivisible("zero denominator".into()));
        }
        Ok(Self::normalize(num, den))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.is_laurent().then(|| self.num.clone())
    }

    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.is_monomial() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides"),
                    den.exact_div(&g).expect("gcd divides"),
                )
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c).expect("content divides");
            den = den.div_scalar_exact(&c).expect("content divides");
        }
        let shift = den.min_exp().unwrap();
        if shift != 0 {
            num = num.shift(-shift);
            den = den.shift(-shift);
        }
        if den.leading_coeff().unwrap().signum() < 0 {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from(LaurentPoly::constant(c))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc {
                    num: &self.num + &rhs.num,
                    den: LaurentPoly::one(),
                };
            }
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: LaurentPoly::one(),
            };
        }
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero, like integer division.
impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero in Q(v)");
        if rhs.num.is_one() && rhs.den.is_one() {
            return self.clone();
        }
        RatFunc::normalize(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

// --- gcd in Z[v], lifted to Z[v, v^-1] -------------------------------------

type ZPoly = Vec<Int>; // ascending coefficients, trimmed

fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(Int::is_zero) {
        p.pop();
    }
}

fn zcontent(p: &ZPoly) -> Int {
    p.iter().fold(Int::ZERO, |g, c| g.gcd(c)).abs()
}

fn primitive(p: &ZPoly) -> ZPoly {
    let c = zcontent(p);
    let mut q: ZPoly = p.iter().map(|x| x.div_exact(&c).unwrap()).collect();
    if q.last().is_some_and(|l| l.signum() < 0) {
        q = q.iter().map(|x| -x).collect();
    }
    q
}

/// Pseudo-remainder of `a` by `b` (deg a >= deg b).
fn prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x = &*x * &lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lr * bi);
        }
        trim(&mut r);
    }
    r
}

fn zgcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = if a.len() >= b.len() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if b.is_empty() {
        return primitive(&a);
    }
    let c = zcontent(&a).gcd(&zcontent(&b));
    a = primitive(&a);
    b = primitive(&b);
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive(&r) };
    }
    let g = primitive(&a);
    g.iter().map(|x| x * &c).collect()
}

/// A gcd of two Laurent polynomials, normalized to a polynomial in `v` with
/// nonzero constant term and positive leading coefficient.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let za: ZPoly = a.dense().to_vec();
    let zb: ZPoly = b.dense().to_vec();
    let g = zgcd(&za, &zb);
    LaurentPoly::from_terms(g.into_iter().enumerate().map(|(i, c)| (i as i32, c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn normal_form_is_canonical() {
        // (v^2 - 1) / (v - 1) == (v + 1)
        let a = RatFunc::new(p("v^2 - 1"), p("v - 1")).unwrap();
        assert_eq!(a, RatFunc::from(p("v + 1")));
        // (2v) / (-4 v^3 - 4v) == -1 / (2 v^2 + 2)
        let b = RatFunc::new(p("2*v"), p("-4*v^3 - 4*v")).unwrap();
        let c = RatFunc::new(p("-1"), p("2*v^2 + 2")).unwrap();
        assert_eq!(b, c);
        assert_eq!(c.den(), &p("2 + 2*v^2"));
        assert!(RatFunc::new(p("1"), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let x = RatFunc::new(p("v"), p("v + 1")).unwrap();
        let y = RatFunc::new(p("1"), p("v - 1")).unwrap();
        let s = &x + &y;
        assert_eq!(s, RatFunc::new(p("v^2 + 1"), p("v^2 - 1")).unwrap());
        assert_eq!(&(&s - &y), &x);
        assert_eq!(&(&x * &y) / &y, x);
        assert_eq!(&x * &x.recip().unwrap(), RatFunc::one());
        assert_eq!(x.bar(), RatFunc::new(p("1"), p("1 + v")).unwrap());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p("v^2 - 1"), &p("v^2 + 2*v + 1")), p("v + 1"));
        assert_eq!(poly_gcd(&p("6*v^2 - 6"), &p("4*v - 4")), p("2*v - 2"));
        assert_eq!(poly_gcd(&p("v^3 + v"), &p("v^-1")), p("1"));
    }
}
