//! Elements of the modified algebra: Laurent combinations of divided-power
//! words with one idempotent, their symmetries, a text syntax, and evaluation
//! on `xi (x) eta`.

mod families;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactalg::LaurentPoly;
use crate::repmod::{Gen, Weight};
use crate::tensorspace::{TensorSpace, TensorVec};

pub use families::{
    family_element, transcribed_primed, FamilyElement, FamilyId, FamilyParams, Mutation, Part,
};

/// `left 1_idem right`; factors are `(generator, exponent)` written left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UdotWord {
    pub left: Vec<(Gen, i64)>,
    pub idem: Weight,
    pub right: Vec<(Gen, i64)>,
}

fn strip(f: Vec<(Gen, i64)>) -> Vec<(Gen, i64)> {
    f.into_iter().filter(|&(_, n)| n != 0).collect()
}

fn shift(weight: Weight, factors: &[(Gen, i64)]) -> Weight {
    factors.iter().fold(weight, |w, &(g, n)| w.after(g, n))
}

impl UdotWord {
    /// Panics on negative exponents; zero exponents are dropped.
    pub fn new(left: Vec<(Gen, i64)>, idem: Weight, right: Vec<(Gen, i64)>) -> Self {
        assert!(
            left.iter().chain(&right).all(|&(_, n)| n >= 0),
            "negative exponent"
        );
        UdotWord {
            left: strip(left),
            idem,
            right: strip(right),
        }
    }

    pub fn idempotent(idem: Weight) -> Self {
        UdotWord {
            left: vec![],
            idem,
            right: vec![],
        }
    }

    /// The weight `zeta` with `word = word 1_zeta`.
    pub fn source(&self) -> Weight {
        // 1_idem y 1_zeta with idem = zeta + wt(y), so undo `right` from the left end.
        let inverse: Vec<(Gen, i64)> = self.right.iter().map(|&(g, n)| (g, -n)).collect();
        shift(self.idem, &inverse)
    }

    /// The weight `mu` with `word = 1_mu word`.
    pub fn target(&self) -> Weight {
        shift(self.idem, &self.left)
    }

    pub fn sigma(&self) -> Self {
        UdotWord {
            left: self.right.iter().rev().copied().collect(),
            idem: -self.idem,
            right: self.left.iter().rev().copied().collect(),
        }
    }

    pub fn index_swap(&self) -> Self {
        let sw = |f: &[(Gen, i64)]| f.iter().map(|&(g, n)| (g.swap_index(), n)).collect();
        UdotWord {
            left: sw(&self.left),
            idem: self.idem.swap(),
            right: sw(&self.right),
        }
    }
}

fn fmt_factors(f: &mut fmt::Formatter<'_>, factors: &[(Gen, i64)]) -> fmt::Result {
    for (g, n) in factors {
        write!(f, "{g}^{n} ")?;
    }
    Ok(())
}

impl fmt::Display for UdotWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_factors(f, &self.left)?;
        write!(f, "1[({},{})]", self.idem.l1, self.idem.l2)?;
        for (g, n) in &self.right {
            write!(f, " {g}^{n}")?;
        }
        Ok(())
    }
}

/// A finite Laurent combination of words; like terms combined, zeros pruned.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UdotExpr {
    terms: BTreeMap<UdotWord, LaurentPoly>,
}

impl UdotExpr {
    pub fn zero() -> Self {
        UdotExpr::default()
    }

    pub fn word(w: UdotWord) -> Self {
        let mut e = UdotExpr::zero();
        e.add_term(&LaurentPoly::one(), w);
        e
    }

    pub fn add_term(&mut self, c: &LaurentPoly, w: UdotWord) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UdotWord, &LaurentPoly)> {
        self.terms.iter()
    }

    fn map_words(&self, f: impl Fn(&UdotWord) -> UdotWord) -> Self {
        let mut out = UdotExpr::zero();
        for (w, c) in &self.terms {
            out.add_term(c, f(w));
        }
        out
    }

    /// Reverse every word and negate the idempotent; coefficients are kept.
    pub fn sigma(&self) -> Self {
        self.map_words(UdotWord::sigma)
    }

    /// Swap the indices 1 and 2 everywhere.
    pub fn index_swap(&self) -> Self {
        self.map_words(UdotWord::index_swap)
    }

    /// Bar on coefficients; words are bar-invariant.
    pub fn bar(&self) -> Self {
        UdotExpr {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.bar()))
                .collect(),
        }
    }

    /// The common source weight of all words, if there is one.
    pub fn source(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(UdotWord::source);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Apply to `xi (x) eta` in `ts`.
    pub fn evaluate(&self, ts: &TensorSpace) -> TensorVec {
        let zeta = ts.params.zeta();
        let mut out = TensorVec::zero();
        for (w, c) in &self.terms {
            if w.source() != zeta {
                continue;
            }
            let x = ts.apply_word(&w.right, &TensorVec::basis(ts.cyclic()));
            if x.is_zero() {
                continue;
            }
            let y = ts.apply_word(&w.left, &x);
            out.add_scaled(&y, c);
        }
        out
    }
}

impl fmt::Display for UdotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

fn parse_factor(tok: &str) -> Result<(Gen, i64)> {
    let bad = || Error::Parse(format!("bad factor `{tok}`"));
    let (name, exp) = match tok.split_once('^') {
        Some((n, e)) => (n, e.parse::<i64>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    let g = Gen::ALL
        .into_iter()
        .find(|g| g.name() == name)
        .ok_or_else(bad)?;
    if exp < 0 {
        return Err(bad());
    }
    Ok((g, exp))
}

impl FromStr for UdotWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut idem = None;
        for tok in s.split_whitespace() {
            if let Some(inner) = tok.strip_prefix("1[(").and_then(|t| t.strip_suffix(")]")) {
                if idem.is_some() {
                    return Err(Error::Parse(format!("more than one idempotent in `{s}`")));
                }
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad idempotent `{tok}`")))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad idempotent `{tok}`")))
                };
                idem = Some(Weight::new(parse(a)?, parse(b)?));
            } else if idem.is_none() {
                left.push(parse_factor(tok)?);
            } else {
                right.push(parse_factor(tok)?);
            }
        }
        let idem = idem.ok_or_else(|| Error::Parse(format!("missing idempotent in `{s}`")))?;
        Ok(UdotWord::new(left, idem, right))
    }
}

/// Terms are `word` or `(poly)*word`, joined by `+`.
impl FromStr for UdotExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = UdotExpr::zero();
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        let mut depth = 0i32;
        let mut start = 0;
        let mut pieces = Vec::new();
        for (i, ch) in s.char_indices() {
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                '+' if depth == 0 => {
                    pieces.push(&s[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        pieces.push(&s[start..]);
        for piece in pieces {
            let piece = piece.trim();
            let (coef, word) = if let Some(rest) = piece.strip_prefix('(') {
                let close = matching_paren(rest)
                    .ok_or_else(|| Error::Parse(format!("unbalanced `{piece}`")))?;
                let word = rest[close + 1..]
                    .trim_start()
                    .strip_prefix('*')
                    .ok_or_else(|| Error::Parse(format!("expected `*` in `{piece}`")))?;
                (rest[..close].parse::<LaurentPoly>()?, word)
            } else {
                (LaurentPoly::one(), piece)
            };
            out.add_term(&coef, word.parse()?);
        }
        Ok(out)
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}
