//! Weights, generators, canonical monomials of `f`, and concrete realizations
//! of the finite-dimensional highest- and lowest-weight modules.

mod ambient;
pub mod checks;
mod module;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ambient::{Ambient, AmbientVec, Fundamental};
pub use module::{
    build_highest_module, build_lowest_module, Extremal, GenMatrix, ModuleRealization,
};

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub l1: i64,
    pub l2: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { l1: 0, l2: 0 };

    pub const fn new(l1: i64, l2: i64) -> Self {
        Weight { l1, l2 }
    }

    /// `<alpha_i^vee, self>`
    pub fn pairing(self, i: u8) -> i64 {
        match i {
            1 => self.l1,
            2 => self.l2,
            _ => panic!("index {i} out of range"),
        }
    }

    /// `self + a * alpha_i`
    pub fn add_root(self, i: u8, a: i64) -> Self {
        match i {
            1 => Weight::new(self.l1 + 2 * a, self.l2 - a),
            2 => Weight::new(self.l1 - a, self.l2 + 2 * a),
            _ => panic!("index {i} out of range"),
        }
    }

    /// Weight after acting by `gen^(a)`.
    pub fn after(self, gen: Gen, a: i64) -> Self {
        if gen.is_e() {
            self.add_root(gen.index(), a)
        } else {
            self.add_root(gen.index(), -a)
        }
    }

    pub fn swap(self) -> Self {
        Weight::new(self.l2, self.l1)
    }

    pub fn is_dominant(self) -> bool {
        self.l1 >= 0 && self.l2 >= 0
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.l1 + o.l1, self.l2 + o.l2)
    }
}

impl std::ops::Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight::new(self.l1 - o.l1, self.l2 - o.l2)
    }
}

impl std::ops::Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.l1, -self.l2)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l1, self.l2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    E1,
    E2,
    F1,
    F2,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::E1, Gen::E2, Gen::F1, Gen::F2];

    pub fn e(i: u8) -> Gen {
        if i == 1 {
            Gen::E1
        } else {
            Gen::E2
        }
    }

    pub fn f(i: u8) -> Gen {
        if i == 1 {
            Gen::F1
        } else {
            Gen::F2
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Gen::E1 | Gen::F1 => 1,
            Gen::E2 | Gen::F2 => 2,
        }
    }

    pub fn is_e(self) -> bool {
        matches!(self, Gen::E1 | Gen::E2)
    }

    pub fn swap_index(self) -> Gen {
        match self {
            Gen::E1 => Gen::E2,
            Gen::E2 => Gen::E1,
            Gen::F1 => Gen::F2,
            Gen::F2 => Gen::F1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::E1 => "e1",
            Gen::E2 => "e2",
            Gen::F1 => "f1",
            Gen::F2 => "f2",
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    S212,
    S121,
}

/// A canonical monomial `t2^(x) t1^(y) t2^(z)` or `t1^(x) t2^(y) t1^(z)` with
/// `y >= x + z`. The boundary case `y = x + z` is always stored as `S212`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialLabel {
    pub shape: Shape,
    pub exps: [i64; 3],
}

impl MonomialLabel {
    pub const EMPTY: MonomialLabel = MonomialLabel {
        shape: Shape::S212,
        exps: [0, 0, 0],
    };

    pub fn new(shape: Shape, x: i64, y: i64, z: i64) -> Result<Self> {
        if x < 0 || y < 0 || z < 0 || y < x + z {
            return Err(Error::Domain(format!(
                "({x},{y},{z}) is not a canonical monomial"
            )));
        }
        Ok(match shape {
            Shape::S121 if y == x + z => MonomialLabel {
                shape: Shape::S212,
                exps: [z, y, x],
            },
            _ => MonomialLabel {
                shape,
                exps: [x, y, z],
            },
        })
    }

    pub fn s212(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(Shape::S212, x, y, z)
    }

    pub fn s121(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(Shape::S121, x, y, z)
    }

    pub fn tr(&self) -> i64 {
        self.exps.iter().sum()
    }

    /// `(nu_1, nu_2)`: how many of each simple root the monomial carries.
    pub fn nu(&self) -> (i64, i64) {
        let [x, y, z] = self.exps;
        match self.shape {
            Shape::S212 => (y, x + z),
            Shape::S121 => (x + z, y),
        }
    }

    /// Root indices of the three factors, left to right.
    pub fn indices(&self) -> [u8; 3] {
        match self.shape {
            Shape::S212 => [2, 1, 2],
            Shape::S121 => [1, 2, 1],
        }
    }

    /// The monomial as an `f`-word (or `e`-word), left to right, zero exponents dropped.
    pub fn word(&self, raising: bool) -> Vec<(Gen, i64)> {
        self.indices()
            .into_iter()
            .zip(self.exps)
            .filter(|&(_, n)| n > 0)
            .map(|(i, n)| (if raising { Gen::e(i) } else { Gen::f(i) }, n))
            .collect()
    }

    /// Whether the label belongs to the basis set of `V(lambda)` for dominant `lambda`.
    pub fn in_b(&self, lambda: Weight) -> bool {
        let (a, b) = (lambda.l1, lambda.l2);
        let [x, y, z] = self.exps;
        let in_first = |u: i64, v: i64, w: i64| {
            (0..=b).contains(&w) && (0..=a).contains(&u) && u + w <= v && v <= a + w
        };
        match self.shape {
            Shape::S212 => in_first(x, y, z),
            Shape::S121 => {
                (0..b).contains(&x) && (0..=a).contains(&z) && x + 1 + z <= y && y <= b + z
            }
        }
    }

    pub fn swap_index(&self) -> Self {
        let shape = match self.shape {
            Shape::S212 => Shape::S121,
            Shape::S121 => Shape::S212,
        };
        let [x, y, z] = self.exps;
        Self::new(shape, x, y, z).expect("swapping preserves dominance")
    }

    fn sort_key(&self) -> (i64, Shape, [i64; 3]) {
        (self.tr(), self.shape, self.exps)
    }
}

impl fmt::Display for MonomialLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.exps;
        let s = match self.shape {
            Shape::S212 => "212",
            Shape::S121 => "121",
        };
        write!(f, "{s}({x},{y},{z})")
    }
}

/// Labels of the basis of `V(lambda)`, ordered by total degree, then shape, then exponents.
pub fn enumerate_b(lambda: Weight) -> Result<Vec<MonomialLabel>> {
    if !lambda.is_dominant() {
        return Err(Error::Domain(format!("weight {lambda} is not dominant")));
    }
    let (a, b) = (lambda.l1, lambda.l2);
    let mut out = Vec::new();
    for w in 0..=b {
        for u in 0..=a {
            for v in u + w..=a + w {
                out.push(MonomialLabel {
                    shape: Shape::S212,
                    exps: [u, v, w],
                });
            }
        }
    }
    for s in 0..b {
        for r in 0..=a {
            for t in s + 1 + r..=b + r {
                out.push(MonomialLabel {
                    shape: Shape::S121,
                    exps: [s, t, r],
                });
            }
        }
    }
    out.sort_by_key(MonomialLabel::sort_key);
    Ok(out)
}

pub fn weyl_dimension(a: i64, b: i64) -> i64 {
    (a + 1) * (b + 1) * (a + b + 2) / 2
}
