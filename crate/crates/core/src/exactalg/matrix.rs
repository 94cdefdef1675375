//! Dense matrices over `Q(v)` and fraction-free linear solving.

use std::fmt;

use super::laurent::LaurentPoly;
use super::ratfunc::{poly_gcd, RatFunc};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_laurent_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(RatFunc::from).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RatFunc) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = RatFunc::zero();
                for (j, xj) in x.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !xj.is_zero() {
                        acc = &acc + &(a * xj);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let col = self.mul_vec(&other.column(j));
            for (i, x) in col.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub values: Vec<RatFunc>,
    pub rank: usize,
    /// Number of free variables; they are set to zero in `values`.
    pub free: usize,
}

/// Solves `a * x = rhs` exactly.
pub fn solve_exact(a: &ExactMatrix, rhs: &[RatFunc]) -> Result<Solution> {
    assert_eq!(a.rows, rhs.len());
    let b = ExactMatrix {
        rows: rhs.len(),
        cols: 1,
        entries: rhs.to_vec(),
    };
    let (x, rank) = solve_exact_multi(a, &b)?;
    Ok(Solution {
        values: x.column(0),
        rank,
        free: a.cols - rank,
    })
}

/// Solves `a * X = b` for every column of `b` at once. Returns `X` and the rank of `a`.
pub fn solve_exact_multi(a: &ExactMatrix, b: &ExactMatrix) -> Result<(ExactMatrix, usize)> {
    assert_eq!(a.rows, b.rows);
    let mut ech = Echelon::new(a, b);
    ech.eliminate();
    let rank = ech.pivots.len();
    for i in rank..a.rows {
        if ech.m[i][a.cols..].iter().any(|x| !x.is_zero()) {
            return Err(Error::Inconsistent { rank });
        }
    }
    let mut x = ExactMatrix::zeros(a.cols, b.cols);
    for k in 0..b.cols {
        let col = a.cols + k;
        let mut sol: Vec<RatFunc> = vec![RatFunc::zero(); a.cols];
        for t in (0..rank).rev() {
            let c = ech.pivots[t];
            let row = &ech.m[t];
            let mut s = RatFunc::from(row[col].clone());
            for &c2 in &ech.pivots[t + 1..] {
                if !row[c2].is_zero() && !sol[c2].is_zero() {
                    s = &s - &(&RatFunc::from(row[c2].clone()) * &sol[c2]);
                }
            }
            sol[c] = &s / &RatFunc::from(row[c].clone());
        }
        for (i, v) in sol.into_iter().enumerate() {
            x.set(i, k, v);
        }
    }
    Ok((x, rank))
}

pub fn rank(a: &ExactMatrix) -> usize {
    let mut ech = Echelon::new(a, &ExactMatrix::zeros(a.rows, 0));
    ech.eliminate();
    ech.pivots.len()
}

/// Fraction-free (Bareiss) row echelon form of an augmented matrix whose rows
/// were cleared of denominators.
struct Echelon {
    m: Vec<Vec<LaurentPoly>>,
    ncols: usize,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(a: &ExactMatrix, b: &ExactMatrix) -> Self {
        let mut m = Vec::with_capacity(a.rows);
        for i in 0..a.rows {
            let row: Vec<&RatFunc> = (0..a.cols)
                .map(|j| a.get(i, j))
                .chain((0..b.cols).map(|j| b.get(i, j)))
                .collect();
            let mut l = LaurentPoly::one();
            for x in &row {
                if !x.den().is_one() {
                    let g = poly_gcd(&l, x.den());
                    l = &l * &x.den().exact_div(&g).expect("gcd divides");
                }
            }
            let m_row = row
                .into_iter()
                .map(|x| {
                    if l.is_one() {
                        x.num().clone()
                    } else {
                        (x.num() * &l)
                            .exact_div(x.den())
                            .expect("lcm clears denominators")
                    }
                })
                .collect();
            m.push(m_row);
        }
        Echelon {
            m,
            ncols: a.cols,
            pivots: Vec::new(),
        }
    }

    fn eliminate(&mut self) {
        let rows = self.m.len();
        let width = self.m.first().map_or(0, Vec::len);
        let mut prev = LaurentPoly::one();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows)
                .filter(|&i| !self.m[i][c].is_zero())
                .min_by_key(|&i| self.m[i][c].num_terms())
            else {
                continue;
            };
            self.m.swap(r, piv);
            let p = self.m[r][c].clone();
            let same = p == prev;
            let (top, rest) = self.m.split_at_mut(r + 1);
            let prow = &top[r];
            for row in rest.iter_mut() {
                let f = std::mem::take(&mut row[c]);
                if f.is_zero() {
                    if same {
                        continue;
                    }
                    for x in row[c + 1..width].iter_mut() {
                        if !x.is_zero() {
                            *x = (&*x * &p)
                                .exact_div(&prev)
                                .expect("Bareiss division is exact");
                        }
                    }
                } else {
                    for j in c + 1..width {
                        let t = &(&row[j] * &p) - &(&f * &prow[j]);
                        row[j] = if prev.is_one() {
                            t
                        } else {
                            t.exact_div(&prev).expect("Bareiss division is exact")
                        };
                    }
                }
            }
            prev = p;
            self.pivots.push(c);
            r += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        RatFunc::from(p(s))
    }

    #[test]
    fn identity_system() {
        let r = vec![rf("v"), rf("1 - v^-2"), rf("0")];
        let sol = solve_exact(&ExactMatrix::identity(3), &r).unwrap();
        assert_eq!(sol.values, r);
        assert_eq!((sol.rank, sol.free), (3, 0));
    }

    #[test]
    fn one_by_one() {
        let a = ExactMatrix::from_rows(vec![vec![rf("v - v^-1")]]);
        let sol = solve_exact(&a, &[rf("v^2 - v^-2")]).unwrap();
        assert_eq!(sol.values, vec![rf("v + v^-1")]);
    }

    #[test]
    fn two_by_two_hand_elimination() {
        // x + y = 0, x + v y = v - 1  =>  (v - 1) y = v - 1  =>  y = 1, x = -1
        let a = ExactMatrix::from_rows(vec![vec![rf("1"), rf("1")], vec![rf("1"), rf("v")]]);
        let sol = solve_exact(&a, &[rf("0"), rf("v - 1")]).unwrap();
        assert_eq!(sol.values, vec![rf("-1"), rf("1")]);
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = ExactMatrix::from_rows(vec![vec![rf("1"), rf("v")], vec![rf("2"), rf("2*v")]]);
        assert_eq!(
            solve_exact(&a, &[rf("1"), rf("3")]),
            Err(Error::Inconsistent { rank: 1 })
        );
        let sol = solve_exact(&a, &[rf("1"), rf("2")]).unwrap();
        assert_eq!((sol.rank, sol.free), (1, 1));
        assert_eq!(a.mul_vec(&sol.values), vec![rf("1"), rf("2")]);
    }

    #[test]
    fn rational_entries() {
        let half = RatFunc::new(p("1"), p("v + 1")).unwrap();
        let a = ExactMatrix::from_rows(vec![vec![half.clone(), rf("1")], vec![rf("v"), half]]);
        let rhs = vec![rf("1"), rf("v^2")];
        let sol = solve_exact(&a, &rhs).unwrap();
        assert_eq!(a.mul_vec(&sol.values), rhs);
        assert_eq!(rank(&a), 2);
    }
}
