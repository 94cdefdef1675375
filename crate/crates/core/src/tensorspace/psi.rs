//! The bar-semilinear involution `Psi` of the tensor space.
//!
//! `Psi` fixes `xi (x) eta` and satisfies `Psi(u x) = bar(u) Psi(x)`. Words in
//! divided powers are bar-invariant, so `Psi` fixes every vector `w (xi (x) eta)`.
//! The pair words `b1^+ (b1')^-` give, per weight space, a family of such
//! vectors that is unitriangular against the standard basis; expanding a
//! standard vector in that family and barring the coefficients yields `Psi`.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Params, TensorSpace, TensorVec};
use crate::error::{Error, Result};
use crate::exactalg::{solve_exact_multi, ExactMatrix, LaurentPoly, RatFunc};
use crate::repmod::Weight;

/// Bumped whenever the cached format or the meaning of an index changes.
pub const CACHE_VERSION: u32 = 1;

const DEFAULT_BUDGET: usize = 100_000;

/// `rho[p][q]` is the coefficient of standard vector `pairs[q]` in `Psi(pairs[p])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightBlock {
    pub weight: Weight,
    pub pairs: Vec<usize>,
    pub rho: Vec<Vec<LaurentPoly>>,
}

#[derive(Clone, Debug)]
pub struct PsiOperator {
    pub params: Params,
    blocks: Vec<WeightBlock>,
    locate: HashMap<usize, (usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub blocks: usize,
    pub unit_diagonal: bool,
    pub triangular: bool,
    pub involutive: bool,
    pub failures: Vec<String>,
}

impl PsiReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn build_psi(ts: &TensorSpace) -> Result<PsiOperator> {
    build_psi_with_budget(ts, DEFAULT_BUDGET)
}

/// `budget` bounds the number of spanning words tried per weight space.
pub fn build_psi_with_budget(ts: &TensorSpace, budget: usize) -> Result<PsiOperator> {
    let spaces: Vec<(&Weight, &Vec<usize>)> = ts.weight_spaces().iter().collect();
    let blocks = spaces
        .into_par_iter()
        .map(|(w, pairs)| build_block(ts, *w, pairs, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(PsiOperator::from_blocks(ts.params, blocks))
}

fn build_block(
    ts: &TensorSpace,
    weight: Weight,
    pairs: &[usize],
    budget: usize,
) -> Result<WeightBlock> {
    let n = pairs.len();
    if budget < n {
        return Err(Error::SpanFailure {
            weight: weight.to_string(),
            budget,
        });
    }
    let local: HashMap<usize, usize> = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    // words[k][q]: coordinate of word vector k on standard vector q
    let mut words = vec![vec![LaurentPoly::zero(); n]; n];
    for (k, &p) in pairs.iter().enumerate() {
        for (q, c) in ts.pair_word_vector(p).iter() {
            let Some(&lq) = local.get(&q) else {
                return Err(Error::Realization(format!(
                    "word vector leaves weight space {weight}"
                )));
            };
            words[k][lq] = c.clone();
        }
    }
    let w = ExactMatrix::from_rows(
        (0..n)
            .map(|q| (0..n).map(|k| RatFunc::from(words[k][q].clone())).collect())
            .collect(),
    );
    let (x, rank) =
        solve_exact_multi(&w, &ExactMatrix::identity(n)).map_err(|_| Error::SpanFailure {
            weight: weight.to_string(),
            budget,
        })?;
    if rank < n {
        return Err(Error::SpanFailure {
            weight: weight.to_string(),
            budget,
        });
    }
    // std_p = sum_k x[k][p] word_k, so Psi(std_p) = sum_k bar(x[k][p]) word_k.
    let mut rho = vec![vec![LaurentPoly::zero(); n]; n];
    for (p, row) in rho.iter_mut().enumerate() {
        for (k, word) in words.iter().enumerate() {
            let c = x.get(k, p);
            if c.is_zero() {
                continue;
            }
            let Some(c) = c.to_laurent() else {
                return Err(Error::Integrality(format!(
                    "Psi coefficient {c} at weight {weight}"
                )));
            };
            let cb = c.bar();
            for (q, wq) in word.iter().enumerate() {
                if !wq.is_zero() {
                    row[q] += &(wq * &cb);
                }
            }
        }
    }
    Ok(WeightBlock {
        weight,
        pairs: pairs.to_vec(),
        rho,
    })
}

impl PsiOperator {
    fn from_blocks(params: Params, blocks: Vec<WeightBlock>) -> Self {
        let mut locate = HashMap::new();
        for (b, block) in blocks.iter().enumerate() {
            for (k, p) in block.pairs.iter().enumerate() {
                locate.insert(*p, (b, k));
            }
        }
        PsiOperator {
            params,
            blocks,
            locate,
        }
    }

    pub fn blocks(&self) -> &[WeightBlock] {
        &self.blocks
    }

    pub fn block_of(&self, p: usize) -> &WeightBlock {
        &self.blocks[self.locate[&p].0]
    }

    /// Coefficient of standard vector `q` in `Psi(std_p)`.
    pub fn rho(&self, p: usize, q: usize) -> LaurentPoly {
        let (b, i) = self.locate[&p];
        match self.locate.get(&q) {
            Some(&(b2, j)) if b2 == b => self.blocks[b].rho[i][j].clone(),
            _ => LaurentPoly::zero(),
        }
    }

    pub fn image_of_basis(&self, p: usize) -> TensorVec {
        let (b, i) = self.locate[&p];
        let block = &self.blocks[b];
        TensorVec::from_coords(
            block
                .pairs
                .iter()
                .zip(&block.rho[i])
                .map(|(q, c)| (*q, c.clone())),
        )
    }

    /// `Psi(x)`: bar the coordinates, then apply `rho`.
    pub fn apply(&self, x: &TensorVec) -> TensorVec {
        let mut y = TensorVec::zero();
        for (p, c) in x.iter() {
            let (b, i) = self.locate[&p];
            let block = &self.blocks[b];
            let cb = c.bar();
            for (q, r) in block.pairs.iter().zip(&block.rho[i]) {
                if !r.is_zero() {
                    y.add_term(*q, &(r * &cb));
                }
            }
        }
        y
    }

    /// Unit diagonal, triangularity for the pair order, and `bar(rho) rho = 1`.
    pub fn check(&self, ts: &TensorSpace) -> PsiReport {
        let mut report = PsiReport {
            blocks: self.blocks.len(),
            unit_diagonal: true,
            triangular: true,
            involutive: true,
            failures: vec![],
        };
        for block in &self.blocks {
            let n = block.pairs.len();
            for p in 0..n {
                if !block.rho[p][p].is_one() {
                    report.unit_diagonal = false;
                    report.failures.push(format!(
                        "diagonal entry at pair {} is {}",
                        block.pairs[p], block.rho[p][p]
                    ));
                }
                for q in 0..n {
                    if !block.rho[p][q].is_zero() && !ts.leq(block.pairs[q], block.pairs[p]) {
                        report.triangular = false;
                        report.failures.push(format!(
                            "rho[{}][{}] nonzero off the order",
                            block.pairs[p], block.pairs[q]
                        ));
                    }
                }
            }
            for p in 0..n {
                for r in 0..n {
                    let mut acc = LaurentPoly::zero();
                    for q in 0..n {
                        if !block.rho[p][q].is_zero() && !block.rho[q][r].is_zero() {
                            acc += &(&block.rho[p][q].bar() * &block.rho[q][r]);
                        }
                    }
                    let expected = if p == r {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    };
                    if acc != expected {
                        report.involutive = false;
                        report.failures.push(format!(
                            "bar(rho) rho differs from 1 at weight {}",
                            block.weight
                        ));
                    }
                }
            }
        }
        report
    }

    pub fn cache_path(dir: &Path, params: Params) -> PathBuf {
        dir.join(format!(
            "psi-v{}-{}-{}-{}-{}.json",
            CACHE_VERSION, params.s, params.t, params.a, params.b
        ))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = CacheFile {
            version: CACHE_VERSION,
            params: [self.params.s, self.params.t, self.params.a, self.params.b],
            blocks: self
                .blocks
                .iter()
                .map(|b| CacheBlock {
                    weight: b.weight,
                    pairs: b.pairs.clone(),
                    rho: b
                        .rho
                        .iter()
                        .enumerate()
                        .flat_map(|(p, row)| {
                            row.iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(move |(q, c)| (p, q, c.clone()))
                        })
                        .collect(),
                })
                .collect(),
        };
        let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| Error::Cache(e.to_string()))?;
        }
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text).map_err(|e| Error::Cache(e.to_string()))?;
        fs::rename(&tmp, path).map_err(|e| Error::Cache(e.to_string()))
    }

    /// Load a cached operator, checking that it matches `ts` and passes [`PsiOperator::check`].
    pub fn load(path: &Path, ts: &TensorSpace) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Cache(e.to_string()))?;
        let file: CacheFile =
            serde_json::from_str(&text).map_err(|e| Error::Cache(e.to_string()))?;
        let p = ts.params;
        if file.version != CACHE_VERSION || file.params != [p.s, p.t, p.a, p.b] {
            return Err(Error::Cache(format!(
                "{} was written for other parameters",
                path.display()
            )));
        }
        let spaces = ts.weight_spaces();
        if file.blocks.len() != spaces.len() {
            return Err(Error::Cache("weight spaces do not match".into()));
        }
        let mut blocks = Vec::with_capacity(file.blocks.len());
        for (b, (w, pairs)) in file.blocks.into_iter().zip(spaces) {
            if b.weight != *w || &b.pairs != pairs {
                return Err(Error::Cache(format!("weight space {w} does not match")));
            }
            let n = pairs.len();
            let mut rho = vec![vec![LaurentPoly::zero(); n]; n];
            for (i, j, c) in b.rho {
                if i >= n || j >= n {
                    return Err(Error::Cache("entry out of range".into()));
                }
                rho[i][j] = c;
            }
            blocks.push(WeightBlock {
                weight: b.weight,
                pairs: b.pairs,
                rho,
            });
        }
        let op = PsiOperator::from_blocks(p, blocks);
        let report = op.check(ts);
        if !report.ok() {
            return Err(Error::Cache(format!(
                "cached operator fails its checks: {}",
                report.failures[0]
            )));
        }
        Ok(op)
    }

    /// Use the cache under `dir` when present and valid; otherwise build and store.
    /// The second value describes what happened to the cache, if anything.
    pub fn load_or_build(ts: &TensorSpace, dir: Option<&Path>) -> Result<(Self, Option<String>)> {
        let Some(dir) = dir else {
            return Ok((build_psi(ts)?, None));
        };
        let path = Self::cache_path(dir, ts.params);
        let mut note = None;
        if path.exists() {
            match Self::load(&path, ts) {
                Ok(op) => return Ok((op, None)),
                Err(e) => note = Some(format!("rebuilt corrupt cache entry: {e}")),
            }
        }
        let op = build_psi(ts)?;
        if let Err(e) = op.save(&path) {
            note = Some(e.to_string());
        }
        Ok((op, note))
    }
}

#[derive(Serialize, Deserialize)]
struct CacheBlock {
    weight: Weight,
    pairs: Vec<usize>,
    rho: Vec<(usize, usize, LaurentPoly)>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    params: [i64; 4],
    blocks: Vec<CacheBlock>,
}

/// JSON dump for reports: per weight space, pair labels and nonzero `rho` entries.
impl Serialize for PsiOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Block<'a> {
            weight: Weight,
            pairs: &'a [usize],
            rho: Vec<(usize, usize, &'a LaurentPoly)>,
        }
        let blocks: Vec<Block> = self
            .blocks
            .iter()
            .map(|b| Block {
                weight: b.weight,
                pairs: &b.pairs,
                rho: b
                    .rho
                    .iter()
                    .enumerate()
                    .flat_map(|(p, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(move |(q, c)| (p, q, c))
                    })
                    .collect(),
            })
            .collect();
        blocks.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_case_is_identity() {
        let ts = TensorSpace::new(Params::new(0, 0, 1, 0)).unwrap();
        let psi = build_psi(&ts).unwrap();
        for b in psi.blocks() {
            assert_eq!(b.rho, vec![vec![LaurentPoly::one()]]);
        }
    }

    #[test]
    fn small_product_is_an_involution() {
        let ts = TensorSpace::new(Params::new(1, 0, 1, 0)).unwrap();
        let psi = build_psi(&ts).unwrap();
        let report = psi.check(&ts);
        assert!(report.ok(), "{:?}", report.failures);
        let zero = psi
            .blocks()
            .iter()
            .find(|b| b.weight == Weight::new(0, 0))
            .unwrap();
        assert_eq!(zero.pairs.len(), 3);
        let x = TensorVec::basis(0).scale(&LaurentPoly::v_pow(1));
        assert_eq!(
            psi.apply(&x),
            TensorVec::basis(0).scale(&LaurentPoly::v_pow(-1))
        );
    }

    #[test]
    fn budget_too_small_reports_span_failure() {
        let ts = TensorSpace::new(Params::new(1, 0, 1, 0)).unwrap();
        assert!(matches!(
            build_psi_with_budget(&ts, 2),
            Err(Error::SpanFailure { .. })
        ));
    }
}
