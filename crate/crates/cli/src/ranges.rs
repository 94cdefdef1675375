//! Parameter ranges for the `identities` subcommand, written `name=lo..hi,...`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use clap::Args;
use serde_json::{json, Value};
use sl3canon::qcomb::{lemma41a_check, lemma41b_check, lemma41c_check, IdentityCheck};

#[derive(Args)]
pub struct IdentityRanges {
    /// Ranges for the two-binomial convolution: n, r, m.
    #[arg(
        long = "a",
        default_value = "n=0..4,r=0..4,m=-5..5",
        allow_hyphen_values = true
    )]
    a: String,
    /// Ranges for the alternating sum: m, k, delta (tuples with k > m are skipped).
    #[arg(
        long = "b",
        default_value = "m=0..6,k=0..6,delta=0..4",
        allow_hyphen_values = true
    )]
    b: String,
    /// Ranges for the three-binomial sum: a, c, u, r, b (tuples with c > a are skipped).
    #[arg(
        long = "c",
        default_value = "a=0..4,c=0..4,u=0..3,r=0..3,b=-4..4",
        allow_hyphen_values = true
    )]
    c: String,
    /// Perturb every left-hand side; a negative control for the checkers.
    #[arg(long, hide = true)]
    inject_failure: bool,
}

fn parse(spec: &str, names: &[&str]) -> Result<Vec<RangeInclusive<i64>>, String> {
    let mut found: BTreeMap<&str, RangeInclusive<i64>> = BTreeMap::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, range) = part
            .split_once('=')
            .ok_or_else(|| format!("expected name=lo..hi, got `{part}`"))?;
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| format!("expected lo..hi, got `{range}`"))?;
        let n = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}"));
        let name = names
            .iter()
            .find(|&&k| k == name.trim())
            .ok_or_else(|| format!("unknown parameter `{name}`"))?;
        found.insert(name, n(lo)?..=n(hi)?);
    }
    names
        .iter()
        .map(|k| {
            found
                .remove(k)
                .ok_or_else(|| format!("missing range for `{k}`"))
        })
        .collect()
}

fn product(ranges: &[RangeInclusive<i64>]) -> Vec<Vec<i64>> {
    ranges.iter().fold(vec![vec![]], |acc, r| {
        acc.into_iter()
            .flat_map(|prefix| r.clone().map(move |x| [prefix.clone(), vec![x]].concat()))
            .collect()
    })
}

impl IdentityRanges {
    /// Every result in order, and whether all of them hold.
    pub fn run(&self) -> Result<(Vec<Value>, bool), String> {
        let mut out = Vec::new();
        let mut all = true;
        let mut record = |name: &str, keys: &[&str], vals: &[i64], check: IdentityCheck| {
            let mut check = check;
            if self.inject_failure {
                check.lhs = format!("{} + v^99", check.lhs);
                check.holds = false;
            }
            all &= check.holds;
            let params: serde_json::Map<String, Value> = keys
                .iter()
                .zip(vals)
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            let mut entry = json!({ "identity": name, "params": params, "holds": check.holds });
            if !check.holds {
                entry["lhs"] = json!(check.lhs);
                entry["rhs"] = json!(check.rhs);
            }
            out.push(entry);
        };
        let keys = ["n", "r", "m"];
        for t in product(&parse(&self.a, &keys)?) {
            if t[0] < 0 || t[1] < 0 {
                continue;
            }
            record(
                "a",
                &keys,
                &t,
                lemma41a_check(t[0], t[1], t[2]).map_err(|e| e.to_string())?,
            );
        }
        let keys = ["m", "k", "delta"];
        for t in product(&parse(&self.b, &keys)?) {
            if t[1] < 0 || t[2] < 0 || t[1] > t[0] {
                continue;
            }
            record(
                "b",
                &keys,
                &t,
                lemma41b_check(t[0], t[1], t[2]).map_err(|e| e.to_string())?,
            );
        }
        let keys = ["a", "c", "u", "r", "b"];
        for t in product(&parse(&self.c, &keys)?) {
            if t[1] < 0 || t[2] < 0 || t[3] < 0 || t[1] > t[0] {
                continue;
            }
            record(
                "c",
                &keys,
                &t,
                lemma41c_check(t[0], t[1], t[2], t[3], t[4]).map_err(|e| e.to_string())?,
            );
        }
        Ok((out, all))
    }
}
