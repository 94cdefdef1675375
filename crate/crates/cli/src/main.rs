//! Command-line front end: JSON dumps of modules, `Psi` and canonical bases,
//! identity checks, and the family verification driver.
//!
//! Exit codes: 0 all checks passed, 1 mathematical mismatch, 2 usage or
//! configuration error, 3 internal integrity failure.

mod ranges;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use sl3canon::canonical::{
    check_sigma_image, sigma_closure_check, theorem31_verify, SigmaReport, VerificationReport,
};
use sl3canon::engine::{Engine, CACHE_DIR_ENV};
use sl3canon::repmod::{build_highest_module, build_lowest_module};
use sl3canon::tensorspace::Params;
use sl3canon::udot::{FamilyId, FamilyParams, UdotExpr};
use sl3canon::Error;

use ranges::IdentityRanges;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "sl3canon",
    version,
    about = "Canonical bases of the modified quantum group of type A2"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for the on-disk Psi cache (overrides the environment variable).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the q-binomial summation identities over parameter ranges.
    Identities(IdentityRanges),
    /// Dump a highest (or lowest) weight module.
    Module {
        #[arg(long, value_parser = pair)]
        weight: (i64, i64),
        #[arg(long)]
        lowest: bool,
    },
    /// Dump the bar involution of a tensor space.
    Psi {
        #[arg(long, value_parser = params)]
        params: Params,
    },
    /// Dump the canonical basis of a tensor space.
    Canbasis {
        #[arg(long, value_parser = params)]
        params: Params,
    },
    /// Verify one family member, or an arbitrary expression, on a window.
    Verify {
        #[command(flatten)]
        target: Target,
        /// An expression such as `e1^2 1[(-3,0)] f1^1`; checked to be canonical or zero.
        #[arg(long, conflicts_with_all = ["family", "exps", "weight"])]
        expr: Option<String>,
    },
    /// Verify every family over all exponent tuples and admissible weights.
    VerifyAll {
        #[arg(long, default_value_t = 2)]
        max_exp: i64,
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// Bound on |l| and |m|.
        #[arg(long, default_value_t = 6)]
        idem_bound: i64,
        /// Comma-separated family ids (`1`, `2'`, `m3`, `m4'`); default all 52.
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
    },
    /// Check that the sigma image of a family member is canonical or zero.
    SigmaCheck {
        #[command(flatten)]
        target: Target,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    family: Option<String>,
    /// h,k,j,u,v,w
    #[arg(long, value_parser = six, allow_hyphen_values = true)]
    exps: Option<[i64; 6]>,
    /// l,m
    #[arg(long, value_parser = pair, allow_hyphen_values = true)]
    weight: Option<(i64, i64)>,
    #[arg(long, default_value_t = 4)]
    window: i64,
}

fn ints(s: &str, n: usize) -> Result<Vec<i64>, String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated integers"));
    }
    Ok(v)
}

fn pair(s: &str) -> Result<(i64, i64), String> {
    let v = ints(s, 2)?;
    Ok((v[0], v[1]))
}

fn six(s: &str) -> Result<[i64; 6], String> {
    let v = ints(s, 6)?;
    Ok([v[0], v[1], v[2], v[3], v[4], v[5]])
}

fn params(s: &str) -> Result<Params, String> {
    let v = ints(s, 4)?;
    if v.iter().any(|&x| x < 0) {
        return Err("parameters must be nonnegative".into());
    }
    Ok(Params::new(v[0], v[1], v[2], v[3]))
}

/// Failure modes mapped onto exit codes.
enum Fail {
    Usage(String),
    Integrity(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        if e.is_integrity_failure() {
            Fail::Integrity(e.to_string())
        } else {
            Fail::Usage(e.to_string())
        }
    }
}

struct Outcome {
    report: Value,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let engine = match &cli.cache_dir {
        Some(dir) => Engine::new(Some(dir.clone())),
        None => Engine::from_env(),
    };
    let result = dispatch(&cli.cmd, &engine);
    for note in engine.notes() {
        eprintln!("note: {note}");
    }
    match result {
        Ok(out) => {
            let mut report = json!({ "schema": SCHEMA_VERSION });
            report
                .as_object_mut()
                .unwrap()
                .extend(out.report.as_object().cloned().unwrap_or_default());
            report["passed"] = json!(out.passed);
            if let Err(e) = emit(&report, cli.out.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Integrity(m)) => {
            eprintln!("integrity failure: {m}");
            ExitCode::from(3)
        }
    }
}

fn emit(report: &Value, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(report).expect("json values serialize");
    match out {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn dispatch(cmd: &Cmd, engine: &Engine) -> Result<Outcome, Fail> {
    match cmd {
        Cmd::Identities(r) => {
            let (results, passed) = r.run().map_err(Fail::Usage)?;
            let failed = results
                .iter()
                .filter(|x| !x["holds"].as_bool().unwrap_or(false))
                .count();
            Ok(Outcome {
                report: json!({ "command": "identities", "checked": results.len(), "failed": failed, "results": results }),
                passed,
            })
        }
        Cmd::Module {
            weight: (a, b),
            lowest,
        } => {
            if *a < 0 || *b < 0 {
                return Err(Fail::Usage(format!("weight ({a},{b}) is not dominant")));
            }
            let m = if *lowest {
                build_lowest_module(*a, *b)?
            } else {
                build_highest_module(*a, *b)?
            };
            Ok(Outcome {
                report: json!({ "command": "module", "module": to_value(&m) }),
                passed: true,
            })
        }
        Cmd::Psi { params } => {
            let space = engine.space(*params)?;
            let check = space.psi.check(&space.ts);
            Ok(Outcome {
                passed: check.ok(),
                report: json!({
                    "command": "psi",
                    "params": to_value(params),
                    "dimension": space.ts.dim(),
                    "pairs": pair_table(&space.ts),
                    "check": to_value(&check),
                    "psi": to_value(&space.psi),
                }),
            })
        }
        Cmd::Canbasis { params } => {
            let space = engine.space(*params)?;
            let elements: Vec<Value> = space
                .basis
                .iter()
                .map(|e| {
                    let (b1, b2) = space.ts.pair(e.pair);
                    json!({
                        "pair": e.pair,
                        "lowest": b1.to_string(),
                        "highest": b2.to_string(),
                        "vector": e.vector.iter().map(|(p, c)| json!([p, to_value(c)])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Outcome {
                report: json!({
                    "command": "canbasis",
                    "params": to_value(params),
                    "pairs": pair_table(&space.ts),
                    "elements": elements,
                }),
                passed: true,
            })
        }
        Cmd::Verify {
            target,
            expr: Some(text),
        } => {
            let expr: UdotExpr = text.parse()?;
            let r = check_sigma_image(engine, &expr, target.window)?;
            Ok(sigma_outcome("verify", &expr.to_string(), r))
        }
        Cmd::Verify { target, expr: None } => {
            let (id, p) = target.resolve()?;
            let r = theorem31_verify(engine, id, p, target.window, None)?;
            Ok(Outcome {
                passed: r.passed(),
                report: json!({ "command": "verify", "report": to_value(&r) }),
            })
        }
        Cmd::VerifyAll {
            max_exp,
            window,
            idem_bound,
            families,
        } => verify_all(engine, *max_exp, *window, *idem_bound, families),
        Cmd::SigmaCheck { target } => {
            let (id, p) = target.resolve()?;
            let r = sigma_closure_check(engine, id, p, target.window)?;
            Ok(sigma_outcome(
                "sigma-check",
                &format!("sigma of family {id}"),
                r,
            ))
        }
    }
}

fn pair_table(ts: &sl3canon::tensorspace::TensorSpace) -> Vec<Value> {
    (0..ts.dim())
        .map(|p| {
            let (b1, b2) = ts.pair(p);
            json!([b1.to_string(), b2.to_string()])
        })
        .collect()
}

fn sigma_outcome(command: &str, subject: &str, r: SigmaReport) -> Outcome {
    Outcome {
        passed: r.passed(),
        report: json!({ "command": command, "subject": subject, "report": to_value(&r) }),
    }
}

impl Target {
    fn resolve(&self) -> Result<(FamilyId, FamilyParams), Fail> {
        let missing = |f: &str| Fail::Usage(format!("--{f} is required"));
        let id: FamilyId = self
            .family
            .as_deref()
            .ok_or_else(|| missing("family"))?
            .parse()?;
        let exps = self.exps.ok_or_else(|| missing("exps"))?;
        let (l, m) = self.weight.ok_or_else(|| missing("weight"))?;
        if self.window < 0 {
            return Err(Fail::Usage("window must be nonnegative".into()));
        }
        Ok((id, FamilyParams::new(exps, l, m)))
    }
}

fn exponent_tuples(max: i64) -> Vec<[i64; 6]> {
    let r = 0..=max;
    let mut out = Vec::new();
    for h in r.clone() {
        for k in r.clone() {
            for j in r.clone() {
                for u in r.clone() {
                    for v in r.clone() {
                        for w in r.clone() {
                            if k >= h + j && v >= u + w {
                                out.push([h, k, j, u, v, w]);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn verify_all(
    engine: &Engine,
    max_exp: i64,
    window: i64,
    bound: i64,
    families: &[String],
) -> Result<Outcome, Fail> {
    if max_exp < 0 || window < 0 || bound < 0 {
        return Err(Fail::Usage(
            "--max-exp, --window and --idem-bound must be nonnegative".into(),
        ));
    }
    let ids: Vec<FamilyId> = if families.is_empty() {
        FamilyId::all()
    } else {
        families
            .iter()
            .map(|f| f.trim().parse())
            .collect::<Result<_, _>>()?
    };
    let mut jobs = Vec::new();
    for &id in &ids {
        for e in exponent_tuples(max_exp) {
            for l in -bound..=bound {
                for m in -bound..=bound {
                    jobs.push((id, FamilyParams::new(e, l, m)));
                }
            }
        }
    }
    let reports: Vec<VerificationReport> = jobs
        .into_par_iter()
        .map(|(id, p)| theorem31_verify(engine, id, p, window, None))
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .filter(|r| r.admissible)
        .collect();
    let mismatches: usize = reports.iter().map(VerificationReport::mismatches).sum();
    let canonical: usize = reports
        .iter()
        .map(VerificationReport::canonical_matches)
        .sum();
    let evaluations: usize = reports.iter().map(|r| r.outcomes.len()).sum();
    let per_family: Vec<Value> = ids
        .iter()
        .map(|id| {
            let prefix = format!("family {id} ");
            let mine: Vec<&VerificationReport> = reports
                .iter()
                .filter(|r| r.subject.starts_with(&prefix))
                .collect();
            json!({
                "family": id.to_string(),
                "admissible": mine.len(),
                "canonical": mine.iter().map(|r| r.canonical_matches()).sum::<usize>(),
                "mismatches": mine.iter().map(|r| r.mismatches()).sum::<usize>(),
            })
        })
        .collect();
    eprintln!(
        "verify-all: {} admissible elements, {evaluations} evaluations, {canonical} canonical, {mismatches} mismatches",
        reports.len()
    );
    Ok(Outcome {
        passed: mismatches == 0,
        report: json!({
            "command": "verify-all",
            "config": { "max_exp": max_exp, "window": window, "idem_bound": bound, "cache_env": CACHE_DIR_ENV },
            "admissible": reports.len(),
            "evaluations": evaluations,
            "canonical": canonical,
            "mismatches": mismatches,
            "families": per_family,
            "reports": to_value(&reports),
        }),
    })
}
