use std::fs;

use nojunta::bounds::{
    construct_crt_witness, corollary_dmax, exhaustive_sym_scan_parallel, monte_carlo_lemma4,
    verify_nonsym_bound, verify_sym_bound, CorollaryInput, SearchMode,
};
use nojunta::enumerate::random_function_in_stream;
use nojunta::junta::checks::check_all;
use nojunta::junta::{
    build_digraph, emit_dot, find_nojunta_restriction, verify_theorem_nojunta,
    verify_theorem_nojunta_parallel,
};
use nojunta::modpoly::{degree_crt_check, mobius_transform, prime_power_degrees, Modulus, Ring};
use nojunta::{Error, Partition, Restriction, TableFile, TruthTable};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Experiment, Format, TableArgs, Verify};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid table file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::TheoremViolation { .. } | Error::ClaimViolation { .. }) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Echo of the invocation, included in every report.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<String>,
    pub restrict: Option<String>,
    pub m: Vec<u64>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub workers: u64,
    pub format: Format,
    pub output: Option<String>,
}

pub struct Outcome {
    pub config: RunConfig,
    pub result: Value,
    pub violation: bool,
    pub csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    pub dot: Option<String>,
}

impl Outcome {
    fn new(config: RunConfig, result: impl Serialize) -> CliResult<Outcome> {
        Ok(Outcome { config, result: serde_json::to_value(result)?, violation: false, csv: None, dot: None })
    }
}

struct Loaded {
    table: TruthTable,
    /// Original labels of the table's variables.
    labels: Vec<usize>,
}

fn load(args: &TableArgs) -> CliResult<Loaded> {
    let table = match (&args.path, &args.hex, args.n) {
        (Some(path), _, _) => {
            let file: TableFile = serde_json::from_str(&fs::read_to_string(path)?)?;
            TruthTable::try_from(file)?
        }
        (None, Some(hex), Some(n)) => TruthTable::from_hex(n, hex)?,
        _ => return Err(CliError::Usage("give a table file or --hex with --n".into())),
    };
    match &args.restrict {
        None => {
            let labels = (1..=table.num_vars()).collect();
            Ok(Loaded { table, labels })
        }
        Some(spec) => {
            let rho: Restriction = spec.parse()?;
            let sub = table.restrict(&rho)?;
            Ok(Loaded { table: sub.table, labels: sub.free })
        }
    }
}

fn modulus(m: u64) -> CliResult<Modulus> {
    Ok(Modulus::new(m)?)
}

fn config(cli: &Cli, command: &str) -> RunConfig {
    RunConfig {
        command: command.into(),
        input: None,
        restrict: None,
        m: Vec::new(),
        n: None,
        k: None,
        samples: None,
        seed: None,
        workers: cli.workers,
        format: cli.format,
        output: cli.output.as_ref().map(|p| p.display().to_string()),
    }
}

fn with_table(mut c: RunConfig, t: &TableArgs) -> RunConfig {
    c.input = t.describe();
    c.restrict = t.restrict.clone();
    c.n = t.n;
    c
}

fn relabel(set: nojunta::VarSet, labels: &[usize]) -> Vec<usize> {
    set.iter().map(|y| labels[y - 1]).collect()
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let workers = cli.workers as usize;
    match &cli.command {
        Command::Analyze(t) => {
            let l = load(t)?;
            let tt = &l.table;
            let profile = tt.symmetry_profile();
            let result = json!({
                "n": tt.num_vars(),
                "hex": tt.to_hex(),
                "variables": l.labels,
                "ones": tt.count_ones(),
                "useless": relabel(tt.useless_set(), &l.labels),
                "nondegenerate": tt.is_nondegenerate(),
                "symmetric": profile.is_some(),
                "profile": profile.map(|p| nojunta::bounds::profile_bits(&p)),
            });
            Outcome::new(with_table(config(cli, "analyze"), t), result)
        }
        Command::FindNojunta(t) => {
            let l = load(t)?;
            let cert = find_nojunta_restriction(&l.table)?;
            let free: Vec<usize> = cert.subfunction.free.iter().map(|&y| l.labels[y - 1]).collect();
            let result = json!({
                "pivot": l.labels[cert.pivot - 1],
                "bit": cert.bit as u8,
                "subfunction": cert.subfunction.table,
                "free": free,
            });
            Outcome::new(with_table(config(cli, "find-nojunta"), t), result)
        }
        Command::Digraph { table: t, dot } => {
            let l = load(t)?;
            let g = build_digraph(&l.table)?;
            let violations = check_all(&l.table)?;
            let mut out = Outcome::new(
                with_table(config(cli, "digraph"), t),
                json!({ "digraph": g, "useless": l.table.useless_set(), "violations": violations }),
            )?;
            out.violation = !violations.is_empty();
            if *dot || cli.format == Format::Dot {
                out.dot = Some(emit_dot(&g));
            }
            Ok(out)
        }
        Command::Degree { table: t, m, terms } => {
            let l = load(t)?;
            let ring = match m {
                Some(m) => Ring::Mod(modulus(*m)?),
                None => Ring::Integers,
            };
            let poly = mobius_transform(&l.table, &ring).with_labels(l.labels.clone())?;
            let mut result = json!({ "n": l.table.num_vars(), "m": ring, "degree": poly.degree() });
            if let Ring::Mod(md) = &ring {
                let factors: Vec<Value> = md
                    .factors()
                    .iter()
                    .zip(prime_power_degrees(&l.table, md))
                    .map(|(f, d)| json!({ "q": f.value(), "degree": d }))
                    .collect();
                result["prime_power_degrees"] = json!(factors);
                result["crt_consistent"] = json!(degree_crt_check(&l.table, md));
            }
            if *terms {
                result["polynomial"] = serde_json::to_value(&poly)?;
            }
            let mut c = with_table(config(cli, "degree"), t);
            c.m = m.iter().copied().collect();
            Outcome::new(c, result)
        }
        Command::Witness { table: t, m } => {
            let l = load(t)?;
            let md = modulus(*m)?;
            let bound = verify_sym_bound(&l.table, &md)?;
            let corollary = corollary_dmax(CorollaryInput::Symmetric(&bound));
            let mut c = with_table(config(cli, "witness"), t);
            c.m = vec![*m];
            let (witness, finding) = match construct_crt_witness(&l.table, &md) {
                Ok(w) => (Some(w), None),
                Err(Error::ClaimViolation { hex, reason }) => {
                    (None, Some(json!({ "hex": hex, "reason": reason })))
                }
                Err(e) => return Err(e.into()),
            };
            let violation = finding.is_some() || !bound.holds;
            let mut out = Outcome::new(
                c,
                json!({ "bound": bound, "witness": witness, "finding": finding, "corollary": corollary }),
            )?;
            out.violation = violation;
            Ok(out)
        }
        Command::Verify(v) => verify(cli, v, workers),
        Command::Experiment(Experiment::SecondMoment { n, k, samples, seed }) => {
            let report = monte_carlo_lemma4(*n, *k, *samples, *seed, workers)?;
            let emp = report.empirical.as_ref();
            let row = vec![
                n.to_string(),
                k.to_string(),
                report.expected.to_string(),
                emp.map(|e| e.mean.to_string()).unwrap_or_default(),
                emp.map(|e| e.stderr.to_string()).unwrap_or_default(),
                emp.map(|e| e.pr_zero.to_string()).unwrap_or_default(),
            ];
            let mut c = config(cli, "experiment second-moment");
            (c.n, c.k, c.samples, c.seed) = (Some(*n), Some(*k), Some(*samples), Some(*seed));
            let mut out = Outcome::new(c, &report)?;
            out.csv = Some((vec!["n", "k", "expected", "empirical_mean", "stderr", "pr_zero"], vec![row]));
            Ok(out)
        }
    }
}

fn parse_partition(s: &str) -> CliResult<Partition> {
    let bad = || CliError::Usage(format!("malformed partition {s:?}, expected W/T"));
    let (w, t) = s.split_once('/').ok_or_else(bad)?;
    let w = w.trim().parse().map_err(|_| bad())?;
    let t = t.trim().parse().map_err(|_| bad())?;
    Ok(Partition::new(w, t)?)
}

fn verify(cli: &Cli, v: &Verify, workers: usize) -> CliResult<Outcome> {
    match v {
        Verify::Nojunta { n, partition } => {
            let report = match partition {
                Some(p) => verify_theorem_nojunta(*n, parse_partition(p)?)?,
                None => verify_theorem_nojunta_parallel(*n, workers)?,
            };
            let mut c = config(cli, "verify nojunta");
            c.n = Some(*n);
            let row = vec![n.to_string(), report.checked.to_string(), report.failures.len().to_string()];
            let mut out = Outcome::new(c, &report)?;
            out.violation = !report.failures.is_empty();
            out.csv = Some((vec!["n", "checked", "failures"], vec![row]));
            Ok(out)
        }
        Verify::SymBound { table: t, m, n_from } => {
            let moduli = m.iter().map(|&m| modulus(m)).collect::<CliResult<Vec<_>>>()?;
            let mut c = with_table(config(cli, "verify sym-bound"), t);
            c.m = m.clone();
            if t.given() {
                let l = load(t)?;
                let mut violation = false;
                let mut reports = Vec::new();
                let mut rows = Vec::new();
                for md in &moduli {
                    let bound = verify_sym_bound(&l.table, md)?;
                    let witness = if md.rank() >= 2 {
                        match construct_crt_witness(&l.table, md) {
                            Ok(w) => json!(w),
                            Err(Error::ClaimViolation { reason, .. }) => {
                                violation = true;
                                json!({ "finding": reason })
                            }
                            Err(e) => return Err(e.into()),
                        }
                    } else {
                        Value::Null
                    };
                    violation |= !bound.holds;
                    rows.push(vec![
                        l.table.num_vars().to_string(),
                        md.value().to_string(),
                        bound.product.to_string(),
                        bound.holds.to_string(),
                    ]);
                    reports.push(json!({ "bound": bound, "witness": witness }));
                }
                let mut out = Outcome::new(c, reports)?;
                out.violation = violation;
                out.csv = Some((vec!["n", "m", "product", "holds"], rows));
                return Ok(out);
            }
            let n = t.n.ok_or_else(|| CliError::Usage("give a table or --n".into()))?;
            let from = n_from.unwrap_or(n);
            if from > n || from < 1 {
                return Err(CliError::Usage(format!("--n-from {from} must lie in 1..={n}")));
            }
            let mut summaries = Vec::new();
            let mut rows = Vec::new();
            let mut violation = false;
            for size in from..=n {
                for md in &moduli {
                    let s = exhaustive_sym_scan_parallel(size, md, workers)?;
                    violation |= !s.all_hold || !s.findings.is_empty();
                    rows.push(vec![
                        size.to_string(),
                        md.value().to_string(),
                        s.count.to_string(),
                        s.min_product.map(|p| p.to_string()).unwrap_or_default(),
                        s.all_hold.to_string(),
                        s.findings.len().to_string(),
                    ]);
                    summaries.push(s);
                }
            }
            let mut out = Outcome::new(c, summaries)?;
            out.violation = violation;
            out.csv = Some((vec!["n", "m", "count", "min_product", "all_hold", "findings"], rows));
            Ok(out)
        }
        Verify::NonsymBound { table: t, m, count, seed, cap, sampled } => {
            let md = modulus(*m)?;
            let mode = if *sampled {
                let seed = seed.ok_or_else(|| CliError::Usage("--sampled needs --seed".into()))?;
                SearchMode::Sampled { cap: *cap, seed }
            } else {
                SearchMode::Lexicographic { cap: *cap }
            };
            let mut c = with_table(config(cli, "verify nonsym-bound"), t);
            c.m = vec![*m];
            c.seed = *seed;
            let tables: Vec<TruthTable> = if t.given() {
                vec![load(t)?.table]
            } else {
                let n = t.n.ok_or_else(|| CliError::Usage("give a table or --n with --seed".into()))?;
                let seed = seed.ok_or_else(|| CliError::Usage("random functions need --seed".into()))?;
                let count = count.unwrap_or(1);
                c.samples = Some(count);
                (0..count).map(|i| random_function_in_stream(n, seed, i)).collect::<Result<_, _>>()?
            };
            let mut reports = Vec::new();
            let mut rows = Vec::new();
            let mut misses = Vec::new();
            let mut violation = false;
            for (i, tt) in tables.iter().enumerate() {
                let rep = verify_nonsym_bound(tt, &md, mode)?;
                if rep.found.is_none() {
                    misses.push(i);
                }
                violation |= rep.holds == Some(false) || rep.monotone == Some(false);
                rows.push(vec![
                    i.to_string(),
                    rep.n.to_string(),
                    rep.k.to_string(),
                    rep.found.is_some().to_string(),
                    rep.examined.to_string(),
                    rep.product.map(|p| p.to_string()).unwrap_or_default(),
                    rep.holds.map(|h| h.to_string()).unwrap_or_default(),
                ]);
                let corollary = corollary_dmax(CorollaryInput::NonSymmetric(&rep));
                reports.push(json!({ "report": rep, "corollary": corollary }));
            }
            let result = json!({
                "functions": tables.len(),
                "found": tables.len() - misses.len(),
                "misses": misses,
                "results": reports,
            });
            let mut out = Outcome::new(c, result)?;
            out.violation = violation;
            out.csv = Some((vec!["index", "n", "k", "found", "examined", "product", "holds"], rows));
            Ok(out)
        }
    }
}
