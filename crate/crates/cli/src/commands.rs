use std::fmt::Write as _;

use atl::algebra::{format_g_basis, parse_element, strategy_by_name, to_g_basis, DEFAULT_MAX_LEN};
use atl::coxeter::{enumerate_fc, parse_letters};
use atl::morphisms::BraidWord;
use atl::traces::{invariant, trace_by_name};
use atl::verify::{resolve_suites, CheckResult, VerifyConfig};
use atl::{CoxeterGraph, Error, Scalar, TLElement};
use rayon::prelude::*;
use serde_json::json;

use crate::{Basis, Cli, Command, Config, Format, Kind};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Line { line: usize, source: Error },
    Io(std::io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Line { line, source } => write!(f, "line {line}: {source}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = &cli.cfg;
    match &cli.command {
        Command::Invariant { words, file } => cmd_invariant(cfg, &gather(words, file.as_deref())?),
        Command::Trace { elements, file } => cmd_trace(cfg, &gather(elements, file.as_deref())?),
        Command::Multiply { elements } => cmd_multiply(cfg, elements),
        Command::Reduce { letters } => cmd_reduce(cfg, letters),
        Command::EnumerateFc => cmd_enumerate(cfg),
        Command::Verify { suite } => cmd_verify(cfg, suite),
    }
}

/// Inputs paired with their 1-based line numbers; arguments come first.
fn gather(args: &[String], file: Option<&std::path::Path>) -> Result<Vec<(usize, String)>> {
    let mut out: Vec<(usize, String)> = args.iter().enumerate().map(|(i, a)| (i + 1, a.clone())).collect();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(CliError::Io)?;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if !line.is_empty() && !line.starts_with('#') {
                out.push((i + 1, line.to_string()));
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("no input given".into()));
    }
    Ok(out)
}

fn graph(cfg: &Config) -> Result<CoxeterGraph> {
    Ok(match cfg.kind {
        Kind::Affine => CoxeterGraph::affine(cfg.gens)?,
        Kind::Classical => CoxeterGraph::type_a(cfg.gens)?,
    })
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Affine => "affine",
        Kind::Classical => "classical",
    }
}

/// Evaluates `f` on every input, in parallel when `jobs > 1`, keeping order.
fn batch<T: Send>(
    cfg: &Config,
    inputs: &[(usize, String)],
    f: impl Fn(&str) -> atl::Result<T> + Sync,
) -> Result<Vec<T>> {
    let eval = |(line, text): &(usize, String)| f(text).map_err(|source| CliError::Line { line: *line, source });
    if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        pool.install(|| inputs.par_iter().map(eval).collect())
    } else {
        inputs.iter().map(eval).collect()
    }
}

fn json_line(out: &mut String, value: serde_json::Value) {
    out.push_str(&value.to_string());
    out.push('\n');
}

fn cmd_invariant(cfg: &Config, inputs: &[(usize, String)]) -> Result<Output> {
    let gens = cfg.gens;
    let values = batch(cfg, inputs, |text| invariant(&BraidWord::parse(gens, text)?))?;
    let mut out = String::new();
    for ((_, input), value) in inputs.iter().zip(values) {
        match cfg.format {
            Format::Text => writeln!(out, "{value}").unwrap(),
            Format::Json => json_line(&mut out, json!({"input": input, "gens": gens, "invariant": value.to_string()})),
        }
    }
    Ok(Output::ok(out))
}

fn cmd_trace(cfg: &Config, inputs: &[(usize, String)]) -> Result<Output> {
    let g = graph(cfg)?;
    let name = cfg.trace.clone().unwrap_or_else(|| match cfg.kind {
        Kind::Affine => "rho".into(),
        Kind::Classical => "jones".into(),
    });
    let trace = trace_by_name(&name)?;
    let values = batch(cfg, inputs, |text| trace.eval(&parse_element(text, g)?))?;
    let mut out = String::new();
    for ((_, input), value) in inputs.iter().zip(values) {
        match cfg.format {
            Format::Text => writeln!(out, "{value}").unwrap(),
            Format::Json => json_line(
                &mut out,
                json!({"input": input, "gens": cfg.gens, "type": kind_name(cfg.kind), "trace": name, "value": value.to_string()}),
            ),
        }
    }
    Ok(Output::ok(out))
}

fn render(cfg: &Config, x: &TLElement) -> Result<String> {
    Ok(match (cfg.format, cfg.basis) {
        (Format::Text, Basis::F) => x.to_string(),
        (Format::Text, Basis::G) => format_g_basis(&to_g_basis(x)?),
        (Format::Json, basis) => {
            let terms = match basis {
                Basis::F => x.to_json_terms(),
                Basis::G => {
                    let coords = to_g_basis(x)?;
                    TLElement::from_terms(x.graph(), coords.into_iter().map(|(w, c)| (c, w)))?.to_json_terms()
                }
            };
            let basis = if basis == Basis::F { "f" } else { "g" };
            json!({"gens": cfg.gens, "type": kind_name(cfg.kind), "basis": basis, "terms": terms}).to_string()
        }
    })
}

fn cmd_multiply(cfg: &Config, elements: &[String]) -> Result<Output> {
    let g = graph(cfg)?;
    let strategy = strategy_by_name(&cfg.strategy, cfg.seed)?;
    let max_len = cfg.max_len.unwrap_or(DEFAULT_MAX_LEN);
    let parsed = elements
        .iter()
        .enumerate()
        .map(|(i, e)| parse_element(e, g).map_err(|source| CliError::Line { line: i + 1, source }))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = TLElement::one(g);
    for x in &parsed {
        acc = acc.mul_with(x, strategy.as_ref(), max_len)?;
    }
    Ok(Output::ok(format!("{}\n", render(cfg, &acc)?)))
}

fn cmd_reduce(cfg: &Config, text: &str) -> Result<Output> {
    let g = graph(cfg)?;
    let strategy = strategy_by_name(&cfg.strategy, cfg.seed)?;
    let trimmed = text.trim();
    let inner = trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(trimmed);
    let letters = parse_letters(&g, inner)?;
    let (deltas, word) = strategy.product(&g, &[], &letters);
    let coeff = Scalar::delta().pow(deltas as i32)?;
    let w = atl::FcWord::new(g, &word)?;
    if let Some(limit) = cfg.max_len {
        if w.len() > limit {
            return Err(Error::LengthLimitExceeded { limit }.into());
        }
    }
    let x = TLElement::term(coeff, w);
    let stdout = match cfg.format {
        Format::Text => format!("{x}\n"),
        Format::Json => format!(
            "{}\n",
            json!({"input": text, "gens": cfg.gens, "delta_power": deltas, "terms": x.to_json_terms()})
        ),
    };
    Ok(Output::ok(stdout))
}

fn cmd_enumerate(cfg: &Config) -> Result<Output> {
    let g = graph(cfg)?;
    let words = enumerate_fc(&g, cfg.max_len, DEFAULT_MAX_LEN)?;
    let stdout = match cfg.format {
        Format::Text => words.iter().map(|w| format!("{w}\n")).collect(),
        Format::Json => {
            let list: Vec<Vec<String>> =
                words.iter().map(|w| w.letters().iter().map(|&s| g.letter_name(s)).collect()).collect();
            format!("{}\n", json!({"gens": cfg.gens, "type": kind_name(cfg.kind), "count": words.len(), "words": list}))
        }
    };
    Ok(Output::ok(stdout))
}

fn cmd_verify(cfg: &Config, suite: &str) -> Result<Output> {
    let suites = resolve_suites(suite)?;
    let vcfg = VerifyConfig {
        gens: cfg.gens,
        seed: cfg.seed,
        samples: cfg.samples,
        max_len: cfg.max_len.unwrap_or(6),
        kmax: cfg.kmax,
        ..VerifyConfig::default()
    };
    let run = |s: &dyn atl::verify::Suite| -> Vec<CheckResult> { s.run(&vcfg) };
    let results: Vec<CheckResult> = if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        pool.install(|| suites.par_iter().map(|s| run(s.as_ref())).collect::<Vec<_>>()).into_iter().flatten().collect()
    } else {
        suites.iter().flat_map(|s| run(s.as_ref())).collect()
    };
    let passed = results.iter().all(|r| r.passed);
    let mut out = String::new();
    match cfg.format {
        Format::Text => {
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {}: {} ({} cases, {} numeric)", r.suite, r.name, r.cases, r.numeric_cases).unwrap();
                for f in &r.failures {
                    writeln!(out, "    {f}").unwrap();
                }
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} checks, {failed} failed", results.len()).unwrap();
        }
        Format::Json => {
            json_line(&mut out, json!({"passed": passed, "checks": results}));
        }
    }
    Ok(Output { stdout: out, code: if passed { 0 } else { 1 } })
}
