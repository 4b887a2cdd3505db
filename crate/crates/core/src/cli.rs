//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 parse error, 2 assumption violation, 3 impossible
//! evidence, 4 oracle mismatch, 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::attribution::{
    default_candidates, rank_candidates, run_oracle_check, AttributionError, AttributionReport, Engine,
    OracleCheckConfig,
};
use crate::model::{validate_monotone_cpt, Candidate};
use crate::netformat::{parse_candidate, parse_evidence, parse_network};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_ASSUMPTION: i32 = 2;
pub const EXIT_IMPOSSIBLE_EVIDENCE: i32 = 3;
pub const EXIT_ORACLE_MISMATCH: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "rootcause", version, about = "Root-cause attribution for binary causal networks")]
pub struct CliConfig {
    /// Print extra diagnostics on stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a network and check CPT monotonicity.
    Validate {
        network: PathBuf,
    },
    /// Rank candidate root causes under evidence.
    Rank {
        network: PathBuf,
        /// Space-separated `name=0|1` observations.
        #[arg(long, default_value = "")]
        evidence: String,
        /// `{name,...}` or `none`; repeatable. Defaults to all singletons
        /// and prefixes.
        #[arg(long = "candidate")]
        candidates: Vec<String>,
        #[arg(long, value_enum, default_value_t = EngineArg::Closed)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = OutputMode::Table)]
        output: OutputMode,
    },
    /// Compare the closed form with enumeration on random monotone models.
    OracleCheck {
        /// Number of cause variables.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=6))]
        p: u64,
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Closed,
    Oracle,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Closed => Engine::ClosedForm,
            EngineArg::Oracle => Engine::Oracle,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Table,
    Records,
}

/// Fixed four decimals, ties to even on the exact binary value.
pub fn format4(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

fn opt4(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), format4)
}

fn opt_full(v: Option<f64>) -> String {
    v.map_or_else(|| "na".to_string(), |x| x.to_string())
}

pub fn render_table(report: &AttributionReport) -> String {
    let width = report.rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max("candidate".len());
    let both = report.rows.iter().any(|r| r.discrepancy.is_some());
    let mut out = String::new();
    out.push_str(&format!("network   {}\n", report.fingerprint));
    let ev = if report.evidence.is_empty() { "(none)" } else { &report.evidence };
    out.push_str(&format!("evidence  {ev}\n"));
    out.push_str(&format!("{:<width$}  {:>7}  {:>7}  {:>9}", "candidate", "PRC", "PostTCE", "posterior"));
    if both {
        out.push_str(&format!("  {:>9}", "delta"));
    }
    out.push('\n');
    for r in &report.rows {
        out.push_str(&format!(
            "{:<width$}  {:>7}  {:>7}  {:>9}",
            r.label,
            format4(r.prc),
            opt4(r.posttce),
            opt4(r.posterior)
        ));
        if both {
            out.push_str(&format!("  {:>9}", r.discrepancy.map_or_else(|| "-".to_string(), |d| format!("{d:.1e}"))));
        }
        out.push('\n');
    }
    out
}

pub fn render_records(report: &AttributionReport) -> String {
    let ev = if report.evidence.is_empty() { "-".to_string() } else { report.evidence.replace(' ', ",") };
    let mut out = format!(
        "network={} evidence={ev} oracle_fallback={}\n",
        report.fingerprint, report.oracle_fallback
    );
    for (rank, r) in report.rows.iter().enumerate() {
        out.push_str(&format!(
            "rank={} candidate={} prc={} posttce={} posterior={} engine={}",
            rank + 1,
            r.label,
            r.prc,
            opt_full(r.posttce),
            opt_full(r.posterior),
            r.engine.as_str()
        ));
        if let Some(d) = r.discrepancy {
            out.push_str(&format!(" delta={d}"));
        }
        out.push('\n');
    }
    out
}

fn read_network(path: &PathBuf, err: &mut dyn Write) -> Result<crate::model::Network, i32> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return Err(EXIT_PARSE);
        }
    };
    parse_network(&text).map_err(|e| {
        let _ = writeln!(err, "{}:{e}", path.display());
        EXIT_PARSE
    })
}

fn attribution_exit(e: &AttributionError) -> i32 {
    match e {
        AttributionError::ImpossibleEvidence => EXIT_IMPOSSIBLE_EVIDENCE,
        AttributionError::NonMonotone(_) => EXIT_ASSUMPTION,
        AttributionError::NoCandidates => EXIT_USAGE,
        _ => EXIT_ASSUMPTION,
    }
}

fn cmd_validate(path: &PathBuf, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let net = match read_network(path, err) {
        Ok(n) => n,
        Err(code) => return code,
    };
    let report = validate_monotone_cpt(&net);
    if report.is_monotone() {
        let _ = writeln!(out, "ok: {} causes, outcome {}, CPTs monotone", net.p(), net.outcome_name());
        return EXIT_OK;
    }
    for v in &report.violations {
        let _ = writeln!(
            err,
            "monotonicity violation: {} row {} = {} exceeds row {} = {}",
            v.variable, v.lower_row, v.lower_prob, v.upper_row, v.upper_prob
        );
    }
    EXIT_ASSUMPTION
}

fn cmd_rank(
    path: &PathBuf,
    evidence: &str,
    candidates: &[String],
    engine: Engine,
    output: OutputMode,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let net = match read_network(path, err) {
        Ok(n) => n,
        Err(code) => return code,
    };
    let e = match parse_evidence(&net, evidence) {
        Ok(e) => e,
        Err(d) => {
            let _ = writeln!(err, "--evidence:{d}");
            return EXIT_PARSE;
        }
    };
    let list: Vec<Candidate> = if candidates.is_empty() {
        default_candidates(net.p())
    } else {
        let mut list = Vec::new();
        for c in candidates {
            match parse_candidate(&net, c) {
                Ok(c) => list.push(c),
                Err(d) => {
                    let _ = writeln!(err, "--candidate:{d}");
                    return EXIT_PARSE;
                }
            }
        }
        list
    };
    let report = match rank_candidates(&net, &list, &e, engine) {
        Ok(r) => r,
        Err(a) => {
            let _ = writeln!(err, "error: {a}");
            return attribution_exit(&a);
        }
    };
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let text = match output {
        OutputMode::Table => render_table(&report),
        OutputMode::Records => render_records(&report),
    };
    let _ = out.write_all(text.as_bytes());
    EXIT_OK
}

fn cmd_oracle_check(p: usize, seeds: u64, seed: u64, tolerance: f64, verbose: u8, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let config = OracleCheckConfig { p_values: vec![p], seeds, base_seed: seed, tolerance, ..Default::default() };
    let summary = match run_oracle_check(&config) {
        Ok(s) => s,
        Err(a) => {
            let _ = writeln!(err, "error: {a}");
            return attribution_exit(&a);
        }
    };
    let _ = writeln!(
        out,
        "models={} comparisons={} max_delta={:e} tolerance={:e}",
        summary.models, summary.comparisons, summary.max_delta, tolerance
    );
    if let Some(w) = &summary.worst {
        let ev = if w.evidence.is_empty() { "-".to_string() } else { w.evidence.replace(' ', ",") };
        let _ = writeln!(
            out,
            "worst seed={} index={} p={} candidate={} evidence={ev} closed={} oracle={}",
            seed, w.seed_index, w.p, w.candidate, w.closed_form, w.oracle
        );
    }
    if verbose > 0 {
        for f in &summary.failures {
            let _ = writeln!(err, "mismatch index={} candidate={} evidence=\"{}\" delta={:e}", f.seed_index, f.candidate, f.evidence, f.delta());
        }
    }
    if summary.passed() {
        EXIT_OK
    } else {
        let _ = writeln!(err, "{} comparisons exceed tolerance {:e}", summary.failures.len(), tolerance);
        EXIT_ORACLE_MISMATCH
    }
}

/// Parses `args` (program name first) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match &config.command {
        Command::Validate { network } => cmd_validate(network, out, err),
        Command::Rank { network, evidence, candidates, engine, output } => {
            cmd_rank(network, evidence, candidates, (*engine).into(), *output, out, err)
        }
        Command::OracleCheck { p, seeds, seed, tolerance } => {
            cmd_oracle_check(*p as usize, *seeds, *seed, *tolerance, config.verbose, out, err)
        }
    }
}
