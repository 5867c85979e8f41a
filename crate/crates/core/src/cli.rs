//! The `sdom` command line. Lives in the library so that the exit-code and
//! output contracts can be tested without spawning processes.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::construction::{build_d, build_d_star};
use crate::domination::{
    double_roman_labeling_from_d, gamma_dr_formula, gamma_formula, gamma_r_formula, is_dominating,
    is_double_roman, is_roman, roman_labeling_from_d, witness, DominationReport, Variant,
};
use crate::error::Error;
use crate::export;
use crate::labeling::{LabelingDoc, Mode};
use crate::lemmas::{check_lemmas, LemmaOptions, DEFAULT_PAIR_THRESHOLD, DEFAULT_SAMPLE_SIZE};
use crate::solver::{degree_lower_bound, solve, solve_traced, SolverConfig, DEFAULT_SOLVER_CAP};
use crate::vertex_set::{SetKind, VertexSet, VertexSetDoc};
use crate::word::{GraphParams, Limits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "sdom",
    version,
    about = "Domination on Sierpinski graphs S(K_n, t)"
)]
pub struct Cli {
    /// Worker threads; 0 uses every core, 1 gives deterministic solver traces.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Cap on n^t for whole-graph work (overrides SDOM_VERTEX_CAP).
    #[arg(long, global = true)]
    pub vertex_cap: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Base clique size (n >= 2).
    #[arg(short = 'n', long = "n")]
    pub n: u32,
    /// Iteration depth (t >= 1).
    #[arg(short = 't', long = "t")]
    pub t: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Edgelist,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    D,
    DStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Roman,
    DoubleRoman,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Plain,
    Roman,
    DoubleRoman,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Roman => Variant::Roman,
            VariantArg::DoubleRoman => Variant::DoubleRoman,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the graph as an edge list, DOT or JSON.
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build D_{n,t} or D*_{n,t}.
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = KindArg::D)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Roman or double Roman labeling derived from D_{n,t}.
    Label {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a vertex-set or labeling JSON document (`-` reads stdin).
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the exact solver and compare with the closed form and the witness.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
        /// Double Roman only: search values {0, 2, 3}.
        #[arg(long)]
        restrict_values: bool,
        /// Largest n^t the solver accepts.
        #[arg(long, default_value_t = DEFAULT_SOLVER_CAP)]
        solver_cap: usize,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        /// Print the search trace to stderr.
        #[arg(short, long)]
        verbose: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// CSV of closed-form gamma, gamma_R, gamma_dR.
    Table {
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        t_min: u32,
        #[arg(long, default_value_t = 8)]
        t_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the structural properties of D_{n,t}; JSON report.
    CheckLemmas {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_SIZE)]
        sample_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pair count above which the distance check is sampled.
        #[arg(long, default_value_t = DEFAULT_PAIR_THRESHOLD)]
        pair_threshold: u64,
    },
}

/// Standard streams for one invocation.
pub struct Io<'a> {
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
    pub stdin: &'a mut dyn Read,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { io.stderr } else { io.stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli, io) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(io.stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } | Error::Overflow(_) => EXIT_CAPACITY,
            Error::BudgetExhausted { .. } => EXIT_SOLVER,
            Error::InvalidParams(_)
            | Error::InvalidWord(_)
            | Error::Parse(_)
            | Error::SolverConfig(_)
            | Error::InvalidValue { .. } => EXIT_USAGE,
            _ => EXIT_CHECK_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn params(args: &GraphArgs) -> Result<GraphParams, Failure> {
    GraphParams::new(args.n, args.t).map_err(|e| usage(e.to_string()))
}

fn emit(io: &mut Io<'_>, out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => io.stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn dispatch(cli: Cli, io: &mut Io<'_>) -> Result<i32, Failure> {
    let mut limits = Limits::from_env()?;
    if let Some(cap) = cli.vertex_cap {
        limits.vertex_cap = cap;
    }
    if cli.threads > 0 {
        // Only the first configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match cli.command {
        Command::Gen { graph, format, out } => {
            let g = params(&graph)?;
            let text = match format {
                Format::Edgelist => export::to_edge_list(&g, &limits)?,
                Format::Dot => export::to_dot(&g, &limits)?,
                Format::Json => with_newline(export::to_json(&g, &limits)?),
                other => return Err(usage(format!("gen does not support {other:?} output"))),
            };
            emit(io, &out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Construct {
            graph,
            kind,
            format,
            out,
        } => {
            let g = params(&graph)?;
            let (set, kind) = match kind {
                KindArg::D => (build_d(&g, &limits)?, SetKind::D),
                KindArg::DStar => (build_d_star(&g, &limits)?, SetKind::DStar),
            };
            let text = match format {
                Format::Json => with_newline(set.to_json(kind)),
                Format::Text => set.iter().map(|w| format!("{w}\n")).collect(),
                other => {
                    return Err(usage(format!(
                        "construct does not support {other:?} output"
                    )))
                }
            };
            emit(io, &out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Label { graph, mode, out } => {
            let g = params(&graph)?;
            let f = match mode {
                ModeArg::Roman => roman_labeling_from_d(&g, &limits)?,
                ModeArg::DoubleRoman => double_roman_labeling_from_d(&g, &limits)?,
            };
            emit(io, &out, &with_newline(f.to_json()))?;
            Ok(EXIT_OK)
        }
        Command::Verify { input, format } => verify(io, &input, format, &limits),
        Command::Solve {
            graph,
            variant,
            restrict_values,
            solver_cap,
            time_budget,
            verbose,
            format,
        } => {
            let g = params(&graph)?;
            let mut cfg = SolverConfig::new(variant.into())
                .restricted(restrict_values)
                .with_threads(cli.threads);
            cfg.vertex_cap = solver_cap;
            if let Some(secs) = time_budget {
                let budget = Duration::try_from_secs_f64(secs)
                    .map_err(|_| usage(format!("invalid time budget {secs}")))?;
                cfg.time_budget = Some(budget);
            }
            run_solve(io, &g, &cfg, verbose, format, &limits)
        }
        Command::Table {
            n_min,
            n_max,
            t_min,
            t_max,
            out,
        } => {
            if n_min < 2 || t_min < 1 || n_min > n_max || t_min > t_max {
                return Err(usage(
                    "table needs 2 <= n_min <= n_max and 1 <= t_min <= t_max",
                ));
            }
            emit(io, &out, &table_csv(n_min..=n_max, t_min..=t_max))?;
            Ok(EXIT_OK)
        }
        Command::CheckLemmas {
            graph,
            sample_size,
            seed,
            pair_threshold,
        } => {
            let g = params(&graph)?;
            let opts = LemmaOptions {
                sample_size,
                seed,
                pair_threshold,
            };
            let report = check_lemmas(&g, &limits, &opts)?;
            io.stdout
                .write_all(with_newline(report.to_json()).as_bytes())?;
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

/// One CSV row per `(n, t)`; a cell that overflows reads `overflow`.
pub fn table_csv(ns: std::ops::RangeInclusive<u32>, ts: std::ops::RangeInclusive<u32>) -> String {
    let mut out = String::from("n,t,gamma,gamma_R,gamma_dR\n");
    for n in ns {
        for t in ts.clone() {
            let g = GraphParams::new(n, t).expect("ranges are validated");
            let cell = |r: crate::Result<u128>| {
                r.map_or_else(|_| "overflow".to_string(), |v| v.to_string())
            };
            out.push_str(&format!(
                "{n},{t},{},{},{}\n",
                cell(gamma_formula(&g)),
                cell(gamma_r_formula(&g)),
                cell(gamma_dr_formula(&g))
            ));
        }
    }
    out
}

fn verify(
    io: &mut Io<'_>,
    input: &PathBuf,
    format: Format,
    limits: &Limits,
) -> Result<i32, Failure> {
    let text = if input.as_os_str() == "-" {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(input)?
    };
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("input is not JSON: {e}")))?;
    let (what, n, t, weight, valid) = if value.get("members").is_some() {
        let (set, kind) = VertexSetDoc::parse(&text)?.into_set()?;
        let g = set.params();
        let (ok, what) = match kind {
            SetKind::D => (is_dominating(&g, &set, limits)?, "D"),
            SetKind::DStar => {
                // D* omits 1^t by definition; it is valid when adding it back dominates.
                let ones = g.extreme(1)?;
                let mut members = set.members().to_vec();
                members.push(ones.clone());
                let ok = !set.contains(&ones)
                    && is_dominating(&g, &VertexSet::new(g, members)?, limits)?;
                (ok, "D_star")
            }
        };
        (what, g.n(), g.t(), set.len() as u64, ok)
    } else if value.get("assignments").is_some() {
        let f = LabelingDoc::parse(&text)?.into_labeling()?;
        let g = f.params();
        let ok = match f.mode() {
            Mode::Roman => is_roman(&g, &f, limits)?,
            Mode::DoubleRoman => is_double_roman(&g, &f, limits)?,
        };
        (f.mode().name(), g.n(), g.t(), f.weight(), ok)
    } else {
        return Err(usage(
            "input is neither a vertex set nor a labeling document",
        ));
    };
    let text = match format {
        Format::Json => with_newline(crate::json::to_sorted_string(&serde_json::json!({
            "kind": what,
            "n": n,
            "t": t,
            "weight": weight,
            "valid": valid,
        }))),
        Format::Text => format!(
            "S(K_{n},{t}) {what}: weight {weight}, {}\n",
            if valid { "valid" } else { "INVALID" }
        ),
        other => return Err(usage(format!("verify does not support {other:?} output"))),
    };
    io.stdout.write_all(text.as_bytes())?;
    Ok(if valid { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn run_solve(
    io: &mut Io<'_>,
    g: &GraphParams,
    cfg: &SolverConfig,
    verbose: bool,
    format: Format,
    limits: &Limits,
) -> Result<i32, Failure> {
    if !matches!(format, Format::Text | Format::Json) {
        return Err(usage(format!("solve does not support {format:?} output")));
    }
    let variant = cfg.variant;
    let mut report = DominationReport::new(g, variant)?;
    let mut code = EXIT_OK;
    let mut note = None;
    match witness(g, variant, limits) {
        Ok((weight, valid)) => report = report.with_witness(weight, valid),
        Err(e @ Error::Capacity { .. }) => note = Some(format!("witness skipped: {e}")),
        Err(e) => return Err(e.into()),
    }
    let outcome = if verbose {
        let stderr = &mut *io.stderr;
        solve_traced(g, cfg, &mut |ev| {
            let _ = writeln!(stderr, "{ev}");
        })
    } else {
        solve(g, cfg)
    };
    match outcome {
        Ok(sol) => report = report.with_exact(sol.value),
        Err(Error::BudgetExhausted {
            incumbent,
            lower_bound,
        }) => {
            report.lower_bound = Some(lower_bound);
            note = Some(format!(
                "time budget exhausted; best incumbent {incumbent:?}"
            ));
            code = EXIT_SOLVER;
        }
        Err(e @ Error::Capacity { .. }) => {
            report.lower_bound = Some(degree_lower_bound(g, variant)?);
            note = Some(format!("exact solver skipped: {e}"));
            code = EXIT_SOLVER;
        }
        Err(e) => return Err(e.into()),
    }
    if code == EXIT_OK && !report.all_match() {
        code = EXIT_CHECK_FAILED;
    }
    let text = match format {
        Format::Json => {
            let mut value = crate::json::to_sorted_value(&report);
            if let Some(note) = &note {
                value["note"] = serde_json::Value::String(note.clone());
            }
            with_newline(value.to_string())
        }
        _ => solve_text(&report, note.as_deref()),
    };
    io.stdout.write_all(text.as_bytes())?;
    Ok(code)
}

fn solve_text(r: &DominationReport, note: Option<&str>) -> String {
    let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut s = format!("S(K_{},{}) {}\n", r.n, r.t, r.variant.name());
    s.push_str(&format!("formula: {}\n", r.formula_value));
    s.push_str(&format!(
        "witness: {}{}\n",
        opt(r.witness_weight),
        match r.witness_valid {
            Some(true) => " (valid)",
            Some(false) => " (INVALID)",
            None => "",
        }
    ));
    s.push_str(&format!("exact: {}\n", opt(r.exact_value)));
    if let Some(lb) = r.lower_bound {
        s.push_str(&format!("lower bound: {lb}\n"));
    }
    if let Some(note) = note {
        s.push_str(&format!("note: {note}\n"));
    }
    s.push_str(if r.all_match() && r.exact_value.is_some() {
        "match: yes\n"
    } else if r.all_match() {
        "match: incomplete\n"
    } else {
        "match: NO\n"
    });
    s
}
