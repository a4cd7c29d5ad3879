//! Command-line front end for `quartic-core`.
//!
//! Exit codes: 0 success (including empty results), 1 usage or
//! configuration error, 2 verification mismatch, 3 resource limit
//! (overflow or scan cap).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use quartic_core::conic::{brute_force_oracle, enumerate_primitive, ConicError};
use quartic_core::descent::{descend, residue_branch_scan, DescentError};
use quartic_core::family::{diff_report, enumerate_case_i, enumerate_case_ii, make_combo, table_csv};
use quartic_core::local::{
    check_13_14_correspondence, hasse_scan, local_report, selmer_fixture, LocalError, LocalModulus,
    DEFAULT_SCAN_LIMIT,
};
use quartic_core::quartic::{search, search_general, QuarticError};
use quartic_core::{CaseTag, FamilyQuarticForm, GeneralQuarticForm, SolutionTriple};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Default table limits, matching the published listings.
pub const DEFAULT_N_MAX: u64 = 16;
pub const DEFAULT_P_MAX: u64 = 251;

/// File names written by `tables --seed-tables DIR`.
pub const GOLDEN_CASE_I: &str = "table_i.csv";
pub const GOLDEN_CASE_II: &str = "table_ii.csv";
pub const GOLDEN_DIFF: &str = "table_diff.md";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Workers {
    Auto,
    Count(usize),
}

impl FromStr for Workers {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Workers::Auto);
        }
        match s.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Workers::Count(n)),
            _ => Err(format!("workers must be a positive integer or \"auto\", got {s:?}")),
        }
    }
}

/// Effective settings after merging flags, config file and defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub scan_limit: u64,
    pub workers: Workers,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scan_limit: DEFAULT_SCAN_LIMIT,
            workers: Workers::Auto,
            format: Format::Csv,
            out: None,
        }
    }
}

/// Settings that may come from either source; `None` means unset.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialConfig {
    pub scan_limit: Option<u64>,
    pub workers: Option<Workers>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl PartialConfig {
    /// Parses a flat `key = value` file; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = PartialConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| format!("line {}: invalid {key}: {what}", i + 1);
            match key {
                "scan_limit" => {
                    let v: u64 = value.parse().map_err(|_| bad(value))?;
                    if v == 0 {
                        return Err(bad("must be positive"));
                    }
                    cfg.scan_limit = Some(v);
                }
                "workers" => cfg.workers = Some(value.parse().map_err(|e: String| bad(&e))?),
                "format" => {
                    cfg.format = Some(Format::from_str(value, true).map_err(|_| bad(value))?);
                }
                "out" => cfg.out = Some(PathBuf::from(value)),
                _ => return Err(format!("line {}: unknown key {key:?}", i + 1)),
            }
        }
        Ok(cfg)
    }

    /// `self` wins over `lower`.
    pub fn over(self, lower: PartialConfig) -> PartialConfig {
        PartialConfig {
            scan_limit: self.scan_limit.or(lower.scan_limit),
            workers: self.workers.or(lower.workers),
            format: self.format.or(lower.format),
            out: self.out.or(lower.out),
        }
    }

    pub fn resolve(self) -> RunConfig {
        let d = RunConfig::default();
        RunConfig {
            scan_limit: self.scan_limit.unwrap_or(d.scan_limit),
            workers: self.workers.unwrap_or(d.workers),
            format: self.format.unwrap_or(d.format),
            out: self.out.or(d.out),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "quartic", version, about = "Search, tabulate and audit x^4 + 2n x^2y^2 + m y^4 = z^2")]
struct Cli {
    /// Output format for tabular results (trace, local, selmer and
    /// correspondence always emit JSON).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads: a positive integer or "auto".
    #[arg(long, global = true)]
    workers: Option<Workers>,
    /// Largest modulus p^k accepted by residue scans.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    scan_limit: Option<u64>,
    /// Log one line per phase to standard error.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableCase {
    CaseI,
    CaseII,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the family tables.
    Tables(TablesArgs),
    /// Exhaustive search of a family form with 1 <= x, y <= bound.
    Search {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        bound: u64,
    },
    /// Exhaustive search of a x^4 + b x^2y^2 + c y^4 = d z^2.
    SearchGeneral {
        /// Coefficients a,b,c,d.
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        bound: u64,
    },
    /// Primitive solutions of x^2 + ell*y^2 = z^2 with z <= z-max.
    Conic {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        z_max: u64,
        /// Compare against the brute-force oracle; exit 2 on mismatch.
        #[arg(long)]
        brute_check: bool,
    },
    /// Residue-branch audit (--n, --p) or descent trace (--n, --m, --solution).
    Trace {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        /// Claimed solution x,y,z.
        #[arg(long)]
        solution: Option<String>,
    },
    /// Prime-power solvability plus a bounded global search.
    Local {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// Comma-separated prime powers.
        #[arg(long, value_delimiter = ',')]
        prime_powers: Vec<u64>,
        #[arg(long)]
        bound: u64,
    },
    /// The cubic 3x^3 + 4y^3 + 5z^3 = 0: box search and local witnesses.
    Selmer {
        #[arg(long, value_delimiter = ',')]
        prime_powers: Vec<u64>,
        #[arg(long)]
        bound: u64,
    },
    /// Compare the quartic with its quadratic system (u, v, w, z), uw = v^2.
    Correspondence {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        bound: u64,
    },
    /// (q, d) pairs satisfying all four Aitken–Lemmermeyer conditions.
    HasseScan {
        #[arg(long)]
        q_max: u64,
        #[arg(long)]
        d_max: u64,
    },
}

#[derive(Debug, Args)]
struct TablesArgs {
    /// Which table to print (optional with --seed-tables).
    #[arg(value_enum)]
    case: Option<TableCase>,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: u64,
    #[arg(long, default_value_t = DEFAULT_P_MAX)]
    p_max: u64,
    /// Regenerate the golden CSVs and the diff document in DIR.
    #[arg(long, value_name = "DIR")]
    seed_tables: Option<PathBuf>,
}

/// A failed invocation with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
    fn resource(message: impl Into<String>) -> Self {
        Self { code: EXIT_RESOURCE, message: message.into() }
    }
}

impl From<QuarticError> for Failure {
    fn from(e: QuarticError) -> Self {
        match e {
            QuarticError::Overflow { .. } => Failure::resource(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<LocalError> for Failure {
    fn from(e: LocalError) -> Self {
        match e {
            LocalError::Quartic(q) => q.into(),
            LocalError::ModulusTooLarge { .. } | LocalError::ModulusOverflow | LocalError::Overflow(_) => {
                Failure::resource(e.to_string())
            }
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<ConicError> for Failure {
    fn from(e: ConicError) -> Self {
        match e {
            ConicError::Overflow { .. } => Failure::resource(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<DescentError> for Failure {
    fn from(e: DescentError) -> Self {
        match e {
            DescentError::Quartic(q) => q.into(),
            DescentError::Overflow(_) => Failure::resource(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

/// What a command produced: the text body plus its exit code.
struct Emitted {
    body: String,
    code: i32,
}

impl Emitted {
    fn ok(body: String) -> Self {
        Self { body, code: EXIT_OK }
    }
}

struct Ctx {
    cfg: RunConfig,
    verbose: bool,
    start: Instant,
    /// Phase log, flushed to stderr once the command returns.
    log: String,
}

impl Ctx {
    fn phase(&mut self, what: &str) {
        if self.verbose {
            let _ = writeln!(self.log, "[{:>8.3}s] {what}", self.start.elapsed().as_secs_f64());
        }
    }
}

fn envelope(command: &str, params: Value, results: impl Serialize) -> String {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "results": results,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_list<T: FromStr>(text: &str, count: usize, what: &str) -> Result<Vec<T>, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(Failure::usage(format!("{what} needs {count} comma-separated integers, got {text:?}")));
    }
    parts
        .iter()
        .map(|p| p.parse().map_err(|_| Failure::usage(format!("invalid integer {p:?} in {what}"))))
        .collect()
}

fn parse_form(text: &str) -> Result<GeneralQuarticForm, Failure> {
    let v: Vec<i64> = parse_list(text, 4, "--form")?;
    let d = u64::try_from(v[3]).map_err(|_| Failure::usage("form coefficient d must be positive"))?;
    Ok(GeneralQuarticForm::new(v[0], v[1], v[2], d)?)
}

fn parse_moduli(values: &[u64]) -> Result<Vec<LocalModulus>, Failure> {
    if values.is_empty() {
        return Err(Failure::usage("--prime-powers must list at least one modulus"));
    }
    values
        .iter()
        .map(|&q| LocalModulus::from_prime_power(q).map_err(Failure::from))
        .collect()
}

fn positive(value: u64, flag: &str) -> Result<u64, Failure> {
    if value == 0 {
        return Err(Failure::usage(format!("{flag} must be at least 1")));
    }
    Ok(value)
}

fn triples_csv(header: &str, rows: impl IntoIterator<Item = (u64, u64, u64)>) -> String {
    let mut out = format!("{header}\n");
    for (a, b, c) in rows {
        let _ = writeln!(out, "{a},{b},{c}");
    }
    out
}

fn solutions_out(ctx: &Ctx, command: &str, params: Value, sols: &[SolutionTriple]) -> String {
    match ctx.cfg.format {
        Format::Csv => triples_csv("x,y,z", sols.iter().map(|s| (s.x, s.y, s.z))),
        Format::Json => envelope(command, params, sols),
    }
}

fn cmd_tables(ctx: &mut Ctx, args: TablesArgs) -> Result<Emitted, Failure> {
    if let Some(dir) = args.seed_tables {
        return seed_tables(ctx, &dir, args.n_max, args.p_max);
    }
    let case = args
        .case
        .ok_or_else(|| Failure::usage("tables needs case-i or case-ii (or --seed-tables DIR)"))?;
    let (tag, name, combos, params) = match case {
        TableCase::CaseI => (
            CaseTag::CaseI,
            "tables case-i",
            enumerate_case_i(args.n_max),
            json!({ "case": "I", "n_max": args.n_max }),
        ),
        TableCase::CaseII => (
            CaseTag::CaseII,
            "tables case-ii",
            enumerate_case_ii(args.p_max),
            json!({ "case": "II", "p_max": args.p_max }),
        ),
    };
    ctx.phase(&format!("enumerated {} combinations", combos.len()));
    Ok(Emitted::ok(match ctx.cfg.format {
        Format::Csv => table_csv(tag, &combos),
        Format::Json => envelope(name, params, &combos),
    }))
}

/// Writes the golden tables and the diff document into `dir`.
pub fn write_golden(dir: &Path, n_max: u64, p_max: u64) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let case_i = enumerate_case_i(n_max);
    let case_ii = enumerate_case_ii(p_max);
    let files = [
        (GOLDEN_CASE_I, table_csv(CaseTag::CaseI, &case_i)),
        (GOLDEN_CASE_II, table_csv(CaseTag::CaseII, &case_ii)),
        (GOLDEN_DIFF, diff_report(&case_i, &case_ii)),
    ];
    let mut written = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

fn seed_tables(ctx: &mut Ctx, dir: &Path, n_max: u64, p_max: u64) -> Result<Emitted, Failure> {
    let written = write_golden(dir, n_max, p_max)
        .map_err(|e| Failure::usage(format!("cannot write golden files to {}: {e}", dir.display())))?;
    ctx.phase("golden files written");
    let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
    Ok(Emitted::ok(match ctx.cfg.format {
        Format::Csv => names.iter().fold(String::from("path\n"), |acc, n| acc + n + "\n"),
        Format::Json => envelope(
            "tables --seed-tables",
            json!({ "dir": dir.display().to_string(), "n_max": n_max, "p_max": p_max }),
            names,
        ),
    }))
}

fn cmd_search(ctx: &mut Ctx, n: u64, m: i64, bound: u64) -> Result<Emitted, Failure> {
    positive(bound, "--bound")?;
    let form = FamilyQuarticForm::new(n, m)?;
    let combo = u64::try_from(form.p()).ok().and_then(|p| make_combo(n, p).ok());
    let sols = search(&form, bound)?;
    ctx.phase(&format!("searched {bound}x{bound} box, {} solutions", sols.len()));
    let params = json!({ "n": n, "m": m, "bound": bound, "family_combo": combo.is_some() });
    let body = solutions_out(ctx, "search", params, &sols);
    let code = if combo.is_some() && !sols.is_empty() { EXIT_MISMATCH } else { EXIT_OK };
    Ok(Emitted { body, code })
}

fn cmd_search_general(ctx: &mut Ctx, form: &str, bound: u64) -> Result<Emitted, Failure> {
    positive(bound, "--bound")?;
    let f = parse_form(form)?;
    let sols = search_general(&f, bound)?;
    ctx.phase(&format!("searched {bound}x{bound} box, {} solutions", sols.len()));
    let params = json!({ "form": [f.a, f.b, f.c, f.d], "bound": bound });
    Ok(Emitted::ok(solutions_out(ctx, "search-general", params, &sols)))
}

fn cmd_conic(ctx: &mut Ctx, ell: u64, z_max: u64, check: bool) -> Result<Emitted, Failure> {
    positive(ell, "--ell")?;
    positive(z_max, "--z-max")?;
    let triples = enumerate_primitive(ell, z_max);
    ctx.phase(&format!("enumerated {} triples", triples.len()));
    let mut code = EXIT_OK;
    let mut oracle_agrees = None;
    if check {
        let oracle = brute_force_oracle(ell, z_max)?;
        ctx.phase(&format!("oracle found {} triples", oracle.len()));
        oracle_agrees = Some(oracle == triples);
        if oracle != triples {
            code = EXIT_MISMATCH;
        }
    }
    let body = match ctx.cfg.format {
        Format::Csv => triples_csv("x,y,z", triples.iter().map(|t| (t.x, t.y, t.z))),
        Format::Json => envelope(
            "conic",
            json!({ "ell": ell, "z_max": z_max, "brute_check": check, "oracle_agrees": oracle_agrees }),
            &triples,
        ),
    };
    Ok(Emitted { body, code })
}

fn cmd_trace(
    ctx: &mut Ctx,
    n: u64,
    p: Option<u64>,
    m: Option<i64>,
    solution: Option<String>,
) -> Result<Emitted, Failure> {
    match (p, m, solution) {
        (Some(p), None, None) => {
            let report = residue_branch_scan(n, p);
            ctx.phase(&format!("scanned {} branches", report.checks.len()));
            let code = if report.combo.is_some() && !report.all_confirmed() {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            };
            let body = envelope("trace", json!({ "n": n, "p": p }), &report);
            Ok(Emitted { body, code })
        }
        (None, Some(m), Some(sol)) => {
            let v: Vec<u64> = parse_list(&sol, 3, "--solution")?;
            let form = FamilyQuarticForm::new(n, m)?;
            let trace = descend(&form, SolutionTriple::new(v[0], v[1], v[2]))?;
            ctx.phase("descent traced");
            let body = envelope("trace", json!({ "n": n, "m": m, "solution": v }), &trace);
            Ok(Emitted::ok(body))
        }
        _ => Err(Failure::usage(
            "trace takes either --n N --p P, or --n N --m M --solution X,Y,Z",
        )),
    }
}

fn cmd_local(ctx: &mut Ctx, form: &str, prime_powers: &[u64], bound: u64) -> Result<Emitted, Failure> {
    positive(bound, "--bound")?;
    let f = parse_form(form)?;
    let moduli = parse_moduli(prime_powers)?;
    let report = local_report(&f, &moduli, bound, ctx.cfg.scan_limit)?;
    ctx.phase(&format!("{} local verdicts", report.verdicts.len()));
    let code = if report.self_validates() { EXIT_OK } else { EXIT_MISMATCH };
    let params = json!({
        "form": [f.a, f.b, f.c, f.d],
        "prime_powers": prime_powers,
        "bound": bound,
        "scan_limit": ctx.cfg.scan_limit,
    });
    Ok(Emitted { body: envelope("local", params, &report), code })
}

fn cmd_selmer(ctx: &mut Ctx, prime_powers: &[u64], bound: u64) -> Result<Emitted, Failure> {
    positive(bound, "--bound")?;
    let moduli = parse_moduli(prime_powers)?;
    let report = selmer_fixture(bound, &moduli, ctx.cfg.scan_limit)?;
    ctx.phase("selmer fixture evaluated");
    let code = if report.self_validates() { EXIT_OK } else { EXIT_MISMATCH };
    let params = json!({ "prime_powers": prime_powers, "bound": bound, "scan_limit": ctx.cfg.scan_limit });
    Ok(Emitted { body: envelope("selmer", params, &report), code })
}

fn cmd_correspondence(ctx: &mut Ctx, form: &str, bound: u64) -> Result<Emitted, Failure> {
    let f = parse_form(form)?;
    let report = check_13_14_correspondence(&f, bound)?;
    ctx.phase("correspondence checked");
    let code = if report.forward_verified() { EXIT_OK } else { EXIT_MISMATCH };
    let params = json!({ "form": [f.a, f.b, f.c, f.d], "bound": bound });
    Ok(Emitted { body: envelope("correspondence", params, &report), code })
}

fn cmd_hasse_scan(ctx: &mut Ctx, q_max: u64, d_max: u64) -> Result<Emitted, Failure> {
    let hits = hasse_scan(q_max, d_max);
    ctx.phase(&format!("{} qualifying pairs", hits.len()));
    Ok(Emitted::ok(match ctx.cfg.format {
        Format::Csv => hits.iter().fold(String::from("q,d\n"), |mut acc, (q, d)| {
            let _ = writeln!(acc, "{q},{d}");
            acc
        }),
        Format::Json => {
            let rows: Vec<Value> = hits
                .iter()
                .map(|&(q, d)| json!({ "q": q, "d": d, "form": [1, 0, -(q as i64), d] }))
                .collect();
            envelope("hasse-scan", json!({ "q_max": q_max, "d_max": d_max }), rows)
        }
    }))
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<Emitted, Failure> {
    match command {
        Command::Tables(args) => cmd_tables(ctx, args),
        Command::Search { n, m, bound } => cmd_search(ctx, n, m, bound),
        Command::SearchGeneral { form, bound } => cmd_search_general(ctx, &form, bound),
        Command::Conic { ell, z_max, brute_check } => cmd_conic(ctx, ell, z_max, brute_check),
        Command::Trace { n, p, m, solution } => cmd_trace(ctx, n, p, m, solution),
        Command::Local { form, prime_powers, bound } => cmd_local(ctx, &form, &prime_powers, bound),
        Command::Selmer { prime_powers, bound } => cmd_selmer(ctx, &prime_powers, bound),
        Command::Correspondence { form, bound } => cmd_correspondence(ctx, &form, bound),
        Command::HasseScan { q_max, d_max } => cmd_hasse_scan(ctx, q_max, d_max),
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let from_flags = PartialConfig {
        scan_limit: cli.scan_limit,
        workers: cli.workers,
        format: cli.format,
        out: cli.out.clone(),
    };
    let from_file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
            PartialConfig::parse(&text)
                .map_err(|e| Failure::usage(format!("config {}: {e}", path.display())))?
        }
        None => PartialConfig::default(),
    };
    Ok(from_flags.over(from_file).resolve())
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let cfg = match load_config(&cli) {
        Ok(cfg) => cfg,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let pool = match cfg.workers {
        Workers::Auto => rayon::ThreadPoolBuilder::new(),
        Workers::Count(n) => rayon::ThreadPoolBuilder::new().num_threads(n),
    }
    .build();
    let pool = match pool {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker pool: {e}");
            return EXIT_RESOURCE;
        }
    };
    let out_path = cfg.out.clone();
    let mut ctx = Ctx { cfg, verbose: cli.verbose, start: Instant::now(), log: String::new() };
    let result = pool.install(|| dispatch(&mut ctx, cli.command));
    let _ = stderr.write_all(ctx.log.as_bytes());
    match result {
        Ok(emitted) => {
            let written = match &out_path {
                Some(path) => std::fs::write(path, &emitted.body),
                None => stdout.write_all(emitted.body.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            if emitted.code == EXIT_MISMATCH {
                let _ = writeln!(stderr, "verification mismatch");
            }
            emitted.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
