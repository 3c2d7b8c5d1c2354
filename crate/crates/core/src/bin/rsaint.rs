use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use rsaint::asymptotics::{ApproxContext, ApproximantModel, ErrorModel, ErrorVariant, QuadratureConfig};
use rsaint::bias::{bias_table, BiasConfig, BiasReport};
use rsaint::characters::{l_chi_bound, l_chi_s, MertensConfig, QuadraticCharacter};
use rsaint::counting::{count_pi2, count_rsa_exact, count_rsa_oracle, RsaQuery, DEFAULT_ORACLE_CAP};
use rsaint::primes::{short_interval_envelope, short_interval_variance, SieveConfig, DEFAULT_SEGMENT_LEN};
use rsaint::rational::{parse_integer, Rational};
use rsaint::{main_term, Error};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "rsaint",
    version,
    about = "Count RSA integers pq ≤ x with p < q ≤ rp and compare with their asymptotics"
)]
struct Cli {
    /// Flat key=value configuration file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Reserved; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Treat validity-range violations as errors.
    #[arg(long, global = true)]
    strict: bool,
    /// Error model for envelopes: dlvp, kv or grh.
    #[arg(long = "error-model", global = true)]
    error_model: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact π₂(x; r) and its three-sum dissection.
    Count {
        #[command(flatten)]
        point: Point,
        /// Also run the pair-walking oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// π₂(x), products of two distinct primes up to x.
    Pi2 {
        #[arg(long)]
        x: String,
    },
    /// A main-term approximation to π₂(x; r).
    Approx {
        #[command(flatten)]
        point: Point,
        /// Model name, or `all`.
        #[arg(long)]
        model: String,
    },
    /// The bias coefficient L_χ(s).
    Lchi {
        #[arg(long)]
        s: String,
        #[arg(long = "char")]
        character: String,
    },
    /// Empirical against predicted bias of the class χ(p) = χ(q) = η.
    Bias {
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        s: Option<String>,
        #[arg(long = "char")]
        character: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        /// Comma-separated `x:s` points, evaluated in order.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Mean-square deviation of primes in intervals (t, t + h], x ≤ t < 2x.
    Shortint {
        #[arg(long)]
        x: String,
        #[arg(long)]
        h: String,
    },
}

#[derive(Args, Debug)]
struct Point {
    #[arg(long)]
    x: String,
    /// Shape parameter as `a/b`, a decimal, or `1e8`.
    #[arg(long, conflicts_with = "s", required_unless_present = "s")]
    r: Option<String>,
    /// Use r = x/s.
    #[arg(long)]
    s: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => CliError::Usage(m),
            other => CliError::Compute(other),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Every tunable setting, after the config file and flags are merged.
#[derive(Debug, Clone)]
struct RunConfig {
    sieve_segment: usize,
    oracle_cap: u64,
    quadrature: QuadratureConfig,
    error_model: ErrorModel,
    output_format: Format,
    strict_ranges: bool,
    threads: usize,
    seed: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            sieve_segment: DEFAULT_SEGMENT_LEN,
            oracle_cap: DEFAULT_ORACLE_CAP,
            quadrature: QuadratureConfig::default(),
            error_model: ErrorModel::standard(ErrorVariant::Grh),
            output_format: Format::Csv,
            strict_ranges: false,
            threads: 1,
            seed: None,
        }
    }
}

const CONFIG_KEYS: &[&str] = &[
    "sieve_segment",
    "oracle_cap",
    "abs_tol",
    "rel_tol",
    "max_depth",
    "error_model",
    "error_c",
    "error_k",
    "output_format",
    "strict_ranges",
    "threads",
];

fn positive<T: std::str::FromStr + PartialOrd + Default>(key: &str, v: &str) -> CliResult<T> {
    match v.trim().parse::<T>() {
        Ok(n) if n > T::default() => Ok(n),
        _ => Err(CliError::Usage(format!("config key {key} needs a positive number, got {v:?}"))),
    }
}

impl RunConfig {
    fn apply_file(&mut self, text: &str) -> CliResult<()> {
        let mut variant = self.error_model.variant;
        let (mut c, mut k) = (None, None);
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value, got {line:?}", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "sieve_segment" => self.sieve_segment = positive(key, value)?,
                "oracle_cap" => {
                    self.oracle_cap = parse_integer(value)?;
                    if self.oracle_cap == 0 {
                        return Err(CliError::Usage("oracle_cap must be positive".into()));
                    }
                }
                "abs_tol" => self.quadrature.abs_tol = positive(key, value)?,
                "rel_tol" => self.quadrature.rel_tol = positive(key, value)?,
                "max_depth" => self.quadrature.max_depth = positive(key, value)?,
                "error_model" => variant = value.parse()?,
                "error_c" => c = Some(positive::<f64>(key, value)?),
                "error_k" => k = Some(positive::<f64>(key, value)?),
                "output_format" => {
                    self.output_format = Format::from_str(value, true)
                        .map_err(|_| CliError::Usage(format!("output_format must be csv or json, got {value:?}")))?
                }
                "strict_ranges" => {
                    self.strict_ranges = value
                        .parse()
                        .map_err(|_| CliError::Usage(format!("strict_ranges must be true or false, got {value:?}")))?
                }
                "threads" => self.threads = positive(key, value)?,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown config key {other:?}; valid keys: {}",
                        CONFIG_KEYS.join(", ")
                    )))
                }
            }
        }
        self.set_error_model(variant, c, k)
    }

    fn set_error_model(&mut self, variant: ErrorVariant, c: Option<f64>, k: Option<f64>) -> CliResult<()> {
        let keep = variant == self.error_model.variant;
        let c = c.unwrap_or(if keep { self.error_model.c } else { 1.0 });
        let k = k.unwrap_or(if keep { self.error_model.k } else { variant.default_k() });
        self.error_model = ErrorModel::new(variant, c, k).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(())
    }

    fn from_cli(cli: &Cli) -> CliResult<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &cli.config {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            cfg.apply_file(&text)?;
        }
        if let Some(f) = cli.format {
            cfg.output_format = f;
        }
        if let Some(t) = cli.tolerance {
            if t.is_nan() || t <= 0.0 {
                return Err(CliError::Usage(format!("--tolerance must be positive, got {t}")));
            }
            cfg.quadrature.rel_tol = t;
        }
        if let Some(n) = cli.threads {
            if n == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            cfg.threads = n;
        }
        if let Some(m) = &cli.error_model {
            cfg.set_error_model(m.parse()?, None, None)?;
        }
        cfg.strict_ranges |= cli.strict;
        cfg.seed = cli.seed;
        cfg.quadrature.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }

    fn sieve(&self) -> SieveConfig {
        SieveConfig::with_segment_len(self.sieve_segment)
    }

    fn bias(&self) -> BiasConfig {
        BiasConfig {
            sieve: self.sieve(),
            mertens: MertensConfig { sieve: self.sieve(), ..MertensConfig::default() },
            quadrature: self.quadrature,
            error_model: self.error_model,
        }
    }

    fn meta(&self, command: &str) -> Value {
        json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "error_model": {
                "variant": self.error_model.variant.name(),
                "c": self.error_model.c,
                "k": self.error_model.k,
            },
            "quadrature": {
                "abs_tol": self.quadrature.abs_tol,
                "rel_tol": self.quadrature.rel_tol,
                "max_depth": self.quadrature.max_depth,
            },
            "sieve_segment": self.sieve_segment,
            "oracle_cap": self.oracle_cap,
            "strict_ranges": self.strict_ranges,
            "threads": self.threads,
            "seed": self.seed,
        })
    }
}

/// One output cell.
#[derive(Debug, Clone)]
enum Cell {
    Int(i128),
    Real(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Real)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Rational> for Cell {
    fn from(v: Rational) -> Self {
        Cell::Text(v.to_string())
    }
}

/// A real with 12 significant digits, plain notation where it stays short.
fn format_real(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    let text =
        if (-5..12).contains(&exp) { format!("{:.*}", (11 - exp).max(0) as usize, v) } else { format!("{:.11e}", v) };
    let (mantissa, suffix) = match text.split_once('e') {
        Some((m, e)) => (m.to_string(), format!("e{e}")),
        None => (text, String::new()),
    };
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        mantissa
    };
    format!("{mantissa}{suffix}")
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) if v.is_finite() => format_real(*v),
            Cell::Real(_) | Cell::Empty => String::new(),
            Cell::Text(t) => t.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => i64::try_from(*v).map_or_else(|_| Value::String(v.to_string()), Value::from),
            Cell::Real(v) if v.is_finite() => {
                let rounded: f64 = format_real(*v).parse().expect("formatted real parses");
                serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            Cell::Real(_) | Cell::Empty => Value::Null,
            Cell::Text(t) => Value::String(t.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

struct Table {
    command: &'static str,
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(command: &'static str, columns: &'static [&'static str]) -> Self {
        Table { command, columns, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn emit(&self, cfg: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
        match cfg.output_format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(self.columns).map_err(csv_io)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv)).map_err(csv_io)?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> =
                            self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let doc = json!({ "meta": cfg.meta(self.command), "rows": rows });
                serde_json::to_writer_pretty(&mut *out, &doc).map_err(|e| CliError::Io(e.into()))?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

fn csv_io(e: csv::Error) -> CliError {
    CliError::Io(io::Error::other(e))
}

fn parse_x(text: &str) -> CliResult<u64> {
    parse_integer(text).map_err(|e| CliError::Usage(format!("--x: {e}")))
}

fn parse_rational(flag: &str, text: &str) -> CliResult<Rational> {
    text.parse().map_err(|e: Error| CliError::Usage(format!("{flag}: {e}")))
}

fn parse_character(spec: &str) -> CliResult<QuadraticCharacter> {
    spec.parse().map_err(|e: Error| {
        CliError::Usage(format!(
            "--char {spec:?}: {e}; valid forms: kronecker:D (fundamental discriminant) or table:Q:v0,v1,…"
        ))
    })
}

fn parse_eta(text: &str) -> CliResult<i8> {
    match text.trim() {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(CliError::Usage(format!("--eta must be +1 or -1, got {other:?}"))),
    }
}

fn point_query(p: &Point) -> CliResult<RsaQuery> {
    let x = parse_x(&p.x)?;
    Ok(match (&p.r, &p.s) {
        (Some(r), _) => RsaQuery::new(x, parse_rational("--r", r)?)?,
        (None, Some(s)) => RsaQuery::from_s(x, parse_rational("--s", s)?)?,
        (None, None) => return Err(CliError::Usage("one of --r or --s is required".into())),
    })
}

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

fn run_count(cfg: &RunConfig, point: &Point, oracle: bool) -> CliResult<Table> {
    const COLS: &[&str] = &["x", "r", "s", "landau_regime", "sum_mid", "sum_small", "sum_sub", "total", "oracle"];
    let q = point_query(point)?;
    let sieve = cfg.sieve();
    let b = count_rsa_exact(&q, &sieve)?;
    let oracle_cell = if oracle {
        let o = count_rsa_oracle(&q, cfg.oracle_cap, &sieve)?;
        if o != b.total {
            return Err(CliError::Compute(Error::Contract(format!(
                "oracle count {o} differs from sieve count {}",
                b.total
            ))));
        }
        Cell::from(o)
    } else {
        Cell::Empty
    };
    let mut t = Table::new("count", COLS);
    t.push(vec![
        q.x().into(),
        q.r().into(),
        q.s().into(),
        Cell::Bool(q.is_landau_regime()),
        b.sum_mid.into(),
        b.sum_small.into(),
        b.sum_sub.into(),
        b.total.into(),
        oracle_cell,
    ]);
    Ok(t)
}

fn run_pi2(cfg: &RunConfig, x: &str) -> CliResult<Table> {
    let x = parse_x(x)?;
    let mut t = Table::new("pi2", &["x", "pi2"]);
    t.push(vec![x.into(), count_pi2(x, &cfg.sieve())?.into()]);
    Ok(t)
}

fn run_approx(cfg: &RunConfig, point: &Point, model: &str) -> CliResult<Table> {
    const COLS: &[&str] = &["x", "r", "model", "value", "range_warning"];
    let q = point_query(point)?;
    let models: Vec<ApproximantModel> = if model.eq_ignore_ascii_case("all") {
        ApproximantModel::ALL.to_vec()
    } else {
        vec![model.parse().map_err(|e: Error| CliError::Usage(format!("{e}, all")))?]
    };
    let ctx = ApproxContext { quadrature: cfg.quadrature, range_c: cfg.error_model.c, strict: cfg.strict_ranges };
    let mut t = Table::new("approx", COLS);
    for m in models {
        let term = main_term(m, q.x() as f64, &q.r(), &ctx)?;
        if let Some(w) = &term.range_warning {
            warn(&format!("{m} outside its validity range: requires {w}"));
        }
        t.push(vec![
            q.x().into(),
            q.r().into(),
            Cell::Text(m.name().into()),
            term.value.into(),
            term.range_warning.map_or(Cell::Empty, Cell::Text),
        ]);
    }
    Ok(t)
}

fn run_lchi(cfg: &RunConfig, s: &str, spec: &str) -> CliResult<Table> {
    const COLS: &[&str] = &["char", "s", "head", "tail", "value", "error_bound", "envelope", "error_model"];
    let chi = parse_character(spec)?;
    let s = parse_rational("--s", s)?;
    let bias = cfg.bias();
    let c = l_chi_s(&chi, &s, &bias.mertens)?;
    let envelope = l_chi_bound(s.to_f64(), &cfg.error_model, &cfg.quadrature)?;
    let mut t = Table::new("lchi", COLS);
    t.push(vec![
        Cell::Text(chi.spec().into()),
        s.into(),
        c.head.into(),
        c.tail.into(),
        c.value.into(),
        c.error_bound.into(),
        envelope.into(),
        Cell::Text(cfg.error_model.variant.name().into()),
    ]);
    Ok(t)
}

fn parse_grid(text: &str) -> CliResult<Vec<(u64, Rational)>> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (x, s) =
                p.split_once(':').ok_or_else(|| CliError::Usage(format!("--grid entries are x:s, got {p:?}")))?;
            Ok((parse_x(x)?, parse_rational("--grid", s)?))
        })
        .collect()
}

fn bias_row(r: &BiasReport) -> Vec<Cell> {
    let e = r.empirical;
    let p = r.predicted;
    vec![
        r.x.into(),
        if r.r == Rational::ZERO { Cell::Empty } else { r.r.into() },
        r.s.into(),
        r.modulus.into(),
        Cell::Int(r.eta as i128),
        e.map_or(Cell::Empty, |e| e.num.into()),
        e.map_or(Cell::Empty, |e| e.den.into()),
        r.empirical_ratio().into(),
        p.map(|p| p.h_main).into(),
        p.map(|p| p.ratio).into(),
        p.map(|p| p.delta_sqrt_x).into(),
        p.map(|p| p.bigdelta_term).into(),
        p.map(|p| p.loglog_correction).into(),
        Cell::Text(r.status.to_string()),
    ]
}

fn run_bias(
    cfg: &RunConfig,
    x: Option<&str>,
    s: Option<&str>,
    spec: &str,
    eta: &str,
    grid: Option<&str>,
) -> CliResult<Table> {
    const COLS: &[&str] = &[
        "x",
        "r",
        "s",
        "Q",
        "eta",
        "emp_num",
        "emp_den",
        "emp_ratio",
        "h_main",
        "pred_ratio",
        "delta_sqrt_x",
        "bigdelta_term",
        "loglog_correction",
        "status",
    ];
    let chi = parse_character(spec)?;
    let eta = parse_eta(eta)?;
    let mut points = Vec::new();
    if let Some(x) = x {
        let s = s.ok_or_else(|| CliError::Usage("--x needs --s".into()))?;
        points.push((parse_x(x)?, parse_rational("--s", s)?));
    } else if s.is_some() {
        return Err(CliError::Usage("--s needs --x".into()));
    }
    if let Some(g) = grid {
        points.extend(parse_grid(g)?);
    }
    if points.is_empty() {
        return Err(CliError::Usage("bias needs --x and --s, or --grid".into()));
    }
    let reports = bias_table(&points, &chi, eta, &cfg.bias());
    let mut t = Table::new("bias", COLS);
    for r in &reports {
        t.push(bias_row(r));
    }
    if points.len() == 1 {
        if let rsaint::BiasStatus::Error(e) = &reports[0].status {
            return Err(CliError::Compute(Error::Domain(e.clone())));
        }
    }
    Ok(t)
}

fn run_shortint(cfg: &RunConfig, x: &str, h: &str) -> CliResult<Table> {
    const COLS: &[&str] = &["x", "h", "variance", "envelope", "ratio"];
    let x = parse_x(x)?;
    let h = parse_integer(h).map_err(|e| CliError::Usage(format!("--h: {e}")))?;
    let v = short_interval_variance(x, h, &cfg.sieve())?;
    let env = short_interval_envelope(x, h);
    let mut t = Table::new("shortint", COLS);
    t.push(vec![x.into(), h.into(), v.into(), env.into(), (if env > 0.0 { Some(v / env) } else { None }).into()]);
    Ok(t)
}

fn run(cli: &Cli) -> CliResult<()> {
    let cfg = RunConfig::from_cli(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?;
    let table = pool.install(|| match &cli.command {
        Command::Count { point, oracle } => run_count(&cfg, point, *oracle),
        Command::Pi2 { x } => run_pi2(&cfg, x),
        Command::Approx { point, model } => run_approx(&cfg, point, model),
        Command::Lchi { s, character } => run_lchi(&cfg, s, character),
        Command::Bias { x, s, character, eta, grid } => {
            run_bias(&cfg, x.as_deref(), s.as_deref(), character, eta, grid.as_deref())
        }
        Command::Shortint { x, h } => run_shortint(&cfg, x, h),
    })?;
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    table.emit(&cfg, &mut lock)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) | Error::Range { .. } => EXIT_DOMAIN,
                Error::Validation(_) | Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            })
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.375), "0.375");
        assert_eq!(format_real(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_real(5964015.683995779), "5964015.684");
        assert_eq!(format_real(-0.33498132236996425), "-0.33498132237");
        assert_eq!(format_real(7.789502798706532e-9), "7.78950279871e-9");
        assert_eq!(format_real(2.0), "2");
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let mut cfg = RunConfig::default();
        assert!(matches!(cfg.apply_file("bogus = 1"), Err(CliError::Usage(_))));
        let mut cfg = RunConfig::default();
        cfg.apply_file("# comment\nthreads = 4\nerror_model = dlvp\nerror_c = 0.5\nrel_tol = 1e-9\n").unwrap();
        assert_eq!(cfg.threads, 4);
        assert_eq!(cfg.error_model.variant, ErrorVariant::Dlvp);
        assert_eq!(cfg.error_model.c, 0.5);
        assert_eq!(cfg.error_model.k, ErrorVariant::Dlvp.default_k());
        assert!(RunConfig::default().apply_file("threads = 0").is_err());
    }
}
