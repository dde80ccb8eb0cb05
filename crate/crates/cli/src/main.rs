mod cache;

use std::cell::RefCell;
use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nmtau::algebra::{int, PolyJson, PolyXY};
use nmtau::closedforms::{coeff_identities, descents, Method};
use nmtau::oracle::{brute_ncm_shard, brute_nm_shard, dyck_paths, phi};
use nmtau::permcore::{factorial, shard_ranges, Pattern};
use nmtau::recursions::{nm_series, u_coeffs, PatternFamily};
use nmtau::verify::{run_suite, Suite, ORACLE_BOUND, ORDER_BOUND};

use cache::Cache;

const DYCK_BOUND: usize = 12;

#[derive(Parser)]
#[command(
    name = "nmtau",
    version,
    about = "Permutations avoiding consecutive patterns, by descents and left-to-right minima"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Run past the default size limits.
    #[arg(long, global = true)]
    force: bool,
    /// Directory for cached brute-force polynomials.
    #[arg(long, env = "NMTAU_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Recompute instead of reading the cache, and check any cached entry.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(clap::Args)]
struct Selector {
    /// Named family: 1324..p, 1p2.., 134..2p.
    #[arg(long, requires = "p", conflicts_with = "pattern")]
    family: Option<String>,
    #[arg(long)]
    p: Option<usize>,
    /// A pattern such as 1324 or 1,3,2,4; its family is detected.
    #[arg(long)]
    pattern: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// U_{τ,n}(y) for n = 1..N.
    U {
        #[command(flatten)]
        select: Selector,
        #[arg(long)]
        n: usize,
    },
    /// n![t^n] NM_τ(t,x,y) for n = 0..N.
    Series {
        #[command(flatten)]
        select: Selector,
        #[arg(long)]
        order: usize,
    },
    /// The brute-force polynomial NM_{τ,n}(x,y), or NCM with --cycle.
    Brute {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cycle: bool,
        /// Split the rank range into this many shards.
        #[arg(long, requires = "shard")]
        shards: Option<usize>,
        /// Which shard to run, from 0.
        #[arg(long, requires = "shards")]
        shard: Option<usize>,
    },
    /// Run an acceptance suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Dyck paths of length 2k-2 and their sequences.
    Dyck {
        #[arg(long)]
        k: usize,
    },
    /// Permutations of length n with k descents and no 1324..p-match.
    Descents {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
    },
    /// Coefficient identities of NM_{1324..p,n}(x,y).
    Identities {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Verification(String),
    Limit(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Limit(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Verification(m)
            | CliError::Limit(m)
            | CliError::Io(m) => m,
        }
    }
}

impl From<nmtau::Error> for CliError {
    fn from(e: nmtau::Error) -> Self {
        match e {
            nmtau::Error::ResourceLimit { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Appends a line to the command's output.
macro_rules! emit {
    ($ctx:expr, $($arg:tt)*) => {
        writeln!($ctx.out.borrow_mut(), $($arg)*).expect("writing to a String")
    };
}

struct Ctx {
    out: RefCell<String>,
    format: Format,
    force: bool,
    cache: Option<Cache>,
    no_cache: bool,
}

impl Ctx {
    fn limit(&self, what: &str, value: usize, limit: usize) -> CliResult<()> {
        if value <= limit {
            return Ok(());
        }
        if self.force {
            eprintln!("warning: {what} = {value} exceeds the default bound {limit}; continuing because of --force");
            Ok(())
        } else {
            Err(CliError::Limit(format!(
                "{what} = {value} exceeds the default bound {limit}; pass --force to run anyway"
            )))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        out: RefCell::new(String::new()),
        format: cli.format,
        force: cli.force,
        cache: cli.cache_dir.map(Cache::new),
        no_cache: cli.no_cache,
    };
    let result = run(&ctx, cli.command);
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout
        .write_all(ctx.out.borrow().as_bytes())
        .and_then(|_| stdout.flush())
    {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(5);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> CliResult<()> {
    match command {
        Command::U { select, n } => cmd_u(ctx, &select, n),
        Command::Series { select, order } => cmd_series(ctx, &select, order),
        Command::Brute {
            pattern,
            n,
            cycle,
            shards,
            shard,
        } => cmd_brute(ctx, &pattern, n, cycle, shards.zip(shard)),
        Command::Verify { suite } => cmd_verify(ctx, &suite),
        Command::Dyck { k } => cmd_dyck(ctx, k),
        Command::Descents { p, k, n } => cmd_descents(ctx, p, k, n),
        Command::Identities { p, n } => cmd_identities(ctx, p, n),
    }
}

fn parse_pattern(s: &str) -> CliResult<Pattern> {
    Ok(s.parse::<Pattern>()?)
}

fn family(select: &Selector) -> CliResult<PatternFamily> {
    match (&select.family, select.p, &select.pattern) {
        (Some(name), Some(p), None) => Ok(match name.as_str() {
            "1324..p" => PatternFamily::identity_132p(p)?,
            "1p2.." => PatternFamily::one_p2(p)?,
            "134..2p" => PatternFamily::fuss(p)?,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown family {other:?}; use 1324..p, 1p2.., 134..2p or --pattern"
                )))
            }
        }),
        (None, _, Some(pattern)) => Ok(PatternFamily::classify(&parse_pattern(pattern)?)?),
        _ => Err(CliError::Usage(
            "give --family with --p, or --pattern".into(),
        )),
    }
}

/// Size limit for a family: series order, or the oracle bound when `U`
/// comes from brute force.
fn series_limit(ctx: &Ctx, family: &PatternFamily, order: usize) -> CliResult<()> {
    if matches!(family, PatternFamily::Generic { .. }) {
        ctx.limit("oracle n", order, ORACLE_BOUND)
    } else {
        ctx.limit("series order", order, ORDER_BOUND)
    }
}

fn label(family: &PatternFamily) -> String {
    family
        .pattern()
        .map(|t| t.to_string())
        .unwrap_or_else(|_| family.to_string())
}

fn cmd_u(ctx: &Ctx, select: &Selector, n: usize) -> CliResult<()> {
    let family = family(select)?;
    series_limit(ctx, &family, n)?;
    let table = u_coeffs(&family, n)?;
    let tau = label(&family);
    match ctx.format {
        Format::Text => {
            emit!(ctx, "# U_{{{tau},n}}(y), {family}");
            for (i, row) in table.rows().iter().enumerate() {
                emit!(ctx, "{}\t{}", i + 1, row.to_text());
            }
        }
        Format::Latex => {
            for (i, row) in table.rows().iter().enumerate() {
                emit!(ctx, "U_{{{tau},{}}}(y) &= {} \\\\", i + 1, row.to_latex());
            }
        }
        Format::Json => {
            let rows: Vec<_> = table
                .rows()
                .iter()
                .enumerate()
                .map(|(i, row)| json!({"n": i + 1, "poly": PolyJson::from(row)}))
                .collect();
            print_json(
                ctx,
                &json!({"pattern": tau, "family": family.to_string(), "rows": rows}),
            );
        }
    }
    Ok(())
}

fn cmd_series(ctx: &Ctx, select: &Selector, order: usize) -> CliResult<()> {
    let family = family(select)?;
    series_limit(ctx, &family, order)?;
    let series = nm_series(&family, order)?;
    let tau = label(&family);
    match ctx.format {
        Format::Text => {
            emit!(ctx, "# n![t^n] NM_{{{tau}}}(t,x,y), {family}");
            for (n, c) in series.coeffs().iter().enumerate() {
                emit!(ctx, "{n}\t{}", c.to_text());
            }
        }
        Format::Latex => {
            for (n, c) in series.coeffs().iter().enumerate() {
                emit!(ctx, "\\frac{{t^{{{n}}}}}{{{n}!}} &: {} \\\\", c.to_latex());
            }
        }
        Format::Json => emit!(ctx, "{}", series.to_json()),
    }
    Ok(())
}

fn cmd_brute(
    ctx: &Ctx,
    pattern: &str,
    n: usize,
    cycle: bool,
    sharding: Option<(usize, usize)>,
) -> CliResult<()> {
    let tau = parse_pattern(pattern)?;
    ctx.limit("oracle n", n, ORACLE_BOUND)?;
    let compute = |ranks| {
        if cycle {
            brute_ncm_shard(&tau, n, ranks)
        } else {
            brute_nm_shard(&tau, n, ranks)
        }
    };
    let poly: PolyXY = match sharding {
        Some((shards, shard)) => {
            if shards == 0 || shard >= shards {
                return Err(CliError::Usage(format!(
                    "shard {shard} is not in 0..{shards}"
                )));
            }
            let ranges = shard_ranges(n, shards);
            compute(ranges[shard].clone())
        }
        None => {
            let full = || {
                if cycle {
                    nmtau::oracle::brute_ncm_poly(&tau, n)
                } else {
                    nmtau::oracle::brute_nm_poly(&tau, n)
                }
            };
            match &ctx.cache {
                Some(cache) => cache.get_or_compute(&tau, n, cycle, ctx.no_cache, full)?,
                None => full(),
            }
        }
    };
    let total = poly.eval(&int(1), &int(1));
    let name = if cycle { "NCM" } else { "NM" };
    match ctx.format {
        Format::Text => {
            emit!(ctx, "{name}_{{{tau},{n}}}(x,y) = {}", poly.to_text());
            emit!(ctx, "total: {total}");
        }
        Format::Latex => emit!(ctx, "{name}_{{{tau},{n}}}(x,y) = {}", poly.to_latex()),
        Format::Json => {
            let shard = sharding.map(|(k, i)| json!({"shards": k, "shard": i}));
            print_json(
                ctx,
                &json!({
                    "pattern": tau.canonical_string(),
                    "n": n,
                    "cycle": cycle,
                    "shard": shard,
                    "ranks": factorial(n),
                    "poly": PolyJson::from(&poly),
                    "total": total.to_string(),
                }),
            );
        }
    }
    Ok(())
}

fn cmd_verify(ctx: &Ctx, suite: &str) -> CliResult<()> {
    let suite: Suite = suite.parse()?;
    let results = run_suite(suite)?;
    match ctx.format {
        Format::Json => print_json(
            ctx,
            &serde_json::to_value(&results).expect("results serialize"),
        ),
        _ => {
            for r in &results {
                emit!(ctx, "{r}");
            }
        }
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "failing criteria {failed:?}"
        )))
    }
}

fn cmd_dyck(ctx: &Ctx, k: usize) -> CliResult<()> {
    if k == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    ctx.limit("Dyck k", k, DYCK_BOUND)?;
    let rows: Vec<_> = dyck_paths(k - 1)
        .into_iter()
        .map(|path| {
            let seq = phi(&path);
            (path.to_string(), seq)
        })
        .collect();
    match ctx.format {
        Format::Json => {
            let doc: Vec<_> = rows
                .iter()
                .map(|(path, seq)| json!({"path": path, "sequence": seq}))
                .collect();
            print_json(ctx, &json!(doc));
        }
        _ => {
            for (path, seq) in &rows {
                let words: Vec<_> = seq.iter().map(u32::to_string).collect();
                let shown = if path.is_empty() { "(empty)" } else { path };
                emit!(ctx, "{shown}\t{}", words.join(" "));
            }
        }
    }
    Ok(())
}

fn cmd_descents(ctx: &Ctx, p: usize, k: u32, n: usize) -> CliResult<()> {
    let closed = match k {
        1 => nmtau::closedforms::d1(n, p).is_ok(),
        2 => nmtau::closedforms::d2(n, p).is_ok(),
        _ => false,
    };
    if !closed {
        ctx.limit("series order", n, ORDER_BOUND)?;
    }
    let d = descents(p, k, n)?;
    match ctx.format {
        Format::Json => print_json(ctx, &serde_json::to_value(&d).expect("count serializes")),
        Format::Latex => emit!(ctx, "d^{{({k})}}_{{{n},{p}}} = {}", d.value),
        Format::Text => {
            let how = match d.method {
                Method::ClosedForm => "closed form",
                Method::Series => "series extraction",
            };
            emit!(ctx, "d^({k})_{{{n},{p}}} = {} ({how})", d.value);
        }
    }
    Ok(())
}

fn cmd_identities(ctx: &Ctx, p: usize, n: usize) -> CliResult<()> {
    ctx.limit("series order", n, ORDER_BOUND)?;
    let report = coeff_identities(p, n)?;
    match ctx.format {
        Format::Json => print_json(
            ctx,
            &serde_json::to_value(&report).expect("report serializes"),
        ),
        _ => {
            for c in &report.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                emit!(
                    ctx,
                    "{status} {}: expected {}, got {}",
                    c.name,
                    c.expected,
                    c.actual
                );
            }
        }
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(CliError::Verification(
            "coefficient identities failed".into(),
        ))
    }
}

fn print_json(ctx: &Ctx, value: &serde_json::Value) {
    emit!(
        ctx,
        "{}",
        serde_json::to_string_pretty(value).expect("json value")
    );
}
