use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use weylb::atlas::{atlas, atlas_markdown, Parity};
use weylb::cyclo::{prime_power, EllContext};
use weylb::report::VerificationReport;
use weylb::suites::{group_summary, run_sweep, GroupSummary, Mutation, OutputFormat, Suite, SweepConfig};
use weylb::tits::supplement::CaseTwoParams;
use weylb::tits::DEFAULT_BUDGET;

/// Version of the JSON documents written to stdout.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "weylb", version, about = "Verification suites and block atlas for type B extended Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites over a parameter sweep.
    Verify(VerifyArgs),
    /// Print the isolated-block rows of B_n(q) for a prime ell.
    Atlas(AtlasArgs),
    /// Print the structure of the supplement V' for one case-2 tuple.
    Group(GroupArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Md => OutputFormat::Markdown,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1, 3])]
    d0: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
    tl: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [0, 1])]
    m: Vec<usize>,
    /// `odd` (d = d0), `even` (d = 2 d0), or integers whose parity selects the same.
    #[arg(long, value_delimiter = ',', default_values = ["odd", "even"])]
    d: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values_t = [5, 7])]
    ell: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
    q: Vec<u64>,
    /// Ranks for the atlas suite.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5, 6, 7, 8])]
    n: Vec<usize>,
    /// Suites to run; all when omitted.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long)]
    jobs: Option<usize>,
    /// Inject a defect: `sign:N:K` negates entry K of the rank-N sign table,
    /// `cocycle:I` perturbs the cocycle of m_I.
    #[arg(long)]
    mutate: Option<String>,
}

#[derive(Args)]
struct AtlasArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    ell: u64,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    d0: usize,
    #[arg(long)]
    tl: usize,
    #[arg(long)]
    m: usize,
    /// Defaults to d0.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 3)]
    q: u64,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    match s {
        "odd" => Ok(Parity::Odd),
        "even" => Ok(Parity::Even),
        _ => match s.parse::<u64>() {
            Ok(d) if d > 0 => Ok(if d % 2 == 1 { Parity::Odd } else { Parity::Even }),
            _ => Err(format!("invalid --d value {s:?}")),
        },
    }
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |x: &str| x.parse::<usize>().map_err(|_| format!("invalid --mutate value {s:?}"));
    match parts.as_slice() {
        ["sign", n, k] => Ok(Mutation::Sign { n: num(n)?, entry: num(k)? }),
        ["cocycle", i] => Ok(Mutation::Cocycle { generator: num(i)? }),
        _ => Err(format!("invalid --mutate value {s:?}")),
    }
}

fn reports_markdown(reports: &[VerificationReport]) -> String {
    let mut out = String::from("| suite | params | check | result | counterexample |\n|---|---|---|---|---|\n");
    for r in reports {
        for c in &r.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            let ce = c.counterexample.replace('|', "\\|");
            out.push_str(&format!("| {} | {} | {} | {verdict} | {ce} |\n", r.suite, r.param_string(), c.id));
        }
    }
    out
}

fn cmd_verify(a: VerifyArgs) -> ExitCode {
    let mut cfg = SweepConfig::default();
    cfg.d0_values = a.d0;
    cfg.t_l_values = a.tl;
    cfg.m_values = a.m;
    cfg.ell_values = a.ell;
    cfg.q_values = a.q;
    cfg.n_values = a.n;
    cfg.budget = a.budget;
    cfg.jobs = a.jobs;
    cfg.format = a.format.into();
    cfg.d_parities = match a.d.iter().map(|s| parse_parity(s)).collect::<Result<Vec<_>, _>>() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    if !a.suite.is_empty() {
        cfg.suites = match a.suite.iter().map(|s| Suite::from_str(s)).collect::<Result<Vec<_>, _>>() {
            Ok(s) => s,
            Err(e) => return usage(e),
        };
    }
    if let Some(m) = a.mutate {
        cfg.mutation = match parse_mutation(&m) {
            Ok(m) => Some(m),
            Err(e) => return usage(e),
        };
    }
    let start = Instant::now();
    let reports = match run_sweep(&cfg) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    match cfg.format {
        OutputFormat::Json => {
            let doc = json!({ "schema_version": SCHEMA_VERSION, "reports": reports });
            println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
        }
        OutputFormat::Markdown => print!("{}", reports_markdown(&reports)),
    }
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.passed()).collect();
    for r in &failed {
        for c in r.checks.iter().filter(|c| !c.passed) {
            eprintln!("FAIL {} {} {}: {}", r.suite, r.param_string(), c.id, c.counterexample);
        }
    }
    eprintln!("{} reports, {} failed, {:.2?}", reports.len(), failed.len(), start.elapsed());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_atlas(a: AtlasArgs) -> ExitCode {
    if prime_power(a.q).is_none() {
        return usage(format!("q = {} is not a prime power", a.q));
    }
    let ctx = match EllContext::new(a.q, a.ell) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let entries = match atlas(a.n, &ctx) {
        Ok(e) => e,
        Err(e) => return usage(e),
    };
    match a.format {
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "n": a.n,
                "q": a.q,
                "ell": a.ell,
                "d": ctx.d,
                "d0": ctx.d0,
                "rows": entries,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("rows serialize"));
        }
        Format::Md => print!("{}", atlas_markdown(&entries)),
    }
    ExitCode::SUCCESS
}

fn group_markdown(s: &GroupSummary) -> String {
    let p = s.params;
    let mut out = format!(
        "V' for d0 = {}, t_l = {}, m = {}, d = {} (n = {})\n\n| order V' | order C' | order P' | order H' |\n|---|---|---|---|\n| {} | {} | {} | {} |\n\n",
        p.d0, p.t_l, p.m, p.d, s.n, s.v_order, s.c_order, s.p_order, s.h_order
    );
    for (i, c) in s.c_primes.iter().enumerate() {
        out.push_str(&format!("c'_{} = {c}\n", i + 1));
    }
    for (i, x) in s.p_primes.iter().enumerate() {
        out.push_str(&format!("p'_{} = {x}\n", i + 1));
    }
    if s.conjugation.is_empty() {
        out.push_str("\nconjugation table: trivial\n");
    } else {
        out.push_str("\n| c' | p' | conjugate |\n|---|---|---|\n");
        for &(i, j, k) in &s.conjugation {
            let target = if k == 0 { "outside {c'}".to_string() } else { format!("c'_{k}") };
            out.push_str(&format!("| c'_{i} | p'_{j} | {target} |\n"));
        }
    }
    out
}

fn cmd_group(a: GroupArgs) -> ExitCode {
    if prime_power(a.q).is_none() || a.q.is_multiple_of(2) {
        return usage(format!("q = {} must be an odd prime power", a.q));
    }
    let params = match CaseTwoParams::new(a.d0, a.tl, a.m, a.d.unwrap_or(a.d0)) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let s = match group_summary(params, a.q, a.budget) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    match a.format {
        Format::Json => {
            let doc = json!({ "schema_version": SCHEMA_VERSION, "group": s });
            println!("{}", serde_json::to_string_pretty(&doc).expect("summary serializes"));
        }
        Format::Md => print!("{}", group_markdown(&s)),
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Atlas(a) => cmd_atlas(a),
        Command::Group(a) => cmd_group(a),
    }
}
