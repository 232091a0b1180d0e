use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use simcores::abacus::render::{render_ascii, render_svg};
use simcores::abacus::{for_each_abacus, Variant};
use simcores::counting::{count, totals_brute_limited, totals_formulas, CountReport, Method, DEFAULT_BRUTE_LIMIT};
use simcores::oddeven::oddeven_table;
use simcores::oeis::{fetch_remote, match_local, DEFAULT_TIMEOUT};
use simcores::verify::{self, Suite};
use simcores::{AbacusFunction, CountError, DiffSet, Partition};

#[derive(Parser)]
#[command(name = "simcores", version, about = "Count simultaneous (n, n+1)-cores with restricted part differences")]
struct Cli {
    /// Largest n that enumeration-based routes may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_LIMIT)]
    work_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count cores for n = 0..=N.
    Count {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = parse_method)]
        method: Option<Method>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Totals of largest part, length and size over the counted cores.
    Totals {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = parse_method, default_value = "formulas")]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the matching (n, n+1)-cores.
    List {
        #[arg(long)]
        n: usize,
        #[arg(long = "set", value_name = "SPEC", value_parser = parse_set)]
        m: DiffSet,
        #[arg(long, value_parser = parse_variant, default_value = "q")]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw an abacus.
    Render {
        /// Abacus function as `n:f0,f1,...`.
        #[arg(long, conflicts_with_all = ["partition", "n"], required_unless_present = "partition")]
        abacus: Option<String>,
        /// Parts as `a,b,c` (empty for the empty partition); needs `--n`.
        #[arg(long, requires = "n")]
        partition: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Drawing::Ascii)]
        format: Drawing,
    },
    /// Run a named cross-check suite; exits 1 on any mismatch.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The E/O/SE/SO/CE/CO table.
    Oddeven {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Match a sequence prefix against known sequences.
    Oeis {
        #[arg(long, value_delimiter = ',', required = true)]
        prefix: Vec<i64>,
        #[arg(long, default_value_t = 10)]
        max_shift: usize,
        /// Query oeis.org as well (also requires SIMCORES_NETWORK=1).
        #[arg(long)]
        remote: bool,
        #[arg(long, default_value_t = DEFAULT_TIMEOUT.as_secs_f64())]
        timeout_secs: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Target {
    /// Restriction set, e.g. `positive`, `mult+:2`, `finite:1,3|ap:10:5`.
    #[arg(long = "set", value_name = "SPEC", value_parser = parse_set)]
    m: DiffSet,
    #[arg(long)]
    n_max: usize,
    #[arg(long, value_parser = parse_variant, default_value = "q")]
    variant: Variant,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Drawing {
    Ascii,
    Svg,
}

fn parse_set(s: &str) -> Result<DiffSet, String> {
    DiffSet::parse(s).map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        match e {
            CountError::UnsupportedMethod { .. } | CountError::NoClosedForm { .. } | CountError::ZeroInSet { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn compute(e: impl std::fmt::Display) -> Failure {
    Failure::Compute(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let limit = cli.work_limit;
    match cli.command {
        Command::Count { target, method, format } => {
            let method = method.unwrap_or(match target.variant {
                Variant::P => Method::Brute,
                _ => Method::Recurrence,
            });
            if method == Method::Closed && target.variant == Variant::Q {
                check_closed(&target.m)?;
            }
            let report = count(&target.m, target.n_max, target.variant, method, limit)?;
            Ok((render_report(&report, format), true))
        }
        Command::Totals { target, method, format } => {
            let report = match method {
                Method::Formulas if target.variant == Variant::Q => totals_formulas(&target.m, target.n_max)?,
                Method::Brute => totals_brute_limited(&target.m, target.n_max, target.variant, limit)?,
                _ => {
                    return Err(usage(format!(
                        "totals for variant {} support --method {}",
                        target.variant,
                        if target.variant == Variant::Q { "formulas, brute" } else { "brute" }
                    )))
                }
            };
            Ok((render_report(&report, format), true))
        }
        Command::List { n, m, variant, format } => list(n, &m, variant, format, limit),
        Command::Render { abacus, partition, n, format } => {
            let f = match (abacus, partition, n) {
                (Some(spec), _, _) => AbacusFunction::parse_spec(&spec).map_err(usage)?,
                (None, Some(parts), Some(n)) => {
                    let parts: Vec<usize> = parts
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| s.trim().parse::<usize>().map_err(|_| usage(format!("bad part `{s}`"))))
                        .collect::<Result<_, _>>()?;
                    let lambda = Partition::new(parts).map_err(usage)?;
                    AbacusFunction::encode(&lambda, n).map_err(compute)?
                }
                _ => return Err(usage("give --abacus, or --partition with --n")),
            };
            let out = match format {
                Drawing::Ascii => render_ascii(&f),
                Drawing::Svg => render_svg(&f),
            };
            Ok((out, true))
        }
        Command::Verify { suite, n_max, format } => {
            let report = verify::run(suite, n_max, limit)?;
            let ok = report.passed();
            let out = match format {
                Format::Json => json_line(&report),
                Format::Text => {
                    let mut out = String::new();
                    for c in &report.checks {
                        let tag = if c.passed { "ok  " } else { "FAIL" };
                        writeln!(out, "{tag} {}: {}", c.name, c.detail).unwrap();
                    }
                    let failed = report.checks.iter().filter(|c| !c.passed).count();
                    writeln!(out, "{suite}: {} checks, {failed} failed", report.checks.len()).unwrap();
                    out
                }
            };
            Ok((out, ok))
        }
        Command::Oddeven { n_max, format } => {
            let rows = oddeven_table(n_max, limit)?;
            let ok = rows.iter().all(|r| {
                r.routes_agree
                    && [r.theorem, r.ce_identity, r.se_recurrence, r.so_shift].iter().all(|c| *c != Some(false))
            });
            let out = match format {
                Format::Json => json_line(&rows),
                Format::Text => {
                    let mark = |c: Option<bool>| match c {
                        None => "-",
                        Some(true) => "ok",
                        Some(false) => "FAIL",
                    };
                    let mut out = format!(
                        "{:>3} {:>10} {:>10} {:>8} {:>8} {:>8} {:>8}  {:<7} {}\n",
                        "n", "E", "O", "SE", "SO", "CE", "CO", "theorem", "CE-id"
                    );
                    for r in &rows {
                        writeln!(
                            out,
                            "{:>3} {:>10} {:>10} {:>8} {:>8} {:>8} {:>8}  {:<7} {}",
                            r.n,
                            r.e,
                            r.o,
                            r.se,
                            r.so,
                            r.ce,
                            r.co,
                            mark(r.theorem),
                            mark(r.ce_identity)
                        )
                        .unwrap();
                    }
                    out
                }
            };
            Ok((out, ok))
        }
        Command::Oeis { prefix, max_shift, remote, timeout_secs, format } => {
            let local = match_local(&prefix, max_shift).map_err(usage)?;
            let remote_hits = if remote {
                let timeout = Duration::try_from_secs_f64(timeout_secs).map_err(usage)?;
                Some(fetch_remote(&prefix, timeout, true).map_err(compute)?)
            } else {
                None
            };
            let out = match format {
                Format::Json => {
                    let local: Vec<_> =
                        local.iter().map(|(r, s)| json!({"id": r.id, "name": r.name, "shift": s})).collect();
                    json_line(&json!({"local": local, "remote": remote_hits}))
                }
                Format::Text => {
                    let mut out = String::new();
                    if local.is_empty() {
                        out.push_str("no local matches\n");
                    }
                    for (r, s) in &local {
                        writeln!(out, "{}  shift {s}  {}", r.id, r.name).unwrap();
                    }
                    for r in remote_hits.iter().flatten() {
                        writeln!(out, "{}  (remote)  {}", r.id, r.name).unwrap();
                    }
                    out
                }
            };
            Ok((out, true))
        }
    }
}

fn check_closed(m: &DiffSet) -> Result<(), Failure> {
    if m.as_multiples().is_some() || m.is_positive_integers() {
        Ok(())
    } else {
        Err(usage(format!(
            "`--method closed` needs a set with a closed form (all, positive, mult:d); for `{}` use recurrence, series or brute",
            m.spec_text()
        )))
    }
}

fn list(n: usize, m: &DiffSet, variant: Variant, format: Format, limit: usize) -> Outcome {
    if n > limit {
        return Err(Failure::Compute(CountError::WorkLimit { n_max: n, limit }.to_string()));
    }
    let mut found = Vec::new();
    if n == 0 {
        found.push(Partition::empty());
    } else {
        for_each_abacus(n, |f| {
            let f = AbacusFunction::validate(n, f.to_vec()).expect("enumerated abaci are valid");
            if f.satisfies(m, variant) {
                found.push(f.decode());
            }
        });
    }
    found.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.parts().cmp(a.parts())));
    let out = match format {
        Format::Json => json_line(&found),
        Format::Text => {
            let mut out = String::new();
            for p in &found {
                writeln!(out, "{p}").unwrap();
            }
            out
        }
    };
    Ok((out, true))
}

fn render_report(report: &CountReport, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text => {
            let mut out = format!("# set {} variant {} method {}\n", report.m_spec, report.variant, report.method);
            match &report.totals {
                None => {
                    writeln!(out, "{:>4} count", "n").unwrap();
                    for (n, v) in report.values.iter().enumerate() {
                        writeln!(out, "{n:>4} {v}").unwrap();
                    }
                }
                Some(t) => {
                    writeln!(out, "{:>4} {:>12} {:>12} {:>12} {:>12}", "n", "count", "TL", "TP", "TS").unwrap();
                    for n in 0..report.values.len() {
                        writeln!(
                            out,
                            "{n:>4} {:>12} {:>12} {:>12} {:>12}",
                            report.values[n], t.largest[n], t.length[n], t.size[n]
                        )
                        .unwrap();
                    }
                }
            }
            out
        }
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    format!("{}\n", serde_json::to_string(value).expect("serializable"))
}
