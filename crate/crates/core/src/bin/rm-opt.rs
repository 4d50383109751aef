//! `rm-opt`: redundancy tables, code summaries and formula verification for
//! correction-capability-optimized Reed-Muller codes.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when a formula
//! disagrees with enumeration.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rm_opt::check_sets::Variant;
use rm_opt::closed_form::Mutation;
use rm_opt::evaluation_codes::{summarize, Guards};
use rm_opt::gf_arithmetic::field_make;
use rm_opt::monomial_order::{index_to_monomial, monomial_to_index, nu, Monomial, MonomialIndex};
use rm_opt::report::{self, VerifyConfig};
use rm_opt::Error;

#[derive(Parser)]
#[command(name = "rm-opt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between a monomial index and its exponent vector.
    Index {
        #[arg(long)]
        m: usize,
        /// Monomial index in the graded-lex order.
        #[arg(long, conflicts_with = "exp", required_unless_present = "exp")]
        i: Option<u64>,
        /// Comma separated exponents a_1,...,a_m.
        #[arg(long)]
        exp: Option<String>,
    },
    /// Redundancies of the four code families for a range of t.
    Table {
        #[arg(long)]
        m: usize,
        /// Inclusive range `A..B`, or a single value.
        #[arg(long, value_parser = parse_range)]
        t: (u64, u64),
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        /// Append the enumerated set sizes as extra CSV columns.
        #[arg(long)]
        with_oracle: bool,
        /// Emit a gnuplot script with the data inlined instead.
        #[arg(long)]
        gnuplot: bool,
        /// Leave r(t) out of the gnuplot script.
        #[arg(long, requires = "gnuplot")]
        improved_only: bool,
    },
    /// Build a code over GF(p^e)^m and report its parameters.
    Code {
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: CodeFormat,
        /// Also brute-force the minimum distance.
        #[arg(long)]
        distance: bool,
    },
    /// Check every closed form against enumeration.
    Verify {
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long, default_value_t = 20)]
        t_max: u64,
        /// Per-m t ranges `M:T,...`, replacing --m-max/--t-max.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
        /// Alter one binomial term of r~*(t), e.g. `double:1:1`,
        /// `top:2@bottom-1` or `upto@drop`. Used to test the verifier itself.
        #[arg(long, hide = true)]
        mutate: Option<Mutation>,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let num = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("`{x}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

#[derive(Clone)]
struct Grid(Vec<(usize, u64)>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.split(',')
        .map(|part| {
            let (m, t) = part
                .split_once(':')
                .ok_or_else(|| format!("`{part}` is not M:T"))?;
            let m = m.trim().parse().map_err(|_| format!("bad m in `{part}`"))?;
            let t = t.trim().parse().map_err(|_| format!("bad t in `{part}`"))?;
            Ok((m, t))
        })
        .collect::<Result<_, _>>()
        .map(Grid)
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Mismatch { .. } => Failure::Mismatch(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Index { m, i, exp } => {
            if m == 0 {
                return Err(Failure::Usage("--m must be at least 1".into()));
            }
            let (index, a) = match (i, exp) {
                (Some(i), _) => (MonomialIndex(i), index_to_monomial(MonomialIndex(i), m)),
                (None, Some(text)) => {
                    let a = Monomial::parse(&text)?;
                    if a.vars() != m {
                        return Err(Failure::Usage(format!(
                            "exponent list `{text}` has {} entries, expected {m}",
                            a.vars()
                        )));
                    }
                    (monomial_to_index(&a)?, a)
                }
                (None, None) => unreachable!("clap requires --i or --exp"),
            };
            writeln!(
                out,
                "i={index} exponents={a} degree={} nu={}",
                a.degree(),
                nu(&a)
            )?;
        }
        Command::Table {
            m,
            t: (t_min, t_max),
            format,
            with_oracle,
            gnuplot,
            improved_only,
        } => {
            let rows = report::table_rows(m, t_min, t_max)?;
            if gnuplot {
                write!(out, "{}", report::gnuplot_script(m, &rows, !improved_only))?;
            } else {
                match format {
                    TableFormat::Csv => report::write_csv(&rows, with_oracle, &mut out)?,
                    TableFormat::Json => report::write_json(&rows, &mut out)?,
                }
            }
        }
        Command::Code {
            variant,
            t,
            p,
            e,
            m,
            format,
            distance,
        } => {
            if m == 0 {
                return Err(Failure::Usage("--m must be at least 1".into()));
            }
            let field = field_make(p, e)?;
            let set = report::build_set(variant, t, m)?;
            let summary = summarize(&set, &field, &Guards::from_env(), distance)?;
            match format {
                CodeFormat::Json => {
                    serde_json::to_writer_pretty(&mut out, &summary).map_err(io::Error::from)?;
                    writeln!(out)?;
                }
                CodeFormat::Text => {
                    writeln!(
                        out,
                        "{} code, t={}, over GF({})^{}: n={} checks={} redundancy={} dimension={} max_exponent={}{}",
                        summary.variant,
                        summary.t,
                        summary.q,
                        summary.m,
                        summary.n,
                        summary.checks,
                        summary.redundancy,
                        summary.dimension,
                        summary.max_exponent,
                        if summary.rank_deficit { " (rank deficit)" } else { "" }
                    )?;
                    if let Some(d) = summary.min_distance {
                        writeln!(out, "minimum distance {d}")?;
                    }
                }
            }
        }
        Command::Verify {
            m_max,
            t_max,
            grid,
            mutate,
        } => {
            let mut config = match grid {
                Some(Grid(grid)) => VerifyConfig {
                    grid,
                    ..VerifyConfig::uniform(0, 0)
                },
                None => VerifyConfig::uniform(m_max, t_max),
            };
            if config.grid.is_empty() {
                return Err(Failure::Usage("nothing to verify".into()));
            }
            config.mutation = mutate;
            let result = report::run_verify(&config)?;
            write!(out, "{}", result.render())?;
            if let Some((name, f)) = result.first_failure() {
                return Err(Failure::Mismatch(format!(
                    "{name}: counterexample t={} m={} expected={} got={}",
                    f.t, f.m, f.expected, f.got
                )));
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(2)
        }
    }
}
