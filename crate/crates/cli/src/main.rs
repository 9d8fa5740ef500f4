use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use toric_jets::components::{
    format_ratio, parse_count_table, recover_order_of, saturation_level, RecoveryError,
};
use toric_jets::equations::JetVariable;
use toric_jets::oracle::dimension_estimate;
use toric_jets::{
    an_components, build_graph, count_components, enumerate_components, lct, lct_via_mustata,
    recover_multiset, riemenschneider_equations, verify_stratum_counts, ComponentError, Error,
    JetSystem, LatticeError, OracleConfig, OracleError, Surface,
};

const EXIT_USAGE: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_SURFACE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_OTHER: u8 = 5;

/// Jet schemes of normal toric surface singularities.
#[derive(Parser)]
#[command(name = "toric-jets", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The surface, either as the cone `(p, q)` or as its continued fraction.
#[derive(Args)]
#[command(group(ArgGroup::new("surface").required(true).args(["p", "c"])))]
struct SurfaceArgs {
    #[arg(long, requires = "q", allow_negative_numbers = true)]
    p: Option<BigInt>,
    #[arg(long, requires = "p", allow_negative_numbers = true)]
    q: Option<BigInt>,
    /// Hirzebruch–Jung entries, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true, conflicts_with_all = ["p", "q"])]
    c: Option<Vec<BigInt>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountFormat {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Continued fraction, semigroup generators and resolution data.
    Analyze {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// The binomial equations, or their jets at level m.
    Equations {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        m: Option<usize>,
        /// Set level 0 to zero (jets over the singular point).
        #[arg(long, requires = "m")]
        centered: bool,
    },
    /// Components of the m-jets over the singular point.
    Components {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        m: usize,
    },
    /// Number of components for m = 1..=m-max.
    Count {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        m_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: CountFormat,
    },
    /// The graph of components across levels 1..=m-max.
    Graph {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Log canonical threshold of the surface in its minimal embedding.
    Lct {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Compute it from jet codimensions instead of the closed form.
        #[arg(long, requires = "m_max")]
        via_mustata: bool,
        #[arg(long)]
        m_max: Option<usize>,
    },
    /// Components of the m-jets of xy = z^(n+1) over the origin.
    An {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Recover the multiset of entries from a table of component counts.
    RecoverMultiset {
        /// File of "m count" lines, or - for standard input.
        #[arg(long)]
        from: String,
        #[arg(long)]
        e: usize,
    },
    /// Recover the order of the entries from the cross-family identifications.
    RecoverOrder {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        m_star: Option<usize>,
    },
    /// Count the m-jets over F_prime and check them against the classification.
    Verify {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        prime: u64,
        /// Overrides ORACLE_BUDGET_BITS.
        #[arg(long)]
        budget_bits: Option<String>,
    },
    /// Dimension of the m-jets over the singular point from point counts.
    Dimension {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        m: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[arg(long)]
        budget_bits: Option<String>,
    },
}

struct Output {
    text: String,
    status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, status: 0 }
    }

    fn json(value: &Value) -> Self {
        Self::ok(serde_json::to_string_pretty(value).expect("json output"))
    }
}

fn surface(args: &SurfaceArgs) -> Result<Surface, Error> {
    let s = match (&args.p, &args.q, &args.c) {
        (Some(p), Some(q), None) => Surface::from_pq(p.clone(), q.clone())?,
        (None, None, Some(c)) => Surface::from_c(c)?,
        _ => unreachable!("clap enforces one surface source"),
    };
    Ok(s)
}

fn oracle_config(budget_bits: &Option<String>) -> Result<OracleConfig, Error> {
    Ok(match budget_bits {
        Some(b) => OracleConfig::with_budget_bits(OracleConfig::parse_bits(b)?),
        None => OracleConfig::from_env()?,
    })
}

fn read_source(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path)
    }
}

/// `N(m)`, from the A_n description when `e = 3`.
fn component_count(s: &Surface, m: usize) -> Result<usize, Error> {
    if s.e == 3 {
        return Ok(an_components(s.c_at(2) - 1, m)?.len());
    }
    Ok(count_components(s, m)?)
}

fn equations(s: &Surface, m: Option<usize>, centered: bool) -> Value {
    let Some(m) = m else {
        let eqs: Vec<Value> = riemenschneider_equations(s)
            .iter()
            .map(|b| {
                let text = b
                    .to_polynomial::<BigInt>()
                    .display_with(|v| format!("x{}", v + 1));
                json!({"i": b.i, "j": b.j, "plus": b.plus, "minus": b.minus, "text": text})
            })
            .collect();
        return json!({"e": s.e, "equations": eqs});
    };
    let system = if centered {
        JetSystem::<BigInt>::centered(s, m)
    } else {
        JetSystem::<BigInt>::new(s, m)
    };
    let mut value = system.to_json();
    let text: Vec<Vec<String>> = system
        .equations
        .iter()
        .map(|levels| {
            levels
                .iter()
                .map(|f| f.display_with(|v| JetVariable::from_index(s.e, v).to_string()))
                .collect()
        })
        .collect();
    for (eq, lines) in value["equations"]
        .as_array_mut()
        .expect("equation list")
        .iter_mut()
        .zip(text)
    {
        eq["text"] = json!(lines);
    }
    value
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Analyze { surface: a } => Ok(Output::json(&surface(&a)?.to_json())),
        Command::Equations {
            surface: a,
            m,
            centered,
        } => Ok(Output::json(&equations(&surface(&a)?, m, centered))),
        Command::Components { surface: a, m } => {
            let s = surface(&a)?;
            if s.e == 3 {
                let comps = an_components(s.c_at(2) - 1, m)?;
                return Ok(Output::json(&json!({"m": m, "an": comps})));
            }
            Ok(Output::json(&enumerate_components(&s, m)?.to_json()))
        }
        Command::Count {
            surface: a,
            m_max,
            format,
        } => {
            let s = surface(&a)?;
            let counts = (1..=m_max)
                .map(|m| component_count(&s, m).map(|n| (m, n)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match format {
                CountFormat::Json => {
                    let rows: Vec<Value> = counts
                        .iter()
                        .map(|&(m, n)| json!({"m": m, "count": n}))
                        .collect();
                    Output::json(&json!({"e": s.e, "counts": rows}))
                }
                CountFormat::Table => Output::ok(
                    counts
                        .iter()
                        .map(|(m, n)| format!("{m} {n}"))
                        .collect::<Vec<_>>()
                        .join("\n"),
                ),
            })
        }
        Command::Graph {
            surface: a,
            m_max,
            dot,
        } => {
            let g = build_graph(&surface(&a)?, m_max)?;
            Ok(if dot {
                Output::ok(g.to_dot().trim_end().to_string())
            } else {
                Output::json(&g.to_json())
            })
        }
        Command::Lct {
            surface: a,
            via_mustata,
            m_max,
        } => {
            let s = surface(&a)?;
            if via_mustata {
                let table = lct_via_mustata(&s, m_max.expect("clap requires m-max"))?;
                Ok(Output::json(&table.to_json()))
            } else {
                Ok(Output::ok(format_ratio(&lct(&s))))
            }
        }
        Command::An { n, m } => Ok(Output::json(&json!(an_components(n, m)?))),
        Command::RecoverMultiset { from, e } => {
            let text = read_source(&from)
                .map_err(|err| Failure::Io(format!("cannot read {from}: {err}")))?;
            let table = parse_count_table(&text)?;
            let state = recover_multiset(&table, e)?;
            Ok(Output::json(&json!(state)))
        }
        Command::RecoverOrder { surface: a, m_star } => {
            let s = surface(&a)?;
            let m_star_used = m_star.unwrap_or_else(|| saturation_level(&s));
            let order = recover_order_of(&s, Some(m_star_used))?;
            Ok(Output::json(
                &json!({"m_star": m_star_used, "order": order}),
            ))
        }
        Command::Verify {
            surface: a,
            m,
            prime,
            budget_bits,
        } => {
            let config = oracle_config(&budget_bits)?;
            let report = verify_stratum_counts(&surface(&a)?, m, prime, &config)?;
            let mut out = Output::json(&report.to_json());
            if !report.all_pass() {
                out.status = EXIT_CHECK_FAILED;
            }
            Ok(out)
        }
        Command::Dimension {
            surface: a,
            m,
            primes,
            budget_bits,
        } => {
            let config = oracle_config(&budget_bits)?;
            Ok(Output::json(
                &dimension_estimate(&surface(&a)?, m, &primes, &config)?.to_json(),
            ))
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

macro_rules! lib_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(err: $t) -> Self {
                Failure::Lib(err.into())
            }
        }
    )*};
}

lib_failure!(
    Error,
    LatticeError,
    ComponentError,
    RecoveryError,
    OracleError
);

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Lattice(_) => EXIT_SURFACE,
        Error::Oracle(OracleError::BudgetExceeded { .. } | OracleError::Unsupported { .. }) => {
            EXIT_BUDGET
        }
        Error::Oracle(OracleError::InvalidPrime(_) | OracleError::InvalidBudget(_)) => EXIT_USAGE,
        Error::Component(ComponentError::LevelZero | ComponentError::LevelTooSmall { .. }) => {
            EXIT_USAGE
        }
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = writeln!(stdout, "{}", out.text);
            ExitCode::from(out.status)
        }
        Err(Failure::Lib(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_OTHER)
        }
    }
}
