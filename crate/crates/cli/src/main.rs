//! `jf`: command-line front end for the jacobi-core library.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jacobi_core::catalog::{FormId, DEFAULT_PREC};
use jacobi_core::identities::{find, matching, verify_all, IdentityReport};
use jacobi_core::lattice::{enumerate, LatticeTag};
use jacobi_core::numtheory::cohen_h;
use jacobi_core::rat::parse_rat;
use jacobi_core::representations::{
    count_bruteforce, formula_delta8, formula_r8, r_a8_formula, r_a8_odd_formula, tau, tau_all_routes, CountKind,
    CountQuery, TauRoute,
};
use jacobi_core::selftest::selftest;
use jacobi_core::Error;

#[derive(Parser)]
#[command(name = "jf", version, about = "Exact Jacobi forms, Cohen numbers and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohen number H(r, N) as p/q.
    Cohen {
        #[arg(long)]
        r: u32,
        #[arg(long = "N", allow_hyphen_values = true)]
        n: String,
    },
    /// Print a catalog form to the given q-precision.
    Expand {
        #[arg(long)]
        form: String,
        #[arg(long)]
        prec: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Verify registry identities whose id matches a glob.
    Verify {
        /// Identity id or glob (same as --id).
        pattern: Option<String>,
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        prec: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Representation counts from the closed formulas.
    Count {
        kind: CountArg,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        odd: bool,
        #[arg(long)]
        n: i64,
        /// Also count by brute force and fail on disagreement.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Ramanujan τ(n).
    Tau {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        route: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Vector counts by norm, as JSON.
    Lattice {
        tag: String,
        #[arg(long = "max-norm")]
        max_norm: i64,
    },
    /// Run every identity at its default precision and all oracle cross-checks.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountArg {
    R8,
    Delta8,
    Figurate,
}

/// A failure with its exit code: 1 check failed, 2 unknown name, 3 precondition.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownIdentity(_) | Error::UnknownForm(_) | Error::Parse(_) => 2,
            Error::Precondition(_) | Error::EmptyWindow(_) | Error::NegativeCohenArgument(_) => 3,
            _ => 1,
        };
        Failure(code, e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn env_prec() -> std::result::Result<Option<i64>, Failure> {
    match std::env::var("JF_DEFAULT_PREC") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure(3, format!("JF_DEFAULT_PREC must be an integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Cohen { r, n } => {
            if r == 0 {
                return Err(Failure(3, "r must be a positive integer".into()));
            }
            println!("{}", cohen_h(r, &parse_rat(&n)?)?);
        }
        Command::Expand { form, prec, json } => {
            let id: FormId = form.parse()?;
            let prec = prec.or(env_prec()?).unwrap_or(DEFAULT_PREC);
            let s = id.build(prec)?;
            if json {
                print_json(&json!({ "form": id.to_string(), "prec": prec.to_string(), "series": s.to_json_value() }));
            } else {
                println!("{s}");
            }
        }
        Command::Verify { pattern, id, prec, json } => {
            let pattern = id.or(pattern).unwrap_or_else(|| "*".into());
            let has_glob = pattern.contains(['*', '?']);
            if !has_glob {
                find(&pattern)?;
            } else if matching(&pattern).is_empty() {
                return Err(Failure(2, format!("no identity matches {pattern:?}")));
            }
            let prec = prec.or(env_prec()?);
            let reports = verify_all(&pattern, prec)?;
            if json {
                print_json(&Value::Array(reports.iter().map(IdentityReport::to_json_value).collect()));
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            if let Some(bad) = reports.iter().find(|r| !r.passed()) {
                return Err(Failure(1, format!("{} failed", bad.id)));
            }
        }
        Command::Count { kind, a, odd, n, oracle, json } => {
            let (label, value, query) = match kind {
                CountArg::R8 => ("r8", formula_r8(n)?, CountQuery::new(CountKind::Squares, 8, n)?),
                CountArg::Delta8 => ("delta8", formula_delta8(n)?, CountQuery::new(CountKind::Triangular, 8, n)?),
                CountArg::Figurate => {
                    let a = a.ok_or_else(|| Failure(3, "figurate counts need --a".into()))?;
                    if odd {
                        ("figurate_odd", r_a8_odd_formula(a, n)?, CountQuery::new(CountKind::FigurateOdd(a), 8, n)?)
                    } else {
                        ("figurate", r_a8_formula(a, n)?, CountQuery::new(CountKind::Figurate(a), 8, n)?)
                    }
                }
            };
            let brute = oracle.then(|| count_bruteforce(&query) as i64);
            if json {
                let mut q = json!({ "kind": label, "m": "8", "n": n.to_string() });
                if let Some(a) = a {
                    q["a"] = json!(a.to_string());
                }
                let mut out = json!({ "query": q, "value": value.to_string() });
                if let Some(b) = brute {
                    out["oracle"] = json!(b.to_string());
                }
                print_json(&out);
            } else {
                println!("{value}");
                if let Some(b) = brute {
                    println!("oracle {b}");
                }
            }
            if let Some(b) = brute {
                if b != value {
                    return Err(Failure(1, format!("formula {value} but brute force {b}")));
                }
            }
        }
        Command::Tau { n, route, json } => {
            let routes: Vec<(TauRoute, _)> = match &route {
                Some(r) => {
                    let r: TauRoute = r.parse()?;
                    vec![(r, tau(n, r)?)]
                }
                None => tau_all_routes(n)?,
            };
            let value = routes[0].1.clone();
            if json {
                let map: serde_json::Map<String, Value> =
                    routes.iter().map(|(r, v)| (r.name().to_string(), json!(v.to_string()))).collect();
                print_json(&json!({ "query": { "n": n.to_string() }, "value": value.to_string(), "routes": map }));
            } else {
                println!("{value}");
            }
            if let Some((r, v)) = routes.iter().find(|(_, v)| *v != value) {
                return Err(Failure(1, format!("route {r} gives {v}, expected {value}")));
            }
        }
        Command::Lattice { tag, max_norm } => {
            let tag: LatticeTag = tag.parse()?;
            let counts: serde_json::Map<String, Value> = enumerate(tag, max_norm)?
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v.to_string())))
                .collect();
            print_json(&Value::Object(counts));
        }
        Command::Selftest => {
            let checks = selftest();
            for c in &checks {
                println!("{c}");
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(Failure(1, format!("{failed} of {} checks failed", checks.len())));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("jf: {msg}");
            ExitCode::from(code)
        }
    }
}
