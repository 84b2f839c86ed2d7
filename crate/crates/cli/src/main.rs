mod syntax;

use std::process::ExitCode;

use cactus::conjugacy::{find_conjugator, order, DEFAULT_BUDGET};
use cactus::geodesic::{length, make_irreducible};
use cactus::median::{hyperplane_classes, median, ExploredGraph, DEFAULT_VERTEX_CAP};
use cactus::racg::{omega, racg_reduce, GammaGraph};
use cactus::topology::{abelianization_rank, check_sphere, link_complex, quotient_counts};
use cactus::verify::{find_criterion, run_criterion, CriterionOutcome, CRITERIA, DEFAULT_SEED};
use cactus::{equal, normalize, CactusError, GroupContext, SizeSet};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::syntax::{parse_sizes, parse_word};

const CAP_VAR: &str = "CACTUS_MAX_VERTICES";

#[derive(Parser)]
#[command(name = "cactus", version, about = "Word, conjugacy and geometry solvers for cactus groups")]
struct Cli {
    /// Number of strands.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Output format; `ball` also accepts `dot`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical normal form.
    Normalize { word: String },
    /// Whether two words represent the same element.
    Equal { left: String, right: String },
    /// Word length of the element.
    Length { word: String },
    /// The permutation Σ(w), as images of 1..n.
    Sigma { word: String },
    /// Whether Σ(w) is the identity.
    Pure { word: String },
    /// Whether two words are conjugate.
    Conjugate {
        left: String,
        right: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Order of the element, or `infinite`.
    Order { word: String },
    /// Image in the right-angled Coxeter group on interval labels.
    Omega { word: String },
    /// Ball of the Cayley graph around the identity.
    Ball {
        #[arg(long)]
        radius: usize,
        /// Generator sizes to use, e.g. `2,3`.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Median of three elements.
    Median { x: String, y: String, z: String },
    /// The vertex link complex.
    Link {
        /// Check that the link is a sphere of dimension n-3.
        #[arg(long)]
        check: bool,
    },
    /// Cube counts of the compact quotient.
    Quotient {
        /// Print only the Euler characteristic.
        #[arg(long)]
        euler: bool,
    },
    /// Rank of the abelianization.
    Abelianization,
    /// Run the self-checks.
    Verify {
        /// A single check, by number or name.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Engine(CactusError),
    Verification(String),
}

impl From<CactusError> for Failure {
    fn from(e: CactusError) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Engine(CactusError::BudgetExceeded { .. } | CactusError::ResourceLimit { .. }) => 3,
            Failure::Engine(CactusError::Invariant(_)) | Failure::Verification(_) => 4,
            Failure::Engine(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Verification(m) => m.clone(),
            Failure::Engine(e) => e.to_string(),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("cactus: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format.unwrap_or(Format::Text);
    if format == Format::Dot && !matches!(cli.command, Command::Ball { .. }) {
        return Err(Failure::Usage("--format dot is only available for `ball`".into()));
    }
    let json = format == Format::Json;
    match &cli.command {
        Command::Verify { suite, seed } => return verify(suite.as_deref(), *seed, json),
        Command::Link { check } => return link(require_n(cli)?, *check, json),
        Command::Quotient { euler } => return quotient(require_n(cli)?, *euler, json),
        Command::Abelianization => {
            let n = require_n(cli)?;
            let rank = abelianization_rank(n)?;
            return Ok(if json { render(json!({ "schema": "cactus.abelianization/v1", "n": n, "rank": rank })) } else { rank.to_string() });
        }
        _ => {}
    }
    let ctx = GroupContext::new(require_n(cli)?)?;
    let word = |text: &str| parse_word(ctx, text).map_err(Failure::from);
    match &cli.command {
        Command::Normalize { word: w } => {
            let nf = normalize(&word(w)?);
            Ok(if json {
                render(json!({ "schema": "cactus.normalize/v1", "n": ctx.n(), "word": nf.to_string(), "length": nf.len() }))
            } else {
                nf.to_string()
            })
        }
        Command::Equal { left, right } => predicate(equal(&word(left)?, &word(right)?)?, json),
        Command::Length { word: w } => {
            let w = word(w)?;
            let len = length(&w);
            Ok(if json {
                let geodesic = make_irreducible(&w);
                render(json!({ "schema": "cactus.length/v1", "n": ctx.n(), "length": len, "geodesic": geodesic.to_string() }))
            } else {
                len.to_string()
            })
        }
        Command::Sigma { word: w } => {
            let perm = word(w)?.sigma();
            Ok(if json { render(json!({ "schema": "cactus.sigma/v1", "n": ctx.n(), "images": perm.images() })) } else { perm.to_string() })
        }
        Command::Pure { word: w } => predicate(word(w)?.is_pure(), json),
        Command::Conjugate { left, right, budget } => {
            let (u, v) = (word(left)?, word(right)?);
            let found = find_conjugator(&u, &v, *budget)?;
            Ok(if json {
                render(json!({
                    "schema": "cactus.conjugate/v1",
                    "n": ctx.n(),
                    "conjugate": found.is_some(),
                    "conjugator": found.map(|c| c.to_string()),
                }))
            } else {
                found.is_some().to_string()
            })
        }
        Command::Order { word: w } => {
            let o = order(&word(w)?);
            Ok(if json { render(json!({ "schema": "cactus.order/v1", "n": ctx.n(), "order": o.to_string() })) } else { o.to_string() })
        }
        Command::Omega { word: w } => {
            let image = omega(&word(w)?);
            let reduced = racg_reduce(&image, &GammaGraph::new(ctx));
            Ok(if json {
                render(json!({ "schema": "cactus.omega/v1", "n": ctx.n(), "image": image.to_string(), "reduced": reduced.to_string() }))
            } else {
                image.to_string()
            })
        }
        Command::Ball { radius, subset } => {
            let sizes = match subset {
                Some(s) => parse_sizes(ctx, s)?,
                None => SizeSet::all(ctx),
            };
            let g = ExploredGraph::build(ctx, *radius, sizes, vertex_cap()?)?;
            Ok(match format {
                Format::Json => render(g.to_json(&hyperplane_classes(&g)?)),
                _ => g.to_dot().trim_end().to_string(),
            })
        }
        Command::Median { x, y, z } => {
            let m = median(&word(x)?, &word(y)?, &word(z)?)?;
            Ok(if json { render(json!({ "schema": "cactus.median/v1", "n": ctx.n(), "median": m.to_string() })) } else { m.to_string() })
        }
        Command::Verify { .. } | Command::Link { .. } | Command::Quotient { .. } | Command::Abelianization => unreachable!(),
    }
}

fn require_n(cli: &Cli) -> Result<usize, Failure> {
    cli.n.ok_or_else(|| Failure::Usage("this command needs --n <strands>".into()))
}

fn vertex_cap() -> Result<usize, Failure> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{CAP_VAR} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_VERTEX_CAP),
    }
}

fn render(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("JSON values always serialize")
}

fn predicate(b: bool, json: bool) -> Outcome {
    Ok(if json { render(json!({ "schema": "cactus.predicate/v1", "value": b })) } else { b.to_string() })
}

fn link(n: usize, check: bool, json: bool) -> Outcome {
    let complex = link_complex(n)?;
    let report = check.then(|| check_sphere(&complex, n - 3));
    if json {
        let mut doc = complex.to_json();
        if let Some(r) = &report {
            doc["check"] = json!({ "sphere_dimension": r.dimension, "passed": r.passed(), "failure": r.failure });
        }
        return Ok(render(doc));
    }
    let f: Vec<String> = complex.f_vector().iter().map(|x| x.to_string()).collect();
    match report {
        None => Ok(format!("f = ({})\neuler = {}", f.join(", "), complex.euler())),
        Some(r) if r.passed() => Ok(format!("sphere S^{}: f = ({}), euler = {}", r.dimension, f.join(", "), r.euler)),
        Some(r) => Err(Failure::Verification(format!("not a {}-sphere: {}", r.dimension, r.failure.unwrap_or_default()))),
    }
}

fn quotient(n: usize, euler_only: bool, json: bool) -> Outcome {
    let counts = quotient_counts(n)?;
    Ok(if json {
        render(counts.to_json())
    } else if euler_only {
        counts.euler().to_string()
    } else {
        let f: Vec<String> = counts.f.iter().map(|x| x.to_string()).collect();
        format!("f = ({})\neuler = {}", f.join(", "), counts.euler())
    })
}

fn verify(suite: Option<&str>, seed: u64, json: bool) -> Outcome {
    let ids: Vec<u8> = match suite {
        Some(key) => vec![find_criterion(key).ok_or_else(|| {
            let names: Vec<String> = CRITERIA.iter().map(|(i, n)| format!("{i} ({n})")).collect();
            Failure::Usage(format!("unknown suite `{key}`; choose one of {}", names.join(", ")))
        })?],
        None => CRITERIA.iter().map(|&(id, _)| id).collect(),
    };
    let outcomes: Vec<CriterionOutcome> = ids.into_iter().map(|id| run_criterion(id, seed)).collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let out = if json {
        let items: Vec<Value> = outcomes
            .iter()
            .map(|o| json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail }))
            .collect();
        render(json!({ "schema": "cactus.verify/v1", "seed": seed, "criteria": items }))
    } else {
        let lines: Vec<String> = outcomes
            .iter()
            .map(|o| format!("{} [{:>2}] {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.name, o.detail))
            .collect();
        lines.join("\n")
    };
    if failed > 0 {
        println!("{out}");
        return Err(Failure::Verification(format!("{failed} check(s) failed")));
    }
    Ok(out)
}
