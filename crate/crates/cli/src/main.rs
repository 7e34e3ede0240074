mod docs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use wpi_core::gt_module::{
    admissibility_oracle, default_budget, default_order, enumerate_basis, is_irreducible, probe_irreducible,
    verify_defining_relations, VerifyOptions,
};
use wpi_core::relations::{is_admissible, maximal_set, reduce, rr_remove};
use wpi_core::yangian_tensor::{integral_condition, is_generic, singular_profile, TensorModule};
use wpi_core::Error;

use docs::{InputError, RelationsDoc};

const EXIT_FALSE: u8 = 3;
const EXIT_INPUT: u8 = 4;
const EXIT_OVERFLOW: u8 = 5;

#[derive(Parser)]
#[command(name = "wpi", version, about = "Relation Gelfand-Tsetlin modules and Yangian tensor probes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SetArgs {
    #[arg(long)]
    pyramid: PathBuf,
    #[arg(long)]
    relations: PathBuf,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    radius: i64,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 3)]
    instantiations: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide admissibility and print a certificate.
    CheckAdmissible {
        #[command(flatten)]
        set: SetArgs,
        /// Also run the defining-relation oracle.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// Remove redundant relations.
    Reduce {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Remove every relation incident to an extremal triple.
    RrRemove {
        #[command(flatten)]
        set: SetArgs,
        /// Triple as `k,i,j`.
        #[arg(long)]
        triple: String,
    },
    /// List the basis tableaux of a window around the seed.
    EnumerateBasis {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Check the defining relations on a basis window.
    VerifyRelations {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        tableau: PathBuf,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// Decide irreducibility of the module of a seed tableau.
    Irreducible {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        tableau: PathBuf,
        /// Also run the reachability probe on a window of this radius.
        #[arg(long)]
        radius: Option<i64>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Singular vectors of a tensor product of evaluation modules.
    TensorCheck {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Mode::Generic)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Generic,
    Integral,
}

enum Failure {
    Input(InputError),
    Core(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Report {
    body: Value,
    holds: bool,
}

impl Report {
    fn new(command: &str, holds: bool, fields: Value) -> Self {
        let mut body = json!({ "v": docs::VERSION, "command": command });
        if let (Value::Object(dst), Value::Object(src)) = (&mut body, fields) {
            dst.extend(src);
        }
        Report { body, holds }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::CheckAdmissible { set, oracle, verify } => {
            let p = docs::pyramid(&set.pyramid)?;
            let c = docs::relations(&set.relations, &p)?;
            let verdict = is_admissible(&c);
            let mut fields = json!({
                "admissible": verdict.admissible,
                "certificate": to_value(&verdict.certificate),
            });
            if oracle {
                let opts = verify_options(&verify, default_budget(&p));
                fields["oracle"] = to_value(&admissibility_oracle(&c, &opts)?);
            }
            Ok(Report::new("check-admissible", verdict.admissible, fields))
        }
        Command::Reduce { set } => {
            let p = docs::pyramid(&set.pyramid)?;
            let c = docs::relations(&set.relations, &p)?;
            let r = reduce(&c)?;
            Ok(Report::new("reduce", true, json!({ "relations": to_value(&RelationsDoc::from_set(&r)) })))
        }
        Command::RrRemove { set, triple } => {
            let p = docs::pyramid(&set.pyramid)?;
            let c = docs::relations(&set.relations, &p)?;
            let t = docs::parse_triple(&triple).map_err(|e| InputError::new("--triple", e))?;
            let r = rr_remove(&c, &t)?;
            Ok(Report::new(
                "rr-remove",
                true,
                json!({ "triple": to_value(&t), "relations": to_value(&RelationsDoc::from_set(&r)) }),
            ))
        }
        Command::EnumerateBasis {
            set,
            tableau,
            radius,
            budget,
            seed,
        } => {
            let p = docs::pyramid(&set.pyramid)?;
            let c = docs::relations(&set.relations, &p)?;
            let l = docs::tableau(&tableau, &p)?;
            if !c.satisfies(&l) {
                return Err(Error::SeedViolatesRelations.into());
            }
            let order = default_order(budget.unwrap_or_else(|| default_budget(&p)));
            let w = enumerate_basis(&c, &l, radius, seed, order)?;
            let members: Vec<_> = w.members().iter().map(|z| docs::sparse(&p, z)).collect();
            Ok(Report::new(
                "enumerate-basis",
                true,
                json!({ "radius": radius, "count": members.len(), "members": to_value(&members) }),
            ))
        }
        Command::VerifyRelations { set, tableau, verify } => {
            let p = docs::pyramid(&set.pyramid)?;
            let c = docs::relations(&set.relations, &p)?;
            let l = docs::tableau(&tableau, &p)?;
            let opts = verify_options(&verify, default_budget(&p));
            let report = verify_defining_relations(&c, &l, &opts)?;
            Ok(Report::new(
                "verify-relations",
                report.passed,
                json!({
                    "radius": opts.radius,
                    "budget": opts.budget,
                    "seed": opts.seed,
                    "report": to_value(&report),
                }),
            ))
        }
        Command::Irreducible {
            set,
            tableau,
            radius,
            budget,
            seed,
        } => {
            let p = docs::pyramid(&set.pyramid)?;
            let c = docs::relations(&set.relations, &p)?;
            let l = docs::tableau(&tableau, &p)?;
            let irreducible = is_irreducible(&c, &l)?;
            let mut fields = json!({
                "irreducible": irreducible,
                "maximal_set": to_value(&RelationsDoc::from_set(&maximal_set(&l)?)),
            });
            if let Some(radius) = radius {
                let budget = budget.unwrap_or_else(|| default_budget(&p));
                let w = enumerate_basis(&c, &l, radius, seed, default_order(budget))?;
                let gap = probe_irreducible(&w, budget)?;
                fields["probe"] = json!({
                    "radius": radius,
                    "budget": budget,
                    "interior": w.interior().len(),
                    "connected": gap.is_none(),
                    "unreachable": gap.map(|(from, to)| json!({
                        "from": to_value(&docs::sparse(&p, &from)),
                        "to": to_value(&docs::sparse(&p, &to)),
                    })),
                });
            }
            Ok(Report::new("irreducible", irreducible, fields))
        }
        Command::TensorCheck { weights, depth, mode } => {
            let (ws, points) = docs::weights(&weights)?;
            let (label, condition) = match mode {
                Mode::Generic => ("generic", is_generic(&ws)),
                Mode::Integral => {
                    if ws.len() != 2 {
                        return Err(InputError::new(
                            &weights.display().to_string(),
                            "integral mode takes exactly two weights",
                        )
                        .into());
                    }
                    ("integral", integral_condition(&ws[0], &ws[1])?)
                }
            };
            let m = TensorModule::from_weights(&ws, &points, depth)?;
            let profile = singular_profile(&m, None)?;
            let top = m.depth_vector(&m.highest());
            let mut layers: Vec<Vec<Value>> = vec![Vec::new(); depth + 1];
            let mut extra = Vec::new();
            for (c, singular) in &profile {
                let d: i64 = c.iter().sum();
                layers[d as usize].push(json!({
                    "depth_vector": c,
                    "dimension": m.basis(c).len(),
                    "singular": singular,
                }));
                if *c != top && *singular > 0 {
                    extra.push(json!({ "depth_vector": c, "singular": singular }));
                }
            }
            let only_top = extra.is_empty();
            let layers: Vec<Value> = layers
                .into_iter()
                .enumerate()
                .map(|(d, spaces)| json!({ "depth": d, "weight_spaces": spaces }))
                .collect();
            Ok(Report::new(
                "tensor-check",
                only_top,
                json!({
                    "weights": ws.iter().map(|w| docs::scalar_strings(&w.0)).collect::<Vec<_>>(),
                    "points": docs::scalar_strings(&points),
                    "depth": depth,
                    "mode": label,
                    "condition": condition,
                    "only_top_singular": only_top,
                    "extra_singular": extra,
                    "depths": layers,
                }),
            ))
        }
    }
}

fn verify_options(v: &VerifyArgs, budget: usize) -> VerifyOptions {
    VerifyOptions {
        radius: v.radius,
        budget: v.budget.unwrap_or(budget),
        instantiations: v.instantiations,
        seed: v.seed,
    }
}

fn emit(body: &Value) {
    let mut out = std::io::stdout().lock();
    let text = serde_json::to_string_pretty(body).expect("report serializes");
    let _ = writeln!(out, "{text}");
}

fn configure_threads() -> Result<(), InputError> {
    let Ok(raw) = std::env::var("WPI_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| InputError::new("WPI_THREADS", format!("expected a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| InputError::new("WPI_THREADS", e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().map_err(Failure::from).and_then(|()| run(cli));
    match outcome {
        Ok(report) => {
            emit(&report.body);
            if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FALSE)
            }
        }
        Err(failure) => {
            let (code, kind, error) = match failure {
                Failure::Input(e) => (
                    EXIT_INPUT,
                    "input",
                    json!({ "path": e.path, "message": e.message, "line": e.line, "column": e.column }),
                ),
                Failure::Core(e @ (Error::WindowOverflow(_) | Error::DepthOverflow(_))) => {
                    (EXIT_OVERFLOW, "window_overflow", json!({ "message": e.to_string() }))
                }
                Failure::Core(e) => (EXIT_INPUT, "input", json!({ "message": e.to_string() })),
            };
            eprintln!("wpi: {}", error["message"].as_str().unwrap_or_default());
            emit(&json!({ "v": docs::VERSION, "error": { "kind": kind, "detail": error } }));
            ExitCode::from(code)
        }
    }
}
