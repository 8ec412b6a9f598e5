mod input;
mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qweyl::tensor::{verify_tensor_theorem, TensorError};
use qweyl::weylmod::{irreducible_quotient, local_weyl, LocalWeyl, LocalWeylOptions};
use qweyl::*;

use input::InputError;
use suites::{GarlandForm, Suite, SuiteOptions};

#[derive(Parser)]
#[command(name = "qweyl", version, about = "Queer Lie superalgebras, current algebras and their local Weyl modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Clone)]
struct WeightArgs {
    #[arg(long)]
    n: usize,
    /// `C`, `poly:N` or `sum:X,Y`.
    #[arg(long, default_value = "C")]
    coeff: String,
    /// Highest weight, e.g. `2,1`; ψ is λ times the distinguished character of A.
    #[arg(long, conflicts_with = "psi", required_unless_present = "psi")]
    lambda: Option<String>,
    /// JSON file with the n × dim A matrix of ψ(k_i ⊗ b_j) as scalar strings.
    #[arg(long)]
    psi: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    depth_cap: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Dump q(n), or q(n)⊗A when --coeff is given.
    BuildAlgebra {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Character of the local Weyl module.
    LocalWeyl {
        #[command(flatten)]
        w: WeightArgs,
        /// Include every action block in the output.
        #[arg(long)]
        dump: bool,
    },
    /// Character of the irreducible quotient of the local Weyl module.
    Irreducible {
        #[command(flatten)]
        w: WeightArgs,
    },
    /// Compare W(ψ₁)⊗W(ψ₂) with W(ψ₁+ψ₂).
    TensorCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "sum:C,C")]
        coeff: String,
        #[arg(long)]
        psi1: PathBuf,
        #[arg(long)]
        psi2: PathBuf,
        #[arg(long, default_value_t = 64)]
        depth_cap: i64,
    },
    /// Run verification suites; exit status 0 iff every check passes.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GarlandForm::Plain)]
        garland_form: GarlandForm,
    },
}

enum Failure {
    Input(String),
    Verification(serde_json::Value),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<WeylError> for Failure {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::DepthOverflow { .. } | WeylError::Inconsistent(_) => {
                Failure::Verification(json!({"error": "computation", "message": e.to_string()}))
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    ok: bool,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn check_rank(n: usize) -> Result<(), InputError> {
    if n < 2 {
        return Err(InputError::new("n must be at least 2"));
    }
    Ok(())
}

fn current(n: usize, coeff: &str) -> Result<Arc<CurrentAlgebra>, InputError> {
    check_rank(n)?;
    let a = input::parse_coeff(coeff)?;
    CurrentAlgebra::new(n, Arc::new(a)).map(Arc::new).map_err(|e| InputError::new(e.to_string()))
}

fn compute(w: &WeightArgs) -> Result<LocalWeyl, Failure> {
    if w.depth_cap < 1 {
        return Err(InputError::new("--depth-cap must be at least 1").into());
    }
    let alg = current(w.n, &w.coeff)?;
    let psi = match (&w.lambda, &w.psi) {
        (_, Some(p)) => input::read_psi(p, &alg.coeff, w.n)?,
        (Some(l), None) => input::psi_from_lambda(&input::parse_lambda(l, w.n)?, &alg.coeff)?,
        (None, None) => return Err(InputError::new("pass --lambda or --psi").into()),
    };
    let opts = LocalWeylOptions { depth_cap: w.depth_cap, initial_depth: None };
    Ok(local_weyl(&alg, &psi, &opts)?)
}

#[derive(Serialize)]
struct BlockDump {
    generator: String,
    weight: WeightVector,
    entries: Vec<(usize, usize, String)>,
}

fn dump_blocks(m: &WeightModule) -> Vec<BlockDump> {
    let alg = m.alg();
    let mut out = Vec::new();
    for g in 0..alg.dim() {
        for mu in m.weights() {
            if let Some(b) = m.block(g, mu) {
                out.push(BlockDump {
                    generator: alg.lie.label(g).to_string(),
                    weight: mu.clone(),
                    entries: b.entries().map(|(r, c, x)| (r, c, x.to_string())).collect(),
                });
            }
        }
    }
    out
}

fn character_output(ch: &Character, format: Format, extra: serde_json::Value) -> String {
    match format {
        Format::Csv => ch.to_csv(),
        Format::Json => {
            let mut v = extra;
            v["character"] = serde_json::to_value(ch).expect("serializable");
            to_json(&v)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::BuildAlgebra { n, coeff } => {
            check_rank(*n)?;
            let text = match coeff {
                None => {
                    let (q, rd) = qweyl::liesuper::build_q(*n).map_err(|e| InputError::new(e.to_string()))?;
                    let mut v = serde_json::to_value(&q).expect("serializable");
                    v["n"] = json!(n);
                    v["positive_roots"] = serde_json::to_value(&rd.positive_roots).expect("serializable");
                    to_json(&v)
                }
                Some(c) => {
                    let alg = current(*n, c)?;
                    let mut v = serde_json::to_value(&alg.lie).expect("serializable");
                    v["n"] = json!(n);
                    v["coeff"] = serde_json::to_value(&*alg.coeff).expect("serializable");
                    to_json(&v)
                }
            };
            Ok(Output { text, ok: true })
        }
        Command::LocalWeyl { w, dump } => {
            let lw = compute(w)?;
            let m = &lw.module;
            let mut extra = json!({
                "highest_weight": m.highest(),
                "dim": m.dim(),
                "depth": lw.depth,
                "attempts": lw.attempts,
                "top": lw.h.summary(),
            });
            if *dump {
                extra["weights"] = json!(m
                    .weights()
                    .map(|mu| json!({"weight": mu, "parities": m.parities(mu)}))
                    .collect::<Vec<_>>());
                extra["blocks"] = serde_json::to_value(dump_blocks(m)).expect("serializable");
            }
            Ok(Output { text: character_output(&m.character(), cli.format, extra), ok: true })
        }
        Command::Irreducible { w } => {
            let lw = compute(w)?;
            let irr = irreducible_quotient(&lw.module)?;
            let extra = json!({"highest_weight": irr.highest(), "dim": irr.dim(), "weyl_dim": lw.module.dim()});
            Ok(Output { text: character_output(&irr.character(), cli.format, extra), ok: true })
        }
        Command::TensorCheck { n, coeff, psi1, psi2, depth_cap } => {
            let alg = current(*n, coeff)?;
            let p1 = input::read_psi(psi1, &alg.coeff, *n)?;
            let p2 = input::read_psi(psi2, &alg.coeff, *n)?;
            let opts = LocalWeylOptions { depth_cap: *depth_cap, initial_depth: None };
            match verify_tensor_theorem(&alg, &p1, &p2, &opts) {
                Ok(r) => Ok(Output { text: to_json(&r), ok: r.holds() }),
                Err(TensorError::HypothesisViolation) => Err(Failure::Input(
                    "hypothesis violation: the annihilating ideals are not comaximal".into(),
                )),
                Err(TensorError::Weyl(e)) => Err(e.into()),
                Err(e) => Err(Failure::Verification(json!({"error": "tensor", "message": e.to_string()}))),
            }
        }
        Command::Verify { suite, n, seed, garland_form } => {
            if let Some(n) = n {
                check_rank(*n)?;
            }
            let opts = SuiteOptions { n: *n, seed: *seed, garland_form: *garland_form };
            let list = suite.expand();
            let reports: Vec<_> = thread::scope(|s| {
                let opts = &opts;
                let handles: Vec<_> = list.iter().map(|&st| s.spawn(move || suites::run(st, opts))).collect();
                handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
            });
            let ok = reports.iter().all(|r| r.pass);
            Ok(Output { text: to_json(&json!({"pass": ok, "suites": reports})), ok })
        }
    }
}

fn emit_error(kind: &str, message: &str) {
    eprintln!("{}", json!({"error": kind, "message": message}));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit_error("usage", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &out.text) {
                    emit_error("io", &format!("{}: {e}", path.display()));
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            emit_error("invalid_input", &msg);
            ExitCode::from(2)
        }
        Err(Failure::Verification(v)) => {
            eprintln!("{v}");
            ExitCode::from(1)
        }
    }
}
