use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toric_desing::binomial::{standard_basis, BinomialIdeal};
use toric_desing::driver::{self, Mode, Problem};
use toric_desing::fan::{Fan, LinearForm};
use toric_desing::hypersurface::{resolve_hypersurface, TieBreak};
use toric_desing::samuel::{equimultiple_locus, ChartPresentation, Locus, Role};
use toric_desing::{json, parse, Error, Result};

#[derive(Parser)]
#[command(name = "toric-desing", version, about = "Combinatorial resolution of toric and binomial singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tie {
    Omega,
    Lex,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Toric,
    CanonicalToric,
    CanonicalBinomial,
}

#[derive(Subcommand)]
enum Command {
    /// Star subdivisions lowering the order of the hypersurface of a linear form.
    ResolveHypersurface {
        #[arg(long)]
        fan: PathBuf,
        /// Values of the linear form on the standard basis, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value = "omega")]
        tie_break: Tie,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Standard basis at the distinguished point.
    StandardBasis {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Hilbert-Samuel function and components of the maximal Samuel stratum.
    SamuelStrata {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Embedded resolution of a binomial ideal.
    Resolve {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long = "char")]
        characteristic: Option<u64>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Equimultiple locus of one binomial.
    Equimultiple {
        #[arg(long)]
        binomial: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn names_of(ideal: &BinomialIdeal, vars: &[usize]) -> Vec<String> {
    let names = ideal.variable_names();
    vars.iter().map(|&v| names[v].clone()).collect()
}

fn run(cmd: Command) -> Result<Value> {
    match cmd {
        Command::ResolveHypersurface { fan, lambda, tie_break, trace, budget } => {
            let fan = Fan::from_json(&read(&fan)?)?;
            let values = lambda
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|_| Error::invalid(format!("bad lambda entry {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let tie = match tie_break {
                Tie::Omega => TieBreak::Omega,
                Tie::Lex => TieBreak::Lex,
            };
            let res = resolve_hypersurface(&fan, &LinearForm::from_i64(&values), tie, budget)?;
            if let Some(path) = trace {
                let lines: String = res.trace.iter().map(|s| json::canonical(s) + "\n").collect();
                write(&path, &lines)?;
            }
            let final_fan: Value = serde_json::from_str(&res.fan.to_json()?).expect("fan json parses");
            Ok(json!({ "fan": final_fan, "steps": res.trace.len() }))
        }
        Command::StandardBasis { ideal } => {
            let ideal = BinomialIdeal::from_json(&read(&ideal)?)?;
            let sb = standard_basis(&ideal)?;
            let torus = sb.torus.basis_i64().ok_or_else(|| Error::invalid("torus relation exceeds 64 bits"))?;
            Ok(json!({
                "elements": sb.elements,
                "torus": torus,
                "x_vars": names_of(&ideal, &sb.x_vars),
                "y_vars": names_of(&ideal, &sb.y_vars),
            }))
        }
        Command::SamuelStrata { ideal } => {
            let ideal = BinomialIdeal::from_json(&read(&ideal)?)?;
            let cp = ChartPresentation::from_ideal(&ideal)?;
            let hs = cp.hilbert_samuel();
            let until = hs.stable_from() + hs.embedding_dim as i64;
            let values: Vec<String> = (0..=until).map(|l| hs.eval(l).to_string()).collect();
            let components: Vec<Vec<String>> = cp
                .samuel_stratum_components()
                .iter()
                .map(|c| names_of(&ideal, &cp.orbit_closure(c)))
                .collect();
            let roles: serde_json::Map<String, Value> = ideal
                .variable_names()
                .into_iter()
                .zip(&cp.roles)
                .map(|(n, r)| {
                    let role = match r {
                        Role::Essential => "essential",
                        Role::Solved => "solved",
                        Role::Free => "free",
                        Role::Unit => "unit",
                    };
                    (n, Value::from(role))
                })
                .collect();
            Ok(json!({
                "components": components,
                "hilbert_samuel": values,
                "roles": roles,
                "smooth": cp.is_smooth(),
            }))
        }
        Command::Resolve { ideal, mode, characteristic, trace, budget } => {
            let mut ideal = BinomialIdeal::from_json(&read(&ideal)?)?;
            if let Some(p) = characteristic {
                ideal = ideal.with_characteristic(p)?;
            }
            let mode = match mode {
                ModeArg::Toric => Mode::Toric,
                ModeArg::CanonicalToric => Mode::CanonicalToric,
                ModeArg::CanonicalBinomial => Mode::CanonicalBinomial,
            };
            let mut problem = Problem::new(ideal.clone(), mode);
            if let Some(b) = budget {
                problem = problem.with_budget(b);
            }
            let res = driver::resolve(&problem)?;
            if let Some(path) = trace {
                write(&path, &res.trace_jsonl())?;
            }
            let order: Vec<String> = if mode.is_canonical() { Vec::new() } else { ideal.variable_names()[..res.initial_divisors].to_vec() };
            Ok(json!({
                "exceptional_divisors": res.exceptional.len() - res.initial_divisors,
                "final_charts": res.charts.len(),
                "mode": mode.as_str(),
                "normal_crossings": res.charts.iter().all(|c| c.normal_crossings),
                "orbit_order": order,
                "singular_steps": res.singular_steps(),
                "steps": res.steps.len(),
            }))
        }
        Command::Equimultiple { binomial, characteristic } => {
            let (b, names) = parse::parse_binomial(&binomial)?;
            match equimultiple_locus(&b, characteristic)? {
                Locus::Components(cs) => {
                    let cs: Vec<Vec<String>> = cs.iter().map(|c| c.iter().map(|&v| names[v].clone()).collect()).collect();
                    Ok(json!({ "components": cs }))
                }
                Locus::NotApplicable { witness } => Ok(json!({ "not_applicable": witness })),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => {
            println!("{}", json::canonical(&v));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
