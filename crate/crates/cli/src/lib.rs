//! Command-line front end. [`run`] takes the argument vector and two sinks
//! and returns the process exit code: 0 on success, 1 when a verification
//! verdict fails, 2 when the command could not run.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use clickstate::ensemble::{
    ingest_clicks, mix_braces, read_jsonl, simulate_clicks, write_jsonl, BraceMixture,
    EnsembleBrace, SimulationSpec,
};
use clickstate::experiments::{
    classical_positivity_check, convergence_study, two_slit_demo, ExperimentReport,
};
use clickstate::numeric::{
    algebra_verify, ansatz_search, ordinal_encode, PairNumber, SurvivorReport,
};
use clickstate::rational::{self, Rational};
use clickstate::statespace::{
    measure, measure_mixture, verify_lvs_axioms, BasisChange, InstrumentId, InstrumentRep,
    MixtureState, Registry, SessionConfig, StateVector, DEFAULT_DIMENSION,
};
use clickstate::CheckReport;

#[derive(Parser, Debug)]
#[command(
    name = "clickstate",
    version,
    about = "Click-stream statistics and the pair-number state space"
)]
struct Cli {
    /// Seed for randomized subcommands; defaults to the session seed, else 0
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Session file with dimension, instruments and basis changes
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    /// Write the result here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a click stream (JSON Lines) from a distribution
    Simulate {
        /// Comma-separated probabilities, e.g. 3/10,7/10
        #[arg(long)]
        nu: String,
        #[arg(long)]
        sigma: u64,
        #[arg(long, default_value = "A")]
        instrument: String,
    },
    /// Build an ensemble brace from a click stream
    Ingest {
        #[arg(long)]
        clicks: PathBuf,
        #[arg(long, default_value = "A")]
        instrument: String,
        /// Comma-separated κ per outcome; default 1/2 everywhere
        #[arg(long)]
        kappa: Option<String>,
        #[command(flatten)]
        dim: DimensionArg,
    },
    /// Extract (ν, κ) statistics from a brace
    Extract {
        #[arg(long)]
        brace: PathBuf,
    },
    /// Randomized exact check of the pair-number field laws
    AlgebraVerify {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Enumerate the sixteen sign assignments of the product ansatz
    AnsatzSearch {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Randomized exact check of the vector-space identities
    LvsVerify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        dim: DimensionArg,
    },
    /// Measurement statistics of a state for an instrument
    Measure {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        instrument: String,
    },
    /// Classical mixture of braces, or of states measured by an instrument
    Mix {
        #[arg(long, conflicts_with = "states", required_unless_present = "states")]
        braces: Option<PathBuf>,
        #[arg(long, requires = "instrument")]
        states: Option<PathBuf>,
        #[arg(long)]
        instrument: Option<String>,
    },
    /// Two-slit interference demo, plus the classical positivity check
    Interfere {
        /// Basis change file; otherwise --from/--to looked up in the session,
        /// otherwise the unnormalized Hadamard rows from A to B
        #[arg(long)]
        basis_change: Option<PathBuf>,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
        /// Semicolon-separated pairs, e.g. "1,0;1,0"
        #[arg(long, default_value = "1,0;1,0")]
        coeffs: String,
        /// Trials of the classical positivity check; 0 skips it
        #[arg(long, default_value_t = 1000)]
        positivity_trials: usize,
    },
    /// Convergence of extracted frequencies along a Σ schedule
    Converge {
        #[arg(long)]
        nu: String,
        /// Comma-separated, strictly increasing
        #[arg(long, default_value = "100,1000,10000,100000,1000000")]
        schedule: String,
    },
    /// Von Neumann encoding of a small natural number
    Ordinal { n: usize },
}

#[derive(Args, Debug)]
struct DimensionArg {
    /// Dimension when no session is given
    #[arg(long)]
    dimension: Option<usize>,
}

/// A rendered result and whether its verdict passed.
struct Output {
    json: String,
    text: Option<String>,
    passed: bool,
}

impl Output {
    fn json<T: Serialize>(value: &T) -> Result<Self, String> {
        Ok(Output {
            json: to_json(value)?,
            text: None,
            passed: true,
        })
    }

    fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    fn with_verdict(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let body = match (
                cli.format.unwrap_or(default_format(&cli.command)),
                &output.text,
            ) {
                (Format::Text, Some(text)) => text.clone(),
                _ => output.json.clone(),
            };
            let written = match &cli.out {
                Some(path) => {
                    fs::write(path, body.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) if output.passed => 0,
                Ok(()) => 1,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.replace('\n', " "));
            2
        }
    }
}

fn default_format(command: &Command) -> Format {
    match command {
        Command::Ordinal { .. } => Format::Text,
        _ => Format::Json,
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_rationals(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .map(|t| rational::parse(t.trim()).map_err(|e| e.to_string()))
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<PairNumber>, String> {
    text.split(';')
        .map(|t| PairNumber::parse(t.trim()).map_err(|e| e.to_string()))
        .collect()
}

fn parse_u64s(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("invalid integer {t:?}: {e}"))
        })
        .collect()
}

struct Context {
    registry: Option<Registry>,
    seed: u64,
}

impl Context {
    fn load(cli: &Cli) -> Result<Self, String> {
        let registry = match &cli.session {
            Some(path) => {
                let cfg: SessionConfig = read_json(path)?;
                Some(Registry::from_session(&cfg).map_err(|e| format!("{}: {e}", path.display()))?)
            }
            None => None,
        };
        let seed = cli
            .seed
            .or_else(|| registry.as_ref().map(Registry::default_seed))
            .unwrap_or(0);
        Ok(Context { registry, seed })
    }

    fn dimension(&self, flag: Option<usize>) -> usize {
        flag.or_else(|| self.registry.as_ref().map(Registry::dimension))
            .unwrap_or(DEFAULT_DIMENSION)
    }

    /// Session instrument if registered there, else default labels.
    fn instrument(&self, id: &str, dimension: usize) -> Result<InstrumentRep, String> {
        match &self.registry {
            Some(reg) => reg
                .instrument(&InstrumentId::from(id))
                .map_err(|e| e.to_string()),
            None => InstrumentRep::with_default_labels(id, dimension).map_err(|e| e.to_string()),
        }
    }
}

fn check_report(report: &CheckReport) -> Result<Output, String> {
    let mut text = format!(
        "{} (seed {}, {} trials)\n",
        report.name, report.seed, report.trials
    );
    let width = report
        .checks
        .iter()
        .map(|c| c.property.len())
        .max()
        .unwrap_or(0);
    for c in &report.checks {
        let mark = if c.passed { "ok" } else { "FAILED" };
        let _ = writeln!(text, "  {:<width$}  {mark}", c.property);
    }
    let _ = writeln!(
        text,
        "verdict: {}",
        if report.verdict.passed() {
            "pass"
        } else {
            "fail"
        }
    );
    Ok(Output::json(report)?
        .with_text(text)
        .with_verdict(report.verdict.passed()))
}

fn survivor_report(report: &SurvivorReport) -> Result<Output, String> {
    let mut text = format!(
        "{} candidates, {} trials per filter, seed {}\n",
        report.total_candidates, report.trials, report.seed
    );
    for c in &report.candidates {
        let _ = writeln!(
            text,
            "  {}  {:<24} assoc={:<5} unity={:<5} invertible={:<5}",
            c.signs,
            c.rule,
            c.associative,
            c.unity.is_some(),
            c.invertible
        );
    }
    let _ = writeln!(
        text,
        "isomorphism classes among survivors: {}",
        report.isomorphism_classes
    );
    let _ = writeln!(
        text,
        "verdict: {}",
        if report.verdict.passed() {
            "pass"
        } else {
            "fail"
        }
    );
    Ok(Output::json(report)?
        .with_text(text)
        .with_verdict(report.verdict.passed()))
}

fn experiment(report: &ExperimentReport) -> Result<Output, String> {
    Ok(Output::json(report)?
        .with_text(report.to_text())
        .with_verdict(report.verdict.passed()))
}

fn execute(cli: &Cli) -> Result<Output, String> {
    let ctx = Context::load(cli)?;
    let core = |e: clickstate::Error| e.to_string();
    match &cli.command {
        Command::Simulate {
            nu,
            sigma,
            instrument,
        } => {
            let spec = SimulationSpec::new(
                parse_rationals(nu)?,
                *sigma,
                InstrumentId::from(instrument.as_str()),
            )
            .map_err(core)?;
            let clicks = simulate_clicks(&spec, ctx.seed).map_err(core)?;
            let mut buf = Vec::new();
            write_jsonl(&clicks, &mut buf).map_err(|e| e.to_string())?;
            let body = String::from_utf8(buf).map_err(|e| e.to_string())?;
            Ok(Output {
                json: body.clone(),
                text: Some(body),
                passed: true,
            })
        }
        Command::Ingest {
            clicks,
            instrument,
            kappa,
            dim,
        } => {
            let inst = ctx.instrument(instrument, ctx.dimension(dim.dimension))?;
            let kappa = match kappa {
                Some(k) => parse_rationals(k)?,
                None => vec![rational::ratio(1, 2); inst.dimension()],
            };
            let file = fs::File::open(clicks).map_err(|e| format!("{}: {e}", clicks.display()))?;
            let stream = read_jsonl(BufReader::new(file))
                .map_err(|e| format!("{}: {e}", clicks.display()))?;
            Output::json(&ingest_clicks(&stream, &inst, &kappa).map_err(core)?)
        }
        Command::Extract { brace } => {
            let brace: EnsembleBrace = read_json(brace)?;
            Output::json(&brace.extract_stats().map_err(core)?)
        }
        Command::AlgebraVerify { trials } => check_report(&algebra_verify(*trials, ctx.seed)),
        Command::AnsatzSearch { trials } => survivor_report(&ansatz_search(*trials, ctx.seed)),
        Command::LvsVerify { trials, dim } => check_report(
            &verify_lvs_axioms(ctx.dimension(dim.dimension), ctx.seed, *trials).map_err(core)?,
        ),
        Command::Measure { state, instrument } => {
            let v: StateVector = read_json(state)?;
            let id = InstrumentId::from(instrument.as_str());
            let result = match &ctx.registry {
                Some(reg) => reg.measure(&v, &id),
                None => InstrumentRep::with_default_labels(id, v.dimension())
                    .and_then(|i| measure(&v, &i)),
            };
            Output::json(&result.map_err(core)?)
        }
        Command::Mix {
            braces,
            states,
            instrument,
        } => {
            if let Some(path) = braces {
                let m: BraceMixture = read_json(path)?;
                return Output::json(&mix_braces(&m).map_err(core)?);
            }
            let path = states.as_ref().expect("clap enforces one source");
            let instrument = instrument.as_deref().expect("clap enforces --instrument");
            let m: MixtureState = read_json(path)?;
            let id = InstrumentId::from(instrument);
            let result = match &ctx.registry {
                Some(reg) => reg.measure_mixture(&m, &id),
                None => {
                    let d = m.components()[0].state.dimension();
                    InstrumentRep::with_default_labels(id, d).and_then(|i| measure_mixture(&m, &i))
                }
            };
            Output::json(&result.map_err(core)?)
        }
        Command::Interfere {
            basis_change,
            from,
            to,
            coeffs,
            positivity_trials,
        } => {
            let u = match (basis_change, from, to, &ctx.registry) {
                (Some(path), _, _, _) => read_json::<BasisChange>(path)?,
                (None, Some(f), Some(t), Some(reg)) => reg
                    .basis_change(
                        &InstrumentId::from(f.as_str()),
                        &InstrumentId::from(t.as_str()),
                    )
                    .map_err(core)?,
                (None, Some(_), _, None) => return Err("--from/--to need --session".into()),
                _ => {
                    let p = |n| PairNumber::from_ints(n, 0);
                    BasisChange::new("A", "B", vec![vec![p(1), p(1)], vec![p(1), p(-1)]])
                        .map_err(core)?
                }
            };
            let mut reports = vec![two_slit_demo(&u, &parse_pairs(coeffs)?).map_err(core)?];
            if *positivity_trials > 0 {
                reports
                    .push(classical_positivity_check(*positivity_trials, ctx.seed).map_err(core)?);
            }
            let passed = reports.iter().all(|r| r.verdict.passed());
            let text = reports
                .iter()
                .map(ExperimentReport::to_text)
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::json(&reports)?.with_text(text).with_verdict(passed))
        }
        Command::Converge { nu, schedule } => experiment(
            &convergence_study(&parse_rationals(nu)?, &parse_u64s(schedule)?, ctx.seed)
                .map_err(core)?,
        ),
        Command::Ordinal { n } => {
            let set = ordinal_encode(*n).map_err(core)?;
            let rendering = set.to_string();
            let doc = serde_json::json!({
                "n": n,
                "cardinality": set.cardinality(),
                "rendering": rendering,
                "set": set,
            });
            Ok(Output::json(&doc)?.with_text(format!("{rendering}\n")))
        }
    }
}
