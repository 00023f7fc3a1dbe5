use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use qabn::analysis::{
    detect_im_cycle, detect_state_cycle_iterative, detect_state_cycle_orbit, dft_spectrum, exact_im_period,
    frozen_cores, im_series, multipartite_mutual_information, perturb_trajectory, reduced_states, reduced_trace_csv,
    Horizon, IterativeOutcome, PerturbOptions, IM_TOL, STATE_TOL,
};
use qabn::boolean::FunctionCatalog;
use qabn::classical::{classical_frozen_cores, ensemble_cycle_stats, enumerate_attractors};
use qabn::network::{build_step_operator, initial_state, random_network, NetworkSpec, Trajectory};
use qabn::presets::{counting_report, preset, preset_names, PRESETS};
use qabn::specfile::SpecFile;
use qabn::QabnError;

/// Iterative cross-checks run only below this period.
const CROSS_CHECK_LIMIT: u64 = 10_000;

#[derive(Parser)]
#[command(name = "qabn", version, about = "Simulate quantum and classical autonomous Boolean networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Network file.
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
    /// Built-in network; see `qabn enumerate --presets`.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

#[derive(Args, Clone)]
struct Output {
    /// Write the main result here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a network and write its I_m series as `step,value` CSV.
    Run {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Steps to simulate; defaults to the file's `steps`, else 60.
        #[arg(long)]
        steps: Option<u64>,
        /// Write a final-state summary as JSON.
        #[arg(long, value_name = "PATH")]
        summary: Option<PathBuf>,
        /// Write reduced single-qubit states per step as CSV.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Exact state period from the cycle structure of the step operator.
    Cycle {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// I_m equality tolerance.
        #[arg(long, default_value_t = IM_TOL)]
        tol: f64,
    },
    /// Frozen qubits and the islands between them.
    Frozen {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Steps to sample; defaults to one state period, at most 10000.
        #[arg(long)]
        steps: Option<u64>,
        /// Trace-distance tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Bit-flip one qubit and track where the change spreads.
    Perturb {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        perturb_step: u64,
        #[arg(long)]
        perturb_qubit: usize,
        /// Steps to follow after the flip.
        #[arg(long, default_value_t = 120)]
        steps: u64,
        /// Trace-distance tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// DFT magnitudes of the I_m series as `frequency,magnitude` CSV.
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Series length.
        #[arg(long, default_value_t = 600)]
        steps: u64,
    },
    /// Attractors and basins of a classical network, or ensemble statistics.
    Classical {
        #[arg(long, value_name = "PATH", conflicts_with = "preset")]
        spec: Option<PathBuf>,
        #[arg(long, value_name = "NAME")]
        preset: Option<String>,
        #[command(flatten)]
        output: Output,
        /// Write the state graph in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Also report frozen variables from this start state, e.g. `101`.
        #[arg(long, value_name = "BITS")]
        initial: Option<String>,
        /// Steps for the frozen-variable check.
        #[arg(long, default_value_t = 64)]
        steps: u64,
        /// Sample random networks of this size instead of reading one.
        #[arg(long, value_name = "N", conflicts_with_all = ["spec", "preset"])]
        ensemble: Option<usize>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the function catalog, presets and wiring counts.
    Enumerate {
        #[command(flatten)]
        output: Output,
        /// Qubit count for the wiring count.
        #[arg(long, default_value_t = 9)]
        qubits: usize,
        /// List presets instead.
        #[arg(long)]
        presets: bool,
    },
    /// Cycle statistics over seeded random networks, one JSON line per seed.
    Sweep {
        #[command(flatten)]
        output: Output,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds.
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Functions per network.
        #[arg(long, default_value_t = 2)]
        functions: usize,
        /// Allowed arities, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        arities: Vec<usize>,
        /// I_m window length.
        #[arg(long, default_value_t = 120)]
        steps: u64,
    },
}

enum Failure {
    Config(String),
    Resource(String),
}

impl From<QabnError> for Failure {
    fn from(e: QabnError) -> Failure {
        match e {
            QabnError::Resource(m) => Failure::Resource(m),
            other => Failure::Config(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn load_file(spec: &Option<PathBuf>, preset_name: &Option<String>) -> CliResult<SpecFile> {
    match (spec, preset_name) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            SpecFile::parse(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
        }
        (None, Some(name)) => Ok(preset(name)?),
        _ => Err(Failure::Config("give exactly one of --spec or --preset".into())),
    }
}

fn load_network(source: &Source) -> CliResult<(SpecFile, NetworkSpec)> {
    let file = load_file(&source.spec, &source.preset)?;
    let net = file.network()?.clone();
    Ok((file, net))
}

fn check_tol(tol: f64) -> CliResult<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::Config(format!("tolerance must be positive, got {tol}")))
    }
}

fn write_to(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => write_to(path, text),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Config(e.to_string())),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn run(
    source: &Source,
    output: &Output,
    steps: Option<u64>,
    summary: &Option<PathBuf>,
    trace: &Option<PathBuf>,
) -> CliResult<()> {
    let (file, net) = load_network(source)?;
    let steps = steps.or(file.steps).unwrap_or(60);
    let w = build_step_operator(&net)?;
    let init = initial_state(&net)?;
    emit(output, &im_series(&w, &init, steps)?.to_csv())?;

    if let Some(path) = summary {
        let mut traj = Trajectory::new(&w, &init, steps)?;
        for _ in 0..steps {
            traj.advance();
        }
        let last = traj.current();
        let names = net.layout().qubit_names();
        let qubits: Vec<Value> = reduced_states(last)
            .iter()
            .enumerate()
            .map(|(i, r)| {
                json!({
                    "qubit": i,
                    "name": names[i],
                    "label": r.label(1e-9),
                    "rho00": r.rho00(),
                    "rho01_re": r.rho01().re,
                    "rho01_im": r.rho01().im,
                    "rho11": r.rho11(),
                })
            })
            .collect();
        let report = json!({
            "steps": steps,
            "qubits": net.qubit_count(),
            "support": last.support_len(),
            "im": multipartite_mutual_information(last)?,
            "reduced": qubits,
        });
        write_to(path, &pretty(&report))?;
    }
    if let Some(path) = trace {
        write_to(path, &reduced_trace_csv(&w, &init, steps)?)?;
    }
    Ok(())
}

fn cycle(source: &Source, output: &Output, tol: f64) -> CliResult<()> {
    check_tol(tol)?;
    let (_, net) = load_network(source)?;
    let w = build_step_operator(&net)?;
    let init = initial_state(&net)?;
    let mut report = detect_state_cycle_orbit(&w, &init)?;
    report.im_period = exact_im_period(&w, &init, &report.state_period, tol)?;

    let mut value = serde_json::to_value(&report).expect("report serializes");
    let small = report.state_period <= CROSS_CHECK_LIMIT.into();
    let check = if small {
        match detect_state_cycle_iterative(&w, &init, CROSS_CHECK_LIMIT, STATE_TOL)? {
            IterativeOutcome::Found(r) => {
                json!({ "iterative_period": r.state_period.to_string(), "agrees": r.state_period == report.state_period })
            }
            IterativeOutcome::Exceeded { max_steps } => {
                json!({ "iterative_period": null, "max_steps": max_steps, "agrees": false })
            }
        }
    } else {
        Value::Null
    };
    value["cross_check"] = check;
    emit(output, &pretty(&value))
}

fn frozen(source: &Source, output: &Output, steps: Option<u64>, tol: f64) -> CliResult<()> {
    check_tol(tol)?;
    let (_, net) = load_network(source)?;
    let w = build_step_operator(&net)?;
    let horizon = steps.map_or(Horizon::Auto, Horizon::Steps);
    let report = frozen_cores(&w, &initial_state(&net)?, horizon, tol)?;
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["qubit_names"] = json!(net.layout().qubit_names());
    emit(output, &pretty(&value))
}

fn perturb(source: &Source, output: &Output, step: u64, qubit: usize, window: u64, tol: f64) -> CliResult<()> {
    check_tol(tol)?;
    let (_, net) = load_network(source)?;
    let w = build_step_operator(&net)?;
    let opts = PerturbOptions { window, tol, ..PerturbOptions::default() };
    let report = perturb_trajectory(&w, &initial_state(&net)?, step, &[qubit], opts)?;
    emit(output, &pretty(&report))
}

fn spectrum(source: &Source, output: &Output, steps: u64) -> CliResult<()> {
    if steps < 2 {
        return Err(Failure::Config("spectrum needs --steps of at least 2".into()));
    }
    let (_, net) = load_network(source)?;
    let w = build_step_operator(&net)?;
    let series = im_series(&w, &initial_state(&net)?, steps - 1)?;
    emit(output, &dft_spectrum(&series)?.to_csv())
}

#[allow(clippy::too_many_arguments)]
fn classical(
    spec: &Option<PathBuf>,
    preset_name: &Option<String>,
    output: &Output,
    dot: &Option<PathBuf>,
    initial: &Option<String>,
    steps: u64,
    ensemble: Option<usize>,
    k: usize,
    samples: usize,
    seed: u64,
) -> CliResult<()> {
    if let Some(n) = ensemble {
        return emit(output, &pretty(&ensemble_cycle_stats(seed, n, k, samples)?));
    }
    let file = load_file(spec, preset_name)?;
    let net = file.classical()?;
    let graph = enumerate_attractors(net)?;
    let mut value = serde_json::to_value(graph.report(net)).expect("report serializes");
    if let Some(bits) = initial {
        let state: Vec<bool> = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Failure::Config(format!("--initial digit {other:?} is not a bit"))),
            })
            .collect::<CliResult<_>>()?;
        value["frozen"] = serde_json::to_value(classical_frozen_cores(net, &state, steps)?).expect("report serializes");
    }
    if let Some(path) = dot {
        write_to(path, &graph.to_dot(net))?;
    }
    emit(output, &pretty(&value))
}

fn enumerate(output: &Output, qubits: usize, presets: bool) -> CliResult<()> {
    if presets {
        let list: Vec<Value> = PRESETS.iter().map(|p| json!({ "name": p.name, "summary": p.summary })).collect();
        return emit(output, &pretty(&list));
    }
    let catalog: Vec<Value> = FunctionCatalog
        .entries()
        .iter()
        .map(|(name, t)| json!({ "name": name, "arity": t.arity(), "outputs": t.bit_string() }))
        .collect();
    let mut value = serde_json::to_value(counting_report(qubits)).expect("report serializes");
    value["functions"] = json!(catalog);
    emit(output, &pretty(&value))
}

fn sweep_one(seed: u64, functions: usize, arities: &[usize], steps: u64) -> CliResult<Value> {
    let net = random_network(seed, functions, arities)?;
    let w = build_step_operator(&net)?;
    let init = initial_state(&net)?;
    let cycle = detect_state_cycle_orbit(&w, &init)?;
    let series = im_series(&w, &init, steps)?;
    let max_im = series.values().into_iter().fold(0.0, f64::max);
    let file = SpecFile { seed: Some(seed), network: Some(net), classical: None, steps: None };
    Ok(json!({
        "seed": seed,
        "network": file.write(),
        "state_period": cycle.state_period.to_string(),
        "im_period": detect_im_cycle(&series, IM_TOL),
        "max_im": max_im,
    }))
}

fn sweep(output: &Output, seed: u64, count: u64, functions: usize, arities: &[usize], steps: u64) -> CliResult<()> {
    let rows: Vec<Value> = (seed..seed + count)
        .into_par_iter()
        .map(|s| sweep_one(s, functions, arities, steps))
        .collect::<CliResult<_>>()?;
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(&row).expect("row serializes"));
        out.push('\n');
    }
    emit(output, &out)
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run { source, output, steps, summary, trace } => run(&source, &output, steps, &summary, &trace),
        Command::Cycle { source, output, tol } => cycle(&source, &output, tol),
        Command::Frozen { source, output, steps, tol } => frozen(&source, &output, steps, tol),
        Command::Perturb { source, output, perturb_step, perturb_qubit, steps, tol } => {
            perturb(&source, &output, perturb_step, perturb_qubit, steps, tol)
        }
        Command::Spectrum { source, output, steps } => spectrum(&source, &output, steps),
        Command::Classical { spec, preset, output, dot, initial, steps, ensemble, k, samples, seed } => {
            if ensemble.is_none() && spec.is_none() && preset.is_none() {
                return Err(Failure::Config(format!(
                    "give --spec, --preset or --ensemble; presets: {}",
                    preset_names().join(", ")
                )));
            }
            classical(&spec, &preset, &output, &dot, &initial, steps, ensemble, k, samples, seed)
        }
        Command::Enumerate { output, qubits, presets } => enumerate(&output, qubits, presets),
        Command::Sweep { output, seed, count, functions, arities, steps } => {
            sweep(&output, seed, count, functions, &arities, steps)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
