use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use tsmix_core::policy::{EpsilonSchedule, PolicySpec};
use tsmix_core::{
    phi_curve, required_sample_size, run_experiment, sweep, Branch, ExperimentConfig, PolicyConfig,
    PolicyKind,
};

use crate::args::{
    ExecArgs, OutputArgs, PhiCurveArgs, PolicyArgs, PowerTableArgs, ReproduceArgs, RunArgs,
    SweepArgs,
};
use crate::error::CliError;
use crate::report::{emit_table, to_csv, Format, ReportRow};
use crate::reproduce;

type Result<T> = std::result::Result<T, CliError>;

pub fn run(args: RunArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut config = match &args.config {
        Some(path) => {
            let mut config: ExperimentConfig = serde_json::from_str(&read(path)?)?;
            if args.policy.any_set() {
                config.policy = policy_from_args(&args.policy)?;
            }
            config
        }
        None => ExperimentConfig::new(
            policy_from_args(&args.policy)?,
            args.effect_size.ok_or_else(|| missing("effect-size"))?,
            args.n.ok_or_else(|| missing("n"))?,
        ),
    };
    if let Some(w) = args.effect_size {
        config.effect_size = w;
    }
    if let Some(n) = args.n {
        config.n = n;
    }
    if let Some(alpha) = args.alpha {
        config.alpha_level = alpha;
    }
    apply_exec(&mut config, &args.exec);
    config.trace |= args.trace.is_some();
    config.validate()?;

    let experiment = with_workers(args.exec.workers, || run_experiment(&config))?;
    if let Some(path) = &args.trace {
        write_trace(path, &experiment.results)?;
    }
    let rows = [ReportRow::new(&config, &experiment.summary)];
    write_output(
        &emit_table(&rows, args.output.format)?,
        &args.output,
        stdout,
    )
}

pub fn sweep_grid(args: SweepArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut grid: Vec<ExperimentConfig> = serde_json::from_str(&read(&args.grid)?)?;
    for config in &mut grid {
        apply_exec(config, &args.exec);
    }
    emit_sweep(&grid, &args.exec, &args.output, stdout)
}

pub fn reproduce(args: ReproduceArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut grid = reproduce::grid(args.table);
    for config in &mut grid {
        apply_exec(config, &args.exec);
    }
    emit_sweep(&grid, &args.exec, &args.output, stdout)
}

fn emit_sweep(
    grid: &[ExperimentConfig],
    exec: &ExecArgs,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<()> {
    let rows: Vec<_> = with_workers(exec.workers, || sweep(grid))?
        .iter()
        .map(|row| ReportRow::new(&row.config, &row.summary))
        .collect();
    write_output(&emit_table(&rows, output.format)?, output, stdout)
}

pub fn phi(args: PhiCurveArgs, stdout: &mut dyn Write) -> Result<()> {
    let checkpoints = args
        .checkpoints
        .clone()
        .unwrap_or_else(|| default_checkpoints(args.n));
    let mut config = ExperimentConfig::new(
        PolicyConfig::TsPostDiff { c: args.c },
        args.effect_size,
        args.n,
    )
    .with_phi(checkpoints, args.phi_samples);
    apply_exec(&mut config, &args.exec);
    let curve = with_workers(args.exec.workers, || phi_curve(&config))?;
    let output = OutputArgs {
        format: Format::Csv,
        out: args.out,
    };
    write_output(&to_csv(&curve)?, &output, stdout)
}

#[derive(Serialize)]
struct PowerRow {
    effect_size: f64,
    n: u64,
}

pub fn power_table(args: PowerTableArgs, stdout: &mut dyn Write) -> Result<()> {
    let rows = args
        .effect_sizes
        .iter()
        .map(|&w| {
            Ok(PowerRow {
                effect_size: w,
                n: required_sample_size(w, args.alpha, args.power)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let text = match args.output.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Md => {
            let mut s = String::from("| Effect size | n |\n|---|---|\n");
            for r in &rows {
                s += &format!("| {} | {} |\n", r.effect_size, r.n);
            }
            s
        }
    };
    write_output(&text, &args.output, stdout)
}

fn policy_from_args(args: &PolicyArgs) -> Result<PolicyConfig> {
    let name = args.policy.as_deref().ok_or_else(|| missing("policy"))?;
    let spec = PolicySpec {
        kind: PolicyKind::parse(name)?,
        c: args.c,
        beta: args.beta,
        epsilon: args.epsilon,
        schedule: args.schedule.as_deref().map(parse_schedule).transpose()?,
        p_max: args.p_max,
    };
    Ok(PolicyConfig::try_from(spec)?)
}

/// `inverse-power:SCALE:EXPONENT` or `exponential:INITIAL:DECAY`.
pub fn parse_schedule(text: &str) -> Result<EpsilonSchedule> {
    let parts: Vec<&str> = text.split(':').collect();
    let number = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::invalid("schedule", format!("`{s}` is not a number")))
    };
    let schedule = match parts.as_slice() {
        ["inverse-power", a, b] => EpsilonSchedule::InversePower {
            scale: number(a)?,
            exponent: number(b)?,
        },
        ["exponential", a, b] => EpsilonSchedule::Exponential {
            initial: number(a)?,
            decay: number(b)?,
        },
        _ => {
            let expected = "inverse-power:SCALE:EXPONENT or exponential:INITIAL:DECAY";
            return Err(CliError::invalid(
                "schedule",
                format!("expected {expected}, got `{text}`"),
            ));
        }
    };
    schedule.validate()?;
    Ok(schedule)
}

fn default_checkpoints(n: u64) -> Vec<u64> {
    let step = (n / 20).max(1);
    let mut points: Vec<u64> = std::iter::once(1)
        .chain((step..=n).step_by(step as usize))
        .collect();
    if points.last() != Some(&n) {
        points.push(n);
    }
    points.dedup();
    points
}

fn apply_exec(config: &mut ExperimentConfig, exec: &ExecArgs) {
    if let Some(sims) = exec.sims {
        config.n_sims = sims;
    }
    if let Some(seed) = exec.seed {
        config.base_seed = seed;
    }
}

fn with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> tsmix_core::Result<T> + Send,
) -> Result<T> {
    match workers {
        None => Ok(f()?),
        Some(0) => Err(CliError::invalid("workers", "must be at least 1")),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
            Ok(pool.install(f)?)
        }
    }
}

#[derive(Serialize)]
struct TraceRow {
    sim: usize,
    t: u64,
    arm: u8,
    branch: Branch,
    reward: u8,
}

fn write_trace(path: &Path, results: &[tsmix_core::SimulationResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for (sim, result) in results.iter().enumerate() {
        for step in result.trace.iter().flatten() {
            w.serialize(TraceRow {
                sim,
                t: step.t,
                arm: step.arm.number(),
                branch: step.branch,
                reward: step.reward as u8,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::invalid("config", format!("cannot read {}: {e}", path.display())))
}

fn missing(flag: &str) -> CliError {
    CliError::invalid(flag, format!("--{flag} is required"))
}

fn write_output(text: &str, output: &OutputArgs, stdout: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}
