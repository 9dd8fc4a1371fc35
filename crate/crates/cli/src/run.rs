//! Command runners: build core configs from flags, run, serialize.

use std::fs::File;
use std::io::Write;

use qwalk_core::observables::series;
use qwalk_core::parrondo::{self, SweepConfig};
use qwalk_core::protocol::{evolve_with, AngleSchedule, GameProtocol};
use qwalk_core::walk::WalkerState;

use crate::args::{Cli, Command, GridSpec, OutputArgs, ProtocolKind, RunArgs, SweepArgs};
use crate::error::CliError;
use crate::io::{self, CarpetRow, DiagramRow, SeriesRow};

pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => run_simulate(&args),
        Command::Carpet(args) => run_carpet(&args),
        Command::Sweep(args) => run_sweep(&args),
    }
}

fn build_protocol(args: &RunArgs) -> Result<GameProtocol, CliError> {
    let mode = args.schedule.to_mode();
    let a = AngleSchedule::from_degrees(mode, args.theta_a)?;
    match args.protocol {
        ProtocolKind::Single => Ok(GameProtocol::single(a)),
        ProtocolKind::Alternating => {
            let theta_b = args.theta_b.ok_or_else(|| {
                CliError::Usage("--theta-b is required with --protocol alternating".into())
            })?;
            let b = AngleSchedule::from_degrees(mode, theta_b)?;
            Ok(GameProtocol::alternating(a, b))
        }
    }
}

fn write_output<F>(out: &OutputArgs, emit: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match &out.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
            let mut w = std::io::BufWriter::new(file);
            emit(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = std::io::BufWriter::new(stdout.lock());
            emit(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn run_simulate(args: &RunArgs) -> Result<(), CliError> {
    let protocol = build_protocol(args)?;
    let t_max = args.tmax as usize;
    let mut state = WalkerState::localized(args.initial, t_max)?;
    let records = series(&mut state, &protocol, t_max)?;
    let rows: Vec<SeriesRow> = records
        .iter()
        .map(|r| SeriesRow {
            t: r.t as u64,
            delta_p: r.delta_p(),
            bias: r.bias,
            m1: r.m1,
            m2: r.m2,
            p_max: r.p_max,
        })
        .collect();
    write_output(&args.out, |w| io::write_series(w, args.out.format, &rows))
}

fn run_carpet(args: &RunArgs) -> Result<(), CliError> {
    let protocol = build_protocol(args)?;
    let t_max = args.tmax as usize;
    let mut state = WalkerState::localized(args.initial, t_max)?;
    let mut rows: Vec<CarpetRow> = Vec::new();
    // occupied sites in ascending x, normalised per time slice
    fn emit(rows: &mut Vec<CarpetRow>, state: &WalkerState) {
        let start = rows.len();
        let mut p_max = 0.0f64;
        for (x, sp) in state.iter() {
            let p = sp.norm_sqr();
            if p > 0.0 {
                p_max = p_max.max(p);
                rows.push(CarpetRow {
                    t: state.t() as u64,
                    x,
                    p,
                    p_normalized: 0.0,
                });
            }
        }
        for row in &mut rows[start..] {
            row.p_normalized = row.p / p_max;
        }
    }
    emit(&mut rows, &state);
    evolve_with(&mut state, &protocol, t_max, |s| emit(&mut rows, s))?;
    write_output(&args.out, |w| io::write_carpet(w, args.out.format, &rows))
}

fn run_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let (grid_a, grid_b) = match (args.grid, args.theta_a, args.theta_b) {
        (Some(g), None, None) => (g.values(), g.values()),
        (None, Some(a), Some(b)) => (vec![a], vec![b]),
        (None, None, None) => (GridSpec::DEFAULT.values(), GridSpec::DEFAULT.values()),
        // clap's `requires`/`conflicts_with` rules should make these
        // unrepresentable; keep a guard for programmatic callers
        _ => {
            return Err(CliError::Usage(
                "give either --grid or both --theta-a and --theta-b".into(),
            ))
        }
    };
    let t_max = args.tmax as usize;
    let mut cfg = SweepConfig::new(grid_a, grid_b, t_max, args.initial);
    cfg.transient = (t_max as f64 * args.transient_frac) as usize;
    cfg.epsilon = args.epsilon;
    cfg.schedule = args.schedule.to_mode();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers as usize)
        .build()
        .map_err(|e| CliError::Runtime(format!("cannot build worker pool: {e}")))?;
    let cells = pool.install(|| parrondo::sweep(&cfg))?;
    let rows: Vec<DiagramRow> = cells
        .iter()
        .map(|c| DiagramRow {
            theta_a_deg: c.theta_a_deg,
            theta_b_deg: c.theta_b_deg,
            bias_a: c.bias_a,
            bias_b: c.bias_b,
            bias_combined: c.bias_combined,
            class: c.classification.label().to_string(),
        })
        .collect();
    write_output(&args.out, |w| io::write_diagram(w, args.out.format, &rows))
}
