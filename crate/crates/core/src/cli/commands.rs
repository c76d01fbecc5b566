use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;
use serde_json::{json, Value};

use discord_lab::applications::{
    interferometric_power_with, min_distance_over_spectrum_with, trace_discord_of_response_with, SpectrumOmega,
};
use discord_lab::explorer::{classify_region, composite_boundary_piece, scan_with, write_records_csv};
use discord_lab::metrics::MetricKind;
use discord_lab::optimize::OptimizerConfig;
use discord_lab::response::{
    bell_diagonal_discord, bell_diagonal_minimizer, discord_of_response_with, geometric_discord_bures,
};
use discord_lab::states::file::{parse_state_json, parse_state_value, StateSource};
use discord_lab::states::{bell_diagonal, BellDiagonalSpectrum};

use super::output::{emit, num, to_json, write_atomic};
use super::{BoundaryArgs, CliError, DiscordArgs, Family, Figure1Args, Method, ReadingArgs, ScanArgs, StateArgs};

fn optimizer() -> Result<OptimizerConfig, CliError> {
    Ok(OptimizerConfig::from_env()?)
}

fn load_state(args: &StateArgs) -> Result<StateSource, CliError> {
    if let Some(path) = &args.state {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read state file {}: {e}", path.display())))?;
        return parse_state_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())));
    }
    let family = args
        .family
        .ok_or_else(|| CliError::Input("either --family or --state is required".into()))?;
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::Input(format!("--family {} requires --{flag}", family.name())))
    };
    let description: Value = match family {
        Family::Werner => json!({"family": "werner", "f": need(args.f, "f")?}),
        Family::BellDiagonal => {
            let gamma = args
                .gamma
                .clone()
                .ok_or_else(|| CliError::Input("--family bell_diagonal requires --gamma".into()))?;
            json!({"family": "bell_diagonal", "gamma": gamma})
        }
        Family::MqB | Family::MqC | Family::MqD => {
            json!({"family": family.name(), "purity": need(args.purity, "purity")?})
        }
    };
    Ok(parse_state_value(&description)?)
}

#[derive(Serialize)]
struct DiscordReport {
    metric: &'static str,
    value: Box<RawValue>,
    argmin_theta: Box<RawValue>,
    argmin_phi: Box<RawValue>,
    method: &'static str,
    purity: Box<RawValue>,
}

pub fn discord(args: &DiscordArgs) -> Result<(), CliError> {
    let source = load_state(&args.state)?;
    let metric = MetricKind::from(args.metric);
    let report = match args.method {
        Method::Analytic => {
            let spectrum = source.bell_spectrum.ok_or_else(|| {
                CliError::MethodMismatch("the analytic method needs a Bell-diagonal state".into())
            })?;
            if metric != MetricKind::Bures {
                return Err(CliError::MethodMismatch(format!(
                    "the analytic method is available for the bures metric only, not {metric}"
                )));
            }
            let argmin = bell_diagonal_minimizer(&spectrum);
            DiscordReport {
                metric: metric.name(),
                value: num(bell_diagonal_discord(&spectrum)),
                argmin_theta: num(argmin.theta()),
                argmin_phi: num(argmin.phi()),
                method: "analytic",
                purity: num(source.state.purity()),
            }
        }
        Method::Optimize => {
            let r = discord_of_response_with(&source.state, metric, &optimizer()?)?;
            DiscordReport {
                metric: metric.name(),
                value: num(r.value),
                argmin_theta: num(r.argmin.theta()),
                argmin_phi: num(r.argmin.phi()),
                method: "optimize",
                purity: num(source.state.purity()),
            }
        }
    };
    emit(args.out.as_deref(), to_json(&report)?.as_bytes())
}

#[derive(Serialize)]
struct ScanSidecar {
    seed: u64,
    samples: u64,
    threads: Option<u64>,
    wall_time_seconds: Box<RawValue>,
}

pub fn scan(args: &ScanArgs) -> Result<(), CliError> {
    let cfg = optimizer()?;
    let start = Instant::now();
    let records = scan_with(args.samples as usize, args.seed, args.threads.map(|t| t as usize), &cfg)?;
    let elapsed = start.elapsed().as_secs_f64();

    let mut csv = Vec::new();
    write_records_csv(&mut csv, &records).map_err(|e| CliError::Io(e.to_string()))?;
    let sidecar = ScanSidecar {
        seed: args.seed,
        samples: args.samples,
        threads: args.threads,
        wall_time_seconds: num(elapsed),
    };
    let sidecar_path = sidecar_path(&args.out);
    write_atomic(&args.out, &csv)?;
    if let Err(e) = write_atomic(&sidecar_path, to_json(&sidecar)?.as_bytes()) {
        let _ = std::fs::remove_file(&args.out);
        return Err(e);
    }
    Ok(())
}

pub fn sidecar_path(out: &Path) -> std::path::PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    s.into()
}

fn in_pool<T: Send>(threads: Option<u64>, job: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(job()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t as usize)
                .build()
                .map_err(|e| CliError::Compute(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Grid point `(i, j)` of the slice `gamma1 = gamma2 = g`:
/// `g = i / (R - 1) / 2`, `gamma3 = j / (R - 1) (1 - 2 g)`.
fn figure1_point(i: u64, j: u64, r: u64) -> [f64; 4] {
    let g = 0.5 * i as f64 / (r - 1) as f64;
    let rest = (1.0 - 2.0 * g).max(0.0);
    let g3 = rest * j as f64 / (r - 1) as f64;
    [g, g, g3, (rest - g3).max(0.0)]
}

pub fn figure1(args: &Figure1Args) -> Result<(), CliError> {
    let r = args.resolution;
    let points: Vec<(u64, u64)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
    let rows = in_pool(args.threads, || {
        points
            .par_iter()
            .map(|&(i, j)| -> Result<[f64; 4], CliError> {
                let gamma = figure1_point(i, j, r);
                let spectrum = BellDiagonalSpectrum::new(gamma)?;
                let d_response = bell_diagonal_discord(&spectrum);
                let d_geometric = geometric_discord_bures(&bell_diagonal(&spectrum))?.value;
                Ok([gamma[0], gamma[2], d_response, d_geometric])
            })
            .collect::<Result<Vec<_>, _>>()
    })??;
    let mut csv = String::from("gamma1,gamma3,d_response,d_geometric,difference\n");
    for [g1, g3, dr, dg] in rows {
        writeln!(csv, "{g1:.16e},{g3:.16e},{dr:.16e},{dg:.16e},{:.16e}", dr - dg).expect("writing to a string");
    }
    emit(args.out.as_deref(), csv.as_bytes())
}

pub fn boundary(args: &BoundaryArgs) -> Result<(), CliError> {
    let r = args.resolution;
    let mut csv = String::from("purity,discord,region,curve\n");
    for k in 0..r {
        let p = if k + 1 == r { 1.0 } else { 0.25 + 0.75 * k as f64 / (r - 1) as f64 };
        let (piece, value) = composite_boundary_piece(p)?;
        let region = classify_region(p)?;
        writeln!(csv, "{p:.16e},{value:.16e},{},{}", region.label, piece.name()).expect("writing to a string");
    }
    emit(args.out.as_deref(), csv.as_bytes())
}

#[derive(Serialize)]
struct SweepRow {
    omega: Box<RawValue>,
    min_distance: Box<RawValue>,
    ratio_to_harmonic: Box<RawValue>,
    sin_omega: Box<RawValue>,
    helstrom_error: Box<RawValue>,
}

#[derive(Serialize)]
struct ReadingReport {
    purity: Box<RawValue>,
    trace_discord: Box<RawValue>,
    worst_case_error: Box<RawValue>,
    argmin_theta: Box<RawValue>,
    argmin_phi: Box<RawValue>,
    harmonic_min_distance: Box<RawValue>,
    interferometric_power: Box<RawValue>,
    sweep: Vec<SweepRow>,
}

pub fn reading(args: &ReadingArgs) -> Result<(), CliError> {
    let source = load_state(&args.state)?;
    let rho = &source.state;
    let cfg = optimizer()?;
    let trace = trace_discord_of_response_with(rho, &cfg)?;
    let harmonic = min_distance_over_spectrum_with(rho, SpectrumOmega::harmonic(), &cfg)?;
    let power = interferometric_power_with(rho, &cfg)?;
    let mut sweep = Vec::new();
    for k in 1..=args.resolution {
        let omega = FRAC_PI_2 * k as f64 / args.resolution as f64;
        let s = SpectrumOmega::new(omega)?;
        let d = if k == args.resolution {
            harmonic
        } else {
            min_distance_over_spectrum_with(rho, s, &cfg)?
        };
        let ratio = if harmonic > 1e-12 { d / harmonic } else { f64::NAN };
        sweep.push(SweepRow {
            omega: num(omega),
            min_distance: num(d),
            ratio_to_harmonic: num(ratio),
            sin_omega: num(omega.sin()),
            helstrom_error: num((0.5 * (1.0 - 0.5 * d)).clamp(0.0, 0.5)),
        });
    }
    let report = ReadingReport {
        purity: num(rho.purity()),
        trace_discord: num(trace.value),
        worst_case_error: num(trace.worst_case_error()),
        argmin_theta: num(trace.argmin.theta()),
        argmin_phi: num(trace.argmin.phi()),
        harmonic_min_distance: num(harmonic),
        interferometric_power: num(power.value),
        sweep,
    };
    emit(args.out.as_deref(), to_json(&report)?.as_bytes())
}
