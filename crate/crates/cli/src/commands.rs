use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use rkp_core::catalogue::{labels_up_to, resonance_data, second_kind_orbit, ResonanceLabel};
use rkp_core::dynamics::{
    flow, period_of_energy, Field, FlowStatus, PhasePoint, DEFAULT_STEPS_PER_PERIOD,
};
use rkp_core::io as out;
use rkp_core::toric::{connected_profile, corners, profile, unbounded_profile};
use rkp_core::tree::MAX_DEPTH;
use rkp_core::verify::{run_checks, Group, VerifyOptions};
use rkp_core::CRITICAL_ENERGY;

use crate::config::{pick, ConfigFile};
use crate::{Cli, CliError, Command, FieldArg, Format};

const DEFAULT_DEPTH: u32 = 4;
const DEFAULT_SAMPLES: usize = 201;
const DEFAULT_SEED: u64 = 42;
const DEFAULT_ECC: f64 = 0.3;
const FALLBACK_DT: f64 = 1e-3;

type Outcome = Result<ExitCode, CliError>;

pub fn run(cli: Cli) -> Outcome {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Profile {
            energy,
            samples,
            format,
            output,
        } => {
            let energy = energy
                .or(cfg.get("energy")?)
                .ok_or_else(|| CliError::Usage("profile needs --energy".into()))?;
            let samples = pick(samples, &cfg, "samples", DEFAULT_SAMPLES)?;
            let format = pick(format, &cfg, "format", Format::Csv)?;
            let output = output.or(cfg.get("output")?);
            profile_cmd(energy, samples, format, output)
        }
        Command::Orbits {
            max_sum,
            depth,
            energy,
            output,
        } => {
            let depth = pick(depth, &cfg, "depth", DEFAULT_DEPTH)?;
            let max_sum = pick(max_sum, &cfg, "max-sum", depth)?;
            let energy = energy.or(cfg.get("energy")?);
            let output = output.or(cfg.get("output")?);
            orbits_cmd(max_sum, energy, output)
        }
        Command::Tree {
            depth,
            format,
            output,
        } => {
            let depth = pick(depth, &cfg, "depth", DEFAULT_DEPTH)?;
            let format = pick(format, &cfg, "format", Format::Text)?;
            let output = output.or(cfg.get("output")?);
            tree_cmd(depth, format, output)
        }
        Command::Verify {
            seed,
            tol,
            only,
            output,
        } => {
            let seed = pick(seed, &cfg, "seed", DEFAULT_SEED)?;
            let tol = if tol.is_empty() {
                cfg.raw("tol")
                    .map(|s| vec![s.to_string()])
                    .unwrap_or_default()
            } else {
                tol
            };
            let only = if only.is_empty() {
                cfg.raw("only")
                    .map(|s| s.split(',').map(|g| g.trim().to_string()).collect())
                    .unwrap_or_default()
            } else {
                only
            };
            let output = output.or(cfg.get("output")?);
            verify_cmd(seed, &tol, &only, output)
        }
        Command::Flow {
            field,
            q,
            p,
            t_end,
            dt,
            orbit,
            ecc,
            rotating,
            output,
        } => {
            let dt = dt.or(cfg.get("dt")?);
            let output = output.or(cfg.get("output")?);
            match (field, orbit) {
                (Some(field), None) => {
                    let q = parse_pair(q.as_deref(), "--q")?;
                    let p = parse_pair(p.as_deref(), "--p")?;
                    let t_end = t_end.ok_or_else(|| CliError::Usage("flow needs --T".into()))?;
                    field_flow_cmd(field, PhasePoint::new(q, p), t_end, dt, output)
                }
                (None, Some(orbit)) => {
                    let ecc = pick(ecc, &cfg, "ecc", DEFAULT_ECC)?;
                    orbit_flow_cmd(&orbit, ecc, rotating, dt, output)
                }
                _ => Err(CliError::Usage(
                    "flow needs exactly one of --field or --orbit".into(),
                )),
            }
        }
    }
}

fn open(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Failed(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn parse_pair(s: Option<&str>, flag: &str) -> Result<[f64; 2], CliError> {
    let s = s.ok_or_else(|| CliError::Usage(format!("flow needs {flag}")))?;
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("{flag}: expected two numbers, got {s:?}")))?;
    match parts[..] {
        [a, b] => Ok([a, b]),
        _ => Err(CliError::Usage(format!(
            "{flag}: expected two numbers, got {s:?}"
        ))),
    }
}

fn profile_cmd(c: f64, samples: usize, format: Format, output: Option<PathBuf>) -> Outcome {
    if !c.is_finite() {
        return Err(CliError::Usage(format!("energy {c} is not finite")));
    }
    let (profiles, k) = if c <= CRITICAL_ENERGY {
        let k = corners(c)?;
        let ps = vec![
            profile(c, samples)?,
            unbounded_profile(c, 1.2 * k.b_u, samples)?,
        ];
        (ps, Some(k))
    } else {
        let ext = out::plot_extent(c, None);
        (vec![connected_profile(c, ext, samples)?], None)
    };
    match format {
        Format::Csv => {
            let mut w = open(output.as_deref())?;
            out::write_profile_csv(&mut w, &profiles, k.as_ref())?;
            w.flush()?;
        }
        Format::Svg => {
            let svg_path = output.unwrap_or_else(|| PathBuf::from("profile.svg"));
            let csv_path = svg_path.with_extension("csv");
            let mut w = open(Some(&svg_path))?;
            out::write_profile_svg(&mut w, &profiles, k.as_ref())?;
            w.flush()?;
            let mut w = open(Some(&csv_path))?;
            out::write_profile_csv(&mut w, &profiles, k.as_ref())?;
            w.flush()?;
        }
        Format::Text => return Err(CliError::Usage("profile supports csv or svg".into())),
    }
    Ok(ExitCode::SUCCESS)
}

fn orbits_cmd(max_sum: u32, energy: Option<f64>, output: Option<PathBuf>) -> Outcome {
    if max_sum < 2 {
        return Err(CliError::Usage("--max-sum must be at least 2".into()));
    }
    let rows: Vec<_> = labels_up_to(max_sum)
        .into_iter()
        .map(resonance_data)
        .collect();
    let mut w = open(output.as_deref())?;
    out::write_catalogue_csv(&mut w, &rows, energy)?;
    w.flush()?;
    if let Some(c) = energy {
        let inside: Vec<String> = rows
            .iter()
            .filter(|d| d.in_window(c))
            .map(|d| format!("({},{})", d.label.k(), d.label.l()))
            .collect();
        eprintln!(
            "tori at c = {c}: {}",
            if inside.is_empty() {
                "none".into()
            } else {
                inside.join(" ")
            }
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn tree_cmd(depth: u32, format: Format, output: Option<PathBuf>) -> Outcome {
    if depth > MAX_DEPTH {
        return Err(CliError::Usage(format!(
            "depth {depth} exceeds {MAX_DEPTH}"
        )));
    }
    let mut w = open(output.as_deref())?;
    match format {
        Format::Text => out::write_tree_text(&mut w, depth)?,
        Format::Csv => out::write_tree_csv(&mut w, depth)?,
        Format::Svg => return Err(CliError::Usage("tree supports text or csv".into())),
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn parse_tolerances(entries: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    let mut map = BTreeMap::new();
    for item in entries.iter().flat_map(|e| e.split(',')) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--tol expects NAME=VALUE, got {item:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .ok()
            .filter(|v: &f64| *v >= 0.0)
            .ok_or_else(|| CliError::Usage(format!("--tol {key}: invalid tolerance {value:?}")))?;
        map.insert(key.trim().to_string(), value);
    }
    Ok(map)
}

fn verify_cmd(seed: u64, tol: &[String], only: &[String], output: Option<PathBuf>) -> Outcome {
    let opts = VerifyOptions {
        seed,
        tolerances: parse_tolerances(tol)?,
        only: only
            .iter()
            .map(|g| g.parse::<Group>())
            .collect::<Result<_, _>>()?,
    };
    let rows = run_checks(&opts)?;
    let mut w = open(output.as_deref())?;
    out::write_verification_csv(&mut w, &rows)?;
    w.flush()?;
    let failed: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        match &r.error {
            Some(e) => eprintln!("FAIL {}: {e}", r.check),
            None => eprintln!(
                "FAIL {}: residual {} > tolerance {}",
                r.check,
                out::num(r.max_residual),
                out::num(r.tolerance)
            ),
        }
    }
    Ok(if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn core_field(f: FieldArg) -> Field {
    match f {
        FieldArg::Kepler => Field::Kepler,
        FieldArg::Jacobi => Field::Jacobi,
        FieldArg::ChartDelaunay => Field::ChartDelaunay,
        FieldArg::ChartJacobi => Field::ChartJacobi,
    }
}

fn field_name(f: Field) -> &'static str {
    match f {
        Field::Kepler => "H",
        Field::Jacobi => "K",
        Field::ChartDelaunay => "delaunay",
        Field::ChartJacobi => "chart-K",
    }
}

fn check_dt(dt: f64) -> Result<f64, CliError> {
    if dt > 0.0 && dt.is_finite() {
        Ok(dt)
    } else {
        Err(CliError::Usage(format!("--dt must be positive, got {dt}")))
    }
}

fn field_flow_cmd(
    field: FieldArg,
    start: PhasePoint,
    t_end: f64,
    dt: Option<f64>,
    output: Option<PathBuf>,
) -> Outcome {
    let field = core_field(field);
    let dt = match dt {
        Some(dt) => check_dt(dt)?,
        None => match field {
            Field::Kepler | Field::Jacobi => start
                .kepler_energy()
                .ok()
                .and_then(|h| period_of_energy(h).ok())
                .map_or(FALLBACK_DT, |tau| tau / DEFAULT_STEPS_PER_PERIOD),
            _ => FALLBACK_DT,
        },
    };
    let traj = flow(field, &start, t_end, dt)?;
    let comments = vec![
        format!("field = {}", field_name(field)),
        format!("dt = {}", out::num(dt)),
    ];
    write_flow(&traj, comments, output)
}

fn orbit_flow_cmd(
    arg: &str,
    ecc: f64,
    rotating: bool,
    dt: Option<f64>,
    output: Option<PathBuf>,
) -> Outcome {
    let [k, l] = {
        let parts: Vec<u32> = arg
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Usage(format!("--orbit expects k,l, got {arg:?}")))?;
        <[u32; 2]>::try_from(parts)
            .map_err(|_| CliError::Usage(format!("--orbit expects k,l, got {arg:?}")))?
    };
    let label = ResonanceLabel::new(k, l)?;
    let orbit = second_kind_orbit(label, ecc)?;
    let field = if rotating {
        Field::Jacobi
    } else {
        Field::Kepler
    };
    let traj = match dt {
        None if rotating => orbit.trajectory.clone(),
        _ => {
            let dt = match dt {
                Some(dt) => check_dt(dt)?,
                None => orbit.period / DEFAULT_STEPS_PER_PERIOD,
            };
            flow(field, &orbit.trajectory.states[0], orbit.period, dt)?
        }
    };
    let dt = traj.times.get(1).map_or(0.0, |t| t - traj.times[0]);
    let comments = vec![
        format!("orbit = ({k},{l}), eccentricity = {}", out::num(ecc)),
        format!("frame = {}", if rotating { "rotating" } else { "inertial" }),
        format!("field = {}", field_name(field)),
        format!("dt = {}", out::num(dt)),
        format!("period = {}", out::num(orbit.period)),
        format!("symmetry_residual = {}", out::num(orbit.symmetry_residual)),
    ];
    write_flow(&traj, comments, output)
}

fn write_flow(
    traj: &rkp_core::dynamics::Trajectory,
    mut comments: Vec<String>,
    output: Option<PathBuf>,
) -> Outcome {
    let code = match &traj.status {
        FlowStatus::Complete => {
            comments.push("status = complete".into());
            ExitCode::SUCCESS
        }
        FlowStatus::Truncated { time, reason } => {
            comments.push(format!(
                "status = truncated at t = {}: {reason}",
                out::num(*time)
            ));
            eprintln!("warning: trajectory truncated at t = {time}: {reason}");
            ExitCode::from(1)
        }
    };
    let mut w = open(output.as_deref())?;
    out::write_trajectory_csv(&mut w, traj, &comments)?;
    w.flush()?;
    Ok(code)
}
