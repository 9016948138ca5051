use cdob_lab::cdob::design_q;
use cdob_lab::config::{help_text, lookup_flag, parse_file, parse_flags, ConfigError, Kind, RunConfig};
use cdob_lab::controller::compute_admissible_region;
use cdob_lab::path::{build_preset_path, peak_curvature, sample_path};
use cdob_lab::sim::{render_plots, run_scenario, summary_csv, summary_table, sweep, SimResult, SpeedPolicy};
use cdob_lab::signals::tf_from_state_space;
use cdob_lab::vehicle::{build_tracking_model, preview_distance, schedule_speed, INPUT_STEER};
use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_DIVERGED: u8 = 3;

const SUBCOMMANDS: &[(&str, &str)] = &[
    ("path", "print the preset reference path as CSV (s,x,y,heading,rho)"),
    ("design-q", "print the low-pass filter design numbers"),
    ("region", "write the admissible-gain grid CSV and print the selected gains"),
    ("run", "run one scenario; write CSV, SVG charts and metrics"),
    ("sweep", "run the delay/mode matrix; write per-cell artifacts and a summary"),
];

fn usage() -> String {
    let mut out = String::from("usage: cdob-lab <subcommand> [--config FILE] [--flag value ...]\n\nsubcommands:\n");
    for (name, help) in SUBCOMMANDS {
        let _ = writeln!(out, "  {name:<10} {help}");
    }
    out.push('\n');
    out.push_str(&help_text());
    out
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args.iter().any(|a| a == "--help" || a == "-h") {
        print!("{}", usage());
        return ExitCode::from(if args.is_empty() { EXIT_CONFIG } else { EXIT_OK });
    }
    let sub = args[0].clone();
    if !SUBCOMMANDS.iter().any(|(n, _)| *n == sub) {
        eprintln!("unknown subcommand '{sub}'\n\n{}", usage());
        return ExitCode::from(EXIT_CONFIG);
    }

    let cfg = match load_config(&args[1..]) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    match dispatch(&sub, &cfg) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

enum Failure {
    Config(ConfigError),
    Runtime(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<cdob_lab::Error> for Failure {
    fn from(e: cdob_lab::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Splits `--config FILE` out of the argument list, reads the file if given,
/// then resolves defaults, file values and flag overrides.
fn load_config(args: &[String]) -> Result<RunConfig, ConfigError> {
    let mut rest: Vec<String> = Vec::new();
    let mut file_text = String::new();
    let mut i = 0;
    while i < args.len() {
        if args[i] == "--config" {
            let Some(path) = args.get(i + 1) else {
                return Err(ConfigError::MissingValue("config".into()));
            };
            file_text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                path: path.clone(),
                source,
            })?;
            i += 2;
            continue;
        }
        // keep bool flags and their optional value together for parse_flags
        if let Some(name) = args[i].strip_prefix("--") {
            if let Some(t) = lookup_flag(name) {
                rest.push(args[i].clone());
                if t.kind != Kind::Bool {
                    if let Some(v) = args.get(i + 1) {
                        rest.push(v.clone());
                        i += 2;
                        continue;
                    }
                }
                i += 1;
                continue;
            }
        }
        rest.push(args[i].clone());
        i += 1;
    }
    let file_values = parse_file(&file_text)?;
    let flag_values = parse_flags(&rest)?;
    Ok(RunConfig::resolve(file_values, flag_values))
}

fn dispatch(sub: &str, cfg: &RunConfig) -> Result<u8, Failure> {
    match sub {
        "path" => cmd_path(cfg),
        "design-q" => cmd_design_q(cfg),
        "region" => cmd_region(cfg),
        "run" => cmd_run(cfg),
        "sweep" => cmd_sweep(cfg),
        _ => unreachable!("subcommand validated in main"),
    }
}

fn cmd_path(cfg: &RunConfig) -> Result<u8, Failure> {
    let scn = cfg.scenario()?;
    let path = build_preset_path(
        scn.preset,
        &scn.geometry,
        scn.dense_spacing,
        scn.n_segments,
        scn.degree,
        scn.arc_ds,
    )?;
    let ds = scn.arc_ds.max(1e-6);
    let n = (path.total_length / ds).floor() as usize;
    println!("s,x,y,heading,rho");
    for i in 0..=n {
        let s = (i as f64 * ds).min(path.total_length);
        let p = sample_path(&path, s)?;
        println!("{},{},{},{},{}", s, p.x, p.y, p.heading, p.rho);
    }
    Ok(EXIT_OK)
}

fn cmd_design_q(cfg: &RunConfig) -> Result<u8, Failure> {
    let spec = cfg.qspec();
    spec.validate()?;
    let q = design_q(&spec);
    println!("n_raw = {:.4}", q.n_raw);
    println!("order = {}", q.order);
    println!("omega_c = {:.1} rad/s", q.omega_c);
    println!("Q(s) numerator coefficients (descending): {:?}", q.tf.num);
    println!("Q(s) denominator coefficients (descending): {:?}", q.tf.den);
    Ok(EXIT_OK)
}

fn cmd_region(cfg: &RunConfig) -> Result<u8, Failure> {
    let scn = cfg.scenario()?;
    let v = match scn.speed {
        SpeedPolicy::Fixed(v) => v,
        SpeedPolicy::CurvatureScheduled => {
            let path = build_preset_path(
                scn.preset,
                &scn.geometry,
                scn.dense_spacing,
                scn.n_segments,
                scn.degree,
                scn.arc_ds,
            )?;
            schedule_speed(peak_curvature(&path), &scn.sched)
        }
    };
    let ls = preview_distance(v, &scn.sched);
    let model = build_tracking_model(&scn.params, v, ls)?;
    let gn = tf_from_state_space(&model, INPUT_STEER, 0);
    let region = compute_admissible_region(&gn, &scn.dspec, &scn.grid, v);

    let out_dir = cfg.out_dir();
    std::fs::create_dir_all(&out_dir)?;
    let mut csv = String::from("kp,ki,kd,admissible\n");
    for flat in 0..region.mask.len() {
        let g = region.gains_at(flat);
        let _ = writeln!(csv, "{},{},{},{}", g.kp, g.ki, g.kd, u8::from(region.mask[flat]));
    }
    std::fs::write(out_dir.join("region.csv"), csv)?;

    let gains = cdob_lab::controller::select_gains(&region)?;
    println!("speed = {v} m/s, preview = {ls} m");
    println!("admissible points: {} of {}", region.admissible_count(), region.mask.len());
    println!("selected gains: kp = {}, ki = {}, kd = {}", gains.kp, gains.ki, gains.kd);
    println!("wrote {}", out_dir.join("region.csv").display());
    Ok(EXIT_OK)
}

fn write_run_artifacts(r: &SimResult, dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)?;
    cdob_lab::sim::export_csv(r, &dir.join("run.csv"))?;
    render_plots(&[r], dir)?;
    let m = &r.metrics;
    let mut text = String::new();
    let _ = writeln!(text, "label = {}", r.label);
    let _ = writeln!(text, "speed = {} m/s", r.v);
    let _ = writeln!(text, "max_abs_ey = {} m", m.max_abs_ey);
    let _ = writeln!(text, "rms_ey = {} m", m.rms_ey);
    let _ = writeln!(text, "max_abs_steer = {} rad", m.max_abs_steer);
    let _ = writeln!(text, "diverged = {}", m.diverged);
    let _ = writeln!(text, "final_s = {} m", m.final_s);
    std::fs::write(dir.join("metrics.txt"), text)?;
    Ok(())
}

fn cmd_run(cfg: &RunConfig) -> Result<u8, Failure> {
    let scn = cfg.scenario()?;
    let result = run_scenario(&scn, &cfg.sim_config())?;
    let out_dir = cfg.out_dir();
    write_run_artifacts(&result, &out_dir)?;
    let m = &result.metrics;
    println!(
        "{}: max|ey| = {:.5} m, rms ey = {:.5} m, max|steer| = {:.5} rad, diverged = {}",
        result.label, m.max_abs_ey, m.rms_ey, m.max_abs_steer, m.diverged
    );
    println!("artifacts in {}", out_dir.display());
    if result.diverged {
        eprintln!("run diverged (|ey| exceeded the guard or went non-finite)");
        if cfg.bool("run.strict") {
            return Ok(EXIT_DIVERGED);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(cfg: &RunConfig) -> Result<u8, Failure> {
    let scn = cfg.scenario()?;
    let taus = cfg.f64_list("sweep.taus")?;
    let modes = cfg.modes()?;
    let cells = sweep(&scn, &taus, &modes, &cfg.sim_config())?;
    let out_dir = cfg.out_dir();
    std::fs::create_dir_all(&out_dir)?;
    for c in &cells {
        let dir = out_dir.join(format!("tau-{}-{}", c.tau, c.mode));
        write_run_artifacts(&c.result, &dir)?;
    }
    std::fs::write(out_dir.join("summary.csv"), summary_csv(&cells))?;
    let table = summary_table(&cells);
    std::fs::write(out_dir.join("summary.txt"), &table)?;
    print!("{table}");
    println!("artifacts in {}", out_dir.display());
    if cells.is_empty() {
        eprintln!("sweep matrix is empty, nothing was rendered");
        return Ok(EXIT_ERROR);
    }
    Ok(EXIT_OK)
}
