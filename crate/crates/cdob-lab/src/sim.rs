//! Fixed-step closed-loop simulation: path, plant, loop delay, tracking
//! strategy and metrics, plus the delay/mode sweep harness and CSV/SVG output.

use crate::cdob::{design_q, QFilterSpec};
use crate::controller::{
    compute_admissible_region, lookup_gains, select_gains, DStabilitySpec, GainGrid, GainSchedule,
    PidGains,
};
use crate::path::{
    build_preset_path, peak_curvature, sample_path, PresetGeometry, PresetKind, ReferencePath,
};
use crate::plot::{line_chart, Series};
use crate::signals::{tf_from_state_space, DelayLine};
use crate::strategy::{build_strategy, StrategyContext};
use crate::vehicle::{
    build_curvature_channel, build_tracking_model, preview_distance, schedule_speed,
    SchedulingConfig, TrackingState, VehicleParams, INPUT_CURVATURE, INPUT_STEER,
};
use crate::Result;
use nalgebra::{DMatrix, DVector};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Which loop signal the delay acts on.
///
/// Measurement placement models a communication delay between the vehicle
/// sensors and the controller: the plant reacts to commands immediately and
/// the observer sees a stale measurement. Actuation placement delays the
/// steering command into the plant instead. Only the first lets a disturbance
/// observer restore the physical tracking error to its delay-free shape; with
/// actuation delay the vehicle reacts late no matter what the observer does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelayPlacement {
    Measurement,
    Actuation,
}

/// How the scenario speed is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpeedPolicy {
    Fixed(f64),
    /// From peak path curvature and the lateral-acceleration cap.
    CurvatureScheduled,
}

/// Where the PID gains come from.
#[derive(Debug, Clone)]
pub enum GainsSource {
    Explicit(PidGains),
    /// Parameter-space design at the scenario speed.
    Designed,
    Schedule(GainSchedule),
}

/// One experiment description.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub preset: PresetKind,
    pub geometry: PresetGeometry,
    /// Strategy name from the registry.
    pub controller: String,
    /// Loop time delay, s.
    pub tau: f64,
    pub delay_placement: DelayPlacement,
    pub speed: SpeedPolicy,
    pub gains: GainsSource,
    /// Steering saturation, rad.
    pub saturation: f64,
    pub params: VehicleParams,
    pub sched: SchedulingConfig,
    pub qspec: QFilterSpec,
    pub dspec: DStabilitySpec,
    pub grid: GainGrid,
    pub dense_spacing: f64,
    pub n_segments: usize,
    pub degree: usize,
    pub arc_ds: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            preset: PresetKind::SingleLane,
            geometry: PresetGeometry::default(),
            controller: "pid-cdob-modified".into(),
            tau: 0.0,
            delay_placement: DelayPlacement::Measurement,
            speed: SpeedPolicy::Fixed(10.0),
            gains: GainsSource::Designed,
            saturation: 0.6,
            params: VehicleParams::default(),
            sched: SchedulingConfig::default(),
            qspec: QFilterSpec::default(),
            dspec: DStabilitySpec::default(),
            grid: GainGrid::default(),
            dense_spacing: 1.0,
            n_segments: 5,
            degree: 5,
            arc_ds: 0.1,
        }
    }
}

/// Solver settings.
#[derive(Debug, Clone, Copy)]
pub struct SimConfig {
    pub dt: f64,
    /// None runs until the path is exhausted.
    pub duration: Option<f64>,
    pub initial_state: TrackingState,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            duration: None,
            initial_state: TrackingState::default(),
        }
    }
}

/// Summary numbers over a run, computed after a 0.5 s startup exclusion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub max_abs_ey: f64,
    pub rms_ey: f64,
    pub max_abs_steer: f64,
    pub diverged: bool,
    pub final_s: f64,
}

/// Time series and metrics of one run.
#[derive(Debug, Clone)]
pub struct SimResult {
    pub label: String,
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub beta: Vec<f64>,
    pub r: Vec<f64>,
    pub dpsi: Vec<f64>,
    pub ey: Vec<f64>,
    pub steer_cmd: Vec<f64>,
    pub steer_applied: Vec<f64>,
    pub rho: Vec<f64>,
    pub ycomp: Vec<f64>,
    pub metrics: Metrics,
    pub diverged: bool,
    /// Reference polyline for trajectory plots.
    pub reference: Vec<(f64, f64)>,
    pub v: f64,
    pub dt: f64,
}

const DIVERGENCE_EY: f64 = 10.0;
const METRIC_STARTUP_EXCLUSION: f64 = 0.5;

/// Resolves the gains a scenario will run with at speed `v`.
pub fn resolve_gains(scn: &Scenario, gn: &crate::signals::RationalTf, v: f64) -> Result<PidGains> {
    match &scn.gains {
        GainsSource::Explicit(g) => Ok(*g),
        GainsSource::Designed => {
            let region = compute_admissible_region(gn, &scn.dspec, &scn.grid, v);
            select_gains(&region)
        }
        GainsSource::Schedule(s) => Ok(lookup_gains(s, v)),
    }
}

/// Designs gains at each knot speed via the parameter-space region and packs
/// them into a lookup schedule.
pub fn design_schedule(scn: &Scenario, knots: &[f64]) -> Result<GainSchedule> {
    let mut gains = Vec::with_capacity(knots.len());
    for &v in knots {
        let ls = preview_distance(v, &scn.sched);
        let model = build_tracking_model(&scn.params, v, ls)?;
        let gn = tf_from_state_space(&model, INPUT_STEER, 0);
        let region = compute_admissible_region(&gn, &scn.dspec, &scn.grid, v);
        gains.push(select_gains(&region)?);
    }
    Ok(GainSchedule::new(knots.to_vec(), gains))
}

/// Runs one closed-loop scenario. Plant integration is fourth-order
/// Runge-Kutta on the continuous model with zero-order-hold inputs; all
/// filter blocks run at the same fixed step.
pub fn run_scenario(scn: &Scenario, cfg: &SimConfig) -> Result<SimResult> {
    let path = build_preset_path(
        scn.preset,
        &scn.geometry,
        scn.dense_spacing,
        scn.n_segments,
        scn.degree,
        scn.arc_ds,
    )?;
    run_on_path(scn, cfg, &path)
}

/// Same as [`run_scenario`] with a pre-built path (sweeps reuse the path).
pub fn run_on_path(scn: &Scenario, cfg: &SimConfig, path: &ReferencePath) -> Result<SimResult> {
    let dt = cfg.dt;
    assert!(dt > 0.0);
    let v = match scn.speed {
        SpeedPolicy::Fixed(v) => v,
        SpeedPolicy::CurvatureScheduled => schedule_speed(peak_curvature(path), &scn.sched),
    };
    let ls = preview_distance(v, &scn.sched);
    let model = build_tracking_model(&scn.params, v, ls)?;
    let gn = tf_from_state_space(&model, INPUT_STEER, 0);
    let grho = tf_from_state_space(&build_curvature_channel(v, ls)?, 0, 0);
    scn.qspec.validate()?;
    let q = design_q(&scn.qspec);
    let gains = resolve_gains(scn, &gn, v)?;

    let ctx = StrategyContext {
        gn,
        grho,
        q,
        gains,
        dt,
        saturation: scn.saturation,
        t_f: 5.0 * dt,
    };
    let mut strategy = build_strategy(&scn.controller, &ctx)?;
    let mut delay = DelayLine::new(scn.tau, dt);

    let a = model.a.clone();
    let b_steer: DVector<f64> = DVector::from_column_slice(model.b.column(INPUT_STEER).as_slice());
    let b_rho: DVector<f64> = DVector::from_column_slice(model.b.column(INPUT_CURVATURE).as_slice());

    let start = sample_path(path, 0.0)?;
    let mut pose = (start.x, start.y, start.heading);
    let mut state = DVector::from_column_slice(&[
        cfg.initial_state.beta,
        cfg.initial_state.r,
        cfg.initial_state.dpsi,
        cfg.initial_state.ey,
    ]);

    let max_steps = match cfg.duration {
        Some(d) => (d / dt).round() as usize,
        None => (path.total_length / (v * dt)).floor() as usize,
    };
    let mut out = SimResult {
        label: format!("{} tau={}", scn.controller, scn.tau),
        t: Vec::with_capacity(max_steps),
        s: Vec::with_capacity(max_steps),
        x: Vec::with_capacity(max_steps),
        y: Vec::with_capacity(max_steps),
        beta: Vec::with_capacity(max_steps),
        r: Vec::with_capacity(max_steps),
        dpsi: Vec::with_capacity(max_steps),
        ey: Vec::with_capacity(max_steps),
        steer_cmd: Vec::with_capacity(max_steps),
        steer_applied: Vec::with_capacity(max_steps),
        rho: Vec::with_capacity(max_steps),
        ycomp: Vec::with_capacity(max_steps),
        metrics: Metrics {
            max_abs_ey: 0.0,
            rms_ey: 0.0,
            max_abs_steer: 0.0,
            diverged: false,
            final_s: 0.0,
        },
        diverged: false,
        reference: reference_polyline(path),
        v,
        dt,
    };

    for n in 0..max_steps {
        let t = n as f64 * dt;
        let s = (v * t).min(path.total_length);
        let pose_ref = sample_path(path, s)?;
        let rho_ref = pose_ref.rho;
        let ey = state[3];

        let finite = state.iter().all(|x| x.is_finite());
        if !finite || ey.abs() > DIVERGENCE_EY {
            out.diverged = true;
            break;
        }

        let (u, applied) = match scn.delay_placement {
            DelayPlacement::Measurement => {
                let ey_meas = delay.push(ey);
                let u = strategy.control(ey_meas, rho_ref);
                (u, u)
            }
            DelayPlacement::Actuation => {
                let u = strategy.control(ey, rho_ref);
                (u, delay.push(u))
            }
        };
        let ycomp = strategy.compensated_feedback();

        out.t.push(t);
        out.s.push(s);
        out.x.push(pose.0);
        out.y.push(pose.1);
        out.beta.push(state[0]);
        out.r.push(state[1]);
        out.dpsi.push(state[2]);
        out.ey.push(ey);
        out.steer_cmd.push(u);
        out.steer_applied.push(applied);
        out.rho.push(rho_ref);
        out.ycomp.push(ycomp);

        // RK4 on x' = Ax + B_steer*applied + B_rho*rho, inputs held over dt
        let bu = &b_steer * applied + &b_rho * rho_ref;
        state = rk4(&a, &state, &bu, dt);

        // global pose for trajectory reconstruction only
        let (beta, r) = (state[0], state[1]);
        pose.0 += dt * v * (pose.2 + beta).cos();
        pose.1 += dt * v * (pose.2 + beta).sin();
        pose.2 += dt * r;
    }

    out.metrics = compute_metrics(&out);
    out.metrics.diverged = out.diverged;
    Ok(out)
}

fn rk4(a: &DMatrix<f64>, x: &DVector<f64>, bu: &DVector<f64>, dt: f64) -> DVector<f64> {
    let k1 = a * x + bu;
    let k2 = a * &(x + 0.5 * dt * &k1) + bu;
    let k3 = a * &(x + 0.5 * dt * &k2) + bu;
    let k4 = a * &(x + dt * &k3) + bu;
    x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

fn reference_polyline(path: &ReferencePath) -> Vec<(f64, f64)> {
    let n = 500;
    (0..=n)
        .filter_map(|i| {
            let s = path.total_length * i as f64 / n as f64;
            sample_path(path, s).ok().map(|p| (p.x, p.y))
        })
        .collect()
}

/// Maxima and RMS over all samples past the startup exclusion.
pub fn compute_metrics(r: &SimResult) -> Metrics {
    let mut max_ey = 0.0f64;
    let mut sum2 = 0.0;
    let mut count = 0usize;
    let mut max_steer = 0.0f64;
    for (i, &t) in r.t.iter().enumerate() {
        if t < METRIC_STARTUP_EXCLUSION {
            continue;
        }
        max_ey = max_ey.max(r.ey[i].abs());
        sum2 += r.ey[i] * r.ey[i];
        count += 1;
        max_steer = max_steer.max(r.steer_applied[i].abs());
    }
    // short or immediately-diverging runs: fall back to the full series
    if count == 0 {
        for i in 0..r.t.len() {
            max_ey = max_ey.max(r.ey[i].abs());
            sum2 += r.ey[i] * r.ey[i];
            count += 1;
            max_steer = max_steer.max(r.steer_applied[i].abs());
        }
    }
    let rms = if count > 0 { (sum2 / count as f64).sqrt() } else { 0.0 };
    Metrics {
        max_abs_ey: max_ey,
        rms_ey: rms,
        max_abs_steer: max_steer,
        diverged: r.diverged,
        final_s: r.s.last().copied().unwrap_or(0.0),
    }
}

/// One cell of a delay/mode sweep.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub tau: f64,
    pub mode: String,
    pub result: SimResult,
}

/// Runs every (tau, mode) pair of the sweep in deterministic input order.
pub fn sweep(base: &Scenario, taus: &[f64], modes: &[String], cfg: &SimConfig) -> Result<Vec<SweepCell>> {
    let path = build_preset_path(
        base.preset,
        &base.geometry,
        base.dense_spacing,
        base.n_segments,
        base.degree,
        base.arc_ds,
    )?;
    // resolve gains once so designed gains are shared across all cells
    let v = match base.speed {
        SpeedPolicy::Fixed(v) => v,
        SpeedPolicy::CurvatureScheduled => schedule_speed(peak_curvature(&path), &base.sched),
    };
    let ls = preview_distance(v, &base.sched);
    let model = build_tracking_model(&base.params, v, ls)?;
    let gn = tf_from_state_space(&model, INPUT_STEER, 0);
    let gains = resolve_gains(base, &gn, v)?;

    let mut cells = Vec::new();
    for &tau in taus {
        for mode in modes {
            let scn = Scenario {
                controller: mode.clone(),
                tau,
                gains: GainsSource::Explicit(gains),
                ..base.clone()
            };
            let result = run_on_path(&scn, cfg, &path)?;
            cells.push(SweepCell {
                tau,
                mode: mode.clone(),
                result,
            });
        }
    }
    Ok(cells)
}

/// Aligned plain-text summary of a sweep.
pub fn summary_table(cells: &[SweepCell]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:<20} {:>12} {:>12} {:>12} {:>9}",
        "tau", "mode", "max|ey| m", "rms ey m", "max|steer|", "diverged"
    );
    for c in cells {
        let m = &c.result.metrics;
        let _ = writeln!(
            out,
            "{:<8} {:<20} {:>12.5} {:>12.5} {:>12.5} {:>9}",
            c.tau, c.mode, m.max_abs_ey, m.rms_ey, m.max_abs_steer, m.diverged
        );
    }
    out
}

/// Sweep summary as CSV.
pub fn summary_csv(cells: &[SweepCell]) -> String {
    let mut out = String::from("tau,mode,max_abs_ey,rms_ey,max_abs_steer,diverged,final_s\n");
    for c in cells {
        let m = &c.result.metrics;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            c.tau, c.mode, m.max_abs_ey, m.rms_ey, m.max_abs_steer, m.diverged, m.final_s
        );
    }
    out
}

pub const CSV_HEADER: &str = "t,s,x,y,beta,r,dpsi,ey,steer_cmd,steer_applied,rho,ycomp";

/// Serializes the run series; float formatting is shortest-round-trip, so a
/// re-parse reproduces the values exactly.
pub fn csv_string(r: &SimResult) -> String {
    let mut out = String::with_capacity(r.t.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for i in 0..r.t.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.t[i],
            r.s[i],
            r.x[i],
            r.y[i],
            r.beta[i],
            r.r[i],
            r.dpsi[i],
            r.ey[i],
            r.steer_cmd[i],
            r.steer_applied[i],
            r.rho[i],
            r.ycomp[i]
        );
    }
    out
}

/// Writes the run series as CSV.
pub fn export_csv(r: &SimResult, path: &Path) -> Result<()> {
    std::fs::write(path, csv_string(r))?;
    Ok(())
}

/// Renders trajectory, tracking-error and steering charts for a result set.
/// Returns the written files; an empty input writes nothing.
pub fn render_plots(results: &[&SimResult], dir: &Path) -> Result<Vec<PathBuf>> {
    if results.is_empty() {
        return Ok(Vec::new());
    }
    std::fs::create_dir_all(dir)?;
    let mut files = Vec::new();

    let mut traj: Vec<Series> = vec![Series {
        label: "reference".into(),
        points: results[0].reference.clone(),
    }];
    for r in results {
        traj.push(Series {
            label: r.label.clone(),
            points: r.x.iter().copied().zip(r.y.iter().copied()).collect(),
        });
    }
    let f = dir.join("trajectory.svg");
    std::fs::write(&f, line_chart("trajectory", "x (m)", "y (m)", &traj))?;
    files.push(f);

    let err: Vec<Series> = results
        .iter()
        .map(|r| Series {
            label: r.label.clone(),
            points: r.t.iter().copied().zip(r.ey.iter().copied()).collect(),
        })
        .collect();
    let f = dir.join("tracking_error.svg");
    std::fs::write(&f, line_chart("path tracking error", "t (s)", "e_y (m)", &err))?;
    files.push(f);

    let steer: Vec<Series> = results
        .iter()
        .map(|r| Series {
            label: r.label.clone(),
            points: r
                .t
                .iter()
                .copied()
                .zip(r.steer_applied.iter().copied())
                .collect(),
        })
        .collect();
    let f = dir.join("steering.svg");
    std::fs::write(&f, line_chart("steering input", "t (s)", "delta_f (rad)", &steer))?;
    files.push(f);
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn straight_scenario(controller: &str, tau: f64) -> Scenario {
        // a lane offset of ~0 approximates a straight path while staying a
        // valid preset; use an explicit straight fit instead
        Scenario {
            controller: controller.into(),
            tau,
            gains: GainsSource::Explicit(PidGains { kp: 0.2, ki: 0.05, kd: 0.05 }),
            ..Default::default()
        }
    }

    fn straight_path() -> ReferencePath {
        use crate::path::{build_arclength_table, fit_path, segment_points, Waypoint};
        let pts: Vec<Waypoint> = (0..=100).map(|i| Waypoint { x: i as f64, y: 0.0 }).collect();
        let runs = segment_points(&pts, 2, 5).unwrap();
        build_arclength_table(fit_path(&runs, 5).unwrap(), 0.1)
    }

    #[test]
    fn straight_path_is_equilibrium() {
        let path = straight_path();
        for name in ["pid", "pid-cdob-standard", "pid-cdob-modified"] {
            for tau in [0.0, 0.1, 0.3] {
                let scn = straight_scenario(name, tau);
                let r = run_on_path(&scn, &SimConfig::default(), &path).unwrap();
                assert!(!r.diverged);
                assert!(
                    r.metrics.max_abs_ey < 1e-9,
                    "{name} tau {tau}: {}",
                    r.metrics.max_abs_ey
                );
            }
        }
    }

    #[test]
    fn straight_path_global_pose_on_reference() {
        let path = straight_path();
        let scn = straight_scenario("pid", 0.0);
        let r = run_on_path(&scn, &SimConfig::default(), &path).unwrap();
        for i in 0..r.t.len() {
            assert!(r.y[i].abs() < 1e-6, "y = {} at t = {}", r.y[i], r.t[i]);
        }
    }

    #[test]
    fn metrics_examples() {
        let mut r = SimResult {
            label: "m".into(),
            t: (0..2000).map(|i| i as f64 * 1e-3).collect(),
            s: vec![0.0; 2000],
            x: vec![0.0; 2000],
            y: vec![0.0; 2000],
            beta: vec![0.0; 2000],
            r: vec![0.0; 2000],
            dpsi: vec![0.0; 2000],
            ey: vec![0.1; 2000],
            steer_cmd: vec![0.0; 2000],
            steer_applied: vec![0.0; 2000],
            rho: vec![0.0; 2000],
            ycomp: vec![0.0; 2000],
            metrics: Metrics {
                max_abs_ey: 0.0,
                rms_ey: 0.0,
                max_abs_steer: 0.0,
                diverged: false,
                final_s: 0.0,
            },
            diverged: false,
            reference: Vec::new(),
            v: 10.0,
            dt: 1e-3,
        };
        let m = compute_metrics(&r);
        assert!((m.max_abs_ey - 0.1).abs() < 1e-15);
        assert!((m.rms_ey - 0.1).abs() < 1e-12);

        r.ey = (0..2000).map(|i| if i % 2 == 0 { 0.1 } else { -0.1 }).collect();
        let m = compute_metrics(&r);
        assert!((m.max_abs_ey - 0.1).abs() < 1e-15);
        assert!((m.rms_ey - 0.1).abs() < 1e-12);
        assert!(m.max_abs_ey >= m.rms_ey);
    }

    #[test]
    fn sweep_shape_and_empty() {
        let base = Scenario {
            gains: GainsSource::Explicit(PidGains { kp: 0.2, ki: 0.05, kd: 0.05 }),
            ..Default::default()
        };
        let cfg = SimConfig { dt: 1e-2, ..Default::default() };
        let cells = sweep(
            &base,
            &[0.0, 0.1],
            &["pid".into(), "pid-cdob-modified".into()],
            &cfg,
        )
        .unwrap();
        assert_eq!(cells.len(), 4);
        assert_eq!(cells[0].mode, "pid");
        assert_eq!(cells[0].tau, 0.0);
        assert_eq!(cells[3].mode, "pid-cdob-modified");
        assert_eq!(cells[3].tau, 0.1);

        let empty = sweep(&base, &[], &["pid".into()], &cfg).unwrap();
        assert!(empty.is_empty());
        assert_eq!(summary_csv(&empty).lines().count(), 1);
    }

    #[test]
    fn csv_round_trip_exact() {
        let path = straight_path();
        let mut scn = straight_scenario("pid-cdob-modified", 0.1);
        scn.preset = PresetKind::SingleLane;
        let cfg = SimConfig { dt: 1e-3, duration: Some(1.0), ..Default::default() };
        let r = run_scenario(&scn, &cfg).unwrap();
        let _ = path;
        let text = csv_string(&r);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        for (i, line) in lines.enumerate() {
            let vals: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
            assert_eq!(vals[0], r.t[i]);
            assert_eq!(vals[7], r.ey[i]);
            assert_eq!(vals[11], r.ycomp[i]);
        }
    }

    #[test]
    fn saturation_is_respected_exactly() {
        let scn = Scenario {
            controller: "pid".into(),
            tau: 0.3,
            saturation: 0.1,
            gains: GainsSource::Explicit(PidGains { kp: 0.8, ki: 0.4, kd: 0.1 }),
            ..Default::default()
        };
        let r = run_scenario(&scn, &SimConfig::default()).unwrap();
        for &u in r.steer_cmd.iter().chain(r.steer_applied.iter()) {
            assert!(u.abs() <= 0.1);
        }
    }

    #[test]
    fn render_plots_empty_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let files = render_plots(&[], dir.path()).unwrap();
        assert!(files.is_empty());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn render_plots_two_results() {
        let path = straight_path();
        let a = run_on_path(&straight_scenario("pid", 0.0), &SimConfig::default(), &path).unwrap();
        let b = run_on_path(
            &straight_scenario("pid-cdob-modified", 0.1),
            &SimConfig::default(),
            &path,
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let files = render_plots(&[&a, &b], dir.path()).unwrap();
        assert_eq!(files.len(), 3);
        let traj = std::fs::read_to_string(dir.path().join("trajectory.svg")).unwrap();
        assert_eq!(traj.matches("<path").count(), 3); // reference + two runs
        assert!(traj.contains("reference"));
    }
}
