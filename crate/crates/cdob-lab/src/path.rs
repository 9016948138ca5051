//! Reference path generation: preset waypoints, densification, segmentation,
//! constrained polynomial fitting with C2 joints, curvature evaluation and
//! arc-length parametrization.

use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Planar waypoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waypoint {
    pub x: f64,
    pub y: f64,
}

/// One polynomial segment x(lambda), y(lambda), lambda in [0, 1].
/// Coefficients are stored in descending powers.
#[derive(Debug, Clone)]
pub struct PathSegment {
    pub cx: Vec<f64>,
    pub cy: Vec<f64>,
}

impl PathSegment {
    fn eval_poly(c: &[f64], l: f64) -> f64 {
        c.iter().fold(0.0, |acc, &k| acc * l + k)
    }

    fn deriv(c: &[f64]) -> Vec<f64> {
        let n = c.len();
        if n <= 1 {
            return vec![0.0];
        }
        c[..n - 1]
            .iter()
            .enumerate()
            .map(|(i, &k)| k * (n - 1 - i) as f64)
            .collect()
    }

    pub fn position(&self, lambda: f64) -> (f64, f64) {
        (
            Self::eval_poly(&self.cx, lambda),
            Self::eval_poly(&self.cy, lambda),
        )
    }

    pub fn tangent(&self, lambda: f64) -> (f64, f64) {
        (
            Self::eval_poly(&Self::deriv(&self.cx), lambda),
            Self::eval_poly(&Self::deriv(&self.cy), lambda),
        )
    }

    pub fn second_derivative(&self, lambda: f64) -> (f64, f64) {
        (
            Self::eval_poly(&Self::deriv(&Self::deriv(&self.cx)), lambda),
            Self::eval_poly(&Self::deriv(&Self::deriv(&self.cy)), lambda),
        )
    }

    /// |dp/dlambda|.
    pub fn speed(&self, lambda: f64) -> f64 {
        let (dx, dy) = self.tangent(lambda);
        (dx * dx + dy * dy).sqrt()
    }
}

/// Signed curvature (x'y'' - y'x'') / (x'^2 + y'^2)^(3/2), derivatives in lambda.
pub fn curvature_at(seg: &PathSegment, lambda: f64) -> Result<f64> {
    let (dx, dy) = seg.tangent(lambda);
    let speed2 = dx * dx + dy * dy;
    if speed2 < 1e-12 {
        return Err(Error::DegenerateTangent(lambda));
    }
    let (ddx, ddy) = seg.second_derivative(lambda);
    Ok((dx * ddy - dy * ddx) / speed2.powf(1.5))
}

/// Node of the arc-length table.
#[derive(Debug, Clone, Copy)]
pub struct ArcNode {
    pub s: f64,
    pub segment: usize,
    pub lambda: f64,
}

/// Smooth piecewise-polynomial path with an arc-length lookup table.
#[derive(Debug, Clone)]
pub struct ReferencePath {
    pub segments: Vec<PathSegment>,
    pub arclen: Vec<ArcNode>,
    pub total_length: f64,
}

/// Pose at an arc-length station.
#[derive(Debug, Clone, Copy)]
pub struct PoseSample {
    pub x: f64,
    pub y: f64,
    /// rad, in (-pi, pi].
    pub heading: f64,
    /// 1/m.
    pub rho: f64,
}

/// Shape selector for the built-in reference paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    SingleLane,
    DoubleLane,
    Avoidance,
}

impl PresetKind {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "single-lane" => Some(Self::SingleLane),
            "double-lane" => Some(Self::DoubleLane),
            "avoidance" => Some(Self::Avoidance),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SingleLane => "single-lane",
            Self::DoubleLane => "double-lane",
            Self::Avoidance => "avoidance",
        }
    }

    pub fn all() -> [Self; 3] {
        [Self::SingleLane, Self::DoubleLane, Self::Avoidance]
    }
}

/// Geometry knobs of the preset shapes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetGeometry {
    /// Path extent along x, m.
    pub length: f64,
    /// Lane offset for the lane-change presets, m.
    pub lane_offset: f64,
    /// x-range of the single-lane transition.
    pub single_span: (f64, f64),
    /// x-range of the double-lane outgoing transition.
    pub double_up: (f64, f64),
    /// x-range of the double-lane return transition.
    pub double_down: (f64, f64),
    /// Peak of the avoidance bump, m.
    pub avoid_peak: f64,
    /// x-range of the avoidance bump support.
    pub avoid_span: (f64, f64),
    /// Spacing of the coarse sample waypoints, m.
    pub waypoint_spacing: f64,
}

impl Default for PresetGeometry {
    fn default() -> Self {
        Self {
            length: 100.0,
            lane_offset: 3.5,
            single_span: (30.0, 60.0),
            double_up: (20.0, 45.0),
            double_down: (55.0, 80.0),
            avoid_peak: 2.0,
            avoid_span: (20.0, 50.0),
            waypoint_spacing: 2.5,
        }
    }
}

/// C2 smoothstep, 0 -> 1 over t in [0, 1].
fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
}

fn ramp(x: f64, span: (f64, f64)) -> f64 {
    smoothstep((x - span.0) / (span.1 - span.0))
}

/// Coarse waypoints of a preset shape, sampled along x.
pub fn preset_waypoints(kind: PresetKind, geom: &PresetGeometry) -> Result<Vec<Waypoint>> {
    let spans: &[(f64, f64)] = match kind {
        PresetKind::SingleLane => &[geom.single_span],
        PresetKind::DoubleLane => &[geom.double_up, geom.double_down],
        PresetKind::Avoidance => &[geom.avoid_span],
    };
    if geom.length <= 0.0 || geom.waypoint_spacing <= 0.0 {
        return Err(Error::InvalidGeometry("length and spacing must be positive".into()));
    }
    if geom.lane_offset <= 0.0 || geom.avoid_peak <= 0.0 {
        return Err(Error::InvalidGeometry("lane offset and bump peak must be positive".into()));
    }
    for &(a, b) in spans {
        if !(a < b) || a < 0.0 || b > geom.length {
            return Err(Error::InvalidGeometry(format!(
                "span [{a}, {b}] must be increasing and inside [0, {}]",
                geom.length
            )));
        }
    }
    let y_of_x = |x: f64| -> f64 {
        match kind {
            PresetKind::SingleLane => geom.lane_offset * ramp(x, geom.single_span),
            PresetKind::DoubleLane => {
                geom.lane_offset * (ramp(x, geom.double_up) - ramp(x, geom.double_down))
            }
            PresetKind::Avoidance => {
                let (a, b) = geom.avoid_span;
                let mid = 0.5 * (a + b);
                geom.avoid_peak * (ramp(x, (a, mid)) - ramp(x, (mid, b)))
            }
        }
    };
    let n = (geom.length / geom.waypoint_spacing).ceil() as usize;
    let mut pts = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = geom.length * i as f64 / n as f64;
        pts.push(Waypoint { x, y: y_of_x(x) });
    }
    Ok(pts)
}

/// Piecewise-linear densification at intervals no larger than `spacing`.
pub fn densify(points: &[Waypoint], spacing: f64) -> Result<Vec<Waypoint>> {
    assert!(spacing > 0.0, "spacing must be positive");
    if points.len() < 2 {
        return Err(Error::TooFewPoints { need: 2, got: points.len() });
    }
    let mut out = vec![points[0]];
    for pair in points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let dist = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
        let n = (dist / spacing).ceil().max(1.0) as usize;
        for k in 1..=n {
            let t = k as f64 / n as f64;
            if k == n {
                out.push(b); // keep endpoints exact
            } else {
                out.push(Waypoint {
                    x: a.x + t * (b.x - a.x),
                    y: a.y + t * (b.y - a.y),
                });
            }
        }
    }
    Ok(out)
}

/// Splits dense waypoints into `n_segments` contiguous runs sharing boundary
/// points, balanced in count.
pub fn segment_points(
    dense: &[Waypoint],
    n_segments: usize,
    degree: usize,
) -> Result<Vec<Vec<Waypoint>>> {
    assert!(n_segments >= 1);
    let p = dense.len();
    if p < 2 {
        return Err(Error::TooFewPoints { need: 2, got: p });
    }
    let mut runs = Vec::with_capacity(n_segments);
    for i in 0..n_segments {
        let lo = ((p - 1) * i + n_segments / 2) / n_segments;
        let hi = ((p - 1) * (i + 1) + n_segments / 2) / n_segments;
        let run: Vec<Waypoint> = dense[lo..=hi].to_vec();
        if run.len() < degree + 1 {
            return Err(Error::TooFewPointsPerSegment {
                segment: i,
                got: run.len(),
                need: degree + 1,
                degree,
            });
        }
        runs.push(run);
    }
    Ok(runs)
}

/// Normalized chord-length parameters of a run plus its total chord length.
fn chord_lambdas(run: &[Waypoint]) -> (Vec<f64>, f64) {
    let mut cum = vec![0.0];
    for pair in run.windows(2) {
        let d = ((pair[1].x - pair[0].x).powi(2) + (pair[1].y - pair[0].y).powi(2)).sqrt();
        cum.push(cum.last().unwrap() + d);
    }
    let total = *cum.last().unwrap();
    if total <= 0.0 {
        return (vec![0.0; run.len()], 0.0);
    }
    (cum.iter().map(|&c| c / total).collect(), total)
}

/// Row of basis values for derivative order `der` at lambda, descending powers.
fn basis_row(degree: usize, der: usize, lambda: f64) -> Vec<f64> {
    let n = degree + 1;
    let mut row = vec![0.0; n];
    for (idx, slot) in row.iter_mut().enumerate() {
        let pow = degree - idx; // power of this coefficient
        if pow < der {
            continue;
        }
        let mut coef = 1.0;
        for k in 0..der {
            coef *= (pow - k) as f64;
        }
        *slot = coef * lambda.powi((pow - der) as i32);
    }
    row
}

/// Fits one coordinate over all runs with C0/C1/C2 joint constraints and
/// exact interpolation of the global endpoints. KKT equality-constrained LSQ.
fn fit_coordinate(
    runs: &[Vec<Waypoint>],
    lambdas: &[Vec<f64>],
    chords: &[f64],
    degree: usize,
    pick: impl Fn(&Waypoint) -> f64,
) -> Result<Vec<Vec<f64>>> {
    let nseg = runs.len();
    let ncoef = degree + 1;
    let nun = nseg * ncoef;

    let rows: usize = runs.iter().map(|r| r.len()).sum();
    let mut a = DMatrix::<f64>::zeros(rows, nun);
    let mut w = DVector::<f64>::zeros(rows);
    let mut r0 = 0;
    for (i, run) in runs.iter().enumerate() {
        for (j, wp) in run.iter().enumerate() {
            let row = basis_row(degree, 0, lambdas[i][j]);
            for (k, &v) in row.iter().enumerate() {
                a[(r0 + j, i * ncoef + k)] = v;
            }
            w[r0 + j] = pick(wp);
        }
        r0 += run.len();
    }

    // constraints: joints (3 per interior boundary) + 2 endpoint interpolations
    let ncon = 3 * (nseg - 1) + 2;
    let mut e = DMatrix::<f64>::zeros(ncon, nun);
    let mut f = DVector::<f64>::zeros(ncon);
    let mut c0 = 0;
    for i in 0..nseg - 1 {
        for der in 0..=2u32 {
            // lambda-derivatives live on per-run scales; continuity holds in
            // chord units, so each side is divided by its chord length^der
            let sl = chords[i].max(1e-12).powi(der as i32);
            let sr = chords[i + 1].max(1e-12).powi(der as i32);
            let left = basis_row(degree, der as usize, 1.0);
            let right = basis_row(degree, der as usize, 0.0);
            for (k, &v) in left.iter().enumerate() {
                e[(c0, i * ncoef + k)] = v / sl;
            }
            for (k, &v) in right.iter().enumerate() {
                e[(c0, (i + 1) * ncoef + k)] -= v / sr;
            }
            c0 += 1;
        }
    }
    for (k, &v) in basis_row(degree, 0, 0.0).iter().enumerate() {
        e[(c0, k)] = v;
    }
    f[c0] = pick(&runs[0][0]);
    c0 += 1;
    for (k, &v) in basis_row(degree, 0, 1.0).iter().enumerate() {
        e[(c0, (nseg - 1) * ncoef + k)] = v;
    }
    f[c0] = pick(runs[nseg - 1].last().unwrap());

    // KKT system [2A'A E'; E 0] [c; mu] = [2A'w; f]
    let dim = nun + ncon;
    let mut kkt = DMatrix::<f64>::zeros(dim, dim);
    let ata = 2.0 * a.transpose() * &a;
    kkt.view_mut((0, 0), (nun, nun)).copy_from(&ata);
    kkt.view_mut((0, nun), (nun, ncon)).copy_from(&e.transpose());
    kkt.view_mut((nun, 0), (ncon, nun)).copy_from(&e);
    let mut rhs = DVector::<f64>::zeros(dim);
    rhs.rows_mut(0, nun).copy_from(&(2.0 * a.transpose() * &w));
    rhs.rows_mut(nun, ncon).copy_from(&f);

    let lu = kkt.clone().lu();
    let mut sol = lu.solve(&rhs).ok_or(Error::SingularFit)?;
    // the monomial KKT system is poorly conditioned; refine the solution
    for _ in 0..3 {
        let resid = &rhs - &kkt * &sol;
        if let Some(d) = lu.solve(&resid) {
            sol += d;
        }
    }
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularFit);
    }
    Ok((0..nseg)
        .map(|i| sol.rows(i * ncoef, ncoef).iter().copied().collect())
        .collect())
}

/// Constrained least-squares polynomial fit of the waypoint runs.
/// Joints are continuous in value and first and second lambda-derivative;
/// the first and last waypoints are interpolated exactly.
pub fn fit_path(runs: &[Vec<Waypoint>], degree: usize) -> Result<ReferencePath> {
    assert!(degree >= 3, "degree must be at least 3");
    assert!(!runs.is_empty());
    for (i, run) in runs.iter().enumerate() {
        if run.len() < degree + 1 {
            return Err(Error::TooFewPointsPerSegment {
                segment: i,
                got: run.len(),
                need: degree + 1,
                degree,
            });
        }
    }
    let mut lambdas = Vec::with_capacity(runs.len());
    let mut chords = Vec::with_capacity(runs.len());
    for run in runs {
        let (l, c) = chord_lambdas(run);
        lambdas.push(l);
        chords.push(c);
    }
    let cx = fit_coordinate(runs, &lambdas, &chords, degree, |w| w.x)?;
    let cy = fit_coordinate(runs, &lambdas, &chords, degree, |w| w.y)?;
    let segments: Vec<PathSegment> = cx
        .into_iter()
        .zip(cy)
        .map(|(cx, cy)| PathSegment { cx, cy })
        .collect();
    Ok(ReferencePath {
        segments,
        arclen: Vec::new(),
        total_length: 0.0,
    })
}

/// Builds the arc-length table by composite trapezoid integration of
/// |dp/dlambda|, with nodes no farther apart than `ds` along the path.
pub fn build_arclength_table(mut path: ReferencePath, ds: f64) -> ReferencePath {
    assert!(ds > 0.0);
    let mut nodes = Vec::new();
    let mut s = 0.0;
    for (i, seg) in path.segments.iter().enumerate() {
        // coarse length estimate to choose the node count
        let mut est = 0.0;
        let coarse = 64;
        for k in 0..coarse {
            let l0 = k as f64 / coarse as f64;
            let l1 = (k + 1) as f64 / coarse as f64;
            est += 0.5 * (seg.speed(l0) + seg.speed(l1)) / coarse as f64;
        }
        let n = ((2.0 * est / ds).ceil() as usize).max(2);
        if i == 0 {
            nodes.push(ArcNode { s, segment: 0, lambda: 0.0 });
        } else {
            nodes.push(ArcNode { s, segment: i, lambda: 0.0 });
        }
        for k in 0..n {
            let l0 = k as f64 / n as f64;
            let l1 = (k + 1) as f64 / n as f64;
            s += 0.5 * (seg.speed(l0) + seg.speed(l1)) * (l1 - l0);
            nodes.push(ArcNode { s, segment: i, lambda: l1 });
        }
    }
    path.total_length = s;
    path.arclen = nodes;
    path
}

/// Wraps an angle into (-pi, pi].
pub fn wrap_angle(mut a: f64) -> f64 {
    use std::f64::consts::PI;
    while a > PI {
        a -= 2.0 * PI;
    }
    while a <= -PI {
        a += 2.0 * PI;
    }
    a
}

/// Locates an arc-length station via the table and evaluates the pose.
pub fn sample_path(path: &ReferencePath, s: f64) -> Result<PoseSample> {
    if path.arclen.is_empty() || s < -1e-9 || s > path.total_length + 1e-9 {
        return Err(Error::OutOfRange { s, total: path.total_length });
    }
    let s = s.clamp(0.0, path.total_length);
    // binary search for the bracketing nodes
    let nodes = &path.arclen;
    let mut lo = 0usize;
    let mut hi = nodes.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if nodes[mid].s <= s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // keep the interpolation within a single segment
    let (n0, n1) = if nodes[lo].segment == nodes[hi].segment {
        (nodes[lo], nodes[hi])
    } else if s <= nodes[lo].s + 1e-15 {
        (nodes[lo], nodes[lo])
    } else {
        (nodes[hi], nodes[hi])
    };
    let lambda = if n1.s > n0.s {
        n0.lambda + (n1.lambda - n0.lambda) * (s - n0.s) / (n1.s - n0.s)
    } else {
        n0.lambda
    };
    let seg = &path.segments[n0.segment];
    let (x, y) = seg.position(lambda);
    let (dx, dy) = seg.tangent(lambda);
    Ok(PoseSample {
        x,
        y,
        heading: wrap_angle(dy.atan2(dx)),
        rho: curvature_at(seg, lambda)?,
    })
}

/// Full pipeline: preset waypoints -> densify -> segment -> fit -> arc table.
pub fn build_preset_path(
    kind: PresetKind,
    geom: &PresetGeometry,
    dense_spacing: f64,
    n_segments: usize,
    degree: usize,
    ds: f64,
) -> Result<ReferencePath> {
    let coarse = preset_waypoints(kind, geom)?;
    let dense = densify(&coarse, dense_spacing)?;
    let runs = segment_points(&dense, n_segments, degree)?;
    let path = fit_path(&runs, degree)?;
    Ok(build_arclength_table(path, ds))
}

/// Peak absolute curvature over the arc-length table nodes.
pub fn peak_curvature(path: &ReferencePath) -> f64 {
    path.arclen
        .iter()
        .filter_map(|n| curvature_at(&path.segments[n.segment], n.lambda).ok())
        .fold(0.0f64, |acc, k| acc.max(k.abs()))
}
