//! PID control law, closed-loop pole computation, D-stability membership and
//! admissible-gain-region search in parameter space, plus speed scheduling of
//! the selected gains.

use crate::signals::{poly_add, poly_mul, poly_roots, RationalTf};
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

/// PID gains mapping tracking error (m) to steering (rad).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PidGains {
    pub kp: f64,
    pub ki: f64,
    pub kd: f64,
}

/// Loop-confined state of the digital PID with filtered derivative.
#[derive(Debug, Clone)]
pub struct PidState {
    integral: f64,
    prev_error: f64,
    d_filt: f64,
    pub dt: f64,
    /// Derivative filter time constant, s.
    pub t_f: f64,
}

impl PidState {
    pub fn new(dt: f64, t_f: f64) -> Self {
        assert!(dt > 0.0 && t_f > 0.0);
        Self {
            integral: 0.0,
            prev_error: 0.0,
            d_filt: 0.0,
            dt,
            t_f,
        }
    }

    pub fn reset(&mut self) {
        self.integral = 0.0;
        self.prev_error = 0.0;
        self.d_filt = 0.0;
    }
}

/// One PID update: trapezoid integral, first-order-filtered backward
/// difference for the derivative.
pub fn pid_step(st: &mut PidState, g: &PidGains, e: f64) -> f64 {
    st.integral += 0.5 * st.dt * (e + st.prev_error);
    let raw_diff = (e - st.prev_error) / st.dt;
    let alpha = st.t_f / (st.t_f + st.dt);
    st.d_filt = alpha * st.d_filt + (1.0 - alpha) * raw_diff;
    st.prev_error = e;
    g.kp * e + g.ki * st.integral + g.kd * st.d_filt
}

/// D-stability region: decay rate, damping cone and frequency cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DStabilitySpec {
    /// Minimum decay rate, 1/s: poles must satisfy Re < -sigma.
    pub sigma: f64,
    /// Minimum damping ratio.
    pub zeta_min: f64,
    /// Maximum pole magnitude, rad/s.
    pub r_max: f64,
}

impl Default for DStabilitySpec {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            zeta_min: 0.7071,
            r_max: 25.0,
        }
    }
}

/// Membership test for one closed-loop pole.
pub fn in_d_region(p: Complex64, spec: &DStabilitySpec) -> bool {
    let mag = p.norm();
    if !(p.re < -spec.sigma) || mag > spec.r_max {
        return false;
    }
    mag == 0.0 || -p.re / mag >= spec.zeta_min
}

/// Closed-loop poles with ideal PID (design-time model): roots of
/// s*den(s) + (kd s^2 + kp s + ki) num(s).
pub fn closed_loop_poles(gn: &RationalTf, g: &PidGains) -> Vec<Complex64> {
    let char_poly = poly_add(
        &poly_mul(&[1.0, 0.0], &gn.den),
        &poly_mul(&[g.kd, g.kp, g.ki], &gn.num),
    );
    poly_roots(&char_poly)
}

fn all_poles_admissible(gn: &RationalTf, g: &PidGains, spec: &DStabilitySpec) -> bool {
    closed_loop_poles(gn, g).iter().all(|&p| in_d_region(p, spec))
}

/// Uniform gain grid axes.
#[derive(Debug, Clone, PartialEq)]
pub struct GainGrid {
    pub kp: Vec<f64>,
    pub ki: Vec<f64>,
    pub kd: Vec<f64>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1);
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

impl Default for GainGrid {
    /// 81 x 41 x 41 grid over kp in [0, 1], ki in [0, 0.5], kd in [0, 0.5].
    fn default() -> Self {
        Self {
            kp: linspace(0.0, 1.0, 81),
            ki: linspace(0.0, 0.5, 41),
            kd: linspace(0.0, 0.5, 41),
        }
    }
}

/// Boolean admissibility mask over a gain grid, kp-major flattening.
#[derive(Debug, Clone)]
pub struct AdmissibleRegion {
    pub grid: GainGrid,
    pub mask: Vec<bool>,
    /// Speed at which the region was computed, m/s.
    pub v: f64,
}

impl AdmissibleRegion {
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.grid.ki.len() + j) * self.grid.kd.len() + k
    }

    pub fn gains_at(&self, flat: usize) -> PidGains {
        let nk = self.grid.kd.len();
        let nj = self.grid.ki.len();
        let k = flat % nk;
        let j = (flat / nk) % nj;
        let i = flat / (nk * nj);
        PidGains {
            kp: self.grid.kp[i],
            ki: self.grid.ki[j],
            kd: self.grid.kd[k],
        }
    }

    pub fn admissible_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }
}

/// Sweeps the grid, marking gains whose closed-loop poles all lie in the
/// D-region. Grid cells are independent; the mask is assembled in grid order.
pub fn compute_admissible_region(
    gn: &RationalTf,
    spec: &DStabilitySpec,
    grid: &GainGrid,
    v: f64,
) -> AdmissibleRegion {
    assert!(!grid.kp.is_empty() && !grid.ki.is_empty() && !grid.kd.is_empty());
    let total = grid.kp.len() * grid.ki.len() * grid.kd.len();
    let nk = grid.kd.len();
    let nj = grid.ki.len();
    let mask: Vec<bool> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let k = flat % nk;
            let j = (flat / nk) % nj;
            let i = flat / (nk * nj);
            let g = PidGains {
                kp: grid.kp[i],
                ki: grid.ki[j],
                kd: grid.kd[k],
            };
            all_poles_admissible(gn, &g, spec)
        })
        .collect();
    AdmissibleRegion {
        grid: grid.clone(),
        mask,
        v,
    }
}

/// Smallest admissible gains: minimal scale-normalized Euclidean norm, ties
/// broken lexicographically by (kp, ki, kd).
pub fn select_gains(region: &AdmissibleRegion) -> Result<PidGains> {
    let scale = |axis: &[f64]| -> f64 {
        let m = axis.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if m > 0.0 {
            m
        } else {
            1.0
        }
    };
    let (sp, si, sd) = (
        scale(&region.grid.kp),
        scale(&region.grid.ki),
        scale(&region.grid.kd),
    );
    let mut best: Option<(f64, PidGains)> = None;
    for (flat, &adm) in region.mask.iter().enumerate() {
        if !adm {
            continue;
        }
        let g = region.gains_at(flat);
        let norm = (g.kp / sp).powi(2) + (g.ki / si).powi(2) + (g.kd / sd).powi(2);
        let better = match &best {
            None => true,
            Some((bn, bg)) => {
                norm < *bn
                    || (norm == *bn
                        && (g.kp, g.ki, g.kd) < (bg.kp, bg.ki, bg.kd))
            }
        };
        if better {
            best = Some((norm, g));
        }
    }
    best.map(|(_, g)| g).ok_or(Error::EmptyRegion)
}

/// Speed-indexed gain table with piecewise-linear interpolation.
#[derive(Debug, Clone)]
pub struct GainSchedule {
    /// Strictly increasing speed knots, m/s.
    pub speeds: Vec<f64>,
    pub gains: Vec<PidGains>,
}

impl GainSchedule {
    pub fn new(speeds: Vec<f64>, gains: Vec<PidGains>) -> Self {
        assert!(!speeds.is_empty() && speeds.len() == gains.len());
        assert!(speeds.windows(2).all(|w| w[1] > w[0]));
        Self { speeds, gains }
    }
}

/// Componentwise linear interpolation, clamped at the end knots.
pub fn lookup_gains(sched: &GainSchedule, v: f64) -> PidGains {
    let s = &sched.speeds;
    if v <= s[0] {
        return sched.gains[0];
    }
    if v >= *s.last().unwrap() {
        return *sched.gains.last().unwrap();
    }
    let i = s.iter().position(|&k| k > v).unwrap() - 1;
    let t = (v - s[i]) / (s[i + 1] - s[i]);
    let (a, b) = (sched.gains[i], sched.gains[i + 1]);
    PidGains {
        kp: a.kp + t * (b.kp - a.kp),
        ki: a.ki + t * (b.ki - a.ki),
        kd: a.kd + t * (b.kd - a.kd),
    }
}
