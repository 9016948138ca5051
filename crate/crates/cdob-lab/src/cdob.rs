//! Communication disturbance observer: Butterworth Q-filter design and the
//! delay compensation loop that turns the delayed measurement back into a
//! delay-free-equivalent feedback signal. The modified variant restores the
//! known path-curvature disturbance that the standard loop cancels away.

use crate::signals::{
    discretize_bilinear, proper_inverse_product, DiscreteFilter, RationalTf,
};
use crate::{Error, Result};

/// Butterworth design targets for the low-pass filter Q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QFilterSpec {
    /// Passband frequency, rad/s.
    pub wp: f64,
    /// Stopband frequency, rad/s.
    pub ws: f64,
    /// Maximum passband attenuation, dB.
    pub ap: f64,
    /// Minimum stopband attenuation, dB.
    pub as_: f64,
}

impl Default for QFilterSpec {
    fn default() -> Self {
        Self {
            wp: 1000.0,
            ws: 10_000.0,
            ap: 3.0,
            as_: 30.0,
        }
    }
}

impl QFilterSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.wp && self.wp < self.ws && self.ap > 0.0 && self.as_ > self.ap) {
            return Err(Error::InvalidGeometry(
                "Q spec requires 0 < wp < ws and as > ap > 0".into(),
            ));
        }
        Ok(())
    }
}

/// Designed unity-DC-gain low-pass filter.
#[derive(Debug, Clone)]
pub struct QFilter {
    /// Unrounded order from the attenuation formula.
    pub n_raw: f64,
    /// Integer order actually realized.
    pub order: usize,
    /// Cutoff, rad/s, evaluated with the unrounded order.
    pub omega_c: f64,
    pub tf: RationalTf,
}

/// Butterworth order and cutoff from the attenuation targets. The cutoff is
/// evaluated with the unrounded order; the realized filter uses the rounded-up
/// integer order (second order at minimum, with 1.4142 as the damping
/// coefficient).
pub fn design_q(spec: &QFilterSpec) -> QFilter {
    let n_raw = ((10f64.powf(spec.as_ / 10.0) - 1.0) / (10f64.powf(spec.ap / 10.0) - 1.0))
        .log10()
        / (2.0 * (spec.ws / spec.wp).log10());
    let order = n_raw.ceil().max(1.0) as usize;
    let omega_c = spec.wp / (10f64.powf(spec.ap / 10.0) - 1.0).powf(1.0 / (2.0 * n_raw));

    let tf = if order == 2 {
        let wc2 = omega_c * omega_c;
        RationalTf::new(vec![wc2], vec![1.0, 1.4142 * omega_c, wc2])
    } else {
        butterworth_tf(order, omega_c)
    };
    QFilter {
        n_raw,
        order,
        omega_c,
        tf,
    }
}

/// Standard Butterworth denominator of arbitrary order at cutoff wc.
fn butterworth_tf(order: usize, wc: f64) -> RationalTf {
    use crate::signals::poly_mul;
    let mut den = vec![1.0];
    let n = order;
    let mut k = 1;
    while k + 1 < n + 1 {
        // conjugate pole pair at angle theta from the negative real axis
        let theta = std::f64::consts::PI * (2.0 * k as f64 + n as f64 - 1.0) / (2.0 * n as f64);
        let re = wc * theta.cos();
        den = poly_mul(&den, &[1.0, -2.0 * re, wc * wc]);
        k += 2;
    }
    if n % 2 == 1 {
        den = poly_mul(&den, &[1.0, wc]);
    }
    let dc = *den.last().unwrap();
    RationalTf::new(vec![dc], den)
}

/// Observer variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdobMode {
    /// Plain delay estimation/compensation; blind to curvature.
    Standard,
    /// Adds the known-curvature channel back to the compensated feedback.
    Modified,
}

/// Stateful compensator: one instance per simulation loop.
#[derive(Debug, Clone)]
pub struct Cdob {
    pub mode: CdobMode,
    f_q: DiscreteFilter,
    f_qginv: DiscreteFilter,
    f_gn: DiscreteFilter,
    f_grho: Option<DiscreteFilter>,
    pub dt: f64,
}

/// Discretizes Q, Q*Gn^-1, Gn and (for the modified variant) the curvature
/// channel, all at the same step and with zero initial state.
pub fn build_cdob(
    gn: &RationalTf,
    grho: &RationalTf,
    q: &QFilter,
    dt: f64,
    mode: CdobMode,
) -> Result<Cdob> {
    let qginv = proper_inverse_product(&q.tf, gn)?;
    let f_q = discretize_bilinear(&q.tf, dt)?;
    let f_qginv = discretize_bilinear(&qginv, dt)?;
    let f_gn = discretize_bilinear(gn, dt)?;
    let f_grho = match mode {
        CdobMode::Modified => Some(discretize_bilinear(grho, dt)?),
        CdobMode::Standard => None,
    };
    Ok(Cdob {
        mode,
        f_q,
        f_qginv,
        f_gn,
        f_grho,
        dt,
    })
}

impl Cdob {
    /// One compensation update. `u_cmd` is the commanded steering of the
    /// previous step, `y_meas` the delay-affected measurement. Returns the
    /// compensated feedback signal.
    pub fn step(&mut self, u_cmd: f64, y_meas: f64, rho_ref: f64) -> f64 {
        let d_hat = self.f_q.step(u_cmd) - self.f_qginv.step(y_meas);
        let mut y_comp = y_meas + self.f_gn.step(d_hat);
        if let Some(f) = self.f_grho.as_mut() {
            y_comp += f.step(rho_ref);
        }
        y_comp
    }

    /// Output of the curvature channel alone, for tests and analysis. Drives
    /// the same internal filter as `step`; call one or the other per sample.
    pub fn curvature_disturbance(&mut self, rho_ref: f64) -> Result<f64> {
        match self.f_grho.as_mut() {
            Some(f) => Ok(f.step(rho_ref)),
            None => Err(Error::WrongMode),
        }
    }

    pub fn has_curvature_channel(&self) -> bool {
        self.f_grho.is_some()
    }

    pub fn reset(&mut self) {
        self.f_q.reset();
        self.f_qginv.reset();
        self.f_gn.reset();
        if let Some(f) = self.f_grho.as_mut() {
            f.reset();
        }
    }
}
