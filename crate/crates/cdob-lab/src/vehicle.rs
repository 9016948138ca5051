//! Physical parameters and the continuous-time linear path-tracking model:
//! a 2-DOF single-track lateral model augmented with heading error and
//! preview-point tracking error, plus speed/preview scheduling.

use crate::signals::LtiModel;
use crate::{Error, Result};
use nalgebra::DMatrix;

/// Input column indices of the tracking model.
pub const INPUT_STEER: usize = 0;
pub const INPUT_CURVATURE: usize = 1;
pub const INPUT_YAW_MOMENT: usize = 2;

/// Physical constants of the single-track model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleParams {
    /// Front cornering stiffness, N/rad.
    pub cf: f64,
    /// Rear cornering stiffness, N/rad.
    pub cr: f64,
    /// CG to front axle, m.
    pub lf: f64,
    /// CG to rear axle, m.
    pub lr: f64,
    /// Mass, kg.
    pub mass: f64,
    /// Yaw inertia, kg m^2.
    pub iz: f64,
}

impl Default for VehicleParams {
    fn default() -> Self {
        Self {
            cf: 195_000.0,
            cr: 50_000.0,
            lf: 1.3008,
            lr: 1.5453,
            mass: 1997.6,
            iz: 3728.0,
        }
    }
}

impl VehicleParams {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.cf, self.cr, self.lf, self.lr, self.mass, self.iz]
            .iter()
            .all(|&v| v > 0.0 && v.is_finite());
        if !ok {
            return Err(Error::InvalidGeometry(
                "vehicle parameters must be strictly positive".into(),
            ));
        }
        Ok(())
    }
}

/// State of the tracking model: side slip, yaw rate, heading error, lateral error.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrackingState {
    pub beta: f64,
    pub r: f64,
    pub dpsi: f64,
    pub ey: f64,
}

impl TrackingState {
    pub fn is_finite(&self) -> bool {
        self.beta.is_finite() && self.r.is_finite() && self.dpsi.is_finite() && self.ey.is_finite()
    }
}

/// Preview-distance and speed scheduling configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchedulingConfig {
    /// Preview scheduling constant, s: ls = max(ls_min, K*V).
    pub k: f64,
    /// Minimum preview distance, m.
    pub ls_min: f64,
    /// Lateral acceleration cap, m/s^2.
    pub a_lat_max: f64,
    /// Speed cap, m/s.
    pub v_max: f64,
}

impl Default for SchedulingConfig {
    fn default() -> Self {
        Self {
            k: 0.5,
            ls_min: 1.0,
            a_lat_max: 4.0,
            v_max: 20.0,
        }
    }
}

/// Preview distance as a linear function of speed, clamped from below.
pub fn preview_distance(v: f64, cfg: &SchedulingConfig) -> f64 {
    (cfg.k * v).max(cfg.ls_min)
}

/// Speed from peak path curvature so lateral acceleration stays capped.
pub fn schedule_speed(rho_peak: f64, cfg: &SchedulingConfig) -> f64 {
    if rho_peak > 0.0 {
        (cfg.a_lat_max / rho_peak).sqrt().min(cfg.v_max)
    } else {
        cfg.v_max
    }
}

/// Four-state continuous model with state (beta, r, dpsi, ey), inputs
/// (steer, curvature, yaw moment) and output ey. Front-wheel steer only.
pub fn build_tracking_model(params: &VehicleParams, v: f64, ls: f64) -> Result<LtiModel> {
    if v <= 0.0 {
        return Err(Error::NonPositiveSpeed(v));
    }
    params.validate()?;
    assert!(ls > 0.0, "preview distance must be positive");
    let VehicleParams { cf, cr, lf, lr, mass, iz } = *params;

    let a = DMatrix::from_row_slice(4, 4, &[
        -(cf + cr) / (mass * v), -1.0 + (cr * lr - cf * lf) / (mass * v * v), 0.0, 0.0,
        (cr * lr - cf * lf) / iz, -(cf * lf * lf + cr * lr * lr) / (iz * v), 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        v, ls, v, 0.0,
    ]);
    let b = DMatrix::from_row_slice(4, 3, &[
        cf / (mass * v), 0.0, 0.0,
        cf * lf / iz, 0.0, 1.0 / iz,
        0.0, -v, 0.0,
        0.0, -ls * v, 0.0,
    ]);
    let c = DMatrix::from_row_slice(1, 4, &[0.0, 0.0, 0.0, 1.0]);
    let d = DMatrix::zeros(1, 3);
    Ok(LtiModel::new(a, b, c, d))
}

/// Reduced curvature-to-ey channel. Side slip and yaw rate are not driven by
/// curvature, so the channel collapses to the (dpsi, ey) integrator chain.
pub fn build_curvature_channel(v: f64, ls: f64) -> Result<LtiModel> {
    if v <= 0.0 {
        return Err(Error::NonPositiveSpeed(v));
    }
    let a = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, v, 0.0]);
    let b = DMatrix::from_row_slice(2, 1, &[-v, -ls * v]);
    let c = DMatrix::from_row_slice(1, 2, &[0.0, 1.0]);
    let d = DMatrix::zeros(1, 1);
    Ok(LtiModel::new(a, b, c, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::tf_from_state_space;
    use num_complex::Complex64;

    #[test]
    fn a_matrix_entries() {
        let p = VehicleParams::default();
        let m = build_tracking_model(&p, 10.0, 5.0).unwrap();
        let expected = -245_000.0 / 19_976.0; // -(Cf+Cr)/(M*V)
        assert!((m.a[(0, 0)] - expected).abs() < 1e-9);
        assert!((m.a[(0, 0)] + 12.2647).abs() < 1e-3);
        // bottom row [V, ls, V, 0]
        assert_eq!(m.a[(3, 0)], 10.0);
        assert_eq!(m.a[(3, 1)], 5.0);
        assert_eq!(m.a[(3, 2)], 10.0);
        assert_eq!(m.a[(3, 3)], 0.0);
    }

    #[test]
    fn curvature_column() {
        let p = VehicleParams::default();
        let m = build_tracking_model(&p, 10.0, 5.0).unwrap();
        let col: Vec<f64> = m.b.column(INPUT_CURVATURE).iter().copied().collect();
        assert_eq!(col, vec![0.0, 0.0, -10.0, -50.0]);
    }

    #[test]
    fn zero_speed_rejected() {
        let p = VehicleParams::default();
        assert!(matches!(
            build_tracking_model(&p, 0.0, 5.0),
            Err(crate::Error::NonPositiveSpeed(_))
        ));
        assert!(build_tracking_model(&p, -1.0, 5.0).is_err());
    }

    #[test]
    fn preview_distance_examples() {
        let cfg = SchedulingConfig { k: 0.5, ls_min: 1.0, ..Default::default() };
        assert_eq!(preview_distance(10.0, &cfg), 5.0);
        assert_eq!(preview_distance(0.0, &cfg), 1.0);
        let cfg0 = SchedulingConfig { k: 0.0, ls_min: 1.0, ..Default::default() };
        assert_eq!(preview_distance(20.0, &cfg0), 1.0);
    }

    #[test]
    fn schedule_speed_examples() {
        let cfg = SchedulingConfig { a_lat_max: 4.0, v_max: 20.0, ..Default::default() };
        assert_eq!(schedule_speed(0.0, &cfg), 20.0);
        assert!((schedule_speed(0.04, &cfg) - 10.0).abs() < 1e-12);
        assert_eq!(schedule_speed(1e-6, &cfg), 20.0);
    }

    #[test]
    fn lateral_submodel_stability_switches_at_critical_speed() {
        // Cf*lf > Cr*lr here, so the open-loop lateral dynamics lose
        // stability above V_crit = sqrt(Cf*Cr*L^2 / (M*(Cf*lf - Cr*lr)))
        let p = VehicleParams::default();
        let l = p.lf + p.lr;
        let v_crit = (p.cf * p.cr * l * l / (p.mass * (p.cf * p.lf - p.cr * p.lr))).sqrt();
        assert!((v_crit - 14.97).abs() < 0.05, "v_crit = {v_crit}");
        for i in 0..=49 {
            let v = 1.0 + i as f64;
            let m = build_tracking_model(&p, v, 5.0).unwrap();
            let a2 = m.a.view((0, 0), (2, 2)).into_owned();
            let max_re = a2
                .complex_eigenvalues()
                .iter()
                .map(|ev| ev.re)
                .fold(f64::MIN, f64::max);
            if v < v_crit {
                assert!(max_re < 0.0, "unstable at V = {v} < V_crit, re = {max_re}");
            } else {
                assert!(max_re > 0.0, "stable at V = {v} > V_crit, re = {max_re}");
            }
        }
    }

    #[test]
    fn full_model_has_double_integrator_chain() {
        let p = VehicleParams::default();
        for &v in &[1.0, 10.0, 30.0] {
            let m = build_tracking_model(&p, v, 5.0).unwrap();
            // the double zero is defective, so computed eigenvalues split by
            // about sqrt(eps * norm); a loose absolute threshold is needed
            let zeros = m
                .a
                .complex_eigenvalues()
                .iter()
                .filter(|ev| ev.norm() < 1e-4)
                .count();
            assert_eq!(zeros, 2, "at V = {v}");
        }
    }

    #[test]
    fn construction_is_pure() {
        let p = VehicleParams::default();
        let m1 = build_tracking_model(&p, 12.3, 4.5).unwrap();
        let m2 = build_tracking_model(&p, 12.3, 4.5).unwrap();
        assert_eq!(m1.a, m2.a);
        assert_eq!(m1.b, m2.b);
    }

    #[test]
    fn reduced_curvature_channel_matches_full_model() {
        let p = VehicleParams::default();
        let (v, ls) = (10.0, 5.0);
        let full = build_tracking_model(&p, v, ls).unwrap();
        let red = build_curvature_channel(v, ls).unwrap();
        let tf = tf_from_state_space(&red, 0, 0);
        // compare frequency responses of the rho -> ey channel
        for &w in &[0.1, 1.0, 5.0, 20.0] {
            let s = Complex64::new(0.0, w);
            let n = full.order();
            let si_a = DMatrix::<Complex64>::identity(n, n).map(|x| x * s)
                - full.a.map(|x| Complex64::new(x, 0.0));
            let inv = si_a.try_inverse().unwrap();
            let b = full.b.column(INPUT_CURVATURE).map(|x| Complex64::new(x, 0.0));
            let c = full.c.row(0).map(|x| Complex64::new(x, 0.0));
            let h_full = (c * inv * b)[(0, 0)];
            let h_red = tf.eval(s);
            assert!((h_full - h_red).norm() / h_full.norm() < 1e-9);
        }
    }
}
