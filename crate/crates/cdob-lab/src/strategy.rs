//! Tracking-controller strategies behind a common trait, registered by name
//! and selected at runtime: plain PID, PID behind the standard CDOB, and PID
//! behind the modified CDOB with curvature restoration.

use crate::cdob::{build_cdob, Cdob, CdobMode, QFilter};
use crate::controller::{pid_step, PidGains, PidState};
use crate::signals::RationalTf;
use crate::{Error, Result};

/// Everything a strategy needs to assemble itself for one scenario.
#[derive(Debug, Clone)]
pub struct StrategyContext {
    /// Nominal steering-to-error plant.
    pub gn: RationalTf,
    /// Curvature-to-error channel.
    pub grho: RationalTf,
    pub q: QFilter,
    pub gains: PidGains,
    pub dt: f64,
    /// Steering saturation, rad; commands are clipped to +/- this value.
    pub saturation: f64,
    /// Derivative filter time constant, s.
    pub t_f: f64,
}

/// One closed-loop steering law. `control` is called once per simulation
/// step, in time order, and returns the saturated steering command.
pub trait TrackingStrategy {
    fn name(&self) -> &'static str;
    /// Computes the steering command from the measured tracking error and
    /// the reference curvature at the current station.
    fn control(&mut self, e_y_meas: f64, rho_ref: f64) -> f64;
    /// The feedback signal the PID actually saw on the last step.
    fn compensated_feedback(&self) -> f64;
}

struct PidOnly {
    pid: PidState,
    gains: PidGains,
    saturation: f64,
    last_feedback: f64,
}

impl TrackingStrategy for PidOnly {
    fn name(&self) -> &'static str {
        "pid"
    }

    fn control(&mut self, e_y_meas: f64, _rho_ref: f64) -> f64 {
        self.last_feedback = e_y_meas;
        let u = pid_step(&mut self.pid, &self.gains, -e_y_meas);
        u.clamp(-self.saturation, self.saturation)
    }

    fn compensated_feedback(&self) -> f64 {
        self.last_feedback
    }
}

struct CdobPid {
    name: &'static str,
    cdob: Cdob,
    pid: PidState,
    gains: PidGains,
    saturation: f64,
    last_command: f64,
    last_feedback: f64,
}

impl TrackingStrategy for CdobPid {
    fn name(&self) -> &'static str {
        self.name
    }

    fn control(&mut self, e_y_meas: f64, rho_ref: f64) -> f64 {
        let y_comp = self.cdob.step(self.last_command, e_y_meas, rho_ref);
        self.last_feedback = y_comp;
        let u = pid_step(&mut self.pid, &self.gains, -y_comp);
        let u = u.clamp(-self.saturation, self.saturation);
        self.last_command = u;
        u
    }

    fn compensated_feedback(&self) -> f64 {
        self.last_feedback
    }
}

type StrategyBuilder = fn(&StrategyContext) -> Result<Box<dyn TrackingStrategy>>;

fn build_pid(ctx: &StrategyContext) -> Result<Box<dyn TrackingStrategy>> {
    Ok(Box::new(PidOnly {
        pid: PidState::new(ctx.dt, ctx.t_f),
        gains: ctx.gains,
        saturation: ctx.saturation,
        last_feedback: 0.0,
    }))
}

fn build_cdob_pid(ctx: &StrategyContext, mode: CdobMode) -> Result<Box<dyn TrackingStrategy>> {
    let cdob = build_cdob(&ctx.gn, &ctx.grho, &ctx.q, ctx.dt, mode)?;
    Ok(Box::new(CdobPid {
        name: match mode {
            CdobMode::Standard => "pid-cdob-standard",
            CdobMode::Modified => "pid-cdob-modified",
        },
        cdob,
        pid: PidState::new(ctx.dt, ctx.t_f),
        gains: ctx.gains,
        saturation: ctx.saturation,
        last_command: 0.0,
        last_feedback: 0.0,
    }))
}

/// Registered strategy names and their builders, in presentation order.
pub fn registry() -> &'static [(&'static str, StrategyBuilder)] {
    &[
        ("pid", build_pid),
        ("pid-cdob-standard", |ctx| build_cdob_pid(ctx, CdobMode::Standard)),
        ("pid-cdob-modified", |ctx| build_cdob_pid(ctx, CdobMode::Modified)),
    ]
}

/// Looks a strategy up by name and builds it.
pub fn build_strategy(name: &str, ctx: &StrategyContext) -> Result<Box<dyn TrackingStrategy>> {
    registry()
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, b)| b(ctx))
        .unwrap_or_else(|| Err(Error::UnknownStrategy(name.to_string())))
}

pub fn strategy_names() -> Vec<&'static str> {
    registry().iter().map(|(n, _)| *n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdob::{design_q, QFilterSpec};
    use crate::signals::tf_from_state_space;
    use crate::vehicle::{build_curvature_channel, build_tracking_model, VehicleParams, INPUT_STEER};

    fn ctx() -> StrategyContext {
        let m = build_tracking_model(&VehicleParams::default(), 10.0, 5.0).unwrap();
        StrategyContext {
            gn: tf_from_state_space(&m, INPUT_STEER, 0),
            grho: tf_from_state_space(&build_curvature_channel(10.0, 5.0).unwrap(), 0, 0),
            q: design_q(&QFilterSpec::default()),
            gains: PidGains { kp: 0.2, ki: 0.05, kd: 0.05 },
            dt: 1e-3,
            saturation: 0.6,
            t_f: 5e-3,
        }
    }

    #[test]
    fn registry_names() {
        assert_eq!(
            strategy_names(),
            vec!["pid", "pid-cdob-standard", "pid-cdob-modified"]
        );
    }

    #[test]
    fn build_each_strategy() {
        let ctx = ctx();
        for name in strategy_names() {
            let s = build_strategy(name, &ctx).unwrap();
            assert_eq!(s.name(), name);
        }
        assert!(matches!(
            build_strategy("smith-predictor", &ctx),
            Err(Error::UnknownStrategy(_))
        ));
    }

    #[test]
    fn commands_respect_saturation() {
        let ctx = ctx();
        for name in strategy_names() {
            let mut s = build_strategy(name, &ctx).unwrap();
            for i in 0..200 {
                let e = 100.0 * ((i as f64) * 0.3).sin();
                let u = s.control(e, 0.0);
                assert!(u.abs() <= ctx.saturation);
            }
        }
    }
}
