//! Galerkin integration of the family.
//!
//! States are real trigonometric polynomials of degree at most `N`. Every
//! right-hand side evaluation forms the products exactly and discards the
//! modes above `N`, which keeps the cancellation behind energy conservation
//! at `b = 2` intact. Time stepping is classical fixed-step RK4.

mod dd;
mod initial;

pub use initial::{random_band_limited, InitialData};

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex;

use twofloat::TwoFloat;

use crate::operators::{Domain, EquationParams};
use crate::real::Real;
use crate::spectral::{Scalar, TrigPoly};

pub const DEFAULT_BLOWUP_SLOPE: f64 = 1e6;
pub const DEFAULT_TAIL_RATIO: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlowError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("initial data is not real-valued")]
    NotReal,
    #[error("initial data has mean {mean}, zero-mean domain requires 0")]
    MeanViolation { mean: f64 },
    #[error("initial data has degree {degree} > resolution {resolution}")]
    DegreeTooHigh { degree: usize, resolution: usize },
    #[error("state became non-finite")]
    NonFinite,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub params: EquationParams,
    /// Highest retained mode `N`.
    pub resolution: usize,
    pub dt: f64,
    pub t_end: f64,
    pub domain: Domain,
    /// Stop with `Blowup` once `sup|u_x|` exceeds this.
    pub blowup_slope_threshold: f64,
    /// Stop with `Degenerate` once this fraction of `Σ|c_k|²` sits in `|k| > 2N/3`.
    pub tail_ratio_threshold: f64,
    /// Keep every `s`-th state; 0 keeps only the first and last.
    pub record_every: usize,
    pub precision: Precision,
}

impl SimConfig {
    pub fn new(params: EquationParams, resolution: usize, dt: f64, t_end: f64, domain: Domain) -> Self {
        SimConfig {
            params,
            resolution,
            dt,
            t_end,
            domain,
            blowup_slope_threshold: DEFAULT_BLOWUP_SLOPE,
            tail_ratio_threshold: DEFAULT_TAIL_RATIO,
            record_every: 1,
            precision: Precision::Double,
        }
    }

    pub fn validate(&self) -> Result<(), FlowError> {
        if self.resolution < 8 {
            return Err(FlowError::InvalidConfig("resolution must be at least 8"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(FlowError::InvalidConfig("dt must be positive"));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(FlowError::InvalidConfig("t_end must be positive"));
        }
        if !(self.blowup_slope_threshold > 0.0) || !(self.tail_ratio_threshold > 0.0) {
            return Err(FlowError::InvalidConfig("thresholds must be positive"));
        }
        if !self.params.a.to_f64().is_finite() || !self.params.b.to_f64().is_finite() {
            return Err(FlowError::InvalidConfig("parameters must be finite"));
        }
        Ok(())
    }

    /// Number of steps; the last one is shortened to land on `t_end`.
    pub fn steps(&self) -> usize {
        let n = libm::ceil(self.t_end / self.dt - 1e-9);
        (n as usize).max(1)
    }
}

/// Per-step diagnostic record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    pub t: f64,
    pub mean_u: f64,
    pub mean_m: f64,
    /// `⟨Au, u⟩ = Σ β_k |c_k|²`.
    pub energy: f64,
    /// `(E(t) − E(0)) / |E(0)|` formed in working precision (absolute when
    /// `E(0) = 0`).
    pub energy_change: f64,
    /// `sup|u_x|` sampled on `4N` points.
    pub sup_ux: f64,
    pub tail_ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegenerateReason {
    SpectralUnderResolved,
    NonFinite,
}

impl DegenerateReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DegenerateReason::SpectralUnderResolved => "spectral-under-resolved",
            DegenerateReason::NonFinite => "non-finite",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Termination {
    Completed,
    Blowup { t: f64 },
    Degenerate { t: f64, reason: DegenerateReason },
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::Completed => "completed",
            Termination::Blowup { .. } => "blowup",
            Termination::Degenerate { .. } => "degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub step: usize,
    pub t: f64,
    pub u: TrigPoly<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// One entry per step, including `t = 0`.
    pub times: Vec<f64>,
    pub diagnostics: Vec<Diagnostics>,
    pub states: Vec<Snapshot>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn final_state(&self) -> Option<&TrigPoly<f64>> {
        self.states.last().map(|s| &s.u)
    }
}

/// Working precision of [`Integrator`]. Implemented for `f64` and
/// double-double [`TwoFloat`].
pub trait FlowScalar: Scalar + Copy {
    /// `P_n[p q]`.
    fn product(p: &TrigPoly<Self>, q: &TrigPoly<Self>, n: usize) -> TrigPoly<Self> {
        p.multiply_truncated(q, n)
    }
}

impl FlowScalar for f64 {}

impl FlowScalar for TwoFloat {
    fn product(p: &TrigPoly<Self>, q: &TrigPoly<Self>, n: usize) -> TrigPoly<Self> {
        if p.is_real() && q.is_real() {
            dd::product_real(p, q, n)
        } else {
            p.multiply_truncated(q, n)
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    #[default]
    Double,
    /// Double-double arithmetic; several times slower, with a rounding floor
    /// near `1e-30` instead of `1e-16`.
    DoubleDouble,
}

impl Precision {
    pub fn as_str(self) -> &'static str {
        match self {
            Precision::Double => "double",
            Precision::DoubleDouble => "double-double",
        }
    }

    pub fn parse(s: &str) -> Option<Precision> {
        match s {
            "double" | "f64" => Some(Precision::Double),
            "double-double" | "dd" => Some(Precision::DoubleDouble),
            _ => None,
        }
    }
}

/// The Galerkin system at a fixed resolution, with `Λ_μ^a` tabulated.
#[derive(Clone, Debug)]
pub struct Integrator<T: FlowScalar = f64> {
    domain: Domain,
    n: usize,
    b: T,
    /// `β_|k|` for `|k| ≤ N`; `β_0` is unused on the zero-mean space.
    beta: Vec<T>,
    /// `cos` and `sin` of `2πj/(4N)`, for the slope estimate.
    twiddle: Vec<(f64, f64)>,
}

impl<T: FlowScalar> Integrator<T> {
    pub fn new(params: &EquationParams, domain: Domain, resolution: usize) -> Self {
        let a = &params.a;
        // Exact for integer a, a double otherwise; either way one fixed symbol.
        let beta = (0..=resolution)
            .map(|k| {
                let v = if k == 0 || a.is_zero() { Real::one() } else { Real::int(k as i64).pow(a) };
                T::from_real(&v).expect("floating fields accept every value")
            })
            .collect();
        let grid = 4 * resolution.max(1);
        let twiddle = (0..grid)
            .map(|j| {
                let (s, c) = libm::sincos(2.0 * PI * j as f64 / grid as f64);
                (c, s)
            })
            .collect();
        let b = T::from_real(&params.b).expect("floating fields accept every value");
        Integrator { domain, n: resolution, b, beta, twiddle }
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    fn scaled(&self, p: &TrigPoly<T>, inverse: bool) -> TrigPoly<T> {
        let zero_mean = self.domain == Domain::ZeroMean;
        p.map_modes(|k, c| {
            if k == 0 && zero_mean {
                return Complex::new(T::zero(), T::zero());
            }
            let beta = self.beta[k.unsigned_abs() as usize];
            if inverse {
                Complex::new(c.re / beta, c.im / beta)
            } else {
                Complex::new(c.re * beta, c.im * beta)
            }
        })
    }

    /// `m = Λ_μ^a u` (the mean is dropped on the zero-mean space).
    pub fn momentum(&self, u: &TrigPoly<T>) -> TrigPoly<T> {
        self.scaled(u, false)
    }

    /// `u = (Λ_μ^a)⁻¹ m`.
    pub fn velocity(&self, m: &TrigPoly<T>) -> TrigPoly<T> {
        self.scaled(m, true)
    }

    /// `P_N[b m u_x + u m_x]`.
    fn bracket(&self, u: &TrigPoly<T>, m: &TrigPoly<T>) -> TrigPoly<T> {
        let stretch = T::product(m, &u.derivative(), self.n).scale(&self.b);
        let transport = T::product(u, &m.derivative(), self.n);
        &stretch + &transport
    }

    /// `u_t = -(Λ_μ^a)⁻¹ P_N[b m u_x + u m_x]`.
    pub fn rhs(&self, u: &TrigPoly<T>) -> TrigPoly<T> {
        let m = self.momentum(u);
        -&self.velocity(&self.bracket(u, &m))
    }

    /// `m_t = -P_N[u m_x + b u_x m]`, projected to zero mean where required.
    pub fn rhs_momentum(&self, m: &TrigPoly<T>) -> TrigPoly<T> {
        let u = self.velocity(m);
        let w = self.bracket(&u, m);
        match self.domain {
            Domain::FullGroup => -&w,
            Domain::ZeroMean => -&w.without_mean(),
        }
    }

    fn rk4<F: Fn(&TrigPoly<T>) -> TrigPoly<T>>(y: &TrigPoly<T>, dt: T, f: F) -> TrigPoly<T> {
        let two = T::from_i64(2);
        let half = dt / two;
        let k1 = f(y);
        let k2 = f(&(y + &k1.scale(&half)));
        let k3 = f(&(y + &k2.scale(&half)));
        let k4 = f(&(y + &k3.scale(&dt)));
        let incr = &(&k1 + &k4) + &(&k2 + &k3).scale(&two);
        y + &incr.scale(&(dt / T::from_i64(6)))
    }

    /// One RK4 step of the velocity form.
    pub fn step(&self, u: &TrigPoly<T>, dt: T) -> TrigPoly<T> {
        Self::rk4(u, dt, |v| self.rhs(v))
    }

    /// One RK4 step of the momentum form.
    pub fn step_momentum(&self, m: &TrigPoly<T>, dt: T) -> TrigPoly<T> {
        Self::rk4(m, dt, |v| self.rhs_momentum(v))
    }

    /// `⟨Au, u⟩ = Σ β_k |c_k|²` in working precision.
    pub fn energy(&self, u: &TrigPoly<T>) -> T {
        u.modes()
            .filter(|(k, _)| !(*k == 0 && self.domain == Domain::ZeroMean))
            .fold(T::zero(), |acc, (k, c)| acc + self.beta[k.unsigned_abs() as usize] * (c.re * c.re + c.im * c.im))
    }

    /// `sup|u_x|` over `x_j = 2πj/(4N)`.
    pub fn sup_ux(&self, u: &TrigPoly<T>) -> f64 {
        let grid = self.twiddle.len();
        let coeffs: Vec<Complex<f64>> =
            (1..=u.degree() as i64).map(|k| { let c = u.coeff(k); Complex::new(c.re.to_f64(), c.im.to_f64()) }).collect();
        let mut best = 0.0f64;
        for j in 0..grid {
            // u_x = Σ_{k≥1} 2 Re(ik c_k e^{ikx}) for real u.
            let mut acc = 0.0;
            for (i, c) in coeffs.iter().enumerate() {
                let k = i + 1;
                let (co, s) = self.twiddle[(k * j) % grid];
                acc -= 2.0 * k as f64 * (c.re * s + c.im * co);
            }
            best = best.max(acc.abs());
        }
        best
    }

    /// Fraction of `Σ|c_k|²` carried by `|k| > 2N/3`.
    pub fn tail_ratio(&self, u: &TrigPoly<T>) -> f64 {
        let cut = 2 * self.n / 3;
        let (mut tail, mut total) = (0.0, 0.0);
        for (k, c) in u.modes() {
            let e = c.re.to_f64() * c.re.to_f64() + c.im.to_f64() * c.im.to_f64();
            total += e;
            if k.unsigned_abs() as usize > cut {
                tail += e;
            }
        }
        if total > 0.0 {
            tail / total
        } else {
            0.0
        }
    }

    /// Diagnostics with `energy_change` measured against `reference`.
    pub fn diagnostics_against(&self, t: f64, u: &TrigPoly<T>, reference: T) -> Diagnostics {
        let mean_u = u.mean();
        let mean_m = match self.domain {
            Domain::FullGroup => self.beta[0] * mean_u,
            Domain::ZeroMean => T::zero(),
        };
        let energy = self.energy(u);
        let delta = energy - reference;
        let scale = if reference == T::zero() { T::one() } else { reference };
        Diagnostics {
            t,
            mean_u: mean_u.to_f64(),
            mean_m: mean_m.to_f64(),
            energy: energy.to_f64(),
            energy_change: (delta / scale).to_f64(),
            sup_ux: self.sup_ux(u),
            tail_ratio: self.tail_ratio(u),
        }
    }

    pub fn diagnostics(&self, t: f64, u: &TrigPoly<T>) -> Diagnostics {
        self.diagnostics_against(t, u, self.energy(u))
    }
}

fn check_initial(u0: &TrigPoly<f64>, domain: Domain, resolution: usize) -> Result<(), FlowError> {
    if !u0.is_real() {
        return Err(FlowError::NotReal);
    }
    if !u0.is_finite() {
        return Err(FlowError::NonFinite);
    }
    if u0.degree() > resolution {
        return Err(FlowError::DegreeTooHigh { degree: u0.degree(), resolution });
    }
    if domain == Domain::ZeroMean && u0.mean() != 0.0 {
        return Err(FlowError::MeanViolation { mean: u0.mean() });
    }
    Ok(())
}

/// A single RK4 step of the velocity form at resolution `n`.
pub fn step_rk4(
    u: &TrigPoly<f64>,
    params: &EquationParams,
    domain: Domain,
    dt: f64,
    n: usize,
) -> Result<TrigPoly<f64>, FlowError> {
    check_initial(u, domain, n)?;
    let next = Integrator::new(params, domain, n).step(u, dt);
    if next.is_finite() {
        Ok(next)
    } else {
        Err(FlowError::NonFinite)
    }
}

/// Integrates to `t_end`, stopping early on blowup or degeneracy. The
/// arithmetic runs in `config.precision`; recorded states are doubles.
pub fn simulate(config: &SimConfig, u0: &TrigPoly<f64>) -> Result<Trajectory, FlowError> {
    config.validate()?;
    check_initial(u0, config.domain, config.resolution)?;
    match config.precision {
        Precision::Double => run::<f64>(config, u0.clone()),
        Precision::DoubleDouble => run::<TwoFloat>(config, u0.map_scalar(|&x| TwoFloat::from(x))),
    }
}

fn run<T: FlowScalar>(config: &SimConfig, u0: TrigPoly<T>) -> Result<Trajectory, FlowError> {
    let integ = Integrator::<T>::new(&config.params, config.domain, config.resolution);
    let steps = config.steps();
    let dt = T::from_real(&Real::Float(config.dt)).expect("floating field");
    let e0 = integ.energy(&u0);
    let mut u = u0;
    let mut times = vec![0.0];
    let mut diagnostics = vec![integ.diagnostics_against(0.0, &u, e0)];
    let mut states = vec![Snapshot { step: 0, t: 0.0, u: u.to_f64() }];
    let mut termination = Termination::Completed;
    for step in 1..=steps {
        let t = if step == steps { config.t_end } else { step as f64 * config.dt };
        let h = if step == steps {
            T::from_real(&Real::Float(config.t_end)).expect("floating field") - dt * T::from_i64(step as i64 - 1)
        } else {
            dt
        };
        u = integ.step(&u, h);
        let snapshot = u.to_f64();
        if !snapshot.is_finite() {
            // No meaningful diagnostics past this point.
            termination = Termination::Degenerate { t, reason: DegenerateReason::NonFinite };
            states.push(Snapshot { step, t, u: snapshot });
            break;
        }
        times.push(t);
        let d = integ.diagnostics_against(t, &u, e0);
        diagnostics.push(d);
        if d.sup_ux > config.blowup_slope_threshold {
            termination = Termination::Blowup { t };
        } else if d.tail_ratio > config.tail_ratio_threshold {
            termination = Termination::Degenerate { t, reason: DegenerateReason::SpectralUnderResolved };
        }
        let stopping = termination != Termination::Completed;
        let keep = config.record_every > 0 && step % config.record_every == 0;
        if keep || stopping || step == steps {
            states.push(Snapshot { step, t, u: snapshot });
        }
        if stopping {
            break;
        }
    }
    Ok(Trajectory { times, diagnostics, states, termination })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservationReport {
    /// `max |E(t) − E(0)| / |E(0)|`, absolute when `E(0) = 0`.
    pub energy_drift: f64,
    pub mean_m_drift: f64,
    pub mean_u_drift: f64,
    pub steps: usize,
}

pub fn conservation_report(traj: &Trajectory) -> ConservationReport {
    let Some(first) = traj.diagnostics.first() else {
        return ConservationReport { energy_drift: 0.0, mean_m_drift: 0.0, mean_u_drift: 0.0, steps: 0 };
    };
    let mut rep = ConservationReport {
        energy_drift: 0.0,
        mean_m_drift: 0.0,
        mean_u_drift: 0.0,
        steps: traj.diagnostics.len() - 1,
    };
    for d in &traj.diagnostics {
        rep.energy_drift = rep.energy_drift.max(d.energy_change.abs());
        rep.mean_m_drift = rep.mean_m_drift.max((d.mean_m - first.mean_m).abs());
        rep.mean_u_drift = rep.mean_u_drift.max((d.mean_u - first.mean_u).abs());
    }
    rep
}

/// Drift at `dt` against drift at `dt/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderCheck {
    pub coarse_drift: f64,
    pub fine_drift: f64,
    /// `coarse / fine`; infinite when only the fine run is drift-free.
    pub ratio: f64,
    /// `ratio ≥ 8`: consistent with a truncation error of fourth order.
    pub fourth_order: bool,
}

pub fn order_check(coarse: &ConservationReport, fine: &ConservationReport) -> OrderCheck {
    let ratio = if fine.energy_drift > 0.0 {
        coarse.energy_drift / fine.energy_drift
    } else if coarse.energy_drift > 0.0 {
        f64::INFINITY
    } else {
        1.0
    };
    OrderCheck { coarse_drift: coarse.energy_drift, fine_drift: fine.energy_drift, ratio, fourth_order: ratio >= 8.0 }
}
