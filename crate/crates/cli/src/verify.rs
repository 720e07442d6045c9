//! Self-checks run by `vortmetric verify <suite>`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vortmetric_core::flow::{
    conservation_report, order_check, random_band_limited, simulate, Integrator, OrderCheck, Precision, SimConfig,
};
use vortmetric_core::metricity::{
    beta_sequence, classify_fourier_type, doubling_residuals, exclusion_set_e, p_eval, q_poly, r_set,
    ClassifyOptions,
};
use vortmetric_core::operators::funda_residual;
use vortmetric_core::spectral::random_integer_poly;
use vortmetric_core::{Domain, EquationParams, FourierSymbol, Rational, Real, TrigPoly};

use crate::format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Identities,
    Recursions,
    Conservation,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Recursions => "recursions",
            Suite::Conservation => "conservation",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    match suite {
        Suite::Identities => identities(seed),
        Suite::Recursions => recursions(),
        Suite::Conservation => conservation(seed),
    }
}

fn domains() -> [Domain; 2] {
    [Domain::FullGroup, Domain::ZeroMean]
}

/// The identity with `A = Λ_μ^a`, `b = 2` on seeded random polynomials,
/// `P(2) = 0`, and a nonnegative discriminant of `Q_a` on `[-5, 5]`.
pub fn identities(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    let two = Real::int(2);
    for a in 0..=3 {
        for domain in domains() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let params = EquationParams::new(Real::int(a), two.clone());
            let op = FourierSymbol::lambda_mu(Real::int(a), domain);
            let failures = (0..100)
                .filter(|_| {
                    let degree = rng.random_range(1..=16);
                    let u: TrigPoly<Rational> = random_integer_poly(&mut rng, degree, 9, domain == Domain::ZeroMean);
                    !funda_residual(&op, &params, &u).is_ok_and(|r| r.is_zero())
                })
                .count();
            checks.push(Check::new(
                format!("identity a={a} {} exact", domain.as_str()),
                failures == 0,
                format!("{failures} of 100 nonzero residuals"),
            ));
        }
    }
    for a in [0.5, 1.5] {
        for domain in domains() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let worst = (0..100)
                .map(|_| {
                    let degree = rng.random_range(1..=16);
                    let u = random_band_limited(&mut rng, degree, 1.0, domain == Domain::ZeroMean);
                    relative_residual(a, domain, &u)
                })
                .fold(0.0, f64::max);
            checks.push(Check::new(
                format!("identity a={a} {} float", domain.as_str()),
                worst <= 1e-12,
                format!("max relative residual {}", format::float(worst)),
            ));
        }
    }

    let grid: Vec<Real> = (0..=1000).map(|i| Real::ratio(i - 500, 100)).collect();
    let sampled = (0..=3).map(Real::int).chain([Real::Float(0.5), Real::Float(1.5)]).chain(grid.iter().cloned());
    let bad_p2 = sampled.filter(|a| !p_eval(a, &two).is_zero()).count();
    checks.push(Check::new("P(2) = 0", bad_p2 == 0, format!("{bad_p2} sampled a with P(2) != 0")));

    let negative: Vec<String> =
        grid.iter().filter(|a| r_set(a).discriminant.signum() < 0).map(format::real).collect();
    checks.push(Check::new(
        "discriminant of Q_a >= 0 on [-5, 5]",
        negative.is_empty(),
        if negative.is_empty() { "1001 values of a".to_string() } else { format!("negative at a = {}", negative.join(", ")) },
    ));
    checks
}

/// `max|residual| / max(|lhs|, |rhs|)` in doubles; the scale is the size of
/// the `b = 2` bracket after the same operator applications.
pub fn relative_residual(a: f64, domain: Domain, u: &TrigPoly<f64>) -> f64 {
    let params = EquationParams::new(Real::Float(a), Real::int(2));
    let op = FourierSymbol::lambda_mu(Real::Float(a), domain);
    let residual = funda_residual(&op, &params, u).expect("valid input");
    let rhs = vortmetric_core::operators::family_rhs(&params, domain, u).expect("valid input");
    let scale = match domain {
        Domain::FullGroup => rhs.max_abs(),
        Domain::ZeroMean => op.apply(&op.apply(&rhs).expect("valid input")).expect("valid input").max_abs(),
    };
    if scale == 0.0 {
        residual.max_abs()
    } else {
        residual.max_abs() / scale
    }
}

/// The symbol recursion, the doubling relation, the `(1, 1)` witness and the
/// exclusion sets at `a = 1, 2`.
pub fn recursions() -> Vec<Check> {
    let mut checks = Vec::new();
    let two = Real::int(2);
    for a in 0..=3i64 {
        let ar = Real::int(a);
        let betas = beta_sequence(&ar, &two, 64);
        let expected: Vec<Real> = (1..=64).map(|k: i64| Real::int(k.pow(a as u32))).collect();
        let ok = betas.as_ref().is_ok_and(|b| *b == expected);
        checks.push(Check::new(format!("beta_k = k^{a} at b = 2"), ok, "k = 1..64"));
        let doubling = doubling_residuals(&ar, &two, 32);
        let ok = doubling.as_ref().is_ok_and(|d| d.all_zero());
        checks.push(Check::new(format!("doubling residuals vanish, a = {a}"), ok, "k = 1..32"));
    }

    let (one, opts) = (Real::int(1), ClassifyOptions::default());
    let witness_ok = doubling_residuals(&one, &one, 2).is_ok_and(|d| {
        d.beta4_recursion == Real::ratio(53, 6) && d.beta4_closed_form == Real::int(9) && d.beta4_residual == Real::ratio(-1, 6)
    });
    let verdict = classify_fourier_type(&one, &one, &opts);
    let carried = verdict.witness().is_some_and(|w| w.get("beta_4 residual") == Some(&Real::ratio(-1, 6)));
    checks.push(Check::new(
        "(a, b) = (1, 1): beta_4 = 53/6 vs 9",
        witness_ok && carried && verdict.is_non_metric(),
        "residual -1/6, non-metric",
    ));

    for (a, expected) in [
        (1, [Real::ratio(-5, 3), Real::ratio(-5, 4), Real::ratio(-5, 7), Real::ratio(1, 2)]),
        (2, [Real::ratio(-3, 2), Real::ratio(-7, 3), Real::int(5), Real::ratio(-3, 7)]),
    ] {
        let ar = Real::int(a);
        let mut got = exclusion_set_e(&ar);
        got.extend(r_set(&ar).roots);
        let ok = got.len() == 4 && got.iter().all(Real::is_exact) && expected.iter().all(|v| got.contains(v));
        let shown: Vec<String> = got.iter().map(format::real).collect();
        checks.push(Check::new(format!("E_{a} and R_{a}"), ok, shown.join(", ")));
    }
    let c = q_poly(&Real::int(2));
    checks.push(Check::new(
        "Q_2 coefficients",
        (c.a3.clone(), c.a2.clone(), c.a1.clone()) == (Real::int(42), Real::int(-24), Real::int(-306)),
        format!("({}, {}, {})", c.a3, c.a2, c.a1),
    ));

    // The k = 2 doubling residual vanishes exactly where P does.
    let mut mismatches = 0;
    for a in 0..=3 {
        let ar = Real::int(a);
        for b in [Real::ratio(1, 3), Real::int(4), Real::ratio(-7, 2), Real::int(2), Real::int(1)] {
            if let Ok(d) = doubling_residuals(&ar, &b, 2) {
                if d.residuals[1].1.is_zero() != p_eval(&ar, &b).is_zero() {
                    mismatches += 1;
                }
            }
        }
    }
    checks.push(Check::new("k = 2 doubling residual vanishes iff P(b) = 0", mismatches == 0, format!("{mismatches} mismatches")));
    checks
}

/// Result of one dichotomy pair.
#[derive(Clone, Debug, PartialEq)]
pub struct DichotomyRow {
    pub a: i64,
    pub b: i64,
    pub order: OrderCheck,
    pub passed: bool,
}

/// `u0 = cos`, `N = 128`, `T = 0.3`, `dt = 1e-3` and `5e-4`, full group, in
/// double-double so drifts near `1e-16` are resolved.
pub fn dichotomy() -> Vec<DichotomyRow> {
    [(2, 2), (1, 2), (0, 2), (2, 3)]
        .into_iter()
        .map(|(a, b)| {
            let drift = |dt: f64| {
                let mut cfg =
                    SimConfig::new(EquationParams::new(Real::int(a), Real::int(b)), 128, dt, 0.3, Domain::FullGroup);
                cfg.precision = Precision::DoubleDouble;
                cfg.record_every = 0;
                let traj = simulate(&cfg, &TrigPoly::cos_mode(1)).expect("valid configuration");
                conservation_report(&traj)
            };
            let order = order_check(&drift(1e-3), &drift(5e-4));
            let passed = if b == 2 {
                order.coarse_drift <= 1e-8 && order.ratio >= 8.0
            } else {
                order.coarse_drift >= 1e-3 && order.ratio < 8.0
            };
            DichotomyRow { a, b, order, passed }
        })
        .collect()
}

/// Seeded `(a, b)` in `[0, 3] × [-2, 3]`.
pub fn random_pairs(seed: u64, count: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.random_range(0.0..3.0), rng.random_range(-2.0..3.0))).collect()
}

pub fn conservation(seed: u64) -> Vec<Check> {
    let mut checks: Vec<Check> = dichotomy()
        .into_iter()
        .map(|r| {
            Check::new(
                format!("energy dichotomy (a, b) = ({}, {})", r.a, r.b),
                r.passed,
                format!("drift {} at dt, ratio {} on halving", format::float(r.order.coarse_drift), format::float(r.order.ratio)),
            )
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for (a, b) in random_pairs(seed, 20) {
        let u0 = random_band_limited(&mut rng, 8, 0.5, false);
        let cfg = SimConfig::new(EquationParams::new(Real::Float(a), Real::Float(b)), 32, 1e-3, 0.05, Domain::FullGroup);
        match simulate(&cfg, &u0) {
            Ok(traj) => worst = worst.max(conservation_report(&traj).mean_m_drift),
            Err(_) => worst = f64::INFINITY,
        }
    }
    checks.push(Check::new("mean of m conserved, 20 runs", worst <= 1e-10, format!("max drift {}", format::float(worst))));

    let mut worst = 0.0f64;
    for (i, (a, b)) in random_pairs(seed.wrapping_add(1), 10).into_iter().enumerate() {
        let domain = if i % 2 == 0 { Domain::FullGroup } else { Domain::ZeroMean };
        let u = random_band_limited(&mut rng, 12, 1.0, domain == Domain::ZeroMean);
        worst = worst.max(cross_form_gap(a, b, domain, &u));
    }
    checks.push(Check::new("u-form and m-form agree, 10 pairs", worst <= 1e-12, format!("max relative gap {}", format::float(worst))));
    checks
}

/// Relative gap between the two forms: `Λ` of the velocity right-hand side
/// against the momentum right-hand side, and one RK4 step of each.
pub fn cross_form_gap(a: f64, b: f64, domain: Domain, u: &TrigPoly<f64>) -> f64 {
    let integ = Integrator::<f64>::new(&EquationParams::new(Real::Float(a), Real::Float(b)), domain, 32);
    let m = integ.momentum(u);
    let rel = |x: &TrigPoly<f64>, y: &TrigPoly<f64>| (x - y).max_abs() / y.max_abs().max(1.0);
    let rhs_gap = rel(&integ.momentum(&integ.rhs(u)), &integ.rhs_momentum(&m));
    let step_gap = rel(&integ.momentum(&integ.step(u, 1e-3)), &integ.step_momentum(&m, 1e-3));
    rhs_gap.max(step_gap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursions_pass() {
        let checks = recursions();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        assert!(checks.len() >= 10);
    }

    #[test]
    fn relative_residual_is_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_band_limited(&mut rng, 10, 1.0, true);
        assert!(relative_residual(1.5, Domain::ZeroMean, &u) <= 1e-12);
        assert!(relative_residual(0.5, Domain::FullGroup, &random_band_limited(&mut rng, 10, 1.0, false)) <= 1e-12);
    }

    #[test]
    fn pairs_are_seeded() {
        assert_eq!(random_pairs(4, 3), random_pairs(4, 3));
        assert!(random_pairs(4, 50).iter().all(|&(a, b)| (0.0..3.0).contains(&a) && (-2.0..3.0).contains(&b)));
    }
}
