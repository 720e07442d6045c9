//! The exclusion sets `E_a`, `R_a` and the cubic obstruction `P`.

use alloc::vec;
use alloc::vec::Vec;

use crate::real::Real;

/// Coefficients of `P(b) = a₃(b−2)³ + a₂(b−2)² + a₁(b−2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicCoefficients {
    pub a3: Real,
    pub a2: Real,
    pub a1: Real,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicReport {
    pub a3: Real,
    pub a2: Real,
    pub a1: Real,
    /// `R_a`, the real roots of `Q_a`.
    pub q_roots: Vec<Real>,
    pub p_value_at_b: Real,
}

/// Real roots of `Q_a(b) = a₃(b−2)² + a₂(b−2) + a₁`, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Real>,
    pub discriminant: Real,
    /// Set when the discriminant is negative, contradicting `R_a ≠ ∅`.
    pub empty_contradicts_claim: bool,
}

fn pow_int_base(base: i64, a: &Real) -> Real {
    Real::int(base).pow(a)
}

/// `E_a = {−(2^{a+1}+1)/(2^a+2), −(3^{a+1}+1)/(3^a+3)}`, deduplicated.
pub fn exclusion_set_e(a: &Real) -> Vec<Real> {
    let one = Real::one();
    let mut out = Vec::with_capacity(2);
    for base in [2i64, 3] {
        let p = pow_int_base(base, a);
        let base_r = Real::int(base);
        let value = -((&base_r * &p + &one) / (&p + &base_r));
        if !out.contains(&value) {
            out.push(value);
        }
    }
    out
}

/// `a₃ = 7(2^a+2)`, `a₂ = 43·2^a + 7·3^a − 9·6^a + 65`,
/// `a₁ = 60·2^a + 15·3^a − 21·6^a + 75`.
pub fn q_poly(a: &Real) -> CubicCoefficients {
    let p2 = pow_int_base(2, a);
    let p3 = pow_int_base(3, a);
    let p6 = pow_int_base(6, a);
    let r = Real::int;
    CubicCoefficients {
        a3: r(7) * (&p2 + r(2)),
        a2: r(43) * &p2 + r(7) * &p3 - r(9) * &p6 + r(65),
        a1: r(60) * &p2 + r(15) * &p3 - r(21) * &p6 + r(75),
    }
}

/// `Q_a(b)`.
pub fn q_eval(a: &Real, b: &Real) -> Real {
    let c = q_poly(a);
    let x = b - Real::int(2);
    (&c.a3 * &x + &c.a2) * &x + &c.a1
}

/// `P(b) = (b−2)·Q_a(b)`.
pub fn p_eval(a: &Real, b: &Real) -> Real {
    (b - Real::int(2)) * q_eval(a, b)
}

/// `R_a` via the quadratic formula in `x = b − 2`. Roots are exact when the
/// discriminant is the square of a rational.
pub fn r_set(a: &Real) -> RootSet {
    let c = q_poly(a);
    let four = Real::int(4);
    let discriminant = &c.a2 * &c.a2 - &four * &c.a3 * &c.a1;
    if discriminant.signum() < 0 {
        return RootSet { roots: Vec::new(), discriminant, empty_contradicts_claim: true };
    }
    let exact = [&c.a3, &c.a2, &c.a1, &discriminant].iter().all(|v| v.is_exact());
    let sqrt_d = discriminant.sqrt();
    let roots = if exact && sqrt_d.is_exact() {
        let two = Real::int(2);
        let denom = &two * &c.a3;
        if discriminant.is_zero() {
            vec![&two + (-&c.a2) / &denom]
        } else {
            // a₃ > 0 for every real a, so the minus branch is the smaller root.
            vec![&two + (-&c.a2 - &sqrt_d) / &denom, &two + (-&c.a2 + &sqrt_d) / &denom]
        }
    } else {
        float_roots(&c, sqrt_d.to_f64())
    };
    RootSet { roots, discriminant, empty_contradicts_claim: false }
}

/// Cancellation-free quadratic formula, then one Newton step in `b` so the
/// residual is small at the returned value rather than at `x`.
fn float_roots(c: &CubicCoefficients, sqrt_d: f64) -> Vec<Real> {
    let (a3, a2, a1) = (c.a3.to_f64(), c.a2.to_f64(), c.a1.to_f64());
    let q = -0.5 * (a2 + libm::copysign(sqrt_d, a2));
    let mut xs = if q == 0.0 { vec![0.0, 0.0] } else { vec![q / a3, a1 / q] };
    xs.sort_by(f64::total_cmp);
    if sqrt_d == 0.0 {
        xs.truncate(1);
    }
    xs.into_iter()
        .map(|x| {
            let b = 2.0 + x;
            let t = b - 2.0;
            let value = (a3 * t + a2) * t + a1;
            let slope = 2.0 * a3 * t + a2;
            Real::Float(if slope != 0.0 { b - value / slope } else { b })
        })
        .collect()
}

pub fn cubic_report(a: &Real, b: &Real) -> CubicReport {
    let c = q_poly(a);
    CubicReport { a3: c.a3, a2: c.a2, a1: c.a1, q_roots: r_set(a).roots, p_value_at_b: p_eval(a, b) }
}
