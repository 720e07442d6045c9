//! The symbol recursion, the doubling relation and the exponents `r_k`.

use alloc::vec::Vec;

use super::MetricityError;
use crate::real::Real;

/// `β_1..β_n` from `β_1 = 1` and
/// `β_{k+1} = (k+1)^a (β_k(2+k) + 2k + 1) / (b(k^a+k) + k^{a+1} + 1)`.
///
/// Exact whenever `a` is an exact integer and `b` an exact rational.
pub fn beta_sequence(a: &Real, b: &Real, n: usize) -> Result<Vec<Real>, MetricityError> {
    if n == 0 {
        return Err(MetricityError::EmptySequence);
    }
    let one = Real::one();
    let two = Real::int(2);
    let mut betas = Vec::with_capacity(n);
    betas.push(one.clone());
    for k in 1..n {
        let kr = Real::int(k as i64);
        let k_pow_a = kr.pow(a);
        let denominator = b * (&k_pow_a + &kr) + &k_pow_a * &kr + &one;
        if denominator.is_zero() {
            return Err(MetricityError::DegenerateDenominator { k });
        }
        let next_pow_a = Real::int(k as i64 + 1).pow(a);
        let numerator = &betas[k - 1] * (&two + &kr) + &two * &kr + &one;
        betas.push(next_pow_a * numerator / denominator);
    }
    Ok(betas)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoublingReport {
    /// `(k, β_{2k} − (3·2^a/(b+1)) β_k)` for `k = 1..n`.
    pub residuals: Vec<(usize, Real)>,
    pub beta4_recursion: Real,
    /// `β_4 = 4^a · 9/(b+1)²`.
    pub beta4_closed_form: Real,
    pub beta4_residual: Real,
}

impl DoublingReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero()) && self.beta4_residual.is_zero()
    }
}

/// Checks the recursion against the doubling relation
/// `β_{2k} = (3·2^a/(b+1)) β_k` for `k = 1..n`.
pub fn doubling_residuals(a: &Real, b: &Real, n: usize) -> Result<DoublingReport, MetricityError> {
    let one = Real::one();
    let b_plus_one = b + &one;
    if b_plus_one.is_zero() {
        return Err(MetricityError::BMinusOne);
    }
    let betas = beta_sequence(a, b, (2 * n).max(4))?;
    let factor = Real::int(3) * Real::int(2).pow(a) / &b_plus_one;
    let residuals = (1..=n)
        .map(|k| (k, &betas[2 * k - 1] - &factor * &betas[k - 1]))
        .collect();
    let beta4_closed_form = Real::int(4).pow(a) * Real::int(9) / (&b_plus_one * &b_plus_one);
    let beta4_recursion = betas[3].clone();
    let beta4_residual = &beta4_recursion - &beta4_closed_form;
    Ok(DoublingReport { residuals, beta4_recursion, beta4_closed_form, beta4_residual })
}

/// `r_k = (k/|k|^a)(b + |k|^a)`, the exponent in the exponential solution
/// `γ_k e^{i r_k x}` of the ODE for `A e_k`.
pub fn r_exponent(a: &Real, b: &Real, k: i64) -> Result<Real, MetricityError> {
    if k == 0 {
        return Err(MetricityError::ZeroMode);
    }
    let abs_pow = Real::int(k.abs()).pow(a);
    Ok(Real::int(k) / &abs_pow * (b + &abs_pow))
}
