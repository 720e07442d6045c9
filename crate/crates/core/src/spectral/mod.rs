//! Finite Fourier series on the circle.
//!
//! Functions live on the 2π-periodic circle with basis `e_k(x) = e^{ikx}`.
//! The mean is normalized, `mean(u) = (1/2π)∫u dx = c_0`, and the inner
//! product is `⟨p, q⟩ = Σ_k p_k conj(q_k)`, so `⟨e_k, e_k⟩ = 1`.
//!
//! Products are exact convolutions whose degree is the sum of the factor
//! degrees; truncation to a resolution is a separate, explicit step.

mod scalar;

pub use scalar::Scalar;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("coefficient vector must have odd length 2N+1, got {0}")]
    EvenLength(usize),
}

/// Trigonometric polynomial `Σ_{|k|≤N} c_k e^{ikx}`.
///
/// The degree is always minimal and the `real` flag is recomputed on every
/// construction: it is set exactly when `c_{-k} = conj(c_k)` for all `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly<T: Scalar> {
    degree: usize,
    coeffs: Vec<Complex<T>>,
    real: bool,
}

fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn is_czero<T: Scalar>(c: &Complex<T>) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

impl<T: Scalar> TrigPoly<T> {
    pub fn zero() -> Self {
        TrigPoly { degree: 0, coeffs: vec![czero()], real: true }
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![Complex::new(c, T::zero())]).expect("odd length")
    }

    /// `e_k(x) = e^{ikx}`.
    pub fn basis(k: i64) -> Self {
        Self::from_modes([(k, Complex::new(T::one(), T::zero()))])
    }

    /// `cos(kx) = (e_k + e_{-k}) / 2`.
    pub fn cos_mode(k: i64) -> Self {
        let half = T::one() / T::from_i64(2);
        Self::from_modes([(k, Complex::new(half.clone(), T::zero())), (-k, Complex::new(half, T::zero()))])
    }

    /// `sin(kx) = (e_k - e_{-k}) / 2i`.
    pub fn sin_mode(k: i64) -> Self {
        let half = T::one() / T::from_i64(2);
        Self::from_modes([(k, Complex::new(T::zero(), -half.clone())), (-k, Complex::new(T::zero(), half))])
    }

    /// Builds from coefficients ordered `k = -N..=N`.
    pub fn from_coeffs(coeffs: Vec<Complex<T>>) -> Result<Self, SpectralError> {
        if coeffs.len().is_multiple_of(2) {
            return Err(SpectralError::EvenLength(coeffs.len()));
        }
        let degree = coeffs.len() / 2;
        Ok(Self::normalized(degree, coeffs))
    }

    /// Sums `(k, c_k)` pairs; repeated modes accumulate.
    pub fn from_modes<I: IntoIterator<Item = (i64, Complex<T>)>>(modes: I) -> Self {
        let modes: Vec<(i64, Complex<T>)> = modes.into_iter().collect();
        let degree = modes.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeffs = vec![czero(); 2 * degree + 1];
        for (k, c) in modes {
            let slot = &mut coeffs[(k + degree as i64) as usize];
            *slot = slot.clone() + c;
        }
        Self::normalized(degree, coeffs)
    }

    fn normalized(degree: usize, mut coeffs: Vec<Complex<T>>) -> Self {
        let mut trim = 0;
        while trim < degree && is_czero(&coeffs[trim]) && is_czero(&coeffs[2 * degree - trim]) {
            trim += 1;
        }
        if trim > 0 {
            coeffs.truncate(2 * degree + 1 - trim);
            coeffs.drain(..trim);
        }
        let degree = degree - trim;
        let real = coeffs[degree].im.is_zero()
            && (1..=degree).all(|k| coeffs[degree - k] == coeffs[degree + k].conj());
        TrigPoly { degree, coeffs, real }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0 && is_czero(&self.coeffs[0])
    }

    /// Coefficients ordered `k = -N..=N`.
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// `c_k`, zero outside `[-N, N]`.
    pub fn coeff(&self, k: i64) -> Complex<T> {
        if k.unsigned_abs() as usize > self.degree {
            czero()
        } else {
            self.coeffs[(k + self.degree as i64) as usize].clone()
        }
    }

    /// Iterates `(k, &c_k)` for `k = -N..=N`.
    pub fn modes(&self) -> impl Iterator<Item = (i64, &Complex<T>)> + '_ {
        let n = self.degree as i64;
        self.coeffs.iter().enumerate().map(move |(i, c)| (i as i64 - n, c))
    }

    /// Applies `c_k ↦ f(k, c_k)`.
    pub fn map_modes<F: FnMut(i64, &Complex<T>) -> Complex<T>>(&self, mut f: F) -> Self {
        let coeffs = self.modes().map(|(k, c)| f(k, c)).collect();
        Self::normalized(self.degree, coeffs)
    }

    /// Fallible variant of [`TrigPoly::map_modes`].
    pub fn try_map_modes<E, F>(&self, mut f: F) -> Result<Self, E>
    where
        F: FnMut(i64, &Complex<T>) -> Result<Complex<T>, E>,
    {
        let coeffs = self.modes().map(|(k, c)| f(k, c)).collect::<Result<Vec<_>, E>>()?;
        Ok(Self::normalized(self.degree, coeffs))
    }

    /// `c_k ↦ ik c_k`.
    pub fn derivative(&self) -> Self {
        self.map_modes(|k, c| {
            let kk = T::from_i64(k);
            Complex::new(-(kk.clone() * c.im.clone()), kk * c.re.clone())
        })
    }

    /// Exact product (coefficient convolution), no truncation.
    pub fn multiply(&self, other: &Self) -> Self {
        self.convolve(other, self.degree + other.degree)
    }

    /// The product with every mode `|k| > n` discarded. Coefficient for
    /// coefficient identical to `truncate(multiply(p, q), n)`; the discarded
    /// modes are simply never formed.
    pub fn multiply_truncated(&self, other: &Self, n: usize) -> Self {
        self.convolve(other, n.min(self.degree + other.degree))
    }

    fn convolve(&self, other: &Self, out_degree: usize) -> Self {
        let (dp, dq) = (self.degree as i64, other.degree as i64);
        let n = out_degree as i64;
        let both_real = self.real && other.real;
        let mut out = vec![czero::<T>(); 2 * out_degree + 1];
        let k_start = if both_real { 0 } else { -n };
        for k in k_start..=n {
            let j_lo = (-dp).max(k - dq);
            let j_hi = dp.min(k + dq);
            let mut acc = czero::<T>();
            for j in j_lo..=j_hi {
                let a = &self.coeffs[(j + dp) as usize];
                let b = &other.coeffs[(k - j + dq) as usize];
                acc = acc + a.clone() * b.clone();
            }
            out[(k + n) as usize] = acc;
        }
        if both_real {
            out[out_degree].im = T::zero();
            for k in 1..=out_degree {
                out[out_degree - k] = out[out_degree + k].conj();
            }
        }
        Self::normalized(out_degree, out)
    }

    /// `c_0`'s real part: the normalized mean of a real-valued function.
    pub fn mean(&self) -> T {
        self.coeffs[self.degree].re.clone()
    }

    /// `Σ_k p_k conj(q_k)`.
    pub fn l2_inner(&self, other: &Self) -> Complex<T> {
        let n = self.degree.min(other.degree) as i64;
        let mut acc = czero::<T>();
        for k in -n..=n {
            acc = acc + self.coeff(k) * other.coeff(k).conj();
        }
        acc
    }

    /// Zeroes every mode with `|k| > n`.
    pub fn truncate(&self, n: usize) -> Self {
        if n >= self.degree {
            return self.clone();
        }
        let start = self.degree - n;
        Self::normalized(n, self.coeffs[start..start + 2 * n + 1].to_vec())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map_modes(|_, c| c.clone() * s.clone())
    }

    /// Drops the `k = 0` mode.
    pub fn without_mean(&self) -> Self {
        self.map_modes(|k, c| if k == 0 { czero() } else { c.clone() })
    }

    /// Coefficient-wise conversion to another field.
    pub fn map_scalar<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> TrigPoly<U> {
        let coeffs = self.coeffs.iter().map(|c| Complex::new(f(&c.re), f(&c.im))).collect();
        TrigPoly::normalized(self.degree, coeffs)
    }

    pub fn to_f64(&self) -> TrigPoly<f64> {
        self.map_scalar(Scalar::to_f64)
    }

    /// Largest coefficient modulus, in double precision.
    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| libm::hypot(c.re.to_f64(), c.im.to_f64()))
            .fold(0.0, f64::max)
    }

    fn zip_with<F: Fn(Complex<T>, Complex<T>) -> Complex<T>>(&self, other: &Self, f: F) -> Self {
        let degree = self.degree.max(other.degree);
        let n = degree as i64;
        let coeffs = (-n..=n).map(|k| f(self.coeff(k), other.coeff(k))).collect();
        Self::normalized(degree, coeffs)
    }
}

impl TrigPoly<f64> {
    /// Value at `x`.
    pub fn evaluate(&self, x: f64) -> Complex<f64> {
        self.modes().fold(Complex::new(0.0, 0.0), |acc, (k, c)| {
            let (s, co) = libm::sincos(k as f64 * x);
            acc + c * Complex::new(co, s)
        })
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// Random real-valued polynomial with integer coefficients in
/// `[-bound, bound]` on every mode `|k| ≤ degree`.
///
/// The same draws yield the same polynomial in any field, which lets exact
/// and floating evaluations be compared on identical inputs.
pub fn random_integer_poly<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    bound: i64,
    zero_mean: bool,
) -> TrigPoly<T> {
    let mut modes = Vec::with_capacity(2 * degree + 1);
    let c0 = rng.random_range(-bound..=bound);
    if !zero_mean {
        modes.push((0, Complex::new(T::from_i64(c0), T::zero())));
    }
    for k in 1..=degree as i64 {
        let re = T::from_i64(rng.random_range(-bound..=bound));
        let im = T::from_i64(rng.random_range(-bound..=bound));
        modes.push((k, Complex::new(re.clone(), im.clone())));
        modes.push((-k, Complex::new(re, -im)));
    }
    TrigPoly::from_modes(modes)
}

impl<T: Scalar> Add for &TrigPoly<T> {
    type Output = TrigPoly<T>;
    fn add(self, rhs: &TrigPoly<T>) -> TrigPoly<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &TrigPoly<T> {
    type Output = TrigPoly<T>;
    fn sub(self, rhs: &TrigPoly<T>) -> TrigPoly<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Mul for &TrigPoly<T> {
    type Output = TrigPoly<T>;
    fn mul(self, rhs: &TrigPoly<T>) -> TrigPoly<T> {
        self.multiply(rhs)
    }
}

impl<T: Scalar> Neg for &TrigPoly<T> {
    type Output = TrigPoly<T>;
    fn neg(self) -> TrigPoly<T> {
        self.map_modes(|_, c| -c.clone())
    }
}

impl<T: Scalar> Add for TrigPoly<T> {
    type Output = TrigPoly<T>;
    fn add(self, rhs: TrigPoly<T>) -> TrigPoly<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for TrigPoly<T> {
    type Output = TrigPoly<T>;
    fn sub(self, rhs: TrigPoly<T>) -> TrigPoly<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Default for TrigPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Mul for TrigPoly<T> {
    type Output = TrigPoly<T>;
    fn mul(self, rhs: TrigPoly<T>) -> TrigPoly<T> {
        self.multiply(&rhs)
    }
}
