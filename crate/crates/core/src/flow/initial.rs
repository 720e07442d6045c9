use alloc::vec::Vec;

use num_complex::Complex;
use rand::Rng;

use crate::spectral::TrigPoly;

/// Initial data shipped with the integrator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitialData {
    Zero,
    Cos,
    Sin,
    /// `cos x + ½ cos 2x`.
    CosPlusHalfCos2,
    /// Seeded, real, band-limited; see [`random_band_limited`].
    Random { seed: u64, degree: usize, amplitude: f64 },
}

impl InitialData {
    pub fn parse(name: &str) -> Option<InitialData> {
        match name {
            "zero" => Some(InitialData::Zero),
            "cos" => Some(InitialData::Cos),
            "sin" => Some(InitialData::Sin),
            "cos+half-cos2" | "cos2" => Some(InitialData::CosPlusHalfCos2),
            "random" => Some(InitialData::Random { seed: 0, degree: 8, amplitude: 1.0 }),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            InitialData::Zero => "zero",
            InitialData::Cos => "cos",
            InitialData::Sin => "sin",
            InitialData::CosPlusHalfCos2 => "cos+half-cos2",
            InitialData::Random { .. } => "random",
        }
    }

    /// The state itself. Random data is built with a ChaCha stream from the
    /// caller, so `rng` is only consulted for that variant.
    pub fn build<R: Rng + ?Sized>(&self, rng: &mut R, zero_mean: bool) -> TrigPoly<f64> {
        match *self {
            InitialData::Zero => TrigPoly::zero(),
            InitialData::Cos => TrigPoly::cos_mode(1),
            InitialData::Sin => TrigPoly::sin_mode(1),
            InitialData::CosPlusHalfCos2 => &TrigPoly::cos_mode(1) + &TrigPoly::cos_mode(2).scale(&0.5),
            InitialData::Random { degree, amplitude, .. } => random_band_limited(rng, degree, amplitude, zero_mean),
        }
    }
}

/// Real trigonometric polynomial with `|c_k| ≲ amplitude / k²` on
/// `1 ≤ |k| ≤ degree`, and a mean of size `amplitude` unless `zero_mean`.
pub fn random_band_limited<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    amplitude: f64,
    zero_mean: bool,
) -> TrigPoly<f64> {
    let mut modes = Vec::with_capacity(2 * degree + 1);
    let c0: f64 = rng.random_range(-1.0..1.0);
    if !zero_mean {
        modes.push((0, Complex::new(amplitude * c0, 0.0)));
    }
    for k in 1..=degree as i64 {
        let scale = amplitude / (k * k) as f64;
        let re: f64 = rng.random_range(-1.0..1.0);
        let im: f64 = rng.random_range(-1.0..1.0);
        let c = Complex::new(scale * re, scale * im);
        modes.push((k, c));
        modes.push((-k, c.conj()));
    }
    TrigPoly::from_modes(modes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn library_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let u = InitialData::CosPlusHalfCos2.build(&mut rng, true);
        assert!((u.evaluate(0.0).re - 1.5).abs() < 1e-15);
        assert!(InitialData::Zero.build(&mut rng, false).is_zero());
        assert!((InitialData::Sin.build(&mut rng, false).evaluate(1.0).re - libm::sin(1.0)).abs() < 1e-15);
        for name in ["zero", "cos", "sin", "cos+half-cos2", "random"] {
            assert_eq!(InitialData::parse(name).unwrap().name(), name);
        }
        assert!(InitialData::parse("gauss").is_none());
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_band_limited(&mut ChaCha8Rng::seed_from_u64(5), 10, 1.0, true);
        let b = random_band_limited(&mut ChaCha8Rng::seed_from_u64(5), 10, 1.0, true);
        assert_eq!(a, b);
        assert!(a.is_real());
        assert_eq!(a.mean(), 0.0);
        assert_eq!(a.degree(), 10);
        let c = random_band_limited(&mut ChaCha8Rng::seed_from_u64(5), 10, 1.0, false);
        assert!(c.mean() != 0.0);
    }
}
