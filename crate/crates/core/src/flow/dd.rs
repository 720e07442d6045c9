//! Truncated products of real double-double polynomials.
//!
//! Each coefficient `x = x_hi + x_lo` contributes `x_hi y_hi` through an
//! error-free product and a compensated sum, and the cross terms
//! `x_hi y_lo + x_lo y_hi` in plain doubles; `x_lo y_lo` is below the
//! working precision. No fused multiply-add is needed, so the kernel stays
//! fast without `std`.

use alloc::vec::Vec;

use num_complex::Complex;
use twofloat::TwoFloat;

use crate::spectral::TrigPoly;

/// Veltkamp split: `x = h + l` exactly, each half on 26 bits.
#[inline(always)]
fn split(x: f64) -> (f64, f64) {
    let t = 134_217_729.0 * x;
    let h = t - (t - x);
    (h, x - h)
}

#[derive(Clone, Copy, Default)]
struct Part {
    hi: f64,
    lo: f64,
    h: f64,
    l: f64,
}

impl Part {
    fn new(x: TwoFloat) -> Part {
        let (h, l) = split(x.hi());
        Part { hi: x.hi(), lo: x.lo(), h, l }
    }
}

/// Running `Σ x_i y_i` as an unevaluated sum `s + e`.
#[derive(Clone, Copy, Default)]
struct Acc {
    s: f64,
    e: f64,
}

impl Acc {
    #[inline(always)]
    fn add_product(&mut self, x: &Part, y: &Part) {
        let p = x.hi * y.hi;
        let err = ((x.h * y.h - p) + x.h * y.l + x.l * y.h) + x.l * y.l;
        let s = self.s + p;
        let bb = s - self.s;
        let sum_err = (self.s - (s - bb)) + (p - bb);
        self.s = s;
        self.e += sum_err + err + (x.hi * y.lo + x.lo * y.hi);
    }

    #[inline(always)]
    fn sub_product(&mut self, x: &Part, y: &Part) {
        let neg = Part { hi: -y.hi, lo: -y.lo, h: -y.h, l: -y.l };
        self.add_product(x, &neg);
    }

    fn value(self) -> TwoFloat {
        TwoFloat::new_add(self.s, self.e)
    }
}

/// `P_n[p q]` for real `p`, `q`.
pub(super) fn product_real(p: &TrigPoly<TwoFloat>, q: &TrigPoly<TwoFloat>, n: usize) -> TrigPoly<TwoFloat> {
    let (dp, dq) = (p.degree() as i64, q.degree() as i64);
    let out = n.min((dp + dq) as usize);
    let parts = |poly: &TrigPoly<TwoFloat>| -> Vec<(Part, Part)> {
        poly.coeffs().iter().map(|c| (Part::new(c.re), Part::new(c.im))).collect()
    };
    let (pp, qq) = (parts(p), parts(q));
    let zero = Complex::new(TwoFloat::from(0.0), TwoFloat::from(0.0));
    let mut coeffs = alloc::vec![zero; 2 * out + 1];
    for k in 0..=out as i64 {
        let (mut re, mut im) = (Acc::default(), Acc::default());
        for j in (-dp).max(k - dq)..=dp.min(k + dq) {
            let (ar, ai) = &pp[(j + dp) as usize];
            let (br, bi) = &qq[(k - j + dq) as usize];
            re.add_product(ar, br);
            re.sub_product(ai, bi);
            im.add_product(ar, bi);
            im.add_product(ai, br);
        }
        let c = if k == 0 { Complex::new(re.value(), TwoFloat::from(0.0)) } else { Complex::new(re.value(), im.value()) };
        coeffs[out + k as usize] = c;
        coeffs[out - k as usize] = c.conj();
    }
    TrigPoly::from_coeffs(coeffs).expect("odd length")
}
