use core::cmp::Ordering;

use super::{
    doubling_residuals, exclusion_set_e, p_eval, q_eval, r_exponent, r_set, ClassifyOptions, Model, Route,
    UndeterminedReason, Verdict, WitnessChain,
};
use crate::operators::Domain;
use crate::real::Real;

/// Normalized inputs: either everything exact (integer `a`, rational `b`)
/// or everything floating.
struct Ctx {
    a: Real,
    b: Real,
    exact: bool,
    tol: f64,
}

#[derive(PartialEq)]
enum Hit {
    Equal,
    Near,
    Apart,
}

impl Ctx {
    fn new(a: &Real, b: &Real, opts: &ClassifyOptions) -> Ctx {
        let exact = a.is_exact() && a.as_integer().is_some() && b.is_exact();
        if exact {
            Ctx { a: a.clone(), b: b.clone(), exact, tol: opts.tolerance }
        } else {
            Ctx { a: a.to_float(), b: b.to_float(), exact, tol: opts.tolerance }
        }
    }

    fn hit(&self, x: &Real, s: &Real) -> Hit {
        if x == s {
            Hit::Equal
        } else if !self.exact && (x.to_f64() - s.to_f64()).abs() <= self.tol {
            Hit::Near
        } else {
            Hit::Apart
        }
    }

    fn real(&self, v: i64) -> Real {
        if self.exact {
            Real::int(v)
        } else {
            Real::Float(v as f64)
        }
    }
}

fn undetermined(reason: UndeterminedReason, member: Option<Real>) -> Verdict {
    Verdict::Undetermined { reason, excluded_set_member: member }
}

fn near(member: Real) -> Verdict {
    undetermined(UndeterminedReason::NearExclusion, Some(member))
}

/// Runs the classifier for `model`.
pub fn classify(model: Model, a: &Real, b: &Real, opts: &ClassifyOptions) -> Verdict {
    match model {
        Model::FullGroup => classify_full_group(a, b, opts),
        Model::ZeroMeanFourier => classify_fourier_type(a, b, opts),
        Model::FullGroupFourier => classify_full_group_fourier_type(a, b, opts),
    }
}

/// Fourier-type inertia operators on zero-mean functions.
///
/// `Metric` iff `b = 2`; `Undetermined` on `E_a ∪ R_a`; otherwise `NonMetric`
/// through `b = -1` or the `β_4` inconsistency.
pub fn classify_fourier_type(a: &Real, b: &Real, opts: &ClassifyOptions) -> Verdict {
    let c = Ctx::new(a, b, opts);
    let two = c.real(2);
    match c.hit(&c.b, &two) {
        Hit::Equal => return Verdict::metric(&c.a, Domain::ZeroMean),
        Hit::Near => return near(two),
        Hit::Apart => {}
    }
    for e in exclusion_set_e(&c.a) {
        match c.hit(&c.b, &e) {
            Hit::Equal => return undetermined(UndeterminedReason::ExclusionSet, Some(e)),
            Hit::Near => return near(e),
            Hit::Apart => {}
        }
    }
    if c.exact {
        if q_eval(&c.a, &c.b).is_zero() {
            return undetermined(UndeterminedReason::ExclusionSet, Some(c.b.clone()));
        }
    } else {
        for root in r_set(&c.a).roots {
            match c.hit(&c.b, &root) {
                Hit::Equal => return undetermined(UndeterminedReason::ExclusionSet, Some(root)),
                Hit::Near => return near(root),
                Hit::Apart => {}
            }
        }
    }
    let minus_one = c.real(-1);
    match c.hit(&c.b, &minus_one) {
        Hit::Equal => {
            // u = e_k: 3·2^a|k|^a β_k e_2k = (1+b)|k|^a β_2k e_2k, so b = -1 kills every β_k.
            let mut w = WitnessChain::new(Route::VanishingOperator);
            w.push("b+1", &c.b + c.real(1));
            w.push("lhs coefficient 3*2^a", c.real(3) * c.real(2).pow(&c.a));
            w.push("beta_k forced", c.real(0));
            return Verdict::NonMetric { witness: w };
        }
        Hit::Near => return near(minus_one),
        Hit::Apart => {}
    }
    let report = match doubling_residuals(&c.a, &c.b, 2) {
        Ok(r) => r,
        // Unreachable for exact inputs off E_a; a float may still round onto a pole.
        Err(_) => return undetermined(UndeterminedReason::NearExclusion, None),
    };
    let mut w = WitnessChain::new(Route::RecursionDoubling);
    if c.b.is_zero() {
        w.push("b (zero; decided by the doubling route)", c.b.clone());
    }
    let residual = report.beta4_residual.clone();
    w.push("beta_4 (recursion)", report.beta4_recursion);
    w.push("beta_4 (doubling)", report.beta4_closed_form);
    w.push("beta_4 residual", residual.clone());
    w.push("P(b)", p_eval(&c.a, &c.b));
    if !c.exact && residual.to_f64().abs() <= c.tol {
        return undetermined(UndeterminedReason::NearExclusion, None);
    }
    Verdict::NonMetric { witness: w }
}

/// Arbitrary regular inertia operators on the full group.
pub fn classify_full_group(a: &Real, b: &Real, opts: &ClassifyOptions) -> Verdict {
    let c = Ctx::new(a, b, opts);
    let zero = c.real(0);
    match c.hit(&c.b, &zero) {
        Hit::Equal => return resonant(&c),
        Hit::Near => return near(zero),
        Hit::Apart => {}
    }
    let two = c.real(2);
    match c.hit(&c.b, &two) {
        Hit::Equal => return Verdict::metric(&c.a, Domain::FullGroup),
        Hit::Near => return near(two),
        Hit::Apart => {}
    }
    let one = c.real(1);
    match c.hit(&c.a, &one) {
        Hit::Apart => scaling(&c),
        Hit::Near => near(one),
        Hit::Equal => {
            let minus_one = c.real(-1);
            if c.hit(&c.b, &minus_one) == Hit::Near {
                return near(minus_one);
            }
            if c.b.partial_cmp_real(&minus_one) != Some(Ordering::Less) {
                let mut w = WitnessChain::new(Route::SignContradiction);
                mode_two_mismatch(&c, &mut w);
                // gamma_p != 0 needs b = k sign(p) < -|p| <= -1.
                w.push("gamma branch needs b <", minus_one);
                return Verdict::NonMetric { witness: w };
            }
            if !opts.extended {
                return undetermined(UndeterminedReason::OutsideHypothesis, None);
            }
            let nearest = c.real(libm::round(c.b.to_f64()) as i64);
            match c.hit(&c.b, &nearest) {
                Hit::Equal => undetermined(UndeterminedReason::OutsideHypothesis, None),
                Hit::Near => near(nearest),
                Hit::Apart => {
                    let mut w = WitnessChain::new(Route::NonIntegerExponents);
                    w.push("r_1", exponent(&c, 1));
                    w.push("r_-1", exponent(&c, -1));
                    mode_two_mismatch(&c, &mut w);
                    Verdict::NonMetric { witness: w }
                }
            }
        }
    }
}

/// Fourier-type inertia operators on the full group. Decided for `a = 1`;
/// other `a` defer to [`classify_full_group`].
pub fn classify_full_group_fourier_type(a: &Real, b: &Real, opts: &ClassifyOptions) -> Verdict {
    let c = Ctx::new(a, b, opts);
    let one = c.real(1);
    match c.hit(&c.a, &one) {
        Hit::Apart => return classify_full_group(a, b, opts),
        Hit::Near => return near(one),
        Hit::Equal => {}
    }
    let two = c.real(2);
    match c.hit(&c.b, &two) {
        Hit::Equal => return Verdict::metric(&c.a, Domain::FullGroup),
        Hit::Near => return near(two),
        Hit::Apart => {}
    }
    for e in exclusion_set_e(&c.a) {
        match c.hit(&c.b, &e) {
            Hit::Equal => return undetermined(UndeterminedReason::ExclusionSet, Some(e)),
            Hit::Near => return near(e),
            Hit::Apart => {}
        }
    }
    let zero = c.real(0);
    match c.hit(&c.b, &zero) {
        Hit::Equal => return resonant(&c),
        Hit::Near => return near(zero),
        Hit::Apart => {}
    }
    let mut w = WitnessChain::new(Route::FourierTypeScaling);
    mode_two_mismatch(&c, &mut w);
    Verdict::NonMetric { witness: w }
}

fn exponent(c: &Ctx, k: i64) -> Real {
    r_exponent(&c.a, &c.b, k).expect("k is nonzero")
}

fn resonant(c: &Ctx) -> Verdict {
    let mut w = WitnessChain::new(Route::ResonantOde);
    w.push("b", c.b.clone());
    w.push("r_1", exponent(c, 1));
    Verdict::NonMetric { witness: w }
}

/// `γ ≡ 0`: `β_k = 2|k|^a/b`, and the `e_2` coefficient of `u = e_1` gives
/// `3·2^a β_1 − (1+b) β_2 = 2^{a+1}(2−b)/b`, nonzero off `b = 2`.
fn mode_two_mismatch(c: &Ctx, w: &mut WitnessChain) {
    let two = c.real(2);
    let p2 = two.pow(&c.a);
    let beta1 = &two / &c.b;
    let beta2 = &two * &p2 / &c.b;
    let mismatch = c.real(3) * &p2 * &beta1 - (c.real(1) + &c.b) * &beta2;
    w.push("beta_1 = 2/b", beta1);
    w.push("beta_2 = 2*2^a/b", beta2);
    w.push("3*2^a*beta_1 - (1+b)*beta_2", mismatch);
}

fn scaling(c: &Ctx) -> Verdict {
    let mut w = WitnessChain::new(Route::ScalingContradiction);
    mode_two_mismatch(c, &mut w);
    if c.b.signum() > 0 {
        // gamma_p != 0 needs b = -2|p|^a < 0.
        w.push("gamma branch sign(b), needs -1", c.real(1));
        return Verdict::NonMetric { witness: w };
    }
    let target = -(&c.b / c.real(2));
    match gamma_branch_p(c, &target) {
        Some(p) => {
            // (rh) carries i p gamma_p on the constant mode, (lh) carries nothing.
            let pr = c.real(p);
            w.push("gamma branch p", pr.clone());
            w.push("gamma branch beta_p = 2|p|^a/b", &c.real(2) * pr.pow(&c.a) / &c.b);
            w.push("constant mode (lh)", c.real(0));
            w.push("constant mode (rh) / (i gamma_p)", pr);
        }
        None => w.push("gamma branch |p|^a = -b/2 (no integer p)", target),
    }
    Verdict::NonMetric { witness: w }
}

/// Smallest positive integer `p` with `p^a = target`, if any.
fn gamma_branch_p(c: &Ctx, target: &Real) -> Option<i64> {
    if c.a.is_zero() {
        return (c.hit(target, &c.real(1)) != Hit::Apart).then_some(1);
    }
    let guess = libm::round(libm::pow(target.to_f64(), 1.0 / c.a.to_f64()));
    if !(1.0..1e15).contains(&guess) {
        return None;
    }
    let p = guess as i64;
    let value = c.real(p).pow(&c.a);
    let close = if c.exact {
        &value == target
    } else {
        (value.to_f64() - target.to_f64()).abs() <= c.tol * target.to_f64().abs().max(1.0)
    };
    close.then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricity::Model;
    use crate::operators::FourierSymbol;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Real {
        Real::ratio(n, d)
    }

    fn opts() -> ClassifyOptions {
        ClassifyOptions::default()
    }

    fn zm(a: Real, b: Real) -> Verdict {
        classify_fourier_type(&a, &b, &opts())
    }

    fn fg(a: Real, b: Real) -> Verdict {
        classify_full_group(&a, &b, &opts())
    }

    fn fgf(a: Real, b: Real) -> Verdict {
        classify_full_group_fourier_type(&a, &b, &opts())
    }

    #[test]
    fn fourier_type_examples() {
        assert!(zm(Real::int(1), Real::int(-1)).is_non_metric());
        assert_eq!(zm(Real::int(1), Real::int(-1)).witness().unwrap().route, Route::VanishingOperator);
        assert!(zm(Real::int(1), Real::int(1)).is_non_metric());
        match zm(Real::int(2), Real::int(2)) {
            Verdict::Metric { b, symbol } => {
                assert_eq!(b, Real::int(2));
                assert_eq!(symbol, FourierSymbol::lambda_mu(Real::int(2), Domain::ZeroMean));
                assert_eq!(symbol.beta(3).unwrap(), Real::int(9));
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(
            zm(Real::int(1), r(1, 2)),
            Verdict::Undetermined { reason: UndeterminedReason::ExclusionSet, excluded_set_member: Some(r(1, 2)) }
        );
        assert!(zm(Real::int(2), r(1, 3)).is_non_metric());
    }

    #[test]
    fn quasi_geostrophic_witness() {
        let v = zm(Real::int(1), Real::int(1));
        let w = v.witness().unwrap();
        assert_eq!(w.route, Route::RecursionDoubling);
        assert_eq!(w.get("beta_4 (recursion)"), Some(&r(53, 6)));
        assert_eq!(w.get("beta_4 (doubling)"), Some(&Real::int(9)));
        assert_eq!(w.get("beta_4 residual"), Some(&r(-1, 6)));
        assert_eq!(w.get("P(b)"), Some(&Real::int(-24)));
        assert!(v.is_exact());
    }

    #[test]
    fn fourier_type_exclusions_at_a1() {
        for b in [r(-5, 3), r(-5, 4), r(-5, 7), r(1, 2)] {
            assert!(zm(Real::int(1), b).is_undetermined());
        }
        // a = 0: E_0 = {-1} wins over the b = -1 route.
        assert!(zm(Real::int(0), Real::int(-1)).is_undetermined());
        assert!(zm(Real::int(0), r(-1, 21)).is_undetermined());
    }

    #[test]
    fn fourier_type_b_zero_is_noted() {
        let v = zm(Real::int(1), Real::int(0));
        let w = v.witness().unwrap();
        assert_eq!(w.route, Route::RecursionDoubling);
        assert!(w.get("b (zero; decided by the doubling route)").is_some());
    }

    #[test]
    fn b2_beats_r_set_where_two_is_a_root() {
        // a1 vanishes near a = 1.53, putting 2 into R_a.
        let a = Real::Float(1.53);
        assert!(r_set(&a).roots.iter().any(|x| (x.to_f64() - 2.0).abs() < 0.1));
        assert!(zm(a, Real::Float(2.0)).is_metric());
    }

    #[test]
    fn full_group_examples() {
        match fg(Real::int(0), Real::int(2)) {
            Verdict::Metric { symbol, .. } => {
                assert_eq!(symbol.domain(), Domain::FullGroup);
                assert_eq!(symbol.beta(0).unwrap(), Real::int(1));
                assert_eq!(symbol.beta(5).unwrap(), Real::int(1));
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(fg(Real::int(2), Real::int(3)).witness().unwrap().route, Route::ScalingContradiction);
        assert_eq!(
            fg(Real::int(1), Real::int(-3)),
            Verdict::Undetermined { reason: UndeterminedReason::OutsideHypothesis, excluded_set_member: None }
        );
        assert_eq!(fg(Real::int(1), r(-1, 2)).witness().unwrap().route, Route::SignContradiction);
        assert_eq!(fg(Real::int(1), Real::int(-1)).witness().unwrap().route, Route::SignContradiction);
        assert!(fg(Real::int(3), Real::int(5)).is_non_metric());
        assert_eq!(fg(Real::int(2), Real::int(0)).witness().unwrap().route, Route::ResonantOde);
    }

    #[test]
    fn scaling_mismatch_value() {
        // 2^{a+1}(2-b)/b at a = 2, b = 3: 8·(-1)/3
        let v = fg(Real::int(2), Real::int(3));
        assert_eq!(v.witness().unwrap().get("3*2^a*beta_1 - (1+b)*beta_2"), Some(&r(-8, 3)));
    }

    #[test]
    fn gamma_branch_cases() {
        // a = 2, b = -8 = -2·2²: p = 2.
        let v = fg(Real::int(2), Real::int(-8));
        let w = v.witness().unwrap();
        assert_eq!(w.get("gamma branch p"), Some(&Real::int(2)));
        assert_eq!(w.get("gamma branch beta_p = 2|p|^a/b"), Some(&Real::int(-1)));
        // a = 2, b = -6: 3 is not a square.
        let v = fg(Real::int(2), Real::int(-6));
        assert_eq!(v.witness().unwrap().get("gamma branch |p|^a = -b/2 (no integer p)"), Some(&Real::int(3)));
        // a = 0, b = -2: every p works.
        let v = fg(Real::int(0), Real::int(-2));
        assert_eq!(v.witness().unwrap().get("gamma branch p"), Some(&Real::int(1)));
        // a = -1, b = -1 = -2/2: p = 2.
        let v = fg(Real::int(-1), Real::int(-1));
        assert_eq!(v.witness().unwrap().get("gamma branch p"), Some(&Real::int(2)));
    }

    #[test]
    fn extended_mode() {
        let ext = ClassifyOptions { extended: true, ..opts() };
        let v = classify_full_group(&Real::int(1), &r(-5, 2), &ext);
        let w = v.witness().unwrap();
        assert_eq!(w.route, Route::NonIntegerExponents);
        assert_eq!(w.get("r_1"), Some(&r(-3, 2)));
        assert_eq!(w.get("r_-1"), Some(&r(3, 2)));
        // Integer b <= -2 stays open even when extended.
        assert!(classify_full_group(&Real::int(1), &Real::int(-2), &ext).is_undetermined());
        assert!(classify_full_group(&Real::int(1), &r(-5, 2), &opts()).is_undetermined());
    }

    #[test]
    fn full_group_fourier_examples() {
        assert!(fgf(Real::int(1), r(-5, 4)).is_undetermined());
        assert!(fgf(Real::int(1), r(-5, 3)).is_undetermined());
        let v = fgf(Real::int(1), r(1, 2));
        assert_eq!(v.witness().unwrap().route, Route::FourierTypeScaling);
        match fgf(Real::int(1), Real::int(2)) {
            Verdict::Metric { symbol, .. } => {
                assert_eq!(symbol.beta(-4).unwrap(), Real::int(4));
                assert_eq!(symbol.beta(0).unwrap(), Real::int(1));
            }
            v => panic!("{v:?}"),
        }
        // Below -1 the corollary still decides.
        assert!(fgf(Real::int(1), Real::int(-3)).is_non_metric());
        assert_eq!(fgf(Real::int(1), Real::int(0)).witness().unwrap().route, Route::ResonantOde);
        assert_eq!(fgf(Real::int(2), Real::int(3)), fg(Real::int(2), Real::int(3)));
    }

    #[test]
    fn near_values_are_flagged() {
        let f = Real::Float;
        for v in [
            zm(f(1.0), f(0.5 + 1e-11)),
            zm(f(2.0), f(2.0 - 1e-12)),
            zm(f(1.0), f(-1.25 + 1e-10)),
            zm(f(1.0), f(-1.0 - 1e-10)),
            fg(f(1.0 + 1e-12), f(3.0)),
            fg(f(2.0), f(1e-12)),
            fg(f(1.0), f(-1.0 + 1e-12)),
        ] {
            assert!(matches!(v, Verdict::Undetermined { reason: UndeterminedReason::NearExclusion, .. }), "{v:?}");
        }
    }

    #[test]
    fn irrational_roots_in_float_mode() {
        let a = Real::Float(3.0);
        for root in r_set(&a).roots {
            assert!(zm(a.clone(), root.clone()).is_undetermined());
            assert!(zm(a.clone(), Real::Float(root.to_f64() + 1e-3)).is_non_metric());
        }
    }

    #[test]
    fn fractional_a_is_float_mode() {
        let v = zm(r(1, 2), Real::int(1));
        assert!(v.is_non_metric());
        assert!(!v.is_exact());
    }

    #[test]
    fn dispatcher_matches() {
        for m in Model::ALL {
            let v = classify(m, &Real::int(1), &Real::int(1), &opts());
            assert!(v.is_non_metric(), "{m:?}");
        }
    }

    fn small_rational() -> impl Strategy<Value = Real> {
        (-60i64..60, 1i64..13).prop_map(|(n, d)| Real::ratio(n, d))
    }

    proptest! {
        #[test]
        fn verdict_variant_is_mode_independent(a in 0i64..4, b in small_rational(), m in 0usize..3) {
            let model = Model::ALL[m];
            let exact = classify(model, &Real::int(a), &b, &opts());
            let float = classify(model, &Real::Float(a as f64), &b.to_float(), &opts());
            prop_assert_eq!(exact.label(), float.label(), "a = {}, b = {}", a, b);
            if let (Some(we), Some(wf)) = (exact.witness(), float.witness()) {
                prop_assert_eq!(we.route, wf.route);
            }
            prop_assert!(exact.is_exact());
        }

        #[test]
        fn route_consistency(a in 0i64..4, b in small_rational()) {
            let ar = Real::int(a);
            let v = classify_fourier_type(&ar, &b, &opts());
            let e = exclusion_set_e(&ar);
            match &v {
                Verdict::NonMetric { .. } => {
                    if !b.is_zero() && b != Real::int(-1) && !e.contains(&b) {
                        prop_assert!(!p_eval(&ar, &b).is_zero());
                    }
                }
                Verdict::Undetermined { .. } => {
                    prop_assert!(e.contains(&b) || q_eval(&ar, &b).is_zero());
                }
                Verdict::Metric { b: vb, .. } => prop_assert_eq!(vb, &Real::int(2)),
            }
        }

        #[test]
        fn metric_only_at_two(a in -3i64..4, b in small_rational(), m in 0usize..3) {
            let v = classify(Model::ALL[m], &Real::int(a), &b, &opts());
            prop_assert_eq!(v.is_metric(), b == Real::int(2));
        }

        #[test]
        fn float_grid_never_panics(a in -5.0f64..5.0, b in -5.0f64..5.0) {
            let labels: Vec<_> = Model::ALL
                .iter()
                .map(|&m| classify(m, &Real::Float(a), &Real::Float(b), &opts()).label())
                .collect();
            prop_assert_eq!(labels.len(), 3);
        }
    }
}
