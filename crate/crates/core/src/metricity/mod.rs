//! Decision procedures: does `(a, b)` admit a metric Euler realization?
//!
//! Three models are covered:
//!
//! - [`classify_full_group`]: any regular inertia operator on the full
//!   diffeomorphism group of the circle.
//! - [`classify_fourier_type`]: Fourier-multiplier inertia operators on
//!   zero-mean functions (the group modulo rotations).
//! - [`classify_full_group_fourier_type`]: Fourier-multiplier operators on
//!   the full group, first-order case `a = 1`.
//!
//! Every verdict is either `Metric` (only ever at `b = 2`), `NonMetric` with a
//! [`WitnessChain`] of reproducible algebraic facts, or `Undetermined` where
//! the underlying argument is silent.
//!
//! Exact rational arithmetic is used whenever `a` is an exact integer and `b`
//! is an exact rational. Otherwise values are doubles, and any `b` within
//! [`MEMBERSHIP_TOLERANCE`] of a value the argument must exclude is reported
//! as `Undetermined` rather than risking a wrong `NonMetric`.

mod catalog;
mod classify;
mod obstruction;
mod recursion;

pub use catalog::{catalog, catalog_examples, catalog_templates, CatalogEntry, CatalogTemplate};
pub use classify::{classify, classify_fourier_type, classify_full_group, classify_full_group_fourier_type};
pub use obstruction::{cubic_report, exclusion_set_e, p_eval, q_eval, q_poly, r_set, CubicCoefficients, CubicReport, RootSet};
pub use recursion::{beta_sequence, doubling_residuals, r_exponent, DoublingReport};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::operators::{Domain, FourierSymbol};
use crate::real::Real;

/// Absolute distance under which a floating `b` is treated as hitting a
/// value the argument excludes.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricityError {
    #[error("recursion denominator b(k^a+k)+k^(a+1)+1 vanishes at k = {k}")]
    DegenerateDenominator { k: usize },
    #[error("b = -1 forces the inertia operator to vanish")]
    BMinusOne,
    #[error("sequence length must be at least 1")]
    EmptySequence,
    #[error("mode index must be nonzero")]
    ZeroMode,
    #[error("unknown equation name `{0}`")]
    UnknownName(String),
    #[error("invalid parameter for `{name}`: {reason}")]
    InvalidParameter { name: String, reason: &'static str },
}

/// Which classification procedure to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// Arbitrary regular inertia operators on the full group.
    FullGroup,
    /// Fourier-type operators on zero-mean functions.
    ZeroMeanFourier,
    /// Fourier-type operators on the full group.
    FullGroupFourier,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::FullGroup => "full-group",
            Model::ZeroMeanFourier => "zero-mean-fourier",
            Model::FullGroupFourier => "full-group-fourier",
        }
    }

    pub fn parse(s: &str) -> Option<Model> {
        match s {
            "full-group" | "full" => Some(Model::FullGroup),
            "zero-mean-fourier" | "fourier" | "zero-mean" => Some(Model::ZeroMeanFourier),
            "full-group-fourier" | "full-fourier" => Some(Model::FullGroupFourier),
            _ => None,
        }
    }

    pub const ALL: [Model; 3] = [Model::FullGroup, Model::ZeroMeanFourier, Model::FullGroupFourier];
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyOptions {
    /// Decide `a = 1, b < -1` for non-integer `b` through the integrality of
    /// the exponents `r_k`. This goes beyond the published statement.
    pub extended: bool,
    pub tolerance: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { extended: false, tolerance: MEMBERSHIP_TOLERANCE }
    }
}

/// The argument that produced a `NonMetric` verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// `b = 0`: `r_k = k` for every mode, so `v_k` has no periodic solution.
    ResonantOde,
    /// Zero mean, `b = -1`: substituting `e_k` forces `A = 0`.
    VanishingOperator,
    /// Zero mean: `β_4` from the three-term recursion disagrees with the
    /// doubling relation (equivalently `P(b) ≠ 0`).
    RecursionDoubling,
    /// Full group, `a ≠ 1`: both exponential branches contradict `b ≠ 2`.
    ScalingContradiction,
    /// Full group, `a = 1, b ≥ -1`: an exponential branch needs `b < -1`.
    SignContradiction,
    /// Full group, `a = 1`, non-integer `b < -1` (extended reasoning).
    NonIntegerExponents,
    /// Full group, Fourier type: `v_k` has no exponential part, and the
    /// coefficient comparison at mode `2k` forces `b = 2`.
    FourierTypeScaling,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::ResonantOde => "resonant-ode",
            Route::VanishingOperator => "vanishing-operator",
            Route::RecursionDoubling => "recursion-doubling",
            Route::ScalingContradiction => "scaling-contradiction",
            Route::SignContradiction => "sign-contradiction",
            Route::NonIntegerExponents => "non-integer-exponents",
            Route::FourierTypeScaling => "fourier-type-scaling",
        }
    }
}

/// One labelled value in a witness chain.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessEntry {
    pub label: String,
    pub value: Real,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessChain {
    pub route: Route,
    pub entries: Vec<WitnessEntry>,
}

impl WitnessChain {
    fn new(route: Route) -> Self {
        WitnessChain { route, entries: Vec::new() }
    }

    fn push(&mut self, label: impl Into<String>, value: Real) {
        self.entries.push(WitnessEntry { label: label.into(), value });
    }

    pub fn get(&self, label: &str) -> Option<&Real> {
        self.entries.iter().find(|e| e.label == label).map(|e| &e.value)
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| e.value.is_exact())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UndeterminedReason {
    /// `b` lies in a set the argument explicitly excludes.
    ExclusionSet,
    /// A floating `b` (or `a`) is within tolerance of an excluded or
    /// case-splitting value.
    NearExclusion,
    /// `a = 1, b < -1`: outside the range the argument covers.
    OutsideHypothesis,
}

impl fmt::Display for UndeterminedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UndeterminedReason::ExclusionSet => "b lies in the excluded set",
            UndeterminedReason::NearExclusion => "floating-point b is within tolerance of an excluded value",
            UndeterminedReason::OutsideHypothesis => "a = 1 with b < -1 is not covered",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Metric { b: Real, symbol: FourierSymbol },
    NonMetric { witness: WitnessChain },
    Undetermined { reason: UndeterminedReason, excluded_set_member: Option<Real> },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Metric { .. } => "metric",
            Verdict::NonMetric { .. } => "non-metric",
            Verdict::Undetermined { .. } => "undetermined",
        }
    }

    pub fn is_metric(&self) -> bool {
        matches!(self, Verdict::Metric { .. })
    }

    pub fn is_non_metric(&self) -> bool {
        matches!(self, Verdict::NonMetric { .. })
    }

    pub fn is_undetermined(&self) -> bool {
        matches!(self, Verdict::Undetermined { .. })
    }

    pub fn witness(&self) -> Option<&WitnessChain> {
        match self {
            Verdict::NonMetric { witness } => Some(witness),
            _ => None,
        }
    }

    /// Whether every number carried by the verdict is exact.
    pub fn is_exact(&self) -> bool {
        match self {
            Verdict::Metric { b, symbol } => {
                b.is_exact() && symbol.exponent().is_none_or(|a| a.is_exact() && a.as_integer().is_some())
            }
            Verdict::NonMetric { witness } => witness.is_exact(),
            Verdict::Undetermined { excluded_set_member, reason } => {
                *reason != UndeterminedReason::NearExclusion && excluded_set_member.as_ref().is_none_or(Real::is_exact)
            }
        }
    }

    fn metric(a: &Real, domain: Domain) -> Verdict {
        Verdict::Metric { b: Real::int(2), symbol: FourierSymbol::lambda_mu(a.clone(), domain) }
    }
}
