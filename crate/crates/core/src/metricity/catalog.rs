//! Named members of the family.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{classify_fourier_type, classify_full_group, ClassifyOptions, MetricityError, Verdict};
use crate::operators::{Domain, EquationParams};
use crate::real::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub params: EquationParams,
    /// Zero mean for equations posed on vanishing-mean data, full group for
    /// the `μ` variants.
    pub domain: Domain,
    /// Verdict of the classifier matching `domain`.
    pub expected: Verdict,
}

/// One catalog row; `example` is a concrete name accepted by [`catalog`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogTemplate {
    pub name: &'static str,
    pub a: i64,
    pub b: &'static str,
    pub domain: Domain,
    pub example: &'static str,
}

const TEMPLATES: [CatalogTemplate; 9] = [
    CatalogTemplate { name: "burgers", a: 0, b: "2", domain: Domain::ZeroMean, example: "burgers" },
    CatalogTemplate { name: "hunter-saxton", a: 2, b: "2", domain: Domain::ZeroMean, example: "hunter-saxton" },
    CatalogTemplate { name: "muHS", a: 2, b: "2", domain: Domain::FullGroup, example: "muHS" },
    CatalogTemplate { name: "muDP", a: 2, b: "3", domain: Domain::FullGroup, example: "muDP" },
    CatalogTemplate { name: "de-gregorio", a: 1, b: "-1", domain: Domain::ZeroMean, example: "de-gregorio" },
    CatalogTemplate { name: "quasi-geostrophic", a: 1, b: "1", domain: Domain::ZeroMean, example: "quasi-geostrophic" },
    CatalogTemplate { name: "gclm(alpha)", a: 1, b: "-1/alpha", domain: Domain::ZeroMean, example: "gclm(-1/2)" },
    CatalogTemplate {
        name: "axisymmetric-euler(d)",
        a: 2,
        b: "(d-3)/(d-1)",
        domain: Domain::ZeroMean,
        example: "axisymmetric-euler(3)",
    },
    CatalogTemplate { name: "proudman-johnson(alpha)", a: 2, b: "-alpha", domain: Domain::ZeroMean, example: "proudman-johnson(1)" },
];

pub fn catalog_templates() -> &'static [CatalogTemplate] {
    &TEMPLATES
}

/// Looks up a named equation. Names are case-insensitive; parameterized
/// names take their argument in parentheses, e.g. `gclm(1/2)`,
/// `axisymmetric-euler(d=4)`, `proudman-johnson(-3)`.
pub fn catalog(name: &str) -> Result<CatalogEntry, MetricityError> {
    let unknown = || MetricityError::UnknownName(name.to_string());
    let trimmed = name.trim();
    let lower = trimmed.to_ascii_lowercase();
    let (head, arg) = match lower.find('(') {
        Some(open) => {
            let inner = lower[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
            (lower[..open].trim(), Some(inner.trim()))
        }
        None => (lower.as_str(), None),
    };
    let (a, b, domain) = match (head, arg) {
        ("burgers", None) => (0, Real::int(2), Domain::ZeroMean),
        ("hunter-saxton", None) => (2, Real::int(2), Domain::ZeroMean),
        ("muhs", None) => (2, Real::int(2), Domain::FullGroup),
        ("mudp", None) => (2, Real::int(3), Domain::FullGroup),
        ("de-gregorio", None) => (1, Real::int(-1), Domain::ZeroMean),
        ("quasi-geostrophic", None) => (1, Real::int(1), Domain::ZeroMean),
        ("gclm", Some(arg)) => {
            let alpha = parse_arg(head, arg, "alpha")?;
            if alpha.is_zero() {
                return Err(invalid(head, "alpha must be nonzero"));
            }
            (1, -(Real::one() / alpha), Domain::ZeroMean)
        }
        ("axisymmetric-euler", Some(arg)) => {
            let d = parse_arg(head, arg, "d")?.as_integer().ok_or_else(|| invalid(head, "d must be an integer"))?;
            if d < 2 {
                return Err(invalid(head, "d must be at least 2"));
            }
            (2, Real::ratio(d - 3, d - 1), Domain::ZeroMean)
        }
        ("proudman-johnson", Some(arg)) => (2, -parse_arg(head, arg, "alpha")?, Domain::ZeroMean),
        _ => return Err(unknown()),
    };
    let params = EquationParams::new(Real::int(a), b);
    let opts = ClassifyOptions::default();
    let expected = match domain {
        Domain::ZeroMean => classify_fourier_type(&params.a, &params.b, &opts),
        Domain::FullGroup => classify_full_group(&params.a, &params.b, &opts),
    };
    Ok(CatalogEntry { name: trimmed.to_string(), params, domain, expected })
}

fn invalid(name: &str, reason: &'static str) -> MetricityError {
    MetricityError::InvalidParameter { name: name.to_string(), reason }
}

fn parse_arg(head: &str, arg: &str, key: &str) -> Result<Real, MetricityError> {
    let value = arg.strip_prefix(key).and_then(|rest| rest.trim_start().strip_prefix('=')).unwrap_or(arg).trim();
    value.parse::<Real>().map_err(|_| invalid(head, "argument is not a number"))
}

/// Every template's example, in table order.
pub fn catalog_examples() -> Vec<CatalogEntry> {
    TEMPLATES.iter().map(|t| catalog(t.example).expect("examples are valid")).collect()
}
