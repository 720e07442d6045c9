//! Inertia operators as Fourier multipliers and the operators built on them.
//!
//! An inertia operator of Fourier type acts by `c_k ↦ β_k c_k`. On the full
//! group the symbol includes `β_0`; on the zero-mean space the `k = 0` mode is
//! outside the domain. `Λ_μ^a` has symbol `|k|^a` for `k ≠ 0` and `β_0 = 1`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::real::Real;
use crate::spectral::{Scalar, TrigPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// All smooth functions; the symbol carries a `k = 0` entry.
    FullGroup,
    /// Functions with vanishing mean; `k = 0` is excluded.
    ZeroMean,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::FullGroup => "full",
            Domain::ZeroMean => "zero-mean",
        }
    }
}

/// `(a, b)` selecting `m_t + u m_x + b u_x m = 0`, `m = Λ_μ^a u`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationParams {
    pub a: Real,
    pub b: Real,
}

impl EquationParams {
    pub fn new(a: impl Into<Real>, b: impl Into<Real>) -> Self {
        EquationParams { a: a.into(), b: b.into() }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OperatorError {
    #[error("input has nonzero mean {mean} but the operator acts on zero-mean functions")]
    DomainViolation { mean: f64 },
    #[error("mode k = {k} is outside the symbol's domain")]
    OutsideDomain { k: i64 },
    #[error("symbol value at k = {k} is not exactly representable")]
    InexactSymbol { k: i64 },
    #[error("parameter b = {0} is not exactly representable")]
    InexactParameter(Real),
    #[error("symbol table has no entry for k = {k}")]
    MissingMode { k: i64 },
    #[error("symbol is not even: beta_{k} != beta_{neg}", neg = -k)]
    Asymmetric { k: i64 },
    #[error("symbol vanishes or is non-finite at k = {k}")]
    Singular { k: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolRule {
    /// `|k|^a` on `k ≠ 0`, and `β_0 = 1` on the full group.
    Power(Real),
    /// Explicit values; `β_{-k}` falls back to `β_k`.
    Table(BTreeMap<i64, Real>),
}

/// Real, even, nowhere-vanishing Fourier symbol `(β_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSymbol {
    domain: Domain,
    rule: SymbolRule,
}

/// `Λ_μ^a` on the given domain (`(-Δ)^{a/2}` on zero-mean functions).
pub fn lambda_mu_symbol(a: Real, domain: Domain) -> FourierSymbol {
    FourierSymbol::lambda_mu(a, domain)
}

impl FourierSymbol {
    pub fn lambda_mu(a: Real, domain: Domain) -> Self {
        FourierSymbol { domain, rule: SymbolRule::Power(a) }
    }

    /// Validates an explicit table: finite nonzero values, `β_k = β_{-k}` where
    /// both are given, `β_0` only on the full group.
    pub fn from_table<I>(domain: Domain, entries: I) -> Result<Self, OperatorError>
    where
        I: IntoIterator<Item = (i64, Real)>,
    {
        let mut table = BTreeMap::new();
        for (k, v) in entries {
            if k == 0 && domain == Domain::ZeroMean {
                return Err(OperatorError::OutsideDomain { k });
            }
            if v.is_zero() || !v.is_finite() {
                return Err(OperatorError::Singular { k });
            }
            if let Some(prev) = table.get(&k) {
                if prev != &v {
                    return Err(OperatorError::Asymmetric { k });
                }
            }
            table.insert(k, v);
        }
        for (k, v) in &table {
            if let Some(mirror) = table.get(&-k) {
                if mirror != v {
                    return Err(OperatorError::Asymmetric { k: *k });
                }
            }
        }
        Ok(FourierSymbol { domain, rule: SymbolRule::Table(table) })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rule(&self) -> &SymbolRule {
        &self.rule
    }

    /// The exponent `a` if this is a power symbol.
    pub fn exponent(&self) -> Option<&Real> {
        match &self.rule {
            SymbolRule::Power(a) => Some(a),
            SymbolRule::Table(_) => None,
        }
    }

    /// `β_k`.
    pub fn beta(&self, k: i64) -> Result<Real, OperatorError> {
        if k == 0 && self.domain == Domain::ZeroMean {
            return Err(OperatorError::OutsideDomain { k });
        }
        match &self.rule {
            SymbolRule::Power(a) => {
                if k == 0 || a.is_zero() {
                    Ok(Real::one())
                } else {
                    Ok(Real::int(k.abs()).pow(a))
                }
            }
            SymbolRule::Table(t) => t
                .get(&k)
                .or_else(|| t.get(&-k))
                .cloned()
                .ok_or(OperatorError::MissingMode { k }),
        }
    }

    /// `β_k` in the coefficient field `T`.
    pub fn beta_as<T: Scalar>(&self, k: i64) -> Result<T, OperatorError> {
        let v = self.beta(k)?;
        T::from_real(&v).ok_or(OperatorError::InexactSymbol { k })
    }

    /// `(k, β_k)` for `|k| ≤ max_k` within the domain.
    pub fn tabulate(&self, max_k: usize) -> Result<Vec<(i64, Real)>, OperatorError> {
        let n = max_k as i64;
        (-n..=n)
            .filter(|&k| !(k == 0 && self.domain == Domain::ZeroMean))
            .map(|k| self.beta(k).map(|v| (k, v)))
            .collect()
    }

    /// `c_k ↦ β_k c_k`.
    pub fn apply<T: Scalar>(&self, p: &TrigPoly<T>) -> Result<TrigPoly<T>, OperatorError> {
        check_domain(self.domain, p)?;
        self.multiply_symbol(p, false)
    }

    /// `c_k ↦ c_k / β_k`.
    pub fn apply_inverse<T: Scalar>(&self, p: &TrigPoly<T>) -> Result<TrigPoly<T>, OperatorError> {
        check_domain(self.domain, p)?;
        self.multiply_symbol(p, true)
    }

    /// On the zero-mean space, drops the `k = 0` mode first. Only used on
    /// brackets whose mean vanishes identically for real inputs.
    fn apply_projected<T: Scalar>(&self, p: &TrigPoly<T>, inverse: bool) -> Result<TrigPoly<T>, OperatorError> {
        match self.domain {
            Domain::FullGroup => self.multiply_symbol(p, inverse),
            Domain::ZeroMean => self.multiply_symbol(&p.without_mean(), inverse),
        }
    }

    fn multiply_symbol<T: Scalar>(&self, p: &TrigPoly<T>, inverse: bool) -> Result<TrigPoly<T>, OperatorError> {
        p.try_map_modes(|k, c| {
            if k == 0 && self.domain == Domain::ZeroMean {
                return Ok(c.clone());
            }
            if c.re.is_zero() && c.im.is_zero() {
                return Ok(c.clone());
            }
            let beta: T = self.beta_as(k)?;
            Ok(if inverse {
                Complex::new(c.re.clone() / beta.clone(), c.im.clone() / beta)
            } else {
                Complex::new(c.re.clone() * beta.clone(), c.im.clone() * beta)
            })
        })
    }
}

fn check_domain<T: Scalar>(domain: Domain, p: &TrigPoly<T>) -> Result<(), OperatorError> {
    if domain == Domain::ZeroMean {
        let c0 = p.coeff(0);
        if !(c0.re.is_zero() && c0.im.is_zero()) {
            return Err(OperatorError::DomainViolation { mean: c0.re.to_f64() });
        }
    }
    Ok(())
}

fn param_b<T: Scalar>(params: &EquationParams) -> Result<T, OperatorError> {
    T::from_real(&params.b).ok_or_else(|| OperatorError::InexactParameter(params.b.clone()))
}

/// `2 Au·v_x + 2 Av·u_x + u·(Av)_x + v·(Au)_x`.
fn christoffel_bracket<T: Scalar>(au: &TrigPoly<T>, av: &TrigPoly<T>, u: &TrigPoly<T>, v: &TrigPoly<T>) -> TrigPoly<T> {
    let two = T::from_i64(2);
    let t1 = au.multiply(&v.derivative()).scale(&two);
    let t2 = av.multiply(&u.derivative()).scale(&two);
    let t3 = u.multiply(&av.derivative());
    let t4 = v.multiply(&au.derivative());
    &(&t1 + &t2) + &(&t3 + &t4)
}

/// Christoffel operator `B(u,v) = ½A⁻¹[2Au·v_x + 2Av·u_x + u·(Av)_x + v·(Au)_x]`.
pub fn christoffel<T: Scalar>(
    a_op: &FourierSymbol,
    u: &TrigPoly<T>,
    v: &TrigPoly<T>,
) -> Result<TrigPoly<T>, OperatorError> {
    check_domain(a_op.domain, u)?;
    check_domain(a_op.domain, v)?;
    let au = a_op.apply(u)?;
    let av = a_op.apply(v)?;
    let bracket = christoffel_bracket(&au, &av, u, v);
    let half = T::one() / T::from_i64(2);
    a_op.apply_projected(&bracket.scale(&half), true)
}

/// `b·m·u_x + u·m_x` with `m = Λu`.
fn transport_stretch<T: Scalar>(b: &T, m: &TrigPoly<T>, u: &TrigPoly<T>) -> TrigPoly<T> {
    let stretch = m.multiply(&u.derivative()).scale(b);
    let transport = u.multiply(&m.derivative());
    &stretch + &transport
}

/// `u_t` for the family: `u_t = -(Λ_μ^a)⁻¹[b Λ_μ^a u · u_x + u · (Λ_μ^a u)_x]`.
///
/// At `b = 2` this equals `-christoffel(Λ_μ^a, u, u)`.
pub fn family_rhs<T: Scalar>(
    params: &EquationParams,
    domain: Domain,
    u: &TrigPoly<T>,
) -> Result<TrigPoly<T>, OperatorError> {
    let lambda = lambda_mu_symbol(params.a.clone(), domain);
    let b: T = param_b(params)?;
    let m = lambda.apply(u)?;
    let w = transport_stretch(&b, &m, u);
    Ok(-&lambda.apply_projected(&w, true)?)
}

/// `m_t = -(u m_x + b u_x m)`, the momentum form of the family.
pub fn family_rhs_momentum<T: Scalar>(
    params: &EquationParams,
    domain: Domain,
    u: &TrigPoly<T>,
) -> Result<TrigPoly<T>, OperatorError> {
    let lambda = lambda_mu_symbol(params.a.clone(), domain);
    let b: T = param_b(params)?;
    let m = lambda.apply(u)?;
    Ok(-&transport_stretch(&b, &m, u))
}

/// Residual of the metricity identity for a candidate inertia operator `A`.
///
/// Full group: `A⁻¹[2Au u' + u(Au)'] - (Λ_μ^a)⁻¹[bΛ_μ^a u u' + u(Λ_μ^a u)']`.
/// Zero mean (premultiplied, no inverses): `Λ^a[2Au u' + u(Au)'] -
/// A[bΛ^a u u' + u(Λ^a u)']`. The result vanishes iff the identity holds at `u`.
pub fn funda_residual<T: Scalar>(
    a_op: &FourierSymbol,
    params: &EquationParams,
    u: &TrigPoly<T>,
) -> Result<TrigPoly<T>, OperatorError> {
    let domain = a_op.domain;
    check_domain(domain, u)?;
    let lambda = lambda_mu_symbol(params.a.clone(), domain);
    let b: T = param_b(params)?;
    let au = a_op.apply(u)?;
    let lhs_inner = transport_stretch(&T::from_i64(2), &au, u);
    let m = lambda.apply(u)?;
    let rhs_inner = transport_stretch(&b, &m, u);
    match domain {
        Domain::FullGroup => {
            let lhs = a_op.apply_projected(&lhs_inner, true)?;
            let rhs = lambda.apply_projected(&rhs_inner, true)?;
            Ok(&lhs - &rhs)
        }
        Domain::ZeroMean => {
            let lhs = lambda.apply_projected(&lhs_inner, false)?;
            let rhs = a_op.apply_projected(&rhs_inner, false)?;
            Ok(&lhs - &rhs)
        }
    }
}
