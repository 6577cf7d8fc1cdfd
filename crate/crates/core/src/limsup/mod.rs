//! Index tuples, Δ-sets and the limsup-set reformulation of
//! `{Y : ω×(Y,θ) > η}`.
//!
//! A pair `(u, v) ∈ ℤ₊^m × ℤ₊^n` with `σ(u) >= η σ(v)` determines
//! `ξ = (σ(u) - η σ(v)) / (m + η n)` and the tuple
//! `t = (u_1 - [ξ], ..., u_m - [ξ], v_1 + [ξ], ..., v_n + [ξ])`.
//! The set of all such tuples is `𝐓`; everything else in this module is
//! exact degree arithmetic on `a_t U_Y^θ α`.

mod delta;
mod plane;
mod tset;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use delta::{
    a_t_degree, delta_membership, intersection_check, prop_backward_check, prop_forward_check,
    witness_extract_uv, AtVariant, BackwardCheck, ForwardCheck, ForwardParams, IntersectionCheck,
    IntersectionOutcome, Membership,
};
pub use plane::{plane_identity_check, plane_member, PlaneIdentityCheck, PlaneSpec};
pub use tset::{
    audit_grid, grid_bound, tset_enumerate, tset_oracle, AuditSummary, TsetEnumeration, TupleCount,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TsetMode {
    /// Independent `u ∈ ℤ₊^m`, `v ∈ ℤ₊^n`.
    Multiplicative,
    /// Constant `u = (u, ..., u)` and `v = (v, ..., v)`, for the standard exponent.
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TsetParams {
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub eta: Rational,
    pub mode: TsetMode,
}

impl TsetParams {
    pub fn new(m: usize, n: usize, eta: Rational, mode: TsetMode) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput("m and n must be positive".into()));
        }
        if eta < Rational::one() {
            return Err(Error::InvalidInput(format!(
                "eta must be at least 1, got {}",
                rational::display(eta)
            )));
        }
        Ok(TsetParams { m, n, eta, mode })
    }

    fn mn(&self) -> (Rational, Rational) {
        (Rational::from(self.m as i64), Rational::from(self.n as i64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub u: Vec<i64>,
    pub v: Vec<i64>,
    #[serde(serialize_with = "rational::serialize")]
    pub xi: Rational,
    pub xi_floor: i64,
}

/// `t ∈ ℤ^{m+n}` with `σ(t) = Σ t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexTuple {
    pub t: Vec<i64>,
    pub sigma: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl IndexTuple {
    pub fn new(t: Vec<i64>) -> Self {
        IndexTuple {
            sigma: t.iter().sum(),
            t,
            provenance: None,
        }
    }
}

/// `ξ = (σ(u) - η σ(v)) / (m + η n)`.
pub fn xi(sigma_u: i64, sigma_v: i64, params: &TsetParams) -> Rational {
    let (m, n) = params.mn();
    (Rational::from(sigma_u) - params.eta * Rational::from(sigma_v)) / (m + params.eta * n)
}

fn expand(x: &[i64], len: usize, what: &str) -> Result<Vec<i64>> {
    match x {
        [c] => Ok(vec![*c; len]),
        _ if x.len() == len && x.windows(2).all(|w| w[0] == w[1]) => Ok(x.to_vec()),
        _ => Err(Error::InvalidInput(format!(
            "dual mode needs a scalar or constant {what}, got {x:?}"
        ))),
    }
}

/// Builds `t` from `(u, v)`, or `None` when `σ(u) < η σ(v)`.
pub fn xi_and_t(u: &[i64], v: &[i64], params: &TsetParams) -> Result<Option<IndexTuple>> {
    let (u, v) = match params.mode {
        TsetMode::Multiplicative => (u.to_vec(), v.to_vec()),
        TsetMode::Dual => (expand(u, params.m, "u")?, expand(v, params.n, "v")?),
    };
    if u.len() != params.m || v.len() != params.n {
        return Err(Error::DimensionMismatch(format!(
            "u has {} entries and v has {}, expected {} and {}",
            u.len(),
            v.len(),
            params.m,
            params.n
        )));
    }
    if u.iter().chain(&v).any(|&x| x < 0) {
        return Err(Error::InvalidInput("u and v must be non-negative".into()));
    }
    let (su, sv): (i64, i64) = (u.iter().sum(), v.iter().sum());
    if Rational::from(su) < params.eta * Rational::from(sv) {
        return Ok(None);
    }
    let x = xi(su, sv, params);
    let fx = rational::floor(x);
    let t: Vec<i64> = u
        .iter()
        .map(|&a| a - fx)
        .chain(v.iter().map(|&b| b + fx))
        .collect();
    let mut tuple = IndexTuple::new(t);
    tuple.provenance = Some(Provenance {
        u,
        v,
        xi: x,
        xi_floor: fx,
    });
    Ok(Some(tuple))
}

/// `τ₀ = min{ε, η} / (2 (η + 1)(m + η n))`.
pub fn tau0(eps: Rational, params: &TsetParams) -> Result<Rational> {
    if eps <= Rational::zero() {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let (m, n) = params.mn();
    let two = Rational::from(2);
    Ok(eps.min(params.eta) / (two * (params.eta + Rational::one()) * (m + params.eta * n)))
}

/// Exact inequalities relating `σ(t)` to `σ(u)` and `σ(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaAudit {
    /// `(η+1) σ(v) <= σ(t)`.
    pub v_side: bool,
    /// `σ(t) <= (η+1)/η · σ(u)`.
    pub u_side: bool,
    /// `σ(t) >= (η+1)/(m+ηn) · (n σ(u) + m σ(v))`, as stated for all `m, n`.
    pub weighted: bool,
    /// The same bound lowered by `max(0, n - m)`, which holds for all `m, n`.
    pub weighted_with_slack: bool,
    pub nonnegative: bool,
}

impl SigmaAudit {
    pub fn all_hold(&self) -> bool {
        self.v_side && self.u_side && self.weighted && self.weighted_with_slack && self.nonnegative
    }
}

/// Audits a tuple built by [`xi_and_t`].
pub fn audit_sigma(tuple: &IndexTuple, params: &TsetParams) -> Result<SigmaAudit> {
    let prov = tuple
        .provenance
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("tuple has no (u, v) provenance".into()))?;
    let (m, n) = params.mn();
    let eta = params.eta;
    let one = Rational::one();
    let su = Rational::from(prov.u.iter().sum::<i64>());
    let sv = Rational::from(prov.v.iter().sum::<i64>());
    let st = Rational::from(tuple.sigma);
    let weighted = (eta + one) / (m + eta * n) * (n * su + m * sv);
    let slack = Rational::from((params.n as i64 - params.m as i64).max(0));
    Ok(SigmaAudit {
        v_side: (eta + one) * sv <= st,
        u_side: st <= (eta + one) / eta * su,
        weighted: st >= weighted,
        weighted_with_slack: st >= weighted - slack,
        nonnegative: tuple.sigma >= 0,
    })
}
