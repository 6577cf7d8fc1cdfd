//! Enumeration of `{t ∈ 𝐓 : σ(t) <= S}`.
//!
//! Every `(u, v)` producing such a `t` satisfies
//! `n σ(u) + m σ(v) <= (m+ηn)/(η+1) · (S + max(0, n-m))`, so the search is
//! confined to a finite simplex of `(σ(u), σ(v))` pairs.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{audit_sigma, xi_and_t, SigmaAudit, TsetMode, TsetParams};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleCount {
    pub t: Vec<i64>,
    pub sigma: i64,
    /// Number of grid pairs `(u, v)` mapping to `t`.
    pub multiplicity: u64,
}

/// Violation counts of the σ inequalities over all accepted pairs visited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub pairs: u64,
    pub v_side: u64,
    pub u_side: u64,
    pub weighted: u64,
    pub weighted_with_slack: u64,
    pub negative: u64,
}

impl AuditSummary {
    fn record(&mut self, a: &SigmaAudit) {
        self.pairs += 1;
        self.v_side += !a.v_side as u64;
        self.u_side += !a.u_side as u64;
        self.weighted += !a.weighted as u64;
        self.weighted_with_slack += !a.weighted_with_slack as u64;
        self.negative += !a.nonnegative as u64;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TsetEnumeration {
    pub params: TsetParams,
    pub sigma_bound: i64,
    #[serde(serialize_with = "rational::serialize")]
    pub tau: Rational,
    /// Distinct tuples in lexicographic order.
    pub tuples: Vec<TupleCount>,
    /// `σ ↦ #{t : σ(t) = σ}`, the formal partial sum `Σ e^{-τσ(t)}`.
    pub level_counts: BTreeMap<i64, u64>,
    pub audit: AuditSummary,
}

impl TsetEnumeration {
    pub fn multiplicities(&self) -> BTreeMap<Vec<i64>, u64> {
        self.tuples
            .iter()
            .map(|c| (c.t.clone(), c.multiplicity))
            .collect()
    }
}

/// Upper bound on `n σ(u) + m σ(v)` for pairs reaching `σ(t) <= S`.
pub fn grid_bound(params: &TsetParams, sigma_bound: i64) -> Rational {
    let (m, n) = params.mn();
    let slack = (params.n as i64 - params.m as i64).max(0);
    (m + params.eta * n) / (params.eta + Rational::one()) * Rational::from(sigma_bound + slack)
}

/// All ways of writing `total` as an ordered sum of `parts` non-negative integers.
fn compositions(total: i64, parts: usize, out: &mut Vec<Vec<i64>>) {
    fn go(rest: i64, parts: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=rest {
            cur.push(first);
            go(rest - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    go(total, parts, &mut Vec::with_capacity(parts), out);
}

/// Visits `(u, v)` shapes for a given `(σ(u), σ(v))`.
fn shapes(su: i64, sv: i64, params: &TsetParams) -> Vec<(Vec<i64>, Vec<i64>)> {
    match params.mode {
        TsetMode::Multiplicative => {
            let (mut us, mut vs) = (Vec::new(), Vec::new());
            compositions(su, params.m, &mut us);
            compositions(sv, params.n, &mut vs);
            us.iter()
                .flat_map(|u| vs.iter().map(move |v| (u.clone(), v.clone())))
                .collect()
        }
        TsetMode::Dual => {
            let (m, n) = (params.m as i64, params.n as i64);
            if su % m == 0 && sv % n == 0 {
                vec![(vec![su / m], vec![sv / n])]
            } else {
                Vec::new()
            }
        }
    }
}

/// Enumerates every `t ∈ 𝐓` with `σ(t) <= sigma_bound`, with multiplicities.
pub fn tset_enumerate(
    params: &TsetParams,
    sigma_bound: i64,
    tau: Rational,
) -> Result<TsetEnumeration> {
    if tau <= Rational::zero() {
        return Err(Error::InvalidInput("tau must be positive".into()));
    }
    let mut found: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let mut audit = AuditSummary::default();
    if sigma_bound >= 0 {
        let limit = rational::floor(grid_bound(params, sigma_bound));
        let (m, n) = (params.m as i64, params.n as i64);
        for su in 0..=limit / n {
            for sv in 0..=(limit - n * su) / m {
                for (u, v) in shapes(su, sv, params) {
                    let Some(tuple) = xi_and_t(&u, &v, params)? else {
                        continue;
                    };
                    audit.record(&audit_sigma(&tuple, params)?);
                    if tuple.sigma <= sigma_bound {
                        *found.entry(tuple.t).or_default() += 1;
                    }
                }
            }
        }
    }
    Ok(summarize(*params, sigma_bound, tau, found, audit))
}

/// Audits the σ inequalities for every accepted pair with `σ(u) + σ(v) <= total`.
pub fn audit_grid(params: &TsetParams, total: i64) -> Result<AuditSummary> {
    let mut audit = AuditSummary::default();
    for su in 0..=total {
        for sv in 0..=total - su {
            for (u, v) in shapes(su, sv, params) {
                if let Some(tuple) = xi_and_t(&u, &v, params)? {
                    audit.record(&audit_sigma(&tuple, params)?);
                }
            }
        }
    }
    Ok(audit)
}

fn summarize(
    params: TsetParams,
    sigma_bound: i64,
    tau: Rational,
    found: BTreeMap<Vec<i64>, u64>,
    audit: AuditSummary,
) -> TsetEnumeration {
    let mut level_counts = BTreeMap::new();
    let tuples = found
        .into_iter()
        .map(|(t, multiplicity)| {
            let sigma = t.iter().sum();
            *level_counts.entry(sigma).or_default() += 1;
            TupleCount {
                t,
                sigma,
                multiplicity,
            }
        })
        .collect();
    TsetEnumeration {
        params,
        sigma_bound,
        tau,
        tuples,
        level_counts,
        audit,
    }
}

/// Brute force over the box `[0, side]^{m+n}` of `(u, v)`, independent of
/// the grid bound. Agreement for `side` and `2·side` means the box saturated.
pub fn tset_oracle(
    params: &TsetParams,
    sigma_bound: i64,
    side: i64,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    let (du, dv) = match params.mode {
        TsetMode::Multiplicative => (params.m, params.n),
        TsetMode::Dual => (1, 1),
    };
    let dims = du + dv;
    let mut found = BTreeMap::new();
    let mut x = vec![0i64; dims];
    loop {
        if let Some(tuple) = xi_and_t(&x[..du], &x[du..], params)? {
            if tuple.sigma <= sigma_bound {
                *found.entry(tuple.t).or_default() += 1;
            }
        }
        let mut k = 0;
        while k < dims && x[k] == side {
            x[k] = 0;
            k += 1;
        }
        if k == dims {
            break;
        }
        x[k] += 1;
    }
    Ok(found)
}
