//! Checkers for the transference inequalities.
//!
//! Exact integer inequalities between profiles are hard checks. Statements
//! about limits (Bugeaud-Zhang, Dyson, the lower-bound chain) are compared
//! on window proxies with a tolerance and reported as diagnostics.

use num_traits::{One, Signed, Zero};

use crate::algebra::{Deg, Field, LaurentSeries, MatrixF};
use crate::error::{Error, Result};
use crate::exponents::{
    estimate, profile, ExponentEstimate, ExponentProfile, ExponentValue, ProfileKind,
};
use crate::rational::{self, Rational};
use crate::report::{CheckReport, Severity, Status};

/// `-B(T) >= T + m - mn` at every uncensored horizon.
pub fn check_dirichlet_bound(p: &ExponentProfile) -> Result<CheckReport> {
    if p.kind != ProfileKind::Standard {
        return Err(Error::InvalidInput(
            "the Dirichlet bound applies to standard profiles".into(),
        ));
    }
    let slack = p.m as i64 - (p.m * p.n) as i64;
    let mut holds = true;
    let mut worst: Option<i64> = None;
    let mut details = Vec::new();
    for e in p.entries.iter().filter(|e| !e.censored) {
        let need = e.t as i64 + slack;
        let ok = match e.b.deg {
            Deg::NegInf => true,
            Deg::Fin(l) => {
                let margin = -l - need;
                worst = Some(worst.map_or(margin, |w| w.min(margin)));
                margin >= 0
            }
        };
        holds &= ok;
        details.push(format!(
            "T={}: -B={} >= {need}: {ok}",
            e.t,
            neg_display(e.b.deg)
        ));
    }
    let mut r = CheckReport::exact("dirichlet_bound", holds)
        .sides(worst.map_or("inf".into(), |w| w.to_string()), 0);
    r.details = details;
    Ok(r)
}

fn neg_display(d: Deg) -> String {
    match d {
        Deg::NegInf => "inf".into(),
        Deg::Fin(l) => (-l).to_string(),
    }
}

/// `B×(T) <= B(T)` at every horizon where `B(T)` is uncensored.
pub fn check_mult_dominance(std: &ExponentProfile, mult: &ExponentProfile) -> Result<CheckReport> {
    if std.kind != ProfileKind::Standard || mult.kind != ProfileKind::Multiplicative {
        return Err(Error::InvalidInput(
            "expected a standard and a multiplicative profile".into(),
        ));
    }
    if (std.m, std.n, std.t_max) != (mult.m, mult.n, mult.t_max) {
        return Err(Error::DimensionMismatch(
            "profiles differ in shape or horizon".into(),
        ));
    }
    let mut status = Status::Holds;
    let mut details = Vec::new();
    for (s, x) in std.entries.iter().zip(&mult.entries) {
        if s.censored {
            continue;
        }
        let ok = x.b.deg <= s.b.deg;
        let st = match (ok, x.censored) {
            (true, _) => Status::Holds,
            (false, true) => Status::Inconclusive,
            (false, false) => Status::Fails,
        };
        status = status.max(st);
        details.push(format!("T={}: B×={} <= B={}: {ok}", s.t, x.b, s.b));
    }
    let mut r = CheckReport::new("mult_dominance", Severity::Exact, status);
    r.details = details;
    Ok(r)
}

fn reciprocal(v: ExponentValue) -> ExponentValue {
    match v {
        ExponentValue::Infinite => ExponentValue::Finite(Rational::zero()),
        ExponentValue::Finite(r) if r.is_zero() => ExponentValue::Infinite,
        ExponentValue::Finite(r) => ExponentValue::Finite(r.recip()),
    }
}

/// `lhs >= rhs - tol` on extended values.
fn at_least(lhs: ExponentValue, rhs: ExponentValue, tol: Rational) -> bool {
    match (lhs, rhs) {
        (ExponentValue::Infinite, _) => true,
        (_, ExponentValue::Infinite) => false,
        (ExponentValue::Finite(a), ExponentValue::Finite(b)) => a >= b - tol,
    }
}

fn homogeneous_estimate(y: &MatrixF, t_max: u32, f: &Field) -> Result<ExponentEstimate> {
    let zero = vec![LaurentSeries::zero(); y.rows()];
    estimate(&profile(y, &zero, t_max, ProfileKind::Standard, f)?)
}

/// Turns a window error into an inconclusive report.
fn estimate_or_inconclusive(
    name: &str,
    r: Result<ExponentEstimate>,
) -> Result<std::result::Result<ExponentEstimate, CheckReport>> {
    match r {
        Ok(e) if e.censored => Ok(Err(CheckReport::new(
            name,
            Severity::Diagnostic,
            Status::Inconclusive,
        )
        .with_note("censored profile entries in the window"))),
        Ok(e) => Ok(Ok(e)),
        Err(e) if e.is_precision() => Ok(Err(CheckReport::new(
            name,
            Severity::Diagnostic,
            Status::Inconclusive,
        )
        .with_note(e.to_string()))),
        Err(e) => Err(e),
    }
}

/// `ω(Y,θ) >= 1/ω̂(Yᵗ) - tol` and `ω̂(Y,θ) >= 1/ω(Yᵗ) - tol` on window proxies.
pub fn check_bz(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t_max: u32,
    tol: Rational,
    f: &Field,
) -> Result<CheckReport> {
    const NAME: &str = "bugeaud_zhang";
    let direct = estimate(&profile(y, theta, t_max, ProfileKind::Standard, f)?);
    let direct = match estimate_or_inconclusive(NAME, direct)? {
        Ok(e) => e,
        Err(r) => return Ok(r.with_tolerance(tol)),
    };
    let dual = match estimate_or_inconclusive(NAME, homogeneous_estimate(&y.transpose(), t_max, f))?
    {
        Ok(e) => e,
        Err(r) => return Ok(r.with_tolerance(tol)),
    };
    if direct.infinite || dual.infinite {
        return Ok(CheckReport::new(NAME, Severity::Diagnostic, Status::Holds)
            .with_tolerance(tol)
            .with_note("infinite proxy"));
    }
    let rhs1 = reciprocal(dual.omega_hat_proxy);
    let rhs2 = reciprocal(dual.omega_proxy);
    let ok1 = at_least(direct.omega_proxy, rhs1, tol);
    let ok2 = at_least(direct.omega_hat_proxy, rhs2, tol);
    let status = if ok1 && ok2 {
        Status::Holds
    } else {
        Status::Fails
    };
    Ok(CheckReport::new(NAME, Severity::Diagnostic, status)
        .sides(
            format!("{} ; {}", direct.omega_proxy, direct.omega_hat_proxy),
            format!("{rhs1} ; {rhs2}"),
        )
        .with_tolerance(tol)
        .detail(format!(
            "omega(Y,theta)={} >= 1/omega_hat(Y^t)={rhs1} - tol: {ok1}",
            direct.omega_proxy
        ))
        .detail(format!(
            "omega_hat(Y,theta)={} >= 1/omega(Y^t)={rhs2} - tol: {ok2}",
            direct.omega_hat_proxy
        )))
}

fn near_one(v: ExponentValue, tol: Rational) -> bool {
    match v {
        ExponentValue::Infinite => false,
        ExponentValue::Finite(r) => (r - Rational::one()).abs() <= tol,
    }
}

/// `|ω(Y) - 1| <= tol ⟺ |ω(Yᵗ) - 1| <= tol` on window proxies.
pub fn check_dyson(y: &MatrixF, t_max: u32, tol: Rational, f: &Field) -> Result<CheckReport> {
    const NAME: &str = "dyson";
    let a = match estimate_or_inconclusive(NAME, homogeneous_estimate(y, t_max, f))? {
        Ok(e) => e,
        Err(r) => return Ok(r.with_tolerance(tol)),
    };
    let b = match estimate_or_inconclusive(NAME, homogeneous_estimate(&y.transpose(), t_max, f))? {
        Ok(e) => e,
        Err(r) => return Ok(r.with_tolerance(tol)),
    };
    let na = near_one(a.omega_proxy, tol);
    let nb = near_one(b.omega_proxy, tol);
    let status = if na == nb {
        Status::Holds
    } else {
        Status::Fails
    };
    Ok(CheckReport::new(NAME, Severity::Diagnostic, status)
        .sides(a.omega_proxy, b.omega_proxy)
        .with_tolerance(tol)
        .detail(format!("|omega(Y)-1| <= tol: {na}"))
        .detail(format!("|omega(Y^t)-1| <= tol: {nb}")))
}

/// When `ω̂(Yᵗ) <= 1 + tol`: `ω×(Y,θ) >= ω(Y,θ) >= 1 - tol`. Both proxies use horizon `t_max`.
pub fn check_chain(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t_max: u32,
    tol: Rational,
    f: &Field,
) -> Result<CheckReport> {
    const NAME: &str = "lower_bound_chain";
    let dual = match estimate_or_inconclusive(NAME, homogeneous_estimate(&y.transpose(), t_max, f))?
    {
        Ok(e) => e,
        Err(r) => return Ok(r.with_tolerance(tol)),
    };
    let bound = ExponentValue::Finite(Rational::one() + tol);
    if dual.omega_hat_proxy > bound {
        return Ok(CheckReport::new(NAME, Severity::Diagnostic, Status::Exempt)
            .with_tolerance(tol)
            .with_note(format!(
                "omega_hat(Y^t)={} exceeds 1 + tol",
                dual.omega_hat_proxy
            )));
    }
    let std = estimate(&profile(y, theta, t_max, ProfileKind::Standard, f)?);
    let std = match estimate_or_inconclusive(NAME, std)? {
        Ok(e) => e,
        Err(r) => return Ok(r.with_tolerance(tol)),
    };
    let mult = estimate(&profile(y, theta, t_max, ProfileKind::Multiplicative, f)?);
    let mult = match estimate_or_inconclusive(NAME, mult)? {
        Ok(e) => e,
        Err(r) => return Ok(r.with_tolerance(tol)),
    };
    let ok1 = mult.omega_proxy >= std.omega_proxy;
    let ok2 = at_least(std.omega_proxy, ExponentValue::Finite(Rational::one()), tol);
    Ok(CheckReport::new(
        NAME,
        Severity::Diagnostic,
        if ok1 && ok2 {
            Status::Holds
        } else {
            Status::Fails
        },
    )
    .sides(
        format!("{} ; {}", mult.omega_proxy, std.omega_proxy),
        format!(
            "{} ; {}",
            std.omega_proxy,
            rational::display(Rational::one() - tol)
        ),
    )
    .with_tolerance(tol))
}
