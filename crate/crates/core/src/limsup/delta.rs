//! `Δ_t^θ(α, φ^τ)` membership and the checks built on it.
//!
//! With `a_t = diag(X^{t_1}, ..., X^{t_m}, X^{-t_{m+1}}, ..., X^{-t_{m+n}})`,
//! `‖a_t U_Y^θ α‖` has degree
//! `max(max_j t_j + deg(Y_j q + p_j + θ_j), max_i -t_{m+i} + deg q_i)`.
//! The shifted variant multiplies `a_t` by a further `X^{-1}`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{tau0, xi_and_t, IndexTuple, TsetMode, TsetParams};
use crate::algebra::{matvec_affine, prod_plus, DegValue, Field, LaurentSeries, MatrixF};
use crate::approx::Witness;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::report::{CheckReport, Severity, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AtVariant {
    Standard,
    Shifted,
}

impl AtVariant {
    fn offset(self) -> i64 {
        match self {
            AtVariant::Standard => 0,
            AtVariant::Shifted => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub variant: AtVariant,
    pub deg: DegValue,
    #[serde(serialize_with = "rational::serialize")]
    pub threshold: Rational,
    pub member: bool,
}

/// True iff every value is `< thr`. A censored value that cannot be
/// compared while no exact value already decides is a precision error.
pub(super) fn all_below(values: &[DegValue], thr: Rational, what: &str) -> Result<bool> {
    if values
        .iter()
        .any(|v| !v.censored && !v.deg.lt_rational(thr))
    {
        return Ok(false);
    }
    if let Some(v) = values
        .iter()
        .find(|v| v.censored && !v.deg.lt_rational(thr))
    {
        return Err(Error::PrecisionExhausted(format!(
            "{what}: censored degree {v} cannot be compared with {}",
            rational::display(thr)
        )));
    }
    Ok(true)
}

fn check_dims(y: &MatrixF, theta: &[LaurentSeries], t: &IndexTuple, alpha: &Witness) -> Result<()> {
    let (m, n) = (y.rows(), y.cols());
    if theta.len() != m || t.t.len() != m + n || alpha.p.len() != m || alpha.q.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "Y is {m}x{n}; theta has {}, t has {}, p has {}, q has {}",
            theta.len(),
            t.t.len(),
            alpha.p.len(),
            alpha.q.len()
        )));
    }
    Ok(())
}

fn error_degrees(
    y: &MatrixF,
    theta: &[LaurentSeries],
    alpha: &Witness,
    f: &Field,
) -> Result<Vec<DegValue>> {
    Ok(matvec_affine(y, &alpha.q, &alpha.p, theta, f)?
        .iter()
        .map(LaurentSeries::degree)
        .collect())
}

fn coordinates(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t: &IndexTuple,
    alpha: &Witness,
    variant: AtVariant,
    f: &Field,
) -> Result<Vec<DegValue>> {
    check_dims(y, theta, t, alpha)?;
    let m = y.rows();
    let off = variant.offset();
    let errs = error_degrees(y, theta, alpha, f)?;
    Ok(errs
        .into_iter()
        .enumerate()
        .map(|(j, e)| e.shift(t.t[j] + off))
        .chain(
            alpha
                .q
                .iter()
                .enumerate()
                .map(|(i, q)| DegValue::exact(q.deg()).shift(-t.t[m + i] + off)),
        )
        .collect())
}

/// Degree of `‖a_t U_Y^θ α‖`.
pub fn a_t_degree(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t: &IndexTuple,
    alpha: &Witness,
    variant: AtVariant,
    f: &Field,
) -> Result<DegValue> {
    Ok(coordinates(y, theta, t, alpha, variant, f)?
        .into_iter()
        .reduce(DegValue::max)
        .unwrap_or(DegValue::NEG_INF))
}

/// Decides `‖a_t U_Y^θ α‖ < e^{-τσ(t)}`.
pub fn delta_membership(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t: &IndexTuple,
    alpha: &Witness,
    tau: Rational,
    variant: AtVariant,
    f: &Field,
) -> Result<Membership> {
    let coords = coordinates(y, theta, t, alpha, variant, f)?;
    let threshold = -tau * Rational::from(t.sigma);
    let member = all_below(&coords, threshold, "delta membership")?;
    Ok(Membership {
        variant,
        deg: coords
            .into_iter()
            .reduce(DegValue::max)
            .unwrap_or(DegValue::NEG_INF),
        threshold,
        member,
    })
}

/// Recovers `(u, v)` from a witness of `Π(Yq+p+θ) < e^{-(η+ε)T}`, `Π_+(q) < e^T`.
pub fn witness_extract_uv(
    y: &MatrixF,
    theta: &[LaurentSeries],
    alpha: &Witness,
    horizon: i64,
    eta: Rational,
    eps: Rational,
    f: &Field,
) -> Result<(Vec<i64>, Vec<i64>)> {
    if alpha.q_is_zero() {
        return Err(Error::Premise("q must be non-zero".into()));
    }
    let errs = error_degrees(y, theta, alpha, f)?;
    let level = (eta + eps) * Rational::from(horizon);
    let product = errs.iter().fold(DegValue::fin(0), |acc, e| acc.plus(*e));
    if !all_below(&[product], -level, "error product")? {
        return Err(Error::Premise(format!(
            "error product has degree {product}, not below -(eta+eps)T = {}",
            rational::display(-level)
        )));
    }
    let height = prod_plus(&alpha.q);
    if height >= horizon {
        return Err(Error::Premise(format!(
            "height product has degree {height}, not below T = {horizon}"
        )));
    }
    if !all_below(&errs, Rational::zero(), "error norm")? {
        return Err(Error::Premise(
            "some error coordinate has degree >= 0".into(),
        ));
    }
    let cap = rational::floor(-level);
    let u = errs
        .iter()
        .map(|e| match e.deg.finite() {
            _ if e.deg.le_rational(Rational::from(cap)) => Ok(-cap),
            Some(d) if !e.censored => Ok(-d),
            _ => Err(Error::PrecisionExhausted(format!(
                "error degree {e} is censored above the cap {cap}"
            ))),
        })
        .collect::<Result<Vec<i64>>>()?;
    let v = alpha
        .q
        .iter()
        .map(|q| q.degree().map_or(0, |d| d as i64))
        .collect();
    Ok((u, v))
}

/// Inputs shared by the forward check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ForwardParams {
    #[serde(rename = "T")]
    pub horizon: i64,
    #[serde(serialize_with = "rational::serialize")]
    pub eta: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub eps: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub tau: Rational,
    /// Tuples with `σ(t)` below this are exempt from the membership assertion.
    pub sigma_threshold: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForwardCheck {
    pub report: CheckReport,
    pub u: Vec<i64>,
    pub v: Vec<i64>,
    pub tuple: Option<IndexTuple>,
    #[serde(serialize_with = "rational::serialize")]
    pub tau0: Rational,
    pub standard: Option<Membership>,
    pub shifted: Option<Membership>,
    /// `(τ₀ - τ) σ(t) >= 1`, under which the standard variant is forced.
    pub standard_guaranteed: bool,
}

/// From a witness at horizon `T`, builds `t ∈ 𝐓` and checks `Y ∈ Δ_t^θ(α, φ^τ)`.
pub fn prop_forward_check(
    y: &MatrixF,
    theta: &[LaurentSeries],
    alpha: &Witness,
    fp: &ForwardParams,
    f: &Field,
) -> Result<ForwardCheck> {
    let params = TsetParams::new(y.rows(), y.cols(), fp.eta, TsetMode::Multiplicative)?;
    let t0 = tau0(fp.eps, &params)?;
    if fp.tau <= Rational::zero() || fp.tau >= t0 {
        return Err(Error::Precondition(format!(
            "tau = {} must lie in (0, tau0 = {})",
            rational::display(fp.tau),
            rational::display(t0)
        )));
    }
    let (u, v) = witness_extract_uv(y, theta, alpha, fp.horizon, fp.eta, fp.eps, f)?;
    let name = "proposition forward";
    let Some(tuple) = xi_and_t(&u, &v, &params)? else {
        let report =
            CheckReport::exact(name, false).detail(format!("(u, v) = ({u:?}, {v:?}) rejected"));
        return Ok(ForwardCheck {
            report,
            u,
            v,
            tuple: None,
            tau0: t0,
            standard: None,
            shifted: None,
            standard_guaranteed: false,
        });
    };
    let sigma = Rational::from(tuple.sigma);
    let xi = tuple.provenance.as_ref().map(|p| p.xi).unwrap_or_default();
    let xi_ok = xi > t0 * sigma;
    let standard = delta_membership(y, theta, &tuple, alpha, fp.tau, AtVariant::Standard, f)?;
    let shifted = delta_membership(y, theta, &tuple, alpha, fp.tau, AtVariant::Shifted, f)?;
    let member = standard.member || shifted.member;
    let exempt = tuple.sigma < fp.sigma_threshold;
    let status = match (xi_ok, member, exempt) {
        (false, _, _) => Status::Fails,
        (true, _, true) => Status::Exempt,
        (true, true, false) => Status::Holds,
        (true, false, false) => Status::Fails,
    };
    let mut report = CheckReport::new(name, Severity::Exact, status)
        .sides(rational::display(xi), rational::display(t0 * sigma))
        .detail(format!("t = {:?}, sigma = {}", tuple.t, tuple.sigma))
        .detail(format!(
            "standard: deg {} vs {}, member {}",
            standard.deg,
            rational::display(standard.threshold),
            standard.member
        ))
        .detail(format!(
            "shifted: deg {} vs {}, member {}",
            shifted.deg,
            rational::display(shifted.threshold),
            shifted.member
        ));
    if exempt {
        report = report.with_note(format!("sigma(t) below threshold {}", fp.sigma_threshold));
    }
    Ok(ForwardCheck {
        report,
        u,
        v,
        standard_guaranteed: (t0 - fp.tau) * sigma >= Rational::one(),
        tuple: Some(tuple),
        tau0: t0,
        standard: Some(standard),
        shifted: Some(shifted),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackwardCheck {
    pub report: CheckReport,
    /// `T' = σ(t)/(η+1)`.
    #[serde(serialize_with = "rational::serialize")]
    pub t_prime: Rational,
    /// `ε' = mτ(η+1)`.
    #[serde(serialize_with = "rational::serialize")]
    pub eps_prime: Rational,
    pub row_product: bool,
    pub column_product: bool,
    /// The column bound with `n` in place of the number of non-zero `q_i`.
    pub column_product_all: bool,
    pub column_share: bool,
    pub error_bound: bool,
    pub height_bound: bool,
}

/// From standard membership, rebuilds a witness at horizon `σ(t)/(η+1)`.
pub fn prop_backward_check(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t: &IndexTuple,
    alpha: &Witness,
    tau: Rational,
    eta: Rational,
    f: &Field,
) -> Result<BackwardCheck> {
    let mem = delta_membership(y, theta, t, alpha, tau, AtVariant::Standard, f)?;
    if !mem.member {
        return Err(Error::Precondition(format!(
            "Y is not in the Delta set: degree {} vs {}",
            mem.deg,
            rational::display(mem.threshold)
        )));
    }
    let (m, n) = (y.rows(), y.cols());
    let sigma = Rational::from(t.sigma);
    let errs = error_degrees(y, theta, alpha, f)?;

    let row = errs
        .iter()
        .enumerate()
        .fold(DegValue::fin(0), |acc, (j, e)| acc.plus(e.shift(t.t[j])));
    let m_r = Rational::from(m as i64);
    let row_product = all_below(&[row], -m_r * tau * sigma, "row product")?;

    let nz: Vec<usize> = (0..n).filter(|&i| !alpha.q[i].is_zero()).collect();
    let col: i64 = nz
        .iter()
        .map(|&i| alpha.q[i].degree().unwrap() as i64 - t.t[m + i])
        .sum();
    let col_r = Rational::from(col);
    let column_product = col_r < -Rational::from(nz.len() as i64) * tau * sigma;
    let column_product_all = col_r < -Rational::from(n as i64) * tau * sigma;

    let one = Rational::one();
    let t_prime = sigma / (eta + one);
    let eps_prime = m_r * tau * (eta + one);
    let column_share =
        Rational::from(t.t[m..].iter().sum::<i64>()) <= t_prime && t.t[m..].iter().all(|&x| x >= 0);
    let product = errs.iter().fold(DegValue::fin(0), |acc, e| acc.plus(*e));
    let error_bound = all_below(&[product], -(eta + eps_prime) * t_prime, "error product")?;
    let height = prod_plus(&alpha.q);
    let height_bound = Rational::from(height) < t_prime;

    let holds = row_product && column_product && column_share && error_bound && height_bound;
    let report = CheckReport::exact("proposition backward", holds)
        .sides(
            format!("{product}"),
            rational::display(-(eta + eps_prime) * t_prime),
        )
        .detail(format!(
            "row product {row} < {}: {row_product}",
            rational::display(-m_r * tau * sigma)
        ))
        .detail(format!(
            "column product over {} non-zero q_i: {col} < {}: {column_product}",
            nz.len(),
            rational::display(-Rational::from(nz.len() as i64) * tau * sigma)
        ))
        .detail(format!("column product with n = {n}: {column_product_all}"))
        .detail(format!(
            "height {height} < T' = {}: {height_bound}",
            rational::display(t_prime)
        ))
        .detail(format!("eps' = {}", rational::display(eps_prime)));
    Ok(BackwardCheck {
        report,
        t_prime,
        eps_prime,
        row_product,
        column_product,
        column_product_all,
        column_share,
        error_bound,
        height_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionOutcome {
    /// `q'' ≠ 0`; the difference is checked against the homogeneous set.
    Difference,
    /// `q'' = 0` with every `t_j >= 0`: both memberships would force `p'' = 0`.
    DegenerateImpossible,
    /// `q'' = 0` but some `t_j < 0`, where `‖p''‖ < 1` is not forced.
    DegenerateNegativeIndex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionCheck {
    pub report: CheckReport,
    pub outcome: IntersectionOutcome,
    pub first: bool,
    pub second: bool,
    pub difference: Option<Membership>,
}

/// If `Y ∈ Δ_t^θ(α) ∩ Δ_t^θ(α')`, then `Y ∈ Δ_t(α - α')` for the homogeneous system.
pub fn intersection_check(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t: &IndexTuple,
    alpha: &Witness,
    alpha2: &Witness,
    tau: Rational,
    f: &Field,
) -> Result<IntersectionCheck> {
    if alpha == alpha2 {
        return Err(Error::InvalidInput("the two witnesses coincide".into()));
    }
    let first = delta_membership(y, theta, t, alpha, tau, AtVariant::Standard, f)?.member;
    let second = delta_membership(y, theta, t, alpha2, tau, AtVariant::Standard, f)?.member;
    let diff = alpha.sub(alpha2, f);
    let name = "intersection";
    if !diff.q_is_zero() {
        if !(first && second) {
            return Err(Error::Precondition(format!(
                "memberships are ({first}, {second}); both must hold"
            )));
        }
        let zero = vec![LaurentSeries::zero(); y.rows()];
        let mem = delta_membership(y, &zero, t, &diff, tau, AtVariant::Standard, f)?;
        let report = CheckReport::exact(name, mem.member)
            .sides(mem.deg.to_string(), rational::display(mem.threshold));
        return Ok(IntersectionCheck {
            report,
            outcome: IntersectionOutcome::Difference,
            first,
            second,
            difference: Some(mem),
        });
    }
    let m = y.rows();
    let (outcome, report) = if t.t[..m].iter().all(|&x| x >= 0) {
        let r = CheckReport::exact(name, !(first && second))
            .with_note("q'' = 0: both memberships would force p'' = 0");
        (IntersectionOutcome::DegenerateImpossible, r)
    } else {
        let r = CheckReport::new(name, Severity::Exact, Status::Exempt)
            .with_note("q'' = 0 with a negative row index");
        (IntersectionOutcome::DegenerateNegativeIndex, r)
    };
    Ok(IntersectionCheck {
        report: report.detail(format!("memberships ({first}, {second})")),
        outcome,
        first,
        second,
        difference: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldElement, Polynomial};
    use crate::rational::{int, rat};

    fn poly(c: &[u16]) -> Polynomial {
        Polynomial::from_coeffs(c.iter().map(|&x| FieldElement(x)).collect())
    }

    fn w(p: &[&[u16]], q: &[&[u16]]) -> Witness {
        Witness::new(
            p.iter().map(|c| poly(c)).collect(),
            q.iter().map(|c| poly(c)).collect(),
        )
    }

    fn mono(e: i64) -> LaurentSeries {
        LaurentSeries::monomial(FieldElement::ONE, e)
    }

    #[test]
    fn membership_examples() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::zeros(1, 1);
        let th = [LaurentSeries::zero()];
        let t = IndexTuple::new(vec![2, 2]);
        let tau = rat(1, 8);
        let m = delta_membership(
            &y,
            &th,
            &t,
            &w(&[&[]], &[&[1]]),
            tau,
            AtVariant::Standard,
            &f,
        )
        .unwrap();
        assert_eq!(
            (m.deg, m.threshold, m.member),
            (DegValue::fin(-2), rat(-1, 2), true)
        );
        let m = delta_membership(
            &y,
            &th,
            &t,
            &w(&[&[]], &[&[0, 1]]),
            tau,
            AtVariant::Standard,
            &f,
        )
        .unwrap();
        assert_eq!((m.deg, m.member), (DegValue::fin(-1), true));
        let m = delta_membership(
            &y,
            &th,
            &t,
            &w(&[&[0, 1]], &[&[1]]),
            tau,
            AtVariant::Standard,
            &f,
        )
        .unwrap();
        assert_eq!((m.deg, m.member), (DegValue::fin(3), false));
        let s = delta_membership(
            &y,
            &th,
            &t,
            &w(&[&[]], &[&[0, 1]]),
            tau,
            AtVariant::Shifted,
            &f,
        )
        .unwrap();
        assert_eq!(s.deg, DegValue::fin(-2));
    }

    #[test]
    fn censored_decisive_coordinate_errors() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::new(1, 1, vec![LaurentSeries::zero_to(-3)]).unwrap();
        let th = [LaurentSeries::zero()];
        let t = IndexTuple::new(vec![4, 1]);
        let r = delta_membership(
            &y,
            &th,
            &t,
            &w(&[&[]], &[&[1]]),
            rat(1, 8),
            AtVariant::Standard,
            &f,
        );
        assert!(matches!(r, Err(Error::PrecisionExhausted(_))));
        let t = IndexTuple::new(vec![1, 1]);
        let r = delta_membership(
            &y,
            &th,
            &t,
            &w(&[&[]], &[&[1]]),
            rat(1, 8),
            AtVariant::Standard,
            &f,
        )
        .unwrap();
        assert!(r.member);
    }

    fn planted_1x1() -> (MatrixF, [LaurentSeries; 1], Witness) {
        // Y = X^{-9}, q = X^2: Y q = X^{-7}.
        let y = MatrixF::new(1, 1, vec![mono(-9)]).unwrap();
        (y, [LaurentSeries::zero()], w(&[&[]], &[&[0, 0, 1]]))
    }

    #[test]
    fn extraction_example() {
        let f = Field::prime(2).unwrap();
        let (y, th, a) = planted_1x1();
        let (u, v) = witness_extract_uv(&y, &th, &a, 3, int(1), int(1), &f).unwrap();
        assert_eq!((u, v), (vec![6], vec![2]));
        let a0 = w(&[&[]], &[&[1]]);
        let (_, v) = witness_extract_uv(&y, &th, &a0, 3, int(1), int(1), &f).unwrap();
        assert_eq!(v, vec![0]);
        assert!(matches!(
            witness_extract_uv(&y, &th, &a, 2, int(1), int(1), &f),
            Err(Error::Premise(_))
        ));
    }

    #[test]
    fn forward_and_backward_round_trip() {
        let f = Field::prime(2).unwrap();
        let (y, th, a) = planted_1x1();
        let fp = ForwardParams {
            horizon: 3,
            eta: int(1),
            eps: int(1),
            tau: rat(1, 16),
            sigma_threshold: 8,
        };
        let fw = prop_forward_check(&y, &th, &a, &fp, &f).unwrap();
        let tuple = fw.tuple.clone().unwrap();
        assert_eq!(tuple.t, vec![4, 4]);
        assert_eq!(fw.report.status, Status::Holds);
        assert!(fw.standard.unwrap().member && fw.shifted.unwrap().member);
        let bw = prop_backward_check(&y, &th, &tuple, &a, fp.tau, fp.eta, &f).unwrap();
        assert!(bw.report.holds(), "{:?}", bw.report);
        assert_eq!((bw.t_prime, bw.eps_prime), (int(4), rat(1, 8)));
    }

    #[test]
    fn backward_example_and_precondition() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::zeros(1, 1);
        let th = [LaurentSeries::zero()];
        let t = IndexTuple::new(vec![2, 2]);
        let bw =
            prop_backward_check(&y, &th, &t, &w(&[&[]], &[&[1]]), rat(1, 8), int(1), &f).unwrap();
        assert_eq!((bw.t_prime, bw.eps_prime), (int(2), rat(1, 4)));
        assert!(bw.report.holds());
        let bad = w(&[&[1]], &[&[1]]);
        assert!(matches!(
            prop_backward_check(&y, &th, &t, &bad, rat(1, 8), int(1), &f),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn forward_rejects_large_tau() {
        let f = Field::prime(2).unwrap();
        let (y, th, a) = planted_1x1();
        let fp = ForwardParams {
            horizon: 3,
            eta: int(1),
            eps: int(1),
            tau: rat(1, 8),
            sigma_threshold: 8,
        };
        assert!(matches!(
            prop_forward_check(&y, &th, &a, &fp, &f),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn intersection_examples() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::zeros(1, 1);
        let th = [LaurentSeries::zero()];
        let t = IndexTuple::new(vec![2, 2]);
        let a = w(&[&[]], &[&[1]]);
        let b = w(&[&[]], &[&[0, 1]]);
        let r = intersection_check(&y, &th, &t, &a, &b, rat(1, 8), &f).unwrap();
        assert_eq!(r.outcome, IntersectionOutcome::Difference);
        assert_eq!(r.difference.as_ref().unwrap().deg, DegValue::fin(-1));
        assert!(r.report.holds());

        let c = w(&[&[1]], &[&[1]]);
        let r = intersection_check(&y, &th, &t, &a, &c, rat(1, 8), &f).unwrap();
        assert_eq!(r.outcome, IntersectionOutcome::DegenerateImpossible);
        assert!(r.report.holds());

        assert!(intersection_check(&y, &th, &t, &a, &a, rat(1, 8), &f).is_err());
    }
}
