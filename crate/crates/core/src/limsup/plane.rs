//! Neighbourhoods of affine planes `ℒ_{b,c} = {Y : Y b + c = 0}`.
//!
//! Scales are carried as rational exponents: `δ = e^{log_delta}` and
//! `ε_i = e^{log_eps[i]}`, so `Y ∈ ℒ^{(δε)}_{b,c}` iff
//! `deg(Y_i b + c_i) < log_delta + log_eps[i]` for every row.

use num_traits::Zero;
use serde::Serialize;

use super::delta::all_below;
use super::{delta_membership, AtVariant, IndexTuple};
use crate::algebra::{max_degree, norm, Deg, DegValue, Field, LaurentSeries, MatrixF, NormKind};
use crate::approx::Witness;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneSpec {
    pub b: Vec<LaurentSeries>,
    pub c: Vec<LaurentSeries>,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub log_eps: Vec<Rational>,
}

impl PlaneSpec {
    pub fn new(
        b: Vec<LaurentSeries>,
        c: Vec<LaurentSeries>,
        log_eps: Vec<Rational>,
    ) -> Result<Self> {
        let nb = norm(&b, NormKind::Sup);
        if nb != DegValue::exact(Deg::Fin(0)) {
            return Err(Error::InvalidInput(format!(
                "b must have norm exactly 1, got degree {nb}"
            )));
        }
        if c.len() != log_eps.len() {
            return Err(Error::DimensionMismatch(format!(
                "c has {} entries, epsilon has {}",
                c.len(),
                log_eps.len()
            )));
        }
        Ok(PlaneSpec { b, c, log_eps })
    }
}

fn plane_values(y: &MatrixF, spec: &PlaneSpec, f: &Field) -> Result<Vec<DegValue>> {
    if y.cols() != spec.b.len() || y.rows() != spec.c.len() {
        return Err(Error::DimensionMismatch(format!(
            "Y is {}x{}, b has {}, c has {}",
            y.rows(),
            y.cols(),
            spec.b.len(),
            spec.c.len()
        )));
    }
    Ok((0..y.rows())
        .map(|i| {
            y.row(i)
                .iter()
                .zip(&spec.b)
                .fold(spec.c[i].clone(), |acc, (yij, bj)| {
                    acc.add(&yij.mul(bj, f), f)
                })
                .degree()
        })
        .collect())
}

fn member_unchecked(y: &MatrixF, spec: &PlaneSpec, log_delta: Rational, f: &Field) -> Result<bool> {
    let vals = plane_values(y, spec, f)?;
    for (v, le) in vals.iter().zip(&spec.log_eps) {
        if !all_below(&[*v], log_delta + le, "plane membership")? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Y ∈ ℒ^{(δε)}_{b,c}` for `δ = e^{log_delta} ∈ (0, 1)`.
pub fn plane_member(y: &MatrixF, spec: &PlaneSpec, log_delta: Rational, f: &Field) -> Result<bool> {
    if log_delta >= Rational::zero() {
        return Err(Error::InvalidInput("delta must lie in (0, 1)".into()));
    }
    member_unchecked(y, spec, log_delta, f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneIdentityCheck {
    pub report: CheckReport,
    /// `deg q'_i < t_{m+i} - τσ(t)` for every `i`; independent of `Y`.
    pub gate: bool,
    pub via_delta: bool,
    pub via_plane: bool,
    pub plane: PlaneSpec,
    #[serde(serialize_with = "rational::serialize")]
    pub log_delta: Rational,
}

/// Checks that `Δ_t^θ(α', φ^τ)` equals the gated plane neighbourhood
/// with `b = X^{-D} q'`, `c = X^{-D}(p' + θ)`, `D = max deg q'`,
/// `δ = e^{-τσ/2}` and `ε_j = e^{-t_j - τσ/2 - D}`.
pub fn plane_identity_check(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t: &IndexTuple,
    alpha: &Witness,
    tau: Rational,
    f: &Field,
) -> Result<PlaneIdentityCheck> {
    let d = max_degree(&alpha.q).ok_or_else(|| Error::InvalidInput("q' must be non-zero".into()))?
        as i64;
    let m = y.rows();
    if alpha.p.len() != m || theta.len() != m || t.t.len() != m + alpha.q.len() {
        return Err(Error::DimensionMismatch(
            "witness, theta and t must match Y".into(),
        ));
    }
    let sigma = Rational::from(t.sigma);
    let half = tau * sigma / Rational::from(2);
    let b = alpha
        .q
        .iter()
        .map(|q| LaurentSeries::from_poly(q).shift(-d))
        .collect();
    let c = alpha
        .p
        .iter()
        .zip(theta)
        .map(|(p, th)| LaurentSeries::from_poly(p).add(th, f).shift(-d))
        .collect();
    let log_eps = (0..m).map(|j| Rational::from(-t.t[j] - d) - half).collect();
    let plane = PlaneSpec::new(b, c, log_eps)?;
    let log_delta = -half;

    let gate = alpha.q.iter().enumerate().all(|(i, q)| {
        q.deg()
            .lt_rational(Rational::from(t.t[m + i]) - tau * sigma)
    });
    let via_delta = delta_membership(y, theta, t, alpha, tau, AtVariant::Standard, f)?.member;
    let via_plane = gate && member_unchecked(y, &plane, log_delta, f)?;
    let mut report = CheckReport::exact("plane identity", via_delta == via_plane)
        .sides(via_delta, via_plane)
        .detail(format!("gate {gate}"));
    if !gate {
        report = report.with_note("q-side gate fails: the set is empty");
    }
    Ok(PlaneIdentityCheck {
        report,
        gate,
        via_delta,
        via_plane,
        plane,
        log_delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldElement, Polynomial};
    use crate::rational::{int, rat};

    fn mono(e: i64) -> LaurentSeries {
        LaurentSeries::monomial(FieldElement::ONE, e)
    }

    fn alpha_x() -> Witness {
        Witness::new(vec![Polynomial::zero()], vec![Polynomial::x()])
    }

    #[test]
    fn identity_examples() {
        let f = Field::prime(2).unwrap();
        let th = [LaurentSeries::zero()];
        let t = IndexTuple::new(vec![0, 4]);
        for (e, member) in [(-4, true), (-1, false)] {
            let y = MatrixF::new(1, 1, vec![mono(e)]).unwrap();
            let r = plane_identity_check(&y, &th, &t, &alpha_x(), rat(1, 2), &f).unwrap();
            assert!(r.gate);
            assert_eq!((r.via_delta, r.via_plane), (member, member));
            assert!(r.report.holds());
        }
        let t = IndexTuple::new(vec![2, 2]);
        let y = MatrixF::new(1, 1, vec![mono(-9)]).unwrap();
        let r = plane_identity_check(&y, &th, &t, &alpha_x(), rat(1, 2), &f).unwrap();
        assert!(!r.gate && !r.via_delta && r.report.holds());
    }

    #[test]
    fn origin_plane_contains_zero() {
        let f = Field::prime(3).unwrap();
        let spec = PlaneSpec::new(
            vec![LaurentSeries::one(), mono(-2)],
            vec![LaurentSeries::zero()],
            vec![int(-40)],
        )
        .unwrap();
        assert!(plane_member(&MatrixF::zeros(1, 2), &spec, rat(-1, 3), &f).unwrap());
        assert!(!plane_member(
            &MatrixF::new(1, 2, vec![mono(-1), mono(0)]).unwrap(),
            &spec,
            rat(-1, 3),
            &f
        )
        .unwrap());
    }

    #[test]
    fn rejects_bad_specs() {
        let f = Field::prime(2).unwrap();
        assert!(PlaneSpec::new(vec![mono(1)], vec![LaurentSeries::zero()], vec![int(0)]).is_err());
        let zero = Witness::new(vec![Polynomial::zero()], vec![Polynomial::zero()]);
        let y = MatrixF::zeros(1, 1);
        let t = IndexTuple::new(vec![0, 4]);
        assert!(
            plane_identity_check(&y, &[LaurentSeries::zero()], &t, &zero, rat(1, 2), &f).is_err()
        );
    }
}
