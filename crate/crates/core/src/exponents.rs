//! Finite-horizon profiles `T ↦ B(T)` and exponent proxies.
//!
//! `ω` and `ω̂` are the limsup and liminf of `-B(T)/T`. On a finite profile
//! they are replaced by the max and min of `-B(T)/T` over the tail window
//! `[⌈T_max/2⌉, T_max]`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{Deg, DegValue, Field, LaurentSeries, MatrixF};
use crate::approx::{best_error, best_error_mult, Method};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Standard,
    Multiplicative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    #[serde(rename = "T")]
    pub t: u32,
    #[serde(rename = "B")]
    pub b: DegValue,
    pub censored: bool,
    /// Set when the floor was too shallow to search this horizon at all.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentProfile {
    pub kind: ProfileKind,
    pub m: usize,
    pub n: usize,
    pub t_max: u32,
    pub entries: Vec<ProfileEntry>,
}

impl ExponentProfile {
    pub fn entry(&self, t: u32) -> Option<&ProfileEntry> {
        self.entries.get(t as usize - 1)
    }

    pub fn any_exhausted(&self) -> bool {
        self.entries.iter().any(|e| e.exhausted)
    }
}

/// A finite or infinite exponent value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExponentValue {
    Finite(Rational),
    Infinite,
}

impl ExponentValue {
    pub fn finite(self) -> Option<Rational> {
        match self {
            ExponentValue::Finite(r) => Some(r),
            ExponentValue::Infinite => None,
        }
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Finite(r) => f.write_str(&rational::display(*r)),
            ExponentValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExponentValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExponentValue::Finite(r) => rational::serialize(r, s),
            ExponentValue::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentEstimate {
    pub omega_proxy: ExponentValue,
    pub omega_hat_proxy: ExponentValue,
    pub window: (u32, u32),
    pub infinite: bool,
    pub censored: bool,
}

/// `-B/T` for one profile entry.
pub fn ratio(b: DegValue, t: u32) -> ExponentValue {
    match b.deg {
        Deg::NegInf => ExponentValue::Infinite,
        Deg::Fin(l) => ExponentValue::Finite(Rational::new(-l, t as i64)),
    }
}

/// Computes `B(T)` (or `B×(T)`) for `T = 1..=t_max`.
///
/// A horizon whose errors cannot be decided at all is recorded as the
/// trivial bound `B <= -m`, censored, instead of aborting the profile.
pub fn profile(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t_max: u32,
    kind: ProfileKind,
    f: &Field,
) -> Result<ExponentProfile> {
    if t_max == 0 {
        return Err(Error::InvalidInput("T_max must be at least 1".into()));
    }
    let m = y.rows();
    let mut entries = Vec::with_capacity(t_max as usize);
    for t in 1..=t_max {
        let r = match kind {
            ProfileKind::Standard => best_error(y, theta, t, Method::Kernel, f),
            ProfileKind::Multiplicative => best_error_mult(y, theta, t, f),
        };
        entries.push(match r {
            Ok(be) => ProfileEntry {
                t,
                b: be.b,
                censored: be.censored,
                exhausted: false,
            },
            Err(e) if e.is_precision() => ProfileEntry {
                t,
                b: DegValue::at_most(-(m as i64)),
                censored: true,
                exhausted: true,
            },
            Err(e) => return Err(e),
        });
    }
    Ok(ExponentProfile {
        kind,
        m,
        n: y.cols(),
        t_max,
        entries,
    })
}

/// The tail window `[⌈T_max/2⌉, T_max]`.
pub fn window(t_max: u32) -> (u32, u32) {
    (t_max.div_ceil(2), t_max)
}

/// Max and min of `-B(T)/T` over the tail window, ignoring censored entries.
pub fn estimate(profile: &ExponentProfile) -> Result<ExponentEstimate> {
    let (lo, hi) = window(profile.t_max);
    if hi - lo + 1 < 4 {
        return Err(Error::InvalidInput(format!(
            "window [{lo}, {hi}] has fewer than 4 horizons; use T_max >= 6"
        )));
    }
    let tail: Vec<&ProfileEntry> = profile.entries[(lo - 1) as usize..hi as usize]
        .iter()
        .collect();
    let uncensored: Vec<&&ProfileEntry> = tail.iter().filter(|e| !e.censored).collect();
    if uncensored.is_empty() {
        return Err(Error::WindowCensored { lo, hi });
    }
    let ratios: Vec<ExponentValue> = uncensored.iter().map(|e| ratio(e.b, e.t)).collect();
    let omega = *ratios.iter().max().unwrap();
    let omega_hat = *ratios.iter().min().unwrap();
    Ok(ExponentEstimate {
        omega_proxy: omega,
        omega_hat_proxy: omega_hat,
        window: (lo, hi),
        infinite: omega == ExponentValue::Infinite,
        censored: uncensored.len() < tail.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldElement;

    fn mono(e: i64) -> LaurentSeries {
        LaurentSeries::monomial(FieldElement::ONE, e)
    }

    #[test]
    fn constant_shift_profile() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::zeros(1, 1);
        let p = profile(&y, &[mono(-3)], 12, ProfileKind::Standard, &f).unwrap();
        assert!(p.entries.iter().all(|e| e.b == DegValue::fin(-3)));
        let est = estimate(&p).unwrap();
        assert_eq!(est.omega_proxy, ExponentValue::Finite(Rational::new(1, 2)));
        assert_eq!(
            est.omega_hat_proxy,
            ExponentValue::Finite(Rational::new(1, 4))
        );
        assert_eq!(est.window, (6, 12));
    }

    #[test]
    fn zero_and_rational_are_infinite() {
        let f = Field::prime(2).unwrap();
        let zero = [LaurentSeries::zero()];
        let p = profile(&MatrixF::zeros(1, 1), &zero, 8, ProfileKind::Standard, &f).unwrap();
        assert!(p.entries.iter().all(|e| e.b == DegValue::NEG_INF));
        assert!(estimate(&p).unwrap().infinite);

        let y = MatrixF::new(1, 1, vec![mono(-1)]).unwrap();
        let p = profile(&y, &zero, 8, ProfileKind::Standard, &f).unwrap();
        let est = estimate(&p).unwrap();
        assert!(est.infinite);
        assert_eq!(est.omega_proxy, ExponentValue::Infinite);
    }

    #[test]
    fn shallow_floor_censors_and_errors() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::new(1, 1, vec![mono(-1).add(&mono(-4), &f).truncate(-6)]).unwrap();
        let p = profile(&y, &[LaurentSeries::zero()], 10, ProfileKind::Standard, &f).unwrap();
        assert!(p.any_exhausted());
        assert!(matches!(
            estimate(&p),
            Err(Error::WindowCensored { lo: 5, hi: 10 })
        ));
    }

    #[test]
    fn short_window_is_rejected() {
        let f = Field::prime(2).unwrap();
        let p = profile(
            &MatrixF::zeros(1, 1),
            &[mono(-3)],
            5,
            ProfileKind::Standard,
            &f,
        )
        .unwrap();
        assert!(matches!(estimate(&p), Err(Error::InvalidInput(_))));
    }
}
