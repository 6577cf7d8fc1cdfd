//! Instance generators: series from specs, planted witnesses, membership pairs.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{
    matvec_affine, parse_polynomial, parse_series, Field, FieldElement, LaurentSeries, MatrixF,
    Polynomial,
};
use crate::approx::Witness;
use crate::error::{Error, Result};
use crate::limsup::{
    delta_membership, tau0, witness_extract_uv, xi_and_t, AtVariant, IndexTuple, TsetMode,
    TsetParams,
};
use crate::rational::{self, Rational};

/// How to build one series entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesSpec {
    Zero,
    /// An exact literal such as `X^-1 + X^-3`.
    Literal(String),
    /// `num/den` for polynomial literals, with the byte offsets of each argument.
    Rational {
        num: (usize, String),
        den: (usize, String),
    },
    /// `Σ_{k>=0} X^{-a^k}`.
    Lacunary(u32),
    /// Continued fraction `[0; X^{d_1}, X^{d_2}, ...]`, degrees cycled.
    Cf(Vec<u32>),
    /// Uniform digits at exponents `-1 .. floor`.
    Random,
}

fn call<'a>(s: &'a str, name: &str) -> Option<(usize, &'a str)> {
    let rest = s.strip_prefix(name)?.trim_start();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some((s.len() - rest.len() + 1, inner))
}

fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn parse_uint(pos: usize, s: &str, what: &str) -> Result<u32> {
    let pos = pos + s.len() - s.trim_start().len();
    s.trim().parse().map_err(|_| {
        Error::parse(
            pos,
            format!("expected a non-negative integer {what}, got {:?}", s.trim()),
        )
    })
}

impl SeriesSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::parse(lead, "empty series spec"));
        }
        if t == "0" {
            return Ok(SeriesSpec::Zero);
        }
        if t == "random" {
            return Ok(SeriesSpec::Random);
        }
        if let Some((off, inner)) = call(t, "lacunary") {
            let a = parse_uint(lead + off, inner, "base")?;
            if a < 2 {
                return Err(Error::parse(lead + off, "lacunary base must be at least 2"));
            }
            return Ok(SeriesSpec::Lacunary(a));
        }
        if let Some((off, inner)) = call(t, "cf") {
            let degs = split_top_level(inner)
                .into_iter()
                .map(|(p, d)| {
                    let v = parse_uint(lead + off + p, d, "degree")?;
                    if v == 0 {
                        return Err(Error::parse(
                            lead + off + p,
                            "partial quotient degrees must be positive",
                        ));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<u32>>>()?;
            return Ok(SeriesSpec::Cf(degs));
        }
        if let Some((off, inner)) = call(t, "rational") {
            let parts = split_top_level(inner);
            let [(pn, num), (pd, den)] = parts.as_slice() else {
                return Err(Error::parse(lead + off, "rational takes two arguments"));
            };
            return Ok(SeriesSpec::Rational {
                num: (lead + off + pn, num.to_string()),
                den: (lead + off + pd, den.to_string()),
            });
        }
        Ok(SeriesSpec::Literal(s.to_string()))
    }
}

pub fn random_element<R: Rng>(f: &Field, rng: &mut R) -> FieldElement {
    FieldElement(rng.gen_range(0..f.order()) as u16)
}

pub fn random_nonzero<R: Rng>(f: &Field, rng: &mut R) -> FieldElement {
    FieldElement(rng.gen_range(1..f.order()) as u16)
}

/// Uniform digits at exponents `-1 ..= floor`, truncated at `floor`.
pub fn random_series<R: Rng>(f: &Field, floor: i64, rng: &mut R) -> LaurentSeries {
    random_series_from(f, -1, floor, rng)
}

fn random_series_from<R: Rng>(f: &Field, top: i64, floor: i64, rng: &mut R) -> LaurentSeries {
    let digits = (floor..=top)
        .rev()
        .map(|_| random_element(f, rng))
        .collect();
    LaurentSeries::from_desc(top, digits, Some(floor))
}

/// A series of exact degree `top`, known down to `floor`.
pub fn random_series_with_top<R: Rng>(
    f: &Field,
    top: i64,
    floor: i64,
    rng: &mut R,
) -> LaurentSeries {
    let mut digits: Vec<FieldElement> = (floor..=top)
        .rev()
        .map(|_| random_element(f, rng))
        .collect();
    digits[0] = random_nonzero(f, rng);
    LaurentSeries::from_desc(top, digits, Some(floor))
}

/// A finite exact series with digits at `-1 ..= -depth`.
pub fn random_exact_series<R: Rng>(f: &Field, depth: i64, rng: &mut R) -> LaurentSeries {
    let digits = (0..depth).map(|_| random_element(f, rng)).collect();
    LaurentSeries::from_desc(-1, digits, None)
}

/// A polynomial of degree at most `max_deg` (possibly zero).
pub fn random_poly<R: Rng>(f: &Field, max_deg: i64, rng: &mut R) -> Polynomial {
    if max_deg < 0 {
        return Polynomial::zero();
    }
    Polynomial::from_coeffs((0..=max_deg).map(|_| random_element(f, rng)).collect())
}

/// A polynomial of exact degree `deg`.
pub fn random_poly_of_degree<R: Rng>(f: &Field, deg: usize, rng: &mut R) -> Polynomial {
    let mut c: Vec<FieldElement> = (0..=deg).map(|_| random_element(f, rng)).collect();
    c[deg] = random_nonzero(f, rng);
    Polynomial::from_coeffs(c)
}

fn rational_series(
    num: &Polynomial,
    den: &Polynomial,
    floor: i64,
    f: &Field,
) -> Result<LaurentSeries> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let lift = num.degree().unwrap_or(0) as i64;
    let inv = LaurentSeries::from_poly(den).inverse(floor - lift - 1, f)?;
    Ok(inv.mul_poly(num, f).truncate(floor))
}

fn cf_series(degs: &[u32], floor: i64, f: &Field) -> Result<LaurentSeries> {
    if degs.is_empty() {
        return Err(Error::InvalidInput("cf needs at least one degree".into()));
    }
    let a = |k: usize| degs[k % degs.len()] as usize;
    let (mut p_prev, mut p) = (Polynomial::one(), Polynomial::zero());
    let (mut q_prev, mut q) = (Polynomial::zero(), Polynomial::one());
    let mut k = 0;
    // p_K/q_K agrees with the limit above X^{-(2 deg q_K + d_{K+1})}.
    while 2 * q.degree().unwrap() as i64 + (a(k) as i64) < 1 - floor {
        let ak = Polynomial::monomial(FieldElement::ONE, a(k));
        let p_next = ak.mul(&p, f).add(&p_prev, f);
        let q_next = ak.mul(&q, f).add(&q_prev, f);
        (p_prev, p) = (p, p_next);
        (q_prev, q) = (q, q_next);
        k += 1;
    }
    rational_series(&p, &q, floor, f)
}

/// Builds one series at the given precision floor.
pub fn generate_series<R: Rng>(
    spec: &SeriesSpec,
    f: &Field,
    floor: i64,
    rng: &mut R,
) -> Result<LaurentSeries> {
    if floor > -1 {
        return Err(Error::InvalidInput(format!(
            "floor must be negative, got {floor}"
        )));
    }
    match spec {
        SeriesSpec::Zero => Ok(LaurentSeries::zero()),
        SeriesSpec::Literal(s) => parse_series(s, f),
        SeriesSpec::Rational { num, den } => {
            let n = parse_polynomial(&num.1, f).map_err(|e| e.shift(num.0))?;
            let d = parse_polynomial(&den.1, f).map_err(|e| e.shift(den.0))?;
            rational_series(&n, &d, floor, f)
        }
        SeriesSpec::Lacunary(a) => {
            let mut terms = Vec::new();
            let mut e: i64 = 1;
            while -e >= floor {
                terms.push((-e, FieldElement::ONE));
                e = e.saturating_mul(*a as i64);
            }
            Ok(LaurentSeries::from_terms(&terms, Some(floor), f))
        }
        SeriesSpec::Cf(degs) => cf_series(degs, floor, f),
        SeriesSpec::Random => Ok(random_series(f, floor, rng)),
    }
}

/// Builds a matrix from row-major specs.
pub fn generate_matrix<R: Rng>(
    specs: &[Vec<SeriesSpec>],
    f: &Field,
    floor: i64,
    rng: &mut R,
) -> Result<MatrixF> {
    let rows = specs
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| generate_series(s, f, floor, rng))
                .collect()
        })
        .collect::<Result<Vec<Vec<LaurentSeries>>>>()?;
    MatrixF::from_rows(rows)
}

pub fn random_matrix<R: Rng>(m: usize, n: usize, f: &Field, floor: i64, rng: &mut R) -> MatrixF {
    let entries = (0..m * n).map(|_| random_series(f, floor, rng)).collect();
    MatrixF::new(m, n, entries).expect("shape matches")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlantParams {
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub eta: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub eps: Rational,
    #[serde(rename = "T")]
    pub horizon: i64,
    pub floor: i64,
    /// Plant `Y q + p + θ = 0` exactly with exact inputs.
    pub exact_hit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Planted {
    pub y: MatrixF,
    pub theta: Vec<LaurentSeries>,
    pub alpha: Witness,
    #[serde(rename = "T")]
    pub horizon: i64,
}

/// Solves row `j` for the entry in column `k` so that `Y_j d + rhs_j = 0`
/// holds, given the other entries of the row.
fn solve_entry(
    row: &[LaurentSeries],
    k: usize,
    d: &[Polynomial],
    target: &LaurentSeries,
    inv_floor: i64,
    f: &Field,
) -> Result<LaurentSeries> {
    let mut rhs = target.clone();
    for (l, (yl, dl)) in row.iter().zip(d).enumerate() {
        if l != k && !dl.is_zero() {
            rhs = rhs.sub(&yl.mul_poly(dl, f), f);
        }
    }
    let dk = &d[k];
    let inv = if dk.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
        LaurentSeries::monomial(f.inv(dk.leading())?, -(dk.degree().unwrap() as i64))
    } else {
        LaurentSeries::from_poly(dk).inverse(inv_floor, f)?
    };
    Ok(rhs.mul(&inv, f))
}

fn sample_q<R: Rng>(
    n: usize,
    budget: i64,
    monomial: bool,
    f: &Field,
    rng: &mut R,
) -> (Vec<Polynomial>, usize) {
    let k = rng.gen_range(0..n);
    let mut remaining = budget;
    let q = (0..n)
        .map(|i| {
            if i != k && rng.gen_bool(0.3) {
                return Polynomial::zero();
            }
            let d = rng.gen_range(0..=remaining);
            remaining -= d;
            if i == k && monomial {
                Polynomial::monomial(random_nonzero(f, rng), d as usize)
            } else {
                random_poly_of_degree(f, d as usize, rng)
            }
        })
        .collect();
    (q, k)
}

/// Builds `(Y, θ, α, T)` with `Π(Yq+p+θ) < e^{-(η+ε)T}` and `Π_+(q) < e^T`.
///
/// All of `Y` except one column, `p` and `θ` are random; the remaining
/// column is solved so that `Y q + p + θ` equals a chosen small vector.
pub fn plant_witness<R: Rng>(params: &PlantParams, f: &Field, rng: &mut R) -> Result<Planted> {
    let PlantParams {
        m,
        n,
        eta,
        eps,
        horizon,
        floor,
        exact_hit,
    } = *params;
    if m == 0 || n == 0 || horizon < 1 {
        return Err(Error::InvalidInput("plant needs m, n, T >= 1".into()));
    }
    let (q, k) = sample_q(n, horizon - 1, exact_hit, f, rng);
    let dmax = q.iter().filter_map(Polynomial::degree).max().unwrap() as i64;
    let p: Vec<Polynomial> = (0..m).map(|_| random_poly(f, 1, rng)).collect();
    let deep = floor - dmax - 2;
    let fresh = |rng: &mut R| {
        if exact_hit {
            random_exact_series(f, 6, rng)
        } else {
            random_series(f, deep, rng)
        }
    };
    let theta: Vec<LaurentSeries> = (0..m).map(|_| fresh(rng)).collect();
    let level = (eta + eps) * Rational::from(horizon);
    let per_row = rational::ceil(level / Rational::from(m as i64)) + 1;
    let mut rows = Vec::with_capacity(m);
    for j in 0..m {
        let mut row: Vec<LaurentSeries> = (0..n).map(|_| fresh(rng)).collect();
        let delta = if exact_hit {
            LaurentSeries::zero()
        } else {
            let e = -per_row - rng.gen_range(0..=2);
            if e <= floor + dmax {
                return Err(Error::InvalidInput(format!(
                    "floor {floor} is too shallow to plant an error of degree {e}"
                )));
            }
            random_series_with_top(f, e, deep, rng)
        };
        let target = delta
            .sub(&LaurentSeries::from_poly(&p[j]), f)
            .sub(&theta[j], f);
        row[k] = solve_entry(&row, k, &q, &target, deep - dmax, f)?;
        rows.push(row);
    }
    let mut y = MatrixF::from_rows(rows)?;
    let mut theta = theta;
    if !exact_hit {
        y = y.truncate(floor);
        theta = theta.iter().map(|t| t.truncate(floor)).collect();
    }
    let alpha = Witness::new(p, q);
    witness_extract_uv(&y, &theta, &alpha, horizon, eta, eps, f)?;
    Ok(Planted {
        y,
        theta,
        alpha,
        horizon,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairInstance {
    pub y: MatrixF,
    pub theta: Vec<LaurentSeries>,
    pub t: IndexTuple,
    pub alpha: Witness,
    pub alpha2: Witness,
    #[serde(serialize_with = "rational::serialize")]
    pub tau: Rational,
}

/// A random `t ∈ 𝐓` from `u_j ∈ [2, 8]`, `v_i ∈ [1, 5]`, for which some
/// `q_i` may have degree `>= 0` at the given `τ`.
pub fn random_tuple<R: Rng>(params: &TsetParams, tau: Rational, rng: &mut R) -> Result<IndexTuple> {
    for _ in 0..1000 {
        let u: Vec<i64> = (0..params.m).map(|_| rng.gen_range(2..=8)).collect();
        let v: Vec<i64> = (0..params.n).map(|_| rng.gen_range(1..=5)).collect();
        if let Some(t) = xi_and_t(&u, &v, params)? {
            if q_caps(&t, params.m, tau).iter().any(|&c| c >= 0) {
                return Ok(t);
            }
        }
    }
    Err(Error::InvalidInput("no usable tuple found".into()))
}

/// Largest admissible `deg q_i` with `deg q_i < t_{m+i} - τσ(t)`.
pub fn q_caps(t: &IndexTuple, m: usize, tau: Rational) -> Vec<i64> {
    let ts = tau * Rational::from(t.sigma);
    t.t[m..]
        .iter()
        .map(|&x| rational::ceil(Rational::from(x) - ts) - 1)
        .collect()
}

/// Largest admissible `deg(Y_j q + p_j + θ_j)` with `t_j + deg < -τσ(t)`.
pub fn error_caps(t: &IndexTuple, m: usize, tau: Rational) -> Vec<i64> {
    let ts = tau * Rational::from(t.sigma);
    t.t[..m]
        .iter()
        .map(|&x| rational::ceil(-Rational::from(x) - ts) - 1)
        .collect()
}

fn sample_capped_q<R: Rng>(caps: &[i64], f: &Field, rng: &mut R) -> Vec<Polynomial> {
    caps.iter()
        .map(|&c| random_poly(f, c.min(3), rng))
        .collect()
}

/// Builds `Y, θ` and two witnesses whose Δ-memberships both hold at `t`
/// while `q - q' ≠ 0`.
pub fn plant_pair<R: Rng>(
    m: usize,
    n: usize,
    eta: Rational,
    eps: Rational,
    floor: i64,
    f: &Field,
    rng: &mut R,
) -> Result<PairInstance> {
    let params = TsetParams::new(m, n, eta, TsetMode::Multiplicative)?;
    let tau = tau0(eps, &params)? / Rational::from(2);
    let t = random_tuple(&params, tau, rng)?;
    let caps = q_caps(&t, m, tau);
    let ecaps = error_caps(&t, m, tau);
    let open: Vec<usize> = (0..n).filter(|&i| caps[i] >= 0).collect();
    let k = open[rng.gen_range(0..open.len())];
    let qa = sample_capped_q(&caps, f, rng);
    let mut qb = qa.clone();
    let bump = random_poly_of_degree(f, rng.gen_range(0..=caps[k].min(3)) as usize, rng);
    qb[k] = qb[k].add(&bump, f);
    let diff: Vec<Polynomial> = qa.iter().zip(&qb).map(|(a, b)| a.sub(b, f)).collect();
    let dmax = qa
        .iter()
        .chain(&qb)
        .filter_map(Polynomial::degree)
        .max()
        .unwrap_or(0) as i64;
    let deep = floor - 2 * dmax - 4;
    let pa: Vec<Polynomial> = (0..m).map(|_| random_poly(f, 1, rng)).collect();
    let pb: Vec<Polynomial> = (0..m).map(|_| random_poly(f, 1, rng)).collect();
    let mut rows = Vec::with_capacity(m);
    let mut theta = Vec::with_capacity(m);
    for j in 0..m {
        let top_a = ecaps[j] - rng.gen_range(0..=2);
        let top_b = ecaps[j] - rng.gen_range(0..=2);
        if top_a.max(top_b) <= floor + dmax {
            return Err(Error::InvalidInput(format!(
                "floor {floor} is too shallow for t = {:?}",
                t.t
            )));
        }
        let da = random_series_with_top(f, top_a, deep, rng);
        let db = random_series_with_top(f, top_b, deep, rng);
        let target = db
            .sub(&da, f)
            .add(&LaurentSeries::from_poly(&pa[j]), f)
            .sub(&LaurentSeries::from_poly(&pb[j]), f);
        let mut row: Vec<LaurentSeries> = (0..n).map(|_| random_series(f, deep, rng)).collect();
        row[k] = solve_entry(&row, k, &diff, &target, deep - dmax, f)?;
        let yqa = row
            .iter()
            .zip(&qa)
            .fold(LaurentSeries::zero(), |acc, (y, q)| {
                acc.add(&y.mul_poly(q, f), f)
            });
        theta.push(
            da.sub(&LaurentSeries::from_poly(&pa[j]), f)
                .sub(&yqa, f)
                .truncate(floor),
        );
        rows.push(row);
    }
    let y = MatrixF::from_rows(rows)?.truncate(floor);
    let alpha = Witness::new(pa, qa);
    let alpha2 = Witness::new(pb, qb);
    for a in [&alpha, &alpha2] {
        if !delta_membership(&y, &theta, &t, a, tau, AtVariant::Standard, f)?.member {
            return Err(Error::InvalidInput(
                "planted pair failed to land in the Delta set".into(),
            ));
        }
    }
    Ok(PairInstance {
        y,
        theta,
        t,
        alpha,
        alpha2,
        tau,
    })
}

/// A matrix for which `Y q + p + θ` has row degrees given by `tops`
/// (solved through column `k`), or a uniformly random one when `tops` is `None`.
pub fn sample_plane_matrix<R: Rng>(
    alpha: &Witness,
    theta: &[LaurentSeries],
    tops: Option<&[i64]>,
    floor: i64,
    f: &Field,
    rng: &mut R,
) -> Result<MatrixF> {
    let (m, n) = (alpha.p.len(), alpha.q.len());
    let Some(tops) = tops else {
        return Ok(random_matrix(m, n, f, floor, rng));
    };
    let k = alpha
        .q
        .iter()
        .position(|q| !q.is_zero())
        .ok_or_else(|| Error::InvalidInput("q' must be non-zero".into()))?;
    let dmax = alpha.q.iter().filter_map(Polynomial::degree).max().unwrap() as i64;
    let deep = floor - 2 * dmax - 4;
    let mut rows = Vec::with_capacity(m);
    for j in 0..m {
        let delta = random_series_with_top(f, tops[j], deep, rng);
        let target = delta
            .sub(&LaurentSeries::from_poly(&alpha.p[j]), f)
            .sub(&theta[j], f);
        let mut row: Vec<LaurentSeries> = (0..n).map(|_| random_series(f, deep, rng)).collect();
        row[k] = solve_entry(&row, k, &alpha.q, &target, deep - dmax, f)?;
        rows.push(row);
    }
    let y = MatrixF::from_rows(rows)?.truncate(floor);
    // Re-derive to make sure the planted degrees survived truncation.
    matvec_affine(&y, &alpha.q, &alpha.p, theta, f)?;
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DegValue;
    use crate::approx::{best_error, Method};
    use crate::cli::rng::instance_rng;
    use crate::rational::int;

    fn f2() -> std::sync::Arc<Field> {
        Field::prime(2).unwrap()
    }

    #[test]
    fn rational_one_over_x_plus_one() {
        let f = f2();
        let s = SeriesSpec::parse("rational(1, X+1)").unwrap();
        let y = generate_series(&s, &f, -4, &mut instance_rng(0, "t", 0)).unwrap();
        assert_eq!(
            y,
            parse_series("X^-1 + X^-2 + X^-3 + X^-4", &f)
                .unwrap()
                .truncate(-4)
        );
    }

    #[test]
    fn rational_multiplies_back() {
        let f = Field::prime(3).unwrap();
        let s = SeriesSpec::parse("rational(X+2, X^3+2*X+1)").unwrap();
        let y = generate_series(&s, &f, -30, &mut instance_rng(0, "t", 0)).unwrap();
        let den = parse_polynomial("X^3+2*X+1", &f).unwrap();
        let back = y.mul_poly(&den, &f);
        let num = LaurentSeries::from_poly(&parse_polynomial("X+2", &f).unwrap());
        let diff = back.sub(&num, &f);
        assert!(diff.is_zero(), "{}", diff.format(&f));
    }

    #[test]
    fn lacunary_base_three() {
        let f = f2();
        let y = generate_series(
            &SeriesSpec::Lacunary(3),
            &f,
            -10,
            &mut instance_rng(0, "t", 0),
        )
        .unwrap();
        assert_eq!(
            y,
            parse_series("X^-1 + X^-3 + X^-9", &f)
                .unwrap()
                .truncate(-10)
        );
    }

    #[test]
    fn cf_degree_one_profile() {
        let f = f2();
        let s = SeriesSpec::parse("cf(1)").unwrap();
        let y = generate_series(&s, &f, -40, &mut instance_rng(0, "t", 0)).unwrap();
        let y = MatrixF::new(1, 1, vec![y]).unwrap();
        for t in 1..=6 {
            let b = best_error(&y, &[LaurentSeries::zero()], t, Method::Brute, &f).unwrap();
            assert_eq!(b.b, DegValue::fin(-(t as i64)), "T = {t}");
        }
    }

    #[test]
    fn spec_parse_errors_carry_positions() {
        let f = f2();
        let e = SeriesSpec::parse("rational(1, X+)").unwrap();
        let err = generate_series(&e, &f, -4, &mut instance_rng(0, "t", 0)).unwrap_err();
        assert!(
            matches!(err, Error::Parse { pos, .. } if pos >= 12),
            "{err:?}"
        );
        assert!(matches!(
            SeriesSpec::parse("cf(1, x)"),
            Err(Error::Parse { pos: 6, .. })
        ));
        let lit = SeriesSpec::parse("X^-1 + ").unwrap();
        assert!(matches!(
            generate_series(&lit, &f, -4, &mut instance_rng(0, "t", 0)),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn planting_reverifies() {
        for (i, (m, n)) in [(1, 1), (1, 2), (2, 1), (2, 2)].into_iter().enumerate() {
            for exact_hit in [false, true] {
                let params = PlantParams {
                    m,
                    n,
                    eta: int(1),
                    eps: int(1),
                    horizon: 4,
                    floor: -60,
                    exact_hit,
                };
                let mut rng = instance_rng(3, "plant", i as u64);
                let p = plant_witness(&params, &f2(), &mut rng).unwrap();
                assert_eq!(p.y.rows(), m);
                if exact_hit {
                    let errs =
                        matvec_affine(&p.y, &p.alpha.q, &p.alpha.p, &p.theta, &f2()).unwrap();
                    assert!(errs.iter().all(LaurentSeries::is_exact_zero));
                }
            }
        }
    }

    #[test]
    fn pairs_land_in_both_sets() {
        for i in 0..10 {
            let mut rng = instance_rng(5, "pair", i);
            let pair = plant_pair(
                1 + (i as usize % 2),
                1 + (i as usize / 2 % 2),
                int(1),
                int(1),
                -60,
                &f2(),
                &mut rng,
            )
            .unwrap();
            assert!(!pair.alpha.sub(&pair.alpha2, &f2()).q_is_zero());
        }
    }
}
