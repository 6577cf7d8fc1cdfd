use serde::Serialize;

use super::digits::{DecisionFloor, Digits};
use super::{row_errors, Witness};
use crate::algebra::linalg::lex_min_nonzero_solution;
use crate::algebra::{Deg, DegValue, Field, FieldElement, LaurentSeries, MatrixF, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Binary search on the error depth, one affine solve per probe.
    Kernel,
    /// Exhaustive enumeration of every admissible `q`.
    Brute,
}

/// The best-approximation degree at horizon `T` together with a minimizing witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestError {
    #[serde(rename = "T")]
    pub t: u32,
    #[serde(rename = "B")]
    pub b: DegValue,
    pub witness: Witness,
    /// Row error degrees of the witness, truncated at `floor`.
    pub errors: Vec<DegValue>,
    /// Lowest exponent used to decide the errors.
    pub floor: i64,
    pub censored: bool,
}

fn check_dims(y: &MatrixF, theta: &[LaurentSeries], t: u32) -> Result<()> {
    if theta.len() != y.rows() {
        return Err(Error::DimensionMismatch(format!(
            "Y has {} rows but theta has {} entries",
            y.rows(),
            theta.len()
        )));
    }
    if t == 0 {
        return Err(Error::InvalidInput("horizon T must be at least 1".into()));
    }
    Ok(())
}

/// Column rank in significance order for coefficient `d` of `q_j`.
#[inline]
fn col(n: usize, j: usize, d: usize) -> usize {
    d * n + (n - 1 - j)
}

fn unpack(x: &[FieldElement], n: usize, dmax: usize) -> Vec<Polynomial> {
    (0..n)
        .map(|j| Polynomial::from_coeffs((0..=dmax).map(|d| x[col(n, j, d)]).collect()))
        .collect()
}

/// Degree value for a row whose first `depth` fractional digits vanish.
fn depth_degree(depth: usize, fl: DecisionFloor) -> DegValue {
    if depth < fl.depth() {
        DegValue::fin(-(depth as i64) - 1)
    } else if fl.exact {
        DegValue::NEG_INF
    } else {
        DegValue::at_most(fl.floor - 1)
    }
}

fn finish(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t: u32,
    q: Vec<Polynomial>,
    fl: DecisionFloor,
    f: &Field,
) -> BestError {
    let m = y.rows() as i64;
    let (p, errs) = row_errors(y, theta, &q, f);
    let errors: Vec<DegValue> = errs
        .iter()
        .map(|e| {
            if fl.exact {
                e.degree()
            } else {
                e.truncate(fl.floor).degree()
            }
        })
        .collect();
    let b = errors
        .iter()
        .copied()
        .reduce(DegValue::max)
        .unwrap_or(DegValue::NEG_INF)
        .times(m);
    BestError {
        t,
        b,
        witness: Witness { p, q },
        errors,
        floor: fl.floor,
        censored: b.censored,
    }
}

/// `B(T) = m · min max_i deg(Y_i q + p_i + θ_i)` over `q ≠ 0` with `n · max deg q <= T - 1`.
///
/// Ties are broken towards the lexicographically least `q`, comparing the
/// coefficient of the highest degree first (and `q_1` before `q_2` within a degree).
pub fn best_error(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t: u32,
    method: Method,
    f: &Field,
) -> Result<BestError> {
    check_dims(y, theta, t)?;
    let (m, n) = (y.rows(), y.cols());
    let dmax = (t as usize - 1) / n;
    let fl = DecisionFloor::new(y, theta, dmax as i64)?;
    let depth = fl.depth();
    let digits = Digits::new(y, theta, depth, dmax);
    let ncols = n * (dmax + 1);
    let x = match method {
        Method::Kernel => {
            let system = |k: usize| -> (Vec<Vec<FieldElement>>, Vec<FieldElement>) {
                let mut a = Vec::with_capacity(m * k);
                let mut b = Vec::with_capacity(m * k);
                for kk in 0..k {
                    for i in 0..m {
                        let mut row = vec![FieldElement::ZERO; ncols];
                        for j in 0..n {
                            for d in 0..=dmax {
                                row[col(n, j, d)] = digits.y[i][j][kk + d];
                            }
                        }
                        a.push(row);
                        b.push(f.neg(digits.theta[i][kk]));
                    }
                }
                (a, b)
            };
            let solve = |k: usize| {
                let (a, b) = system(k);
                lex_min_nonzero_solution(a, b, ncols, f)
            };
            let (mut lo, mut hi) = (0, depth);
            while lo < hi {
                let mid = (lo + hi).div_ceil(2);
                if solve(mid).is_some() {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            solve(lo).expect("depth 0 has no constraints")
        }
        Method::Brute => brute_min(&digits, n, dmax, depth, f),
    };
    Ok(finish(y, theta, t, unpack(&x, n, dmax), fl, f))
}

/// Enumerates `q` in increasing lexicographic order and keeps the first strictly
/// deeper candidate, so ties resolve to the least `q`.
fn brute_min(digits: &Digits, n: usize, dmax: usize, depth: usize, f: &Field) -> Vec<FieldElement> {
    let order = f.order() as usize;
    let ncols = n * (dmax + 1);
    let mut x = vec![FieldElement::ZERO; ncols];
    let mut best: Option<(usize, Vec<FieldElement>)> = None;
    let mut qbuf: Vec<Vec<FieldElement>> = vec![vec![FieldElement::ZERO; dmax + 1]; n];
    while increment(&mut x, order) {
        for (j, qj) in qbuf.iter_mut().enumerate() {
            for (d, c) in qj.iter_mut().enumerate() {
                *c = x[col(n, j, d)];
            }
        }
        let qref: Vec<&[FieldElement]> = qbuf.iter().map(|v| v.as_slice()).collect();
        let need = best.as_ref().map_or(0, |b| b.0 + 1);
        let mut cand = depth;
        for i in 0..digits.m {
            let d = digits.row_depth(i, cand, &qref, f);
            cand = cand.min(d);
            if cand < need {
                break;
            }
        }
        if cand >= need {
            best = Some((cand, x.clone()));
            if cand == depth {
                break;
            }
        }
    }
    best.expect("at least one nonzero candidate").1
}

/// Counts in base `order` with `x[len-1]` most significant; false on wrap-around.
fn increment(x: &mut [FieldElement], order: usize) -> bool {
    for c in x.iter_mut() {
        if (c.0 as usize) + 1 < order {
            c.0 += 1;
            return true;
        }
        c.0 = 0;
    }
    false
}

/// `B×(T) = min Σ_j deg(Y_j q + p_j + θ_j)` over `q ≠ 0` with `Σ max(0, deg q_i) <= T - 1`.
///
/// Each candidate is decided at its own floor. The result is censored when
/// any candidate's sum is censored, since its true value may be smaller.
pub fn best_error_mult(
    y: &MatrixF,
    theta: &[LaurentSeries],
    t: u32,
    f: &Field,
) -> Result<BestError> {
    check_dims(y, theta, t)?;
    let (m, n) = (y.rows(), y.cols());
    let budget = t as usize - 1;
    let deepest = DecisionFloor::new(y, theta, 0)?;
    let depth_all = deepest.depth();
    let digits = Digits::new(y, theta, depth_all, budget);
    let q_ord = f.order() as usize;

    let mut best: Option<(Deg, Vec<FieldElement>, Vec<usize>)> = None;
    let mut any_censored = false;
    let mut degs: Vec<Option<usize>> = vec![None; n];
    let mut key = vec![FieldElement::ZERO; n * (budget + 1)];
    loop {
        if !next_degree_tuple(&mut degs, budget) {
            break;
        }
        let dtop = degs.iter().flatten().copied().max().unwrap();
        let fl = DecisionFloor::new(y, theta, dtop as i64)?;
        let depth = fl.depth();
        // Free coefficients: everything below each leading term, leading term nonzero.
        let mut coefs: Vec<Vec<FieldElement>> = degs
            .iter()
            .map(|d| match d {
                None => Vec::new(),
                Some(d) => {
                    let mut v = vec![FieldElement::ZERO; d + 1];
                    v[*d] = FieldElement::ONE;
                    v
                }
            })
            .collect();
        loop {
            let qref: Vec<&[FieldElement]> = coefs.iter().map(|v| v.as_slice()).collect();
            let mut sum = Deg::Fin(0);
            let mut censored = false;
            let mut depths = Vec::with_capacity(m);
            for i in 0..m {
                let k = digits.row_depth(i, depth, &qref, f);
                depths.push(k);
                let dv = depth_degree(k, fl);
                if dv.is_neg_inf() {
                    sum = Deg::NegInf;
                } else {
                    censored |= dv.censored;
                    sum = sum.plus(dv.deg);
                }
            }
            if sum.is_neg_inf() {
                censored = false;
            }
            any_censored |= censored;
            key.iter_mut().for_each(|c| *c = FieldElement::ZERO);
            for (j, qj) in coefs.iter().enumerate() {
                for (d, &c) in qj.iter().enumerate() {
                    key[col(n, j, d)] = c;
                }
            }
            let better = match &best {
                None => true,
                Some((bs, bk, _)) => sum < *bs || (sum == *bs && lex_less(&key, bk)),
            };
            if better {
                best = Some((sum, key.clone(), depths));
            }
            if !next_coefficients(&mut coefs, &degs, q_ord) {
                break;
            }
        }
    }
    let (sum, key, _) = best.expect("at least one nonzero candidate");
    let q = unpack(&key, n, budget);
    let dtop = q.iter().filter_map(Polynomial::degree).max().unwrap();
    let fl = DecisionFloor::new(y, theta, dtop as i64)?;
    let (p, errs) = row_errors(y, theta, &q, f);
    let errors: Vec<DegValue> = errs
        .iter()
        .map(|e| {
            if fl.exact {
                e.degree()
            } else {
                e.truncate(fl.floor).degree()
            }
        })
        .collect();
    let censored = any_censored && !sum.is_neg_inf();
    Ok(BestError {
        t,
        b: DegValue { deg: sum, censored },
        witness: Witness { p, q },
        errors,
        floor: fl.floor,
        censored,
    })
}

/// Lexicographic comparison with the most significant (highest index) entry first.
fn lex_less(a: &[FieldElement], b: &[FieldElement]) -> bool {
    a.iter().rev().cmp(b.iter().rev()) == std::cmp::Ordering::Less
}

/// Steps through degree tuples (`None` = zero polynomial), skipping the all-zero
/// tuple and tuples with `Σ deg > budget`. Returns false when exhausted.
fn next_degree_tuple(degs: &mut [Option<usize>], budget: usize) -> bool {
    loop {
        let mut carried = true;
        for d in degs.iter_mut() {
            *d = match *d {
                None => Some(0),
                Some(k) if k < budget => Some(k + 1),
                Some(_) => None,
            };
            if d.is_some() {
                carried = false;
                break;
            }
        }
        if carried {
            return false;
        }
        let total: usize = degs.iter().flatten().sum();
        if total <= budget {
            return true;
        }
    }
}

/// Advances the non-leading coefficients; the leading coefficient runs over nonzero values.
fn next_coefficients(
    coefs: &mut [Vec<FieldElement>],
    degs: &[Option<usize>],
    order: usize,
) -> bool {
    for (qj, d) in coefs.iter_mut().zip(degs) {
        let Some(d) = *d else { continue };
        for (k, c) in qj.iter_mut().enumerate() {
            let lo = if k == d { 1 } else { 0 };
            if (c.0 as usize) + 1 < order {
                c.0 += 1;
                return true;
            }
            c.0 = lo;
        }
    }
    false
}
