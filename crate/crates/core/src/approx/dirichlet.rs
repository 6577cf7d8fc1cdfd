use serde::Serialize;

use super::{row_errors, Witness};
use crate::algebra::linalg::lex_min_nonzero_solution;
use crate::algebra::{DegValue, Field, FieldElement, LaurentSeries, MatrixF, Polynomial};
use crate::error::{Error, Result};

/// Which bound is imposed on `|q_j|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DirichletMode {
    /// `|q_j| < e^{t_{m+j}}`.
    Strict,
    /// `|q_j| <= e^{t_{m+j}}`; always solvable.
    Relaxed,
}

/// A target `t = (t_1, ..., t_{m+n})` with `Σ_{i<=m} t_i = Σ_{j<=n} t_{m+j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirichletTarget {
    pub t: Vec<i64>,
}

impl DirichletTarget {
    pub fn new(t: Vec<i64>, m: usize, n: usize) -> Result<Self> {
        if t.len() != m + n {
            return Err(Error::InvalidTarget(format!(
                "expected {} entries, got {}",
                m + n,
                t.len()
            )));
        }
        if t.iter().any(|&x| x < 0) {
            return Err(Error::InvalidTarget(format!("negative entry in {t:?}")));
        }
        let (a, b) = t.split_at(m);
        if a.iter().sum::<i64>() != b.iter().sum::<i64>() {
            return Err(Error::InvalidTarget(format!(
                "row sum {} differs from column sum {}",
                a.iter().sum::<i64>(),
                b.iter().sum::<i64>()
            )));
        }
        Ok(DirichletTarget { t })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DirichletOutcome {
    Solved {
        witness: Witness,
        /// `deg(Y_i q + p_i)` per row.
        errors: Vec<DegValue>,
        /// Whether the witness also meets the strict bound on `q`.
        strict: bool,
    },
    NoSolution,
}

impl DirichletOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            DirichletOutcome::Solved { witness, .. } => Some(witness),
            DirichletOutcome::NoSolution => None,
        }
    }
}

/// Finds `(p, q)` with `|Y_i q + p_i| < e^{-t_i}` and the chosen bound on `|q_j|`.
///
/// The digits `X^{-1} .. X^{-t_i}` of `Y_i q` depend linearly on the
/// coefficients of `q`, so the solution set is a nullspace; the returned `q`
/// is its lexicographically least nonzero element.
pub fn dirichlet_solve(
    y: &MatrixF,
    target: &DirichletTarget,
    mode: DirichletMode,
    f: &Field,
) -> Result<DirichletOutcome> {
    let (m, n) = (y.rows(), y.cols());
    let target = DirichletTarget::new(target.t.clone(), m, n)?;
    let (rows_t, cols_t) = target.t.split_at(m);
    let ncoef: Vec<usize> = cols_t
        .iter()
        .map(|&t| match mode {
            DirichletMode::Strict => t as usize,
            DirichletMode::Relaxed => t as usize + 1,
        })
        .collect();
    if let Some(fl) = y.floor() {
        for (i, &ti) in rows_t.iter().enumerate() {
            for (j, &nc) in ncoef.iter().enumerate() {
                if ti > 0 && nc > 0 && -ti - (nc as i64 - 1) < fl {
                    return Err(Error::PrecisionExhausted(format!(
                        "row {i} needs digit X^{} of Y_{i}{j}, below the floor X^{fl}",
                        -ti - (nc as i64 - 1)
                    )));
                }
            }
        }
    }
    let offsets: Vec<usize> = ncoef
        .iter()
        .scan(0, |acc, &c| {
            let o = *acc;
            *acc += c;
            Some(o)
        })
        .collect();
    let total: usize = ncoef.iter().sum();
    // Column index grows with significance: higher degree first, then lower basis index.
    let col = |j: usize, d: usize| -> usize { offsets[j] + d };
    let dmax = ncoef.iter().copied().max().unwrap_or(0);
    let order = significance_order(&ncoef, dmax);
    let mut a = Vec::new();
    for (i, &ti) in rows_t.iter().enumerate() {
        for k in 1..=ti {
            let mut row = vec![FieldElement::ZERO; total];
            for j in 0..n {
                for d in 0..ncoef[j] {
                    let e = -k - d as i64;
                    row[order[col(j, d)]] = y.get(i, j).digit(e).unwrap_or(FieldElement::ZERO);
                }
            }
            a.push(row);
        }
    }
    let b = vec![FieldElement::ZERO; a.len()];
    let Some(x) = lex_min_nonzero_solution(a, b, total, f) else {
        return Ok(DirichletOutcome::NoSolution);
    };
    let q: Vec<Polynomial> = (0..n)
        .map(|j| Polynomial::from_coeffs((0..ncoef[j]).map(|d| x[order[col(j, d)]]).collect()))
        .collect();
    let zero_theta = vec![LaurentSeries::zero(); m];
    let (p, errs) = row_errors(y, &zero_theta, &q, f);
    let errors: Vec<DegValue> = errs.iter().map(|e| e.degree()).collect();
    let strict = q
        .iter()
        .zip(cols_t)
        .all(|(qj, &t)| qj.degree().is_none_or(|d| (d as i64) < t));
    Ok(DirichletOutcome::Solved {
        witness: Witness { p, q },
        errors,
        strict,
    })
}

/// Maps a per-coordinate column `offsets[j] + d` to its rank in significance order
/// (rank 0 is least significant): `(d, j)` outranks `(d', j')` when `d > d'`, or
/// `d = d'` and `j < j'`.
fn significance_order(ncoef: &[usize], dmax: usize) -> Vec<usize> {
    let n = ncoef.len();
    let total: usize = ncoef.iter().sum();
    let mut rank = vec![0; total];
    let mut next = 0;
    let mut offset = vec![0; n];
    for j in 1..n {
        offset[j] = offset[j - 1] + ncoef[j - 1];
    }
    for d in 0..dmax {
        for j in (0..n).rev() {
            if d < ncoef[j] {
                rank[offset[j] + d] = next;
                next += 1;
            }
        }
    }
    rank
}

/// Checks `deg(Y_i q + p_i) < -t_i` and the q-side bound of `mode`.
pub fn verify_dirichlet(
    y: &MatrixF,
    target: &DirichletTarget,
    mode: DirichletMode,
    w: &Witness,
    f: &Field,
) -> Result<bool> {
    let m = y.rows();
    if w.q.iter().all(Polynomial::is_zero) {
        return Ok(false);
    }
    let zero_theta = vec![LaurentSeries::zero(); m];
    let errs = crate::algebra::matvec_affine(y, &w.q, &w.p, &zero_theta, f)?;
    for (e, &ti) in errs.iter().zip(&target.t) {
        let d = e.degree();
        if d.censored && d.deg.finite().is_some_and(|l| l >= -ti) {
            return Err(Error::PrecisionExhausted(format!(
                "error {d} cannot be compared with X^{}",
                -ti
            )));
        }
        if d.deg.finite().is_some_and(|l| l >= -ti) {
            return Ok(false);
        }
    }
    Ok(w.q
        .iter()
        .zip(&target.t[m..])
        .all(|(qj, &t)| match qj.degree() {
            None => true,
            Some(d) => match mode {
                DirichletMode::Strict => (d as i64) < t,
                DirichletMode::Relaxed => (d as i64) <= t,
            },
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Deg;

    fn mono(e: i64) -> LaurentSeries {
        LaurentSeries::monomial(FieldElement::ONE, e)
    }

    #[test]
    fn single_entry_examples() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::new(1, 1, vec![mono(-1)]).unwrap();
        let t = DirichletTarget::new(vec![1, 1], 1, 1).unwrap();
        assert_eq!(
            dirichlet_solve(&y, &t, DirichletMode::Strict, &f).unwrap(),
            DirichletOutcome::NoSolution
        );
        let DirichletOutcome::Solved {
            witness,
            errors,
            strict,
        } = dirichlet_solve(&y, &t, DirichletMode::Relaxed, &f).unwrap()
        else {
            panic!("relaxed mode must solve");
        };
        assert_eq!(witness.q, vec![Polynomial::x()]);
        assert_eq!(witness.p, vec![Polynomial::one()]);
        assert_eq!(errors[0].deg, Deg::NegInf);
        assert!(!strict);

        let y = MatrixF::new(1, 1, vec![mono(-2).add(&mono(-5), &f)]).unwrap();
        let DirichletOutcome::Solved {
            witness,
            errors,
            strict,
        } = dirichlet_solve(&y, &t, DirichletMode::Strict, &f).unwrap()
        else {
            panic!("Y itself satisfies the bound");
        };
        assert_eq!(witness.q, vec![Polynomial::one()]);
        assert!(witness.p[0].is_zero());
        assert_eq!(errors[0], DegValue::fin(-2));
        assert!(strict);
    }

    #[test]
    fn rejects_targets_off_the_balanced_set() {
        assert!(matches!(
            DirichletTarget::new(vec![2, 1], 1, 1),
            Err(Error::InvalidTarget(_))
        ));
        assert!(matches!(
            DirichletTarget::new(vec![-1, -1], 1, 1),
            Err(Error::InvalidTarget(_))
        ));
    }

    #[test]
    fn shallow_floor_is_reported() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::new(1, 1, vec![mono(-1).truncate(-3)]).unwrap();
        let t = DirichletTarget::new(vec![3, 3], 1, 1).unwrap();
        assert!(dirichlet_solve(&y, &t, DirichletMode::Relaxed, &f)
            .unwrap_err()
            .is_precision());
    }

    #[test]
    fn significance_ranks() {
        // n = 2, two coefficients each: least significant is (d=0, j=1).
        assert_eq!(significance_order(&[2, 2], 2), vec![1, 3, 0, 2]);
        assert_eq!(significance_order(&[1, 3], 3), vec![1, 0, 2, 3]);
    }
}
