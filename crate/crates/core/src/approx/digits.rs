//! Dense digit tables for the fractional parts of `Y_i q + θ_i`.
//!
//! For `q_j = Σ_d q_{j,d} X^d`, the digit of `Y_i q + θ_i` at exponent
//! `-1-k` is `θ_i[-1-k] + Σ_{j,d} q_{j,d} Y_ij[-1-k-d]`, which only reads
//! digits of `Y` at or below `-1`. Tables store those digits by depth `k`.

use crate::algebra::{Field, FieldElement, LaurentSeries, MatrixF};
use crate::error::{Error, Result};

/// The floor down to which row errors are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecisionFloor {
    /// Lowest exponent whose digit is trusted.
    pub floor: i64,
    /// True when every input is exact, so all-zero digits mean an exact zero.
    pub exact: bool,
}

impl DecisionFloor {
    /// Floor for candidates with `max deg q <= dmax`.
    pub fn new(y: &MatrixF, theta: &[LaurentSeries], dmax: i64) -> Result<Self> {
        let floors = y
            .floor()
            .map(|f| f + dmax)
            .into_iter()
            .chain(theta.iter().filter_map(|t| t.floor()));
        let out = match floors.max() {
            Some(floor) => DecisionFloor {
                floor,
                exact: false,
            },
            None => {
                let lowest = (0..y.rows())
                    .flat_map(|i| y.row(i).iter())
                    .chain(theta)
                    .filter_map(|s| s.lowest())
                    .min()
                    .unwrap_or(-1);
                DecisionFloor {
                    floor: lowest.min(-1),
                    exact: true,
                }
            }
        };
        if out.floor > 0 {
            return Err(Error::PrecisionExhausted(format!(
                "errors are only known down to X^{}, above the constant digit",
                out.floor
            )));
        }
        Ok(out)
    }

    /// Number of fractional digits that can be decided.
    pub fn depth(&self) -> usize {
        (-self.floor) as usize
    }
}

pub struct Digits {
    pub m: usize,
    /// `y[i][j][k]` is the digit of `Y_ij` at exponent `-1-k`.
    pub y: Vec<Vec<Vec<FieldElement>>>,
    /// `theta[i][k]` is the digit of `θ_i` at exponent `-1-k`.
    pub theta: Vec<Vec<FieldElement>>,
}

impl Digits {
    /// Tables covering depths `0..depth` for polynomials of degree `<= dmax`.
    pub fn new(y: &MatrixF, theta: &[LaurentSeries], depth: usize, dmax: usize) -> Self {
        let len = depth + dmax;
        let table = |s: &LaurentSeries, len: usize| -> Vec<FieldElement> {
            (0..len)
                .map(|k| s.digit(-1 - k as i64).unwrap_or(FieldElement::ZERO))
                .collect()
        };
        Digits {
            m: y.rows(),
            y: (0..y.rows())
                .map(|i| y.row(i).iter().map(|e| table(e, len)).collect())
                .collect(),
            theta: theta.iter().map(|t| table(t, depth)).collect(),
        }
    }

    /// Digit of row `i` of `Y q + θ` at depth `k`; `q[j]` holds low-to-high coefficients.
    #[inline]
    pub fn row_digit(&self, i: usize, k: usize, q: &[&[FieldElement]], f: &Field) -> FieldElement {
        let mut acc = self.theta[i][k];
        for (j, qj) in q.iter().enumerate() {
            let yd = &self.y[i][j];
            for (d, &c) in qj.iter().enumerate() {
                if !c.is_zero() {
                    acc = f.add(acc, f.mul(c, yd[k + d]));
                }
            }
        }
        acc
    }

    /// Number of leading zero fractional digits of row `i`, scanning at most `limit` digits.
    pub fn row_depth(&self, i: usize, limit: usize, q: &[&[FieldElement]], f: &Field) -> usize {
        (0..limit)
            .find(|&k| !self.row_digit(i, k, q, f).is_zero())
            .unwrap_or(limit)
    }
}
