use serde::Serialize;

use super::deg::DegValue;
use super::field::Field;
use super::poly::Polynomial;
use super::series::LaurentSeries;
use crate::error::{Error, Result};

pub type VectorF = Vec<LaurentSeries>;

/// An m x n matrix over F, stored row-major, with a uniform precision floor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixF {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentSeries>,
}

impl MatrixF {
    /// Entries are truncated to their coarsest floor.
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentSeries>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let floor = entries.iter().filter_map(|e| e.floor()).max();
        let entries = match floor {
            Some(fl) => entries.iter().map(|e| e.truncate(fl)).collect(),
            None => entries,
        };
        Ok(MatrixF {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<LaurentSeries>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        MatrixF::new(m, n, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixF {
            rows,
            cols,
            entries: vec![LaurentSeries::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[LaurentSeries] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn floor(&self) -> Option<i64> {
        self.entries.iter().filter_map(|e| e.floor()).max()
    }

    pub fn transpose(&self) -> MatrixF {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        MatrixF {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn truncate(&self, floor: i64) -> MatrixF {
        MatrixF {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.truncate(floor)).collect(),
        }
    }

    pub fn format(&self, f: &Field) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.format(f)).collect())
            .collect()
    }
}

/// Which degree functional of a vector to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    /// `‖y‖ = max |y_i|`.
    Sup,
    /// `Π(y) = Π |y_i|`.
    Prod,
    /// `Π_+(y) = Π max{1, |y_i|}`, for vectors over Λ.
    ProdPlus,
}

pub fn norm(y: &[LaurentSeries], kind: NormKind) -> DegValue {
    match kind {
        NormKind::Sup => y
            .iter()
            .map(|e| e.degree())
            .reduce(DegValue::max)
            .unwrap_or(DegValue::NEG_INF),
        NormKind::Prod => y
            .iter()
            .map(|e| e.degree())
            .fold(DegValue::fin(0), DegValue::plus),
        NormKind::ProdPlus => y.iter().fold(DegValue::fin(0), |acc, e| {
            let d = e.degree();
            let clipped = match d.deg.finite() {
                Some(l) if l > 0 => DegValue {
                    deg: d.deg,
                    censored: d.censored,
                },
                _ => DegValue::fin(0),
            };
            acc.plus(clipped)
        }),
    }
}

/// `Σ max(0, deg q_i)`, the degree of `Π_+(q)`.
pub fn prod_plus(q: &[Polynomial]) -> i64 {
    q.iter().map(|p| p.degree().map_or(0, |d| d as i64)).sum()
}

/// Largest coordinate degree, `None` for the zero vector.
pub fn max_degree(q: &[Polynomial]) -> Option<usize> {
    q.iter().filter_map(|p| p.degree()).max()
}

/// `Y q + p + θ`. The output floor is the input floor shifted by `max deg q`.
pub fn matvec_affine(
    y: &MatrixF,
    q: &[Polynomial],
    p: &[Polynomial],
    theta: &[LaurentSeries],
    f: &Field,
) -> Result<VectorF> {
    if q.len() != y.cols() || p.len() != y.rows() || theta.len() != y.rows() {
        return Err(Error::DimensionMismatch(format!(
            "Y is {}x{}, q has {}, p has {}, theta has {}",
            y.rows(),
            y.cols(),
            q.len(),
            p.len(),
            theta.len()
        )));
    }
    let qs: Vec<LaurentSeries> = q.iter().map(LaurentSeries::from_poly).collect();
    Ok((0..y.rows())
        .map(|i| {
            let mut acc = LaurentSeries::from_poly(&p[i]).add(&theta[i], f);
            for (yij, qj) in y.row(i).iter().zip(&qs) {
                acc = acc.add(&yij.mul(qj, f), f);
            }
            acc
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::deg::Deg;
    use crate::algebra::field::FieldElement;

    fn mono(e: i64) -> LaurentSeries {
        LaurentSeries::monomial(FieldElement::ONE, e)
    }

    #[test]
    fn norm_examples() {
        let f = Field::prime(2).unwrap();
        let y = vec![mono(2).add(&mono(0), &f), mono(-1)];
        assert_eq!(norm(&y, NormKind::Sup), DegValue::fin(2));
        assert_eq!(norm(&y, NormKind::Prod), DegValue::fin(1));
        let q = vec![mono(2), LaurentSeries::zero()];
        assert_eq!(norm(&q, NormKind::ProdPlus), DegValue::fin(2));
        assert_eq!(norm(&q, NormKind::Prod).deg, Deg::NegInf);
        assert_eq!(
            prod_plus(&[
                Polynomial::monomial(FieldElement::ONE, 2),
                Polynomial::zero()
            ]),
            2
        );
    }

    #[test]
    fn matvec_examples() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::new(1, 1, vec![mono(-1)]).unwrap();
        let out = matvec_affine(
            &y,
            &[Polynomial::x()],
            &[Polynomial::one()],
            &[LaurentSeries::zero()],
            &f,
        )
        .unwrap();
        assert!(out[0].is_exact_zero());

        let zero = MatrixF::zeros(1, 1);
        let out = matvec_affine(
            &zero,
            &[Polynomial::one()],
            &[Polynomial::zero()],
            &[mono(-3)],
            &f,
        )
        .unwrap();
        assert_eq!(out[0], mono(-3));

        let out = matvec_affine(
            &y,
            &[Polynomial::one()],
            &[Polynomial::zero()],
            &[LaurentSeries::zero()],
            &f,
        )
        .unwrap();
        assert_eq!(out[0], mono(-1));

        assert!(matches!(
            matvec_affine(&y, &[], &[Polynomial::zero()], &[LaurentSeries::zero()], &f),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn matvec_floor_shifts_by_max_degree() {
        let f = Field::prime(2).unwrap();
        let y = MatrixF::new(1, 2, vec![mono(-1).truncate(-20), mono(-2).truncate(-20)]).unwrap();
        let q = [Polynomial::monomial(FieldElement::ONE, 3), Polynomial::x()];
        let out =
            matvec_affine(&y, &q, &[Polynomial::zero()], &[LaurentSeries::zero()], &f).unwrap();
        assert_eq!(out[0].floor(), Some(-17));
    }

    #[test]
    fn uniform_floor_and_transpose() {
        let y = MatrixF::new(1, 2, vec![mono(-1).truncate(-10), mono(-2)]).unwrap();
        assert_eq!(y.get(0, 1).floor(), Some(-10));
        let t = y.transpose();
        assert_eq!((t.rows(), t.cols()), (2, 1));
        assert_eq!(t.get(1, 0), y.get(0, 1));
    }
}
