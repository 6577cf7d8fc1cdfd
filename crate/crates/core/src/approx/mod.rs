//! Dirichlet systems and best-approximation degrees.
//!
//! `B(T)` is the least value of `m · max_i deg(Y_i q + p_i + θ_i)` over
//! `q ≠ 0` with `n · max deg q_j <= T - 1`; for fixed `q` the optimal `p_i`
//! is minus the polynomial part of `Y_i q + θ_i`. The multiplicative
//! variant `B×(T)` sums row degrees instead and bounds `Σ max(0, deg q_j)`.

mod best;
mod digits;
mod dirichlet;

use serde::Serialize;

use crate::algebra::{Field, LaurentSeries, MatrixF, Polynomial};

pub use best::{best_error, best_error_mult, BestError, Method};
pub use digits::DecisionFloor;
pub use dirichlet::{
    dirichlet_solve, verify_dirichlet, DirichletMode, DirichletOutcome, DirichletTarget,
};

/// A pair `α = (p, q) ∈ Λ^m × (Λ^n \ {0})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub p: Vec<Polynomial>,
    pub q: Vec<Polynomial>,
}

impl Witness {
    pub fn new(p: Vec<Polynomial>, q: Vec<Polynomial>) -> Self {
        Witness { p, q }
    }

    pub fn q_is_zero(&self) -> bool {
        self.q.iter().all(Polynomial::is_zero)
    }

    /// Coordinatewise difference `α - α'`.
    pub fn sub(&self, other: &Witness, f: &Field) -> Witness {
        Witness {
            p: self
                .p
                .iter()
                .zip(&other.p)
                .map(|(a, b)| a.sub(b, f))
                .collect(),
            q: self
                .q
                .iter()
                .zip(&other.q)
                .map(|(a, b)| a.sub(b, f))
                .collect(),
        }
    }
}

/// Optimal `p` for `q` and the resulting errors `frac(Y_i q + θ_i)`.
pub fn row_errors(
    y: &MatrixF,
    theta: &[LaurentSeries],
    q: &[Polynomial],
    f: &Field,
) -> (Vec<Polynomial>, Vec<LaurentSeries>) {
    let qs: Vec<LaurentSeries> = q.iter().map(LaurentSeries::from_poly).collect();
    (0..y.rows())
        .map(|i| {
            let mut acc = theta[i].clone();
            for (yij, qj) in y.row(i).iter().zip(&qs) {
                if !qj.is_exact_zero() {
                    acc = acc.add(&yij.mul(qj, f), f);
                }
            }
            let (poly, frac) = acc.split_parts();
            (poly.neg(f), frac)
        })
        .unzip()
}
