//! Exact arithmetic for F_q, Λ = F_q[X] and truncated Laurent series in X^{-1}.
//!
//! Absolute values never leave the degree domain: `|f| = e^deg f` is
//! represented by the integer `deg f` (see [`DegValue`]).

pub mod deg;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod series;

pub use deg::{Deg, DegValue};
pub use field::{Field, FieldElement, FieldSpec};
pub use matrix::{matvec_affine, max_degree, norm, prod_plus, MatrixF, NormKind, VectorF};
pub use parse::{parse_polynomial, parse_series};
pub use poly::Polynomial;
pub use series::LaurentSeries;

/// `(poly_part, frac_part)` with `f = poly_part + frac_part`, `deg frac_part <= -1`.
pub fn split_parts(f: &LaurentSeries) -> (Polynomial, LaurentSeries) {
    f.split_parts()
}

/// `f^{-1}` to the given floor.
pub fn laurent_inverse(
    f: &LaurentSeries,
    floor: i64,
    field: &Field,
) -> crate::Result<LaurentSeries> {
    f.inverse(floor, field)
}

pub fn poly_divmod(
    a: &Polynomial,
    b: &Polynomial,
    field: &Field,
) -> crate::Result<(Polynomial, Polynomial)> {
    a.divmod(b, field)
}
