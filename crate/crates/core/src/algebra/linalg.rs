//! Gaussian elimination over F_q.
//!
//! Column 0 is the least significant coordinate for the lexicographic order
//! used to pick canonical solutions: vectors are compared from the highest
//! column index down.

use super::field::{Field, FieldElement};

/// Reduced row echelon form of an augmented system `[A | b]`.
struct Echelon {
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
    ncols: usize,
    consistent: bool,
}

fn eliminate(
    mut a: Vec<Vec<FieldElement>>,
    b: Vec<FieldElement>,
    ncols: usize,
    f: &Field,
) -> Echelon {
    for (row, rhs) in a.iter_mut().zip(b) {
        debug_assert_eq!(row.len(), ncols);
        row.push(rhs);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let inv = f.inv(a[r][c]).expect("nonzero pivot");
        for v in a[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v = f.sub(*v, f.mul(factor, pv));
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let consistent = a[r..].iter().all(|row| row[ncols].is_zero());
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        ncols,
        consistent,
    }
}

/// The lexicographically least nonzero solution of `A x = b`, if any.
pub fn lex_min_nonzero_solution(
    a: Vec<Vec<FieldElement>>,
    b: Vec<FieldElement>,
    ncols: usize,
    f: &Field,
) -> Option<Vec<FieldElement>> {
    if ncols == 0 {
        return None;
    }
    let ech = eliminate(a, b, ncols, f);
    if !ech.consistent {
        return None;
    }
    let mut x = vec![FieldElement::ZERO; ech.ncols];
    for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
        x[c] = row[ech.ncols];
    }
    if x.iter().any(|v| !v.is_zero()) {
        return Some(x);
    }
    let mut is_pivot = vec![false; ech.ncols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let free = (0..ech.ncols).find(|&c| !is_pivot[c])?;
    x[free] = FieldElement::ONE;
    for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
        x[c] = f.neg(row[free]);
    }
    Some(x)
}

/// Rank of `A`.
pub fn rank(a: Vec<Vec<FieldElement>>, ncols: usize, f: &Field) -> usize {
    let n = a.len();
    eliminate(a, vec![FieldElement::ZERO; n], ncols, f)
        .pivots
        .len()
}
