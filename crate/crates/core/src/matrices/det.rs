use super::ExactMatrix;
use crate::combinatorics::permutations;
use crate::exact::CycElem;

/// Determinant by Gaussian elimination over Q(zeta_n), pivoting on the
/// first nonzero entry of each column.
pub fn det_exact(m: &ExactMatrix) -> CycElem {
    let ctx = m.context().clone();
    let d = m.dim();
    let mut rows: Vec<Vec<CycElem>> = m.rows().map(|r| r.to_vec()).collect();
    let mut negate = false;
    let mut det = ctx.one();
    for col in 0..d {
        let Some(p) = (col..d).find(|&r| !rows[r][col].is_zero()) else {
            return ctx.zero();
        };
        if p != col {
            rows.swap(p, col);
            negate = !negate;
        }
        let pivot = rows[col][col].clone();
        let pivot_inv = pivot.try_inv().expect("pivot is nonzero");
        let (top, bottom) = rows.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &pivot_inv;
            for c in col + 1..d {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot_row[c]);
                }
            }
            row[col] = ctx.zero();
        }
        det = &det * &pivot;
    }
    if negate {
        -det
    } else {
        det
    }
}

/// Signed Leibniz sum over all `dim!` permutations. Intended as an oracle
/// for small matrices.
pub fn det_leibniz(m: &ExactMatrix) -> CycElem {
    let ctx = m.context();
    let mut acc = ctx.zero();
    for p in permutations(m.dim()) {
        let mut term = ctx.one();
        for (r, &c) in p.mapping.iter().enumerate() {
            term = &term * m.get(r, c - 1);
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        acc = if p.sign > 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
