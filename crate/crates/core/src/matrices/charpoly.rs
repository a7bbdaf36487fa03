use super::ExactMatrix;
use crate::exact::rational::rational;
use crate::exact::CycElem;

/// Coefficients (low to high, monic) of `det(x I - M)` by the
/// Faddeev-LeVerrier recurrence:
/// `N_k = M N_{k-1} + c_{d-k+1} I`, `c_{d-k} = -tr(M N_k) / k`.
pub fn charpoly_exact(m: &ExactMatrix) -> Vec<CycElem> {
    let ctx = m.context().clone();
    let d = m.dim();
    let mut coeffs = vec![ctx.zero(); d + 1];
    coeffs[d] = ctx.one();
    // N_0 = 0, so M N_0 = 0
    let mut mn: Vec<Vec<CycElem>> = vec![vec![ctx.zero(); d]; d];
    for k in 1..=d {
        let mut n_k = mn;
        for (i, row) in n_k.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[d - k + 1];
        }
        mn = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        let mut acc = ctx.zero();
                        for (t, nrow) in n_k.iter().enumerate() {
                            let (x, y) = (m.get(r, t), &nrow[c]);
                            if !x.is_zero() && !y.is_zero() {
                                acc = &acc + &(x * y);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let trace = (0..d).fold(ctx.zero(), |acc, i| &acc + &mn[i][i]);
        coeffs[d - k] = trace.scale(&rational(-1, k as i64));
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyc_context;
    use crate::matrices::{build_sun_matrix, det_exact};

    #[test]
    fn two_by_two() {
        let ctx = cyc_context(2).unwrap();
        let m = ExactMatrix::from_rows(
            &ctx,
            vec![
                vec![ctx.from_integer(1), ctx.from_integer(2)],
                vec![ctx.from_integer(3), ctx.from_integer(4)],
            ],
        )
        .unwrap();
        // x^2 - 5x - 2
        let p = charpoly_exact(&m);
        assert_eq!(p, vec![ctx.from_integer(-2), ctx.from_integer(-5), ctx.one()]);
    }

    #[test]
    fn constant_term_is_signed_determinant() {
        for n in 2..=7 {
            let ctx = cyc_context(n).unwrap();
            let m = build_sun_matrix(&ctx, false);
            let p = charpoly_exact(&m);
            let det = det_exact(&m);
            let expected = if n % 2 == 0 { det } else { -det };
            assert_eq!(p[0], expected);
            // zero diagonal: no x^(d-1) term
            assert!(p[n as usize - 1].is_zero());
        }
    }
}
