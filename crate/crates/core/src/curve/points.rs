use crate::error::{Error, Result};
use crate::field::Fq;
use crate::tower::TowerCtx;

use super::coeffs::CurveCoeffs;

/// Largest `m` accepted by [`count_rational_zeros`].
pub const MAX_COUNT_DEGREE: u32 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ZeroCounts {
    pub total: u64,
    pub off_diagonal: u64,
}

/// Number of `y` in GF(2^m) with `a y^2 + b y + c = 0`.
fn count_roots(ctx: &TowerCtx, a: Fq, b: Fq, c: Fq) -> u64 {
    let f = ctx.base();
    match (a.is_zero(), b.is_zero()) {
        (true, true) => {
            if c.is_zero() {
                f.order()
            } else {
                0
            }
        }
        (true, false) | (false, true) => 1,
        (false, false) => {
            let inv = f.inv(a).expect("a != 0");
            let roots = f
                .solve_quadratic(f.mul(b, inv), f.mul(c, inv))
                .expect("linear coefficient is nonzero");
            if roots.is_some() {
                2
            } else {
                0
            }
        }
    }
}

/// Counts GF(2^m)-zeros of `L`, in total and off the line `x = y`.
///
/// The coefficients of `L` lie in GF(2^m), so for fixed `x` the zeros are
/// the roots of a base-field quadratic in `y`.
pub fn count_rational_zeros(ctx: &TowerCtx, c: &CurveCoeffs) -> Result<ZeroCounts> {
    if ctx.m() > MAX_COUNT_DEGREE {
        return Err(Error::CountTooLarge(ctx.m()));
    }
    let f = ctx.base();
    let proj = |z| ctx.project(z).ok_or(Error::TowerModeRequired);
    let [l22, l21, l20, l11, l10, l00] = c.all().map(proj);
    let (l22, l21, l20, l11, l10, l00) = (l22?, l21?, l20?, l11?, l10?, l00?);
    let quad = |p: Fq, q: Fq, r: Fq, x: Fq| f.mul(f.mul(p, x) + q, x) + r;
    let mut counts = ZeroCounts {
        total: 0,
        off_diagonal: 0,
    };
    for x in f.elements() {
        let a = quad(l22, l21, l20, x);
        let b = quad(l21, l11, l10, x);
        let cc = quad(l20, l10, l00, x);
        let n = count_roots(ctx, a, b, cc);
        let x2 = f.square(x);
        let on_diagonal = quad(l22, l11, l00, x2).is_zero() as u64;
        counts.total += n;
        counts.off_diagonal += n - on_diagonal;
    }
    Ok(counts)
}
