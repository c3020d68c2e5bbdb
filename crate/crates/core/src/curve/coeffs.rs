use crate::error::Result;
use crate::field::Fq;
use crate::quadperm::ThetaVector;
use crate::tower::{Fq2, TowerCtx};

use super::factor::BiPoly;

/// `ℓ22, ℓ21, ℓ20, ℓ11, ℓ10, ℓ00`; the remaining three follow from
/// `ℓ12 = ℓ21`, `ℓ02 = ℓ20`, `ℓ01 = ℓ10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveCoeffs {
    pub l22: Fq2,
    pub l21: Fq2,
    pub l20: Fq2,
    pub l11: Fq2,
    pub l10: Fq2,
    pub l00: Fq2,
}

pub fn curve_coeffs(ctx: &TowerCtx, th: &ThetaVector) -> Result<CurveCoeffs> {
    let w = ctx.omega()?;
    let w2 = ctx.square(w);
    let m = |a, b| ctx.mul(a, b);
    Ok(CurveCoeffs {
        l22: th.t1 + th.t3 + th.t3bar,
        l21: th.t1 + th.t2 + th.t2bar,
        l20: th.t4 + m(w, th.t3) + m(w2, th.t3bar) + m(w, th.t2) + m(w2, th.t2bar),
        l11: th.t1,
        l10: th.t1 + m(w2, th.t2) + m(w, th.t2bar),
        l00: th.t1 + m(w2, th.t3) + m(w, th.t3bar),
    })
}

impl CurveCoeffs {
    /// `ℓij`, the coefficient of `x^i y^j`.
    pub fn get(&self, i: u8, j: u8) -> Fq2 {
        match (i.max(j), i.min(j)) {
            (2, 2) => self.l22,
            (2, 1) => self.l21,
            (2, 0) => self.l20,
            (1, 1) => self.l11,
            (1, 0) => self.l10,
            (0, 0) => self.l00,
            _ => panic!("L has degree 2 in each variable"),
        }
    }

    pub fn all(&self) -> [Fq2; 6] {
        [self.l22, self.l21, self.l20, self.l11, self.l10, self.l00]
    }

    pub fn is_zero(&self) -> bool {
        self.all().iter().all(|c| c.is_zero())
    }

    /// Every `ℓij` lies in GF(2^m).
    pub fn is_rational(&self, ctx: &TowerCtx) -> bool {
        self.all().iter().all(|&c| ctx.is_base(c))
    }

    pub fn to_bipoly(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for i in 0..3 {
            for j in 0..3 {
                p.set(i, j, self.get(i, j));
            }
        }
        p
    }

    /// `L(x, y)` at points of GF(2^{2m}).
    pub fn eval_ext(&self, ctx: &TowerCtx, x: Fq2, y: Fq2) -> Fq2 {
        let row = |i: u8| {
            let c = |j| self.get(i, j);
            ctx.mul(ctx.mul(c(2), y) + c(1), y) + c(0)
        };
        ctx.mul(ctx.mul(row(2), x) + row(1), x) + row(0)
    }

    /// `L(x, y)` at GF(2^m)-points.
    pub fn eval(&self, ctx: &TowerCtx, x: Fq, y: Fq) -> Fq2 {
        self.eval_ext(ctx, ctx.embed(x), ctx.embed(y))
    }
}

#[allow(non_snake_case)]
pub fn L_eval(ctx: &TowerCtx, c: &CurveCoeffs, x: Fq, y: Fq) -> Fq2 {
    c.eval(ctx, x, y)
}
