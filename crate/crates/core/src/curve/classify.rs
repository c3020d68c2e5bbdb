use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadperm::{gamma_conditions, theta_of, ThetaVector, Triple};
use crate::tower::{Fq2, TowerCtx};

use super::coeffs::{curve_coeffs, CurveCoeffs};
use super::factor::BiPoly;

/// How `L(x, y)` splits into absolutely irreducible factors not defined
/// over GF(2^m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CurveClass {
    /// Four linear factors `(x + a)(x + ā)(y + a)(y + ā)`.
    Quad1111,
    /// Two conjugate factors of bidegree (1, 1).
    Quad22,
    /// `ℓ22 = ℓ21 = 0` and two conjugate linear factors.
    Lin11,
    /// Some absolutely irreducible component is defined over GF(2^m).
    RationalComponent,
    ZeroPolynomial,
    /// `1 + a1 + a2 + a3 = 0`; the curve is not considered.
    ExcludedDegenerate,
}

impl CurveClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveClass::Quad1111 => "Quad1111",
            CurveClass::Quad22 => "Quad22",
            CurveClass::Lin11 => "Lin11",
            CurveClass::RationalComponent => "RationalComponent",
            CurveClass::ZeroPolynomial => "ZeroPolynomial",
            CurveClass::ExcludedDegenerate => "ExcludedDegenerate",
        }
    }

    /// Classes for which factors are reconstructed.
    pub fn splits(self) -> bool {
        matches!(
            self,
            CurveClass::Quad1111 | CurveClass::Quad22 | CurveClass::Lin11
        )
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub class: CurveClass,
    /// Leading scalar multiplying the factor product.
    pub scalar: Option<Fq2>,
    pub factors: Vec<BiPoly>,
    pub product_verified: bool,
    /// Each factor has a coefficient outside GF(2^m).
    pub factors_irrational: bool,
    pub off_diagonal_rational_zeros: Option<u64>,
}

impl FactorizationReport {
    fn bare(class: CurveClass) -> FactorizationReport {
        FactorizationReport {
            class,
            scalar: None,
            factors: Vec::new(),
            product_verified: false,
            factors_irrational: false,
            off_diagonal_rational_zeros: None,
        }
    }

    pub fn to_json(&self, ctx: &TowerCtx) -> serde_json::Value {
        serde_json::json!({
            "class": self.class.as_str(),
            "scalar": self.scalar.map(|s| ctx.format(s)),
            "factors": self.factors.iter().map(|f| f.to_json(ctx)).collect::<Vec<_>>(),
            "product_verified": self.product_verified,
            "factors_irrational": self.factors_irrational,
            "off_diagonal_rational_zeros": self.off_diagonal_rational_zeros,
        })
    }
}

fn lin11_conditions(ctx: &TowerCtx, th: &ThetaVector) -> bool {
    let s2 = th.t2 + th.t2bar;
    if th.t1 != s2 || s2.is_zero() {
        return false;
    }
    let num = ctx.square(th.t2) + ctx.square(th.t2bar) + ctx.mul(th.t2, th.t2bar);
    let gamma = ctx.div(num, s2).expect("θ2 + θ̄2 != 0");
    th.t3 == th.t2 + gamma && th.t4 == gamma + s2
}

/// The class of `L` from the θ-invariants alone.
pub fn class_of(ctx: &TowerCtx, th: &ThetaVector, c: &CurveCoeffs) -> CurveClass {
    if c.is_zero() {
        return CurveClass::ZeroPolynomial;
    }
    if lin11_conditions(ctx, th) {
        return CurveClass::Lin11;
    }
    if !c.l22.is_zero() && gamma_conditions(ctx, th) {
        let lhs = ctx.square(th.t4);
        let rhs = ctx.square(th.t1) + ctx.mul(th.t3, th.t3bar);
        return if lhs == rhs {
            CurveClass::Quad1111
        } else {
            CurveClass::Quad22
        };
    }
    CurveClass::RationalComponent
}

/// Classifies `L` and, for splitting classes, reconstructs its factors.
pub fn classify(ctx: &TowerCtx, th: &ThetaVector) -> Result<FactorizationReport> {
    let c = curve_coeffs(ctx, th)?;
    let class = class_of(ctx, th, &c);
    if class.splits() {
        reconstruct_factors(ctx, &c, class)
    } else {
        Ok(FactorizationReport::bare(class))
    }
}

/// [`classify`] after screening `1 + a1 + a2 + a3 = 0`.
pub fn classify_triple(ctx: &TowerCtx, t: &Triple) -> Result<FactorizationReport> {
    if t.is_degenerate(ctx) {
        return Ok(FactorizationReport::bare(CurveClass::ExcludedDegenerate));
    }
    classify(ctx, &theta_of(ctx, t))
}

/// The root with the smaller `(v, u)` encoding comes first.
fn ordered(ctx: &TowerCtx, r: (Fq2, Fq2)) -> (Fq2, Fq2) {
    let key = |z: Fq2| {
        let i = ctx.index(z);
        (i >> ctx.m(), i & (ctx.base().order() - 1))
    };
    if key(r.0) <= key(r.1) {
        r
    } else {
        (r.1, r.0)
    }
}

/// Roots of `Z^2 + (p/s) Z + q/s`, both outside GF(2^m).
fn irrational_roots(
    ctx: &TowerCtx,
    s: Fq2,
    p: Fq2,
    q: Fq2,
    what: &'static str,
) -> Result<(Fq2, Fq2)> {
    let fail = Error::ReconstructionFailed(what);
    if p.is_zero() {
        return Err(fail);
    }
    let b = ctx.div(p, s)?;
    let c = ctx.div(q, s)?;
    let roots = ctx.solve_quadratic_ext(b, c)?.ok_or(fail.clone())?;
    if ctx.is_base(roots.0) {
        return Err(fail);
    }
    Ok(ordered(ctx, roots))
}

fn linear(terms: &[((u8, u8), Fq2)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().copied())
}

fn finish(
    ctx: &TowerCtx,
    c: &CurveCoeffs,
    class: CurveClass,
    scalar: Fq2,
    factors: Vec<BiPoly>,
) -> FactorizationReport {
    let product = factors
        .iter()
        .fold(BiPoly::from_terms([((0, 0), scalar)]), |acc, f| {
            acc.mul(f, ctx)
        });
    FactorizationReport {
        class,
        scalar: Some(scalar),
        product_verified: product == c.to_bipoly(),
        factors_irrational: factors.iter().all(|f| !f.is_rational(ctx)),
        factors,
        off_diagonal_rational_zeros: None,
    }
}

/// Recovers explicit factors of `L` for a splitting class and expands their
/// product to confirm all nine coefficients.
pub fn reconstruct_factors(
    ctx: &TowerCtx,
    c: &CurveCoeffs,
    class: CurveClass,
) -> Result<FactorizationReport> {
    let one = ctx.one();
    match class {
        CurveClass::Quad1111 => {
            let (a, abar) = irrational_roots(ctx, c.l22, c.l21, c.l20, "Quad1111")?;
            let factors = vec![
                linear(&[((1, 0), one), ((0, 0), a)]),
                linear(&[((1, 0), one), ((0, 0), abar)]),
                linear(&[((0, 1), one), ((0, 0), a)]),
                linear(&[((0, 1), one), ((0, 0), abar)]),
            ];
            Ok(finish(ctx, c, class, c.l22, factors))
        }
        CurveClass::Quad22 => {
            let (a, abar) = irrational_roots(ctx, c.l22, c.l21, c.l20, "Quad22")?;
            // xy + a x + ā y + b with b in GF(2^m)
            let b = ctx.sqrt(ctx.div(c.l00, c.l22)?);
            let pair = |p: Fq2, q: Fq2, r: Fq2, s: Fq2, u: Fq2, v: Fq2| {
                vec![
                    linear(&[((1, 1), one), ((1, 0), p), ((0, 1), q), ((0, 0), r)]),
                    linear(&[((1, 1), one), ((1, 0), s), ((0, 1), u), ((0, 0), v)]),
                ]
            };
            let report = finish(ctx, c, class, c.l22, pair(a, abar, b, abar, a, b));
            if report.product_verified {
                return Ok(report);
            }
            // xy + a x + a y + b with b a root of Z^2 + (ℓ11/ℓ22) Z + ℓ00/ℓ22
            let (b0, b1) = irrational_roots(ctx, c.l22, c.l11, c.l00, "Quad22")?;
            for (x, y) in [(b0, b1), (b1, b0)] {
                let r = finish(ctx, c, class, c.l22, pair(a, a, x, abar, abar, y));
                if r.product_verified {
                    return Ok(r);
                }
            }
            Err(Error::ReconstructionFailed("Quad22"))
        }
        CurveClass::Lin11 => {
            // (x + a y + b)(x + ā y + b̄) needs a ā = 1, (a + ā) ℓ20 = ℓ11,
            // (b + b̄) ℓ20 = ℓ10 and b b̄ ℓ20 = ℓ00
            let (a, abar, b, bbar) = if c.l10.is_zero() {
                let b = ctx.sqrt(ctx.div(c.l00, c.l20)?);
                let (a, abar) = irrational_roots(ctx, c.l20, c.l11, c.l20, "Lin11")?;
                (a, abar, b, b)
            } else {
                let (b, bbar) = irrational_roots(ctx, c.l20, c.l10, c.l00, "Lin11")?;
                let a = ctx.div(b, bbar)?;
                (a, ctx.conj(a), b, bbar)
            };
            let factors = vec![
                linear(&[((1, 0), one), ((0, 1), a), ((0, 0), b)]),
                linear(&[((1, 0), one), ((0, 1), abar), ((0, 0), bbar)]),
            ];
            Ok(finish(ctx, c, class, c.l20, factors))
        }
        _ => Err(Error::ReconstructionFailed(class.as_str())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;

    #[test]
    fn zero_triple_has_rational_component() {
        let t = TowerCtx::for_degree(3).unwrap();
        let th = theta_of(&t, &Triple::new(Fq::ZERO, t.zero(), t.zero()));
        assert_eq!(
            classify(&t, &th).unwrap().class,
            CurveClass::RationalComponent
        );
    }

    #[test]
    fn degenerate_is_excluded() {
        let t = TowerCtx::for_degree(3).unwrap();
        let tr = Triple::new(Fq::ONE, t.one(), t.one());
        assert_eq!(
            classify_triple(&t, &tr).unwrap().class,
            CurveClass::ExcludedDegenerate
        );
    }

    #[test]
    fn non_splitting_class_is_rejected() {
        let t = TowerCtx::for_degree(3).unwrap();
        let th = theta_of(&t, &Triple::new(Fq::ZERO, t.zero(), t.zero()));
        let c = curve_coeffs(&t, &th).unwrap();
        assert!(reconstruct_factors(&t, &c, CurveClass::RationalComponent).is_err());
    }
}
