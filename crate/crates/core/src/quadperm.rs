//! The quadrinomial `f(x) = x̄^3 + a1 x̄^2 x + a2 x^2 x̄ + a3 x^3` over
//! GF(2^{2m}), where `x̄ = x^(2^m)`, its invariants, and two independent
//! permutation tests.
//!
//! `f(x) = x^3 h(x^(2^m - 1))` with `h(x) = x^3 + a1 x^2 + a2 x + a3`, so `f`
//! permutes GF(2^{2m}) iff `gcd(3, 2^m - 1) = 1` and
//! `g(x) = x^3 h(x)^(2^m - 1)` permutes the subgroup of order `2^m + 1`.
//! [`is_perm_structured`] decides permutation that way; [`is_perm_bruteforce`]
//! evaluates `f` everywhere.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::tower::{Fq2, TowerCtx};

/// Coefficients `(a1, a2, a3)` with `a1` in the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    pub a1: Fq,
    pub a2: Fq2,
    pub a3: Fq2,
}

impl Triple {
    pub fn new(a1: Fq, a2: Fq2, a3: Fq2) -> Triple {
        Triple { a1, a2, a3 }
    }

    /// `1 + a1 + a2 + a3`; when zero, `f(0) = f(1) = 0`.
    pub fn unit_sum(&self, ctx: &TowerCtx) -> Fq2 {
        ctx.one() + ctx.embed(self.a1) + self.a2 + self.a3
    }

    pub fn is_degenerate(&self, ctx: &TowerCtx) -> bool {
        self.unit_sum(ctx).is_zero()
    }

    /// `a1=<hex> a2=<u,v> a3=<u,v>`.
    pub fn encode(&self, ctx: &TowerCtx) -> String {
        format!(
            "a1={:x} a2={} a3={}",
            self.a1,
            ctx.format(self.a2),
            ctx.format(self.a3)
        )
    }

    pub fn parse(s: &str, ctx: &TowerCtx) -> Result<Triple> {
        let mut a1 = None;
        let mut a2 = None;
        let mut a3 = None;
        for part in s.split_whitespace() {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(part.into()))?;
            match key {
                "a1" => a1 = Some(ctx.base().parse_hex(value)?),
                "a2" => a2 = Some(ctx.parse(value)?),
                "a3" => a3 = Some(ctx.parse(value)?),
                _ => return Err(Error::Parse(part.into())),
            }
        }
        match (a1, a2, a3) {
            (Some(a1), Some(a2), Some(a3)) => Ok(Triple { a1, a2, a3 }),
            _ => Err(Error::Parse(s.into())),
        }
    }
}

/// `θ1..θ4` together with the conjugates of `θ2` and `θ3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaVector {
    pub t1: Fq2,
    pub t2: Fq2,
    pub t2bar: Fq2,
    pub t3: Fq2,
    pub t3bar: Fq2,
    pub t4: Fq2,
}

impl ThetaVector {
    /// `θ2 θ̄2 + θ3 θ̄3 = θ4 (θ1 + θ4)`, valid for every triple.
    pub fn norm_identity_holds(&self, ctx: &TowerCtx) -> bool {
        let lhs = ctx.mul(self.t2, self.t2bar) + ctx.mul(self.t3, self.t3bar);
        lhs == ctx.mul(self.t4, self.t1 + self.t4)
    }

    /// `θ2 θ3 + θ̄2 θ̄3 = θ2 θ̄2 (θ2 + θ̄2) / θ1`, valid on the Γ set.
    pub fn cross_identity_holds(&self, ctx: &TowerCtx) -> bool {
        let Ok(inv1) = ctx.inv(self.t1) else {
            return false;
        };
        let lhs = ctx.mul(self.t2, self.t3) + ctx.mul(self.t2bar, self.t3bar);
        let n2 = ctx.mul(self.t2, self.t2bar);
        lhs == ctx.mul(ctx.mul(n2, self.t2 + self.t2bar), inv1)
    }

    /// Some `λ` of norm 1 with `θ1 + θ2 λ̄ + θ̄2 λ = 0`, if one exists.
    pub fn unit_root(&self, ctx: &TowerCtx) -> Result<Option<Fq2>> {
        Ok(ctx.mu_iter()?.find(|&l| {
            (self.t1 + ctx.mul(self.t2, ctx.conj(l)) + ctx.mul(self.t2bar, l)).is_zero()
        }))
    }

    /// `θ2 θ̄2 = θ1 θ4`; holds on Γ whenever [`unit_root`](Self::unit_root) exists.
    pub fn product_identity_holds(&self, ctx: &TowerCtx) -> bool {
        ctx.mul(self.t2, self.t2bar) == ctx.mul(self.t1, self.t4)
    }
}

/// Coefficients of `F(x) = (ε1 x^3 + ε2 x^2 + ε3 x + ε4) / (τ1 x^3 + τ2 x^2 + τ3 x + τ4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalMapCoeffs {
    pub eps: [Fq2; 4],
    pub tau: [Fq2; 4],
}

pub fn f_eval(ctx: &TowerCtx, t: &Triple, x: Fq2) -> Fq2 {
    let xb = ctx.conj(x);
    let xb2 = ctx.square(xb);
    let x2 = ctx.square(x);
    let a1 = ctx.embed(t.a1);
    let left = ctx.mul(xb2, xb + ctx.mul(a1, x));
    let right = ctx.mul(x2, ctx.mul(t.a2, xb) + ctx.mul(t.a3, x));
    left + right
}

pub fn theta_of(ctx: &TowerCtx, t: &Triple) -> ThetaVector {
    let a1 = ctx.embed(t.a1);
    let a1sq = ctx.square(a1);
    let a2b = ctx.conj(t.a2);
    let a3b = ctx.conj(t.a3);
    let n2 = ctx.mul(t.a2, a2b);
    let n3 = ctx.mul(t.a3, a3b);
    let t2 = a1 + ctx.mul(a2b, t.a3);
    let t3 = a2b + ctx.mul(a1, a3b);
    ThetaVector {
        t1: ctx.one() + a1sq + n2 + n3,
        t2,
        t2bar: ctx.conj(t2),
        t3,
        t3bar: ctx.conj(t3),
        t4: a1sq + n2,
    }
}

/// Γ membership: `θ1 != 0`, `θ2^2 = θ1 θ̄3`, `tr(θ4 / θ1) = 1`.
///
/// Γ is only meaningful for odd `m`; even `m` always yields `false`.
pub fn gamma_member(ctx: &TowerCtx, t: &Triple) -> bool {
    if ctx.m() % 2 == 0 {
        return false;
    }
    gamma_conditions(ctx, &theta_of(ctx, t))
}

pub(crate) fn gamma_conditions(ctx: &TowerCtx, th: &ThetaVector) -> bool {
    if th.t1.is_zero() || ctx.square(th.t2) != ctx.mul(th.t1, th.t3bar) {
        return false;
    }
    ctx.base().trace(theta_ratio(ctx, th)) == 1
}

/// `θ4 / θ1` as a base-field element. Both are conjugation-fixed whenever
/// `a1` is in the base field; anything else is an internal error.
pub(crate) fn theta_ratio(ctx: &TowerCtx, th: &ThetaVector) -> Fq {
    let t1 = ctx.project(th.t1).expect("θ1 must lie in GF(2^m)");
    let t4 = ctx.project(th.t4).expect("θ4 must lie in GF(2^m)");
    ctx.base().div(t4, t1).expect("caller checked θ1 != 0")
}

/// Rescales `(a1, a2, a3)` with `a1 != 0` anywhere in GF(2^{2m}) to an
/// equivalent triple whose first coefficient lies in GF(2^m).
///
/// With `β^2 a1 = 1` and `λ = β / β̄`, `f(βx) = β̄^3 f'(x)` where `f'` has
/// coefficients `(a1 λ, a2 λ^2, a3 λ^3)`.
pub fn normalize_triple(ctx: &TowerCtx, a1: Fq2, a2: Fq2, a3: Fq2) -> Result<Triple> {
    if a1.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let beta = ctx.sqrt(ctx.inv(a1)?);
    let lambda = ctx.div(beta, ctx.conj(beta))?;
    let lambda2 = ctx.square(lambda);
    let c1 = ctx.mul(a1, lambda);
    let c1 = ctx.project(c1).expect("a1 β / β̄ = N(β)^-1 lies in GF(2^m)");
    Ok(Triple {
        a1: c1,
        a2: ctx.mul(a2, lambda2),
        a3: ctx.mul(a3, ctx.mul(lambda2, lambda)),
    })
}

pub fn phi(ctx: &TowerCtx, x: Fq) -> Result<Fq2> {
    ctx.phi(x)
}

pub fn rational_map_coeffs(ctx: &TowerCtx, t: &Triple) -> Result<RationalMapCoeffs> {
    let w = ctx.omega()?;
    let w2 = ctx.square(w);
    let one = ctx.one();
    let a1 = ctx.embed(t.a1);
    let (a2, a3) = (t.a2, t.a3);
    let (a2b, a3b) = (ctx.conj(a2), ctx.conj(a3));
    let m = |x, y| ctx.mul(x, y);
    let eps = [
        a1 + a2b + a3b + one,
        m(w2, a1) + m(w, a2b) + m(w2, a3b) + w,
        m(w2, a1) + m(w, a2b) + m(w, a3b) + w2,
        m(w, a1) + m(w2, a2b) + a3b + one,
    ];
    let tau = [
        a1 + a2 + a3 + one,
        m(w, a1) + m(w2, a2) + m(w, a3) + w2,
        m(w, a1) + m(w2, a2) + m(w2, a3) + w,
        m(w2, a1) + m(w, a2) + a3 + one,
    ];
    Ok(RationalMapCoeffs { eps, tau })
}

impl RationalMapCoeffs {
    fn cubic(ctx: &TowerCtx, c: &[Fq2; 4], x: Fq2) -> Fq2 {
        c.iter().fold(ctx.zero(), |acc, &k| ctx.mul(acc, x) + k)
    }

    pub fn numerator(&self, ctx: &TowerCtx, x: Fq2) -> Fq2 {
        Self::cubic(ctx, &self.eps, x)
    }

    pub fn denominator(&self, ctx: &TowerCtx, x: Fq2) -> Fq2 {
        Self::cubic(ctx, &self.tau, x)
    }

    /// Evaluates `F` at a base-field point.
    pub fn eval(&self, ctx: &TowerCtx, x: Fq) -> Result<Fq2> {
        let xe = ctx.embed(x);
        let den = self.denominator(ctx, xe);
        if den.is_zero() {
            return Err(Error::Pole(x.to_hex()));
        }
        ctx.div(self.numerator(ctx, xe), den)
    }
}

/// `F(x) = g(φ(x))` on GF(2^m), through the ε/τ coefficients.
#[allow(non_snake_case)]
pub fn F_eval(ctx: &TowerCtx, t: &Triple, x: Fq) -> Result<Fq2> {
    if t.is_degenerate(ctx) {
        return Err(Error::DegenerateTriple);
    }
    rational_map_coeffs(ctx, t)?.eval(ctx, x)
}

/// `h(z) = z^3 + a1 z^2 + a2 z + a3`.
pub fn h_eval(ctx: &TowerCtx, t: &Triple, z: Fq2) -> Fq2 {
    let a1 = ctx.embed(t.a1);
    ctx.mul(ctx.mul(z + a1, z) + t.a2, z) + t.a3
}

/// `g(z) = z^3 h(z)^(2^m - 1)`, total on GF(2^{2m}) with `0^(2^m - 1) = 0`.
pub fn g_total(ctx: &TowerCtx, t: &Triple, z: Fq2) -> Fq2 {
    let h = h_eval(ctx, t, z);
    ctx.mul(ctx.cube(z), ctx.pow(h, ctx.base().order() - 1))
}

/// `g` in fraction form `(ā3 z^3 + ā2 z^2 + a1 z + 1) / h(z)`, which agrees
/// with [`g_total`] on the norm-1 subgroup wherever `h(z) != 0`.
pub fn g_fraction(ctx: &TowerCtx, t: &Triple, z: Fq2) -> Option<Fq2> {
    let a1 = ctx.embed(t.a1);
    let num = ctx.mul(
        ctx.mul(ctx.mul(ctx.conj(t.a3), z) + ctx.conj(t.a2), z) + a1,
        z,
    ) + ctx.one();
    ctx.div(num, h_eval(ctx, t, z)).ok()
}

/// Decides permutation by evaluating `f` on all of GF(2^{2m}).
pub fn is_perm_bruteforce(ctx: &TowerCtx, t: &Triple) -> bool {
    let n = ctx.order() as usize;
    let mut seen = vec![0u64; n.div_ceil(64)];
    for x in ctx.elements() {
        let i = ctx.index(f_eval(ctx, t, x)) as usize;
        let (word, bit) = (i / 64, 1u64 << (i % 64));
        if seen[word] & bit != 0 {
            return false;
        }
        seen[word] |= bit;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Decides permutation through the subgroup criterion: `gcd(3, 2^m - 1) = 1`
/// and `g(z) = z^3 h(z)^(2^m - 1)` permuting the norm-1 subgroup.
///
/// `g` sends a root of `h` to 0, which lies outside the subgroup, so a zero
/// image rules out a permutation even when `g` is injective.
pub fn is_perm_structured(ctx: &TowerCtx, t: &Triple) -> bool {
    if gcd(3, ctx.base().order() - 1) != 1 || t.is_degenerate(ctx) {
        return false;
    }
    let Ok(mu) = ctx.mu_iter() else {
        return false;
    };
    let mut images = Vec::with_capacity(ctx.base().order() as usize + 1);
    for z in mu {
        let g = g_total(ctx, t, z);
        if g.is_zero() {
            return false;
        }
        images.push(ctx.index(g));
    }
    images.sort_unstable();
    images.windows(2).all(|w| w[0] != w[1])
}
