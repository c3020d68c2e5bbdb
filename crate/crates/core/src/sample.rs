//! Random elements, uniform triples, and a constructive Γ-member sampler.

use rand::Rng;

use crate::field::Fq;
use crate::quadperm::{gamma_member, Triple};
use crate::tower::{Fq2, TowerCtx};

pub fn random_base<R: Rng + ?Sized>(ctx: &TowerCtx, rng: &mut R) -> Fq {
    Fq::from_bits(rng.random::<u64>() & (ctx.base().order() - 1))
}

pub fn random_ext<R: Rng + ?Sized>(ctx: &TowerCtx, rng: &mut R) -> Fq2 {
    ctx.from_index(rng.random::<u64>() & (ctx.order() - 1))
}

/// Uniform over GF(2^m) x GF(2^{2m}) x GF(2^{2m}).
pub fn random_triple<R: Rng + ?Sized>(ctx: &TowerCtx, rng: &mut R) -> Triple {
    let a1 = random_base(ctx, rng);
    let a2 = random_ext(ctx, rng);
    let a3 = random_ext(ctx, rng);
    Triple::new(a1, a2, a3)
}

/// Every Γ member with the given `a1` and `a2 != 0`.
///
/// For each candidate norm `s = a3 ā3` in GF(2^m), `θ2^2 = θ1 θ̄3` becomes
/// `ā2^2 X^2 + (d + s) a1 X + a1^2 + (d + s) a2 = 0` in `X = a3`, where
/// `d = 1 + a1^2 + a2 ā2`. Roots of the right norm are then screened with
/// [`gamma_member`].
pub fn gamma_members_for(ctx: &TowerCtx, a1: Fq, a2: Fq2) -> Vec<Triple> {
    let mut out = Vec::new();
    if a2.is_zero() || ctx.m() % 2 == 0 {
        return out;
    }
    let f = ctx.base();
    let a1e = ctx.embed(a1);
    let a2b = ctx.conj(a2);
    let lead = ctx.square(a2b);
    let lead_inv = ctx.inv(lead).expect("a2 != 0");
    let d = f.square(a1) + ctx.norm(a2) + Fq::ONE;
    for s in f.elements() {
        let ds = ctx.embed(d + s);
        let b = ctx.mul(ctx.mul(ds, a1e), lead_inv);
        let c = ctx.mul(ctx.square(a1e) + ctx.mul(ds, a2), lead_inv);
        let roots = if b.is_zero() {
            let r = ctx.sqrt(c);
            vec![r]
        } else {
            match ctx.solve_quadratic_ext(b, c).expect("tower mode, b != 0") {
                Some((r0, r1)) => vec![r0, r1],
                None => vec![],
            }
        };
        for a3 in roots {
            if ctx.norm(a3) != s {
                continue;
            }
            let t = Triple::new(a1, a2, a3);
            if gamma_member(ctx, &t) {
                out.push(t);
            }
        }
    }
    out
}

/// Draws `(a1, a2)` uniformly and collects Γ members until `n` are found.
///
/// The result is not uniform over Γ: members sharing `(a1, a2)` with many
/// others are drawn together.
pub fn sample_gamma_members<R: Rng + ?Sized>(ctx: &TowerCtx, n: usize, rng: &mut R) -> Vec<Triple> {
    assert!(ctx.m() % 2 == 1, "Γ is empty for even m");
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let a1 = random_base(ctx, rng);
        let a2 = random_ext(ctx, rng);
        out.extend(gamma_members_for(ctx, a1, a2));
    }
    out.truncate(n);
    out
}
