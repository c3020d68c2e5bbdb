use std::collections::BTreeMap;

use crate::tower::{Fq2, TowerCtx};

/// A polynomial in `x, y` over GF(2^{2m}), keyed by `(deg_x, deg_y)`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u8, u8), Fq2>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u8, u8), Fq2)>) -> BiPoly {
        let mut p = BiPoly::zero();
        for (k, c) in terms {
            p.add_term(k.0, k.1, c);
        }
        p
    }

    pub fn set(&mut self, i: u8, j: u8, c: Fq2) {
        if c.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), c);
        }
    }

    pub fn add_term(&mut self, i: u8, j: u8, c: Fq2) {
        let cur = self.terms.get(&(i, j)).copied();
        self.set(i, j, cur.map_or(c, |d| d + c));
    }

    pub fn coeff(&self, i: u8, j: u8) -> Option<Fq2> {
        self.terms.get(&(i, j)).copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u8, u8), Fq2)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &BiPoly, ctx: &TowerCtx) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), &a) in &self.terms {
            for (&(k, l), &b) in &other.terms {
                out.add_term(i + k, j + l, ctx.mul(a, b));
            }
        }
        out
    }

    pub fn scale(&self, s: Fq2, ctx: &TowerCtx) -> BiPoly {
        BiPoly::from_terms(self.terms().map(|(k, c)| (k, ctx.mul(c, s))))
    }

    pub fn conj(&self, ctx: &TowerCtx) -> BiPoly {
        BiPoly::from_terms(self.terms().map(|(k, c)| (k, ctx.conj(c))))
    }

    /// All coefficients are fixed by conjugation.
    pub fn is_rational(&self, ctx: &TowerCtx) -> bool {
        self.terms.values().all(|&c| ctx.is_base(c))
    }

    pub fn eval(&self, ctx: &TowerCtx, x: Fq2, y: Fq2) -> Fq2 {
        self.terms().fold(ctx.zero(), |acc, ((i, j), c)| {
            acc + ctx.mul(c, ctx.mul(ctx.pow(x, i as u64), ctx.pow(y, j as u64)))
        })
    }

    /// `[[[i, j], "coeff"], ...]` in increasing exponent order.
    pub fn to_json(&self, ctx: &TowerCtx) -> serde_json::Value {
        self.terms()
            .map(|((i, j), c)| serde_json::json!([[i, j], ctx.format(c)]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;

    #[test]
    fn expand_binomials() {
        let t = TowerCtx::for_degree(3).unwrap();
        let one = t.one();
        let a = Fq2::Tower(Fq::from_bits(3), Fq::from_bits(5));
        let p = BiPoly::from_terms([((1, 0), one), ((0, 0), a)]);
        let q = BiPoly::from_terms([((1, 0), one), ((0, 0), a)]);
        // (x + a)^2 = x^2 + a^2 in characteristic 2
        let sq = p.mul(&q, &t);
        assert_eq!(
            sq,
            BiPoly::from_terms([((2, 0), one), ((0, 0), t.square(a))])
        );
        let x = Fq2::Tower(Fq::from_bits(6), Fq::from_bits(1));
        assert_eq!(sq.eval(&t, x, one), t.square(x + a));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let t = TowerCtx::for_degree(3).unwrap();
        let mut p = BiPoly::from_terms([((1, 1), t.one())]);
        p.add_term(1, 1, t.one());
        assert!(p.is_zero());
        assert_eq!(p.to_json(&t), serde_json::json!([]));
    }
}
