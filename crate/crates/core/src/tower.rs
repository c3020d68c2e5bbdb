//! The quadratic extension GF(2^{2m}) over GF(2^m).
//!
//! For odd `m` the polynomial `w^2 + w + 1` is irreducible over GF(2^m) and
//! elements are stored as `u + v*w` with `u, v` in the base field. In this
//! basis conjugation `z -> z^(2^m)` is `(u + v) + v*w`, two XORs.
//!
//! For even `m` no such `w` exists outside the base field. Those fields use a
//! direct degree-2m polynomial representation together with an explicit
//! embedding of GF(2^m); they only serve brute-force permutation checks.

use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// Largest base degree supported in direct mode. Building the embedding
/// enumerates the multiplicative group of the subfield.
pub const DIRECT_MAX_DEGREE: u32 = 16;

/// An element of GF(2^{2m}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fq2 {
    /// `u + v*w` over the base field.
    Tower(Fq, Fq),
    /// Bits of a polynomial of degree below 2m.
    Direct(u64),
}

impl Add for Fq2 {
    type Output = Fq2;

    #[inline]
    fn add(self, rhs: Fq2) -> Fq2 {
        match (self, rhs) {
            (Fq2::Tower(a, b), Fq2::Tower(c, d)) => Fq2::Tower(a + c, b + d),
            (Fq2::Direct(a), Fq2::Direct(b)) => Fq2::Direct(a ^ b),
            _ => panic!("{}", Error::ContextMismatch),
        }
    }
}

impl AddAssign for Fq2 {
    #[inline]
    fn add_assign(&mut self, rhs: Fq2) {
        *self = *self + rhs;
    }
}

impl Fq2 {
    pub fn is_zero(self) -> bool {
        matches!(self, Fq2::Tower(Fq::ZERO, Fq::ZERO) | Fq2::Direct(0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Tower,
    Direct,
}

#[derive(Clone, Debug)]
struct DirectRepr {
    wide: FieldCtx,
    // images of x^i, i < m, under the embedding of the base field
    basis: Vec<u64>,
    // echelon form of `basis`: (vector, combination of basis indices), sorted
    // by leading bit, descending
    pivots: Vec<(u64, u64)>,
    omega: Option<u64>,
}

#[derive(Clone, Debug)]
enum Repr {
    Tower,
    Direct(DirectRepr),
}

/// Context for GF(2^{2m}); immutable and freely shareable.
#[derive(Clone, Debug)]
pub struct TowerCtx {
    base: FieldCtx,
    repr: Repr,
}

impl TowerCtx {
    /// Tower representation for odd `m`, direct representation for even `m`.
    pub fn new(base: FieldCtx) -> Result<TowerCtx> {
        if base.degree() % 2 == 1 {
            Ok(TowerCtx {
                base,
                repr: Repr::Tower,
            })
        } else {
            Self::direct(base)
        }
    }

    pub fn for_degree(m: u32) -> Result<TowerCtx> {
        Self::new(FieldCtx::new(m)?)
    }

    /// Forces the direct representation (any parity), e.g. to cross-check
    /// tower arithmetic through a field isomorphism.
    pub fn direct(base: FieldCtx) -> Result<TowerCtx> {
        let m = base.degree();
        if m > DIRECT_MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(m));
        }
        let wide = FieldCtx::wide(2 * m);
        let root = subfield_root(&base, &wide);
        let mut basis = Vec::with_capacity(m as usize);
        let mut p = Fq::ONE;
        for _ in 0..m {
            basis.push(p.bits());
            p = wide.mul(p, root);
        }
        let pivots = echelon(&basis);
        let omega = if m % 2 == 1 {
            Some(wide.pow(wide.generator(), (wide.order() - 1) / 3).bits())
        } else {
            None
        };
        Ok(TowerCtx {
            base,
            repr: Repr::Direct(DirectRepr {
                wide,
                basis,
                pivots,
                omega,
            }),
        })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    /// The base degree m.
    pub fn m(&self) -> u32 {
        self.base.degree()
    }

    pub fn mode(&self) -> Mode {
        match self.repr {
            Repr::Tower => Mode::Tower,
            Repr::Direct(_) => Mode::Direct,
        }
    }

    /// Number of elements, `2^{2m}`.
    pub fn order(&self) -> u64 {
        1u64 << (2 * self.m())
    }

    /// Modulus of the degree-2m representation (direct mode only).
    pub fn direct_modulus(&self) -> Option<u64> {
        match &self.repr {
            Repr::Tower => None,
            Repr::Direct(d) => Some(d.wide.modulus()),
        }
    }

    pub fn zero(&self) -> Fq2 {
        self.embed(Fq::ZERO)
    }

    pub fn one(&self) -> Fq2 {
        self.embed(Fq::ONE)
    }

    /// The inclusion GF(2^m) -> GF(2^{2m}).
    #[inline]
    pub fn embed(&self, a: Fq) -> Fq2 {
        match &self.repr {
            Repr::Tower => Fq2::Tower(a, Fq::ZERO),
            Repr::Direct(d) => {
                let mut bits = a.bits();
                let mut acc = 0u64;
                let mut i = 0;
                while bits != 0 {
                    if bits & 1 == 1 {
                        acc ^= d.basis[i];
                    }
                    bits >>= 1;
                    i += 1;
                }
                Fq2::Direct(acc)
            }
        }
    }

    /// Inverse of [`embed`](Self::embed): `Some(a)` iff `z` lies in GF(2^m).
    pub fn project(&self, z: Fq2) -> Option<Fq> {
        match (&self.repr, z) {
            (Repr::Tower, Fq2::Tower(u, v)) => v.is_zero().then_some(u),
            (Repr::Direct(d), Fq2::Direct(mut bits)) => {
                let mut combo = 0u64;
                for &(vec, c) in &d.pivots {
                    let lead = 63 - vec.leading_zeros();
                    if bits >> lead & 1 == 1 {
                        bits ^= vec;
                        combo ^= c;
                    }
                }
                (bits == 0).then_some(Fq::from_bits(combo))
            }
            _ => panic!("{}", Error::ContextMismatch),
        }
    }

    /// Whether `z` is fixed by conjugation, i.e. lies in the base field.
    pub fn is_base(&self, z: Fq2) -> bool {
        self.conj(z) == z
    }

    #[inline]
    pub fn mul(&self, a: Fq2, b: Fq2) -> Fq2 {
        match (&self.repr, a, b) {
            (Repr::Tower, Fq2::Tower(u1, v1), Fq2::Tower(u2, v2)) => {
                let f = &self.base;
                let uu = f.mul(u1, u2);
                let vv = f.mul(v1, v2);
                let cross = f.mul(u1 + v1, u2 + v2);
                // w^2 = w + 1
                Fq2::Tower(uu + vv, cross + uu)
            }
            (Repr::Direct(d), Fq2::Direct(x), Fq2::Direct(y)) => {
                Fq2::Direct(d.wide.mul(Fq::from_bits(x), Fq::from_bits(y)).bits())
            }
            _ => panic!("{}", Error::ContextMismatch),
        }
    }

    /// Product with a base-field scalar.
    #[inline]
    pub fn scale(&self, a: Fq2, s: Fq) -> Fq2 {
        match a {
            Fq2::Tower(u, v) => Fq2::Tower(self.base.mul(u, s), self.base.mul(v, s)),
            Fq2::Direct(_) => self.mul(a, self.embed(s)),
        }
    }

    #[inline]
    pub fn square(&self, a: Fq2) -> Fq2 {
        match a {
            Fq2::Tower(u, v) => {
                let v2 = self.base.square(v);
                Fq2::Tower(self.base.square(u) + v2, v2)
            }
            Fq2::Direct(_) => self.mul(a, a),
        }
    }

    pub fn cube(&self, a: Fq2) -> Fq2 {
        self.mul(self.square(a), a)
    }

    pub fn pow(&self, a: Fq2, mut e: u64) -> Fq2 {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Conjugation `z -> z^(2^m)`.
    #[inline]
    pub fn conj(&self, z: Fq2) -> Fq2 {
        match z {
            Fq2::Tower(u, v) => Fq2::Tower(u + v, v),
            Fq2::Direct(_) => (0..self.m()).fold(z, |x, _| self.square(x)),
        }
    }

    /// Relative norm `z * conj(z)`, an element of the base field.
    pub fn norm(&self, z: Fq2) -> Fq {
        match z {
            Fq2::Tower(u, v) => {
                let f = &self.base;
                f.square(u) + f.mul(u, v) + f.square(v)
            }
            Fq2::Direct(_) => self
                .project(self.mul(z, self.conj(z)))
                .expect("norm lies in the base field"),
        }
    }

    /// Relative trace `z + conj(z)`, an element of the base field.
    pub fn rel_trace(&self, z: Fq2) -> Fq {
        match z {
            Fq2::Tower(_, v) => v,
            Fq2::Direct(_) => self
                .project(z + self.conj(z))
                .expect("trace lies in the base field"),
        }
    }

    /// Absolute trace GF(2^{2m}) -> GF(2).
    pub fn abs_trace(&self, z: Fq2) -> u8 {
        self.base.trace(self.rel_trace(z))
    }

    pub fn inv(&self, z: Fq2) -> Result<Fq2> {
        if z.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (&self.repr, z) {
            (Repr::Tower, Fq2::Tower(..)) => {
                let n = self.base.inv(self.norm(z))?;
                Ok(self.scale(self.conj(z), n))
            }
            (Repr::Direct(d), Fq2::Direct(x)) => {
                Ok(Fq2::Direct(d.wide.inv(Fq::from_bits(x))?.bits()))
            }
            _ => Err(Error::ContextMismatch),
        }
    }

    pub fn div(&self, a: Fq2, b: Fq2) -> Result<Fq2> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The unique square root `z^(2^(2m-1))`.
    pub fn sqrt(&self, z: Fq2) -> Fq2 {
        (1..2 * self.m()).fold(z, |x, _| self.square(x))
    }

    /// The primitive cube root of unity `w` outside GF(2^m); exists iff m is odd.
    pub fn omega(&self) -> Result<Fq2> {
        match &self.repr {
            Repr::Tower => Ok(Fq2::Tower(Fq::ZERO, Fq::ONE)),
            Repr::Direct(d) => d
                .omega
                .map(Fq2::Direct)
                .ok_or(Error::OmegaUnavailable(self.m())),
        }
    }

    /// `phi(x) = (x + w^2) / (x + w)`, a bijection from GF(2^m) onto the
    /// norm-1 subgroup minus {1}.
    pub fn phi(&self, x: Fq) -> Result<Fq2> {
        let w = self.omega()?;
        let w2 = self.square(w);
        let xe = self.embed(x);
        self.div(xe + w2, xe + w)
    }

    /// The subgroup of order `2^m + 1`: first `1`, then `phi(x)` for `x` in
    /// increasing bit order.
    pub fn mu_iter(&self) -> Result<impl Iterator<Item = Fq2> + '_> {
        self.omega()?;
        let one = self.one();
        Ok(std::iter::once(one).chain(
            self.base
                .elements()
                .map(move |x| self.phi(x).expect("x + w is never zero")),
        ))
    }

    /// Dense index in `0..2^{2m}`: `u | v << m` in tower mode, the raw bits
    /// in direct mode.
    #[inline]
    pub fn index(&self, z: Fq2) -> u64 {
        match z {
            Fq2::Tower(u, v) => u.bits() | v.bits() << self.m(),
            Fq2::Direct(b) => b,
        }
    }

    #[inline]
    pub fn from_index(&self, i: u64) -> Fq2 {
        match self.repr {
            Repr::Tower => {
                let mask = self.base.order() - 1;
                Fq2::Tower(Fq::from_bits(i & mask), Fq::from_bits(i >> self.m() & mask))
            }
            Repr::Direct(_) => Fq2::Direct(i),
        }
    }

    /// Every element, in increasing index order.
    pub fn elements(&self) -> impl Iterator<Item = Fq2> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    /// Solves `x^2 + b x + c = 0` over GF(2^{2m}); `None` iff the absolute
    /// trace of `c / b^2` is 1.
    pub fn solve_quadratic_ext(&self, b: Fq2, c: Fq2) -> Result<Option<(Fq2, Fq2)>> {
        if b.is_zero() {
            return Err(Error::ZeroLinearCoefficient);
        }
        let t = self.div(c, self.square(b))?;
        match t {
            Fq2::Tower(c0, c1) => {
                // y = y0 + y1 w solves y^2 + y = t iff
                //   y1^2 + y1 = c1  and  y0^2 + y0 = c0 + y1^2
                let f = &self.base;
                if f.trace(c1) == 1 {
                    return Ok(None);
                }
                let mut y1 = f.half_trace(c1).ok_or(Error::EvenDegree(self.m()))?;
                if f.trace(c0 + f.square(y1)) == 1 {
                    y1 += Fq::ONE;
                }
                let y0 = f.half_trace(c0 + f.square(y1)).expect("odd m");
                let r = self.mul(b, Fq2::Tower(y0, y1));
                Ok(Some((r, r + b)))
            }
            Fq2::Direct(_) => {
                if self.order() > 1 << 20 {
                    return Err(Error::TowerModeRequired);
                }
                let one = self.one();
                Ok(self
                    .elements()
                    .find(|&y| self.mul(y, y + one) == t)
                    .map(|y| {
                        let r = self.mul(b, y);
                        (r, r + b)
                    }))
            }
        }
    }

    /// Text encoding: `u,v` in tower mode, a single hex value in direct mode.
    pub fn format(&self, z: Fq2) -> String {
        match z {
            Fq2::Tower(u, v) => format!("{u:x},{v:x}"),
            Fq2::Direct(b) => format!("{b:x}"),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Fq2> {
        let bad = || Error::Parse(s.to_string());
        match &self.repr {
            Repr::Tower => {
                let (u, v) = s.split_once(',').ok_or_else(bad)?;
                Ok(Fq2::Tower(self.base.parse_hex(u)?, self.base.parse_hex(v)?))
            }
            Repr::Direct(_) => {
                let bits = u64::from_str_radix(s.trim(), 16).map_err(|_| bad())?;
                if bits >= self.order() {
                    return Err(bad());
                }
                Ok(Fq2::Direct(bits))
            }
        }
    }
}

// A root of the base modulus inside the wide field. The base field sits in
// the wide field as {0} plus the powers of g^(2^m + 1).
fn subfield_root(base: &FieldCtx, wide: &FieldCtx) -> Fq {
    let gamma = wide.pow(wide.generator(), base.order() + 1);
    let modulus = base.modulus();
    let eval = |z: Fq| {
        (0..=base.degree()).rev().fold(Fq::ZERO, |acc, i| {
            let c = if modulus >> i & 1 == 1 {
                Fq::ONE
            } else {
                Fq::ZERO
            };
            wide.mul(acc, z) + c
        })
    };
    let mut z = Fq::ONE;
    for _ in 0..base.order() - 1 {
        if eval(z).is_zero() {
            return z;
        }
        z = wide.mul(z, gamma);
    }
    unreachable!("an irreducible polynomial of degree m splits in GF(2^m)")
}

fn echelon(vectors: &[u64]) -> Vec<(u64, u64)> {
    let mut pivots: Vec<(u64, u64)> = Vec::new();
    for (i, &v) in vectors.iter().enumerate() {
        let mut v = v;
        let mut combo = 1u64 << i;
        for &(p, c) in &pivots {
            let lead = 63 - p.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= p;
                combo ^= c;
            }
        }
        assert!(v != 0, "embedding basis is linearly dependent");
        pivots.push((v, combo));
        pivots.sort_by_key(|p| p.0.leading_zeros());
    }
    pivots
}
