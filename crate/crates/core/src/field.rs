//! The binary field GF(2^m).
//!
//! Elements are polynomials over GF(2) of degree below `m`, packed into an
//! integer whose bit `i` is the coefficient of `x^i`. Addition is XOR and
//! multiplication is the carry-less product reduced by the field modulus.
//!
//! The modulus is always the lexicographically smallest irreducible
//! polynomial of degree `m` with a nonzero constant term, so every element
//! encoding is reproducible across runs and implementations.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Largest base-field degree accepted by [`FieldCtx::new`].
pub const MAX_DEGREE: u32 = 24;

/// Largest degree for internal (wide) fields, used for GF(2^{2m}) in direct mode.
pub(crate) const WIDE_MAX_DEGREE: u32 = 2 * MAX_DEGREE;

/// Fields up to this degree multiply through exp/log tables.
const TABLE_MAX_DEGREE: u32 = 16;

/// An element of a binary field. Carries no reference to its field; the
/// owning [`FieldCtx`] performs all non-additive arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// Wraps raw bits without a range check. Prefer [`FieldCtx::element`].
    pub const fn from_bits(bits: u64) -> Fq {
        Fq(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Lowercase hexadecimal encoding of the bits.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }
}

impl Add for Fq {
    type Output = Fq;

    #[inline]
    fn add(self, rhs: Fq) -> Fq {
        Fq(self.0 ^ rhs.0)
    }
}

impl AddAssign for Fq {
    #[inline]
    fn add_assign(&mut self, rhs: Fq) {
        self.0 ^= rhs.0;
    }
}

impl fmt::LowerHex for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

#[derive(Clone)]
struct LogTables {
    // exp has length 2 * (2^m - 1) so that log a + log b never wraps.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Serialized form of a field context: `{"m": m, "modulus": "<hex>"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub m: u32,
    pub modulus: String,
}

/// Immutable description of GF(2^m).
#[derive(Clone)]
pub struct FieldCtx {
    degree: u32,
    modulus: u64,
    mask: u64,
    // bit i set iff tr(x^i) = 1; the trace is GF(2)-linear
    trace_mask: u64,
    generator: Fq,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("degree", &self.degree)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds GF(2^m) for `1 <= m <= 24` over the lexicographically smallest
    /// irreducible modulus.
    pub fn new(m: u32) -> Result<FieldCtx> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        Ok(Self::build(m, poly::smallest_irreducible(m)))
    }

    /// Builds GF(2^m) over a caller-chosen modulus, which must be irreducible
    /// of degree exactly `m`.
    pub fn with_modulus(m: u32, modulus: u64) -> Result<FieldCtx> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        if poly::degree(modulus as u128) != m as i32 || !poly::is_irreducible(modulus) {
            return Err(Error::NotIrreducible { degree: m, modulus });
        }
        Ok(Self::build(m, modulus))
    }

    /// Internal constructor for the degree-2m fields of direct mode.
    pub(crate) fn wide(n: u32) -> FieldCtx {
        assert!(
            (1..=WIDE_MAX_DEGREE).contains(&n),
            "wide field degree {n} out of range"
        );
        Self::build(n, poly::smallest_irreducible(n))
    }

    fn build(degree: u32, modulus: u64) -> FieldCtx {
        let mask = (1u64 << degree) - 1;
        let mut ctx = FieldCtx {
            degree,
            modulus,
            mask,
            trace_mask: 0,
            generator: Fq::ONE,
            tables: None,
        };
        ctx.trace_mask = (0..degree)
            .filter(|&i| ctx.trace_by_squaring(Fq(1 << i)) == Fq::ONE)
            .fold(0, |acc, i| acc | (1 << i));
        ctx.generator = ctx.find_generator();
        if degree <= TABLE_MAX_DEGREE {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx
    }

    fn find_generator(&self) -> Fq {
        let group_order = self.mask;
        if group_order == 1 {
            return Fq::ONE;
        }
        let primes = poly::prime_factors(group_order);
        (2..=self.mask)
            .map(Fq)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&p| self.pow(g, group_order / p) != Fq::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let n = self.mask as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; n + 1];
        let mut acc = Fq::ONE;
        for i in 0..n {
            exp[i] = acc.0 as u32;
            exp[i + n] = acc.0 as u32;
            log[acc.0 as usize] = i as u32;
            acc = Fq(poly::mulmod(acc.0, self.generator.0, self.modulus));
        }
        LogTables { exp, log }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The modulus as a bitmask, top bit `x^m` included.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    pub fn order(&self) -> u64 {
        1u64 << self.degree
    }

    /// A primitive element (generator of the multiplicative group).
    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            m: self.degree,
            modulus: format!("{:x}", self.modulus),
        }
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<FieldCtx> {
        let modulus =
            u64::from_str_radix(&d.modulus, 16).map_err(|_| Error::Parse(d.modulus.clone()))?;
        Self::with_modulus(d.m, modulus)
    }

    /// Checked constructor: `bits` must be below `2^m`.
    pub fn element(&self, bits: u64) -> Result<Fq> {
        if bits & !self.mask != 0 {
            return Err(Error::NotInField {
                bits,
                degree: self.degree,
            });
        }
        Ok(Fq(bits))
    }

    pub fn contains(&self, a: Fq) -> bool {
        a.0 & !self.mask == 0
    }

    /// All elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.order()).map(Fq)
    }

    pub fn parse_hex(&self, s: &str) -> Result<Fq> {
        let bits = u64::from_str_radix(s.trim(), 16).map_err(|_| Error::Parse(s.to_string()))?;
        self.element(bits)
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if let Some(t) = &self.tables {
            if a.0 == 0 || b.0 == 0 {
                return Fq::ZERO;
            }
            let i = t.log[a.0 as usize] + t.log[b.0 as usize];
            return Fq(t.exp[i as usize] as u64);
        }
        Fq(poly::mulmod(a.0, b.0, self.modulus))
    }

    /// Multiplication that first checks both operands belong to this field.
    pub fn checked_mul(&self, a: Fq, b: Fq) -> Result<Fq> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::NotInField {
                    bits: x.0,
                    degree: self.degree,
                });
            }
        }
        Ok(self.mul(a, b))
    }

    #[inline]
    pub fn square(&self, a: Fq) -> Fq {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let n = self.mask as u32;
            let l = t.log[a.0 as usize];
            return Ok(Fq(t.exp[((n - l) % n.max(1)) as usize] as u64));
        }
        Ok(self.pow(a, self.mask - 1))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute trace `a + a^2 + ... + a^(2^(m-1))`, returned as 0 or 1.
    #[inline]
    pub fn trace(&self, a: Fq) -> u8 {
        ((a.0 & self.trace_mask).count_ones() & 1) as u8
    }

    fn trace_by_squaring(&self, a: Fq) -> Fq {
        let mut acc = Fq::ZERO;
        let mut p = a;
        for _ in 0..self.degree {
            acc += p;
            p = Fq(poly::mulmod(p.0, p.0, self.modulus));
        }
        acc
    }

    /// The unique square root `a^(2^(m-1))`.
    pub fn sqrt(&self, a: Fq) -> Fq {
        (1..self.degree).fold(a, |x, _| self.square(x))
    }

    /// Half-trace `sum_{i=0}^{(m-1)/2} a^(4^i)`; defined only for odd m.
    pub fn half_trace(&self, a: Fq) -> Option<Fq> {
        if self.degree % 2 == 0 {
            return None;
        }
        let mut acc = a;
        let mut p = a;
        for _ in 0..(self.degree - 1) / 2 {
            p = self.square(self.square(p));
            acc += p;
        }
        Some(acc)
    }

    /// Solves `x^2 + b x + c = 0`. Returns both roots `(r, r + b)` or `None`
    /// when `tr(c / b^2) = 1`.
    pub fn solve_quadratic(&self, b: Fq, c: Fq) -> Result<Option<(Fq, Fq)>> {
        if b.is_zero() {
            return Err(Error::ZeroLinearCoefficient);
        }
        let y = self.div(c, self.square(b))?;
        if self.trace(y) == 1 {
            return Ok(None);
        }
        let r = match self.half_trace(y) {
            Some(h) => self.mul(b, h),
            // even m: exhaustive root search
            None => self
                .elements()
                .find(|&x| self.mul(x, x + b) == c)
                .expect("trace-zero quadratic has a root"),
        };
        Ok(Some((r, r + b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(m: u32) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    // Independent irreducibility oracle: no factor of degree 1..=n/2.
    fn irreducible_by_trial_division(p: u64) -> bool {
        let n = poly::degree(p as u128);
        (2u64..(1 << (n / 2 + 1))).all(|d| {
            poly::degree(d as u128) == 0 || {
                let (_, r) = naive_divmod(p, d);
                r != 0
            }
        })
    }

    fn naive_divmod(mut a: u64, b: u64) -> (u64, u64) {
        let db = 63 - b.leading_zeros() as i32;
        let mut q = 0;
        while a != 0 && 63 - a.leading_zeros() as i32 >= db {
            let shift = (63 - a.leading_zeros() as i32) - db;
            q |= 1 << shift;
            a ^= b << shift;
        }
        (q, a)
    }

    #[test]
    fn small_moduli() {
        assert_eq!(gf(1).modulus(), 0b11);
        assert_eq!(gf(2).modulus(), 0b111);
        assert_eq!(gf(3).modulus(), 0b1011);
    }

    #[test]
    fn modulus_is_lexicographically_minimal() {
        for m in 1..=12u32 {
            let expected = ((1u64 << m) + 1..(1u64 << (m + 1)))
                .step_by(2)
                .find(|&p| irreducible_by_trial_division(p))
                .unwrap();
            assert_eq!(gf(m).modulus(), expected, "m = {m}");
        }
    }

    #[test]
    fn degree_range() {
        assert_eq!(FieldCtx::new(0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(FieldCtx::new(25).unwrap_err(), Error::DegreeOutOfRange(25));
        assert!(FieldCtx::new(24).is_ok());
    }

    #[test]
    fn mul_examples() {
        let f = gf(3);
        assert_eq!(f.mul(Fq::ZERO, Fq(0b10)), Fq::ZERO);
        assert_eq!(f.mul(Fq::ONE, Fq(0b10)), Fq(0b10));
        // x * x^2 = x^3 = x + 1
        assert_eq!(f.mul(Fq(0b10), Fq(0b100)), Fq(0b11));
    }

    #[test]
    fn checked_mul_rejects_foreign_elements() {
        let f = gf(3);
        assert_eq!(
            f.checked_mul(Fq(0b1000), Fq::ONE).unwrap_err(),
            Error::NotInField { bits: 8, degree: 3 }
        );
        assert!(f.element(8).is_err());
    }

    #[test]
    fn table_and_shift_reduce_agree() {
        for m in [5u32, 8, 11, 16] {
            let f = gf(m);
            let mut s = 0x9e37_79b9_7f4a_7c15u64;
            for _ in 0..2000 {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let a = Fq((s >> 11) & (f.order() - 1));
                let b = Fq((s >> 37) & (f.order() - 1));
                assert_eq!(f.mul(a, b).0, poly::mulmod(a.0, b.0, f.modulus()));
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let f = gf(3);
        assert_eq!(f.inv(Fq::ONE).unwrap(), Fq::ONE);
        assert_eq!(f.inv(Fq(0b10)).unwrap(), Fq(0b101));
        assert_eq!(f.inv(Fq::ZERO).unwrap_err(), Error::DivisionByZero);
        // exhaustive oracle
        for a in f.elements().skip(1) {
            let by_search = f.elements().find(|&b| f.mul(a, b) == Fq::ONE).unwrap();
            assert_eq!(f.inv(a).unwrap(), by_search);
        }
        let big = gf(20);
        let a = Fq(0xabcde);
        assert_eq!(big.mul(a, big.inv(a).unwrap()), Fq::ONE);
    }

    #[test]
    fn pow_basics() {
        for m in [1u32, 3, 6, 9, 17] {
            let f = gf(m);
            for a in [Fq::ONE, Fq(1 << (m - 1)), Fq(f.order() - 1)] {
                assert_eq!(f.pow(a, 1), a);
                assert_eq!(f.pow(a, f.order()), a);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for m in 1..=4u32 {
            let f = gf(m);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
                    }
                }
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                }
            }
        }
    }

    #[test]
    fn trace_matches_definition_and_is_linear() {
        for m in 1..=10u32 {
            let f = gf(m);
            let mut seen = [false; 2];
            for a in f.elements() {
                let mut sum = Fq::ZERO;
                let mut p = a;
                for _ in 0..m {
                    sum += p;
                    p = f.square(p);
                }
                assert!(sum == Fq::ZERO || sum == Fq::ONE);
                assert_eq!(f.trace(a) as u64, sum.bits());
                assert_eq!(f.trace(f.square(a)), f.trace(a));
                seen[f.trace(a) as usize] = true;
            }
            assert!(seen[0] && seen[1], "trace not surjective for m = {m}");
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.trace(a + b), f.trace(a) ^ f.trace(b));
                }
            }
        }
        assert_eq!(gf(1).trace(Fq::ONE), 1);
        for m in [3u32, 5, 7, 9] {
            assert_eq!(gf(m).trace(Fq::ONE), 1);
            assert_eq!(gf(m).trace(Fq::ZERO), 0);
        }
    }

    #[test]
    fn sqrt_inverts_squaring() {
        for m in 1..=10u32 {
            let f = gf(m);
            for a in f.elements() {
                assert_eq!(f.sqrt(f.square(a)), a);
                assert_eq!(f.square(f.sqrt(a)), a);
            }
        }
        let f = gf(3);
        assert_eq!(f.sqrt(Fq::ZERO), Fq::ZERO);
        assert_eq!(f.sqrt(Fq::ONE), Fq::ONE);
        // sqrt(x) = x^4 = x^2 + x in GF(8)
        assert_eq!(f.sqrt(Fq(0b10)), Fq(0b110));
    }

    #[test]
    fn quadratic_examples() {
        let f = gf(3);
        assert_eq!(
            f.solve_quadratic(Fq::ONE, Fq::ZERO).unwrap(),
            Some((Fq::ZERO, Fq::ONE))
        );
        assert_eq!(
            f.solve_quadratic(Fq::ZERO, Fq::ONE).unwrap_err(),
            Error::ZeroLinearCoefficient
        );
        for c in f.elements().filter(|&c| f.trace(c) == 1) {
            assert_eq!(f.solve_quadratic(Fq::ONE, c).unwrap(), None);
        }
    }

    #[test]
    fn quadratic_solver_matches_exhaustive_search() {
        for m in 1..=7u32 {
            let f = gf(m);
            for b in f.elements().skip(1) {
                let mut solvable = 0u64;
                for c in f.elements() {
                    let brute: Vec<Fq> = f.elements().filter(|&x| f.mul(x, x + b) == c).collect();
                    match f.solve_quadratic(b, c).unwrap() {
                        Some((r, s)) => {
                            solvable += 1;
                            assert_eq!(s, r + b);
                            assert!(brute.contains(&r) && brute.contains(&s));
                        }
                        None => assert!(brute.is_empty()),
                    }
                }
                assert_eq!(solvable, 1 << (m - 1));
            }
        }
    }

    #[test]
    fn half_trace_only_for_odd_degree() {
        assert!(gf(4).half_trace(Fq::ONE).is_none());
        assert_eq!(gf(1).half_trace(Fq::ONE), Some(Fq::ONE));
    }

    #[test]
    fn descriptor_round_trip() {
        let f = gf(7);
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        assert_eq!(json, r#"{"m":7,"modulus":"83"}"#);
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(FieldCtx::from_descriptor(&back).unwrap(), f);
        assert!(FieldCtx::with_modulus(3, 0b1001).is_err());
    }

    #[test]
    fn hex_encoding() {
        let f = gf(8);
        assert_eq!(Fq(0xab).to_hex(), "ab");
        assert_eq!(f.parse_hex("ab").unwrap(), Fq(0xab));
        assert!(f.parse_hex("1ab").is_err());
        assert!(f.parse_hex("zz").is_err());
    }
}
