//! Polynomials over GF(2) packed into integers (bit i = coefficient of x^i).

/// Degree of `p`, or -1 for the zero polynomial.
#[inline]
pub(crate) fn degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

/// Carry-less product.
#[inline]
pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut a = a as u128;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Remainder of `a` modulo the polynomial `m` (any degree >= 1).
#[inline]
pub(crate) fn rem(mut a: u128, m: u128) -> u128 {
    let dm = degree(m);
    loop {
        let da = degree(a);
        if da < dm {
            return a;
        }
        a ^= m << (da - dm);
    }
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    rem(clmul(a, b), modulus as u128) as u64
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Rabin-style test: `f` of degree n is irreducible iff
/// `gcd(f, x^(2^i) - x) = 1` for every `1 <= i <= n/2`.
pub(crate) fn is_irreducible(f: u64) -> bool {
    let n = degree(f as u128);
    if n < 1 {
        return false;
    }
    let x = 0b10u64;
    let mut h = x;
    for _ in 1..=n / 2 {
        h = mulmod(h, h, f);
        if gcd(f as u128, (h ^ x) as u128) != 1 {
            return false;
        }
    }
    true
}

/// Smallest irreducible of degree `n` with constant term 1, in integer order.
pub(crate) fn smallest_irreducible(n: u32) -> u64 {
    let top = 1u64 << n;
    (top + 1..top << 1)
        .step_by(2)
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_irreducibles() {
        assert!(is_irreducible(0b11));
        assert!(is_irreducible(0b111));
        assert!(is_irreducible(0b1011));
        assert!(is_irreducible(0x11b));
        assert!(!is_irreducible(0b101)); // (x+1)^2
        assert!(!is_irreducible(0b1111)); // (x+1)(x^2+x+1)
        assert_eq!(smallest_irreducible(8), 0x11b);
    }

    #[test]
    fn wide_degrees_are_found() {
        for n in [30u32, 40, 48] {
            let p = smallest_irreducible(n);
            assert_eq!(degree(p as u128), n as i32);
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(255), vec![3, 5, 17]);
        assert_eq!(prime_factors((1 << 11) - 1), vec![23, 89]);
    }
}
