use std::fmt;

/// Fixed-point scale of [`HasseWeilBound::scaled`].
pub const BOUND_SCALE: i128 = 1_000_000;

/// `2^m - (d-1)(d-2) 2^{m/2} - d(d-1)^2/2 - 1`, rounded down to a multiple
/// of `1 / BOUND_SCALE`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HasseWeilBound {
    pub d: u32,
    pub m: u32,
    /// `floor(bound * BOUND_SCALE)`.
    pub scaled: i128,
}

impl HasseWeilBound {
    pub fn to_f64(self) -> f64 {
        self.scaled as f64 / BOUND_SCALE as f64
    }

    /// The bound is at least `v`.
    pub fn exceeds(self, v: i64) -> bool {
        self.scaled > v as i128 * BOUND_SCALE
    }
}

impl fmt::Display for HasseWeilBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.scaled < 0 { "-" } else { "" };
        let a = self.scaled.unsigned_abs();
        let s = BOUND_SCALE as u128;
        write!(f, "{sign}{}.{:06}", a / s, a % s)
    }
}

fn ceil_sqrt(n: u128) -> u128 {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Panics if `d == 0` or `m > 64`.
pub fn hasse_weil_lower_bound(d: u32, m: u32) -> HasseWeilBound {
    assert!(d >= 1, "curve degree must be positive");
    assert!(m <= 64, "m must be at most 64");
    let s = BOUND_SCALE as u128;
    let d = d as u128;
    let c = (d - 1) * (d - 1).saturating_sub(1);
    let q = 1u128 << m;
    // c * sqrt(q) * s, rounded up so the bound is never overstated
    let root_term = ceil_sqrt(c * c * q * s * s);
    let tail = d * (d - 1) * (d - 1) * s / 2 + s;
    let scaled = (q * s) as i128 - root_term as i128 - tail as i128;
    HasseWeilBound {
        d: d as u32,
        m,
        scaled,
    }
}
