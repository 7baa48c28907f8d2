//! Exact integer square roots. Every ceiling inequality in the crate goes
//! through these, never through `f64::sqrt`.

/// `⌊√n⌋`
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Newton from an overestimate; converges monotonically downward.
    let mut x = 1u128 << (128 - n.leading_zeros()).div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `⌈√n⌉`
pub fn ceil_sqrt(n: u64) -> u64 {
    ceil_sqrt_u128(n as u128) as u64
}

pub fn ceil_sqrt_u128(n: u128) -> u128 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// `⌈√(num/den)⌉` for `den > 0`: the least `t` with `t²·den ≥ num`.
pub fn ceil_sqrt_ratio(num: u128, den: u128) -> u128 {
    assert!(den > 0, "zero denominator");
    let mut t = isqrt(num / den);
    while t * t * den < num {
        t += 1;
    }
    t
}
