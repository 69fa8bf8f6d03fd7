//! Continued-fraction expansion of `sqrt(D)` and fundamental units.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    while x * x > n {
        x -= 1;
    }
    x
}

/// Minimal solution of `x^2 - D y^2 = ±1` with `y > 0`, via the continued
/// fraction of `sqrt(D)`. Returns `(x, y, norm)`.
///
/// `D` must be positive and not a perfect square.
pub fn pell_minimal(d: u64) -> (BigInt, BigInt, i8) {
    let a0 = isqrt(d);
    assert!(a0 * a0 != d, "D must not be a square");
    // sqrt(D) = [a0; a1, a2, ...] with the classical P,Q recurrence
    let (mut p, mut q) = (0i64, 1i64);
    let mut a = a0 as i64;
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(a0));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    let mut period = 0usize;
    loop {
        p = a * q - p;
        q = (d as i64 - p * p) / q;
        a = (a0 as i64 + p) / q;
        period += 1;
        if q == 1 {
            // end of period: (h, k) is the minimal ±1 solution
            let norm = if period % 2 == 1 { -1 } else { 1 };
            return (h, k, norm);
        }
        let h_next = BigInt::from(a) * &h + &h_prev;
        let k_next = BigInt::from(a) * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

fn integer_cbrt(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let bits = n.bits();
    let mut x = BigInt::one() << (bits / 3 + 1);
    // Newton iteration for the integer cube root
    loop {
        let x2 = &x * &x;
        let next = (BigInt::from(2u8) * &x + n / &x2) / 3;
        if next >= x {
            break;
        }
        x = next;
    }
    while &x * &x * &x > *n {
        x -= 1;
    }
    x
}

/// Fundamental unit `(a + b sqrt(D))/2 > 1` of the maximal order of
/// `Q(sqrt(D))`, normalized by `a^2 - D b^2 = ±4`. Returns `(a, b, norm)`.
///
/// For `D = 1 mod 4` the unit of `Z[sqrt(D)]` from the Pell equation may be
/// the cube of the fundamental unit; the descent solves
/// `a^3 - 3 n a = 2x` exactly.
pub fn fundamental_unit(d: u64) -> (BigInt, BigInt, i8) {
    let (x, y, norm) = pell_minimal(d);
    if d % 4 == 1 {
        let two_x = BigInt::from(2u8) * &x;
        let n = BigInt::from(norm);
        let c = integer_cbrt(&two_x);
        for da in -1i64..=2 {
            let a = &c + BigInt::from(da);
            if a <= BigInt::zero() {
                continue;
            }
            if &a * &a * &a - BigInt::from(3u8) * &n * &a == two_x {
                let b2 = (&a * &a - BigInt::from(4u8) * &n) / BigInt::from(d);
                if (&b2 * BigInt::from(d) + BigInt::from(4u8) * &n) == &a * &a
                    && b2 > BigInt::zero()
                {
                    let b = b2.sqrt();
                    if &b * &b == b2 && a.is_odd() && b.is_odd() {
                        // a genuine half-integer unit
                        return (a, b, norm);
                    }
                }
            }
        }
    }
    (BigInt::from(2u8) * x, BigInt::from(2u8) * y, norm)
}
