//! Exact real-quadratic arithmetic for the conjugacy-class count formulae:
//! discriminants, class numbers, fundamental units, norm-representation
//! tests, and the indicator values they feed.
//!
//! Everything here is integer arithmetic; no floating point.

mod contfrac;
mod forms;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

pub use forms::{
    field_discriminant, narrow_class_number, principal_form, reduce_form, reduced_form_cycles, Form,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("m = {0} is excluded (units beyond ±1)")]
    ExcludedField(u64),
    #[error("argument {0} exceeds the performance guard {1}")]
    GuardExceeded(u64, u64),
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn squarefree_part(n: u64) -> u64 {
    factorize(n)
        .iter()
        .map(|&(p, e)| if e % 2 == 1 { p } else { 1 })
        .product()
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n > 1 && prime_divisors(n) == [n]
}

/// Invariants of the imaginary field `Q(sqrt(-m))` and of the attached
/// totally real field `k_+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldInvariants {
    pub m: u64,
    /// Field discriminant of `Q(sqrt(-m))`: `-m` for `m = 3 mod 4`, else `-4m`.
    pub delta: i64,
    /// Number of finite ramified places = number of prime divisors of `delta`.
    pub delta_primes: u32,
    /// Radicand of `k_+`: squarefree part of `m` (2-torsion) or `3m` (3-torsion).
    pub kplus_radicand: u64,
    /// Wide (ordinary) class number of `k_+`.
    pub h_kplus: u64,
    /// Narrow class number of `k_+`.
    pub h_narrow: u64,
}

/// The fundamental unit `(a + b sqrt(D))/2 > 1` with `a^2 - D b^2 = ±4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub d: u64,
    pub a: BigInt,
    pub b: BigInt,
    pub norm: i8,
}

/// Krämer's indicator values. `x` holds `x` at 2-torsion and `x'` at
/// 3-torsion; at 3-torsion `x` and `y` exist only for `m = 0 mod 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Indicators {
    pub z: u8,
    pub q: Option<u8>,
    pub w: Option<u8>,
    pub x: Option<u8>,
    pub y: Option<u8>,
}

fn check_m(m: u64, guard: u64) -> Result<(), NumTheoryError> {
    if m == 1 || m == 3 {
        return Err(NumTheoryError::ExcludedField(m));
    }
    if !is_squarefree(m) {
        return Err(NumTheoryError::NotSquarefree(m));
    }
    if m > guard {
        return Err(NumTheoryError::GuardExceeded(m, guard));
    }
    Ok(())
}

const CLASS_NUMBER_GUARD: u64 = 10_000_000;

/// Wide and narrow class numbers `(h, h^+)` of `Q(sqrt(D))`, `D` squarefree.
///
/// `h^+` is the number of cycles of reduced indefinite forms of the field
/// discriminant; `h = h^+` when the fundamental unit has norm `-1` and
/// `h^+ / 2` otherwise.
pub fn class_number_real_quadratic(d: u64) -> Result<(u64, u64), NumTheoryError> {
    if d <= 1 || !is_squarefree(d) {
        return Err(NumTheoryError::NotSquarefree(d));
    }
    if d > CLASS_NUMBER_GUARD {
        return Err(NumTheoryError::GuardExceeded(d, CLASS_NUMBER_GUARD));
    }
    let h_narrow = narrow_class_number(field_discriminant(d));
    let h_wide = if fundamental_unit(d).norm == -1 {
        h_narrow
    } else {
        h_narrow / 2
    };
    Ok((h_wide, h_narrow))
}

/// Fundamental unit of the maximal order of `Q(sqrt(D))`.
pub fn fundamental_unit(d: u64) -> FundamentalUnit {
    let (a, b, norm) = contfrac::fundamental_unit(d);
    FundamentalUnit { d, a, b, norm }
}

/// Is `n` (with `|n| <= 3`) the norm of an algebraic integer of `Q(sqrt(D))`?
pub fn norm_represents(d: u64, n: i64) -> bool {
    assert!((1..=3).contains(&n.abs()), "|n| must be 1, 2 or 3");
    if n == 1 {
        return true;
    }
    if n == -1 {
        return fundamental_unit(d).norm == -1;
    }
    let disc = field_discriminant(d);
    if 4 * n * n < disc {
        forms::principal_cycle_represents(disc, n)
    } else {
        // tiny discriminant: bounded search; the unit-window bound
        // |y| <= sqrt(|n| eps / d) + 1 stays far below the scanned range
        small_disc_search(d, n)
    }
}

fn small_disc_search(d: u64, n: i64) -> bool {
    let di = d as i64;
    for y in 0..=100i64 {
        if d % 4 == 1 {
            // (u + y sqrt d)/2 with u = y mod 2
            let u2 = 4 * n + di * y * y;
            if u2 >= 0 {
                let u = contfrac::isqrt(u2 as u64) as i64;
                if u * u == u2 && (u - y) % 2 == 0 {
                    return true;
                }
            }
        }
        let x2 = n + di * y * y;
        if x2 >= 0 {
            let x = contfrac::isqrt(x2 as u64) as i64;
            if x * x == x2 {
                return true;
            }
        }
    }
    false
}

/// Invariants of `Q(sqrt(-m))` and its attached real field at the given
/// torsion prime (`ell` is 2 or 3).
pub fn field_invariants(m: u64, ell: u64) -> Result<FieldInvariants, NumTheoryError> {
    assert!(ell == 2 || ell == 3);
    check_m(m, CLASS_NUMBER_GUARD)?;
    let delta: i64 = if m % 4 == 3 {
        -(m as i64)
    } else {
        -4 * (m as i64)
    };
    let delta_primes = prime_divisors(delta.unsigned_abs()).len() as u32;
    let kplus_radicand = if ell == 2 { m } else { squarefree_part(3 * m) };
    let (h_kplus, h_narrow) = class_number_real_quadratic(kplus_radicand)?;
    Ok(FieldInvariants {
        m,
        delta,
        delta_primes,
        kplus_radicand,
        h_kplus,
        h_narrow,
    })
}

/// Krämer's indicators for `PSL_2(O_{-m})` at the given torsion prime.
pub fn indicators(m: u64, ell: u64) -> Result<Indicators, NumTheoryError> {
    assert!(ell == 2 || ell == 3);
    check_m(m, CLASS_NUMBER_GUARD)?;
    if ell == 2 {
        let z = if norm_represents(m, 2) { 2 } else { 1 };
        let q = if z == 2 || norm_represents(m, -2) {
            2
        } else {
            1
        };
        let w = if prime_divisors(m)
            .iter()
            .filter(|&&p| p != 2)
            .all(|&p| p % 8 == 1 || p % 8 == 7)
        {
            2
        } else {
            1
        };
        let unit = fundamental_unit(m);
        let x = if unit.norm == 1 { 2 } else { 1 };
        let y = if unit.b.is_even() { 3 } else { 1 };
        Ok(Indicators {
            z,
            q: Some(q),
            w: Some(w),
            x: Some(x),
            y: Some(y),
        })
    } else {
        let radicand = squarefree_part(3 * m);
        let z = if norm_represents(radicand, 3) { 2 } else { 1 };
        let (x, y) = if m.is_multiple_of(3) {
            let unit = fundamental_unit(m / 3);
            let x = if unit.norm == 1 { 2 } else { 1 };
            let y = if (&unit.b % BigInt::from(3u8)).is_zero() {
                2
            } else {
                1
            };
            (Some(x), Some(y))
        } else {
            (None, None)
        };
        Ok(Indicators {
            z,
            q: None,
            w: None,
            x,
            y,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_invariants_examples() {
        let f = field_invariants(5, 2).unwrap();
        assert_eq!((f.delta, f.delta_primes, f.kplus_radicand), (-20, 2, 5));
        let f = field_invariants(15, 2).unwrap();
        assert_eq!((f.delta, f.delta_primes), (-15, 2));
        let f = field_invariants(13, 3).unwrap();
        assert_eq!((f.kplus_radicand, f.delta_primes, f.delta), (39, 2, -52));
        assert_eq!(
            field_invariants(12, 2),
            Err(NumTheoryError::NotSquarefree(12))
        );
        assert_eq!(
            field_invariants(3, 3),
            Err(NumTheoryError::ExcludedField(3))
        );
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number_real_quadratic(5).unwrap(), (1, 1));
        assert_eq!(class_number_real_quadratic(15).unwrap(), (2, 4));
        assert_eq!(class_number_real_quadratic(39).unwrap(), (2, 4));
    }

    #[test]
    fn norm_representation_examples() {
        assert!(norm_represents(2, 2)); // 2^2 - 2*1^2 = 2
        assert!(!norm_represents(15, 2)); // obstructed mod 5
        assert!(norm_represents(5, -1)); // unit norm -1
        assert!(norm_represents(6, 3)); // 3^2 - 6 = 3
        assert!(norm_represents(7, 2)); // 3^2 - 7 = 2
        assert!(norm_represents(33, 3)); // 6^2 - 33 = 3
    }

    #[test]
    fn indicator_examples() {
        let i = indicators(5, 2).unwrap();
        assert_eq!((i.x, i.y), (Some(1), Some(1)));
        let i = indicators(2, 2).unwrap();
        assert_eq!((i.z, i.q, i.w, i.x), (2, Some(2), Some(2), Some(1)));
        let i = indicators(15, 2).unwrap();
        assert_eq!((i.z, i.w), (1, Some(1)));
        // m = 15 at 3-torsion: unit of Q(sqrt 5) has norm -1, b = 1
        let i = indicators(15, 3).unwrap();
        assert_eq!((i.x, i.y), (Some(1), Some(1)));
        // m = 33 at 3-torsion: unit of Q(sqrt 11) is 10 + 3 sqrt(11), b = 6
        let i = indicators(33, 3).unwrap();
        assert_eq!((i.x, i.y), (Some(2), Some(2)));
    }

    #[test]
    fn narrow_equals_wide_iff_negative_norm_unit() {
        for d in [2u64, 5, 6, 7, 10, 13, 15, 21, 26, 33, 34, 39, 55, 79, 82] {
            let (h, hp) = class_number_real_quadratic(d).unwrap();
            if fundamental_unit(d).norm == -1 {
                assert_eq!(h, hp, "d={d}");
            } else {
                assert_eq!(2 * h, hp, "d={d}");
            }
        }
    }
}
