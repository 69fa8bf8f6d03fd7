//! Exact rational functions in one variable `t` and their power-series
//! expansion by long division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("denominator vanishes at t = 0")]
    PoleAtZero,
    #[error("series coefficient at degree {0} is not a nonnegative integer: {1}")]
    NonIntegralSeries(usize, String),
}

/// Polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<BigRational>);

impl Poly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
        .trimmed()
    }

    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    fn coeff(&self, k: usize) -> BigRational {
        self.0.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect()).trimmed()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    /// Polynomial remainder of `self` modulo `other`.
    fn rem(&self, other: &Poly) -> Poly {
        let d = other.degree().expect("nonzero divisor");
        let lead = other.0[d].clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            let factor = &r.0[rd] / &lead;
            for k in 0..=d {
                let delta = &other.0[k] * &factor;
                let idx = rd - d + k;
                let cur = r.coeff(idx);
                if idx < r.0.len() {
                    r.0[idx] = cur - delta;
                }
            }
            r = r.trimmed();
        }
        r
    }

    fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(d) = a.degree() {
            let lead = a.0[d].clone();
            a = a.scale(&lead.recip());
        }
        a
    }
}

/// A ratio of polynomials kept in reduced form: gcd divided out, denominator
/// with positive leading coefficient and integer-normalized content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        let mut rf = RationalFunction { num, den };
        rf.reduce();
        rf
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> Self {
        RationalFunction::new(Poly::from_i64(num), Poly::from_i64(den))
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::from_i64(&[1]),
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::from_i64(&[1]);
            return;
        }
        let g = Poly::gcd(&self.num, &self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = divide_exact(&self.num, &g);
            self.den = divide_exact(&self.den, &g);
        }
        // normalize: denominator integer with positive leading coefficient,
        // content pushed into the numerator
        let dlead = self.den.0[self.den.degree().unwrap()].clone();
        self.num = self.num.scale(&dlead.recip());
        self.den = self.den.scale(&dlead.recip());
        // clear rational denominators of both polys by one common factor
        let mut denom = BigInt::one();
        for c in self.num.0.iter().chain(self.den.0.iter()) {
            denom = num_integer::lcm(denom, c.denom().clone());
        }
        let scale = BigRational::from(denom);
        self.num = self.num.scale(&scale);
        self.den = self.den.scale(&scale);
        let mut content = BigInt::zero();
        for c in self.num.0.iter().chain(self.den.0.iter()) {
            content = num_integer::gcd(content, c.numer().clone());
        }
        if !content.is_zero() && content != BigInt::one() {
            let inv = BigRational::from(content).recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        if self.den.0[self.den.degree().unwrap()].is_negative() {
            let m = BigRational::from(BigInt::from(-1));
            self.num = self.num.scale(&m);
            self.den = self.den.scale(&m);
        }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn scale(&self, c: &BigRational) -> RationalFunction {
        RationalFunction::new(self.num.scale(c), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Power-series coefficients of degrees `0..=q_max` by long division.
    pub fn expand(&self, q_max: usize) -> Result<Vec<BigRational>, SeriesError> {
        if self.den.coeff(0).is_zero() {
            return Err(SeriesError::PoleAtZero);
        }
        let d0 = self.den.coeff(0);
        let mut out: Vec<BigRational> = Vec::with_capacity(q_max + 1);
        for k in 0..=q_max {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.0.len().saturating_sub(1)) {
                acc -= self.den.coeff(j) * &out[k - j];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_poly = |p: &Poly| -> String {
            if p.is_zero() {
                return "0".into();
            }
            let mut parts = Vec::new();
            for (k, c) in p.0.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cs = c.to_string();
                parts.push(match k {
                    0 => cs,
                    1 if c.is_one() => "t".into(),
                    1 => format!("{cs}*t"),
                    _ if c.is_one() => format!("t^{k}"),
                    _ => format!("{cs}*t^{k}"),
                });
            }
            parts.join(" + ")
        };
        write!(f, "({}) / ({})", fmt_poly(&self.num), fmt_poly(&self.den))
    }
}

/// Exact polynomial division (panics if not exact; used after gcd).
fn divide_exact(a: &Poly, g: &Poly) -> Poly {
    let d = g.degree().expect("nonzero divisor");
    let lead = g.0[d].clone();
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.0.len().saturating_sub(d)];
    while let Some(rd) = r.degree() {
        if rd < d {
            break;
        }
        let factor = &r.0[rd] / &lead;
        q[rd - d] = factor.clone();
        for k in 0..=d {
            let delta = &g.0[k] * &factor;
            r.0[rd - d + k] -= delta;
        }
        r = r.trimmed();
    }
    assert!(r.is_zero(), "division must be exact");
    Poly(q).trimmed()
}

/// `P_circle(t) = -2t^3 / (t - 1)`: the series of a circle component.
pub fn p_circle() -> RationalFunction {
    RationalFunction::from_i64(&[0, 0, 0, -2], &[-1, 1])
}

/// `P*_D2(t) = -t^3 (3t - 5) / (2 (t-1)^2)`.
pub fn p_d2_star() -> RationalFunction {
    RationalFunction::from_i64(&[0, 0, 0, 5, -3], &[2, -4, 2])
}

/// `P*_A4(t) = -t^3 (t^3 - 2t^2 + 2t - 3) / (2 (t-1)^2 (t^2 + t + 1))`.
pub fn p_a4_star() -> RationalFunction {
    RationalFunction::from_i64(&[0, 0, 0, 3, -2, 2, -1], &[2, -2, 0, -2, 2])
}

/// `P_edge(t) = -t^3 (t^2 - t + 2) / ((t-1)(t^2+1))`: the series of a single
/// edge component in 3-torsion.
pub fn p_edge() -> RationalFunction {
    RationalFunction::from_i64(&[0, 0, 0, -2, 1, -1], &[-1, 1, -1, 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|&c| BigRational::from(BigInt::from(c)))
            .collect()
    }

    #[test]
    fn circle_series_is_constant_two() {
        let c = p_circle().expand(10).unwrap();
        assert_eq!(c, ints(&[0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2]));
    }

    #[test]
    fn edge_series_has_period_four() {
        let c = p_edge().expand(14).unwrap();
        assert_eq!(c, ints(&[0, 0, 0, 2, 1, 0, 1, 2, 1, 0, 1, 2, 1, 0, 1]));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn twice_d2_star_is_two_q_minus_one() {
        let f = p_d2_star().scale(&BigRational::from(BigInt::from(2)));
        let c = f.expand(50).unwrap();
        for q in 3..=50usize {
            assert_eq!(c[q], BigRational::from(BigInt::from(2 * q as i64 - 1)));
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn a4_star_is_half_integral_but_combinations_close() {
        // P*_A4 alone has half-integer coefficients ...
        let a4 = p_a4_star().expand(6).unwrap();
        assert_eq!(a4[3], BigRational::new(BigInt::from(3), BigInt::from(2)));
        // ... but P*_A4 + P*_D2 (the m = 2 combination) is integral
        let total = p_a4_star().add(&p_d2_star());
        let c = total.expand(12).unwrap();
        for q in 0..=12 {
            assert!(c[q].is_integer(), "degree {q}");
        }
        assert_eq!(c[3], BigRational::from(BigInt::from(4)));
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // (t^2-1)/(t-1) reduces to t+1
        let f = RationalFunction::from_i64(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(f.num, Poly::from_i64(&[1, 1]));
        assert_eq!(f.den, Poly::from_i64(&[1]));
    }

    #[test]
    fn pole_detected() {
        let f = RationalFunction::from_i64(&[1], &[0, 1]);
        assert_eq!(f.expand(3), Err(SeriesError::PoleAtZero));
    }
}
