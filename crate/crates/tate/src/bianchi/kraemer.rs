//! Evaluation of the number-theoretic formulae for the conjugacy-class
//! counts of finite subgroups in `PSL_2(O_{-m})`, with the published
//! criteria applied to eliminate the wrong alternatives.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::numtheory::{
    field_invariants, indicators, is_prime, norm_represents, prime_divisors, NumTheoryError,
};

use super::BianchiError;

/// Conjugacy-class counts for one torsion prime.
///
/// At ℓ = 3 the fields `lambda6`, `lambda6_star` and `mu3 = 2 lambda6_star`
/// are meaningful; at ℓ = 2 the 2-group fields are. When `ambiguity` is
/// nonempty the criteria could not single out one alternative: the flat
/// fields then hold the first survivor and must not be consumed directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCounts {
    pub ell: u64,
    pub lambda4: u64,
    pub lambda4_star: u64,
    pub lambda4_t: u64,
    pub lambda6: u64,
    pub lambda6_star: u64,
    pub mu2: u64,
    pub mu2_minus: u64,
    pub mu3: u64,
    pub mu_t: u64,
    pub ambiguity: Vec<ClassCounts>,
}

impl ClassCounts {
    pub fn is_ambiguous(&self) -> bool {
        !self.ambiguity.is_empty()
    }

    /// Number of circle components of the conjugacy-classes graph.
    pub fn circles(&self) -> u64 {
        match self.ell {
            3 => self.lambda6 - self.lambda6_star,
            _ => self.lambda4 - self.lambda4_star,
        }
    }
}

fn counts3(l6_star: Rational64, l6_minus_star: Rational64) -> Option<ClassCounts> {
    let s = as_count(l6_star)?;
    let c = as_count(l6_minus_star)?;
    Some(ClassCounts {
        ell: 3,
        lambda4: 0,
        lambda4_star: 0,
        lambda4_t: 0,
        lambda6: s + c,
        lambda6_star: s,
        mu2: 0,
        mu2_minus: 0,
        mu3: 2 * s,
        mu_t: 0,
        ambiguity: vec![],
    })
}

fn counts2(
    mu_t: Rational64,
    mu2_minus: Rational64,
    lambda4_t: Rational64,
    lambda4_star: Rational64,
    circles: Rational64,
) -> Option<ClassCounts> {
    let mu_t = as_count(mu_t)?;
    let mu2_minus = as_count(mu2_minus)?;
    let lambda4_t = as_count(lambda4_t)?;
    let lambda4_star = as_count(lambda4_star)?;
    let circles = as_count(circles)?;
    Some(ClassCounts {
        ell: 2,
        lambda4: lambda4_star + circles,
        lambda4_star,
        lambda4_t,
        lambda6: 0,
        lambda6_star: 0,
        mu2: mu2_minus + mu_t,
        mu2_minus,
        mu3: 0,
        mu_t,
        ambiguity: vec![],
    })
}

/// A formula value is admissible only when it is a nonnegative integer.
fn as_count(v: Rational64) -> Option<u64> {
    if v.is_integer() && !v.is_negative() {
        Some(*v.numer() as u64)
    } else {
        None
    }
}

fn pow2(e: i64) -> Rational64 {
    if e >= 0 {
        Rational64::from_integer(1i64 << e)
    } else {
        Rational64::new(1, 1i64 << (-e))
    }
}

/// Evaluate the class-count formulae for `PSL_2(O_{-m})` at ℓ in {2, 3}.
///
/// Every alternative of the congruence row for `m` is evaluated exactly;
/// alternatives with negative or non-integral entries are impossible and
/// dropped, then each applicable criterion eliminates further alternatives.
/// A single survivor is returned outright; several survivors are returned in
/// `ambiguity`, never guessed between.
pub fn kraemer_counts(m: u64, ell: u64) -> Result<ClassCounts, BianchiError> {
    assert!(ell == 2 || ell == 3);
    let f = field_invariants(m, ell)?;
    let ind = indicators(m, ell)?;
    let delta = i64::from(f.delta_primes);
    let h = Rational64::from_integer(f.h_kplus as i64);
    let half = Rational64::new(1, 2);

    let mut alts: Vec<ClassCounts> = Vec::new();
    if ell == 3 {
        let z = Rational64::from_integer(i64::from(ind.z));
        match (m % 3, m % 9) {
            (2, _) => {
                alts.extend(counts3(Rational64::zero(), half * z * h));
            }
            (1, _) => {
                let s = pow2(delta - 1);
                alts.extend(counts3(s, half * (h - s)));
                alts.extend(counts3(Rational64::zero(), half * h));
            }
            (_, 6) => {
                let x = Rational64::from_integer(i64::from(ind.x.expect("x' defined for 3|m")));
                let y = Rational64::from_integer(i64::from(ind.y.expect("y defined for 3|m")));
                alts.extend(counts3(Rational64::zero(), x * y * h));
            }
            (_, 3) => {
                let x = Rational64::from_integer(i64::from(ind.x.expect("x' defined for 3|m")));
                let s = pow2(delta - 2);
                let three = Rational64::from_integer(3);
                alts.extend(counts3(s, half * (three * x * h - s)));
                alts.extend(counts3(Rational64::zero(), half * three * x * h));
            }
            _ => unreachable!("m squarefree is never 0 mod 9"),
        }
    } else {
        let z = Rational64::from_integer(i64::from(ind.z));
        let w = ind.w.expect("w defined at 2-torsion");
        let x = Rational64::from_integer(i64::from(ind.x.expect("x defined at 2-torsion")));
        let y = Rational64::from_integer(i64::from(ind.y.expect("y defined at 2-torsion")));
        let zero = Rational64::zero;
        let two = Rational64::from_integer(2);
        let three = Rational64::from_integer(3);
        match (m % 8, m % 4, w) {
            (7, _, _) => {
                alts.extend(counts2(zero(), zero(), zero(), zero(), half * z * h));
            }
            (3, _, _) => {
                let s = pow2(delta - 1);
                alts.extend(counts2(pow2(delta), zero(), s, s, half * (h - s)));
                if delta >= 2 {
                    alts.extend(counts2(zero(), zero(), zero(), zero(), half * h));
                }
            }
            (_, 2, 2) => {
                let s = pow2(delta - 1);
                let main = x * (z + two) * h / Rational64::from_integer(4);
                alts.extend(counts2(s, s, pow2(delta - 2) * z, pow2(delta), main - s));
                if delta >= 2 {
                    alts.extend(counts2(zero(), zero(), zero(), zero(), main));
                }
            }
            (_, 2, _) => {
                let s1 = pow2(delta - 1);
                let s2 = pow2(delta - 2);
                alts.extend(counts2(
                    s1,
                    zero(),
                    s2,
                    s2,
                    half * (three * half * x * h - s2),
                ));
                alts.extend(counts2(
                    zero(),
                    s1,
                    zero(),
                    three * s2,
                    three * half * (half * x * h - s2),
                ));
                if delta >= 3 {
                    alts.extend(counts2(
                        zero(),
                        zero(),
                        zero(),
                        zero(),
                        three * x * h / Rational64::from_integer(4),
                    ));
                }
            }
            (1, _, 2) => {
                let s = pow2(delta - 1);
                alts.extend(counts2(s, s, pow2(delta - 2), pow2(delta), two * x * h - s));
                if delta >= 3 {
                    alts.extend(counts2(zero(), zero(), zero(), zero(), two * x * h));
                }
            }
            (1, _, _) => {
                let s1 = pow2(delta - 1);
                let s2 = pow2(delta - 2);
                let s3 = pow2(delta - 3);
                alts.extend(counts2(s1, zero(), s2, s2, two * x * h - s3));
                alts.extend(counts2(
                    zero(),
                    s1,
                    zero(),
                    three * s2,
                    two * x * h - three * s3,
                ));
                if delta >= 4 {
                    alts.extend(counts2(zero(), zero(), zero(), zero(), two * x * h));
                }
            }
            (5, _, _) => {
                let s1 = pow2(delta - 1);
                let s2 = pow2(delta - 2);
                let main = x * (two * y + Rational64::one()) * h;
                alts.extend(counts2(
                    zero(),
                    s1,
                    zero(),
                    three * s2,
                    half * (main - three * s2),
                ));
                if delta >= 3 {
                    alts.extend(counts2(zero(), zero(), zero(), zero(), half * main));
                }
            }
            _ => unreachable!("congruence rows cover every squarefree m"),
        }
    }

    if alts.is_empty() {
        return Err(BianchiError::InconsistentCriteria(m, ell));
    }
    let constraints = if ell == 3 {
        criteria3(m, &f, &ind)
    } else {
        criteria2(m, &f, &ind)
    };
    for c in &constraints {
        let filtered: Vec<ClassCounts> = alts.iter().filter(|a| (c.test)(a)).cloned().collect();
        if filtered.is_empty() {
            return Err(BianchiError::InconsistentCriteria(m, ell));
        }
        alts = filtered;
    }
    alts.dedup();
    let mut first = alts[0].clone();
    if alts.len() > 1 {
        first.ambiguity = alts;
    }
    Ok(first)
}

struct Criterion {
    test: Box<dyn Fn(&ClassCounts) -> bool>,
}

fn force(pred: bool, test: impl Fn(&ClassCounts) -> bool + 'static, out: &mut Vec<Criterion>) {
    if pred {
        out.push(Criterion {
            test: Box::new(test),
        });
    }
}

/// The published criteria for the 3-torsion numbers. `h(k₊')` is read as the
/// wide class number of `k₊`.
fn criteria3(
    m: u64,
    f: &crate::numtheory::FieldInvariants,
    ind: &crate::numtheory::Indicators,
) -> Vec<Criterion> {
    let mut out = Vec::new();
    let h = f.h_kplus;
    let delta = f.delta_primes;
    let radicand = f.kplus_radicand;
    let m3_primes = if m.is_multiple_of(3) {
        prime_divisors(m / 3)
    } else {
        vec![]
    };

    force(m % 3 == 2, |a| a.lambda6_star == 0, &mut out);
    force(m % 9 == 6, |a| a.lambda6_star == 0, &mut out);
    force(is_prime(m) && m % 3 == 1, |a| a.lambda6_star > 0, &mut out);
    force(
        m.is_multiple_of(3) && is_prime(m / 3) && (m / 3) % 3 == 1,
        |a| a.lambda6_star > 0,
        &mut out,
    );
    if m % 3 == 1 {
        let minus3 = norm_represents(radicand, -3);
        force(minus3, |a| a.lambda6_star > 0, &mut out);
        force(!minus3, |a| a.lambda6 > a.lambda6_star, &mut out);
        force(
            prime_divisors(m).iter().any(|&p| p % 3 == 2),
            |a| a.lambda6 > a.lambda6_star,
            &mut out,
        );
    }
    if m % 9 == 3 {
        let xp = ind.x.expect("x' defined");
        force(
            xp == 1 && m3_primes.iter().all(|&p| p % 12 == 1),
            |a| a.lambda6_star > 0,
            &mut out,
        );
        force(
            xp == 1 && m3_primes.iter().any(|&p| p % 12 == 5),
            |a| a.lambda6_star == 0,
            &mut out,
        );
        force(
            delta >= 3
                && h == 1 << (delta - 3)
                && m3_primes
                    .iter()
                    .all(|&p| p == 2 || p % 12 == 1 || p % 12 == 11),
            |a| a.lambda6_star == 0,
            &mut out,
        );
        force(
            h == 1
                && m3_primes.len() == 2
                && m3_primes.iter().all(|&p| is_prime(p) && p % 12 == 7)
                && m3_primes.iter().product::<u64>() == m / 3,
            |a| a.lambda6_star > 0,
            &mut out,
        );
    }
    out
}

/// The published criteria for the 2-torsion numbers.
fn criteria2(
    m: u64,
    f: &crate::numtheory::FieldInvariants,
    ind: &crate::numtheory::Indicators,
) -> Vec<Criterion> {
    let mut out = Vec::new();
    let h = f.h_kplus;
    let delta = f.delta_primes;
    let primes = prime_divisors(m);
    let x = ind.x.expect("x defined");
    let w = ind.w.expect("w defined");
    let q = ind.q.expect("q defined");

    force(
        m % 8 == 7,
        |a| a.mu_t == 0 && a.mu2_minus == 0 && a.lambda4_t == 0 && a.lambda4_star == 0,
        &mut out,
    );
    force(m % 8 == 5, |a| a.mu_t == 0 && a.lambda4_t == 0, &mut out);
    force(m % 24 == 21, |a| a.lambda4_star == 0, &mut out);
    force(
        m.is_multiple_of(6),
        |a| a.lambda4_star == 0 || a.lambda4_t > 0,
        &mut out,
    );
    force(
        m % 24 == 9,
        |a| a.lambda4_star == 0 || a.lambda4_t > 0,
        &mut out,
    );
    force(
        is_prime(m) && (m % 8 == 1 || m % 8 == 3),
        |a| a.lambda4_t > 0,
        &mut out,
    );
    force(m % 8 == 5 && is_prime(m), |a| a.lambda4_star > 0, &mut out);
    force(
        m.is_multiple_of(2) && is_prime(m / 2) && ((m / 2) % 8 == 3 || (m / 2) % 8 == 5),
        |a| a.lambda4_star > 0,
        &mut out,
    );
    // m = p'p with p = p' = 3 mod 8 or p = p' = 5 mod 8
    if primes.len() == 2 && primes.iter().product::<u64>() == m {
        let (p, pp) = (primes[0] % 8, primes[1] % 8);
        force(
            p == pp && (p == 3 || p == 5),
            |a| a.lambda4_star > 0,
            &mut out,
        );
    }
    force(
        m.is_multiple_of(3) && is_prime(m / 3) && ((m / 3) % 8 == 1 || (m / 3) % 8 == 3),
        |a| a.lambda4_t > 0,
        &mut out,
    );
    if (m % 4 == 1 || m % 4 == 2) && m != 1 {
        force(x == 1, |a| a.lambda4_star > 0 && a.mu2_minus > 0, &mut out);
        force(x == 2, |a| a.lambda4 > a.lambda4_star, &mut out);
    }
    if m % 8 == 3 {
        let minus2 = norm_represents(m, -2);
        force(minus2, |a| a.lambda4_star > 0 && a.lambda4_t > 0, &mut out);
        force(!minus2, |a| a.lambda4 > a.lambda4_star, &mut out);
        force(
            primes.iter().any(|&p| p % 8 == 5 || p % 8 == 7),
            |a| a.lambda4 > a.lambda4_star,
            &mut out,
        );
    }
    force(
        m % 8 == 1 && w == 1 && delta >= 3 && h == 1 << (delta - 3),
        |a| a.mu2_minus == 0,
        &mut out,
    );
    if m % 4 == 2 {
        let minus2 = norm_represents(m, -2);
        force(minus2, |a| a.lambda4_t > 0, &mut out);
        force(
            !minus2 && delta >= 2 && h == 1 << (delta - 2),
            |a| a.lambda4_star == 0,
            &mut out,
        );
        force(
            q == 1 && delta >= 1 && h == 1 << (delta - 1) && w == 2,
            |a| a.lambda4_star == 0,
            &mut out,
        );
        force(
            delta >= 2 && h == 1 << (delta - 2) && primes.iter().any(|&p| p % 8 == 5 || p % 8 == 7),
            |a| a.lambda4_star == 0,
            &mut out,
        );
    }
    out
}

/// Resolution inserted from an external computation: the published table row
/// for an `m` the criteria leave ambiguous.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Override {
    /// `(lambda6_star, lambda6)`
    Ell3(u64, u64),
    /// `(mu_t, mu2_minus, lambda4 - lambda4_star)`
    Ell2(u64, u64, u64),
}

/// Select the surviving alternative matching an external resolution.
pub fn apply_override(counts: &ClassCounts, ovr: Override) -> Result<ClassCounts, BianchiError> {
    let alts: Vec<&ClassCounts> = if counts.is_ambiguous() {
        counts.ambiguity.iter().collect()
    } else {
        vec![counts]
    };
    let chosen = alts.into_iter().find(|a| match ovr {
        Override::Ell3(star, total) => a.lambda6_star == star && a.lambda6 == total,
        Override::Ell2(mu_t, mu2m, circ) => {
            a.mu_t == mu_t && a.mu2_minus == mu2m && a.lambda4 - a.lambda4_star == circ
        }
    });
    match chosen {
        Some(a) => {
            let mut a = a.clone();
            a.ambiguity.clear();
            Ok(a)
        }
        None => Err(BianchiError::OverrideMismatch(counts.ell)),
    }
}

impl From<NumTheoryError> for BianchiError {
    fn from(e: NumTheoryError) -> Self {
        BianchiError::NumTheory(e)
    }
}
