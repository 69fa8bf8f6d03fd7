//! Reduced indefinite binary quadratic forms, their cycles, and the class
//! numbers of real quadratic fields.

use super::contfrac::isqrt;

/// An integral binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }
}

/// Field discriminant of `Q(sqrt(d))` for squarefree `d > 1`.
pub fn field_discriminant(d: u64) -> i64 {
    if d % 4 == 1 {
        d as i64
    } else {
        4 * d as i64
    }
}

/// `b < sqrt(disc)` in exact arithmetic (`disc` is never a square here).
fn lt_sqrt(b: i64, disc: i64) -> bool {
    b < 0 || b * b < disc
}

/// A form of positive non-square discriminant is reduced iff
/// `|sqrt(disc) - 2|a|| < b < sqrt(disc)`.
fn is_reduced(f: &Form, disc: i64) -> bool {
    let two_a = 2 * f.a.abs();
    f.b > 0
        && lt_sqrt(f.b, disc)
        && disc < (f.b + two_a) * (f.b + two_a)
        && (two_a <= f.b || (two_a - f.b) * (two_a - f.b) < disc)
}

/// The reduction/cycle step: `rho(a,b,c) = (c, r, (r^2-disc)/(4c))` with `r`
/// the unique residue of `-b mod 2|c|` in the reduction window.
fn rho(f: &Form, disc: i64, s: i64) -> Form {
    let a2 = f.c;
    let m = 2 * a2.abs();
    // window: for |c| > s use (-|c|, |c|], else (s - 2|c|, s]
    let upper = if a2.abs() > s { a2.abs() } else { s };
    let mut r = (-f.b).rem_euclid(m);
    // shift r into (upper - m, upper]
    r += ((upper - r).div_euclid(m)) * m;
    let c2 = (r * r - disc) / (4 * a2);
    Form { a: a2, b: r, c: c2 }
}

/// Reduce an arbitrary form of the given positive discriminant.
pub fn reduce_form(f: Form, disc: i64) -> Form {
    reduce(f, disc)
}

fn reduce(mut f: Form, disc: i64) -> Form {
    let s = isqrt(disc as u64) as i64;
    for _ in 0..64 {
        if is_reduced(&f, disc) {
            return f;
        }
        f = rho(&f, disc, s);
    }
    panic!("form reduction failed to terminate for disc {disc}");
}

/// All reduced forms of the discriminant, grouped into rho-cycles.
pub fn reduced_form_cycles(disc: i64) -> Vec<Vec<Form>> {
    let s = isqrt(disc as u64) as i64;
    let mut all: Vec<Form> = Vec::new();
    for b in 1..=s {
        if (disc - b * b) % 4 != 0 {
            continue;
        }
        let n = (disc - b * b) / 4; // = -ac > 0
        for a in 1..=n {
            if n % a != 0 {
                continue;
            }
            let c = n / a;
            for f in [Form { a, b, c: -c }, Form { a: -a, b, c }] {
                if is_reduced(&f, disc) {
                    all.push(f);
                }
            }
        }
    }
    all.sort_unstable();
    let mut cycles: Vec<Vec<Form>> = Vec::new();
    let mut visited: std::collections::HashSet<Form> = Default::default();
    for &start in &all {
        if visited.contains(&start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut f = start;
        loop {
            visited.insert(f);
            cycle.push(f);
            f = rho(&f, disc, s);
            debug_assert!(is_reduced(&f, disc));
            if f == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles
}

/// Narrow class number of the order of discriminant `disc`: the number of
/// cycles of reduced forms.
pub fn narrow_class_number(disc: i64) -> u64 {
    reduced_form_cycles(disc).len() as u64
}

/// Principal form of the field discriminant.
pub fn principal_form(disc: i64) -> Form {
    if disc % 4 == 1 || disc % 4 == -3 {
        Form {
            a: 1,
            b: 1,
            c: (1 - disc) / 4,
        }
    } else {
        Form {
            a: 1,
            b: 0,
            c: -disc / 4,
        }
    }
}

/// Does the principal form of `disc` represent `n`? Valid for
/// `4 n^2 < disc`; decided by scanning the principal cycle for leading
/// coefficient `n`.
pub fn principal_cycle_represents(disc: i64, n: i64) -> bool {
    debug_assert!(4 * n * n < disc);
    let s = isqrt(disc as u64) as i64;
    let start = reduce(principal_form(disc), disc);
    let mut f = start;
    loop {
        if f.a == n {
            return true;
        }
        f = rho(&f, disc, s);
        if f == start {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narrow_class_numbers_of_small_fields() {
        // (d, h_narrow) for the field discriminant of Q(sqrt d)
        for (d, expected) in [
            (5u64, 1),
            (2, 1),
            (3, 2),
            (15, 4),
            (39, 4),
            (10, 2),
            (79, 6),
        ] {
            assert_eq!(
                narrow_class_number(field_discriminant(d)),
                expected,
                "narrow class number of Q(sqrt {d})"
            );
        }
    }

    #[test]
    fn principal_cycle_small_values() {
        // 2 = 3^2 - 7 * 1^2 is a norm in Q(sqrt 7)
        assert!(principal_cycle_represents(field_discriminant(7), 2));
        // x^2 - 15 y^2 = 2 has no solution mod 5
        assert!(!principal_cycle_represents(field_discriminant(15), 2));
    }
}
