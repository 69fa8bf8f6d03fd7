//! Acceptance suite: replays the published tables and checks every pipeline
//! against an independent oracle. One test per criterion; each prints a
//! PASS line with its headline numbers (visible with `--nocapture`).

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use tate::bianchi::{
    asymptotics_rows, counts_with_overrides, expand_series, kraemer_counts, p_circle, p_d2_star,
    p_edge, poincare_series, verify_against_paper_tables, Dataset, Verdict,
};
use tate::complex::{extract_torsion_subcomplex, reduce_torsion_subcomplex};
use tate::coxeter::{build_chamber_complex, tetrahedral_diagram, tetrahedral_homology};
use tate::numtheory::{
    class_number_real_quadratic, field_discriminant, fundamental_unit, is_squarefree,
    norm_represents, prime_divisors, reduce_form, reduced_form_cycles, squarefree_part, Form,
};

fn squarefree_ms(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&m| m != 3 && is_squarefree(m))
        .collect()
}

/// Criterion 1: the 3-torsion conjugacy-classes-graph table is reproduced
/// exactly, skipping only the published ambiguous cases; the externally
/// inserted cases go through the override file and are not counted.
#[test]
fn criterion_1_three_torsion_table() {
    let start = Instant::now();
    let dataset = Dataset::bundled();
    let report = verify_against_paper_tables(3, &dataset).unwrap();
    let plain = report
        .rows
        .iter()
        .filter(|r| r.verdict == Verdict::Match)
        .count();
    let via_override = report
        .rows
        .iter()
        .filter(|r| r.verdict == Verdict::MatchViaOverride)
        .count();
    let mismatches = report.mismatched().len();
    let elapsed = start.elapsed();
    assert_eq!(mismatches, 0, "mismatches: {:?}", report.mismatched());
    assert!(
        plain >= 500,
        "expected several hundred plain matches, got {plain}"
    );
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!(
        "criterion 1: PASS - 3-torsion rows: {plain} matched, {via_override} via override, \
         {} skipped, 0 mismatched in {elapsed:?}",
        report.skipped()
    );
}

/// Criterion 2: the 2-torsion homology-type table is reproduced exactly via
/// the Poincaré series of the computed counts.
#[test]
fn criterion_2_two_torsion_table() {
    let start = Instant::now();
    let dataset = Dataset::bundled();
    let report = verify_against_paper_tables(2, &dataset).unwrap();
    let matched = report.matched();
    let mismatches = report.mismatched().len();
    let elapsed = start.elapsed();
    assert_eq!(mismatches, 0, "mismatches: {:?}", report.mismatched());
    assert!(matched >= 500, "got {matched}");
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}");
    println!(
        "criterion 2: PASS - 2-torsion rows: {matched} matched, {} skipped, 0 mismatched in {elapsed:?}",
        report.skipped()
    );
}

/// Criterion 3: the graph-theoretic count identities hold for every computed
/// alternative of every squarefree m up to 2003.
#[test]
fn criterion_3_count_identities() {
    let mut checked = 0u64;
    for m in squarefree_ms(2003) {
        for ell in [2u64, 3] {
            let counts = kraemer_counts(m, ell).unwrap();
            let alts = if counts.is_ambiguous() {
                counts.ambiguity.clone()
            } else {
                vec![counts]
            };
            for a in alts {
                if ell == 2 {
                    assert_eq!(2 * a.lambda4_star, a.mu_t + 3 * a.mu2_minus, "m={m}");
                    assert!(a.lambda4_t <= a.mu_t, "m={m}");
                } else {
                    assert_eq!(2 * a.lambda6_star, a.mu3, "m={m}");
                }
                checked += 1;
            }
        }
    }
    println!("criterion 3: PASS - count identities on {checked} count vectors, 0 violations");
}

const CT_EXPECTED_L3: [usize; 32] = [
    1, 1, 1, 0, 0, 0, 2, 2, 3, 2, 2, 6, 4, 3, 3, 3, 4, 2, 1, 1, 2, 2, 1, 1, 1, 2, 3, 2, 3, 3, 1, 2,
];

/// Reduced 3-torsion labels printed in the figures, as sorted multisets.
fn ct_expected_labels(id: usize) -> Vec<&'static str> {
    match id {
        1..=3 | 19 | 20 | 23..=25 | 31 => vec!["D3"],
        4..=6 => vec![],
        7 | 10 | 11 | 28 | 32 => vec!["D3", "D6"],
        8 | 18 | 21 | 22 | 26 => vec!["D3", "D3"],
        9 | 16 | 27 => vec!["D3", "D3", "D3"],
        12 => vec!["D3"; 6],
        13 => vec!["D3", "D3", "D3", "D6"],
        14 => vec!["D3", "D6", "D6"],
        15 | 29 | 30 => vec!["D3", "D3", "D6"],
        17 => vec!["D3", "D3", "D6", "D6"],
        _ => unreachable!(),
    }
}

fn ct_expected_l5(id: usize) -> usize {
    match id {
        19 | 20 | 22 | 23 | 26..=29 => 1,
        21 | 24 => 2,
        _ => 0,
    }
}

/// Criterion 4: the tetrahedral pipeline reproduces the exponent column of
/// the published figures for all 32 groups at 3-torsion and the nontrivial
/// 5-torsion rows (the reduced labels are checked too).
#[test]
fn criterion_4_tetrahedral_tables() {
    let start = Instant::now();
    for id in 1..=32usize {
        let (m3, g3) = tetrahedral_homology(id, 3).unwrap();
        assert_eq!(m3, CT_EXPECTED_L3[id - 1], "CT({id}) at ell=3");
        assert_eq!(
            g3.vertex_label_multiset(),
            ct_expected_labels(id),
            "CT({id}) labels"
        );
        let (m5, g5) = tetrahedral_homology(id, 5).unwrap();
        assert_eq!(m5, ct_expected_l5(id), "CT({id}) at ell=5");
        assert!(
            g5.vertex_label_multiset().iter().all(|l| l == "D5"),
            "CT({id}) 5-torsion labels"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 4: PASS - 32 tetrahedral groups at ell=3 and ell=5 in {elapsed:?}");
}

/// Criterion 5: the CT(25) trace. Extraction labels the vertices by the
/// dihedral group D3 (which also stabilizes every edge), the symmetric group
/// S4, and the elementary-extension group (Z/2)^3 : D3 of order 48;
/// reduction collapses the chain to a single D3 vertex.
#[test]
fn criterion_5_ct25_trace() {
    let d = tetrahedral_diagram(25).unwrap();
    let x = build_chamber_complex(&d).unwrap();
    let t3 = extract_torsion_subcomplex(&x, 3);
    let mut vertex_types: Vec<String> = t3
        .cells
        .iter()
        .filter(|c| c.dim == 0)
        .map(|c| c.catalog.to_string())
        .collect();
    vertex_types.sort();
    vertex_types.dedup();
    assert_eq!(vertex_types, vec!["2^3:D3", "D3", "S4"]);
    let edge_types: Vec<String> = t3
        .cells
        .iter()
        .filter(|c| c.dim == 1)
        .map(|c| c.catalog.to_string())
        .collect();
    assert!(
        edge_types.iter().all(|t| t == "D3"),
        "edges all D3-stabilized"
    );
    let g = reduce_torsion_subcomplex(&t3, 3).unwrap();
    assert_eq!(g.vertices.len(), 1);
    assert!(g.edges.is_empty());
    assert_eq!(g.vertices[0].1.to_string(), "D3");
    println!("criterion 5: PASS - CT(25): {{D3, S4, 2^3:D3}} collapses to a single D3 vertex");
}

/// Criterion 6: the base-series expansions match the direct dimension
/// formulae exactly up to degree 50.
#[test]
fn criterion_6_series_oracles() {
    let two = BigInt::from(2);
    let circle = expand_series(&p_circle(), 50).unwrap();
    assert!(circle.iter().all(|c| *c == two), "P_circle constant 2");
    let edge = expand_series(&p_edge(), 50).unwrap();
    let pattern = [2i64, 1, 0, 1];
    for (i, c) in edge.iter().enumerate() {
        assert_eq!(*c, BigInt::from(pattern[i % 4]), "P_edge at q={}", i + 3);
    }
    let d2 = expand_series(
        &p_d2_star().scale(&num_rational::BigRational::from_integer(2.into())),
        50,
    )
    .unwrap();
    for (i, c) in d2.iter().enumerate() {
        let q = i as i64 + 3;
        assert_eq!(*c, BigInt::from(2 * q - 1), "2 P*_D2 at q={q}");
    }
    println!("criterion 6: PASS - P_circle, P_edge, 2P*_D2 expansions exact to q=50");
}

// ---------------------------------------------------------------------------
// number-theory oracles (criterion 7)

fn isqrt_u64(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    while x * x > n {
        x -= 1;
    }
    x
}

/// Independent wide class number: enumerate the ideals of norm up to the
/// Minkowski bound and count their classes, testing equivalence through the
/// reduction cycles of the ideal norm forms under GL2(Z) (cycle or flipped
/// cycle).
fn ideal_class_oracle(d: u64) -> u64 {
    let disc = field_discriminant(d);
    let cycles = reduced_form_cycles(disc);
    let cycle_of = |f: Form| -> usize {
        let r = reduce_form(f, disc);
        cycles
            .iter()
            .position(|c| c.contains(&r))
            .expect("reduced form lies in some cycle")
    };
    let mb = isqrt_u64(disc as u64) / 2;
    let mut classes: Vec<(usize, usize)> = Vec::new();
    for a in 1..=mb.max(1) as i64 {
        for b in (-a + 1)..=a {
            if (b * b - disc) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - disc) / (4 * a);
            // the ideal [a, (b + sqrt(disc))/2] with norm form (a, b, c);
            // wide equivalence identifies the narrow class of f with its
            // translate by the sign class, realized by (-a, b, -c)
            let k1 = cycle_of(Form { a, b, c });
            let k2 = cycle_of(Form { a: -a, b, c: -c });
            let key = (k1.min(k2), k1.max(k2));
            if !classes.contains(&key) {
                classes.push(key);
            }
        }
    }
    classes.len() as u64
}

/// Dickson polynomial `D_k(t, n) = eta^k + conj(eta)^k` for trace t, norm n.
fn dickson(k: u32, t: &BigInt, n: i64) -> BigInt {
    let mut prev = BigInt::from(2);
    let mut cur = t.clone();
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = t * &cur - BigInt::from(n) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Does some unit eta with eta^k = eps exist? Tests whether the trace
/// equation `D_k(t, n) = a` has an integer solution that is a unit of the
/// same field.
fn has_unit_kth_root(d: u64, a: &BigInt, norm: i8, k: u32) -> bool {
    let n_candidates: Vec<i64> = if k % 2 == 1 {
        vec![norm as i64]
    } else if norm == 1 {
        vec![1, -1]
    } else {
        return false; // negative norms have no even-order roots
    };
    for n in n_candidates {
        // D_k(t, n) is increasing in t >= 2; scan 1..=2 and binary search above
        for t in 1i64..=2 {
            if &dickson(k, &BigInt::from(t), n) == a && unit_with_trace(d, t.into(), n) {
                return true;
            }
        }
        let (mut lo, mut hi) = (BigInt::from(2), a.clone() + BigInt::one());
        while lo < hi {
            let mid: BigInt = (&lo + &hi) / 2;
            let v = dickson(k, &mid, n);
            if &v == a {
                if unit_with_trace(d, mid, n) {
                    return true;
                }
                break;
            } else if &v < a {
                lo = mid + BigInt::one();
            } else {
                hi = mid;
            }
        }
    }
    false
}

fn unit_with_trace(d: u64, t: BigInt, n: i64) -> bool {
    // (t + b sqrt d)/2 with t^2 - d b^2 = 4n
    let b2 = (&t * &t - BigInt::from(4 * n)) / BigInt::from(d);
    if (&b2 * BigInt::from(d) + BigInt::from(4 * n)) != &t * &t || b2 <= BigInt::zero() {
        return false;
    }
    let b = b2.sqrt();
    &b * &b == b2
}

/// Criterion 7: class numbers against the ideal-enumeration oracle up to
/// 300; fundamental units satisfy their equation and are minimal up to
/// 1000; norm representation against bounded exhaustive search up to 200.
#[test]
fn criterion_7_number_theory_oracles() {
    // (a) class numbers
    let mut class_checked = 0;
    for d in 2..=300u64 {
        if !is_squarefree(d) {
            continue;
        }
        let (h, _) = class_number_real_quadratic(d).unwrap();
        assert_eq!(h, ideal_class_oracle(d), "class number of Q(sqrt {d})");
        class_checked += 1;
    }
    // (b) fundamental units: equation and minimality
    let mut unit_checked = 0;
    for d in 2..=1000u64 {
        if !is_squarefree(d) {
            continue;
        }
        let u = fundamental_unit(d);
        assert_eq!(
            &u.a * &u.a - BigInt::from(d) * &u.b * &u.b,
            BigInt::from(4i64 * u.norm as i64),
            "unit equation for D={d}"
        );
        assert!(u.a > BigInt::zero() && u.b > BigInt::zero());
        // eps >= golden ratio, so any smaller unit root has prime order
        // below log_phi(eps)
        let log_eps = (u.a.to_string().len() as f64) * std::f64::consts::LN_10 + 1.0;
        let k_max = (log_eps / 0.4812) as u32 + 2; // ln((1+sqrt5)/2) = 0.4812
        for k in (2..=k_max).filter(|&k| (2..k).all(|j| k % j != 0)) {
            assert!(
                !has_unit_kth_root(d, &u.a, u.norm, k),
                "unit for D={d} has a {k}-th root"
            );
        }
        unit_checked += 1;
    }
    // (c) norm representation against exhaustive search. Any element of
    // norm n can be moved by the norm-preserving unit u (the fundamental
    // unit, squared when its norm is -1) into the window
    // [sqrt|4n| u^(-1/2), sqrt|4n| u^(1/2)), which bounds |y| by
    // sqrt(12 u / d) for |n| <= 3.
    let mut norm_checked = 0;
    for d in 2..=200u64 {
        if !is_squarefree(d) {
            continue;
        }
        let unit = fundamental_unit(d);
        let eps: f64 = unit.a.to_string().parse::<f64>().unwrap();
        let u = if unit.norm == -1 { eps * eps } else { eps };
        let y_max = ((12.0 * u / d as f64).sqrt() as i64) + 2;
        let mut found_full = [false; 7]; // index n + 3
        let mut found_half = [false; 7];
        for y in 0..=y_max {
            let t = (d as i128) * (y as i128) * (y as i128);
            let s = isqrt_u64(t as u64) as i128;
            for x in (s - 4).max(0)..=s + 4 {
                let v = x * x - t;
                if v.abs() <= 3 {
                    found_full[(v + 3) as usize] = true;
                }
                if d % 4 == 1 && v.abs() <= 12 && v % 4 == 0 && (x - y as i128) % 2 == 0 {
                    found_half[(v / 4 + 3) as usize] = true;
                }
            }
        }
        for n in [-3i64, -2, -1, 1, 2, 3] {
            let found = found_full[(n + 3) as usize] || found_half[(n + 3) as usize];
            assert_eq!(
                norm_represents(d, n),
                found,
                "norm representation of {n} in Q(sqrt {d})"
            );
            norm_checked += 1;
        }
    }
    println!(
        "criterion 7: PASS - {class_checked} class numbers vs ideal oracle, \
         {unit_checked} units minimal, {norm_checked} norm tests vs exhaustive search"
    );
}

/// Criterion 8: the norm lemma's congruence conditions hold for every
/// squarefree m up to 2003 not divisible by 3.
#[test]
fn criterion_8_norm_lemma_congruences() {
    let mut positives = 0;
    for m in squarefree_ms(2003) {
        if m % 3 == 0 {
            continue;
        }
        let radicand = squarefree_part(3 * m);
        if norm_represents(radicand, -3) {
            for p in prime_divisors(m) {
                assert_eq!(p % 3, 1, "-3 is a norm for m={m} but {p} | m");
            }
            assert_eq!(m % 3, 1, "m={m}");
            positives += 1;
        }
        if norm_represents(radicand, 3) {
            for p in prime_divisors(m) {
                assert!(
                    p == 2 || p % 12 == 1 || p % 12 == 11,
                    "3 is a norm for m={m} but {p} | m"
                );
            }
            assert_eq!(m % 3, 2, "m={m}");
            positives += 1;
        }
    }
    assert!(
        positives > 100,
        "the lemma should fire often, got {positives}"
    );
    println!(
        "criterion 8: PASS - norm-lemma congruences on all squarefree m <= 2003 \
         ({positives} positive norm cases), 0 violations"
    );
}

/// Criterion 9: the desk-scale substitute for the large-scale asymptotics:
/// finite positive ratios, lambda6' consistent with the table pipeline, and
/// the lower bound variant never exceeding the upper one.
#[test]
fn criterion_9_asymptotics_rows() {
    let dataset = Dataset::bundled();
    let rows = asymptotics_rows(2003, &dataset).unwrap();
    let expected_count = (7..=2003u64)
        .filter(|&m| m % 4 == 3 && m != 3 && is_squarefree(m))
        .count();
    assert_eq!(rows.len(), expected_count);
    for r in &rows {
        assert!(r.covolume.is_finite() && r.covolume > 0.0, "m={}", r.m);
        assert!(r.ratio_low.is_finite() && r.ratio_low > 0.0, "m={}", r.m);
        assert!(r.ratio_high >= r.ratio_low, "m={}", r.m);
        assert!(r.lambda6_prime_low <= r.lambda6_prime_high, "m={}", r.m);
        assert!(r.scaled_avg_low <= r.scaled_avg_high + 1e-12, "m={}", r.m);
        // resolved rows must agree with the criterion-1 pipeline
        let counts = counts_with_overrides(r.m, 3, &dataset).unwrap();
        if !counts.is_ambiguous() {
            assert_eq!(r.lambda6_prime_low, counts.circles(), "m={}", r.m);
            assert_eq!(r.lambda6_prime_high, counts.circles(), "m={}", r.m);
        }
    }
    println!(
        "criterion 9: PASS - {} asymptotics rows, ratios finite and positive, \
         bounds ordered, lambda6' consistent",
        rows.len()
    );
}

/// Every conjugacy-classes graph built from table counts satisfies the
/// published edge-orbit degree table and has one component per Z/3 class.
#[test]
fn graphs_satisfy_degree_table() {
    use tate::bianchi::conjugacy_classes_graph3;
    use tate::complex::validate_bianchi_degrees;
    let dataset = Dataset::bundled();
    let mut checked = 0;
    for m in squarefree_ms(700) {
        let counts = match counts_with_overrides(m, 3, &dataset) {
            Ok(c) if !c.is_ambiguous() => c,
            _ => continue,
        };
        let g = conjugacy_classes_graph3(&counts).unwrap();
        let violations = validate_bianchi_degrees(&g, 3);
        assert!(violations.is_empty(), "m={m}: {violations:?}");
        assert_eq!(g.component_count() as u64, counts.lambda6, "m={m}");
        checked += 1;
    }
    assert!(checked > 300);
    println!("graph invariant: PASS - degree table over {checked} graphs");
}

/// The invariant behind criterion 2's series: expansions of every computed
/// series have nonnegative integer coefficients, and the first differences
/// are eventually periodic (period 12 covers the pole structure: the factor
/// `t^2 + t + 1` in the A4 series contributes period 3 on top of period 4).
#[test]
fn series_integrality_and_periodicity() {
    let dataset = Dataset::bundled();
    let mut checked = 0;
    for m in squarefree_ms(500) {
        for ell in [2u64, 3] {
            let counts = match counts_with_overrides(m, ell, &dataset) {
                Ok(c) if !c.is_ambiguous() => c,
                _ => continue,
            };
            let f = poincare_series(&counts, ell).unwrap();
            let coeffs = f.expand(60).unwrap();
            for c in &coeffs {
                assert!(c.is_integer() && !c.is_negative(), "m={m} ell={ell}");
            }
            let diffs: Vec<_> = (4..=60)
                .map(|q| coeffs[q].clone() - coeffs[q - 1].clone())
                .collect();
            for i in 20..diffs.len() {
                assert_eq!(diffs[i], diffs[i - 12], "m={m} ell={ell} q={}", i + 4);
            }
            checked += 1;
        }
    }
    assert!(checked > 500);
    println!("series invariant: PASS - {checked} series integral with periodic differences");
}
