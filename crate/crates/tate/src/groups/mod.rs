//! Brute-force finite permutation-group machinery.
//!
//! Sized for the group orders occurring in chamber complexes of small Coxeter
//! diagrams and in Bianchi cell stabilizers (at most 1200); everything is
//! enumerated explicitly, nothing is clever.

mod catalog;
mod perm;

pub use catalog::{identify_catalog_type, CatalogType, Signature};
pub use perm::{GroupError, Perm, PermGroup, CLOSURE_GUARD};

pub(crate) use catalog::{even_signed_perm_model, signed_perm_model, symmetric_model};

/// `group_from_generators` of the public surface.
pub fn group_from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup, GroupError> {
    PermGroup::from_generators(degree, gens)
}

fn prime_power_part(mut n: u64, ell: u64) -> u64 {
    let mut p = 1;
    while n.is_multiple_of(ell) {
        n /= ell;
        p *= ell;
    }
    p
}

fn is_prime_power_of(mut n: u64, ell: u64) -> bool {
    while n.is_multiple_of(ell) {
        n /= ell;
    }
    n == 1
}

impl PermGroup {
    /// One Sylow ℓ-subgroup, found by growing an ℓ-subgroup through its
    /// normalizer until it has full ℓ-power order.
    pub fn sylow_subgroup(&self, ell: u64) -> PermGroup {
        let target = prime_power_part(self.order(), ell);
        let mut p = PermGroup::trivial(self.degree());
        while p.order() < target {
            let n = if p.order() == 1 {
                self.clone()
            } else {
                self.normalizer(&p)
            };
            let next = n
                .elements()
                .iter()
                .find(|g| {
                    let o = g.order();
                    if p.contains(g) || o == 1 || !is_prime_power_of(o, ell) {
                        return false;
                    }
                    let mut gens = p.generators().to_vec();
                    gens.push((*g).clone());
                    is_prime_power_of(self.subgroup(gens).order(), ell)
                })
                .cloned();
            match next {
                Some(g) => {
                    let mut gens = p.generators().to_vec();
                    gens.push(g);
                    p = self.subgroup(gens);
                }
                None => break,
            }
        }
        debug_assert_eq!(p.order(), target, "Sylow search must reach full order");
        p
    }

    /// All Sylow ℓ-subgroups (the conjugates of one of them).
    pub fn sylow_subgroups(&self, ell: u64) -> Vec<PermGroup> {
        let p = self.sylow_subgroup(ell);
        let mut seen: Vec<Vec<Perm>> = Vec::new();
        let mut out = Vec::new();
        for g in self.elements() {
            let conj: Vec<Perm> = p
                .generators()
                .iter()
                .map(|x| g.compose(x).compose(&g.inverse()))
                .collect();
            let q = self.subgroup(conj);
            let key: Vec<Perm> = q.elements().to_vec();
            if !seen.contains(&key) {
                seen.push(key);
                out.push(q);
            }
        }
        debug_assert!(
            out.len() as u64 % ell == 1 || !self.order().is_multiple_of(ell),
            "Sylow count must be 1 mod ell"
        );
        out
    }
}

/// Zassenhaus ℓ-normality: the center of one Sylow ℓ-subgroup is the center
/// of every Sylow ℓ-subgroup containing it.
///
/// Returns true vacuously when ℓ does not divide the group order.
pub fn is_l_normal(g: &PermGroup, ell: u64) -> bool {
    if !g.order().is_multiple_of(ell) {
        return true;
    }
    let sylows = g.sylow_subgroups(ell);
    let z = sylows[0].center();
    for q in &sylows {
        if z.is_subgroup_of(q) && q.center().elements() != z.elements() {
            return false;
        }
    }
    true
}

/// The largest normal subgroup of `g` whose order is coprime to ℓ
/// (the ℓ′-core). For finite groups this is exactly the largest normal
/// subgroup with trivial mod-ℓ homology.
pub fn largest_normal_coprime_subgroup(g: &PermGroup, ell: u64) -> PermGroup {
    let mut core = PermGroup::trivial(g.degree());
    loop {
        let mut grew = false;
        for x in g.elements() {
            if core.contains(x) || x.order() % ell == 0 {
                continue;
            }
            let mut seed = core.generators().to_vec();
            seed.push(x.clone());
            let cand = g.normal_closure(&seed);
            if !cand.order().is_multiple_of(ell) {
                core = cand;
                grew = true;
            }
        }
        if !grew {
            return core;
        }
    }
}

fn normalizer_of_sylow_center(g: &PermGroup, ell: u64) -> PermGroup {
    let p = g.sylow_subgroup(ell);
    g.normalizer(&p.center())
}

fn coprime_reduction(g: &PermGroup, ell: u64) -> PermGroup {
    g.quotient(&largest_normal_coprime_subgroup(g, ell))
}

/// Condition `B'` for a cell-stabilizer pair `g_tau ⊆ g_sigma`.
///
/// Both groups are first reduced by their largest normal subgroup of order
/// coprime to ℓ; the three clauses are then tested on the quotients, with
/// isomorphism decided by catalog type. Only the isomorphism types enter, so
/// the two groups need not act on the same points.
pub fn check_condition_bprime(g_sigma: &PermGroup, g_tau: &PermGroup, ell: u64) -> bool {
    let qs = coprime_reduction(g_sigma, ell);
    let qt = coprime_reduction(g_tau, ell);
    let ts = identify_catalog_type(&qs);
    let tt = identify_catalog_type(&qt);
    // clause (1)
    if ts == tt {
        return true;
    }
    if !is_l_normal(&qs, ell) {
        return false;
    }
    let ns = normalizer_of_sylow_center(&qs, ell);
    // clause (2)
    if identify_catalog_type(&ns) == tt {
        return true;
    }
    // clause (3)
    if !is_l_normal(&qt, ell) {
        return false;
    }
    let nt = normalizer_of_sylow_center(&qt, ell);
    let t = largest_normal_coprime_subgroup(&ns, ell);
    ns.order() == t.order() * nt.order()
        && identify_catalog_type(&ns.quotient(&t)) == identify_catalog_type(&nt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        symmetric_model(4)
    }

    fn s5() -> PermGroup {
        symmetric_model(5)
    }

    fn d3() -> PermGroup {
        symmetric_model(3)
    }

    fn z3() -> PermGroup {
        PermGroup::from_generators(3, vec![Perm::from_cycles(3, &[vec![0, 1, 2]])]).unwrap()
    }

    fn z2() -> PermGroup {
        PermGroup::from_generators(2, vec![Perm::from_cycles(2, &[vec![0, 1]])]).unwrap()
    }

    fn a5() -> PermGroup {
        PermGroup::from_generators(
            5,
            vec![
                Perm::from_cycles(5, &[vec![0, 1, 2]]),
                Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sylow_of_s4() {
        let g = s4();
        assert_eq!(g.sylow_subgroup(3).order(), 3);
        assert_eq!(g.sylow_subgroup(2).order(), 8);
        assert_eq!(g.sylow_subgroups(3).len(), 4);
    }

    #[test]
    fn l_normality_examples() {
        assert!(is_l_normal(&s4(), 3));
        assert!(is_l_normal(&a5(), 5));
        assert!(is_l_normal(&z3(), 3));
        // S4 is not 2-normal: Sylow-2 subgroups are the three dihedral
        // groups of order 8, whose centers differ but sit in intersections
        assert!(!is_l_normal(&s4(), 2));
    }

    #[test]
    fn coprime_core_examples() {
        // B3 = (Z/2)^3 : D3 at ell = 3 strips the elementary factor
        let b3 = signed_perm_model(3);
        let t = largest_normal_coprime_subgroup(&b3, 3);
        assert_eq!(t.order(), 8);
        assert_eq!(
            identify_catalog_type(&b3.quotient(&t)),
            CatalogType::Dihedral(3)
        );
        // D3 at ell = 3 has trivial coprime core
        assert_eq!(largest_normal_coprime_subgroup(&d3(), 3).order(), 1);
        // Z/2 x A5 at ell = 5 strips the Z/2
        let h3 = z2().direct_product(&a5());
        assert_eq!(largest_normal_coprime_subgroup(&h3, 5).order(), 2);
        // coprime order: the whole group is its own core
        assert_eq!(largest_normal_coprime_subgroup(&s4(), 5).order(), 24);
    }

    #[test]
    fn bprime_examples() {
        // normalizer of a Sylow-3 center in S4 is D3
        assert!(check_condition_bprime(&s4(), &d3(), 3));
        // S5 over S4 at ell = 3 via clause (3)
        assert!(check_condition_bprime(&s5(), &s4(), 3));
        // no clause applies to (D3, Z/2) at ell = 3
        assert!(!check_condition_bprime(&d3(), &z2(), 3));
        // reflexivity (clause 1)
        for g in [s4(), d3(), a5()] {
            assert!(check_condition_bprime(&g, &g, 3));
        }
    }

    #[test]
    fn bprime_matches_homology_facts() {
        // Z/3 -> A4 is a mod-3 homology isomorphism; Z/3 -> D3 is not
        let a4 = PermGroup::from_generators(
            4,
            vec![
                Perm::from_cycles(4, &[vec![0, 1, 2]]),
                Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]),
            ],
        )
        .unwrap();
        assert!(check_condition_bprime(&a4, &z3(), 3));
        assert!(!check_condition_bprime(&d3(), &z3(), 3));
        // Z/2 -> D3 is a mod-2 homology isomorphism; Z/2 -> D2, A4 are not
        assert!(check_condition_bprime(&d3(), &z2(), 2));
        let d2 = PermGroup::from_generators(
            4,
            vec![
                Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]),
                Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]),
            ],
        )
        .unwrap();
        assert!(!check_condition_bprime(&d2, &z2(), 2));
        assert!(!check_condition_bprime(&a4, &z2(), 2));
    }

    #[test]
    fn catalog_constant_on_conjugate_subgroups() {
        let g = s4();
        let h = g.subgroup(vec![Perm::from_cycles(4, &[vec![0, 1]])]);
        for x in g.elements() {
            let conj = g.subgroup(
                h.generators()
                    .iter()
                    .map(|p| x.compose(p).compose(&x.inverse()))
                    .collect(),
            );
            assert_eq!(identify_catalog_type(&conj), identify_catalog_type(&h));
        }
    }
}
