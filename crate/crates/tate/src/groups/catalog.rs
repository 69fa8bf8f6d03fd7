//! Isomorphism-type catalog for the finite groups this crate meets.
//!
//! Identification is by signature: group order, abelianness, the multiset of
//! element orders, and the order of the derived subgroup. Within the catalog
//! of groups that actually occur here (stabilizers in chamber complexes for
//! Coxeter diagrams with at most four generators, the Bianchi subgroup types,
//! and the quotients and normalizers produced by the `B'` test) this
//! signature separates all non-isomorphic members; a test asserts that.
//! Groups outside the catalog are reported as `Unknown` with their signature.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::perm::{Perm, PermGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CatalogType {
    Trivial,
    Cyclic(u32),
    /// Dihedral group of order `2n`, for `n >= 3`.
    Dihedral(u32),
    /// `(Z/2)^2`; kept distinct from any `Dihedral(2)` tag.
    KleinFour,
    A4,
    S4,
    S5,
    DirectProduct(Box<CatalogType>, Box<CatalogType>),
    /// `(Z/2)^k` extended by the second factor (e.g. the Coxeter groups of
    /// type B are `(Z/2)^n : S_n`).
    SemidirectElem2n(u32, Box<CatalogType>),
    /// Not in the catalog; carries (order, signature digest) so results
    /// remain reproducible.
    Unknown(u64, String),
}

impl CatalogType {
    pub fn order(&self) -> u64 {
        match self {
            CatalogType::Trivial => 1,
            CatalogType::Cyclic(n) => *n as u64,
            CatalogType::Dihedral(n) => 2 * *n as u64,
            CatalogType::KleinFour => 4,
            CatalogType::A4 => 12,
            CatalogType::S4 => 24,
            CatalogType::S5 => 120,
            CatalogType::DirectProduct(a, b) => a.order() * b.order(),
            CatalogType::SemidirectElem2n(k, t) => (1u64 << k) * t.order(),
            CatalogType::Unknown(n, _) => *n,
        }
    }
}

impl fmt::Display for CatalogType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogType::Trivial => write!(f, "1"),
            CatalogType::Cyclic(n) => write!(f, "Z{n}"),
            CatalogType::Dihedral(n) => write!(f, "D{n}"),
            CatalogType::KleinFour => write!(f, "D2"),
            CatalogType::A4 => write!(f, "A4"),
            CatalogType::S4 => write!(f, "S4"),
            CatalogType::S5 => write!(f, "S5"),
            CatalogType::DirectProduct(a, b) => write!(f, "{a}x{b}"),
            CatalogType::SemidirectElem2n(k, t) => write!(f, "2^{k}:{t}"),
            CatalogType::Unknown(n, sig) => write!(f, "U{n}[{sig}]"),
        }
    }
}

/// Signature used for catalog lookup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub order: u64,
    pub abelian: bool,
    pub element_orders: Vec<(u64, u64)>,
    pub derived_order: u64,
}

impl Signature {
    pub fn of(g: &PermGroup) -> Signature {
        Signature {
            order: g.order(),
            abelian: g.is_abelian(),
            element_orders: g.element_order_multiset(),
            derived_order: g.derived_subgroup().order(),
        }
    }

    pub fn digest(&self) -> String {
        let orders: Vec<String> = self
            .element_orders
            .iter()
            .map(|(o, c)| format!("{o}^{c}"))
            .collect();
        format!(
            "o{}a{}d{}e{}",
            self.order,
            u8::from(self.abelian),
            self.derived_order,
            orders.join(",")
        )
    }
}

fn cyclic_model(n: u32) -> PermGroup {
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let gen = Perm::from_cycles(n as usize, &[(0..n as u16).collect()]);
    PermGroup::from_generators(n as usize, vec![gen]).unwrap()
}

/// Dihedral group of order `2n` as symmetries of the `n`-gon (`n >= 3`).
fn dihedral_model(n: u32) -> PermGroup {
    let deg = n as usize;
    let s1 = Perm((0..n as u16).map(|i| (n as u16 - i) % n as u16).collect());
    let s2 = Perm(
        (0..n as u16)
            .map(|i| (2 * n as u16 - 1 - i) % n as u16)
            .collect(),
    );
    PermGroup::from_generators(deg, vec![s1, s2]).unwrap()
}

fn klein_four_model() -> PermGroup {
    PermGroup::from_generators(
        4,
        vec![
            Perm::from_cycles(4, &[vec![0, 1]]),
            Perm::from_cycles(4, &[vec![2, 3]]),
        ],
    )
    .unwrap()
}

fn elementary_2_model(k: u32) -> PermGroup {
    let deg = 2 * k as usize;
    let gens = (0..k)
        .map(|i| Perm::from_cycles(deg, &[vec![2 * i as u16, 2 * i as u16 + 1]]))
        .collect();
    PermGroup::from_generators(deg, gens).unwrap()
}

fn elementary_2_tag(k: u32) -> CatalogType {
    match k {
        0 => CatalogType::Trivial,
        1 => CatalogType::Cyclic(2),
        2 => CatalogType::KleinFour,
        _ => CatalogType::DirectProduct(
            Box::new(CatalogType::Cyclic(2)),
            Box::new(elementary_2_tag(k - 1)),
        ),
    }
}

pub(crate) fn symmetric_model(n: u32) -> PermGroup {
    let gens = (0..n - 1)
        .map(|i| Perm::from_cycles(n as usize, &[vec![i as u16, i as u16 + 1]]))
        .collect();
    PermGroup::from_generators(n as usize, gens).unwrap()
}

fn alternating_model(n: u32) -> PermGroup {
    let mut gens = vec![Perm::from_cycles(n as usize, &[vec![0, 1, 2]])];
    if n > 3 {
        gens.push(Perm::from_cycles(
            n as usize,
            &[(if n % 2 == 1 { 0..n as u16 } else { 1..n as u16 }).collect()],
        ));
    }
    PermGroup::from_generators(n as usize, gens).unwrap()
}

/// Signed permutations of `n` coordinates; point `i` is `+e_i`, point `n+i`
/// is `-e_i`. This is the Coxeter group of type `B_n`, order `2^n n!`.
pub(crate) fn signed_perm_model(n: u32) -> PermGroup {
    let n = n as usize;
    let deg = 2 * n;
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        gens.push(Perm::from_cycles(
            deg,
            &[
                vec![i as u16, i as u16 + 1],
                vec![(n + i) as u16, (n + i + 1) as u16],
            ],
        ));
    }
    gens.push(Perm::from_cycles(
        deg,
        &[vec![(n - 1) as u16, (2 * n - 1) as u16]],
    ));
    PermGroup::from_generators(deg, gens).unwrap()
}

/// Even-signed permutations of `n` coordinates: the Coxeter group of type
/// `D_n`, order `2^(n-1) n!`.
pub(crate) fn even_signed_perm_model(n: u32) -> PermGroup {
    let n = n as usize;
    let deg = 2 * n;
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        gens.push(Perm::from_cycles(
            deg,
            &[
                vec![i as u16, i as u16 + 1],
                vec![(n + i) as u16, (n + i + 1) as u16],
            ],
        ));
    }
    // e_{n-1} <-> -e_n, e_n <-> -e_{n-1}
    gens.push(Perm::from_cycles(
        deg,
        &[
            vec![(n - 2) as u16, (2 * n - 1) as u16],
            vec![(n - 1) as u16, (2 * n - 2) as u16],
        ],
    ));
    PermGroup::from_generators(deg, gens).unwrap()
}

fn a5_signature() -> Signature {
    Signature::of(&alternating_model(5))
}

fn a5_tag() -> CatalogType {
    CatalogType::Unknown(60, a5_signature().digest())
}

/// Candidate catalog models of the given order, with their tags.
fn candidates(order: u64) -> Vec<(CatalogType, PermGroup)> {
    let mut out: Vec<(CatalogType, PermGroup)> = Vec::new();
    if order == 1 {
        return vec![(CatalogType::Trivial, PermGroup::trivial(1))];
    }
    if order <= u32::MAX as u64 {
        out.push((
            CatalogType::Cyclic(order as u32),
            cyclic_model(order as u32),
        ));
    }
    if order == 4 {
        out.push((CatalogType::KleinFour, klein_four_model()));
    }
    if order.is_power_of_two() && order <= 16 {
        let k = order.trailing_zeros();
        if k >= 3 {
            out.push((elementary_2_tag(k), elementary_2_model(k)));
        }
    }
    if order.is_multiple_of(2) && order / 2 >= 3 {
        let n = (order / 2) as u32;
        out.push((CatalogType::Dihedral(n), dihedral_model(n)));
    }
    if order.is_multiple_of(8) && order / 4 >= 4 {
        // Z/2 x D_n for even n only; for odd n this is the dihedral group
        // D_{2n} already listed above
        let n = (order / 4) as u32;
        out.push((
            CatalogType::DirectProduct(
                Box::new(CatalogType::Cyclic(2)),
                Box::new(CatalogType::Dihedral(n)),
            ),
            cyclic_model(2).direct_product(&dihedral_model(n)),
        ));
    }
    if order.is_multiple_of(4) {
        // products of two dihedral groups, as they arise from reducible
        // Coxeter diagrams; D_{2k} = Z/2 x D_k for odd k, so pairs are
        // deduplicated by the multiset of their odd dihedral parts
        let pq = order / 4;
        let mut seen_keys: Vec<(u32, Vec<u64>)> = Vec::new();
        for p in 3..=pq {
            if pq.is_multiple_of(p) {
                let q = pq / p;
                if q < p || q < 3 {
                    continue;
                }
                let mut z2 = 0u32;
                let mut parts = Vec::new();
                for n in [p, q] {
                    if n % 4 == 2 && n / 2 >= 3 {
                        z2 += 1;
                        parts.push(n / 2);
                    } else {
                        parts.push(n);
                    }
                }
                parts.sort_unstable();
                if seen_keys.contains(&(z2, parts.clone())) {
                    continue;
                }
                seen_keys.push((z2, parts));
                out.push((
                    CatalogType::DirectProduct(
                        Box::new(CatalogType::Dihedral(p as u32)),
                        Box::new(CatalogType::Dihedral(q as u32)),
                    ),
                    dihedral_model(p as u32).direct_product(&dihedral_model(q as u32)),
                ));
            }
        }
    }
    match order {
        12 => out.push((CatalogType::A4, alternating_model(4))),
        24 => out.push((CatalogType::S4, symmetric_model(4))),
        48 => out.push((
            // Coxeter B3; isomorphic to Z/2 x S4
            CatalogType::SemidirectElem2n(3, Box::new(CatalogType::Dihedral(3))),
            signed_perm_model(3),
        )),
        60 => out.push((a5_tag(), alternating_model(5))),
        120 => {
            out.push((CatalogType::S5, symmetric_model(5)));
            out.push((
                CatalogType::DirectProduct(Box::new(CatalogType::Cyclic(2)), Box::new(a5_tag())),
                cyclic_model(2).direct_product(&alternating_model(5)),
            ));
        }
        192 => out.push((
            CatalogType::SemidirectElem2n(3, Box::new(CatalogType::S4)),
            even_signed_perm_model(4),
        )),
        384 => out.push((
            CatalogType::SemidirectElem2n(4, Box::new(CatalogType::S4)),
            signed_perm_model(4),
        )),
        _ => {}
    }
    out
}

/// Identify the isomorphism type of `g` within the catalog.
pub fn identify_catalog_type(g: &PermGroup) -> CatalogType {
    let sig = Signature::of(g);
    for (tag, model) in candidates(sig.order) {
        if Signature::of(&model) == sig {
            return tag;
        }
    }
    CatalogType::Unknown(sig.order, sig.digest())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn basic_identifications() {
        assert_eq!(
            identify_catalog_type(&PermGroup::trivial(1)),
            CatalogType::Trivial
        );
        assert_eq!(
            identify_catalog_type(&cyclic_model(3)),
            CatalogType::Cyclic(3)
        );
        assert_eq!(
            identify_catalog_type(&klein_four_model()),
            CatalogType::KleinFour
        );
        assert_eq!(
            identify_catalog_type(&symmetric_model(3)),
            CatalogType::Dihedral(3)
        );
        assert_eq!(
            identify_catalog_type(&alternating_model(4)),
            CatalogType::A4
        );
        assert_eq!(identify_catalog_type(&symmetric_model(4)), CatalogType::S4);
        assert_eq!(identify_catalog_type(&symmetric_model(5)), CatalogType::S5);
    }

    #[test]
    fn klein_four_never_tagged_dihedral_two() {
        // closure of {(12)(34),(13)(24)} is the Klein four-group
        let g = PermGroup::from_generators(
            4,
            vec![
                Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]),
                Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]),
            ],
        )
        .unwrap();
        assert_eq!(identify_catalog_type(&g), CatalogType::KleinFour);
    }

    #[test]
    fn b3_is_elementary_extension_of_d3() {
        let b3 = signed_perm_model(3);
        assert_eq!(b3.order(), 48);
        assert_eq!(
            identify_catalog_type(&b3),
            CatalogType::SemidirectElem2n(3, Box::new(CatalogType::Dihedral(3)))
        );
        // abstractly Z/2 x S4; the direct-product construction must land on
        // the same tag
        let z2s4 = cyclic_model(2).direct_product(&symmetric_model(4));
        assert_eq!(identify_catalog_type(&z2s4), identify_catalog_type(&b3));
    }

    #[test]
    fn h3_splits_as_z2_times_a5() {
        let h3 = cyclic_model(2).direct_product(&alternating_model(5));
        match identify_catalog_type(&h3) {
            CatalogType::DirectProduct(a, b) => {
                assert_eq!(*a, CatalogType::Cyclic(2));
                assert!(matches!(*b, CatalogType::Unknown(60, _)));
            }
            other => panic!("unexpected tag {other:?}"),
        }
    }

    #[test]
    fn signatures_separate_catalog_members() {
        // within every order arising in the pipelines, distinct tags must
        // carry distinct signatures
        for order in [
            1u64, 2, 4, 6, 8, 10, 12, 16, 20, 24, 36, 48, 60, 96, 120, 144, 192, 240, 384,
        ] {
            let mut seen: HashMap<String, CatalogType> = HashMap::new();
            for (tag, model) in candidates(order) {
                assert_eq!(model.order(), order, "model for {tag} has wrong order");
                let d = Signature::of(&model).digest();
                if let Some(prev) = seen.get(&d) {
                    panic!("signature collision at order {order}: {prev} vs {tag}");
                }
                seen.insert(d, tag);
            }
        }
    }
}
