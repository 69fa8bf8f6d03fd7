//! Permutations of `{0..degree-1}` and finite groups generated by them.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Hard cap on element enumeration; everything this crate needs stays far
/// below it (the largest group realized is `F4` of order 1152).
pub const CLOSURE_GUARD: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator is not a bijection of the stated degree")]
    InvalidPermutation,
    #[error("element closure exceeds the guard of {0}")]
    ClosureTooLarge(usize),
}

/// A permutation given by its image vector (0-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u16>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Build from disjoint cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Self {
        let mut img: Vec<u16> = (0..degree as u16).collect();
        for cyc in cycles {
            for i in 0..cyc.len() {
                img[cyc[i] as usize] = cyc[(i + 1) % cyc.len()];
            }
        }
        Perm(img)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            img[x as usize] = i as u16;
        }
        Perm(img)
    }

    pub fn order(&self) -> u64 {
        let mut p = self.clone();
        let mut n = 1u64;
        while !p.is_identity() {
            p = p.compose(self);
            n += 1;
        }
        n
    }

    fn is_bijection(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        for &x in &self.0 {
            if (x as usize) >= n || seen[x as usize] {
                return false;
            }
            seen[x as usize] = true;
        }
        true
    }
}

/// A finite permutation group with its full element list.
///
/// Elements are enumerated once at construction and kept sorted, so subgroup
/// and membership tests are cheap for the group orders this crate handles
/// (everything at or below order 1200).
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree={}, order={})",
            self.degree,
            self.order()
        )
    }
}

impl PermGroup {
    /// The checked constructor behind `group_from_generators`.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        for g in &gens {
            if g.degree() != degree || !g.is_bijection() {
                return Err(GroupError::InvalidPermutation);
            }
        }
        let elements = close(degree, &gens, CLOSURE_GUARD)?;
        Ok(PermGroup {
            degree,
            generators: gens,
            elements,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: vec![],
            elements: vec![Perm::identity(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    /// Subgroup generated by `gens` inside the same symmetric group.
    pub fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        let elements = close(self.degree, &gens, CLOSURE_GUARD)
            .expect("subgroup closure cannot exceed the parent guard");
        PermGroup {
            degree: self.degree,
            generators: gens,
            elements,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Multiset of element orders, as sorted `(order, count)` pairs.
    pub fn element_order_multiset(&self) -> Vec<(u64, u64)> {
        let mut counts: std::collections::BTreeMap<u64, u64> = Default::default();
        for g in &self.elements {
            *counts.entry(g.order()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Derived subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        // normal closure of the generator commutators
        self.normal_closure(&comms)
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[Perm]) -> PermGroup {
        let mut gens: Vec<Perm> = Vec::new();
        let mut set: HashSet<Perm> = HashSet::new();
        for s in seed {
            for g in &self.elements {
                let c = g.compose(s).compose(&g.inverse());
                if set.insert(c.clone()) {
                    gens.push(c);
                }
            }
        }
        if gens.is_empty() {
            return PermGroup::trivial(self.degree);
        }
        self.subgroup(gens)
    }

    /// Normalizer of `h` in `self`; `h` must act on the same points.
    pub fn normalizer(&self, h: &PermGroup) -> PermGroup {
        let gens: Vec<Perm> = self
            .elements
            .iter()
            .filter(|g| {
                h.generators
                    .iter()
                    .all(|x| h.contains(&g.compose(x).compose(&g.inverse())))
            })
            .cloned()
            .collect();
        self.subgroup(gens)
    }

    /// Center of the group.
    pub fn center(&self) -> PermGroup {
        let gens: Vec<Perm> = self
            .elements
            .iter()
            .filter(|z| self.generators.iter().all(|g| z.compose(g) == g.compose(z)))
            .cloned()
            .collect();
        self.subgroup(gens)
    }

    /// Left-coset action of `self` on `self/n`, as a new permutation group.
    ///
    /// `n` must be normal for the result to be the quotient group; the
    /// kernel of the action is then exactly `n`.
    pub fn quotient(&self, n: &PermGroup) -> PermGroup {
        debug_assert!(n.is_subgroup_of(self));
        // enumerate coset representatives
        let mut reps: Vec<Perm> = Vec::new();
        let mut covered: HashSet<Perm> = HashSet::new();
        for g in &self.elements {
            if covered.contains(g) {
                continue;
            }
            reps.push(g.clone());
            for h in n.elements() {
                covered.insert(g.compose(h));
            }
        }
        let index = reps.len();
        let coset_of = |p: &Perm| -> u16 {
            for (i, r) in reps.iter().enumerate() {
                // p in r*N  <=>  r^{-1} p in N
                if n.contains(&r.inverse().compose(p)) {
                    return i as u16;
                }
            }
            unreachable!("cosets cover the group")
        };
        let gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|g| Perm((0..index).map(|i| coset_of(&g.compose(&reps[i]))).collect()))
            .collect();
        PermGroup::from_generators(index.max(1), gens)
            .expect("quotient closure is bounded by the parent order")
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &PermGroup) -> PermGroup {
        let d = self.degree + other.degree;
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut img: Vec<u16> = (0..d as u16).collect();
            img[..self.degree].copy_from_slice(&g.0);
            gens.push(Perm(img));
        }
        for g in &other.generators {
            let mut img: Vec<u16> = (0..d as u16).collect();
            for (i, &x) in g.0.iter().enumerate() {
                img[self.degree + i] = self.degree as u16 + x;
            }
            gens.push(Perm(img));
        }
        PermGroup::from_generators(d, gens).expect("product of enumerated groups")
    }
}

fn close(degree: usize, gens: &[Perm], guard: usize) -> Result<Vec<Perm>, GroupError> {
    let mut set: HashSet<Perm> = HashSet::new();
    let id = Perm::identity(degree);
    set.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = g.compose(&p);
            if !set.contains(&q) {
                if set.len() >= guard {
                    return Err(GroupError::ClosureTooLarge(guard));
                }
                set.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    let mut v: Vec<Perm> = set.into_iter().collect();
    v.sort();
    Ok(v)
}
