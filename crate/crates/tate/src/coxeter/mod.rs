//! Coxeter diagrams, spherical subsets, finite quotient chamber complexes,
//! and the mod-ℓ homology pipelines for triangle and tetrahedral groups.

mod todd_coxeter;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::complex::{
    extract_torsion_subcomplex, reduce_torsion_subcomplex, ComplexError, OrbitCell, Source,
    StabilizedComplex, TorsionGraph,
};
use crate::groups::{identify_catalog_type, CatalogType, PermGroup};

pub use todd_coxeter::{coxeter_relators, enumerate_regular, EnumerationError};

/// Coset guard: the largest group ever realized is `F4` of order 1152.
pub const COSET_GUARD: usize = 1200;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("matrix is not a Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("subset is not spherical")]
    NotSpherical,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("the {0}-torsion sub-complex is not one-dimensional")]
    UnsupportedPrime(u64),
    #[error("unknown tetrahedral group id {0} (valid: 1..=32)")]
    UnknownTetrahedralId(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A Coxeter diagram: the symmetric matrix of pairwise orders, with
/// `m[i][i] = 1` and `0` encoding an infinite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    pub n: usize,
    pub m: Vec<Vec<u32>>,
}

impl CoxeterDiagram {
    pub fn new(m: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = m.len();
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::InvalidMatrix("not square".into()));
            }
            if row[i] != 1 {
                return Err(CoxeterError::InvalidMatrix("diagonal must be 1".into()));
            }
            for j in 0..n {
                if i != j && row[j] == 1 {
                    return Err(CoxeterError::InvalidMatrix(
                        "off-diagonal entries must be >= 2, or 0 for infinity".into(),
                    ));
                }
                if row[j] != m[j][i] {
                    return Err(CoxeterError::InvalidMatrix(
                        "matrix must be symmetric".into(),
                    ));
                }
            }
        }
        Ok(CoxeterDiagram { n, m })
    }

    /// Triangle group diagram: `(ab)^p = (bc)^q = (ca)^r = 1`.
    pub fn triangle(p: u32, q: u32, r: u32) -> Self {
        CoxeterDiagram::new(vec![vec![1, p, r], vec![p, 1, q], vec![r, q, 1]]).unwrap()
    }

    fn order(&self, i: usize, j: usize) -> u32 {
        self.m[i][j]
    }
}

/// Label of a connected finite-type component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D4,
    F4,
    H3,
    H4,
    I2(u32),
}

impl FiniteType {
    pub fn order(&self) -> u64 {
        match self {
            FiniteType::A(n) => (1..=(*n as u64 + 1)).product(),
            FiniteType::B(n) => (1u64 << n) * (1..=(*n as u64)).product::<u64>(),
            FiniteType::D4 => 192,
            FiniteType::F4 => 1152,
            FiniteType::H3 => 120,
            FiniteType::H4 => 14400,
            FiniteType::I2(m) => 2 * *m as u64,
        }
    }
}

impl std::fmt::Display for FiniteType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D4 => write!(f, "D4"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::H3 => write!(f, "H3"),
            FiniteType::H4 => write!(f, "H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A generator subset of finite type, with its decomposition and order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalSubset {
    pub subset: Vec<usize>,
    pub components: Vec<FiniteType>,
    pub order: u64,
}

fn is_bond(m: u32) -> bool {
    m >= 3 || m == 0
}

/// Classify one connected induced diagram against the finite-type catalog.
fn classify_connected(d: &CoxeterDiagram, nodes: &[usize]) -> Option<FiniteType> {
    let k = nodes.len();
    let lab = |i: usize, j: usize| d.order(nodes[i], nodes[j]);
    match k {
        1 => Some(FiniteType::A(1)),
        2 => match lab(0, 1) {
            0 => None, // infinite dihedral
            3 => Some(FiniteType::A(2)),
            4 => Some(FiniteType::B(2)),
            m => Some(FiniteType::I2(m)),
        },
        3 | 4 => {
            let degs: Vec<usize> = (0..k)
                .map(|i| (0..k).filter(|&j| j != i && is_bond(lab(i, j))).count())
                .collect();
            if k == 4 && degs.contains(&3) {
                // a genuine star (three leaves) is finite only when all
                // branch labels are 3; any other degree-3 shape is not finite
                let c = degs.iter().position(|&x| x == 3).unwrap();
                let star = (0..k).filter(|&i| i != c).all(|i| degs[i] == 1);
                let all3 = (0..k).filter(|&i| i != c).all(|i| lab(c, i) == 3);
                return if star && all3 {
                    Some(FiniteType::D4)
                } else {
                    None
                };
            }
            if degs.iter().any(|&x| x > 2) || degs.iter().filter(|&&x| x == 1).count() != 2 {
                return None; // a cycle
            }
            // walk the path from one endpoint
            let mut order: Vec<usize> = Vec::new();
            let mut cur = degs.iter().position(|&x| x == 1).unwrap();
            let mut prev = usize::MAX;
            for _ in 0..k {
                order.push(cur);
                let next = (0..k).find(|&j| j != cur && j != prev && is_bond(lab(cur, j)));
                prev = cur;
                match next {
                    Some(nx) => cur = nx,
                    None => break,
                }
            }
            if order.len() != k {
                return None;
            }
            let mut labels: Vec<u32> = order.windows(2).map(|w| lab(w[0], w[1])).collect();
            if labels.contains(&0) {
                return None;
            }
            if labels.first() > labels.last() {
                labels.reverse();
            }
            match (k, labels.as_slice()) {
                (3, [3, 3]) => Some(FiniteType::A(3)),
                (3, [3, 4]) => Some(FiniteType::B(3)),
                (3, [3, 5]) => Some(FiniteType::H3),
                (4, [3, 3, 3]) => Some(FiniteType::A(4)),
                (4, [3, 3, 4]) => Some(FiniteType::B(4)),
                (4, [3, 4, 3]) => Some(FiniteType::F4),
                (4, [3, 3, 5]) => Some(FiniteType::H4),
                _ => None,
            }
        }
        _ => None,
    }
}

fn connected_components(d: &CoxeterDiagram, subset: &[usize]) -> Vec<Vec<usize>> {
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; subset.len()];
    for s in 0..subset.len() {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(i) = stack.pop() {
            comp.push(subset[i]);
            for j in 0..subset.len() {
                if !seen[j] && is_bond(d.order(subset[i], subset[j])) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn classify_subset(d: &CoxeterDiagram, subset: &[usize]) -> Option<SphericalSubset> {
    let mut components = Vec::new();
    for comp in connected_components(d, subset) {
        components.push(classify_connected(d, &comp)?);
    }
    let order = components.iter().map(FiniteType::order).product();
    Some(SphericalSubset {
        subset: subset.to_vec(),
        components,
        order,
    })
}

/// All nonempty generator subsets whose parabolic subgroup is finite.
pub fn spherical_subsets(d: &CoxeterDiagram) -> Vec<SphericalSubset> {
    assert!(
        d.n <= 4,
        "diagrams with more than four generators are out of scope"
    );
    let mut out = Vec::new();
    for mask in 1u32..(1 << d.n) {
        let subset: Vec<usize> = (0..d.n).filter(|i| mask & (1 << i) != 0).collect();
        if let Some(s) = classify_subset(d, &subset) {
            out.push(s);
        }
    }
    out.sort_by_key(|s| (s.subset.len(), s.subset.clone()));
    out
}

/// Permutation realization of the finite Coxeter group on a spherical
/// subset: natural actions for the infinite families, coset enumeration of
/// the presentation otherwise; components act on disjoint point sets.
pub fn finite_coxeter_group(
    d: &CoxeterDiagram,
    subset: &[usize],
) -> Result<PermGroup, CoxeterError> {
    let s = classify_subset(d, subset).ok_or(CoxeterError::NotSpherical)?;
    if s.order > COSET_GUARD as u64 {
        return Err(EnumerationError::Overflow(COSET_GUARD).into());
    }
    let mut group: Option<PermGroup> = None;
    for comp in connected_components(d, subset) {
        let t = classify_connected(d, &comp).expect("component of a spherical subset");
        let g = match t {
            FiniteType::A(n) => crate::groups::symmetric_model(n as u32 + 1),
            FiniteType::B(n) => crate::groups::signed_perm_model(n as u32),
            FiniteType::D4 => crate::groups::even_signed_perm_model(4),
            FiniteType::I2(m) => crate::complex::synthetic::model_group(&CatalogType::Dihedral(m)),
            _ => {
                // H3 and F4 via coset enumeration of the sub-presentation
                let sub: Vec<Vec<u32>> = comp
                    .iter()
                    .map(|&i| comp.iter().map(|&j| d.order(i, j)).collect())
                    .collect();
                enumerate_regular(comp.len(), &coxeter_relators(&sub), COSET_GUARD)?
            }
        };
        group = Some(match group {
            None => g,
            Some(prev) => prev.direct_product(&g),
        });
    }
    Ok(group.expect("nonempty subset"))
}

/// The finite quotient chamber complex: cells are chains of nonempty
/// spherical subsets ordered by strict inclusion, the stabilizer of a chain
/// is the parabolic group of its smallest member, and the boundary is given
/// by chain deletion.
pub fn build_chamber_complex(d: &CoxeterDiagram) -> Result<StabilizedComplex, CoxeterError> {
    assert!(
        classify_subset(d, &(0..d.n).collect::<Vec<_>>()).is_none(),
        "the full generator set must not be spherical (the group must be infinite)"
    );
    let sphericals = spherical_subsets(d);
    let index: BTreeMap<Vec<usize>, usize> = sphericals
        .iter()
        .enumerate()
        .map(|(i, s)| (s.subset.clone(), i))
        .collect();
    let mut groups: Vec<Arc<PermGroup>> = Vec::new();
    let mut catalogs: Vec<CatalogType> = Vec::new();
    for s in &sphericals {
        let g = Arc::new(finite_coxeter_group(d, &s.subset)?);
        catalogs.push(identify_catalog_type(&g));
        groups.push(g);
    }
    let strictly_contains =
        |a: &[usize], b: &[usize]| a.len() > b.len() && b.iter().all(|x| a.contains(x));

    let mut cells: Vec<OrbitCell> = Vec::new();
    for i in 0..sphericals.len() {
        cells.push(OrbitCell {
            id: i,
            dim: 0,
            stabilizer: groups[i].clone(),
            catalog: catalogs[i].clone(),
            boundary: vec![],
        });
    }
    // edges: 2-chains (small < big), stabilized by the smaller subset
    let mut edge_id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for big in &sphericals {
        for small in &sphericals {
            if strictly_contains(&big.subset, &small.subset) {
                let (ib, is) = (index[&big.subset], index[&small.subset]);
                let id = cells.len();
                edge_id.insert((is, ib), id);
                cells.push(OrbitCell {
                    id,
                    dim: 1,
                    stabilizer: groups[is].clone(),
                    catalog: catalogs[is].clone(),
                    boundary: vec![(is, 1), (ib, 1)],
                });
            }
        }
    }
    // 2-cells: 3-chains, stabilized by the smallest subset
    for big in &sphericals {
        for mid in &sphericals {
            if !strictly_contains(&big.subset, &mid.subset) {
                continue;
            }
            for small in &sphericals {
                if !strictly_contains(&mid.subset, &small.subset) {
                    continue;
                }
                let (ib, im, is) = (index[&big.subset], index[&mid.subset], index[&small.subset]);
                let id = cells.len();
                cells.push(OrbitCell {
                    id,
                    dim: 2,
                    stabilizer: groups[is].clone(),
                    catalog: catalogs[is].clone(),
                    boundary: vec![
                        (edge_id[&(im, ib)], 1),
                        (edge_id[&(is, ib)], 1),
                        (edge_id[&(is, im)], 1),
                    ],
                });
            }
        }
    }
    Ok(StabilizedComplex::new(cells, Source::Coxeter)?)
}

/// `dim_F_ell H_q(D_n; F_ell)` for an odd prime ℓ.
pub fn dihedral_mod_l_homology(n: u32, ell: u64, q: u64) -> u32 {
    assert!(ell > 2 && n >= 2);
    let torsion_degree = q % 4 == 3 || q.is_multiple_of(4);
    u32::from(q == 0 || (torsion_degree && u64::from(n) % ell == 0))
}

/// The dihedral summands with ℓ-torsion of a triangle group `(p, q, r)`:
/// the multiset of indices `k` in `{p, q, r}` with ℓ dividing `k`.
pub fn triangle_group_homology(p: u32, q: u32, r: u32, ell: u64) -> Vec<u32> {
    assert!(ell > 2);
    let (pu, qu, ru) = (p as u64, q as u64, r as u64);
    assert!(
        pu * qu * ru >= qu * ru + pu * ru + pu * qu,
        "triangle group must be infinite"
    );
    let mut out: Vec<u32> = [p, q, r]
        .into_iter()
        .filter(|&k| u64::from(k) % ell == 0)
        .collect();
    out.sort_unstable();
    out
}

#[derive(Deserialize)]
struct CtEntry {
    id: usize,
    matrix: Vec<Vec<u32>>,
}

/// The 32 Coxeter tetrahedral diagrams bundled with the crate.
pub fn tetrahedral_diagrams() -> Vec<(usize, CoxeterDiagram)> {
    let raw = include_str!("../../data/ct_diagrams.json");
    let entries: Vec<CtEntry> = serde_json::from_str(raw).expect("valid bundled diagram file");
    entries
        .into_iter()
        .map(|e| {
            (
                e.id,
                CoxeterDiagram::new(e.matrix).expect("valid bundled matrix"),
            )
        })
        .collect()
}

pub fn tetrahedral_diagram(ct_id: usize) -> Result<CoxeterDiagram, CoxeterError> {
    tetrahedral_diagrams()
        .into_iter()
        .find(|(id, _)| *id == ct_id)
        .map(|(_, d)| d)
        .ok_or(CoxeterError::UnknownTetrahedralId(ct_id))
}

/// Run the torsion pipeline for one tetrahedral group: build the chamber
/// complex, extract the ℓ-torsion sub-complex, reduce, and report the
/// number of connected components together with the reduced graph.
pub fn tetrahedral_homology(ct_id: usize, ell: u64) -> Result<(usize, TorsionGraph), CoxeterError> {
    assert!(ell > 2, "only odd torsion primes are in scope");
    let d = tetrahedral_diagram(ct_id)?;
    let complex = build_chamber_complex(&d)?;
    let torsion = extract_torsion_subcomplex(&complex, ell);
    if torsion.dimension() > 1 {
        return Err(CoxeterError::UnsupportedPrime(ell));
    }
    let graph = reduce_torsion_subcomplex(&torsion, ell)?;
    Ok((graph.component_count(), graph))
}
