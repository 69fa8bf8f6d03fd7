//! Stabilized orbit cell complexes, ℓ-torsion sub-complexes, and the
//! reduction engine.
//!
//! A `StabilizedComplex` records one cell per orbit together with the
//! isomorphism type (and a permutation model) of its stabilizer. Extraction
//! keeps the cells whose stabilizer order is divisible by ℓ; reduction then
//! repeatedly cuts terminal edges and merges edge pairs across degree-two
//! vertices, each step guarded by Condition `B'` on the stabilizer pair, and
//! returns the resulting labeled graph.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{check_condition_bprime, CatalogType, PermGroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("torsion sub-complex has cells of dimension {0} > 1")]
    DimensionTooHigh(usize),
    #[error("reduction did not reach a fixed point within the iteration cap")]
    NonConvergent,
    #[error("cell {0} has a malformed boundary")]
    MalformedBoundary(usize),
}

/// One cell orbit with its stabilizer.
#[derive(Clone)]
pub struct OrbitCell {
    pub id: usize,
    pub dim: usize,
    pub stabilizer: Arc<PermGroup>,
    pub catalog: CatalogType,
    /// Pairs `(cell id, incidence count)`; boundary cells have dimension
    /// exactly one less.
    pub boundary: Vec<(usize, u32)>,
}

/// Provenance tag for a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Coxeter,
    Synthetic,
}

#[derive(Clone)]
pub struct StabilizedComplex {
    pub cells: Vec<OrbitCell>,
    pub source: Source,
}

impl StabilizedComplex {
    pub fn new(cells: Vec<OrbitCell>, source: Source) -> Result<Self, ComplexError> {
        let by_id: BTreeMap<usize, usize> = cells.iter().map(|c| (c.id, c.dim)).collect();
        for c in &cells {
            for &(b, mult) in &c.boundary {
                if mult == 0 || by_id.get(&b) != Some(&(c.dim.wrapping_sub(1))) {
                    return Err(ComplexError::MalformedBoundary(c.id));
                }
            }
        }
        Ok(StabilizedComplex { cells, source })
    }

    pub fn dimension(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn cell(&self, id: usize) -> Option<&OrbitCell> {
        self.cells.iter().find(|c| c.id == id)
    }
}

/// Extract the sub-complex of cells whose stabilizer contains ℓ-torsion,
/// i.e. whose stabilizer order is divisible by ℓ.
pub fn extract_torsion_subcomplex(x: &StabilizedComplex, ell: u64) -> StabilizedComplex {
    let keep: BTreeSet<usize> = x
        .cells
        .iter()
        .filter(|c| c.stabilizer.order() % ell == 0)
        .map(|c| c.id)
        .collect();
    let cells = x
        .cells
        .iter()
        .filter(|c| keep.contains(&c.id))
        .map(|c| {
            let mut c = c.clone();
            c.boundary.retain(|(b, _)| keep.contains(b));
            c
        })
        .collect();
    StabilizedComplex {
        cells,
        source: x.source,
    }
}

/// A labeled graph: the quotient of a one-dimensional torsion sub-complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionGraph {
    pub ell: u64,
    /// `(id, catalog type)` per vertex.
    pub vertices: Vec<(usize, CatalogType)>,
    /// `(id, catalog type, endpoint vertex ids)`; a loop repeats its endpoint.
    pub edges: Vec<(usize, CatalogType, [usize; 2])>,
}

/// Homeomorphism type of a connected component of a reduced torsion graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentType {
    /// A single closed cycle (in reduced form: one vertex with one loop).
    Circle,
    /// A single edge with two distinct endpoints of degree one.
    Edge,
    /// One degree-one vertex of type `A4` joined to a degree-three vertex of
    /// type `D2` that also carries a loop.
    GraphTwo,
    /// Two degree-three vertices of type `D2` joined by three edges.
    GraphFive,
    Other(String),
}

impl std::fmt::Display for ComponentType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentType::Circle => write!(f, "circle"),
            ComponentType::Edge => write!(f, "edge"),
            ComponentType::GraphTwo => write!(f, "graph2"),
            ComponentType::GraphFive => write!(f, "graph5"),
            ComponentType::Other(d) => write!(f, "other({d})"),
        }
    }
}

impl TorsionGraph {
    pub fn component_ids(&self) -> Vec<Vec<usize>> {
        // union-find over vertex ids
        let mut parent: BTreeMap<usize, usize> =
            self.vertices.iter().map(|&(v, _)| (v, v)).collect();
        fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let p = parent[&x];
            if p == x {
                return x;
            }
            let r = find(parent, p);
            parent.insert(x, r);
            r
        }
        for &(_, _, [a, b]) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent.insert(ra, rb);
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(v, _) in &self.vertices {
            let r = find(&mut parent, v);
            comps.entry(r).or_default().push(v);
        }
        comps.into_values().collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_ids().len()
    }

    /// Sorted multiset of vertex labels, e.g. for comparing against tables.
    pub fn vertex_label_multiset(&self) -> Vec<String> {
        let mut v: Vec<String> = self.vertices.iter().map(|(_, t)| t.to_string()).collect();
        v.sort();
        v
    }

    fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(_, _, [a, b])| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Serialize with stable field names and dense ids from 0.
    pub fn to_json(&self) -> serde_json::Value {
        let vmap: BTreeMap<usize, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &(v, _))| (v, i))
            .collect();
        serde_json::json!({
            "ell": self.ell,
            "vertices": self.vertices.iter().enumerate().map(|(i, (_, t))| {
                serde_json::json!({"id": i, "type": t.to_string()})
            }).collect::<Vec<_>>(),
            "edges": self.edges.iter().enumerate().map(|(i, (_, t, [a, b]))| {
                serde_json::json!({"id": i, "type": t.to_string(), "ends": [vmap[a], vmap[b]]})
            }).collect::<Vec<_>>(),
        })
    }
}

/// Classify each connected component of a reduced graph.
pub fn classify_components(g: &TorsionGraph) -> Vec<ComponentType> {
    let labels: BTreeMap<usize, &CatalogType> = g.vertices.iter().map(|(v, t)| (*v, t)).collect();
    let mut out = Vec::new();
    for comp in g.component_ids() {
        let vs: BTreeSet<usize> = comp.iter().copied().collect();
        let edges: Vec<&(usize, CatalogType, [usize; 2])> = g
            .edges
            .iter()
            .filter(|(_, _, [a, _])| vs.contains(a))
            .collect();
        let loops = edges.iter().filter(|(_, _, [a, b])| a == b).count();
        let degrees: Vec<usize> = comp.iter().map(|&v| g.degree(v)).collect();
        let nv = comp.len();
        let ne = edges.len();
        let t = if ne >= 1 && nv == ne && degrees.iter().all(|&d| d == 2) {
            ComponentType::Circle
        } else if nv == 2 && ne == 1 && loops == 0 {
            ComponentType::Edge
        } else if nv == 2 && ne == 2 && loops == 1 {
            let a4s = comp
                .iter()
                .filter(|v| g.degree(**v) == 1 && labels[v] == &CatalogType::A4)
                .count();
            let d2s = comp
                .iter()
                .filter(|v| g.degree(**v) == 3 && labels[v] == &CatalogType::KleinFour)
                .count();
            if a4s == 1 && d2s == 1 {
                ComponentType::GraphTwo
            } else {
                ComponentType::Other(format!("{nv} vertices, {ne} edges, {loops} loops"))
            }
        } else if nv == 2
            && ne == 3
            && loops == 0
            && degrees.iter().all(|&d| d == 3)
            && comp.iter().all(|v| labels[v] == &CatalogType::KleinFour)
        {
            ComponentType::GraphFive
        } else {
            ComponentType::Other(format!("{nv} vertices, {ne} edges, {loops} loops"))
        };
        out.push(t);
    }
    out.sort();
    out
}

/// The edge-orbit degree table of the refined cellular complex for Bianchi
/// groups: expected number of adjacent `Z/ℓ`-stabilized edge orbits per
/// vertex stabilizer type, for ℓ = 2 and 3.
fn bianchi_expected_degree(t: &CatalogType, ell: u64) -> Option<usize> {
    let idx = match t {
        CatalogType::Trivial => 0,
        CatalogType::Cyclic(2) => 1,
        CatalogType::Cyclic(3) => 2,
        CatalogType::KleinFour => 3,
        CatalogType::Dihedral(3) => 4,
        CatalogType::A4 => 5,
        _ => return None,
    };
    let table: [[usize; 6]; 2] = [[0, 2, 0, 3, 2, 1], [0, 0, 2, 0, 1, 2]];
    Some(table[if ell == 2 { 0 } else { 1 }][idx])
}

/// Check every vertex of a Bianchi-provenance graph against the degree table.
/// Returns a description of each violation; empty means consistent.
pub fn validate_bianchi_degrees(g: &TorsionGraph, ell: u64) -> Vec<String> {
    let mut out = Vec::new();
    for &(v, ref t) in &g.vertices {
        let n: usize = g
            .edges
            .iter()
            .filter(|(_, et, _)| matches!(et, CatalogType::Cyclic(k) if u64::from(*k) == ell))
            .map(|&(_, _, [a, b])| usize::from(a == v) + usize::from(b == v))
            .sum();
        match bianchi_expected_degree(t, ell) {
            Some(expected) if expected == n => {}
            Some(expected) => out.push(format!(
                "vertex {v} of type {t}: degree {n}, expected {expected}"
            )),
            None => out.push(format!("vertex {v} has non-Bianchi stabilizer type {t}")),
        }
    }
    out
}

struct Reducer {
    ell: u64,
    vertices: BTreeMap<usize, OrbitCell>,
    edges: BTreeMap<usize, (OrbitCell, [usize; 2])>,
}

impl Reducer {
    fn degree(&self, v: usize) -> usize {
        self.edges
            .values()
            .map(|(_, [a, b])| usize::from(*a == v) + usize::from(*b == v))
            .sum()
    }

    fn incident(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|(_, (_, [a, b]))| *a == v || *b == v)
            .map(|(&id, _)| id)
            .collect()
    }

    /// Cut one terminal edge if some terminal vertex satisfies `B'` against
    /// its unique edge. Among valid candidates the vertex with the largest
    /// stabilizer goes first, so each component retains its minimal
    /// stabilizer.
    fn try_cut(&mut self) -> bool {
        let mut candidates: Vec<(u64, usize)> = Vec::new();
        for (&v, cell) in &self.vertices {
            if self.degree(v) != 1 {
                continue;
            }
            let e = self.incident(v)[0];
            let (edge_cell, _) = &self.edges[&e];
            if check_condition_bprime(&cell.stabilizer, &edge_cell.stabilizer, self.ell) {
                candidates.push((cell.stabilizer.order(), v));
            }
        }
        // largest stabilizer first; ties by ascending id
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        if let Some(&(_, v)) = candidates.first() {
            let e = self.incident(v)[0];
            self.edges.remove(&e);
            self.vertices.remove(&v);
            true
        } else {
            false
        }
    }

    /// Merge the two edges across one degree-two vertex, scanning vertices in
    /// ascending id. The two edge orbits must be distinct, of a common
    /// catalog type, and satisfy `B'` against the vertex stabilizer; the
    /// merged edge keeps the lower id.
    fn try_merge(&mut self) -> bool {
        let vertex_ids: Vec<usize> = self.vertices.keys().copied().collect();
        for v in vertex_ids {
            if self.degree(v) != 2 {
                continue;
            }
            let inc = self.incident(v);
            if inc.len() != 2 {
                // both edge-ends belong to one edge orbit (a loop): never merge
                continue;
            }
            let (e1, e2) = (inc[0].min(inc[1]), inc[0].max(inc[1]));
            let (c1, ends1) = self.edges[&e1].clone();
            let (c2, ends2) = self.edges[&e2].clone();
            if c1.catalog != c2.catalog {
                continue;
            }
            if !check_condition_bprime(&self.vertices[&v].stabilizer, &c1.stabilizer, self.ell) {
                continue;
            }
            let other1 = if ends1[0] == v { ends1[1] } else { ends1[0] };
            let other2 = if ends2[0] == v { ends2[1] } else { ends2[0] };
            self.edges.remove(&e2);
            self.edges.insert(e1, (c1, [other1, other2]));
            self.vertices.remove(&v);
            return true;
        }
        false
    }
}

/// Reduce a one-dimensional ℓ-torsion sub-complex to its reduced graph.
pub fn reduce_torsion_subcomplex(
    x: &StabilizedComplex,
    ell: u64,
) -> Result<TorsionGraph, ComplexError> {
    if x.dimension() > 1 {
        return Err(ComplexError::DimensionTooHigh(x.dimension()));
    }
    let vertices: BTreeMap<usize, OrbitCell> = x
        .cells
        .iter()
        .filter(|c| c.dim == 0)
        .map(|c| (c.id, c.clone()))
        .collect();
    let mut edges: BTreeMap<usize, (OrbitCell, [usize; 2])> = BTreeMap::new();
    for c in x.cells.iter().filter(|c| c.dim == 1) {
        let mut ends: Vec<usize> = Vec::new();
        for &(b, mult) in &c.boundary {
            for _ in 0..mult {
                ends.push(b);
            }
        }
        let pair = match ends.len() {
            1 => [ends[0], ends[0]],
            2 => [ends[0], ends[1]],
            _ => return Err(ComplexError::MalformedBoundary(c.id)),
        };
        edges.insert(c.id, (c.clone(), pair));
    }
    let mut r = Reducer {
        ell,
        vertices,
        edges,
    };
    let cap = 2 * x.cells.len() + 2;
    let mut steps = 0;
    while r.try_cut() || r.try_merge() {
        steps += 1;
        if steps > cap {
            return Err(ComplexError::NonConvergent);
        }
    }
    Ok(TorsionGraph {
        ell,
        vertices: r
            .vertices
            .iter()
            .map(|(&v, c)| (v, c.catalog.clone()))
            .collect(),
        edges: r
            .edges
            .iter()
            .map(|(&e, (c, ends))| (e, c.catalog.clone(), *ends))
            .collect(),
    })
}

/// Complexes built from catalog labels alone, backed by model permutation
/// groups; used by tests and by synthetic CLI inputs.
pub mod synthetic {
    use super::*;
    use crate::groups::{group_from_generators, Perm};

    /// A permutation model of the given catalog type.
    pub fn model_group(t: &CatalogType) -> PermGroup {
        match t {
            CatalogType::Trivial => PermGroup::trivial(1),
            CatalogType::Cyclic(n) => {
                let g = Perm::from_cycles(*n as usize, &[(0..*n as u16).collect()]);
                group_from_generators(*n as usize, vec![g]).unwrap()
            }
            CatalogType::KleinFour => group_from_generators(
                4,
                vec![
                    Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]),
                    Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]),
                ],
            )
            .unwrap(),
            CatalogType::Dihedral(n) => {
                let n16 = *n as u16;
                let s1 = Perm((0..n16).map(|i| (n16 - i) % n16).collect());
                let s2 = Perm((0..n16).map(|i| (2 * n16 - 1 - i) % n16).collect());
                group_from_generators(*n as usize, vec![s1, s2]).unwrap()
            }
            CatalogType::A4 => group_from_generators(
                4,
                vec![
                    Perm::from_cycles(4, &[vec![0, 1, 2]]),
                    Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]),
                ],
            )
            .unwrap(),
            CatalogType::S4 => crate::groups::symmetric_model(4),
            CatalogType::S5 => crate::groups::symmetric_model(5),
            CatalogType::DirectProduct(a, b) => model_group(a).direct_product(&model_group(b)),
            CatalogType::SemidirectElem2n(3, t) if **t == CatalogType::Dihedral(3) => {
                crate::groups::signed_perm_model(3)
            }
            CatalogType::SemidirectElem2n(3, t) if **t == CatalogType::S4 => {
                crate::groups::even_signed_perm_model(4)
            }
            CatalogType::SemidirectElem2n(4, t) if **t == CatalogType::S4 => {
                crate::groups::signed_perm_model(4)
            }
            other => panic!("no synthetic model for {other}"),
        }
    }

    /// Build a graph complex from labels: `vertices[i]` is the label of
    /// vertex `i`; edges are `(label, endpoint, endpoint)`.
    pub fn graph_complex(
        vertices: &[CatalogType],
        edges: &[(CatalogType, usize, usize)],
    ) -> StabilizedComplex {
        let mut cells = Vec::new();
        for (i, t) in vertices.iter().enumerate() {
            cells.push(OrbitCell {
                id: i,
                dim: 0,
                stabilizer: Arc::new(model_group(t)),
                catalog: t.clone(),
                boundary: vec![],
            });
        }
        for (k, (t, a, b)) in edges.iter().enumerate() {
            let boundary = if a == b {
                vec![(*a, 2)]
            } else {
                vec![(*a, 1), (*b, 1)]
            };
            cells.push(OrbitCell {
                id: vertices.len() + k,
                dim: 1,
                stabilizer: Arc::new(model_group(t)),
                catalog: t.clone(),
                boundary,
            });
        }
        StabilizedComplex::new(cells, Source::Synthetic).unwrap()
    }
}
