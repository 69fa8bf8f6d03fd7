//! Conjugacy-class counts for the Bianchi groups `PSL_2(O_{-m})`, the graphs
//! and Poincaré series they determine, cohomology-ring summands, and the
//! verification harness against the published evaluation tables.

mod asymptotics;
mod kraemer;
mod series;
mod tables;

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::complex::{ComponentType, TorsionGraph};
use crate::groups::CatalogType;
use crate::numtheory::NumTheoryError;

pub use asymptotics::{asymptotics_rows, covolume, rows_to_csv, AsymptoticsRow};
pub use kraemer::{apply_override, kraemer_counts, ClassCounts, Override};
pub use series::{p_a4_star, p_circle, p_d2_star, p_edge, Poly, RationalFunction, SeriesError};
pub use tables::{
    counts_with_overrides, expected_series, verify_against_paper_tables, Dataset, Row2, Row3,
    RowReport, Verdict, VerifyReport,
};

#[derive(Debug, Error)]
pub enum BianchiError {
    #[error(transparent)]
    NumTheory(NumTheoryError),
    #[error("counts are ambiguous; resolve or supply an override first")]
    AmbiguousCounts,
    #[error("the criteria eliminated every alternative for m={0} at ell={1}")]
    InconsistentCriteria(u64, u64),
    #[error("no surviving alternative matches the override at ell={0}")]
    OverrideMismatch(u64),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("a component multiset is required at 2-torsion")]
    MissingComponents,
    #[error("component type {0} has no published ring summand")]
    UnsupportedComponent(String),
    #[error("dataset unavailable: {0}")]
    DatasetMissing(String),
}

/// The 3-conjugacy-classes graph determined by unambiguous counts:
/// `lambda6 - lambda6_star` disjoint circles plus `lambda6_star` disjoint
/// edges with `D3` endpoints, all edges stabilized by `Z/3`.
pub fn conjugacy_classes_graph3(c: &ClassCounts) -> Result<TorsionGraph, BianchiError> {
    if c.is_ambiguous() {
        return Err(BianchiError::AmbiguousCounts);
    }
    let circles = c.lambda6 - c.lambda6_star;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut next = 0usize;
    for _ in 0..circles {
        let v = next;
        next += 1;
        vertices.push((v, CatalogType::Cyclic(3)));
        edges.push((next, CatalogType::Cyclic(3), [v, v]));
        next += 1;
    }
    for _ in 0..c.lambda6_star {
        let (a, b, e) = (next, next + 1, next + 2);
        next += 3;
        vertices.push((a, CatalogType::Dihedral(3)));
        vertices.push((b, CatalogType::Dihedral(3)));
        edges.push((e, CatalogType::Cyclic(3), [a, b]));
    }
    Ok(TorsionGraph {
        ell: 3,
        vertices,
        edges,
    })
}

/// The Poincaré series of the mod-ℓ homology in degrees above the virtual
/// cohomological dimension, from the conjugacy-class counts.
pub fn poincare_series(c: &ClassCounts, ell: u64) -> Result<RationalFunction, BianchiError> {
    if c.is_ambiguous() {
        return Err(BianchiError::AmbiguousCounts);
    }
    let rat = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let f = if ell == 2 {
        let lambda4 = c.lambda4 as i64;
        let mu2 = c.mu2 as i64;
        let mu_t = c.mu_t as i64;
        p_circle()
            .scale(&(BigRational::from_integer(lambda4.into()) - rat(3 * mu2 - 2 * mu_t, 2)))
            .add(&p_d2_star().scale(&BigRational::from_integer((mu2 - mu_t).into())))
            .add(&p_a4_star().scale(&BigRational::from_integer(mu_t.into())))
    } else {
        let lambda6 = c.lambda6 as i64;
        let mu3 = c.mu3 as i64;
        p_circle()
            .scale(&(BigRational::from_integer(lambda6.into()) - rat(mu3, 2)))
            .add(&p_edge().scale(&rat(mu3, 2)))
    };
    // the combination coefficients may be half-integers, but the homology
    // dimensions they encode must be nonnegative integers
    for (q, coeff) in f.expand(50)?.iter().enumerate() {
        if !coeff.is_integer() || coeff.is_negative() {
            return Err(SeriesError::NonIntegralSeries(q, coeff.to_string()).into());
        }
    }
    Ok(f)
}

/// Power-series coefficients for degrees `3..=q_max` (the degrees above the
/// virtual cohomological dimension).
pub fn expand_series(
    f: &RationalFunction,
    q_max: usize,
) -> Result<Vec<num_bigint::BigInt>, BianchiError> {
    let coeffs = f.expand(q_max)?;
    Ok(coeffs[3.min(coeffs.len())..]
        .iter()
        .map(|c| c.numer() / c.denom())
        .collect())
}

/// One restricted summand of the cohomology ring, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSummand {
    pub descriptor: RingDescriptor,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDescriptor {
    /// `Z[x2](sigma1)`, generators of additive order 3.
    Z3Circle,
    /// `Z[x4](x3)`, generators of additive order 3.
    Z3Edge,
    /// `F2[n1](m1)`.
    F2Circle,
    /// `F2[m3,u2,v3,w3] / (m3 v3, u2^3 + w3^2 + v3^2 + m3^2 + w3(v3 + m3))`.
    F2Edge,
    /// `F2[n1,m2,n3,m3] / (n1 n3, m2^3 + m3^2 + n3^2 + m3 n3 + n1 m2 m3)`.
    F2GraphTwo,
    /// `F2[n1,m1,m3] / (m3 (m3 + n1^2 m1 + n1 m1^2))`.
    F2GraphFive,
}

impl std::fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RingDescriptor::Z3Circle => "Z[x2](sigma1)",
            RingDescriptor::Z3Edge => "Z[x4](x3)",
            RingDescriptor::F2Circle => "F2[n1](m1)",
            RingDescriptor::F2Edge => "F2[m3,u2,v3,w3]/(m3 v3, u2^3+w3^2+v3^2+m3^2+w3(v3+m3))",
            RingDescriptor::F2GraphTwo => "F2[n1,m2,n3,m3]/(n1 n3, m2^3+m3^2+n3^2+m3 n3+n1 m2 m3)",
            RingDescriptor::F2GraphFive => "F2[n1,m1,m3]/(m3(m3+n1^2 m1+n1 m1^2))",
        };
        write!(f, "{s}")
    }
}

/// Ring summands above the virtual cohomological dimension.
///
/// At ℓ = 3 the counts determine them outright; at ℓ = 2 the component
/// multiset of the reduced 2-torsion graph must be supplied, since distinct
/// component multisets can share one count vector.
pub fn cohomology_ring(
    c: &ClassCounts,
    ell: u64,
    components: Option<&[ComponentType]>,
) -> Result<Vec<RingSummand>, BianchiError> {
    if c.is_ambiguous() {
        return Err(BianchiError::AmbiguousCounts);
    }
    if ell == 3 {
        let mut out = Vec::new();
        let circles = c.lambda6 - c.mu3 / 2;
        if circles > 0 {
            out.push(RingSummand {
                descriptor: RingDescriptor::Z3Circle,
                multiplicity: circles,
            });
        }
        if c.mu3 / 2 > 0 {
            out.push(RingSummand {
                descriptor: RingDescriptor::Z3Edge,
                multiplicity: c.mu3 / 2,
            });
        }
        return Ok(out);
    }
    let comps = components.ok_or(BianchiError::MissingComponents)?;
    let mut counts: std::collections::BTreeMap<&ComponentType, u64> = Default::default();
    for t in comps {
        *counts.entry(t).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    for (t, mult) in counts {
        let descriptor = match t {
            ComponentType::Circle => RingDescriptor::F2Circle,
            ComponentType::Edge => RingDescriptor::F2Edge,
            ComponentType::GraphTwo => RingDescriptor::F2GraphTwo,
            ComponentType::GraphFive => RingDescriptor::F2GraphFive,
            other => return Err(BianchiError::UnsupportedComponent(other.to_string())),
        };
        out.push(RingSummand {
            descriptor,
            multiplicity: mult,
        });
    }
    Ok(out)
}
