//! Dynamics inclusion, capacity for dynamical equivalence, and rate witnesses.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cone::{relint_contained, relint_intersect, relint_member, ConeWitness, Containment, Intersection};
use crate::egraph::{EGraph, RateAssignment};
use crate::error::{Error, Result};
use crate::massaction::VectorField;
use crate::rational::{RationalVector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    /// A source of the smaller network is not a source of the larger one.
    SourceNotCovered,
    /// At some source, a relative-interior point of the smaller cone lies
    /// outside the relative interior of the larger cone.
    RelIntNotContained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceCheck {
    pub source: RationalVector,
    pub containment: Containment,
}

/// Outcome of `G2 ⊑ G1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub holds: bool,
    pub failing_source: Option<RationalVector>,
    pub failing_reason: Option<FailureReason>,
    /// One check per source of `G1`, up to and including the first failure.
    pub checks: Vec<SourceCheck>,
}

impl InclusionReport {
    /// Rechecks every recorded per-source certificate.
    pub fn recheck(&self, g2: &EGraph, g1: &EGraph) -> bool {
        let certs = self.checks.iter().all(|c| {
            c.containment.recheck(&g2.cone_generators_at(&c.source), &g1.cone_generators_at(&c.source))
        });
        let verdict = match (self.failing_reason, &self.failing_source) {
            (None, None) => self.holds && self.checks.iter().all(|c| c.containment.holds),
            (Some(FailureReason::SourceNotCovered), Some(s)) => !self.holds && g2.is_source(s) && !g1.is_source(s),
            (Some(FailureReason::RelIntNotContained), Some(s)) => {
                !self.holds && self.checks.last().is_some_and(|c| &c.source == s && !c.containment.holds)
            }
            _ => false,
        };
        certs && verdict
    }
}

fn check_same_dim(a: &EGraph, b: &EGraph) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

/// Decides `G2 ⊑ G1`: every field generated by `G2` is generated by `G1`.
pub fn dynamics_included(g2: &EGraph, g1: &EGraph) -> Result<InclusionReport> {
    check_same_dim(g2, g1)?;
    let sc1 = g1.sources();
    if let Some(s) = g2.sources().into_iter().find(|s| !sc1.contains(s)) {
        return Ok(InclusionReport {
            holds: false,
            failing_source: Some(s),
            failing_reason: Some(FailureReason::SourceNotCovered),
            checks: vec![],
        });
    }
    let mut checks = Vec::with_capacity(sc1.len());
    for s in sc1 {
        let containment = relint_contained(&g2.cone_generators_at(&s), &g1.cone_generators_at(&s), g1.dim())?;
        let failed = !containment.holds;
        checks.push(SourceCheck { source: s.clone(), containment });
        if failed {
            return Ok(InclusionReport {
                holds: false,
                failing_source: Some(s),
                failing_reason: Some(FailureReason::RelIntNotContained),
                checks,
            });
        }
    }
    Ok(InclusionReport { holds: true, failing_source: None, failing_reason: None, checks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedPoint {
    pub source: RationalVector,
    pub intersection: Intersection,
}

/// Outcome of `G1 ⊓ G2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub holds: bool,
    pub failing_source: Option<RationalVector>,
    pub points: Vec<SharedPoint>,
    /// A field generated by both networks, when one exists.
    pub shared_field: Option<VectorField>,
}

/// Decides whether some field is generated by both networks and builds one.
pub fn capacity_for_equivalence(g1: &EGraph, g2: &EGraph) -> Result<CapacityReport> {
    check_same_dim(g1, g2)?;
    let mut all: BTreeSet<RationalVector> = g1.sources().into_iter().collect();
    all.extend(g2.sources());
    let mut points = Vec::with_capacity(all.len());
    for s in all {
        match relint_intersect(&g1.cone_generators_at(&s), &g2.cone_generators_at(&s), g1.dim())? {
            Some(intersection) => points.push(SharedPoint { source: s, intersection }),
            None => {
                return Ok(CapacityReport { holds: false, failing_source: Some(s), points, shared_field: None });
            }
        }
    }
    let field =
        VectorField::from_terms(g1.dim(), points.iter().map(|p| (p.source.clone(), p.intersection.point.clone())))?;
    Ok(CapacityReport { holds: true, failing_source: None, points, shared_field: Some(field) })
}

/// Positive rates with which `g` generates exactly `f`.
pub fn find_rate_witness(g: &EGraph, f: &VectorField) -> Result<RateAssignment> {
    if g.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: f.dim() });
    }
    if let Some(e) = f.exponents().into_iter().find(|e| !g.is_source(e)) {
        return Err(Error::ExponentNotASource(e));
    }
    let mut rates: Vec<Option<Q>> = vec![None; g.num_edges()];
    for s in g.sources() {
        let edges = g.edges_from(&s);
        let gens: Vec<RationalVector> = edges.iter().map(|&e| g.reaction_vector(e)).collect();
        let decision = relint_member(&f.coefficient(&s), &gens)?;
        match decision.witness {
            ConeWitness::Coefficients { lambdas } if decision.holds => {
                for (e, k) in edges.into_iter().zip(lambdas) {
                    rates[e] = Some(k);
                }
            }
            _ => return Err(Error::NoPositiveSolution(s)),
        }
    }
    RateAssignment::new(rates.into_iter().map(|k| k.expect("every edge has a source")).collect())
}
