//! Classifications that quantify over directions, plus the full report.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::enumerate_sign_cells;
use crate::cone::{on_relative_hull_boundary, relint_member, ConeDecision};
use crate::egraph::EGraph;
use crate::error::{Error, Result};
use crate::rational::{RationalVector, Q};

/// A direction `w` and an edge `e_i` with `w . v(e_i) < 0` that no edge counters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub w: RationalVector,
    pub edge: usize,
}

impl Violation {
    /// Re-evaluates the definition at `w` for this edge.
    pub fn recheck(&self, g: &EGraph, strong: bool) -> bool {
        self.w.dim() == g.dim() && self.edge < g.num_edges() && violates(g, &self.w, self.edge, strong)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndotacticDecision {
    pub holds: bool,
    pub violation: Option<Violation>,
}

/// Does edge `i` violate the (strongly) endotactic condition at `w`?
fn violates(g: &EGraph, w: &RationalVector, i: usize, strong: bool) -> bool {
    if !w.dot(&g.reaction_vector(i)).is_negative() {
        return false;
    }
    let level_i = w.dot(g.source(i));
    let min_level: Option<Q> = strong.then(|| g.sources().iter().map(|s| w.dot(s)).min().expect("sources exist"));
    let countered = (0..g.num_edges()).any(|j| {
        let level_j = w.dot(g.source(j));
        level_j < level_i
            && w.dot(&g.reaction_vector(j)).is_positive()
            && min_level.as_ref().map_or(true, |m| level_j == *m)
    });
    !countered
}

/// The first violating edge at direction `w`, if any.
pub fn violation_at(g: &EGraph, w: &RationalVector, strong: bool) -> Option<usize> {
    (0..g.num_edges()).find(|&i| violates(g, w, i, strong))
}

/// Reaction vectors together with all differences of distinct sources.
fn critical_directions(g: &EGraph) -> Vec<RationalVector> {
    let mut dirs = g.reaction_vectors();
    let sources = g.sources();
    for a in 0..sources.len() {
        for b in a + 1..sources.len() {
            dirs.push(&sources[a] - &sources[b]);
        }
    }
    dirs
}

fn decide(g: &EGraph, strong: bool) -> EndotacticDecision {
    for cell in enumerate_sign_cells(&critical_directions(g), g.dim()) {
        if let Some(edge) = violation_at(g, &cell.witness, strong) {
            return EndotacticDecision { holds: false, violation: Some(Violation { w: cell.witness, edge }) };
        }
    }
    EndotacticDecision { holds: true, violation: None }
}

/// Is there a strictly positive combination of the reaction vectors equal to zero?
pub fn is_consistent(g: &EGraph) -> ConeDecision {
    relint_member(&RationalVector::zeros(g.dim()), &g.reaction_vectors()).expect("dimensions agree")
}

pub fn is_endotactic(g: &EGraph) -> EndotacticDecision {
    decide(g, false)
}

pub fn is_strongly_endotactic(g: &EGraph) -> EndotacticDecision {
    decide(g, true)
}

/// Reactions whose source lies on the relative boundary of the source hull.
pub fn extremal_edges(g: &EGraph) -> Vec<usize> {
    let sources = g.sources();
    let boundary: Vec<RationalVector> = sources
        .iter()
        .filter(|s| on_relative_hull_boundary(s, &sources).expect("source is a member"))
        .cloned()
        .collect();
    (0..g.num_edges()).filter(|&e| boundary.contains(g.source(e))).collect()
}

/// The extremal subnetwork `(EV_G, EE_G)`.
pub fn extremal_subnetwork(g: &EGraph) -> Result<EGraph> {
    let keep = extremal_edges(g);
    if keep.is_empty() {
        return Err(Error::EmptyExtremalSet);
    }
    g.restrict_to_edges(&keep)
}

pub fn is_extremally_weakly_reversible(g: &EGraph) -> bool {
    extremal_subnetwork(g).map(|s| s.is_weakly_reversible()).unwrap_or(false)
}

/// Quadrant-then-cross-product angle order for nonzero planar vectors.
fn angle_cmp(a: &RationalVector, b: &RationalVector) -> Ordering {
    let half = |v: &RationalVector| {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Planar sweep: tests every normal of a critical direction and one direction
/// strictly inside each angular gap between consecutive normals.
pub fn endotactic_2d_sweep_oracle(g: &EGraph) -> Result<bool> {
    if g.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, found: g.dim() });
    }
    let mut normals: Vec<RationalVector> = Vec::new();
    for d in critical_directions(g) {
        if d.is_zero() {
            continue;
        }
        let n = RationalVector::new(vec![-d[1].clone(), d[0].clone()]).primitive();
        normals.push(-n.clone());
        normals.push(n);
    }
    normals.sort_by(angle_cmp);
    normals.dedup_by(|a, b| angle_cmp(a, b) == Ordering::Equal);
    let mut probes = normals.clone();
    for i in 0..normals.len() {
        let a = &normals[i];
        let b = &normals[(i + 1) % normals.len()];
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        if cross.is_positive() {
            probes.push(a + b);
        } else {
            // Gap of exactly half a turn: rotate a by a quarter turn.
            probes.push(RationalVector::new(vec![-a[1].clone(), a[0].clone()]));
        }
    }
    Ok(probes.iter().all(|w| violation_at(g, w, false).is_none()))
}

/// Every flag with a witness for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub reversible: bool,
    pub weakly_reversible: bool,
    pub source_only: bool,
    pub consistent: bool,
    pub endotactic: bool,
    pub strongly_endotactic: bool,
    pub extremally_weakly_reversible: bool,
    /// An edge without its reverse.
    pub unreversed_edge: Option<usize>,
    /// An edge on no directed cycle.
    pub edge_off_cycles: Option<usize>,
    /// A product complex that is not a source.
    pub non_source_target: Option<RationalVector>,
    pub consistency: ConeDecision,
    pub endotactic_violation: Option<Violation>,
    pub strong_violation: Option<Violation>,
    /// Indices of the reactions with extremal sources.
    pub extremal_edges: Vec<usize>,
}

pub fn classify(g: &EGraph) -> ClassificationReport {
    let unreversed_edge = (0..g.num_edges()).find(|&e| !g.has_edge(g.target(e), g.source(e)));
    let edge_off_cycles = g.edge_off_cycles();
    let non_source_target = g.non_source_target();
    let consistency = is_consistent(g);
    let endo = is_endotactic(g);
    // Strong implies plain endotacticity, so a plain violation is already a strong one.
    let strong = match &endo.violation {
        Some(v) => EndotacticDecision { holds: false, violation: Some(v.clone()) },
        None => is_strongly_endotactic(g),
    };
    let extremal = extremal_edges(g);
    let ewr = !extremal.is_empty() && g.restrict_to_edges(&extremal).map(|s| s.is_weakly_reversible()).unwrap_or(false);
    ClassificationReport {
        reversible: unreversed_edge.is_none(),
        weakly_reversible: edge_off_cycles.is_none(),
        source_only: non_source_target.is_none(),
        consistent: consistency.holds,
        endotactic: endo.holds,
        strongly_endotactic: strong.holds,
        extremally_weakly_reversible: ewr,
        unreversed_edge,
        edge_off_cycles,
        non_source_target,
        consistency,
        endotactic_violation: endo.violation,
        strong_violation: strong.violation,
        extremal_edges: extremal,
    }
}

impl ClassificationReport {
    /// Checks every witness in the report against `g` without trusting the classifier.
    pub fn recheck(&self, g: &EGraph) -> bool {
        let zero = RationalVector::zeros(g.dim());
        let unreversed_ok = match self.unreversed_edge {
            Some(e) => !self.reversible && e < g.num_edges() && !g.has_edge(g.target(e), g.source(e)),
            None => self.reversible,
        };
        let violation_ok = |flag: bool, v: &Option<Violation>, strong: bool| match v {
            Some(v) => !flag && v.recheck(g, strong),
            None => flag,
        };
        unreversed_ok
            && self.edge_off_cycles.is_some() != self.weakly_reversible
            && match &self.non_source_target {
                Some(t) => !self.source_only && !g.is_source(t) && g.node_index(t).is_some(),
                None => self.source_only,
            }
            && self.consistency.holds == self.consistent
            && self.consistency.recheck_relint(&zero, &g.reaction_vectors())
            && violation_ok(self.endotactic, &self.endotactic_violation, false)
            && violation_ok(self.strongly_endotactic, &self.strong_violation, true)
    }
}
