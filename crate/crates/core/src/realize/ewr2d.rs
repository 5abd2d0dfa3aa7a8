use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::classify::is_strongly_endotactic;
use crate::cone::{cone_member, on_relative_hull_boundary, relint_contained};
use crate::egraph::EGraph;
use crate::equivalence::dynamics_included;
use crate::error::{Error, Result};
use crate::hull2d::{hull_faces, HullFace};
use crate::massaction::stoichiometric_subspace;
use crate::rational::RationalVector;

use super::{check, Provenance, RealizationResult};

type Label = RationalVector;

/// Positively parallel nonzero vectors.
fn same_ray(a: &RationalVector, b: &RationalVector) -> bool {
    !a.is_zero() && a.primitive() == b.primitive()
}

/// A weakly reversible, strongly endotactic network whose dynamics contain
/// those of the planar strongly endotactic network `g`.
///
/// Requires a two-dimensional stoichiometric subspace and every source on the
/// boundary of the source hull.
pub fn ewr_realize_2d(g: &EGraph) -> Result<RealizationResult> {
    if g.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, found: g.dim() });
    }
    let rank = stoichiometric_subspace(g).len();
    if rank != 2 {
        return Err(Error::WrongStoichiometricDimension { expected: 2, found: rank });
    }
    let sources = g.sources();
    for s in &sources {
        if !on_relative_hull_boundary(s, &sources)? {
            return Err(Error::InteriorSourcePresent(s.clone()));
        }
    }
    if !is_strongly_endotactic(g).holds {
        return Err(Error::NotStronglyEndotactic);
    }

    // Stage 1: both directions between every pair of sources sharing a hull side.
    let faces = hull_faces(&sources);
    let mut stage1: BTreeSet<(Label, Label)> = BTreeSet::new();
    for f in &faces {
        for a in &f.members {
            for b in &f.members {
                if a != b {
                    stage1.insert((a.clone(), b.clone()));
                }
            }
        }
    }
    let out_of = |edges: &BTreeSet<(Label, Label)>, s: &Label| -> Vec<Label> {
        edges.iter().filter(|(a, _)| a == s).map(|(_, b)| b.clone()).collect()
    };

    // Stage 2: adjust each source so its cone contains the original one in relative interior.
    let mut stage2: Vec<(Label, Label)> = Vec::new();
    for s in &sources {
        let targets1 = out_of(&stage1, s);
        let gens1: Vec<RationalVector> = targets1.iter().map(|t| t - s).collect();
        let gens: Vec<RationalVector> = g.cone_generators_at(s);
        let own: Vec<&HullFace> = faces.iter().filter(|f| f.members.contains(s)).collect();
        let corner = faces.iter().any(|f| &f.start == s || &f.end == s);
        if relint_contained(&gens, &gens1, 2)?.holds {
            stage2.extend(targets1.into_iter().map(|t| (s.clone(), t)));
        } else if !corner && own.len() == 1 {
            let face = own[0];
            let off = sources
                .iter()
                .filter(|x| !face.members.contains(x))
                .min()
                .ok_or_else(|| Error::PostconditionFailed("no source off the hull side".into()))?;
            stage2.extend(targets1.into_iter().map(|t| (s.clone(), t)));
            stage2.push((s.clone(), off.clone()));
        } else {
            let side = own
                .iter()
                .find(|f| {
                    let other = if &f.start == s { &f.end } else { &f.start };
                    let dir = other - s;
                    gens.iter().all(|v| same_ray(&dir, v))
                })
                .ok_or_else(|| Error::PostconditionFailed(format!("source {s} fits no construction case")))?;
            stage2.extend(side.members.iter().filter(|t| *t != s).map(|t| (s.clone(), t.clone())));
        }
    }

    // Stage 3: close every edge into a cycle with shortest paths through edges
    // that stay inside the stage-2 cone of their source.
    let mut cone2: HashMap<Label, Vec<RationalVector>> = HashMap::new();
    for (a, b) in &stage2 {
        cone2.entry(a.clone()).or_default().push(b - a);
    }
    let mut allowed: HashMap<Label, Vec<Label>> = HashMap::new();
    for a in &sources {
        let gens = &cone2[a];
        for b in &sources {
            if a != b && cone_member(&(b - a), gens)?.holds {
                allowed.entry(a.clone()).or_default().push(b.clone());
            }
        }
    }
    let mut edges: Vec<(Label, Label)> = stage2.clone();
    let mut stage_of: Vec<u8> = vec![2; edges.len()];
    for i in 0..stage2.len() {
        let (a, b) = stage2[i].clone();
        if reaches(&edges, &b, &a) {
            continue;
        }
        let path = shortest_path(&allowed, &b, &a)
            .ok_or_else(|| Error::PostconditionFailed(format!("no return path from {b} to {a}")))?;
        for w in path.windows(2) {
            let e = (w[0].clone(), w[1].clone());
            if !edges.contains(&e) {
                edges.push(e);
                stage_of.push(3);
            }
        }
    }

    let graph = EGraph::from_reactions(2, &edges)?;
    let provenance = (0..graph.num_edges())
        .map(|e| Provenance::Constructed { edge: e, stage: stage_of[e] })
        .collect();
    let checks = vec![
        check("weakly_reversible", graph.is_weakly_reversible()),
        check("strongly_endotactic", is_strongly_endotactic(&graph).holds),
        check("includes_dynamics", dynamics_included(g, &graph)?.holds),
    ];
    let result = RealizationResult { graph, rates: None, provenance, checks };
    if !result.all_checks_hold() {
        let failed: Vec<&str> = result.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        return Err(Error::PostconditionFailed(failed.join(", ")));
    }
    Ok(result)
}

fn reaches(edges: &[(Label, Label)], from: &Label, to: &Label) -> bool {
    let mut seen: BTreeSet<&Label> = BTreeSet::new();
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        if seen.insert(x) {
            stack.extend(edges.iter().filter(|(a, _)| a == x).map(|(_, b)| b));
        }
    }
    false
}

fn shortest_path(adj: &HashMap<Label, Vec<Label>>, from: &Label, to: &Label) -> Option<Vec<Label>> {
    let mut prev: HashMap<Label, Label> = HashMap::new();
    let mut queue = VecDeque::from([from.clone()]);
    let mut seen: BTreeSet<Label> = BTreeSet::from([from.clone()]);
    while let Some(x) = queue.pop_front() {
        if &x == to {
            let mut path = vec![x.clone()];
            let mut cur = x;
            while let Some(p) = prev.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            return Some(path);
        }
        for y in adj.get(&x).into_iter().flatten() {
            if seen.insert(y.clone()) {
                prev.insert(y.clone(), x.clone());
                queue.push_back(y.clone());
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rv;

    #[test]
    fn reversible_pair_in_the_plane_is_rejected_for_rank() {
        let g = EGraph::from_reactions(2, &[(rv![1, 0], rv![0, 1]), (rv![0, 1], rv![1, 0])]).unwrap();
        assert!(matches!(ewr_realize_2d(&g), Err(Error::WrongStoichiometricDimension { .. })));
    }

    #[test]
    fn triangle_example() {
        let g = EGraph::from_reactions(
            2,
            &[(rv![0, 0], rv![2, 0]), (rv![2, 0], rv![0, 2]), (rv![0, 2], rv![1, 0])],
        )
        .unwrap();
        let r = ewr_realize_2d(&g).unwrap();
        assert!(r.all_checks_hold());
        assert!(r.graph.is_weakly_reversible());
        assert!(r.recheck_provenance(&g));
    }

    #[test]
    fn interior_source_is_rejected() {
        let ex1 = EGraph::from_reactions(
            2,
            &[(rv![3, 0], rv![0, 3]), (rv![0, 3], rv![0, 0]), (rv![0, 0], rv![3, 0]), (rv![1, 1], rv![2, 2])],
        )
        .unwrap();
        assert!(matches!(ewr_realize_2d(&ex1), Err(Error::InteriorSourcePresent(s)) if s == rv![1, 1]));
    }

    #[test]
    fn wrong_dimension() {
        let g = EGraph::from_reactions(1, &[(rv![0], rv![1]), (rv![1], rv![0])]).unwrap();
        assert!(matches!(ewr_realize_2d(&g), Err(Error::WrongDimension { .. })));
    }
}
