//! Euclidean embedded graphs: reaction networks as directed graphs whose
//! nodes are distinct points of `Q^d_{>=0}`.

use std::collections::{HashMap, HashSet};

use num_traits::Signed;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::cone::relint_member;
use crate::error::{Error, Result};
use crate::rational::{de_qs, ser_qs, RationalVector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
}

/// A validated reaction network.
///
/// Node order and edge order are preserved exactly as given; every query
/// that returns a list of nodes or edges is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEGraph")]
pub struct EGraph {
    dim: usize,
    nodes: Vec<RationalVector>,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
struct RawEGraph {
    dim: usize,
    nodes: Vec<RationalVector>,
    edges: Vec<Edge>,
}

impl TryFrom<RawEGraph> for EGraph {
    type Error = Error;
    fn try_from(raw: RawEGraph) -> Result<Self> {
        EGraph::validate(raw.nodes, raw.edges.into_iter().map(|e| (e.source, e.target)).collect(), raw.dim)
    }
}

impl EGraph {
    /// Checks every structural invariant of a reaction network.
    pub fn validate(nodes: Vec<RationalVector>, edges: Vec<(usize, usize)>, dim: usize) -> Result<EGraph> {
        if nodes.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        for n in &nodes {
            if n.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: n.dim() });
            }
            if !n.is_nonnegative() {
                return Err(Error::NegativeCoordinate(n.clone()));
            }
        }
        let mut seen = HashSet::new();
        for n in &nodes {
            if !seen.insert(n) {
                return Err(Error::DuplicateNode(n.clone()));
            }
        }
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        let mut touched = vec![false; nodes.len()];
        for (i, &(s, t)) in edges.iter().enumerate() {
            for x in [s, t] {
                if x >= nodes.len() {
                    return Err(Error::EdgeOutOfRange { edge: i, node: x });
                }
            }
            if s == t {
                return Err(Error::SelfLoopEdge { edge: i, node: s });
            }
            if let Some(&first) = pairs.get(&(s, t)) {
                return Err(Error::MergeableParallelEdges { first, second: i });
            }
            pairs.insert((s, t), i);
            touched[s] = true;
            touched[t] = true;
        }
        if let Some(i) = touched.iter().position(|&b| !b) {
            return Err(Error::IsolatedNode(nodes[i].clone()));
        }
        let edges = edges.into_iter().map(|(source, target)| Edge { source, target }).collect();
        Ok(EGraph { dim, nodes, edges })
    }

    /// Builds a network from labelled reactions; nodes appear in first-use order.
    pub fn from_reactions(dim: usize, reactions: &[(RationalVector, RationalVector)]) -> Result<EGraph> {
        let mut nodes: Vec<RationalVector> = Vec::new();
        let mut index: HashMap<RationalVector, usize> = HashMap::new();
        let mut edges = Vec::with_capacity(reactions.len());
        for (s, t) in reactions {
            let mut id = |x: &RationalVector| {
                *index.entry(x.clone()).or_insert_with(|| {
                    nodes.push(x.clone());
                    nodes.len() - 1
                })
            };
            let a = id(s);
            let b = id(t);
            edges.push((a, b));
        }
        EGraph::validate(nodes, edges, dim)
    }

    /// Like [`from_reactions`](Self::from_reactions) but with rates; parallel
    /// reactions are merged by summing their rates, keeping first-use order.
    pub fn from_weighted_reactions(
        dim: usize,
        reactions: &[(RationalVector, RationalVector, Q)],
    ) -> Result<(EGraph, RateAssignment)> {
        let mut order: Vec<(RationalVector, RationalVector)> = Vec::new();
        let mut total: HashMap<(RationalVector, RationalVector), Q> = HashMap::new();
        for (s, t, k) in reactions {
            let key = (s.clone(), t.clone());
            match total.get_mut(&key) {
                Some(acc) => *acc += k,
                None => {
                    order.push(key.clone());
                    total.insert(key, k.clone());
                }
            }
        }
        let rates = order.iter().map(|key| total[key].clone()).collect();
        let g = EGraph::from_reactions(dim, &order)?;
        let k = RateAssignment::new(rates)?;
        Ok((g, k))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> &[RationalVector] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn node_index(&self, label: &RationalVector) -> Option<usize> {
        self.nodes.iter().position(|n| n == label)
    }

    pub fn source(&self, e: usize) -> &RationalVector {
        &self.nodes[self.edges[e].source]
    }

    pub fn target(&self, e: usize) -> &RationalVector {
        &self.nodes[self.edges[e].target]
    }

    pub fn reaction_vector(&self, e: usize) -> RationalVector {
        self.target(e) - self.source(e)
    }

    pub fn reaction_vectors(&self) -> Vec<RationalVector> {
        (0..self.edges.len()).map(|e| self.reaction_vector(e)).collect()
    }

    /// `(source label, target label)` per edge.
    pub fn edge_labels(&self) -> Vec<(RationalVector, RationalVector)> {
        (0..self.edges.len()).map(|e| (self.source(e).clone(), self.target(e).clone())).collect()
    }

    /// Node indices of SC(G), in node order.
    pub fn source_indices(&self) -> Vec<usize> {
        let mut is_source = vec![false; self.nodes.len()];
        for e in &self.edges {
            is_source[e.source] = true;
        }
        (0..self.nodes.len()).filter(|&i| is_source[i]).collect()
    }

    /// The source complexes SC(G), in node order.
    pub fn sources(&self) -> Vec<RationalVector> {
        self.source_indices().into_iter().map(|i| self.nodes[i].clone()).collect()
    }

    pub fn is_source(&self, label: &RationalVector) -> bool {
        self.edges.iter().any(|e| &self.nodes[e.source] == label)
    }

    /// Edges leaving the node labelled `label`, in edge order.
    pub fn edges_from(&self, label: &RationalVector) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.source(e) == label).collect()
    }

    /// Generators of `V^G(s)`; empty when `s` is not a source.
    pub fn cone_generators_at(&self, label: &RationalVector) -> Vec<RationalVector> {
        self.edges_from(label).into_iter().map(|e| self.reaction_vector(e)).collect()
    }

    pub fn has_edge(&self, s: &RationalVector, t: &RationalVector) -> bool {
        (0..self.edges.len()).any(|e| self.source(e) == s && self.target(e) == t)
    }

    pub fn is_reversible(&self) -> bool {
        let pairs: HashSet<(usize, usize)> = self.edges.iter().map(|e| (e.source, e.target)).collect();
        self.edges.iter().all(|e| pairs.contains(&(e.target, e.source)))
    }

    /// Component id per node from the strongly connected components.
    fn scc_ids(&self) -> Vec<usize> {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.nodes.len(), self.edges.len());
        let idx: Vec<_> = self.nodes.iter().map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(idx[e.source], idx[e.target], ());
        }
        let mut comp = vec![0; self.nodes.len()];
        for (c, members) in tarjan_scc(&g).into_iter().enumerate() {
            for n in members {
                comp[n.index()] = c;
            }
        }
        comp
    }

    /// First edge that lies on no directed cycle, if any.
    pub fn edge_off_cycles(&self) -> Option<usize> {
        let comp = self.scc_ids();
        self.edges.iter().position(|e| comp[e.source] != comp[e.target])
    }

    pub fn is_weakly_reversible(&self) -> bool {
        self.edge_off_cycles().is_none()
    }

    /// First target complex that is not a source complex, if any.
    pub fn non_source_target(&self) -> Option<RationalVector> {
        let sources: HashSet<usize> = self.edges.iter().map(|e| e.source).collect();
        self.edges.iter().find(|e| !sources.contains(&e.target)).map(|e| self.nodes[e.target].clone())
    }

    pub fn is_source_only(&self) -> bool {
        self.non_source_target().is_none()
    }

    /// Replaces edge `e` by edges from `s(e)` to each replacement target.
    ///
    /// Requires `v(e)` to lie in the relative interior of the cone spanned by
    /// the new reaction vectors. Replacement edges take the place of `e` in
    /// edge order; a target already joined to `s(e)` is not duplicated.
    pub fn split_edge(&self, e: usize, targets: &[RationalVector]) -> Result<EGraph> {
        if e >= self.edges.len() {
            return Err(Error::NoSuchEdge(e));
        }
        let s = self.source(e).clone();
        let mut gens = Vec::with_capacity(targets.len());
        for t in targets {
            if t.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: t.dim() });
            }
            if *t == s {
                return Err(Error::SelfLoopEdge { edge: e, node: self.edges[e].source });
            }
            gens.push(t - &s);
        }
        if !relint_member(&self.reaction_vector(e), &gens)?.holds {
            return Err(Error::SplitConeViolation { edge: e });
        }
        let mut reactions: Vec<(RationalVector, RationalVector)> = Vec::with_capacity(self.edges.len() + targets.len());
        for (i, pair) in self.edge_labels().into_iter().enumerate() {
            if i == e {
                for t in targets {
                    reactions.push((s.clone(), t.clone()));
                }
            } else {
                reactions.push(pair);
            }
        }
        let mut seen = HashSet::new();
        reactions.retain(|r| seen.insert(r.clone()));
        EGraph::from_reactions(self.dim, &reactions)
    }

    /// Subnetwork on the given edges; nodes keep their relative order.
    pub fn restrict_to_edges(&self, keep: &[usize]) -> Result<EGraph> {
        let mut used = vec![false; self.nodes.len()];
        for &e in keep {
            let edge = self.edges.get(e).ok_or(Error::NoSuchEdge(e))?;
            used[edge.source] = true;
            used[edge.target] = true;
        }
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if used[i] {
                remap[i] = nodes.len();
                nodes.push(n.clone());
            }
        }
        let edges = keep.iter().map(|&e| (remap[self.edges[e].source], remap[self.edges[e].target])).collect();
        EGraph::validate(nodes, edges, self.dim)
    }

    /// Same node labels and the same set of labelled edges, ignoring order.
    pub fn same_network(&self, other: &EGraph) -> bool {
        let nodes = |g: &EGraph| g.nodes.iter().cloned().collect::<HashSet<_>>();
        let edges = |g: &EGraph| g.edge_labels().into_iter().collect::<HashSet<_>>();
        self.dim == other.dim
            && self.edges.len() == other.edges.len()
            && nodes(self) == nodes(other)
            && edges(self) == edges(other)
    }

    /// Rescales every coordinate by `c > 0`.
    pub fn scaled(&self, c: &Q) -> EGraph {
        EGraph { dim: self.dim, nodes: self.nodes.iter().map(|n| n.scale(c)).collect(), edges: self.edges.clone() }
    }
}

/// Strictly positive rate constant per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRates", into = "RawRates")]
pub struct RateAssignment(Vec<Q>);

#[derive(Serialize, Deserialize)]
struct RawRates(#[serde(serialize_with = "ser_qs", deserialize_with = "de_qs")] Vec<Q>);

impl TryFrom<RawRates> for RateAssignment {
    type Error = Error;
    fn try_from(raw: RawRates) -> Result<Self> {
        RateAssignment::new(raw.0)
    }
}

impl From<RateAssignment> for RawRates {
    fn from(k: RateAssignment) -> Self {
        RawRates(k.0)
    }
}

impl RateAssignment {
    pub fn new(rates: Vec<Q>) -> Result<Self> {
        match rates.iter().position(|k| !k.is_positive()) {
            Some(index) => Err(Error::NonPositiveRate { index }),
            None => Ok(RateAssignment(rates)),
        }
    }

    /// All rates equal to one.
    pub fn ones(n: usize) -> Self {
        RateAssignment(vec![crate::rational::q(1); n])
    }

    pub fn from_ints(rates: &[i64]) -> Result<Self> {
        Self::new(rates.iter().map(|&k| crate::rational::q(k)).collect())
    }

    pub fn rates(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_for(&self, g: &EGraph) -> Result<()> {
        if self.0.len() != g.num_edges() {
            return Err(Error::RateLengthMismatch { expected: g.num_edges(), found: self.0.len() });
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Q) -> Result<Self> {
        Self::new(self.0.iter().map(|k| k * c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rv;

    fn x1_x2() -> EGraph {
        EGraph::validate(vec![rv![1, 0], rv![0, 1]], vec![(0, 1), (1, 0)], 2).unwrap()
    }

    fn cycle_with_chord() -> EGraph {
        EGraph::from_reactions(
            2,
            &[(rv![0, 1], rv![1, 1]), (rv![0, 1], rv![1, 0]), (rv![1, 1], rv![1, 0]), (rv![1, 0], rv![0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(EGraph::validate(vec![rv![1, 0]], vec![(0, 0)], 2), Err(Error::SelfLoopEdge { .. })));
        assert!(matches!(
            EGraph::validate(vec![rv![1, 0], rv![1, 0]], vec![(0, 1)], 2),
            Err(Error::DuplicateNode(_))
        ));
        assert!(matches!(
            EGraph::validate(vec![rv![1, 0], rv![0, 1], rv![2, 2]], vec![(0, 1)], 2),
            Err(Error::IsolatedNode(_))
        ));
        assert!(matches!(
            EGraph::validate(vec![RationalVector::from_ints(&[-1]), rv![1]], vec![(0, 1)], 1),
            Err(Error::NegativeCoordinate(_))
        ));
        assert!(matches!(
            EGraph::validate(vec![rv![1, 0], rv![1]], vec![(0, 1)], 2),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            EGraph::validate(vec![rv![1], rv![2]], vec![(0, 1), (0, 1)], 1),
            Err(Error::MergeableParallelEdges { first: 0, second: 1 })
        ));
        assert!(matches!(EGraph::validate(vec![], vec![], 1), Err(Error::EmptyNetwork)));
    }

    #[test]
    fn structural_predicates() {
        let g = x1_x2();
        assert!(g.is_reversible() && g.is_weakly_reversible() && g.is_source_only());

        let r = cycle_with_chord();
        assert!(!r.is_reversible());
        assert!(r.is_weakly_reversible());

        let line = EGraph::from_reactions(1, &[(rv![0], rv![1]), (rv![2], rv![1])]).unwrap();
        assert!(!line.is_weakly_reversible());
        assert!(!line.is_source_only());

        let growth = EGraph::from_reactions(1, &[(rv![1], rv![2])]).unwrap();
        assert!(!growth.is_reversible());
    }

    #[test]
    fn split_edge_cases() {
        let ex1 = EGraph::from_reactions(
            2,
            &[(rv![3, 0], rv![0, 3]), (rv![0, 3], rv![0, 0]), (rv![0, 0], rv![3, 0]), (rv![1, 1], rv![2, 2])],
        )
        .unwrap();
        let ex12 = ex1.split_edge(3, &[rv![3, 0], rv![0, 3]]).unwrap();
        assert!(ex12.is_source_only());
        assert_eq!(ex12.num_edges(), 5);
        assert!(ex12.node_index(&rv![2, 2]).is_none());

        let growth = EGraph::from_reactions(1, &[(rv![1], rv![2])]).unwrap();
        assert!(growth.split_edge(0, &[rv![2]]).unwrap().same_network(&growth));

        let conv = EGraph::from_reactions(2, &[(rv![1, 0], rv![0, 1])]).unwrap();
        assert!(matches!(conv.split_edge(0, &[rv![1, 1]]), Err(Error::SplitConeViolation { edge: 0 })));
        assert!(matches!(conv.split_edge(4, &[rv![1, 1]]), Err(Error::NoSuchEdge(4))));
    }

    #[test]
    fn weighted_reactions_merge_parallels() {
        let (g, k) = EGraph::from_weighted_reactions(
            1,
            &[(rv![0], rv![1], crate::rational::q(1)), (rv![0], rv![1], crate::rational::q(2))],
        )
        .unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(k.rates(), &[crate::rational::q(3)]);
    }

    #[test]
    fn serde_round_trip_revalidates() {
        let g = cycle_with_chord();
        let json = serde_json::to_string(&g).unwrap();
        let back: EGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"dim":1,"nodes":[["1"]],"edges":[{"source":0,"target":0}]}"#;
        assert!(serde_json::from_str::<EGraph>(bad).is_err());
        let k = RateAssignment::from_ints(&[1, 2]).unwrap();
        let back: RateAssignment = serde_json::from_str(&serde_json::to_string(&k).unwrap()).unwrap();
        assert_eq!(back, k);
        assert!(RateAssignment::from_ints(&[1, 0]).is_err());
    }
}
