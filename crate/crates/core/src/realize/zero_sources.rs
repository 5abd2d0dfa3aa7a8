use std::collections::BTreeSet;

use crate::egraph::{EGraph, RateAssignment};
use crate::error::{Error, Result};
use crate::massaction::{fields_equal, generate_field};
use crate::rational::{RationalVector, Q};

use super::{check, Provenance, RealizationResult};

type Weighted = Vec<(RationalVector, RationalVector, Q)>;

fn merge(edges: &mut Weighted, s: RationalVector, t: RationalVector, k: Q) {
    match edges.iter_mut().find(|(a, b, _)| *a == s && *b == t) {
        Some((_, _, acc)) => *acc += k,
        None => edges.push((s, t, k)),
    }
}

/// Removes every source whose monomial has a zero net coefficient, rewiring
/// each incoming edge through to each outgoing one.
///
/// The output is weakly reversible, its sources are exactly the exponents of
/// the field, and it generates the same field.
pub fn eliminate_zero_sources(g: &EGraph, k: &RateAssignment) -> Result<RealizationResult> {
    k.check_for(g)?;
    if !g.is_weakly_reversible() {
        return Err(Error::NotWeaklyReversible);
    }
    let f = generate_field(g, k)?;
    let mut edges: Weighted = g
        .edge_labels()
        .into_iter()
        .zip(k.rates())
        .map(|((s, t), r)| (s, t, r.clone()))
        .collect();
    let mut provenance = Vec::new();
    loop {
        let sources: BTreeSet<RationalVector> = edges.iter().map(|(s, _, _)| s.clone()).collect();
        let Some(star) = sources.into_iter().find(|s| !f.terms().contains_key(s)) else { break };
        let (touching, rest): (Weighted, Weighted) =
            edges.into_iter().partition(|(s, t, _)| *s == star || *t == star);
        edges = rest;
        let outgoing: Weighted = touching.iter().filter(|(s, _, _)| *s == star).cloned().collect();
        let incoming: Weighted = touching.iter().filter(|(_, t, _)| *t == star).cloned().collect();
        let total: Q = outgoing.iter().map(|(_, _, r)| r.clone()).sum();
        for (from, _, k_in) in &incoming {
            for (_, to, k_out) in &outgoing {
                let rate = k_in * k_out / &total;
                provenance.push(Provenance::Bypass {
                    from: from.clone(),
                    through: star.clone(),
                    to: to.clone(),
                    rate: rate.clone(),
                });
                if from != to {
                    merge(&mut edges, from.clone(), to.clone(), rate);
                }
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::InternalInvariantBroken("every source was eliminated".into()));
    }
    let (graph, rates) = EGraph::from_weighted_reactions(g.dim(), &edges)?;
    let out_field = generate_field(&graph, &rates)?;
    let sources: BTreeSet<RationalVector> = graph.sources().into_iter().collect();
    let exponents: BTreeSet<RationalVector> = f.exponents().into_iter().collect();
    let checks = vec![
        check("weakly_reversible", graph.is_weakly_reversible()),
        check("sources_equal_exponents", sources == exponents),
        check("field_equal", fields_equal(&f, &out_field)?),
    ];
    let result = RealizationResult { graph, rates: Some(rates), provenance, checks };
    if !result.all_checks_hold() || !result.recheck_provenance(g) {
        return Err(Error::InternalInvariantBroken("zero-source elimination failed its recheck".into()));
    }
    Ok(result)
}
