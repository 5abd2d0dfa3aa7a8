use std::collections::HashMap;

use num_traits::Signed;

use crate::classify::is_endotactic;
use crate::cone::basic_cone_combination;
use crate::egraph::{EGraph, RateAssignment};
use crate::equivalence::dynamics_included;
use crate::error::{Error, Result};
use crate::rational::{RationalVector, Q};

use super::{check, Provenance, RealizationResult};

/// A source-only network containing the dynamics of an endotactic `g`.
pub fn make_source_only(g: &EGraph) -> Result<RealizationResult> {
    make_source_only_with_rates(g, None)
}

/// As [`make_source_only`], also mapping rates: kept edges keep theirs, a
/// replacement edge gets `k_e * lambda_i`, and parallel contributions add up.
pub fn make_source_only_with_rates(g: &EGraph, k: Option<&RateAssignment>) -> Result<RealizationResult> {
    if let Some(k) = k {
        k.check_for(g)?;
    }
    if !is_endotactic(g).holds {
        return Err(Error::NotEndotactic);
    }
    let sources = g.sources();
    let mut order: Vec<(RationalVector, RationalVector)> = Vec::new();
    let mut slot: HashMap<(RationalVector, RationalVector), usize> = HashMap::new();
    let mut rates: Vec<Q> = Vec::new();
    let mut add = |s: &RationalVector, t: &RationalVector, rate: Q| -> usize {
        let key = (s.clone(), t.clone());
        match slot.get(&key) {
            Some(&i) => {
                rates[i] += rate;
                i
            }
            None => {
                order.push(key.clone());
                rates.push(rate);
                slot.insert(key, order.len() - 1);
                order.len() - 1
            }
        }
    };
    let one = crate::rational::q(1);
    let mut provenance = Vec::with_capacity(g.num_edges());
    for e in 0..g.num_edges() {
        let s = g.source(e);
        let rate = k.map_or_else(|| one.clone(), |k| k.rates()[e].clone());
        if sources.contains(g.target(e)) {
            let edge = add(s, g.target(e), rate);
            provenance.push(Provenance::Kept { original: e, edge });
            continue;
        }
        let others: Vec<&RationalVector> = sources.iter().filter(|x| *x != s).collect();
        let gens: Vec<RationalVector> = others.iter().map(|x| *x - s).collect();
        let lambdas = basic_cone_combination(&g.reaction_vector(e), &gens)?.ok_or(Error::ReplacementInfeasible(e))?;
        let mut edges = Vec::new();
        let mut used = Vec::new();
        for (i, l) in lambdas.iter().enumerate() {
            if l.is_positive() {
                edges.push(add(s, others[i], &rate * l));
                used.push(l.clone());
            }
        }
        provenance.push(Provenance::Split { original: e, edges, lambdas: used });
    }
    let graph = EGraph::from_reactions(g.dim(), &order)?;
    let rates = match k {
        Some(_) => Some(RateAssignment::new(rates)?),
        None => None,
    };
    let checks = vec![
        check("source_only", graph.is_source_only()),
        check("includes_dynamics", dynamics_included(g, &graph)?.holds),
    ];
    let result = RealizationResult { graph, rates, provenance, checks };
    if !result.all_checks_hold() || !result.recheck_provenance(g) {
        return Err(Error::PostconditionFailed("source-only realization".into()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::massaction::{fields_equal, generate_field};
    use crate::rv;

    fn ex1() -> EGraph {
        EGraph::from_reactions(
            2,
            &[(rv![3, 0], rv![0, 3]), (rv![0, 3], rv![0, 0]), (rv![0, 0], rv![3, 0]), (rv![1, 1], rv![2, 2])],
        )
        .unwrap()
    }

    #[test]
    fn splits_the_outward_product() {
        let r = make_source_only(&ex1()).unwrap();
        let ex12 = EGraph::from_reactions(
            2,
            &[
                (rv![3, 0], rv![0, 3]),
                (rv![0, 3], rv![0, 0]),
                (rv![0, 0], rv![3, 0]),
                (rv![1, 1], rv![3, 0]),
                (rv![1, 1], rv![0, 3]),
            ],
        )
        .unwrap();
        assert!(r.graph.same_network(&ex12));
        assert!(r.recheck_provenance(&ex1()));
    }

    #[test]
    fn mapped_rates_preserve_the_field() {
        let k = RateAssignment::from_ints(&[1, 2, 3, 4]).unwrap();
        let r = make_source_only_with_rates(&ex1(), Some(&k)).unwrap();
        let f = generate_field(&ex1(), &k).unwrap();
        let f2 = generate_field(&r.graph, r.rates.as_ref().unwrap()).unwrap();
        assert!(fields_equal(&f, &f2).unwrap());
    }

    #[test]
    fn source_only_input_is_unchanged() {
        let g = EGraph::from_reactions(2, &[(rv![1, 0], rv![0, 1]), (rv![0, 1], rv![1, 0])]).unwrap();
        assert_eq!(make_source_only(&g).unwrap().graph, g);
    }

    #[test]
    fn rejects_non_endotactic_input() {
        let g = EGraph::from_reactions(1, &[(rv![1], rv![2])]).unwrap();
        assert!(matches!(make_source_only(&g), Err(Error::NotEndotactic)));
    }
}
