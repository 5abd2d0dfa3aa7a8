//! Constructions of dynamically equivalent networks.
//!
//! * [`make_source_only`]: every product becomes a source by splitting the
//!   reactions that lead elsewhere.
//! * [`eliminate_zero_sources`]: removes sources whose monomial vanishes from
//!   the field, keeping weak reversibility and the exact field.
//! * [`ewr_realize_2d`]: a weakly reversible, strongly endotactic network that
//!   contains the dynamics of a planar strongly endotactic one.
//!
//! Every construction verifies its postconditions before returning.

mod ewr2d;
mod source_only;
mod zero_sources;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::egraph::{EGraph, RateAssignment};
use crate::rational::{de_q, de_qs, ser_q, ser_qs, RationalVector, Q};

pub use ewr2d::ewr_realize_2d;
pub use source_only::{make_source_only, make_source_only_with_rates};
pub use zero_sources::eliminate_zero_sources;

/// Where an edge of the output came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Input edge `original` survives unchanged as output edge `edge`.
    Kept { original: usize, edge: usize },
    /// `v(original) = sum lambdas_i v(edges_i)` with every `lambda_i > 0`.
    Split {
        original: usize,
        edges: Vec<usize>,
        #[serde(serialize_with = "ser_qs", deserialize_with = "de_qs")]
        lambdas: Vec<Q>,
    },
    /// The path `from -> through -> to` was shortcut to `from -> to`
    /// with rate contribution `rate`; a shortcut with `from == to` is dropped,
    /// and one whose endpoint is eliminated later is rewired again.
    Bypass {
        from: RationalVector,
        through: RationalVector,
        to: RationalVector,
        #[serde(serialize_with = "ser_q", deserialize_with = "de_q")]
        rate: Q,
    },
    /// Output edge `edge` was added at construction stage `stage`.
    Constructed { edge: usize, stage: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostconditionCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationResult {
    pub graph: EGraph,
    pub rates: Option<RateAssignment>,
    pub provenance: Vec<Provenance>,
    pub checks: Vec<PostconditionCheck>,
}

impl RealizationResult {
    /// Rechecks every provenance record against the input network.
    pub fn recheck_provenance(&self, input: &EGraph) -> bool {
        let out = &self.graph;
        self.provenance.iter().all(|p| match p {
            Provenance::Kept { original, edge } => {
                *original < input.num_edges()
                    && *edge < out.num_edges()
                    && input.source(*original) == out.source(*edge)
                    && input.target(*original) == out.target(*edge)
            }
            Provenance::Split { original, edges, lambdas } => {
                *original < input.num_edges()
                    && edges.len() == lambdas.len()
                    && !edges.is_empty()
                    && lambdas.iter().all(Signed::is_positive)
                    && edges.iter().all(|&e| e < out.num_edges() && out.source(e) == input.source(*original))
                    && edges
                        .iter()
                        .zip(lambdas)
                        .fold(RationalVector::zeros(out.dim()), |acc, (&e, l)| acc.add_scaled(l, &out.reaction_vector(e)))
                        == input.reaction_vector(*original)
            }
            Provenance::Bypass { from, through, to, rate } => {
                let gone = |x: &RationalVector| out.node_index(x).is_none();
                rate.is_positive()
                    && from != through
                    && to != through
                    && gone(through)
                    && (from == to || gone(from) || gone(to) || out.has_edge(from, to))
            }
            Provenance::Constructed { edge, .. } => *edge < out.num_edges(),
        })
    }

    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub(crate) fn check(name: &str, holds: bool) -> PostconditionCheck {
    PostconditionCheck { name: name.into(), holds }
}
