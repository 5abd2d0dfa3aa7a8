//! Exact-arithmetic toolkit for chemical reaction networks under mass-action
//! kinetics.
//!
//! Networks are Euclidean embedded graphs ([`EGraph`]): directed graphs whose
//! nodes are distinct points of `Q^d_{>=0}`. From a network and positive rate
//! constants the crate generates the polynomial vector field
//! `f(x) = sum_e k_e x^{s(e)} (t(e) - s(e))`, classifies the network
//! (reversible, weakly reversible, consistent, endotactic, strongly
//! endotactic, source-only, extremally weakly reversible), decides whether one
//! network's dynamics are contained in another's, and builds dynamically
//! equivalent realizations.
//!
//! Every decision is exact. Cone questions are answered by a rational simplex
//! with Bland's rule, and every answer carries a certificate that can be
//! rechecked independently: positive coefficients or a separating direction.
//!
//! # Examples
//!
//! The `examples/` directory has one runnable program per capability:
//!
//! * `classify_network`: all structural flags with their witnesses.
//! * `mass_action_odes`: generating and printing the ODEs of a network.
//! * `dynamical_equivalence`: inclusion, capacity and rate witnesses.
//! * `source_only`: replacing non-source products by splitting reactions.
//! * `zero_source_elimination`: removing vanishing monomials while keeping
//!   weak reversibility.
//! * `ewr_2d`: the planar extremally weakly reversible construction.
//! * `sign_cells`: enumerating the sign cells of a direction set.
//! * `parse_and_serialize`: the text format.
//! * `random_fixtures`: seeded network generators.
//!
//! ```
//! use crn_equiv::{parse, generate_field};
//!
//! let doc = parse("X1 <-> X2, k = 1, 1").unwrap();
//! let (g, k) = doc.to_egraph_with_rates().unwrap();
//! let f = generate_field(&g, &k).unwrap();
//! assert_eq!(f.to_text(&doc.species), ["dx1/dt = -x1 + x2", "dx2/dt = x1 - x2"]);
//! ```

pub mod arrangement;
pub mod classify;
pub mod cli;
pub mod cone;
pub mod egraph;
pub mod equivalence;
pub mod error;
pub mod hull2d;
pub mod linalg;
pub(crate) mod lp;
pub mod massaction;
pub mod parser;
pub mod random;
pub mod rational;
pub mod realize;

pub use arrangement::{enumerate_sign_cells, SignCell};
pub use classify::{
    classify, endotactic_2d_sweep_oracle, extremal_subnetwork, is_consistent, is_endotactic,
    is_extremally_weakly_reversible, is_strongly_endotactic, ClassificationReport, EndotacticDecision, Violation,
};
pub use cone::{
    cone_member, on_relative_hull_boundary, relint_contained, relint_intersect, relint_member, ConeDecision,
    ConeWitness, Containment, Intersection,
};
pub use egraph::{EGraph, Edge, RateAssignment};
pub use equivalence::{
    capacity_for_equivalence, dynamics_included, find_rate_witness, CapacityReport, FailureReason, InclusionReport,
};
pub use error::{Error, Result};
pub use massaction::{evaluate_field, fields_equal, generate_field, stoichiometric_subspace, VectorField};
pub use parser::{parse, NetworkDocument};
pub use rational::{RationalVector, Q};
pub use realize::{eliminate_zero_sources, ewr_realize_2d, make_source_only, Provenance, RealizationResult};
