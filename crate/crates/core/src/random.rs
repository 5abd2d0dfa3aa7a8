//! Seeded random networks for fixtures and property suites.
//!
//! Every generator takes an explicit RNG, so a `ChaCha8Rng` seeded with a
//! fixed value reproduces the same networks on every platform.

use std::collections::HashSet;

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, is_strongly_endotactic};
use crate::cone::on_relative_hull_boundary;
use crate::egraph::{EGraph, RateAssignment};
use crate::error::{Error, Result};
use crate::hull2d::{convex_hull, hull_faces, orientation};
use crate::massaction::stoichiometric_subspace;
use crate::rational::{qr, RationalVector};

/// Largest source count the generators accept.
pub const MAX_SOURCES: usize = 64;

fn random_point(rng: &mut impl Rng, dim: usize, max_coord: i64) -> RationalVector {
    RationalVector::from_ints(&(0..dim).map(|_| rng.gen_range(0..=max_coord)).collect::<Vec<_>>())
}

/// Coordinate bound large enough to hold `n` distinct points comfortably.
fn coord_bound(dim: usize, n: usize) -> i64 {
    let mut m: i64 = 3;
    while ((m + 1) as f64).powi(dim as i32) < 2.0 * n as f64 {
        m += 1;
    }
    m
}

fn distinct_points(rng: &mut impl Rng, dim: usize, n: usize, max_coord: i64) -> Vec<RationalVector> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = random_point(rng, dim, max_coord);
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

fn guard(dim: usize, n_sources: usize) -> Result<()> {
    if !(1..=3).contains(&dim) {
        return Err(Error::ResourceGuard(format!("dimension {dim} outside 1..=3")));
    }
    if n_sources == 0 || n_sources > MAX_SOURCES {
        return Err(Error::ResourceGuard(format!("{n_sources} sources outside 1..={MAX_SOURCES}")));
    }
    Ok(())
}

/// Positive rationals `p/q` with `p` in `1..=9`, `q` in `1..=4`.
pub fn random_rates(rng: &mut impl Rng, n: usize) -> RateAssignment {
    let rates = (0..n).map(|_| qr(rng.gen_range(1..=9), rng.gen_range(1..=4))).collect();
    RateAssignment::new(rates).expect("rates are positive")
}

/// A network with exactly `n_sources` sources, each with one or two
/// reactions, plus up to two product-only complexes.
pub fn random_network(rng: &mut impl Rng, dim: usize, n_sources: usize) -> Result<EGraph> {
    guard(dim, n_sources)?;
    let extra = rng.gen_range(0..=2);
    let n = n_sources + extra;
    let points = distinct_points(rng, dim, n.max(2), coord_bound(dim, n.max(2)));
    let mut reactions = Vec::new();
    let mut seen = HashSet::new();
    for s in 0..n_sources {
        for _ in 0..rng.gen_range(1..=2) {
            let mut t = rng.gen_range(0..points.len());
            while t == s {
                t = rng.gen_range(0..points.len());
            }
            if seen.insert((s, t)) {
                reactions.push((points[s].clone(), points[t].clone()));
            }
        }
    }
    EGraph::from_reactions(dim, &reactions)
}

/// A weakly reversible network: a cycle through every node plus a few chords
/// closed into cycles of their own.
pub fn random_weakly_reversible(rng: &mut impl Rng, dim: usize, n_nodes: usize) -> Result<EGraph> {
    guard(dim, n_nodes)?;
    let n = n_nodes.max(2);
    let mut points = distinct_points(rng, dim, n, coord_bound(dim, n));
    points.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    if n == 2 {
        pairs.truncate(2);
    }
    for _ in 0..rng.gen_range(0..=n / 2) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            pairs.push((a, b));
            pairs.push((b, a));
        }
    }
    let mut seen = HashSet::new();
    pairs.retain(|p| seen.insert(*p));
    let reactions: Vec<_> = pairs.into_iter().map(|(a, b)| (points[a].clone(), points[b].clone())).collect();
    EGraph::from_reactions(dim, &reactions)
}

/// A reversible network: every edge of a random weakly reversible one, both ways.
pub fn random_reversible(rng: &mut impl Rng, dim: usize, n_nodes: usize) -> Result<EGraph> {
    let g = random_weakly_reversible(rng, dim, n_nodes)?;
    let mut reactions = g.edge_labels();
    for (s, t) in g.edge_labels() {
        if !g.has_edge(&t, &s) {
            reactions.push((t, s));
        }
    }
    EGraph::from_reactions(dim, &reactions)
}

/// Splits one edge of `g` into two reactions toward `t + delta` and `t - delta`.
fn split_once(rng: &mut impl Rng, g: &EGraph) -> Option<EGraph> {
    let mut order: Vec<usize> = (0..g.num_edges()).collect();
    order.shuffle(rng);
    for e in order {
        let s = g.source(e).clone();
        let t = g.target(e).clone();
        for _ in 0..20 {
            let delta = RationalVector::from_ints(&(0..g.dim()).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>());
            if delta.is_zero() {
                continue;
            }
            let a = &t + &delta;
            let b = &t - &delta;
            if !a.is_nonnegative() || !b.is_nonnegative() || a == s || b == s {
                continue;
            }
            if let Ok(h) = g.split_edge(e, &[a, b]) {
                return Some(h);
            }
        }
    }
    None
}

/// A pair `(small, big)` where `big` comes from `small` by one to three
/// splittings, so the dynamics of `small` are included in those of `big`.
pub fn random_split_pair(rng: &mut impl Rng, dim: usize) -> Result<(EGraph, EGraph)> {
    for _ in 0..1000 {
        let n = rng.gen_range(1..=4);
        let small = random_network(rng, dim, n)?;
        let mut big = small.clone();
        let mut done = 0;
        for _ in 0..rng.gen_range(1..=3) {
            if let Some(h) = split_once(rng, &big) {
                big = h;
                done += 1;
            }
        }
        if done > 0 {
            return Ok((small, big));
        }
    }
    Err(Error::RejectionBudgetExceeded(1000))
}

/// A weakly reversible network with rates, plus one or two sources whose
/// monomial cancels: a midpoint `m` of two nodes with `m -> t1`, `m -> t2`
/// at equal rates and `t1 -> m`.
pub fn random_with_zero_sources(rng: &mut impl Rng, dim: usize) -> Result<(EGraph, RateAssignment)> {
    for _ in 0..1000 {
        let n = rng.gen_range(2..=5);
        let base = random_weakly_reversible(rng, dim, n)?;
        let mut reactions: Vec<(RationalVector, RationalVector, crate::rational::Q)> = base
            .edge_labels()
            .into_iter()
            .zip(random_rates(rng, base.num_edges()).rates().to_vec())
            .map(|((s, t), k)| (s, t, k))
            .collect();
        let mut nodes: Vec<RationalVector> = base.nodes().to_vec();
        let want = rng.gen_range(1..=2);
        let mut made = 0;
        for _ in 0..20 {
            if made == want {
                break;
            }
            let i = rng.gen_range(0..nodes.len());
            let j = rng.gen_range(0..nodes.len());
            if i == j {
                continue;
            }
            let (t1, t2) = (nodes[i].clone(), nodes[j].clone());
            let m = (&t1 + &t2).scale(&qr(1, 2));
            if nodes.contains(&m) {
                continue;
            }
            let c = qr(rng.gen_range(1..=9), rng.gen_range(1..=4));
            reactions.push((m.clone(), t1.clone(), c.clone()));
            reactions.push((m.clone(), t2, c));
            reactions.push((t1, m.clone(), qr(rng.gen_range(1..=9), rng.gen_range(1..=4))));
            nodes.push(m);
            made += 1;
        }
        if made > 0 {
            return EGraph::from_weighted_reactions(dim, &reactions);
        }
    }
    Err(Error::RejectionBudgetExceeded(1000))
}

fn inside_hull(hull: &[RationalVector], p: &RationalVector) -> bool {
    let n = hull.len();
    (0..n).all(|i| !orientation(&hull[i], &hull[(i + 1) % n], p).is_negative())
}

/// A planar strongly endotactic network whose sources all lie on the
/// boundary of their hull and whose reactions span the plane.
pub fn random_boundary_strongly_endotactic_2d(rng: &mut impl Rng, budget: usize) -> Result<EGraph> {
    for _ in 0..budget {
        let n = rng.gen_range(3..=6);
        let pts = distinct_points(rng, 2, n, 4);
        let hull = convex_hull(&pts);
        if hull.len() < 3 {
            continue;
        }
        let mut sources: Vec<RationalVector> = hull.clone();
        // Occasionally add a lattice point from the middle of a side.
        for f in hull_faces(&hull) {
            let mid = (&f.start + &f.end).scale(&qr(1, 2));
            if mid.iter().all(|c| c.is_integer()) && rng.gen_bool(0.3) {
                sources.push(mid);
            }
        }
        let mut inner: Vec<RationalVector> = Vec::new();
        for x in 0..=4 {
            for y in 0..=4 {
                let p = RationalVector::from_ints(&[x, y]);
                if inside_hull(&hull, &p) {
                    inner.push(p);
                }
            }
        }
        let mut reactions = Vec::new();
        let mut seen = HashSet::new();
        for s in &sources {
            for _ in 0..rng.gen_range(1..=2) {
                let t = if rng.gen_bool(0.6) {
                    sources.choose(rng).expect("nonempty").clone()
                } else {
                    inner.choose(rng).expect("nonempty").clone()
                };
                if &t != s && seen.insert((s.clone(), t.clone())) {
                    reactions.push((s.clone(), t));
                }
            }
        }
        let Ok(g) = EGraph::from_reactions(2, &reactions) else { continue };
        if stoichiometric_subspace(&g).len() != 2 {
            continue;
        }
        let sc = g.sources();
        if sc.len() < sources.len() {
            continue;
        }
        if !sc.iter().all(|s| on_relative_hull_boundary(s, &sc).unwrap_or(false)) {
            continue;
        }
        if is_strongly_endotactic(&g).holds {
            return Ok(g);
        }
    }
    Err(Error::RejectionBudgetExceeded(budget))
}

/// Constraint flags accepted by [`random_with_requirements`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    Reversible,
    WeaklyReversible,
    SourceOnly,
    Consistent,
    Endotactic,
    StronglyEndotactic,
    ExtremallyWeaklyReversible,
    BoundarySources,
}

impl Requirement {
    pub fn holds(self, g: &EGraph) -> bool {
        match self {
            Requirement::BoundarySources => {
                let sc = g.sources();
                sc.iter().all(|s| on_relative_hull_boundary(s, &sc).unwrap_or(false))
            }
            other => {
                let r = classify(g);
                match other {
                    Requirement::Reversible => r.reversible,
                    Requirement::WeaklyReversible => r.weakly_reversible,
                    Requirement::SourceOnly => r.source_only,
                    Requirement::Consistent => r.consistent,
                    Requirement::Endotactic => r.endotactic,
                    Requirement::StronglyEndotactic => r.strongly_endotactic,
                    Requirement::ExtremallyWeaklyReversible => r.extremally_weakly_reversible,
                    Requirement::BoundarySources => unreachable!(),
                }
            }
        }
    }
}

/// Rejection-samples a network with `n_sources` sources meeting every requirement.
pub fn random_with_requirements(
    rng: &mut impl Rng,
    dim: usize,
    n_sources: usize,
    requirements: &[Requirement],
    budget: usize,
) -> Result<EGraph> {
    guard(dim, n_sources)?;
    let wants = |r: Requirement| requirements.contains(&r);
    for _ in 0..budget {
        let g = if wants(Requirement::Reversible) {
            random_reversible(rng, dim, n_sources)?
        } else if wants(Requirement::WeaklyReversible) || wants(Requirement::ExtremallyWeaklyReversible) {
            random_weakly_reversible(rng, dim, n_sources)?
        } else {
            random_network(rng, dim, n_sources)?
        };
        if g.sources().len() != n_sources {
            continue;
        }
        if requirements.iter().all(|r| r.holds(&g)) {
            return Ok(g);
        }
    }
    Err(Error::RejectionBudgetExceeded(budget))
}
