//! Exact decision procedures for finitely generated cones.
//!
//! A cone is given by a (possibly empty) list of generators; the empty list
//! generates `{0}` and its relative interior is `{0}` as well. The relative
//! interior of `Cone(S)` is exactly the set of strictly positive combinations
//! of `S`, so every relative-interior question reduces to a linear program
//! that maximizes a common lower bound `delta` on the coefficients.
//!
//! Negative answers carry separating directions:
//!
//! * cone membership (Farkas): `w . g >= 0` for every generator and `w . v < 0`;
//! * relative interior (Stiemke form): `w . g <= 0` for every generator,
//!   `w . v >= 0`, and at least one of these inequalities is strict.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{LpOutcome, StandardLp};
use crate::rational::{de_qs, ser_qs, RationalVector, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeWitness {
    /// Coefficients `lambda` with `v = sum lambda_i g_i`.
    Coefficients {
        #[serde(serialize_with = "ser_qs", deserialize_with = "de_qs")]
        lambdas: Vec<Q>,
    },
    /// A direction `w` certifying the negative answer.
    SeparatingDirection { w: RationalVector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDecision {
    pub holds: bool,
    pub witness: ConeWitness,
}

fn check_dims(dim: usize, vs: &[RationalVector]) -> Result<()> {
    match vs.iter().find(|g| g.dim() != dim) {
        Some(g) => Err(Error::DimensionMismatch { expected: dim, found: g.dim() }),
        None => Ok(()),
    }
}

fn combination(dim: usize, coeffs: &[Q], gens: &[RationalVector]) -> RationalVector {
    coeffs.iter().zip(gens).fold(RationalVector::zeros(dim), |acc, (c, g)| acc.add_scaled(c, g))
}

fn sum(dim: usize, gens: &[RationalVector]) -> RationalVector {
    gens.iter().fold(RationalVector::zeros(dim), |acc, g| &acc + g)
}

impl ConeDecision {
    /// Re-evaluates this decision as an answer to "is `v` in `Cone(gens)`?".
    pub fn recheck_cone(&self, v: &RationalVector, gens: &[RationalVector]) -> bool {
        match (&self.witness, self.holds) {
            (ConeWitness::Coefficients { lambdas }, true) => {
                lambdas.len() == gens.len()
                    && lambdas.iter().all(|l| !l.is_negative())
                    && combination(v.dim(), lambdas, gens) == *v
            }
            (ConeWitness::SeparatingDirection { w }, false) => {
                w.dim() == v.dim() && gens.iter().all(|g| !w.dot(g).is_negative()) && w.dot(v).is_negative()
            }
            _ => false,
        }
    }

    /// Re-evaluates this decision as an answer to "is `v` in `RelInt(Cone(gens))`?".
    pub fn recheck_relint(&self, v: &RationalVector, gens: &[RationalVector]) -> bool {
        match (&self.witness, self.holds) {
            (ConeWitness::Coefficients { lambdas }, true) => {
                lambdas.len() == gens.len()
                    && lambdas.iter().all(Signed::is_positive)
                    && combination(v.dim(), lambdas, gens) == *v
            }
            (ConeWitness::SeparatingDirection { w }, false) => stiemke_separates(w, v, gens),
            _ => false,
        }
    }
}

/// `w . g <= 0` for all generators, `w . v >= 0`, with one inequality strict.
pub(crate) fn stiemke_separates(w: &RationalVector, v: &RationalVector, gens: &[RationalVector]) -> bool {
    if w.dim() != v.dim() {
        return false;
    }
    let dg: Vec<Q> = gens.iter().map(|g| w.dot(g)).collect();
    let dv = w.dot(v);
    dg.iter().all(|d| !d.is_positive()) && !dv.is_negative() && (dg.iter().any(Signed::is_negative) || dv.is_positive())
}

/// Free variable `w` split as `w+ - w-`: returns the row coefficients for `a . w`.
fn split_row(a: &RationalVector, extra: usize, slot: Option<(usize, Q)>) -> Vec<Q> {
    let d = a.dim();
    let mut row = Vec::with_capacity(2 * d + extra);
    row.extend(a.iter().cloned());
    row.extend(a.iter().map(|x| -x));
    row.extend((0..extra).map(|_| Q::zero()));
    if let Some((i, c)) = slot {
        row[2 * d + i] = c;
    }
    row
}

fn unsplit(x: &[Q], d: usize) -> RationalVector {
    RationalVector::new((0..d).map(|i| &x[i] - &x[d + i]).collect())
}

/// Farkas direction: `w . g >= 0` for all `g`, `w . v = -1`.
fn farkas_direction(v: &RationalVector, gens: &[RationalVector]) -> Option<RationalVector> {
    let d = v.dim();
    let m = gens.len();
    let mut lp = StandardLp::new(2 * d + m);
    for (i, g) in gens.iter().enumerate() {
        lp.add_row(split_row(g, m, Some((i, -Q::one()))), Q::zero());
    }
    lp.add_row(split_row(v, m, None), -Q::one());
    match lp.solve() {
        LpOutcome::Optimal(x) => Some(unsplit(&x, d)),
        _ => None,
    }
}

/// Stiemke-form direction: `w . g <= 0`, `w . v >= 0`, `sum(-w . g) + w . v = 1`.
fn stiemke_direction(v: &RationalVector, gens: &[RationalVector]) -> Option<RationalVector> {
    let d = v.dim();
    let m = gens.len();
    let mut lp = StandardLp::new(2 * d + m + 1);
    for (i, g) in gens.iter().enumerate() {
        lp.add_row(split_row(g, m + 1, Some((i, Q::one()))), Q::zero());
    }
    lp.add_row(split_row(v, m + 1, Some((m, -Q::one()))), Q::zero());
    let normal = &(-sum(d, gens)) + v;
    lp.add_row(split_row(&normal, m + 1, None), Q::one());
    match lp.solve() {
        LpOutcome::Optimal(x) => Some(unsplit(&x, d)),
        _ => None,
    }
}

/// A basic feasible solution of `v = sum lambda_i g_i`, `lambda >= 0`.
///
/// The support of the returned coefficients indexes linearly independent
/// generators, so `v` lies in the relative interior of the cone they span.
pub fn basic_cone_combination(v: &RationalVector, gens: &[RationalVector]) -> Result<Option<Vec<Q>>> {
    check_dims(v.dim(), gens)?;
    if gens.is_empty() {
        return Ok(v.is_zero().then(Vec::new));
    }
    let mut lp = StandardLp::new(gens.len());
    for k in 0..v.dim() {
        lp.add_row(gens.iter().map(|g| g[k].clone()).collect(), v[k].clone());
    }
    Ok(match lp.solve() {
        LpOutcome::Optimal(x) => Some(x),
        _ => None,
    })
}

/// Is `v` a nonnegative combination of `gens`?
pub fn cone_member(v: &RationalVector, gens: &[RationalVector]) -> Result<ConeDecision> {
    match basic_cone_combination(v, gens)? {
        Some(lambdas) => Ok(ConeDecision { holds: true, witness: ConeWitness::Coefficients { lambdas } }),
        None => {
            let w = farkas_direction(v, gens).expect("Farkas alternative must be feasible when the cone LP is not");
            Ok(ConeDecision { holds: false, witness: ConeWitness::SeparatingDirection { w } })
        }
    }
}

/// Maximizes `delta` subject to `v = sum lambda_i g_i`, `lambda_i >= delta`, `0 <= delta <= 1`.
/// Returns the coefficients when the optimum is positive.
fn strictly_positive_combination(v: &RationalVector, gens: &[RationalVector]) -> Option<Vec<Q>> {
    let d = v.dim();
    let m = gens.len();
    let total = sum(d, gens);
    // Variables: mu_1..mu_m, delta, slack; lambda_i = mu_i + delta.
    let mut lp = StandardLp::new(m + 2);
    lp.c[m] = -Q::one();
    for k in 0..d {
        let mut row: Vec<Q> = gens.iter().map(|g| g[k].clone()).collect();
        row.push(total[k].clone());
        row.push(Q::zero());
        lp.add_row(row, v[k].clone());
    }
    let mut cap = vec![Q::zero(); m + 2];
    cap[m] = Q::one();
    cap[m + 1] = Q::one();
    lp.add_row(cap, Q::one());
    match lp.solve() {
        LpOutcome::Optimal(x) if x[m].is_positive() => Some((0..m).map(|i| &x[i] + &x[m]).collect()),
        _ => None,
    }
}

/// Is `v` a strictly positive combination of `gens`, i.e. in `RelInt(Cone(gens))`?
pub fn relint_member(v: &RationalVector, gens: &[RationalVector]) -> Result<ConeDecision> {
    check_dims(v.dim(), gens)?;
    if gens.is_empty() {
        return Ok(if v.is_zero() {
            ConeDecision { holds: true, witness: ConeWitness::Coefficients { lambdas: vec![] } }
        } else {
            ConeDecision { holds: false, witness: ConeWitness::SeparatingDirection { w: v.clone() } }
        });
    }
    match strictly_positive_combination(v, gens) {
        Some(lambdas) => Ok(ConeDecision { holds: true, witness: ConeWitness::Coefficients { lambdas } }),
        None => {
            let w = stiemke_direction(v, gens).expect("Stiemke alternative must be feasible when the strict LP is not");
            Ok(ConeDecision { holds: false, witness: ConeWitness::SeparatingDirection { w } })
        }
    }
}

/// Outcome of `RelInt(Cone(gens2)) ⊆ RelInt(Cone(gens1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub holds: bool,
    /// A point of `RelInt(Cone(gens2))`. When containment fails it lies outside
    /// `RelInt(Cone(gens1))`.
    pub probe: RationalVector,
    /// Strictly positive coefficients of `probe` over `gens2`.
    #[serde(serialize_with = "ser_qs", deserialize_with = "de_qs")]
    pub probe_coeffs: Vec<Q>,
    /// Answer to "is `probe` in `RelInt(Cone(gens1))`?".
    pub decision: ConeDecision,
}

impl Containment {
    pub fn recheck(&self, gens2: &[RationalVector], gens1: &[RationalVector]) -> bool {
        let d = self.probe.dim();
        self.probe_coeffs.len() == gens2.len()
            && self.probe_coeffs.iter().all(Signed::is_positive)
            && combination(d, &self.probe_coeffs, gens2) == self.probe
            && self.decision.holds == self.holds
            && self.decision.recheck_relint(&self.probe, gens1)
    }
}

/// Decides `RelInt(Cone(gens2)) ⊆ RelInt(Cone(gens1))`.
///
/// Holds iff every generator of the inner cone lies in the outer cone and the
/// sum of the inner generators (a relative-interior point) lies in the
/// relative interior of the outer cone.
pub fn relint_contained(gens2: &[RationalVector], gens1: &[RationalVector], dim: usize) -> Result<Containment> {
    check_dims(dim, gens2)?;
    check_dims(dim, gens1)?;
    let ones = vec![Q::one(); gens2.len()];
    for (i, g) in gens2.iter().enumerate() {
        let member = cone_member(g, gens1)?;
        if let ConeWitness::SeparatingDirection { w } = &member.witness {
            // Push the probe toward g until it leaves the outer cone:
            // probe = (M + 1) g + sum_{j != i} g_j with w . probe < 0.
            let rest = &sum(dim, gens2) - g;
            let wg = w.dot(g); // < 0
            let wr = w.dot(&rest);
            let mut big = Q::one();
            if wr.is_positive() {
                big = (&wr / (-&wg)).floor() + Q::one();
            }
            let probe = rest.add_scaled(&(&big + Q::one()), g);
            let mut coeffs = ones.clone();
            coeffs[i] = &big + Q::one();
            let decision = ConeDecision { holds: false, witness: ConeWitness::SeparatingDirection { w: -w.clone() } };
            return Ok(Containment { holds: false, probe, probe_coeffs: coeffs, decision });
        }
    }
    let probe = sum(dim, gens2);
    let decision = relint_member(&probe, gens1)?;
    Ok(Containment { holds: decision.holds, probe, probe_coeffs: ones, decision })
}

/// A common point of `RelInt(Cone(gens1))` and `RelInt(Cone(gens2))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub point: RationalVector,
    #[serde(serialize_with = "ser_qs", deserialize_with = "de_qs")]
    pub coeffs1: Vec<Q>,
    #[serde(serialize_with = "ser_qs", deserialize_with = "de_qs")]
    pub coeffs2: Vec<Q>,
}

impl Intersection {
    pub fn recheck(&self, gens1: &[RationalVector], gens2: &[RationalVector]) -> bool {
        let d = self.point.dim();
        self.coeffs1.len() == gens1.len()
            && self.coeffs2.len() == gens2.len()
            && self.coeffs1.iter().chain(&self.coeffs2).all(Signed::is_positive)
            && combination(d, &self.coeffs1, gens1) == self.point
            && combination(d, &self.coeffs2, gens2) == self.point
    }
}

/// Decides whether the relative interiors of two cones meet, returning a common point.
pub fn relint_intersect(gens1: &[RationalVector], gens2: &[RationalVector], dim: usize) -> Result<Option<Intersection>> {
    check_dims(dim, gens1)?;
    check_dims(dim, gens2)?;
    let zero = RationalVector::zeros(dim);
    match (gens1.is_empty(), gens2.is_empty()) {
        (true, true) => {
            return Ok(Some(Intersection { point: zero, coeffs1: vec![], coeffs2: vec![] }));
        }
        (true, false) | (false, true) => {
            let other = if gens1.is_empty() { gens2 } else { gens1 };
            let dec = relint_member(&zero, other)?;
            return Ok(match dec.witness {
                ConeWitness::Coefficients { lambdas } if dec.holds => {
                    let (coeffs1, coeffs2) = if gens1.is_empty() { (vec![], lambdas) } else { (lambdas, vec![]) };
                    Some(Intersection { point: zero, coeffs1, coeffs2 })
                }
                _ => None,
            });
        }
        (false, false) => {}
    }
    let (m1, m2) = (gens1.len(), gens2.len());
    let s1 = sum(dim, gens1);
    let s2 = sum(dim, gens2);
    // Variables: mu (m1), rho (m2), delta, slack.
    let n = m1 + m2 + 2;
    let mut lp = StandardLp::new(n);
    lp.c[m1 + m2] = -Q::one();
    for k in 0..dim {
        let mut row = Vec::with_capacity(n);
        row.extend(gens1.iter().map(|g| g[k].clone()));
        row.extend(gens2.iter().map(|g| -g[k].clone()));
        row.push(&s1[k] - &s2[k]);
        row.push(Q::zero());
        lp.add_row(row, Q::zero());
    }
    let mut cap = vec![Q::zero(); n];
    cap[m1 + m2] = Q::one();
    cap[m1 + m2 + 1] = Q::one();
    lp.add_row(cap, Q::one());
    match lp.solve() {
        LpOutcome::Optimal(x) if x[m1 + m2].is_positive() => {
            let delta = &x[m1 + m2];
            let coeffs1: Vec<Q> = (0..m1).map(|i| &x[i] + delta).collect();
            let coeffs2: Vec<Q> = (0..m2).map(|j| &x[m1 + j] + delta).collect();
            let point = combination(dim, &coeffs1, gens1);
            Ok(Some(Intersection { point, coeffs1, coeffs2 }))
        }
        _ => Ok(None),
    }
}

/// Is `p` on the relative boundary of `conv(points)`?
///
/// A point set whose affine hull is a single point counts as boundary.
pub fn on_relative_hull_boundary(p: &RationalVector, points: &[RationalVector]) -> Result<bool> {
    check_dims(p.dim(), points)?;
    if !points.contains(p) {
        return Err(Error::PointNotInSet(p.clone()));
    }
    if points.iter().all(|x| x == p) {
        return Ok(true);
    }
    let lift = |x: &RationalVector| {
        let mut c = x.coords().to_vec();
        c.push(Q::one());
        RationalVector::new(c)
    };
    let lifted: Vec<RationalVector> = points.iter().map(lift).collect();
    Ok(!relint_member(&lift(p), &lifted)?.holds)
}
