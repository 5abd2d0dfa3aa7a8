//! Exact planar convex hulls.

use num_traits::{Signed, Zero};

use crate::rational::{RationalVector, Q};

/// Twice the signed area of `(a, b, c)`; positive for a left turn.
pub fn orientation(a: &RationalVector, b: &RationalVector, c: &RationalVector) -> Q {
    (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
}

/// Hull vertices in counterclockwise order, without collinear points.
///
/// Collinear input yields its two extreme points; a single point yields itself.
pub fn convex_hull(points: &[RationalVector]) -> Vec<RationalVector> {
    let mut pts: Vec<RationalVector> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<RationalVector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !orientation(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RationalVector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !orientation(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Is `p` on the closed segment `[a, b]`?
pub fn on_segment(a: &RationalVector, b: &RationalVector, p: &RationalVector) -> bool {
    if !orientation(a, b, p).is_zero() {
        return false;
    }
    let within = |i: usize| {
        let (lo, hi) = if a[i] <= b[i] { (&a[i], &b[i]) } else { (&b[i], &a[i]) };
        *lo <= p[i] && p[i] <= *hi
    };
    within(0) && within(1)
}

/// A side of the hull: its two corners and every input point lying on it,
/// ordered from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullFace {
    pub start: RationalVector,
    pub end: RationalVector,
    pub members: Vec<RationalVector>,
}

/// Faces of the hull of `points` in counterclockwise order.
///
/// A collinear set has one face; a single point has none.
pub fn hull_faces(points: &[RationalVector]) -> Vec<HullFace> {
    let hull = convex_hull(points);
    let sides: Vec<(RationalVector, RationalVector)> = match hull.len() {
        0 | 1 => vec![],
        2 => vec![(hull[0].clone(), hull[1].clone())],
        n => (0..n).map(|i| (hull[i].clone(), hull[(i + 1) % n].clone())).collect(),
    };
    sides
        .into_iter()
        .map(|(start, end)| {
            let mut members: Vec<RationalVector> = points.iter().filter(|p| on_segment(&start, &end, p)).cloned().collect();
            members.sort_by_key(|p| {
                let d = p - &start;
                d.dot(&(&end - &start))
            });
            members.dedup();
            HullFace { start, end, members }
        })
        .collect()
}
