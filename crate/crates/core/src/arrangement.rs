//! Sign cells of a central hyperplane arrangement.
//!
//! For a direction set `D`, every nonzero `w` induces a sign vector
//! `(sign(w . d))_{d in D}`. [`enumerate_sign_cells`] returns each realizable
//! sign vector once, together with an exact witness `w`.
//!
//! Directions are first collapsed to lines (antiparallel and parallel copies
//! share a line and differ only by a sign flip). The faces of the arrangement
//! are then generated flat by flat: a face of a flat `F` is obtained by
//! pushing a relative-interior point of a face of a codimension-one subflat
//! off that subflat, in both directions, by a step small enough that no other
//! hyperplane is crossed.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::nullspace;
use crate::rational::{RationalVector, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCell {
    /// `sign(w . d)` for each input direction, in input order.
    pub signs: Vec<i8>,
    pub witness: RationalVector,
}

impl SignCell {
    pub fn recheck(&self, directions: &[RationalVector]) -> bool {
        !self.witness.is_zero()
            && self.signs.len() == directions.len()
            && directions.iter().zip(&self.signs).all(|(d, &s)| sign(&self.witness.dot(d)) == s)
    }
}

pub(crate) fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

struct Flat {
    /// Lines whose hyperplane contains the flat.
    zero: BTreeSet<usize>,
    basis: Vec<RationalVector>,
}

/// All realizable sign vectors of nonzero directions `w` against `directions`.
///
/// Output is sorted by sign vector. Zero input directions always get sign 0.
pub fn enumerate_sign_cells(directions: &[RationalVector], dim: usize) -> Vec<SignCell> {
    let mut lines: Vec<RationalVector> = Vec::new();
    let mut line_of: HashMap<RationalVector, usize> = HashMap::new();
    let mut map: Vec<Option<(usize, i8)>> = Vec::with_capacity(directions.len());
    for d in directions {
        let (rep, s) = d.line_representative();
        if s == 0 {
            map.push(None);
            continue;
        }
        let id = *line_of.entry(rep.clone()).or_insert_with(|| {
            lines.push(rep);
            lines.len() - 1
        });
        map.push(Some((id, s)));
    }

    let faces = line_faces(&lines, dim);
    let mut cells: Vec<SignCell> = faces
        .into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(tau, witness)| {
            let signs = map.iter().map(|m| m.map_or(0, |(l, s)| tau[l] * s)).collect();
            SignCell { signs, witness }
        })
        .collect();
    cells.sort_by(|a, b| a.signs.cmp(&b.signs));
    cells
}

/// Faces of the arrangement of `lines` (as sign vector over lines, witness),
/// including the zero face.
fn line_faces(lines: &[RationalVector], dim: usize) -> Vec<(Vec<i8>, RationalVector)> {
    let n = lines.len();
    let whole = Flat { zero: BTreeSet::new(), basis: nullspace(&[], dim) };

    // Flats by dimension, top down.
    let mut by_dim: Vec<Vec<Flat>> = (0..=dim).map(|_| Vec::new()).collect();
    by_dim[dim].push(whole);
    // children[k][i] = indices into by_dim[k-1] of codimension-one subflats of by_dim[k][i]
    let mut children: Vec<Vec<Vec<usize>>> = (0..=dim).map(|_| Vec::new()).collect();
    let mut index_of: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for k in (1..=dim).rev() {
        let mut kids_per_flat = Vec::with_capacity(by_dim[k].len());
        for fi in 0..by_dim[k].len() {
            let mut kids = Vec::new();
            let (zero, basis) = (by_dim[k][fi].zero.clone(), by_dim[k][fi].basis.clone());
            for j in 0..n {
                if zero.contains(&j) {
                    continue;
                }
                let sub = intersect(&basis, &lines[j]);
                let sub_zero: BTreeSet<usize> =
                    (0..n).filter(|&l| sub.iter().all(|b| lines[l].dot(b).is_zero())).collect();
                let id = match index_of.get(&sub_zero) {
                    Some(&id) => id,
                    None => {
                        let id = by_dim[k - 1].len();
                        index_of.insert(sub_zero.clone(), id);
                        by_dim[k - 1].push(Flat { zero: sub_zero, basis: sub });
                        id
                    }
                };
                if !kids.contains(&id) {
                    kids.push(id);
                }
            }
            kids_per_flat.push(kids);
        }
        children[k] = kids_per_flat;
        index_of.clear();
    }

    // Faces of each flat, bottom up: faces[k][i] = relatively open cells of by_dim[k][i].
    let mut faces: Vec<Vec<Vec<(Vec<i8>, RationalVector)>>> = (0..=dim).map(|_| Vec::new()).collect();
    for k in 0..=dim {
        for fi in 0..by_dim[k].len() {
            let flat = &by_dim[k][fi];
            let out = if flat.zero.len() == n {
                // No hyperplane cuts this flat: the flat itself is one cell.
                let w = flat.basis.first().cloned().unwrap_or_else(|| RationalVector::zeros(dim));
                vec![(vec![0; n], w)]
            } else {
                let mut cells: BTreeMap<Vec<i8>, RationalVector> = BTreeMap::new();
                for &ci in &children[k][fi] {
                    let child = &by_dim[k - 1][ci];
                    let cut = *child.zero.difference(&flat.zero).next().expect("child flat is strictly smaller");
                    let u = flat
                        .basis
                        .iter()
                        .find(|b| !lines[cut].dot(b).is_zero())
                        .expect("a basis vector leaves the cutting hyperplane")
                        .clone();
                    for (_, p) in &faces[k - 1][ci] {
                        let t = step(lines, &child.zero, p, &u);
                        for dir in [Q::one(), -Q::one()] {
                            let w = p.add_scaled(&(&t * &dir), &u);
                            let tau: Vec<i8> = lines.iter().map(|l| sign(&l.dot(&w))).collect();
                            cells.entry(tau).or_insert(w);
                        }
                    }
                }
                cells.into_iter().collect()
            };
            faces[k].push(out);
        }
    }

    let mut all: BTreeMap<Vec<i8>, RationalVector> = BTreeMap::new();
    for per_dim in faces {
        for per_flat in per_dim {
            for (tau, w) in per_flat {
                all.entry(tau).or_insert(w);
            }
        }
    }
    all.into_iter().collect()
}

/// Basis of `span(basis) ∩ normal^⊥`.
fn intersect(basis: &[RationalVector], normal: &RationalVector) -> Vec<RationalVector> {
    // Coefficients c with sum c_i (normal . b_i) = 0.
    let row = RationalVector::new(basis.iter().map(|b| normal.dot(b)).collect());
    nullspace(&[row], basis.len())
        .into_iter()
        .map(|c| {
            c.iter()
                .zip(basis)
                .fold(RationalVector::zeros(normal.dim()), |acc, (ci, b)| acc.add_scaled(ci, b))
                .primitive()
        })
        .collect()
}

/// Largest safe step: half the distance to the nearest hyperplane not containing `p`.
fn step(lines: &[RationalVector], zero: &BTreeSet<usize>, p: &RationalVector, u: &RationalVector) -> Q {
    let mut t = Q::one();
    for (l, d) in lines.iter().enumerate() {
        if zero.contains(&l) {
            continue;
        }
        let du = d.dot(u);
        if du.is_zero() {
            continue;
        }
        let bound = d.dot(p).abs() / (du.abs() * Q::from_integer(2.into()));
        if bound < t {
            t = bound;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{LpOutcome, StandardLp};
    use crate::rv;

    /// Brute force: decide every sign vector over lines by an LP with a strictness margin.
    fn realizable(lines: &[RationalVector], tau: &[i8], dim: usize) -> bool {
        if tau.iter().all(|&s| s == 0) {
            return crate::linalg::rank(lines) < dim;
        }
        // w = w+ - w-, slack per strict row, margin t in [0, 1]; maximize t.
        let strict: Vec<usize> = (0..tau.len()).filter(|&i| tau[i] != 0).collect();
        let nv = 2 * dim + strict.len() + 2;
        let mut lp = StandardLp::new(nv);
        lp.c[2 * dim + strict.len()] = -Q::one();
        let row_for = |l: &RationalVector, scale: i8| {
            let mut row = vec![Q::zero(); nv];
            for k in 0..dim {
                row[k] = &l[k] * Q::from_integer(scale.into());
                row[dim + k] = -&row[k];
            }
            row
        };
        for (i, &s) in tau.iter().enumerate() {
            if s == 0 {
                let row = row_for(&lines[i], 1);
                lp.add_row(row, Q::zero());
            }
        }
        for (si, &i) in strict.iter().enumerate() {
            let mut row = row_for(&lines[i], tau[i]);
            row[2 * dim + si] = -Q::one();
            row[2 * dim + strict.len()] = -Q::one();
            lp.add_row(row, Q::zero());
        }
        let mut cap = vec![Q::zero(); nv];
        cap[2 * dim + strict.len()] = Q::one();
        cap[2 * dim + strict.len() + 1] = Q::one();
        lp.add_row(cap, Q::one());
        matches!(lp.solve(), LpOutcome::Optimal(x) if x[2 * dim + strict.len()].is_positive())
    }

    fn brute_force(dirs: &[RationalVector], dim: usize) -> BTreeSet<Vec<i8>> {
        let mut out = BTreeSet::new();
        let n = dirs.len();
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let tau: Vec<i8> = (0..n)
                .map(|_| {
                    let s = (c % 3) as i8 - 1;
                    c /= 3;
                    s
                })
                .collect();
            if realizable(dirs, &tau, dim) {
                out.insert(tau);
            }
        }
        out
    }

    fn signs(cells: &[SignCell]) -> BTreeSet<Vec<i8>> {
        cells.iter().map(|c| c.signs.clone()).collect()
    }

    #[test]
    fn single_line() {
        let cells = enumerate_sign_cells(&[rv![1]], 1);
        assert_eq!(signs(&cells), [vec![-1], vec![1]].into_iter().collect());
        assert!(cells.iter().all(|c| c.recheck(&[rv![1]])));
    }

    #[test]
    fn coordinate_axes_give_eight_faces() {
        let d = [rv![1, 0], rv![0, 1]];
        let cells = enumerate_sign_cells(&d, 2);
        assert_eq!(cells.len(), 8);
        assert!(cells.iter().all(|c| c.recheck(&d)));
    }

    #[test]
    fn parallel_directions_share_signs() {
        let d = [rv![1, 0], rv![2, 0]];
        let cells = enumerate_sign_cells(&d, 2);
        assert_eq!(signs(&cells), [vec![-1, -1], vec![0, 0], vec![1, 1]].into_iter().collect());
        assert_eq!(signs(&cells), brute_force(&d, 2));
        assert!(cells.iter().all(|c| c.recheck(&d)));
    }

    #[test]
    fn antiparallel_directions_flip() {
        let d = [rv![1, 1], rv![-2, -2], rv![0, 1]];
        let cells = enumerate_sign_cells(&d, 2);
        assert!(cells.iter().all(|c| c.signs[0] == -c.signs[1] && c.recheck(&d)));
        assert_eq!(cells.len(), 8);
    }

    #[test]
    fn matches_brute_force_in_three_dimensions() {
        let d = [rv![1, 0, 0], rv![0, 1, 0], rv![1, 1, 0], rv![1, -1, 2], rv![0, 1, -1]];
        let cells = enumerate_sign_cells(&d, 3);
        assert!(cells.iter().all(|c| c.recheck(&d)));
        assert_eq!(signs(&cells), brute_force(&d, 3));
    }

    #[test]
    fn non_spanning_set_includes_zero_cell() {
        let d = [rv![1, 0, 0], rv![0, 1, 0]];
        let cells = enumerate_sign_cells(&d, 3);
        assert_eq!(cells.len(), 9);
        assert!(cells.iter().any(|c| c.signs == vec![0, 0]));
        assert_eq!(signs(&cells), brute_force(&d, 3));
    }
}
