//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems are in standard form: minimize `c . x` subject to `A x = b`,
//! `x >= 0`. There are no tolerances; every comparison is exact.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Clone, Debug)]
pub(crate) struct StandardLp {
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal(Vec<Q>),
    Infeasible,
    Unbounded,
}

impl StandardLp {
    pub fn new(num_vars: usize) -> Self {
        StandardLp { a: Vec::new(), b: Vec::new(), c: vec![Q::zero(); num_vars] }
    }

    pub fn num_vars(&self) -> usize {
        self.c.len()
    }

    pub fn add_row(&mut self, row: Vec<Q>, rhs: Q) {
        debug_assert_eq!(row.len(), self.num_vars());
        self.a.push(row);
        self.b.push(rhs);
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::solve(self)
    }
}

struct Tableau {
    rows: Vec<Vec<Q>>, // each row: coefficients ++ [rhs]
    obj: Vec<Q>,       // reduced costs ++ [-objective]
    basis: Vec<usize>,
    ncols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Q>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let t = &f * &pivot_row[j];
                row[j] -= t;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index improving column, lowest-index leaving variable on ties.
    fn run(&mut self, allowed: usize) -> Step {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, enter),
                None => return Step::Unbounded,
            }
        }
    }

    fn solve(lp: &StandardLp) -> LpOutcome {
        let n = lp.num_vars();
        let m = lp.a.len();
        if m == 0 {
            // Only x >= 0: optimum at 0 unless some cost is negative.
            return if lp.c.iter().any(Signed::is_negative) {
                LpOutcome::Unbounded
            } else {
                LpOutcome::Optimal(vec![Q::zero(); n])
            };
        }

        // Phase 1 tableau with one artificial per row.
        let ncols = n + m;
        let mut rows = Vec::with_capacity(m);
        for (i, (row, rhs)) in lp.a.iter().zip(&lp.b).enumerate() {
            let flip = rhs.is_negative();
            let mut t: Vec<Q> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
            t.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
            t.push(if flip { -rhs } else { rhs.clone() });
            rows.push(t);
        }
        let mut obj = vec![Q::zero(); ncols + 1];
        for row in &rows {
            for j in 0..n {
                obj[j] -= &row[j];
            }
            obj[ncols] -= &row[ncols];
        }
        let mut tab = Tableau { rows, obj, basis: (n..n + m).collect(), ncols };
        match tab.run(ncols) {
            Step::Optimal => {}
            Step::Unbounded => unreachable!("phase-one objective is bounded below by zero"),
        }
        if !tab.obj[ncols].is_zero() {
            return LpOutcome::Infeasible;
        }

        // Drive artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= n {
                if let Some(j) = (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                    tab.pivot(i, j);
                    i += 1;
                } else {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                }
            } else {
                i += 1;
            }
        }

        // Phase 2 on the original columns.
        let rows: Vec<Vec<Q>> = tab
            .rows
            .into_iter()
            .map(|mut r| {
                let rhs = r.pop().expect("row has rhs");
                r.truncate(n);
                r.push(rhs);
                r
            })
            .collect();
        let mut obj: Vec<Q> = lp.c.clone();
        obj.push(Q::zero());
        for (row, &bv) in rows.iter().zip(&tab.basis) {
            let cb = &lp.c[bv];
            if !cb.is_zero() {
                for j in 0..=n {
                    obj[j] -= cb * &row[j];
                }
            }
        }
        let mut tab = Tableau { rows, obj, basis: tab.basis, ncols: n };
        match tab.run(n) {
            Step::Unbounded => LpOutcome::Unbounded,
            Step::Optimal => {
                let mut x = vec![Q::zero(); n];
                for (i, &bv) in tab.basis.iter().enumerate() {
                    x[bv] = tab.rhs(i).clone();
                }
                LpOutcome::Optimal(x)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn row(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let mut lp = StandardLp::new(4);
        lp.c = row(&[-1, -1, 0, 0]);
        lp.add_row(row(&[1, 2, 1, 0]), q(4));
        lp.add_row(row(&[3, 1, 0, 1]), q(6));
        let LpOutcome::Optimal(x) = lp.solve() else { panic!() };
        assert_eq!(x[0], qr(8, 5));
        assert_eq!(x[1], qr(6, 5));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = StandardLp::new(1);
        lp.add_row(row(&[1]), q(-1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = StandardLp::new(2);
        lp.c = row(&[-1, 0]);
        lp.add_row(row(&[1, -1]), q(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let mut lp = StandardLp::new(2);
        lp.c = row(&[1, 2]);
        lp.add_row(row(&[1, 1]), q(2));
        lp.add_row(row(&[2, 2]), q(4));
        assert_eq!(lp.solve(), LpOutcome::Optimal(vec![q(2), q(0)]));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance (minimization form).
        let mut lp = StandardLp::new(7);
        lp.c = vec![qr(-3, 4), q(150), qr(-1, 50), q(6), q(0), q(0), q(0)];
        lp.add_row(vec![qr(1, 4), q(-60), qr(-1, 25), q(9), q(1), q(0), q(0)], q(0));
        lp.add_row(vec![qr(1, 2), q(-90), qr(-1, 50), q(3), q(0), q(1), q(0)], q(0));
        lp.add_row(vec![q(0), q(0), q(1), q(0), q(0), q(0), q(1)], q(1));
        let LpOutcome::Optimal(x) = lp.solve() else { panic!() };
        let value: Q = lp.c.iter().zip(&x).map(|(c, x)| c * x).sum();
        assert_eq!(value, qr(-1, 20));
    }
}
