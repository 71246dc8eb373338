//! Exact two-phase simplex method over the rationals.
//!
//! Solves `maximize c·x subject to A x = b, x >= 0` with Bland's rule, so
//! every pivot sequence terminates. Only used on desk-sized systems.

use num_traits::{Signed, Zero};

use super::point::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, solution: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn run(&mut self, cost: &[Rational], allowed: usize) -> Step {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(Rational::zero(), |acc, (row, &b)| acc + &cost[b] * &row[j]);
                (&cost[j] - z).is_positive()
            });
            let Some(j) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Step::Unbounded;
            };
            self.pivot(r, j);
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, &b)| acc + &cost[b] * self.rhs(i))
    }
}

/// Maximizes `c·x` over `{x >= 0 : a x = b}`.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    let width = n + m;
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, rhs))| {
            let flip = rhs.is_negative();
            let mut r: Vec<Rational> = row.iter().map(|x| if flip { -x.clone() } else { x.clone() }).collect();
            r.extend((0..m).map(|k| {
                if k == i {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            r.push(if flip { -rhs.clone() } else { rhs.clone() });
            r
        })
        .collect();
    let mut t = Tableau {
        rows,
        basis: (n..width).collect(),
        width,
    };

    let mut phase1 = vec![Rational::zero(); width];
    for x in phase1.iter_mut().skip(n) {
        *x = Rational::from_integer((-1).into());
    }
    // Phase one is bounded above by zero, so it always reaches an optimum.
    let _ = t.run(&phase1, width);
    if t.objective(&phase1).is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; rows that cannot pivot are redundant.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut phase2 = c.to_vec();
    phase2.resize(width, Rational::zero());
    match t.run(&phase2, n) {
        Step::Unbounded => LpOutcome::Unbounded,
        Step::Optimal => {
            let mut solution = vec![Rational::zero(); n];
            for (i, &bv) in t.basis.iter().enumerate() {
                solution[bv] = t.rhs(i).clone();
            }
            LpOutcome::Optimal {
                value: t.objective(&phase2),
                solution,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::{int, rat};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn solves_textbook_problem() {
        // max 3x + 2y, x + y + s1 = 4, x + 3y + s2 = 6
        let c = row(&[3, 2, 0, 0]);
        let a = vec![row(&[1, 1, 1, 0]), row(&[1, 3, 0, 1])];
        let b = row(&[4, 6]);
        match maximize(&c, &a, &b) {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, int(12));
                assert_eq!(solution[0], int(4));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = -1 with x, y >= 0
        let out = maximize(&row(&[0, 0]), &[row(&[1, 1])], &row(&[-1]));
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // max x, x - y = 1
        let out = maximize(&row(&[1, 0]), &[row(&[1, -1])], &row(&[1]));
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn tolerates_redundant_rows() {
        let c = vec![int(1), int(0)];
        let a = vec![row(&[1, 1]), row(&[2, 2])];
        let b = vec![rat(1, 2), int(1)];
        match maximize(&c, &a, &b) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
