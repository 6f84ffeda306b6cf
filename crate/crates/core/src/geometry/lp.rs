//! Dense two-phase simplex over the rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

struct Tableau {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis.iter().enumerate().map(|(i, &b)| &cost[b] * &self.t[i][self.cols]).sum()
    }

    /// Maximizes `cost · x` over columns `< allowed`. Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced: Rational =
                    &cost[j] - self.basis.iter().enumerate().map(|(i, &b)| &cost[b] * &self.t[i][j]).sum::<Rational>();
                reduced.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[i][self.cols] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, c);
        }
    }
}

/// Maximizes `c · x` subject to `A x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "rhs length");
    assert!(a.iter().all(|row| row.len() == n), "constraint width");
    let cols = n + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r: Vec<Rational> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        r.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(r);
    }
    let mut tab = Tableau { t, basis: (n..cols).collect(), cols };

    let phase1: Vec<Rational> = (0..cols).map(|j| if j < n { Rational::zero() } else { -Rational::one() }).collect();
    tab.optimize(&phase1, cols);
    if !tab.value(&phase1).is_zero() {
        return LpOutcome::Infeasible;
    }
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    let mut cost: Vec<Rational> = c.to_vec();
    cost.extend((0..m).map(|_| Rational::zero()));
    if !tab.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.t[i][cols].clone();
        }
    }
    LpOutcome::Optimal { value: tab.value(&cost), x }
}
