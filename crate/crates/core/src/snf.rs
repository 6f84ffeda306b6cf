//! Dense integer matrices and their Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntegerMatrix { rows: r, cols: c, data: rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j].clone();
            if !s.is_zero() {
                self.data[target * self.cols + j] += factor * s;
            }
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + source].clone();
            if !s.is_zero() {
                self.data[i * self.cols + target] += factor * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U·A·V = diag(diagonal)` padded with zeros.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// Positive invariant factors `d1 | d2 | ... | dr`.
    pub diagonal: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// The diagonal matrix `S` with the shape of the input.
    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        let mut s = IntegerMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, d) in self.diagonal.iter().enumerate() {
            s.set(i, i, d.clone());
        }
        s
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let mut work = Reduction { m: a.clone(), u: Some(IntegerMatrix::identity(a.rows)), v: Some(IntegerMatrix::identity(a.cols)) };
    let diagonal = work.run();
    SnfResult { rank: diagonal.len(), diagonal, u: work.u.unwrap(), v: work.v.unwrap() }
}

/// Invariant factors only; skips the transform bookkeeping.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    Reduction { m: a.clone(), u: None, v: None }.run()
}

struct Reduction {
    m: IntegerMatrix,
    u: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
}

impl Reduction {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, t: usize, s: usize, f: &BigInt) {
        self.m.add_row(t, s, f);
        if let Some(u) = &mut self.u {
            u.add_row(t, s, f);
        }
    }

    fn add_col(&mut self, t: usize, s: usize, f: &BigInt) {
        self.m.add_col(t, s, f);
        if let Some(v) = &mut self.v {
            v.add_col(t, s, f);
        }
    }

    /// Smallest non-zero |entry| in the trailing block, ties broken by (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m.rows {
            for j in t..self.m.cols {
                let x = self.m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.m.get(bi, bj).abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let (rows, cols) = (self.m.rows, self.m.cols);
        let mut diagonal = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.m.get(t, t).clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    let x = self.m.get(i, t).clone();
                    if !x.is_zero() {
                        let q = x.div_floor(&p);
                        self.add_row(i, t, &-q);
                        dirty |= !self.m.get(i, t).is_zero();
                    }
                }
                for j in t + 1..cols {
                    let x = self.m.get(t, j).clone();
                    if !x.is_zero() {
                        let q = x.div_floor(&p);
                        self.add_col(j, t, &-q);
                        dirty |= !self.m.get(t, j).is_zero();
                    }
                }
                if dirty {
                    // a remainder smaller than the pivot survived; move it up front
                    let (pi, pj) = self.pivot_in_cross(t);
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                // row and column cleared; enforce divisibility on the trailing block
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !self.m.get(i, j).is_multiple_of(&p)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.m.get(t, t).is_negative() {
                self.m.negate_row(t);
                if let Some(u) = &mut self.u {
                    u.negate_row(t);
                }
            }
            diagonal.push(self.m.get(t, t).clone());
            t += 1;
        }
        diagonal
    }

    /// Smallest non-zero entry in row `t` / column `t` (including the corner).
    fn pivot_in_cross(&self, t: usize) -> (usize, usize) {
        let mut cells: Vec<(usize, usize)> = (t..self.m.rows).map(|i| (i, t)).collect();
        cells.extend((t + 1..self.m.cols).map(|j| (t, j)));
        cells
            .into_iter()
            .filter(|&(i, j)| !self.m.get(i, j).is_zero())
            .min_by(|&a, &b| self.m.get(a.0, a.1).abs().cmp(&self.m.get(b.0, b.1).abs()).then(a.cmp(&b)))
            .expect("cross cannot be empty after a non-zero remainder")
    }
}
