//! Linear-realization checks: `conv(σ) ∩ conv(τ) = conv(σ ∩ τ)` for every pair
//! of faces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::lp::{maximize, LpOutcome};
use super::{orientation, GeomSimplex, Point, Rational};
use crate::complex::{Simplex, SimplicialComplex, VertexLabel};
use crate::error::{Error, Result};

/// A vertex → point assignment of uniform dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    dim: usize,
    points: BTreeMap<VertexLabel, Point>,
}

impl Coordinates {
    pub fn new(dim: usize, points: BTreeMap<VertexLabel, Point>) -> Result<Self> {
        if let Some((v, p)) = points.iter().find(|(_, p)| p.dim() != dim) {
            return Err(Error::Dimension(format!("vertex {v} has {} coordinates, expected {dim}", p.dim())));
        }
        Ok(Coordinates { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, v: &VertexLabel) -> Option<&Point> {
        self.points.get(v)
    }

    pub fn points(&self) -> &BTreeMap<VertexLabel, Point> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn insert(&mut self, v: VertexLabel, p: Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::Dimension(format!("vertex {v} has {} coordinates, expected {}", p.dim(), self.dim)));
        }
        self.points.insert(v, p);
        Ok(())
    }

    /// Largest absolute coordinate over all points.
    pub fn max_abs(&self) -> Rational {
        self.points.values().map(Point::max_abs).max().unwrap_or_else(Rational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.points.values().all(Point::is_integral)
    }

    /// The points of a simplex, in vertex order.
    pub fn simplex_points(&self, s: &Simplex) -> Result<Vec<Point>> {
        s.vertices()
            .iter()
            .map(|v| self.points.get(v).cloned().ok_or_else(|| Error::MissingCoordinate(v.to_string())))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairVerdict {
    Ok,
    Violation(Point),
}

impl PairVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, PairVerdict::Ok)
    }
}

/// Decides whether `conv(σ) ∩ conv(τ)` is exactly the hull of the shared
/// vertices, given as `(index in σ, index in τ)` pairs.
///
/// One LP maximizes the total barycentric weight that `σ` puts on its
/// non-shared vertices over all common points. The intersection is the shared
/// hull iff that optimum is zero; a positive optimum comes with a witness.
pub fn simplex_pair_test(sigma: &GeomSimplex, tau: &GeomSimplex, shared: &[(usize, usize)]) -> Result<PairVerdict> {
    let d = sigma.ambient_dim();
    if tau.ambient_dim() != d {
        return Err(Error::Dimension(format!("simplices live in R^{d} and R^{}", tau.ambient_dim())));
    }
    let (p, q) = (sigma.points(), tau.points());
    for &(i, j) in shared {
        if i >= p.len() || j >= q.len() || p[i] != q[j] {
            return Err(Error::Malformed(format!("shared pair ({i}, {j}) does not name equal vertices")));
        }
    }
    let sigma_shared: Vec<bool> = (0..p.len()).map(|i| shared.iter().any(|&(a, _)| a == i)).collect();
    let tau_all_shared = (0..q.len()).all(|j| shared.iter().any(|&(_, b)| b == j));
    if sigma_shared.iter().all(|&s| s) || tau_all_shared {
        // one simplex is a face of the other
        return Ok(PairVerdict::Ok);
    }

    let (m, n) = (p.len(), q.len());
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(d + 2);
    let mut rhs: Vec<Rational> = Vec::with_capacity(d + 2);
    for k in 0..d {
        let mut row: Vec<Rational> = p.iter().map(|pt| pt.coords()[k].clone()).collect();
        row.extend(q.iter().map(|pt| -&pt.coords()[k]));
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let ones = |lo: usize, hi: usize| -> Vec<Rational> {
        (0..m + n).map(|j| if (lo..hi).contains(&j) { Rational::one() } else { Rational::zero() }).collect()
    };
    rows.push(ones(0, m));
    rhs.push(Rational::one());
    rows.push(ones(m, m + n));
    rhs.push(Rational::one());
    let cost: Vec<Rational> =
        (0..m + n).map(|j| if j < m && !sigma_shared[j] { Rational::one() } else { Rational::zero() }).collect();

    match maximize(&rows, &rhs, &cost) {
        LpOutcome::Infeasible => Ok(PairVerdict::Ok),
        LpOutcome::Unbounded => unreachable!("barycentric weights are bounded"),
        LpOutcome::Optimal { value, x } => {
            if value.is_positive() {
                let mut w = vec![Rational::zero(); d];
                for (lambda, pt) in x[..m].iter().zip(p) {
                    for (acc, c) in w.iter_mut().zip(pt.coords()) {
                        *acc += lambda * c;
                    }
                }
                Ok(PairVerdict::Violation(Point::new(w)))
            } else {
                Ok(PairVerdict::Ok)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Skip pairs that cheap exact tests prove disjoint or properly meeting.
    pub prefilter: bool,
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { prefilter: true, parallel: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub dim: usize,
    pub faces: usize,
    /// Unordered face pairs examined.
    pub pairs_checked: usize,
    /// Of those, pairs settled by the prefilter.
    pub prefiltered: usize,
    pub lp_calls: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingViolation {
    Degenerate { face: Simplex },
    Intersection { first: Simplex, second: Simplex, witness: Point },
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingViolation::Degenerate { face } => write!(f, "face {face} is affinely degenerate"),
            EmbeddingViolation::Intersection { first, second, witness } => {
                write!(f, "faces {first} and {second} meet improperly at {witness}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingReport {
    Certified(EmbeddingCertificate),
    Violated(EmbeddingViolation),
}

impl EmbeddingReport {
    pub fn is_certified(&self) -> bool {
        matches!(self, EmbeddingReport::Certified(_))
    }

    /// Same outcome, ignoring statistics and witnesses.
    pub fn same_verdict(&self, other: &EmbeddingReport) -> bool {
        match (self, other) {
            (EmbeddingReport::Certified(_), EmbeddingReport::Certified(_)) => true,
            (EmbeddingReport::Violated(a), EmbeddingReport::Violated(b)) => match (a, b) {
                (EmbeddingViolation::Degenerate { face: x }, EmbeddingViolation::Degenerate { face: y }) => x == y,
                (
                    EmbeddingViolation::Intersection { first: a1, second: a2, .. },
                    EmbeddingViolation::Intersection { first: b1, second: b2, .. },
                ) => a1 == b1 && a2 == b2,
                _ => false,
            },
            _ => false,
        }
    }
}

pub(crate) struct PlacedFace {
    pub simplex: Simplex,
    pub geom: GeomSimplex,
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

impl PlacedFace {
    pub(crate) fn new(simplex: Simplex, points: Vec<Point>) -> Option<Self> {
        let geom = GeomSimplex::new(points).ok()?;
        let d = geom.ambient_dim();
        let lo = (0..d).map(|k| geom.points().iter().map(|p| &p.coords()[k]).min().unwrap().clone()).collect();
        let hi = (0..d).map(|k| geom.points().iter().map(|p| &p.coords()[k]).max().unwrap().clone()).collect();
        Some(PlacedFace { simplex, geom, lo, hi })
    }
}

pub(crate) enum PairCheck {
    Filtered,
    Solved(PairVerdict),
}

/// Shared vertices of two faces as index pairs.
fn shared_indices(a: &Simplex, b: &Simplex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, v) in a.vertices().iter().enumerate() {
        if let Ok(j) = b.vertices().binary_search(v) {
            out.push((i, j));
        }
    }
    out
}

/// All non-shared vertices of `other` lie strictly on one side of the
/// hyperplane spanned by `flat`, which has exactly `d` vertices in `R^d`.
fn separated_by_hyperplane(flat: &PlacedFace, other: &PlacedFace, shared: &[(usize, usize)], flat_is_first: bool) -> bool {
    let d = flat.geom.ambient_dim();
    if flat.geom.points().len() != d {
        return false;
    }
    let mut side = 0i8;
    for (j, q) in other.geom.points().iter().enumerate() {
        let is_shared = shared.iter().any(|&(a, b)| if flat_is_first { b == j } else { a == j });
        if is_shared {
            continue;
        }
        let mut pts = flat.geom.points().to_vec();
        pts.push(q.clone());
        let s = orientation(&pts).expect("d + 1 points in R^d");
        if s == 0 || (side != 0 && s != side) {
            return false;
        }
        side = s;
    }
    true
}

pub(crate) fn check_pair(a: &PlacedFace, b: &PlacedFace, prefilter: bool) -> PairCheck {
    let shared = shared_indices(&a.simplex, &b.simplex);
    if prefilter {
        if shared.len() == a.simplex.len() || shared.len() == b.simplex.len() {
            return PairCheck::Filtered;
        }
        if shared.is_empty() && (0..a.lo.len()).any(|k| a.hi[k] < b.lo[k] || b.hi[k] < a.lo[k]) {
            return PairCheck::Filtered;
        }
        if separated_by_hyperplane(a, b, &shared, true) || separated_by_hyperplane(b, a, &shared, false) {
            return PairCheck::Filtered;
        }
    }
    PairCheck::Solved(simplex_pair_test(&a.geom, &b.geom, &shared).expect("faces share an ambient space"))
}

/// Checks every face and every unordered pair of faces of `K` under `coords`.
///
/// A violation names the first offending pair in canonical face order,
/// independently of how the work was scheduled.
pub fn verify_embedding(k: &SimplicialComplex, coords: &Coordinates, options: VerifyOptions) -> Result<EmbeddingReport> {
    if let Some(v) = k.vertices().iter().find(|v| coords.get(v).is_none()) {
        return Err(Error::MissingCoordinate(v.to_string()));
    }
    let mut faces = Vec::new();
    for s in k.faces() {
        let pts = coords.simplex_points(&s)?;
        match PlacedFace::new(s.clone(), pts) {
            Some(f) => faces.push(f),
            None => return Ok(EmbeddingReport::Violated(EmbeddingViolation::Degenerate { face: s })),
        }
    }
    let n = faces.len();
    let row = |i: usize| -> std::result::Result<(usize, usize), (usize, Point)> {
        let (mut filtered, mut lp) = (0, 0);
        for j in i + 1..n {
            match check_pair(&faces[i], &faces[j], options.prefilter) {
                PairCheck::Filtered => filtered += 1,
                PairCheck::Solved(PairVerdict::Ok) => lp += 1,
                PairCheck::Solved(PairVerdict::Violation(w)) => return Err((j, w)),
            }
        }
        Ok((filtered, lp))
    };
    let rows: Vec<_> = if options.parallel {
        (0..n).into_par_iter().map(row).collect()
    } else {
        (0..n).map(row).collect()
    };
    let (mut prefiltered, mut lp_calls) = (0, 0);
    for (i, r) in rows.into_iter().enumerate() {
        match r {
            Ok((f, l)) => {
                prefiltered += f;
                lp_calls += l;
            }
            Err((j, witness)) => {
                return Ok(EmbeddingReport::Violated(EmbeddingViolation::Intersection {
                    first: faces[i].simplex.clone(),
                    second: faces[j].simplex.clone(),
                    witness,
                }))
            }
        }
    }
    Ok(EmbeddingReport::Certified(EmbeddingCertificate {
        dim: coords.dim(),
        faces: n,
        pairs_checked: n * n.saturating_sub(1) / 2,
        prefiltered,
        lp_calls,
    }))
}
