//! Exact rational geometry: orientation predicates, simplex intersection by
//! linear programming, embedding verification and linking numbers.
//!
//! Everything here is exact; no floating point is used.

mod embedding;
mod linking;
mod lp;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use embedding::{
    simplex_pair_test, verify_embedding, Coordinates, EmbeddingCertificate, EmbeddingReport, EmbeddingViolation,
    PairVerdict, VerifyOptions,
};
pub use linking::{find_linked_cycle_pair, linking_number, simple_cycles, LinkedPair, PolygonalCurve};
pub use lp::{maximize, LpOutcome};
pub(crate) use embedding::{check_pair, PairCheck, PlacedFace};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A point of `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point { coords: coords.iter().map(|&c| rational(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn sub(&self, other: &Point) -> Vec<Rational> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()
    }

    /// All coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> Rational {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// The point with one more coordinate.
    pub fn extended(&self, last: Rational) -> Point {
        let mut coords = self.coords.clone();
        coords.push(last);
        Point { coords }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Rank of a list of rational vectors.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Sign of a square rational determinant.
fn determinant_sign(mut m: Vec<Vec<Rational>>) -> i8 {
    let n = m.len();
    let mut sign = 1i8;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return 0 };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        if m[c][c].is_negative() {
            sign = -sign;
        }
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[i][k] -= t;
                }
            }
        }
    }
    sign
}

/// Sign of `det(p1 - p0, ..., pd - p0)` for `d + 1` points of `Q^d`.
pub fn orientation(points: &[Point]) -> Result<i8> {
    let d = points.len().checked_sub(1).ok_or_else(|| Error::Dimension("orientation needs points".into()))?;
    if points.iter().any(|p| p.dim() != d) {
        return Err(Error::Dimension(format!("orientation needs {} points in dimension {d}", d + 1)));
    }
    Ok(determinant_sign(points[1..].iter().map(|p| p.sub(&points[0])).collect()))
}

/// The convex hull of affinely independent points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomSimplex {
    points: Vec<Point>,
}

impl GeomSimplex {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Degenerate("simplex without points".into()));
        };
        let d = first.dim();
        if points.iter().any(|p| p.dim() != d) {
            return Err(Error::Dimension("simplex points of mixed dimension".into()));
        }
        if points.len() > d + 1 {
            return Err(Error::Degenerate(format!("{} points cannot be independent in dimension {d}", points.len())));
        }
        let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| p.sub(first)).collect();
        if rank(&diffs) != diffs.len() {
            return Err(Error::Degenerate(format!(
                "points {} are affinely dependent",
                points.iter().map(Point::to_string).collect::<Vec<_>>().join(" ")
            )));
        }
        Ok(GeomSimplex { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn dim(&self) -> usize {
        self.points.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_orientation() {
        let p = |x, y| Point::from_ints(&[x, y]);
        assert_eq!(orientation(&[p(0, 0), p(1, 0), p(0, 1)]).unwrap(), 1);
        assert_eq!(orientation(&[p(1, 0), p(0, 0), p(0, 1)]).unwrap(), -1);
        assert_eq!(orientation(&[p(0, 0), p(1, 1), p(3, 3)]).unwrap(), 0);
        assert!(orientation(&[p(0, 0), p(1, 1)]).is_err());
    }

    #[test]
    fn spatial_orientation() {
        let pts = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|c| Point::from_ints(&c));
        assert_eq!(orientation(&pts).unwrap(), 1);
        let mut swapped = pts.clone();
        swapped.swap(2, 3);
        assert_eq!(orientation(&swapped).unwrap(), -1);
    }

    #[test]
    fn degenerate_simplices() {
        let a = Point::from_ints(&[0, 0, 0]);
        let b = Point::from_ints(&[1, 1, 1]);
        let c = Point::from_ints(&[2, 2, 2]);
        assert!(GeomSimplex::new(vec![a.clone(), b.clone()]).is_ok());
        assert!(matches!(GeomSimplex::new(vec![a.clone(), b, c]), Err(Error::Degenerate(_))));
        assert!(GeomSimplex::new(vec![a.clone(), a]).is_err());
    }
}
