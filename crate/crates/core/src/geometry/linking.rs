//! Linking numbers of closed polygons in `R^3` by signed crossing counts.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::embedding::{simplex_pair_test, Coordinates};
use super::{rational, GeomSimplex, Point, Rational};
use crate::complex::{Simplex, SimplicialComplex, VertexLabel};
use crate::error::{Error, Result};

/// Shears tried before giving up on a generic projection.
const MAX_SHEARS: i64 = 256;

/// A simple closed polygon in `R^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonalCurve {
    points: Vec<Point>,
}

impl PolygonalCurve {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::Curve(format!("a closed curve needs at least 3 waypoints, got {n}")));
        }
        if points.iter().any(|p| p.dim() != 3) {
            return Err(Error::Curve("waypoints must lie in R^3".into()));
        }
        if (0..n).any(|i| points[i] == points[(i + 1) % n]) {
            return Err(Error::Curve("consecutive waypoints coincide".into()));
        }
        let curve = PolygonalCurve { points };
        let segs = curve.segments();
        for i in 0..n {
            for j in i + 1..n {
                let shared: &[(usize, usize)] = if j == i + 1 {
                    &[(1, 0)]
                } else if i == 0 && j == n - 1 {
                    &[(0, 1)]
                } else {
                    &[]
                };
                if !simplex_pair_test(&segs[i], &segs[j], shared)?.is_ok() {
                    return Err(Error::Curve(format!("segments {i} and {j} intersect")));
                }
            }
        }
        Ok(curve)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn reversed(&self) -> PolygonalCurve {
        PolygonalCurve { points: self.points.iter().rev().cloned().collect() }
    }

    fn segments(&self) -> Vec<GeomSimplex> {
        let n = self.points.len();
        (0..n)
            .map(|i| GeomSimplex::new(vec![self.points[i].clone(), self.points[(i + 1) % n].clone()]).expect("distinct endpoints"))
            .collect()
    }
}

type Plane = [Rational; 3];

fn shear(p: &Point, k: i64) -> Plane {
    let c = p.coords();
    if k == 0 {
        return [c[0].clone(), c[1].clone(), c[2].clone()];
    }
    let (a, b) = (rational(k), rational(k * k + 1));
    [&c[0] + &a * &c[2], &c[1] + &b * &c[2], c[2].clone()]
}

/// `(q - p) × (r - p)` in the projection plane.
fn cross(p: &Plane, q: &Plane, r: &Plane) -> Rational {
    (&q[0] - &p[0]) * (&r[1] - &p[1]) - (&q[1] - &p[1]) * (&r[0] - &p[0])
}

fn within(p: &Plane, q: &Plane, r: &Plane) -> bool {
    // r collinear with p, q in projection; inside their box
    let between = |k: usize| {
        let (lo, hi) = if p[k] <= q[k] { (&p[k], &q[k]) } else { (&q[k], &p[k]) };
        *lo <= r[k] && r[k] <= *hi
    };
    between(0) && between(1)
}

enum Crossing {
    None,
    Signed(i64),
    Degenerate,
}

/// Contribution of over-crossings of `a b` above `c d`.
fn crossing(a: &Plane, b: &Plane, c: &Plane, d: &Plane) -> Crossing {
    if (a[0] == b[0] && a[1] == b[1]) || (c[0] == d[0] && c[1] == d[1]) {
        return Crossing::Degenerate;
    }
    let (d1, d2) = (cross(a, b, c), cross(a, b, d));
    let (d3, d4) = (cross(c, d, a), cross(c, d, b));
    let strictly = |x: &Rational, y: &Rational| (x.is_positive() && y.is_negative()) || (x.is_negative() && y.is_positive());
    if strictly(&d1, &d2) && strictly(&d3, &d4) {
        let t = &d3 / (&d3 - &d4);
        let u = &d1 / (&d1 - &d2);
        let z_ab = &a[2] + &t * (&b[2] - &a[2]);
        let z_cd = &c[2] + &u * (&d[2] - &c[2]);
        if z_ab <= z_cd {
            return Crossing::None;
        }
        let o = [&b[0] - &a[0], &b[1] - &a[1]];
        let w = [&d[0] - &c[0], &d[1] - &c[1]];
        let s = &o[0] * &w[1] - &o[1] * &w[0];
        return Crossing::Signed(if s.is_positive() { 1 } else { -1 });
    }
    let touches = (d1.is_zero() && within(a, b, c))
        || (d2.is_zero() && within(a, b, d))
        || (d3.is_zero() && within(c, d, a))
        || (d4.is_zero() && within(c, d, b));
    if touches {
        Crossing::Degenerate
    } else {
        Crossing::None
    }
}

fn boxes_overlap(s: &GeomSimplex, t: &GeomSimplex) -> bool {
    (0..3).all(|k| {
        let lo = |g: &GeomSimplex| g.points().iter().map(|p| p.coords()[k].clone()).min().unwrap();
        let hi = |g: &GeomSimplex| g.points().iter().map(|p| p.coords()[k].clone()).max().unwrap();
        lo(s) <= hi(t) && lo(t) <= hi(s)
    })
}

/// Sum of signed crossings where `c1` passes over `c2` in a generic projection.
pub fn linking_number(c1: &PolygonalCurve, c2: &PolygonalCurve) -> Result<i64> {
    let (s1, s2) = (c1.segments(), c2.segments());
    for a in &s1 {
        for b in &s2 {
            if boxes_overlap(a, b) && !simplex_pair_test(a, b, &[])?.is_ok() {
                return Err(Error::CurvesIntersect);
            }
        }
    }
    'shears: for k in 0..MAX_SHEARS {
        let p1: Vec<Plane> = c1.points.iter().map(|p| shear(p, k)).collect();
        let p2: Vec<Plane> = c2.points.iter().map(|p| shear(p, k)).collect();
        let (n1, n2) = (p1.len(), p2.len());
        let mut total = 0;
        for i in 0..n1 {
            for j in 0..n2 {
                match crossing(&p1[i], &p1[(i + 1) % n1], &p2[j], &p2[(j + 1) % n2]) {
                    Crossing::None => {}
                    Crossing::Signed(s) => total += s,
                    Crossing::Degenerate => continue 'shears,
                }
            }
        }
        return Ok(total);
    }
    Err(Error::Degenerate(format!("no generic projection among {MAX_SHEARS} shears")))
}

/// Simple cycles of length `3..=max_len`, each listed once in canonical
/// rotation (see [`canonical_cycle`]). Sorted by length, then lexicographically.
pub fn simple_cycles(adj: &BTreeMap<VertexLabel, BTreeSet<VertexLabel>>, max_len: usize) -> Vec<Vec<VertexLabel>> {
    fn extend(
        adj: &BTreeMap<VertexLabel, BTreeSet<VertexLabel>>,
        path: &mut Vec<VertexLabel>,
        on_path: &mut BTreeSet<VertexLabel>,
        max_len: usize,
        out: &mut Vec<Vec<VertexLabel>>,
    ) {
        let start = path[0].clone();
        let last = path.last().unwrap().clone();
        for w in &adj[&last] {
            if *w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            }
            if *w > start && !on_path.contains(w) && path.len() < max_len {
                path.push(w.clone());
                on_path.insert(w.clone());
                extend(adj, path, on_path, max_len, out);
                on_path.remove(w);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in adj.keys() {
        let mut path = vec![v.clone()];
        let mut on_path = BTreeSet::from([v.clone()]);
        extend(adj, &mut path, &mut on_path, max_len, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedPair {
    /// A cycle of the side graph, by vertex.
    pub cycle1: Vec<VertexLabel>,
    /// A closed curve on `K` missing `cycle1`, through the barycenters of these
    /// faces in order.
    pub cycle2: Vec<Simplex>,
    pub lk: i64,
}

fn barycenter(coords: &Coordinates, s: &Simplex) -> Result<Point> {
    let pts = coords.simplex_points(s)?;
    let n = rational(pts.len() as i64);
    let dim = coords.dim();
    Ok(Point::new((0..dim).map(|k| pts.iter().map(|p| p.coords()[k].clone()).sum::<Rational>() / &n).collect()))
}

/// Rotates a cycle to start at its least element, read towards its smaller neighbour.
fn canonical_cycle<T: Ord + Clone>(cycle: &[T]) -> Vec<T> {
    let n = cycle.len();
    let at = (0..n).min_by(|&a, &b| cycle[a].cmp(&cycle[b])).unwrap();
    let fwd: Vec<T> = (0..n).map(|i| cycle[(at + i) % n].clone()).collect();
    let bwd: Vec<T> = (0..n).map(|i| cycle[(at + n - i) % n].clone()).collect();
    fwd.min(bwd)
}

/// Fundamental cycles of a spanning forest grown breadth-first in node order.
fn fundamental_cycles(nodes: &[Simplex], adj: &BTreeMap<Simplex, BTreeSet<Simplex>>) -> Vec<Vec<Simplex>> {
    let mut parent: BTreeMap<&Simplex, Option<&Simplex>> = BTreeMap::new();
    let mut depth: BTreeMap<&Simplex, usize> = BTreeMap::new();
    for root in nodes {
        if parent.contains_key(root) {
            continue;
        }
        parent.insert(root, None);
        depth.insert(root, 0);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in &adj[v] {
                if !parent.contains_key(w) {
                    parent.insert(w, Some(v));
                    depth.insert(w, depth[v] + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut out = Vec::new();
    for u in nodes {
        for w in adj[u].range(u..) {
            if parent[u] == Some(w) || parent[w] == Some(u) {
                continue;
            }
            let (mut a, mut b) = (u, w);
            let (mut left, mut right) = (vec![a.clone()], vec![b.clone()]);
            while depth[a] > depth[b] {
                a = parent[a].unwrap();
                left.push(a.clone());
            }
            while depth[b] > depth[a] {
                b = parent[b].unwrap();
                right.push(b.clone());
            }
            while a != b {
                a = parent[a].unwrap();
                b = parent[b].unwrap();
                left.push(a.clone());
                right.push(b.clone());
            }
            right.pop();
            left.extend(right.into_iter().rev());
            out.push(canonical_cycle(&left));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// Searches for a cycle among the vertices `side` that is linked with a closed
/// curve on `K` avoiding it.
///
/// Cycles of the subgraph of `K`'s 1-skeleton induced by `side`, of length at
/// most `max_len`, are tried in enumeration order. The partner curves live in
/// the 1-skeleton of the barycentric subdivision of `K` with every face of the
/// first cycle removed, so they may cross triangle interiors and pass through
/// other vertices of `side`. Linking number is additive on cycles, so checking
/// the fundamental cycles of that graph decides whether any partner curve links
/// the first cycle; the shortest linked fundamental cycle is returned.
///
/// `coords` must realize `K` in `R^3`.
pub fn find_linked_cycle_pair(
    k: &SimplicialComplex,
    coords: &Coordinates,
    side: &BTreeSet<VertexLabel>,
    max_len: usize,
) -> Result<Option<LinkedPair>> {
    if coords.dim() != 3 {
        return Err(Error::Dimension(format!("linking needs R^3 coordinates, got dimension {}", coords.dim())));
    }
    if let Some(v) = side.iter().find(|v| !k.has_vertex(v)) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let faces: Vec<Simplex> = k.faces().into_iter().collect();
    let centers: BTreeMap<&Simplex, Point> =
        faces.iter().map(|s| Ok((s, barycenter(coords, s)?))).collect::<Result<_>>()?;
    let induced: BTreeMap<VertexLabel, BTreeSet<VertexLabel>> = k
        .adjacency()
        .into_iter()
        .filter(|(v, _)| side.contains(v))
        .map(|(v, ns)| (v, ns.into_iter().filter(|w| side.contains(w)).collect()))
        .collect();
    for c1 in simple_cycles(&induced, max_len) {
        let n = c1.len();
        let mut on_curve: BTreeSet<Simplex> = BTreeSet::new();
        for i in 0..n {
            on_curve.insert(Simplex::new([c1[i].clone()])?);
            on_curve.insert(Simplex::new([c1[i].clone(), c1[(i + 1) % n].clone()])?);
        }
        let first = PolygonalCurve::new(c1.iter().map(|v| centers[&Simplex::new([v.clone()]).unwrap()].clone()).collect())?;
        let nodes: Vec<Simplex> = faces.iter().filter(|s| !on_curve.contains(*s)).cloned().collect();
        let mut adj: BTreeMap<Simplex, BTreeSet<Simplex>> = nodes.iter().map(|s| (s.clone(), BTreeSet::new())).collect();
        for t in &nodes {
            for s in t.faces() {
                if s != *t && adj.contains_key(&s) {
                    adj.get_mut(t).unwrap().insert(s.clone());
                    adj.get_mut(&s).unwrap().insert(t.clone());
                }
            }
        }
        for c2 in fundamental_cycles(&nodes, &adj) {
            let second = PolygonalCurve { points: c2.iter().map(|s| centers[s].clone()).collect() };
            let lk = linking_number(&first, &second)?;
            if lk != 0 {
                PolygonalCurve::new(second.points)?;
                return Ok(Some(LinkedPair { cycle1: c1, cycle2: c2, lk }));
            }
        }
    }
    Ok(None)
}
