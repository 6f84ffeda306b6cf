//! Integer realizations with tetrahedral symmetry.
//!
//! The rotation group of the tetrahedron (order 12) acts on the shaded complex
//! with vertex orbits of sizes 4, 6 and 12. A vertex fixed by a subgroup must be
//! placed on that subgroup's fixed subspace: the 4-orbit on the body diagonals,
//! the 6-orbit on the coordinate axes. Only one representative per orbit is
//! searched; the rest of the orbit follows by equivariance. With box `b` this is
//! at most `(2b+1) · (2b+1) · (2b+1)^3` assignments, and each level is pruned by
//! checking only face pairs that contain the new representative.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::complex::{Simplex, SimplicialComplex, VertexLabel, VertexMap};
use crate::error::{Error, Result};
use crate::geometry::{
    check_pair, rational, verify_embedding, Coordinates, EmbeddingCertificate, EmbeddingReport, PairCheck, PairVerdict,
    PlacedFace, Point, Rational, VerifyOptions,
};

/// The standard tetrahedron preserved by the rotation group.
pub const TETRAHEDRON: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

/// Default number of candidate placements tried by [`search_coordinates`].
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// A signed permutation matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rotation {
    rows: Vec<Vec<i64>>,
}

impl Rotation {
    pub fn identity(dim: usize) -> Self {
        Rotation { rows: (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect() }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &Rotation) -> Rotation {
        let n = self.dim();
        Rotation {
            rows: (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum()).collect()).collect(),
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(
            self.rows
                .iter()
                .map(|row| row.iter().zip(p.coords()).filter(|(m, _)| **m != 0).map(|(m, c)| rational(*m) * c).sum())
                .collect(),
        )
    }

    fn apply_int(&self, p: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|row| row.iter().zip(p).map(|(m, c)| m * c).sum()).collect()
    }

    /// Determinant of a signed permutation matrix.
    pub fn det(&self) -> i64 {
        let n = self.dim();
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        let mut sign = 1;
        for row in &self.rows {
            let (j, v) = row.iter().enumerate().find(|(_, v)| **v != 0).expect("signed permutation");
            perm.push(j);
            sign *= v;
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

/// The 12 rotations of the tetrahedron: even permutations of the first three
/// axes composed with sign changes of an even number of them; in dimension 4
/// the last axis is fixed.
pub fn tetrahedral_rotation_group(dim: usize) -> Result<Vec<Rotation>> {
    if dim != 3 && dim != 4 {
        return Err(Error::Dimension(format!("tetrahedral group is built in dimension 3 or 4, not {dim}")));
    }
    let perms = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    let signs = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    let mut out = Vec::with_capacity(12);
    for perm in perms {
        for sign in signs {
            let mut r = Rotation::identity(dim);
            for i in 0..3 {
                r.rows[i] = vec![0; dim];
                r.rows[i][perm[i]] = sign[i];
            }
            out.push(r);
        }
    }
    Ok(out)
}

/// All simplicial automorphisms of `K` (fixing `fixed`, if given), in
/// lexicographic order of their image sequences.
///
/// Errors if more than `limit` are found.
pub fn automorphisms(k: &SimplicialComplex, fixed: Option<&VertexLabel>, limit: usize) -> Result<Vec<VertexMap>> {
    let verts: Vec<VertexLabel> = k.vertices().iter().cloned().collect();
    let n = verts.len();
    let index: BTreeMap<&VertexLabel, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adj = vec![vec![false; n]; n];
    for e in k.faces_of_dim(1) {
        let (a, b) = (index[&e.vertices()[0]], index[&e.vertices()[1]]);
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let facets: BTreeSet<Vec<usize>> =
        k.facets().iter().map(|f| f.vertices().iter().map(|v| index[v]).collect()).collect();
    let facet_dims: Vec<usize> = {
        let mut d = vec![0; n];
        for f in k.facets() {
            for v in f.vertices() {
                d[index[v]] = d[index[v]].max(f.len());
            }
        }
        d
    };
    let degree: Vec<usize> = adj.iter().map(|r| r.iter().filter(|x| **x).count()).collect();
    let pinned = match fixed {
        Some(v) => Some(*index.get(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?),
        None => None,
    };

    // breadth-first order keeps each new vertex adjacent to assigned ones
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for w in 0..n {
                if adj[v][w] && !placed[w] {
                    placed[w] = true;
                    q.push_back(w);
                }
            }
        }
    }

    struct Ctx<'a> {
        n: usize,
        adj: &'a [Vec<bool>],
        degree: &'a [usize],
        facet_dims: &'a [usize],
        facets: &'a BTreeSet<Vec<usize>>,
        order: &'a [usize],
        pinned: Option<usize>,
        limit: usize,
    }

    fn go(c: &Ctx, depth: usize, image: &mut Vec<Option<usize>>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) -> bool {
        if depth == c.n {
            let ok = c.facets.iter().all(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| image[v].unwrap()).collect();
                g.sort_unstable();
                c.facets.contains(&g)
            });
            if ok {
                out.push(image.iter().map(|x| x.unwrap()).collect());
                if out.len() > c.limit {
                    return false;
                }
            }
            return true;
        }
        let v = c.order[depth];
        for w in 0..c.n {
            if used[w] || c.degree[w] != c.degree[v] || c.facet_dims[w] != c.facet_dims[v] {
                continue;
            }
            if c.pinned == Some(v) && w != v || c.pinned == Some(w) && w != v {
                continue;
            }
            let consistent = c.order[..depth].iter().all(|&u| c.adj[u][v] == c.adj[image[u].unwrap()][w]);
            if !consistent {
                continue;
            }
            image[v] = Some(w);
            used[w] = true;
            let keep_going = go(c, depth + 1, image, used, out);
            used[w] = false;
            image[v] = None;
            if !keep_going {
                return false;
            }
        }
        true
    }

    let ctx = Ctx {
        n,
        adj: &adj,
        degree: &degree,
        facet_dims: &facet_dims,
        facets: &facets,
        order: &order,
        pinned,
        limit,
    };
    let mut raw = Vec::new();
    if !go(&ctx, 0, &mut vec![None; n], &mut vec![false; n], &mut raw) {
        return Err(Error::SearchRefused(format!("more than {limit} automorphisms")));
    }
    raw.sort();
    Ok(raw
        .into_iter()
        .map(|img| verts.iter().cloned().zip(img.into_iter().map(|i| verts[i].clone())).collect())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionElement {
    pub perm: VertexMap,
    pub matrix: Rotation,
}

/// A group of simplicial automorphisms paired with rotation matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryAction {
    pub dim: usize,
    pub elements: Vec<ActionElement>,
    /// The four vertices mapped to the corners of the standard tetrahedron.
    pub anchor: Vec<VertexLabel>,
    /// Vertex orbits, ordered by size and then by smallest label.
    pub orbits: Vec<Vec<VertexLabel>>,
}

impl SymmetryAction {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    /// `coords(g·v) = matrix_g · coords(v)` for every element and vertex.
    pub fn is_equivariant(&self, coords: &Coordinates) -> bool {
        self.elements.iter().all(|g| {
            g.perm.iter().all(|(v, w)| match (coords.get(v), coords.get(w)) {
                (Some(p), Some(q)) => g.matrix.apply(p) == *q,
                _ => false,
            })
        })
    }

    /// The same action with matrices acting on one more axis, fixed.
    pub fn lifted(&self) -> SymmetryAction {
        let dim = self.dim + 1;
        let elements = self
            .elements
            .iter()
            .map(|g| {
                let mut rows: Vec<Vec<i64>> = g.matrix.rows.iter().map(|r| r.iter().copied().chain([0]).collect()).collect();
                rows.push((0..dim).map(|j| i64::from(j == dim - 1)).collect());
                ActionElement { perm: g.perm.clone(), matrix: Rotation { rows } }
            })
            .collect();
        SymmetryAction { dim, elements, anchor: self.anchor.clone(), orbits: self.orbits.clone() }
    }
}

fn is_even(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut even = true;
    for s in 0..perm.len() {
        let mut i = s;
        let mut len = 0;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            even = !even;
        }
    }
    even
}

/// Finds an order-12 group of automorphisms of `K` acting as the alternating
/// group on an invariant set of four vertices, and pairs each element with the
/// tetrahedral rotation inducing the same permutation of the tetrahedron's
/// corners.
///
/// Four-vertex orbits of the full automorphism group (fixing `fixed`) are tried
/// in order; the elements acting evenly on the orbit must form a group of order
/// 12 acting faithfully on it.
pub fn match_action(k: &SimplicialComplex, fixed: Option<&VertexLabel>, dim: usize) -> Result<SymmetryAction> {
    let rotations = tetrahedral_rotation_group(dim)?;
    let frame = tetrahedral_rotation_group(3)?;
    let all = automorphisms(k, fixed, 100_000)?;
    let order = all.len();
    let orbits = orbits_of(k, &all);
    for orbit in orbits.iter().filter(|o| o.len() == 4) {
        let pos: BTreeMap<&VertexLabel, usize> = orbit.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let on_orbit = |g: &VertexMap| -> Vec<usize> { orbit.iter().map(|v| pos[&g[v]]).collect() };
        let even: Vec<&VertexMap> = all.iter().filter(|g| is_even(&on_orbit(g))).collect();
        let restrictions: BTreeSet<Vec<usize>> = even.iter().map(|g| on_orbit(g)).collect();
        if even.len() != 12 || restrictions.len() != 12 {
            continue;
        }
        let mut elements = Vec::with_capacity(12);
        for g in even {
            let images = on_orbit(g);
            let which = frame
                .iter()
                .position(|r| (0..4).all(|i| r.apply_int(&TETRAHEDRON[i]) == TETRAHEDRON[images[i]]))
                .expect("A4 acts on the tetrahedron by rotations");
            let matrix = rotations[which].clone();
            elements.push(ActionElement { perm: g.clone(), matrix });
        }
        let perms: Vec<VertexMap> = elements.iter().map(|e| e.perm.clone()).collect();
        if !k.verify_simplicial_action(&perms)? {
            continue;
        }
        let orbits = orbits_of(k, &perms);
        return Ok(SymmetryAction { dim, elements, anchor: orbit.clone(), orbits });
    }
    Err(Error::NoTetrahedralAction { order })
}

fn orbits_of(k: &SimplicialComplex, group: &[VertexMap]) -> Vec<Vec<VertexLabel>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for v in k.vertices() {
        if seen.contains(v) {
            continue;
        }
        let orbit: BTreeSet<VertexLabel> = group.iter().map(|g| g[v].clone()).chain([v.clone()]).collect();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
    }
    orbits.sort_by(|a: &Vec<VertexLabel>, b| a.len().cmp(&b.len()).then_with(|| a[0].cmp(&b[0])));
    orbits
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub box_bound: u32,
    pub budget: u64,
    /// Candidate placements tried.
    pub nodes: u64,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub found: Option<(Coordinates, EmbeddingCertificate)>,
    pub stats: SearchStats,
}

struct Level {
    orbit: Vec<VertexLabel>,
    rep: VertexLabel,
    /// Action elements sending the representative to each orbit vertex.
    candidates: Vec<Vec<i64>>,
    /// Faces, in the subcomplex placed after this level, that contain the representative.
    local: Vec<Simplex>,
    /// All faces placed after this level.
    placed: Vec<Simplex>,
}

/// Integer points of `[-b, b]^dim` fixed by every matrix, ordered by sup norm,
/// then lexicographically.
fn fixed_points(stabilizer: &[&Rotation], dim: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut p = vec![-b; dim];
    loop {
        if stabilizer.iter().all(|r| r.apply_int(&p) == p) {
            out.push(p.clone());
        }
        let mut i = dim;
        loop {
            if i == 0 {
                out.sort_by_key(|p| (p.iter().map(|c| c.abs()).max().unwrap_or(0), p.clone()));
                return out;
            }
            i -= 1;
            if p[i] < b {
                p[i] += 1;
                break;
            }
            p[i] = -b;
        }
    }
}

/// Searches for integer coordinates in `[-b, b]^dim`, equivariant under
/// `action`, that realize `K`.
pub fn search_coordinates(k: &SimplicialComplex, action: &SymmetryAction, box_bound: u32, budget: u64) -> Result<SearchOutcome> {
    search_coordinates_where(k, action, box_bound, budget, |_| Ok(true))
}

/// As [`search_coordinates`], returning the first certified realization that
/// also satisfies `accept`.
pub fn search_coordinates_where<F>(
    k: &SimplicialComplex,
    action: &SymmetryAction,
    box_bound: u32,
    budget: u64,
    accept: F,
) -> Result<SearchOutcome>
where
    F: Fn(&Coordinates) -> Result<bool>,
{
    let perms: Vec<VertexMap> = action.elements.iter().map(|e| e.perm.clone()).collect();
    if !k.verify_simplicial_action(&perms)? {
        return Err(Error::SearchRefused("action does not preserve the complex".into()));
    }
    let covered: BTreeSet<&VertexLabel> = action.orbits.iter().flatten().collect();
    if covered.len() != k.vertices().len() || k.vertices().iter().any(|v| !covered.contains(v)) {
        return Err(Error::SearchRefused("action orbits do not cover the vertex set".into()));
    }
    let dim = action.dim;
    let b = i64::from(box_bound);
    let all_faces: Vec<Simplex> = k.faces().into_iter().collect();
    let mut levels = Vec::new();
    let mut placed_vertices: BTreeSet<VertexLabel> = BTreeSet::new();
    for orbit in &action.orbits {
        let rep = orbit[0].clone();
        let stab: Vec<&Rotation> = action.elements.iter().filter(|g| g.perm[&rep] == rep).map(|g| &g.matrix).collect();
        placed_vertices.extend(orbit.iter().cloned());
        let placed: Vec<Simplex> =
            all_faces.iter().filter(|s| s.vertices().iter().all(|v| placed_vertices.contains(v))).cloned().collect();
        let local = placed.iter().filter(|s| s.contains(&rep)).cloned().collect();
        levels.push(Level { orbit: orbit.clone(), rep, candidates: fixed_points(&stab, dim, b), local, placed });
    }

    let mut search = Search { k, action, levels: &levels, budget, nodes: 0, exhausted: false, accept: &accept };
    let mut points: BTreeMap<VertexLabel, Point> = BTreeMap::new();
    let found = search.place(0, &mut points)?;
    Ok(SearchOutcome {
        found,
        stats: SearchStats { box_bound, budget, nodes: search.nodes, budget_exhausted: search.exhausted },
    })
}

struct Search<'a> {
    accept: &'a dyn Fn(&Coordinates) -> Result<bool>,
    k: &'a SimplicialComplex,
    action: &'a SymmetryAction,
    levels: &'a [Level],
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn place(&mut self, depth: usize, points: &mut BTreeMap<VertexLabel, Point>) -> Result<Option<(Coordinates, EmbeddingCertificate)>> {
        if depth == self.levels.len() {
            let coords = Coordinates::new(self.action.dim, points.clone())?;
            return match verify_embedding(self.k, &coords, VerifyOptions::default())? {
                EmbeddingReport::Certified(cert) if (self.accept)(&coords)? => Ok(Some((coords, cert))),
                EmbeddingReport::Certified(_) => Ok(None),
                EmbeddingReport::Violated(_) => Ok(None),
            };
        }
        let level = &self.levels[depth];
        for cand in &level.candidates {
            if self.nodes >= self.budget {
                self.exhausted = true;
                return Ok(None);
            }
            self.nodes += 1;
            let Some(orbit_points) = self.orbit_points(level, cand) else { continue };
            let taken: BTreeSet<&Point> = points.values().collect();
            if orbit_points.values().any(|p| taken.contains(p)) {
                continue;
            }
            points.extend(orbit_points);
            if level_is_proper(level, points) {
                if let Some(found) = self.place(depth + 1, points)? {
                    return Ok(Some(found));
                }
                if self.exhausted {
                    return Ok(None);
                }
            }
            for v in &level.orbit {
                points.remove(v);
            }
        }
        Ok(None)
    }

    /// Images of the representative's point; `None` if two orbit vertices collide.
    fn orbit_points(&self, level: &Level, cand: &[i64]) -> Option<BTreeMap<VertexLabel, Point>> {
        let base = Point::from_ints(cand);
        let mut out: BTreeMap<VertexLabel, Point> = BTreeMap::new();
        for g in &self.action.elements {
            out.insert(g.perm[&level.rep].clone(), g.matrix.apply(&base));
        }
        let distinct: BTreeSet<&Point> = out.values().collect();
        (distinct.len() == level.orbit.len()).then_some(out)
    }
}

/// Every face containing the representative is non-degenerate and meets every
/// placed face properly. By symmetry this covers all pairs touching the orbit.
fn level_is_proper(level: &Level, points: &BTreeMap<VertexLabel, Point>) -> bool {
    let build = |s: &Simplex| PlacedFace::new(s.clone(), s.vertices().iter().map(|v| points[v].clone()).collect());
    let Some(local) = level.local.iter().map(build).collect::<Option<Vec<_>>>() else { return false };
    let Some(placed) = level.placed.iter().map(build).collect::<Option<Vec<_>>>() else { return false };
    local.par_iter().all(|a| {
        placed.iter().all(|b| {
            a.simplex == b.simplex
                || !matches!(check_pair(a, b, true), PairCheck::Solved(PairVerdict::Violation(_)))
        })
    })
}

/// Lifts a realization of the shaded complex into `x_last = 0` and adds the
/// apex, then certifies the full complex.
pub fn cone_realization(
    full: &SimplicialComplex,
    coords: &Coordinates,
    apex: &VertexLabel,
    apex_point: &Point,
) -> Result<(Coordinates, EmbeddingCertificate)> {
    let dim = coords.dim() + 1;
    if apex_point.dim() != dim {
        return Err(Error::Dimension(format!("apex point must have {dim} coordinates")));
    }
    let mut lifted: BTreeMap<VertexLabel, Point> =
        coords.points().iter().map(|(v, p)| (v.clone(), p.extended(Rational::from_integer(0.into())))).collect();
    lifted.insert(apex.clone(), apex_point.clone());
    let lifted = Coordinates::new(dim, lifted)?;
    match verify_embedding(full, &lifted, VerifyOptions::default())? {
        EmbeddingReport::Certified(cert) => Ok((lifted, cert)),
        EmbeddingReport::Violated(v) => Err(Error::EmbeddingFailed(v.to_string())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelFormat {
    Off,
    Text,
}

/// Renders a realized complex as OFF (dimension 3, integer coordinates) or in
/// the coordinates text format.
pub fn export_model(k: &SimplicialComplex, coords: &Coordinates, format: ModelFormat) -> Result<String> {
    if let Some(v) = k.vertices().iter().find(|v| coords.get(v).is_none()) {
        return Err(Error::MissingCoordinate(v.to_string()));
    }
    match format {
        ModelFormat::Text => Ok(crate::formats::write_coordinates(coords)),
        ModelFormat::Off => {
            if coords.dim() != 3 {
                return Err(Error::Dimension(format!("OFF export needs dimension 3, got {}", coords.dim())));
            }
            let verts: Vec<&VertexLabel> = k.vertices().iter().collect();
            let index: BTreeMap<&VertexLabel, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
            let triangles = k.faces_of_dim(2);
            let edges = k.faces_of_dim(1).len();
            let mut out = String::new();
            writeln!(out, "OFF").unwrap();
            writeln!(out, "{} {} {}", verts.len(), triangles.len(), edges).unwrap();
            for v in &verts {
                let p = coords.get(v).expect("checked above");
                if !p.is_integral() {
                    return Err(Error::Malformed(format!("OFF export needs integer coordinates; {v} is at {p}")));
                }
                let parts: Vec<String> = p.coords().iter().map(|c| c.to_integer().to_string()).collect();
                writeln!(out, "{}", parts.join(" ")).unwrap();
            }
            for t in triangles {
                let ids: Vec<String> = t.vertices().iter().map(|v| index[v].to_string()).collect();
                writeln!(out, "3 {}", ids.join(" ")).unwrap();
            }
            Ok(out)
        }
    }
}
