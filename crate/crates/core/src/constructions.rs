//! The specific complexes: the dodecahedron, its face-pairing quotients, the
//! 23-vertex subdivision of the spherical dodecahedral 2-skeleton, the complex
//! left after deleting the star of its apex, and the classical side examples.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;

use crate::complex::{label, Simplex, SimplicialComplex, VertexLabel};
use crate::error::{Error, Result};
use crate::homology::ChainComplex;
use crate::snf::IntegerMatrix;

/// An oriented 1-cell. Loops (`tail == head`) occur in non-simplicial quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellEdge {
    pub tail: VertexLabel,
    pub head: VertexLabel,
}

/// A polygonal 2-cell: the cyclic vertex sequence and, for each side
/// `vertices[i] → vertices[i+1]`, the traversed edge with its direction (+1 / -1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<VertexLabel>,
    pub sides: Vec<(usize, i8)>,
}

/// A 2-dimensional cell complex with polygonal faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralComplex {
    pub vertices: Vec<VertexLabel>,
    pub edges: Vec<CellEdge>,
    pub polygons: Vec<Polygon>,
}

impl PolyhedralComplex {
    /// `(vertices, edges, polygons)`
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.polygons.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.counts();
        v as i64 - e as i64 + f as i64
    }

    /// No loops and no parallel edges.
    pub fn has_simplicial_skeleton(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| {
            let key = if e.tail < e.head { (&e.tail, &e.head) } else { (&e.head, &e.tail) };
            e.tail != e.head && seen.insert(key)
        })
    }

    /// The 1-skeleton as a simplicial complex; requires [`Self::has_simplicial_skeleton`].
    pub fn one_skeleton(&self) -> Result<SimplicialComplex> {
        if !self.has_simplicial_skeleton() {
            return Err(Error::Polygon("1-skeleton has loops or parallel edges".into()));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Simplex::new([e.tail.clone(), e.head.clone()]))
            .chain(self.vertices.iter().map(|v| Simplex::new([v.clone()])))
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialComplex::from_simplices(edges))
    }

    /// Cellular chain complex: `∂e = head - tail`, `∂P = Σ ±e` along the boundary.
    pub fn chain_complex(&self) -> ChainComplex {
        let index: BTreeMap<&VertexLabel, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut d1 = IntegerMatrix::zeros(self.vertices.len(), self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            let (t, h) = (index[&e.tail], index[&e.head]);
            if t != h {
                d1.set(t, j, BigInt::from(-1));
                d1.set(h, j, BigInt::from(1));
            }
        }
        let mut d2 = IntegerMatrix::zeros(self.edges.len(), self.polygons.len());
        for (j, p) in self.polygons.iter().enumerate() {
            for &(e, s) in &p.sides {
                let cur = d2.get(e, j).clone();
                d2.set(e, j, cur + BigInt::from(s));
            }
        }
        ChainComplex {
            ranks: vec![self.vertices.len(), self.edges.len(), self.polygons.len()],
            boundaries: vec![d1, d2],
        }
    }

    /// Checks that each polygon's sides run along the stated edges.
    pub fn validate(&self) -> Result<()> {
        for (pi, p) in self.polygons.iter().enumerate() {
            let n = p.vertices.len();
            if n < 3 || p.sides.len() != n {
                return Err(Error::Polygon(format!("polygon {pi} has {n} vertices and {} sides", p.sides.len())));
            }
            for (i, &(e, s)) in p.sides.iter().enumerate() {
                let edge = self.edges.get(e).ok_or_else(|| Error::Polygon(format!("polygon {pi} uses unknown edge {e}")))?;
                let (a, b) = (&p.vertices[i], &p.vertices[(i + 1) % n]);
                let ok = if s > 0 { (&edge.tail, &edge.head) == (a, b) } else { (&edge.head, &edge.tail) == (a, b) };
                if !ok {
                    return Err(Error::Polygon(format!("polygon {pi} side {i} does not match edge {e}")));
                }
            }
        }
        let used: BTreeSet<usize> = self.polygons.iter().flat_map(|p| p.sides.iter().map(|s| s.0)).collect();
        if used.len() != self.edges.len() {
            return Err(Error::Polygon("an edge lies on no polygon".into()));
        }
        Ok(())
    }

    /// Builds a polyhedral complex with simplicial 1-skeleton from vertex cycles.
    pub fn from_cycles(cycles: &[Vec<VertexLabel>]) -> Result<Self> {
        let mut vertices = BTreeSet::new();
        let mut edge_index: BTreeMap<(VertexLabel, VertexLabel), usize> = BTreeMap::new();
        let mut edges = Vec::new();
        let mut polygons = Vec::new();
        for cyc in cycles {
            let n = cyc.len();
            if n < 3 || cyc.iter().collect::<BTreeSet<_>>().len() != n {
                return Err(Error::Polygon(format!("cycle of length {n} with repeated or too few vertices")));
            }
            let mut sides = Vec::with_capacity(n);
            for i in 0..n {
                let (a, b) = (cyc[i].clone(), cyc[(i + 1) % n].clone());
                vertices.insert(a.clone());
                let (key, sign) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
                let id = *edge_index.entry(key.clone()).or_insert_with(|| {
                    edges.push(CellEdge { tail: key.0.clone(), head: key.1.clone() });
                    edges.len() - 1
                });
                sides.push((id, sign));
            }
            polygons.push(Polygon { vertices: cyc.clone(), sides });
        }
        let pc = PolyhedralComplex { vertices: vertices.into_iter().collect(), edges, polygons };
        pc.validate()?;
        Ok(pc)
    }
}

/// Vertex names `A, B, ..., Z, AA, AB, ...`.
fn letter_name(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push((b'A' + (i % 26) as u8) as char);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.iter().rev().collect()
}

/// Letter names not yet in `used`, in order.
fn fresh_letters(used: &BTreeSet<VertexLabel>) -> impl Iterator<Item = VertexLabel> + '_ {
    (0..).map(|i| label(&letter_name(i))).filter(move |l| !used.contains(l))
}

/// Combinatorial dodecahedron with vertices `p0..p19`, faces coherently oriented.
///
/// Layers: top pentagon `a`, its pendant vertices `b`, the zig-zag partners `c`,
/// bottom pentagon `d` (indices 0-4, 5-9, 10-14, 15-19).
pub fn dodecahedron() -> PolyhedralComplex {
    let (a, b, c, d) = (|i: usize| i % 5, |i: usize| 5 + i % 5, |i: usize| 10 + i % 5, |i: usize| 15 + i % 5);
    let mut faces: Vec<Vec<usize>> = vec![(0..5).map(a).collect()];
    for i in 0..5 {
        faces.push(vec![a(i), a(i + 1), b(i + 1), c(i), b(i)]);
    }
    for i in 0..5 {
        faces.push(vec![b(i), c(i), d(i), d(i + 4), c(i + 4)]);
    }
    faces.push((0..5).map(d).collect());
    orient_coherently(&mut faces);
    let cycles: Vec<Vec<VertexLabel>> = faces.iter().map(|f| f.iter().map(|&i| dodeca_label(i)).collect()).collect();
    PolyhedralComplex::from_cycles(&cycles).expect("dodecahedron faces are valid")
}

fn dodeca_label(i: usize) -> VertexLabel {
    label(&format!("p{i}"))
}

/// Reverses faces so that every edge is traversed once in each direction.
fn orient_coherently(faces: &mut [Vec<usize>]) {
    let n = faces.len();
    let mut done = vec![false; n];
    done[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let directed: BTreeSet<(usize, usize)> = cycle_pairs(&faces[f]).collect();
        for g in 0..n {
            if done[g] {
                continue;
            }
            let pairs: Vec<(usize, usize)> = cycle_pairs(&faces[g]).collect();
            if pairs.iter().any(|&(x, y)| directed.contains(&(x, y))) {
                faces[g].reverse();
            } else if !pairs.iter().any(|&(x, y)| directed.contains(&(y, x))) {
                continue;
            }
            done[g] = true;
            queue.push_back(g);
        }
    }
}

fn cycle_pairs(cycle: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..cycle.len()).map(move |i| (cycle[i], cycle[(i + 1) % cycle.len()]))
}

struct UnionFind {
    parent: Vec<usize>,
    /// orientation of each element relative to its parent (0 same, 1 reversed)
    flip: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), flip: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, f) = self.find(p);
        self.parent[x] = root;
        self.flip[x] ^= f;
        (root, self.flip[x])
    }

    /// Declares `x` and `y` equal up to relative orientation `rel`; false on contradiction.
    fn union(&mut self, x: usize, y: usize, rel: u8) -> bool {
        let (rx, fx) = self.find(x);
        let (ry, fy) = self.find(y);
        if rx == ry {
            return fx ^ fy == rel;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        self.flip[hi] = fx ^ fy ^ rel;
        true
    }
}

/// The quotient of the dodecahedron's boundary in which each face is glued to the
/// opposite face by the translation along their common axis followed by a rotation
/// through `twist · 36°`.
///
/// Odd twists send vertices to vertices; `1` gives the spherical (Poincaré)
/// dodecahedral space with 5 vertex classes, `3` the hyperbolic one with a single
/// vertex class, `5` the antipodal quotient (RP^3). Vertex classes are named
/// `A, B, ...` in order of appearance along the polygons.
pub fn weber_seifert_quotient(twist: i32) -> Result<PolyhedralComplex> {
    if !(1..=5).contains(&twist) {
        return Err(Error::Identification(format!("twist {twist} outside 1..=5")));
    }
    if twist % 2 == 0 {
        return Err(Error::Identification(format!(
            "twist {twist} rotates by a multiple of 72° after translation, which lands between vertices"
        )));
    }
    let dodeca = dodecahedron();
    let index: BTreeMap<&VertexLabel, usize> = dodeca.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let faces: Vec<Vec<usize>> =
        dodeca.polygons.iter().map(|p| p.vertices.iter().map(|v| index[v]).collect()).collect();
    let antipode = antipodal_map(&dodeca, &index)?;

    // The antipodal map is the axial translation composed with a half turn in the
    // face plane, so translating and turning by twist·36° maps v_i to -v_{i+shift}.
    let shift = ((twist - 1) / 2 - 2).rem_euclid(5) as usize;
    let opposite: Vec<usize> = faces
        .iter()
        .map(|f| {
            let image: BTreeSet<usize> = f.iter().map(|&v| antipode[v]).collect();
            faces.iter().position(|g| g.iter().copied().collect::<BTreeSet<_>>() == image).expect("dodecahedron is centrally symmetric")
        })
        .collect();
    let gluing = |f: usize| -> BTreeMap<usize, usize> {
        let cyc = &faces[f];
        (0..5).map(|i| (cyc[i], antipode[cyc[(i + shift) % 5]])).collect()
    };
    for f in 0..faces.len() {
        let there = gluing(f);
        let back = gluing(opposite[f]);
        if there.iter().any(|(v, w)| back.get(w) != Some(v)) {
            return Err(Error::Identification(format!("gluing of face {f} is not inverted by its partner")));
        }
    }

    let edge_of: BTreeMap<(usize, usize), usize> = dodeca
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| ((index[&e.tail], index[&e.head]), i))
        .collect();
    let directed = |x: usize, y: usize| -> (usize, u8) {
        match edge_of.get(&(x, y)) {
            Some(&e) => (e, 0),
            None => (edge_of[&(y, x)], 1),
        }
    };
    let mut vclass = UnionFind::new(dodeca.vertices.len());
    let mut eclass = UnionFind::new(dodeca.edges.len());
    for f in 0..faces.len() {
        let g = gluing(f);
        let cyc = &faces[f];
        for i in 0..5 {
            let (x, y) = (cyc[i], cyc[(i + 1) % 5]);
            vclass.union(x, g[&x], 0);
            let (e1, o1) = directed(x, y);
            let (e2, o2) = directed(g[&x], g[&y]);
            if !eclass.union(e1, e2, o1 ^ o2) {
                return Err(Error::Identification(format!(
                    "twist {twist} identifies edge {} with its own reverse",
                    dodeca.edges[e1].tail
                )));
            }
        }
    }

    // one representative per opposite pair: the lower-indexed face
    let reps: Vec<usize> = (0..faces.len()).filter(|&f| f < opposite[f]).collect();
    let mut vnames: BTreeMap<usize, VertexLabel> = BTreeMap::new();
    let mut enames: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut polygons = Vec::new();
    for &f in &reps {
        let cyc = &faces[f];
        let mut pv = Vec::new();
        let mut sides = Vec::new();
        for i in 0..5 {
            let root = vclass.find(cyc[i]).0;
            let name = vnames.entry(root).or_insert_with(|| {
                let l = label(&letter_name(vertices.len()));
                vertices.push(l.clone());
                l
            });
            pv.push(name.clone());
        }
        for i in 0..5 {
            let (e, o) = directed(cyc[i], cyc[(i + 1) % 5]);
            let (root, flip) = eclass.find(e);
            let id = *enames.entry(root).or_insert_with(|| {
                let (rt, rh) = (vclass.find(index[&dodeca.edges[root].tail]).0, vclass.find(index[&dodeca.edges[root].head]).0);
                edges.push(CellEdge { tail: vnames[&rt].clone(), head: vnames[&rh].clone() });
                edges.len() - 1
            });
            sides.push((id, if o ^ flip == 0 { 1 } else { -1 }));
        }
        polygons.push(Polygon { vertices: pv, sides });
    }
    let quotient = PolyhedralComplex { vertices, edges, polygons };
    quotient.validate()?;
    Ok(quotient)
}

/// For each vertex, the unique vertex at maximal graph distance (5).
fn antipodal_map(dodeca: &PolyhedralComplex, index: &BTreeMap<&VertexLabel, usize>) -> Result<Vec<usize>> {
    let n = dodeca.vertices.len();
    let mut adj = vec![Vec::new(); n];
    for e in &dodeca.edges {
        let (t, h) = (index[&e.tail], index[&e.head]);
        adj[t].push(h);
        adj[h].push(t);
    }
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        q.push_back(w);
                    }
                }
            }
            let far: Vec<usize> = (0..n).filter(|&v| dist[v] == 5).collect();
            match far.as_slice() {
                [v] => Ok(*v),
                _ => Err(Error::Identification(format!("vertex {s} has {} antipodes", far.len()))),
            }
        })
        .collect()
}

/// Triangulation of a complex of pentagons through a common apex, and the parent
/// pentagon of each triangle.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub parent: BTreeMap<Simplex, usize>,
}

/// Rotates `cycle` to start at `apex` and picks the lexicographically smaller direction.
fn canonical_word(cycle: &[VertexLabel], apex: &VertexLabel) -> Option<Vec<VertexLabel>> {
    let n = cycle.len();
    let at = cycle.iter().position(|v| v == apex)?;
    let fwd: Vec<VertexLabel> = (0..n).map(|i| cycle[(at + i) % n].clone()).collect();
    let bwd: Vec<VertexLabel> = (0..n).map(|i| cycle[(at + n - i) % n].clone()).collect();
    Some(fwd.min(bwd))
}

/// Subdivides each pentagon `(A, v2, v3, v4, v5)` through `apex = A` with three new
/// interior vertices `u1, u2, u3`: a fan of four triangles at `A` and a strip of five
/// triangles along the path `v2 v3 v4 v5`.
pub fn subdivide_pentagons(p: &PolyhedralComplex, apex: &VertexLabel) -> Result<SimplicialComplex> {
    Ok(subdivide_pentagons_with_parents(p, apex)?.complex)
}

pub fn subdivide_pentagons_with_parents(p: &PolyhedralComplex, apex: &VertexLabel) -> Result<Subdivision> {
    if !p.has_simplicial_skeleton() {
        return Err(Error::Polygon("pentagon subdivision needs a simplicial 1-skeleton".into()));
    }
    let mut words = Vec::new();
    for (i, poly) in p.polygons.iter().enumerate() {
        let distinct: BTreeSet<&VertexLabel> = poly.vertices.iter().collect();
        if poly.vertices.len() != 5 || distinct.len() != 5 {
            return Err(Error::Polygon(format!("polygon {i} is not a pentagon")));
        }
        let word = canonical_word(&poly.vertices, apex)
            .ok_or_else(|| Error::Polygon(format!("polygon {i} does not contain {apex}")))?;
        words.push((word, i));
    }
    words.sort();
    let used: BTreeSet<VertexLabel> = p.vertices.iter().cloned().collect();
    let mut fresh = fresh_letters(&used);
    let mut parent = BTreeMap::new();
    let mut triangles = Vec::new();
    for (word, idx) in words {
        let [a, v2, v3, v4, v5]: [VertexLabel; 5] = word.try_into().expect("pentagon");
        let (u1, u2, u3) = (fresh.next().unwrap(), fresh.next().unwrap(), fresh.next().unwrap());
        let local = [
            [&a, &v2, &u1],
            [&a, &u1, &u2],
            [&a, &u2, &u3],
            [&a, &u3, &v5],
            [&u1, &v2, &v3],
            [&u1, &v3, &u2],
            [&u2, &v3, &v4],
            [&u2, &v4, &u3],
            [&u3, &v4, &v5],
        ];
        for t in local {
            let s = Simplex::new(t.into_iter().cloned())?;
            parent.insert(s.clone(), idx);
            triangles.push(s);
        }
    }
    // keep isolated vertices of p, if any
    let mut all: Vec<Simplex> = triangles;
    all.extend(p.vertices.iter().map(|v| Simplex::new([v.clone()])).collect::<Result<Vec<_>>>()?);
    Ok(Subdivision { complex: SimplicialComplex::from_simplices(all), parent })
}

/// The apex of the subdivision.
pub fn apex() -> VertexLabel {
    label("A")
}

/// The 23-vertex Z-acyclic, non-contractible 2-complex.
pub fn the_23_vertex_complex() -> Result<SimplicialComplex> {
    subdivide_pentagons(&weber_seifert_quotient(1)?, &apex())
}

/// The 23-vertex complex with the star of `A` removed.
pub fn shaded_complex() -> Result<SimplicialComplex> {
    the_23_vertex_complex()?.remove_star(&apex())
}

/// A triangulated dunce hat.
///
/// A triangle with every side cut into three segments is triangulated by nested
/// rings of nine vertices around a centre; the sides are then identified in the
/// pattern `a a a^-1`. The identification is accepted only if it produces a genuine
/// simplicial complex identifying nothing but the boundary arcs; otherwise one more
/// interior ring is inserted and the check is repeated.
pub fn dunce_hat() -> Result<SimplicialComplex> {
    for rings in 0..4 {
        if let Some(k) = dunce_hat_attempt(rings) {
            return Ok(k);
        }
    }
    Err(Error::Identification("dunce hat identification did not become simplicial".into()))
}

fn dunce_hat_attempt(rings: usize) -> Option<SimplicialComplex> {
    // boundary positions p0..p8; corners at 0, 3, 6; third side read backwards
    const ARC: [&str; 9] = ["x", "y", "z", "x", "y", "z", "x", "z", "y"];
    let ring_name = |r: usize, i: usize| -> String {
        if r == 0 {
            format!("p{i}")
        } else {
            format!("q{r}_{i}")
        }
    };
    let mut disc: Vec<[String; 3]> = Vec::new();
    for r in 1..=rings {
        for i in 0..9 {
            let j = (i + 1) % 9;
            disc.push([ring_name(r - 1, i), ring_name(r - 1, j), ring_name(r, i)]);
            disc.push([ring_name(r - 1, j), ring_name(r, j), ring_name(r, i)]);
        }
    }
    for i in 0..9 {
        disc.push([ring_name(rings, i), ring_name(rings, (i + 1) % 9), "c".to_string()]);
    }
    let quotient_name = |v: &str| -> String {
        match v.strip_prefix('p') {
            Some(i) => ARC[i.parse::<usize>().unwrap()].to_string(),
            None => v.replace('_', "."),
        }
    };
    let is_boundary = |a: &str, b: &str| -> bool {
        let idx = |s: &str| s.strip_prefix('p').map(|i| i.parse::<usize>().unwrap());
        matches!((idx(a), idx(b)), (Some(i), Some(j)) if (i + 1) % 9 == j || (j + 1) % 9 == i)
    };

    let mut image_triangles = BTreeSet::new();
    let mut edge_images: BTreeMap<Simplex, Vec<(String, String)>> = BTreeMap::new();
    for t in &disc {
        let q = Simplex::from_tokens(t.iter().map(|v| quotient_name(v))).ok()?;
        if !image_triangles.insert(q) {
            return None;
        }
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            let img = Simplex::from_tokens([quotient_name(&t[a]), quotient_name(&t[b])]).ok()?;
            let pre = (t[a].clone().min(t[b].clone()), t[a].clone().max(t[b].clone()));
            let list = edge_images.entry(img).or_default();
            if !list.contains(&pre) {
                list.push(pre);
            }
        }
    }
    for pres in edge_images.values() {
        if pres.len() > 1 && !pres.iter().all(|(a, b)| is_boundary(a, b)) {
            return None;
        }
    }
    Some(SimplicialComplex::from_simplices(image_triangles))
}

/// Cone with apex `x` over `K5` (vertices `v1..v5`) or `K33` (`a1..a3`, `b1..b3`).
pub fn cone_over_graph(name: &str) -> Result<SimplicialComplex> {
    let edges: Vec<[String; 2]> = match name {
        "K5" => (1..=5).flat_map(|i| (i + 1..=5).map(move |j| [format!("v{i}"), format!("v{j}")])).collect(),
        "K33" => (1..=3).flat_map(|i| (1..=3).map(move |j| [format!("a{i}"), format!("b{j}")])).collect(),
        other => return Err(Error::UnknownConstruction(other.to_string())),
    };
    let graph = SimplicialComplex::from_simplices(edges.iter().map(|e| Simplex::from_tokens(e).unwrap()));
    graph.cone(&label("x"))
}

/// Every buildable complex by name.
pub const NAMED: [&str; 6] = ["dodecahedral-quotient", "complex23", "shaded", "dunce-hat", "cone-K5", "cone-K33"];

/// A named construction: either simplicial or the polyhedral quotient.
#[derive(Clone, Debug)]
pub enum Built {
    Simplicial(SimplicialComplex),
    Polyhedral(PolyhedralComplex),
}

pub fn build_named(name: &str) -> Result<Built> {
    Ok(match name {
        "dodecahedral-quotient" => Built::Polyhedral(weber_seifert_quotient(1)?),
        "complex23" => Built::Simplicial(the_23_vertex_complex()?),
        "shaded" => Built::Simplicial(shaded_complex()?),
        "dunce-hat" => Built::Simplicial(dunce_hat()?),
        "cone-K5" => Built::Simplicial(cone_over_graph("K5")?),
        "cone-K33" => Built::Simplicial(cone_over_graph("K33")?),
        other => return Err(Error::UnknownConstruction(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::free_faces;

    #[test]
    fn dodecahedron_combinatorics() {
        let d = dodecahedron();
        assert_eq!(d.counts(), (20, 30, 12));
        let sk = d.one_skeleton().unwrap();
        assert!(sk.adjacency().values().all(|n| n.len() == 3));
        let mut per_edge = vec![0; d.edges.len()];
        let mut dir_sum = vec![0i32; d.edges.len()];
        for p in &d.polygons {
            for &(e, s) in &p.sides {
                per_edge[e] += 1;
                dir_sum[e] += s as i32;
            }
        }
        assert!(per_edge.iter().all(|&c| c == 2));
        // coherent orientation: each edge is used once in each direction
        assert!(dir_sum.iter().all(|&s| s == 0));
    }

    #[test]
    fn poincare_quotient_is_k5_with_six_pentagons() {
        let q = weber_seifert_quotient(1).unwrap();
        assert_eq!(q.counts(), (5, 10, 6));
        assert_eq!(q.euler_characteristic(), 1);
        assert!(q.has_simplicial_skeleton());
        let names: Vec<&str> = q.polygons[0].vertices.iter().map(VertexLabel::as_str).collect();
        assert_eq!(names, ["A", "B", "C", "D", "E"]);
        for p in &q.polygons {
            assert_eq!(p.vertices.iter().collect::<BTreeSet<_>>().len(), 5);
        }
        let mut per_edge = vec![0; q.edges.len()];
        for p in &q.polygons {
            for &(e, _) in &p.sides {
                per_edge[e] += 1;
            }
        }
        assert!(per_edge.iter().all(|&c| c == 3));
    }

    #[test]
    fn other_twists() {
        assert!(weber_seifert_quotient(2).is_err());
        assert!(weber_seifert_quotient(0).is_err());
        let sw = weber_seifert_quotient(3).unwrap();
        assert_eq!(sw.counts(), (1, 6, 6));
        assert!(!sw.has_simplicial_skeleton());
    }

    #[test]
    fn cellular_boundary_squares_to_zero() {
        for t in [1, 3, 5] {
            let cc = weber_seifert_quotient(t).unwrap().chain_complex();
            assert!(cc.boundaries[0].mul(&cc.boundaries[1]).is_zero(), "twist {t}");
        }
    }

    #[test]
    fn single_pentagon_subdivision() {
        let p = PolyhedralComplex::from_cycles(&[["A", "B", "C", "D", "E"].map(label).to_vec()]).unwrap();
        let k = subdivide_pentagons(&p, &label("A")).unwrap();
        assert_eq!(k.f_vector(), vec![8, 16, 9]);
        assert_eq!(k.euler_characteristic(), 1);
        let a = label("A");
        let (with, without): (Vec<_>, Vec<_>) = k.faces_of_dim(2).into_iter().partition(|t| t.contains(&a));
        assert_eq!((with.len(), without.len()), (4, 5));
        assert!(["F", "G", "H"].iter().all(|v| k.has_vertex(&label(v))));
        assert!(subdivide_pentagons(&p, &label("Z")).is_err());
    }

    #[test]
    fn the_23_vertex_complex_counts() {
        let k = the_23_vertex_complex().unwrap();
        assert_eq!(k.f_vector(), vec![23, 76, 54]);
        let last = k.vertices().iter().max_by_key(|v| (v.as_str().len(), v.as_str().to_string())).unwrap();
        assert_eq!(last.as_str(), "W");
        let adj = k.adjacency();
        assert_eq!(adj[&label("A")].len(), 22);
        for x in ["B", "C", "D", "E"] {
            for y in ["B", "C", "D", "E"] {
                if x != y {
                    assert!(adj[&label(x)].contains(&label(y)));
                }
            }
        }
        let link = k.link(&label("A")).unwrap();
        assert_eq!(link.f_vector(), vec![22, 24]);
    }

    #[test]
    fn subdivision_map_is_total_and_onto() {
        let q = weber_seifert_quotient(1).unwrap();
        let sub = subdivide_pentagons_with_parents(&q, &apex()).unwrap();
        let triangles = sub.complex.faces_of_dim(2);
        assert!(triangles.iter().all(|t| sub.parent.contains_key(t)));
        let hit: BTreeSet<usize> = sub.parent.values().copied().collect();
        assert_eq!(hit.len(), 6);
    }

    #[test]
    fn shaded_counts() {
        let s = shaded_complex().unwrap();
        assert_eq!(s.f_vector(), vec![22, 54, 30]);
        assert_eq!(s.euler_characteristic(), -2);
        let k4 = SimplicialComplex::from_simplices(
            ["B", "C", "D", "E"].iter().flat_map(|x| ["B", "C", "D", "E"].iter().filter(move |y| x < *y).map(move |y| Simplex::from_tokens([*x, *y]).unwrap())),
        );
        assert!(k4.facets().iter().all(|e| s.contains_simplex(e)));
    }

    #[test]
    fn dunce_hat_has_no_free_faces() {
        let d = dunce_hat().unwrap();
        assert_eq!(d.euler_characteristic(), 1);
        assert!(free_faces(&d).is_empty());
    }

    #[test]
    fn cones_over_graphs() {
        assert_eq!(cone_over_graph("K5").unwrap().f_vector(), vec![6, 15, 10]);
        assert_eq!(cone_over_graph("K33").unwrap().f_vector(), vec![7, 15, 9]);
        assert!(matches!(cone_over_graph("K7"), Err(Error::UnknownConstruction(_))));
    }

    #[test]
    fn letter_names() {
        assert_eq!(letter_name(0), "A");
        assert_eq!(letter_name(25), "Z");
        assert_eq!(letter_name(26), "AA");
        assert_eq!(letter_name(27), "AB");
    }
}
