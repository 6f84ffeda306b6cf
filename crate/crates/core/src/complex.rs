//! Finite abstract simplicial complexes and the elementary constructions on them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A vertex name: a non-empty token without whitespace.
///
/// Labels are totally ordered lexicographically; this order fixes the canonical
/// vertex order inside a [`Simplex`] and therefore all boundary signs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel(String);

impl VertexLabel {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::Malformed("empty vertex label".into()));
        }
        if name.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(Error::Malformed(format!("vertex label {name:?} contains whitespace")));
        }
        Ok(VertexLabel(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VertexLabel::new(s)
    }
}

/// Builds a label from a string that is known to be a valid token.
pub(crate) fn label(s: &str) -> VertexLabel {
    VertexLabel::new(s).expect("static vertex label must be a valid token")
}

/// A simplex, stored as its strictly increasing list of vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<VertexLabel>,
}

impl Simplex {
    /// Canonicalizes `vertices`; rejects empty input and repeated labels.
    pub fn new<I>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexLabel>,
    {
        let mut vertices: Vec<VertexLabel> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::Malformed("empty simplex".into()));
        }
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("repeated label `{}` inside a simplex", w[0])));
        }
        Ok(Simplex { vertices })
    }

    /// Parses labels from string tokens.
    pub fn from_tokens<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let labels = tokens
            .into_iter()
            .map(|s| VertexLabel::new(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(labels)
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<VertexLabel>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    /// The codimension-one face obtained by deleting the `i`-th vertex.
    pub fn facet_without(&self, i: usize) -> Option<Simplex> {
        if self.vertices.len() < 2 {
            return None;
        }
        let mut v = self.vertices.clone();
        v.remove(i);
        Some(Simplex { vertices: v })
    }

    /// The simplex with `v` deleted, or `None` when nothing is left.
    pub fn without(&self, v: &VertexLabel) -> Option<Simplex> {
        let rest: Vec<VertexLabel> = self.vertices.iter().filter(|w| *w != v).cloned().collect();
        if rest.is_empty() {
            None
        } else {
            Some(Simplex { vertices: rest })
        }
    }

    /// The join with one extra vertex.
    pub fn with(&self, v: &VertexLabel) -> Result<Simplex> {
        if self.contains(v) {
            return Err(Error::LabelCollision(v.to_string()));
        }
        let mut w = self.vertices.clone();
        w.push(v.clone());
        Simplex::new(w)
    }

    /// All non-empty faces, this simplex included.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        (1u32..(1 << n))
            .map(|mask| Simplex {
                vertices: (0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.vertices[i].clone()).collect(),
            })
            .collect()
    }

    pub fn map(&self, f: &BTreeMap<VertexLabel, VertexLabel>) -> Result<Simplex> {
        Simplex::new(self.vertices.iter().map(|v| f.get(v).cloned().unwrap_or_else(|| v.clone())))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A vertex permutation, given by its images.
pub type VertexMap = BTreeMap<VertexLabel, VertexLabel>;

/// A finite abstract simplicial complex represented by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    facets: BTreeSet<Simplex>,
    vertices: BTreeSet<VertexLabel>,
}

/// Builds a complex from lists of vertex tokens.
pub fn make_complex<I, F, S>(facets: I) -> Result<SimplicialComplex>
where
    I: IntoIterator<Item = F>,
    F: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let simplices = facets.into_iter().map(Simplex::from_tokens).collect::<Result<Vec<_>>>()?;
    Ok(SimplicialComplex::from_simplices(simplices))
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The complex generated by `simplices`; dominated simplices are absorbed.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut all: Vec<Simplex> = simplices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Simplex> = Vec::new();
        for s in all {
            if !kept.iter().any(|k| k.len() > s.len() && s.is_face_of(k)) {
                kept.push(s);
            }
        }
        let vertices = kept.iter().flat_map(|s| s.vertices.iter().cloned()).collect();
        SimplicialComplex { facets: kept.into_iter().collect(), vertices }
    }

    pub fn facets(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn vertices(&self) -> &BTreeSet<VertexLabel> {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn has_vertex(&self, v: &VertexLabel) -> bool {
        self.vertices.contains(v)
    }

    /// Largest facet dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(Simplex::dim).max()
    }

    /// Every face, in canonical order.
    pub fn faces(&self) -> BTreeSet<Simplex> {
        self.facets.iter().flat_map(Simplex::faces).collect()
    }

    /// Faces of dimension `k`, in canonical (lexicographic) order.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Simplex> {
        let set: BTreeSet<Simplex> =
            self.facets.iter().flat_map(Simplex::faces).filter(|s| s.dim() == k).collect();
        set.into_iter().collect()
    }

    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let Some(d) = self.dim() else { return Vec::new() };
        let mut counts = vec![0usize; d + 1];
        for s in self.faces() {
            counts[s.dim()] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// The `k`-skeleton.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        SimplicialComplex::from_simplices(self.faces().into_iter().filter(|s| s.dim() <= k))
    }

    /// Vertex adjacency of the 1-skeleton.
    pub fn adjacency(&self) -> BTreeMap<VertexLabel, BTreeSet<VertexLabel>> {
        let mut adj: BTreeMap<VertexLabel, BTreeSet<VertexLabel>> =
            self.vertices.iter().map(|v| (v.clone(), BTreeSet::new())).collect();
        for e in self.faces_of_dim(1) {
            let (a, b) = (&e.vertices[0], &e.vertices[1]);
            adj.get_mut(a).unwrap().insert(b.clone());
            adj.get_mut(b).unwrap().insert(a.clone());
        }
        adj
    }

    /// Connected components of the 1-skeleton, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<VertexLabel>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(v) = queue.pop_front() {
                for w in &adj[&v] {
                    if seen.insert(w.clone()) {
                        queue.push_back(w.clone());
                    }
                }
                comp.push(v);
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    fn require_vertex(&self, v: &VertexLabel) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    /// Closed star: the facets through `v` with all their faces.
    pub fn star(&self, v: &VertexLabel) -> Result<SimplicialComplex> {
        self.require_vertex(v)?;
        Ok(SimplicialComplex::from_simplices(self.facets.iter().filter(|f| f.contains(v)).cloned()))
    }

    pub fn link(&self, v: &VertexLabel) -> Result<SimplicialComplex> {
        self.require_vertex(v)?;
        Ok(SimplicialComplex::from_simplices(
            self.facets.iter().filter(|f| f.contains(v)).filter_map(|f| f.without(v)),
        ))
    }

    /// All faces that do not contain `v`.
    pub fn remove_star(&self, v: &VertexLabel) -> Result<SimplicialComplex> {
        self.require_vertex(v)?;
        Ok(SimplicialComplex::from_simplices(self.facets.iter().filter_map(|f| f.without(v))))
    }

    pub fn cone(&self, apex: &VertexLabel) -> Result<SimplicialComplex> {
        if self.has_vertex(apex) {
            return Err(Error::LabelCollision(apex.to_string()));
        }
        if self.is_empty() {
            return Ok(SimplicialComplex::from_simplices([Simplex::from_sorted_unchecked(vec![apex.clone()])]));
        }
        let facets = self.facets.iter().map(|f| f.with(apex)).collect::<Result<Vec<_>>>()?;
        Ok(SimplicialComplex::from_simplices(facets))
    }

    /// Renames vertices; labels missing from `map` are kept.
    pub fn relabel(&self, map: &VertexMap) -> Result<SimplicialComplex> {
        let facets = self.facets.iter().map(|f| f.map(map)).collect::<Result<Vec<_>>>()?;
        Ok(SimplicialComplex::from_simplices(facets))
    }

    /// Identifies `v1 ∈ self` with `v2 ∈ other`.
    ///
    /// Other labels of `other` that clash with `self` get the first free suffix
    /// `_2`, `_3`, ...
    pub fn wedge(&self, other: &SimplicialComplex, v1: &VertexLabel, v2: &VertexLabel) -> Result<SimplicialComplex> {
        self.require_vertex(v1)?;
        other.require_vertex(v2)?;
        let mut pinned = VertexMap::new();
        pinned.insert(v2.clone(), v1.clone());
        let map = clash_free_relabeling(self, other, pinned)?;
        let moved = other.relabel(&map)?;
        Ok(SimplicialComplex::from_simplices(self.facets.iter().chain(moved.facets.iter()).cloned()))
    }

    /// Connected sum of 2-complexes along triangles.
    ///
    /// The open triangle `t1` is removed from `self` (its boundary stays), and
    /// `other` is glued so that `t2` is attached along the boundary of `t1`, with
    /// the vertices of `t2` matched to those of `t1` in canonical order. The
    /// interior of `t2` is kept, so χ is additive minus one.
    pub fn connected_sum(
        &self,
        t1: &Simplex,
        other: &SimplicialComplex,
        t2: &Simplex,
    ) -> Result<SimplicialComplex> {
        for (k, t) in [(self, t1), (other, t2)] {
            if k.dim() != Some(2) {
                return Err(Error::Dimension("connected sum needs 2-dimensional complexes".into()));
            }
            if t.dim() != 2 || !k.facets.contains(t) {
                return Err(Error::NotATriangle(t.to_string()));
            }
        }
        let pinned: VertexMap = t2.vertices.iter().cloned().zip(t1.vertices.iter().cloned()).collect();
        let map = clash_free_relabeling(self, other, pinned)?;
        let moved = other.relabel(&map)?;
        let mut facets: Vec<Simplex> = self.facets.iter().filter(|f| *f != t1).cloned().collect();
        facets.extend((0..3).filter_map(|i| t1.facet_without(i)));
        facets.extend(moved.facets.iter().cloned());
        Ok(SimplicialComplex::from_simplices(facets))
    }

    /// True iff the complex is a (connected) tree.
    pub fn is_tree(&self) -> Result<bool> {
        match self.dim() {
            Some(d) if d > 1 => return Err(Error::Dimension(format!("is_tree needs dim <= 1, got {d}"))),
            None => return Ok(false),
            _ => {}
        }
        let f = self.f_vector();
        let edges = f.get(1).copied().unwrap_or(0);
        Ok(self.is_connected() && edges + 1 == f[0])
    }

    /// Checks that every map is a bijection of the vertex set sending facets to facets.
    ///
    /// The group generated by such maps then acts simplicially.
    pub fn verify_simplicial_action(&self, perms: &[VertexMap]) -> Result<bool> {
        for p in perms {
            self.check_bijection(p)?;
        }
        for p in perms {
            for f in &self.facets {
                if !self.facets.contains(&f.map(p)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub(crate) fn check_bijection(&self, p: &VertexMap) -> Result<()> {
        let keys: BTreeSet<&VertexLabel> = p.keys().collect();
        let images: BTreeSet<&VertexLabel> = p.values().collect();
        let verts: BTreeSet<&VertexLabel> = self.vertices.iter().collect();
        if keys != verts || images != verts {
            return Err(Error::NotABijection(format!(
                "map covers {} of {} vertices with {} distinct images",
                keys.len(),
                verts.len(),
                images.len()
            )));
        }
        Ok(())
    }
}

/// Relabels `other` so that it meets `base` only in the images of `pinned`.
fn clash_free_relabeling(
    base: &SimplicialComplex,
    other: &SimplicialComplex,
    pinned: VertexMap,
) -> Result<VertexMap> {
    let mut used: BTreeSet<VertexLabel> = base.vertices.clone();
    used.extend(pinned.values().cloned());
    let mut map = pinned;
    for v in &other.vertices {
        if map.contains_key(v) {
            continue;
        }
        let mut target = v.clone();
        let mut k = 2;
        while used.contains(&target) {
            target = VertexLabel::new(format!("{v}_{k}"))?;
            k += 1;
            if k > 1_000_000 {
                return Err(Error::LabelCollision(v.to_string()));
            }
        }
        used.insert(target.clone());
        map.insert(v.clone(), target);
    }
    Ok(map)
}

/// Composition `(a ∘ b)(v) = a(b(v))`.
pub fn compose(a: &VertexMap, b: &VertexMap) -> VertexMap {
    b.iter().map(|(k, v)| (k.clone(), a.get(v).cloned().unwrap_or_else(|| v.clone()))).collect()
}
