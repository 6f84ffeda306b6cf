//! Fundamental groups: edge-path presentations, Tietze simplification,
//! abelianization, homomorphisms onto permutation groups and coset enumeration.

mod coset;
mod epi;
mod perm;
mod tietze;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::complex::{Simplex, SimplicialComplex, VertexLabel};
use crate::error::{Error, Result};
use crate::homology::HomologyGroup;
use crate::snf::{invariant_factors, IntegerMatrix};

pub use coset::{coset_enumeration, CosetOutcome, DEFAULT_MAX_COSETS};
pub use epi::{find_epimorphism, verify_homomorphism, GroupHom, DEFAULT_MAX_GENERATORS};
pub use perm::{Perm, PermGroup};
pub use tietze::{tietze_simplify, TietzeOutcome};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

pub type Word = Vec<Letter>;

/// The word `g_i^e ...` from `(generator, exponent)` pairs.
pub fn word_from_exponents(pairs: &[(usize, i64)]) -> Word {
    pairs
        .iter()
        .flat_map(|&(g, e)| {
            let l = if e < 0 { Letter::neg(g) } else { Letter::pos(g) };
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        })
        .collect()
}

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// Free reduction.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
        w.pop();
        w.remove(0);
    }
    w
}

/// `⟨ generators | relators ⟩`, relators kept freely and cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        if let Some(l) = relators.iter().flatten().find(|l| l.gen >= generators) {
            return Err(Error::Malformed(format!("relator uses generator {} of {generators}", l.gen)));
        }
        let relators = relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
        Ok(Presentation { generators, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    /// Relator exponent sums, one row per relator.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for l in r {
                let cur = m.get(i, l.gen).clone();
                m.set(i, l.gen, cur + BigInt::from(l.exponent()));
            }
        }
        m
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.generators).map(|g| format!("g{g}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.iter().map(|l| if l.inverse { format!("g{}^-1", l.gen) } else { format!("g{}", l.gen) }).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// Spanning-tree presentation of `π1(K, basepoint)`.
///
/// The tree is grown breadth-first from the basepoint with neighbours visited in
/// label order; each remaining edge (oriented from smaller to larger label, in
/// canonical order) is a generator and each triangle `[a,b,c]` gives the relator
/// `ab · bc · (ac)^-1`.
pub fn edge_path_presentation(k: &SimplicialComplex, basepoint: &VertexLabel) -> Result<Presentation> {
    if !k.has_vertex(basepoint) {
        return Err(Error::UnknownVertex(basepoint.to_string()));
    }
    let adj = k.adjacency();
    let mut seen = BTreeSet::from([basepoint.clone()]);
    let mut tree: BTreeSet<(VertexLabel, VertexLabel)> = BTreeSet::new();
    let mut queue = VecDeque::from([basepoint.clone()]);
    while let Some(v) = queue.pop_front() {
        for w in &adj[&v] {
            if seen.insert(w.clone()) {
                tree.insert(if v < *w { (v.clone(), w.clone()) } else { (w.clone(), v.clone()) });
                queue.push_back(w.clone());
            }
        }
    }
    if seen.len() != k.vertices().len() {
        return Err(Error::Disconnected);
    }
    let mut generator_of: BTreeMap<(VertexLabel, VertexLabel), usize> = BTreeMap::new();
    for e in k.faces_of_dim(1) {
        let key = (e.vertices()[0].clone(), e.vertices()[1].clone());
        if !tree.contains(&key) {
            let next = generator_of.len();
            generator_of.insert(key, next);
        }
    }
    let edge_letter = |a: &VertexLabel, b: &VertexLabel, inverse: bool| -> Option<Letter> {
        generator_of.get(&(a.clone(), b.clone())).map(|&g| Letter { gen: g, inverse })
    };
    let relators = k
        .faces_of_dim(2)
        .iter()
        .map(|t: &Simplex| {
            let [a, b, c] = [&t.vertices()[0], &t.vertices()[1], &t.vertices()[2]];
            [edge_letter(a, b, false), edge_letter(b, c, false), edge_letter(a, c, true)].into_iter().flatten().collect()
        })
        .collect();
    Presentation::new(generator_of.len(), relators)
}

/// `π1^ab` from the relator exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> HomologyGroup {
    HomologyGroup::from_factors(p.generators, &invariant_factors(&p.exponent_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{label, make_complex};

    #[test]
    fn reductions() {
        let (a, b) = (Letter::pos(0), Letter::pos(1));
        assert_eq!(free_reduce(&[a, b, b.inv(), a]), vec![a, a]);
        assert_eq!(cyclic_reduce(&[a.inv(), b, a]), vec![b]);
        assert!(cyclic_reduce(&[a, b, b.inv(), a.inv()]).is_empty());
    }

    #[test]
    fn circle_and_triangle() {
        let c = make_complex([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap();
        let p = edge_path_presentation(&c, &label("a")).unwrap();
        assert_eq!((p.generator_count(), p.relators().len()), (1, 0));
        assert_eq!(abelianization(&p), HomologyGroup { rank: 1, torsion: vec![] });
        let t = make_complex([["a", "b", "c"]]).unwrap();
        let p = edge_path_presentation(&t, &label("a")).unwrap();
        assert_eq!((p.generator_count(), p.relators().len()), (1, 1));
        assert!(abelianization(&p).is_trivial());
    }

    #[test]
    fn disconnected_is_rejected() {
        let k = make_complex([["a", "b"], ["c", "d"]]).unwrap();
        assert_eq!(edge_path_presentation(&k, &label("a")), Err(Error::Disconnected));
    }

    #[test]
    fn abelianizations() {
        let (a, b) = (Letter::pos(0), Letter::pos(1));
        let comm = Presentation::new(2, vec![vec![a, b, a.inv(), b.inv()]]).unwrap();
        assert_eq!(abelianization(&comm).rank, 2);
        let free = Presentation::new(3, vec![]).unwrap();
        assert_eq!(abelianization(&free).rank, 3);
        let z6 = Presentation::new(1, vec![word_from_exponents(&[(0, 6)])]).unwrap();
        assert_eq!(abelianization(&z6).torsion, vec![BigInt::from(6)]);
    }
}
