//! Greedy elementary collapses.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex, VertexLabel};

/// Order in which free faces are consumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseStrategy {
    /// Smallest free face in canonical order.
    Lexicographic,
    /// Free faces avoiding the given vertex first, so the complex shrinks onto it.
    ApexFirst(VertexLabel),
    /// Uniform choice among the free faces, from a seeded generator.
    Randomized(u64),
}

/// One elementary collapse: `free` is removed together with its unique coface `facet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryCollapse {
    pub free: Simplex,
    pub facet: Simplex,
}

#[derive(Clone, Debug)]
pub struct CollapseOutcome {
    pub complex: SimplicialComplex,
    pub collapsed_to_point: bool,
    pub log: Vec<ElementaryCollapse>,
}

/// Faces contained in exactly one other face, each paired with that face.
///
/// A face with a single codimension-one coface cannot lie in anything larger,
/// so the coface is automatically maximal.
pub fn free_faces(k: &SimplicialComplex) -> Vec<ElementaryCollapse> {
    let faces = k.faces();
    let cofaces = coface_map(&faces);
    faces
        .iter()
        .filter_map(|s| match cofaces.get(s) {
            Some(c) if c.len() == 1 => Some(ElementaryCollapse { free: s.clone(), facet: c.iter().next().unwrap().clone() }),
            _ => None,
        })
        .collect()
}

fn coface_map(faces: &BTreeSet<Simplex>) -> BTreeMap<Simplex, BTreeSet<Simplex>> {
    let mut cofaces: BTreeMap<Simplex, BTreeSet<Simplex>> = faces.iter().map(|s| (s.clone(), BTreeSet::new())).collect();
    for s in faces {
        for i in 0..s.len() {
            if let Some(b) = s.facet_without(i) {
                cofaces.get_mut(&b).unwrap().insert(s.clone());
            }
        }
    }
    cofaces
}

/// Collapses free faces until none is left.
pub fn greedy_collapse(k: &SimplicialComplex, strategy: &CollapseStrategy) -> CollapseOutcome {
    let mut faces = k.faces();
    let mut cofaces = coface_map(&faces);
    let mut free: BTreeSet<Simplex> =
        cofaces.iter().filter(|(_, c)| c.len() == 1).map(|(s, _)| s.clone()).collect();
    let mut rng = match strategy {
        CollapseStrategy::Randomized(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut log = Vec::new();

    loop {
        let chosen = match strategy {
            CollapseStrategy::Lexicographic => free.iter().next().cloned(),
            CollapseStrategy::ApexFirst(apex) => {
                free.iter().find(|s| !s.contains(apex)).or_else(|| free.iter().next()).cloned()
            }
            CollapseStrategy::Randomized(_) => {
                let pool: Vec<&Simplex> = free.iter().collect();
                pool.choose(rng.as_mut().unwrap()).map(|s| (*s).clone())
            }
        };
        let Some(sigma) = chosen else { break };
        let tau = cofaces[&sigma].iter().next().unwrap().clone();

        for gone in [&tau, &sigma] {
            faces.remove(gone);
            free.remove(gone);
            cofaces.remove(gone);
            for i in 0..gone.len() {
                if let Some(b) = gone.facet_without(i) {
                    if let Some(c) = cofaces.get_mut(&b) {
                        c.remove(gone);
                        if c.len() == 1 {
                            free.insert(b);
                        } else {
                            free.remove(&b);
                        }
                    }
                }
            }
        }
        log.push(ElementaryCollapse { free: sigma, facet: tau });
    }

    let complex = SimplicialComplex::from_simplices(faces);
    let collapsed_to_point = complex.facets().len() == 1 && complex.dim() == Some(0);
    CollapseOutcome { complex, collapsed_to_point, log }
}
