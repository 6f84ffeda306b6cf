use std::collections::BTreeSet;

use super::perm::closure;
use super::{Letter, Perm, PermGroup, Presentation, Word};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_GENERATORS: usize = 8;

/// Images of the generators of a presentation in a permutation group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub images: Vec<Perm>,
}

fn evaluate(word: &[Letter], images: &[Perm], inverses: &[Perm], degree: usize) -> Perm {
    word.iter().fold(Perm::identity(degree), |acc, l| {
        acc.then(if l.inverse { &inverses[l.gen] } else { &images[l.gen] })
    })
}

/// Every relator maps to the identity.
pub fn verify_homomorphism(p: &Presentation, hom: &GroupHom, degree: usize) -> bool {
    if hom.images.len() != p.generator_count() || hom.images.iter().any(|g| g.degree() != degree) {
        return false;
    }
    let inverses: Vec<Perm> = hom.images.iter().map(Perm::inverse).collect();
    p.relators().iter().all(|r| evaluate(r, &hom.images, &inverses, degree).is_identity())
}

/// Backtracking search for a surjective homomorphism onto `target`.
///
/// Generators are assigned in order of decreasing relator participation, each
/// ranging over the target's elements in sorted order; a relator is checked as
/// soon as all of its generators have images. The first surjective assignment
/// found is returned.
pub fn find_epimorphism(p: &Presentation, target: &PermGroup, max_generators: usize) -> Result<Option<GroupHom>> {
    let n = p.generator_count();
    if n > max_generators {
        return Err(Error::SearchRefused(format!(
            "{n} generators exceed the search bound {max_generators}; simplify the presentation first"
        )));
    }
    let elements = target.elements();
    let order = elements.len();
    let degree = target.degree();

    let mut participation = vec![0usize; n];
    for r in p.relators() {
        for g in r.iter().map(|l| l.gen).collect::<BTreeSet<_>>() {
            participation[g] += 1;
        }
    }
    let mut search_order: Vec<usize> = (0..n).collect();
    search_order.sort_by_key(|&g| (std::cmp::Reverse(participation[g]), g));
    let mut depth_of = vec![0; n];
    for (d, &g) in search_order.iter().enumerate() {
        depth_of[g] = d;
    }
    // relators that become checkable once depth d is assigned
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in p.relators() {
        if let Some(d) = r.iter().map(|l| depth_of[l.gen]).max() {
            due[d].push(r);
        }
    }

    let mut images = vec![Perm::identity(degree); n];
    let mut inverses = images.clone();
    let mut choice = vec![0usize; n];
    if n == 0 {
        return Ok((order == 1).then(|| GroupHom { images: Vec::new() }));
    }
    let mut depth = 0usize;
    loop {
        if choice[depth] == order {
            choice[depth] = 0;
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        let g = search_order[depth];
        images[g] = elements[choice[depth]].clone();
        inverses[g] = images[g].inverse();
        let consistent = due[depth].iter().all(|r| evaluate(r, &images, &inverses, degree).is_identity());
        if !consistent {
            choice[depth] += 1;
            continue;
        }
        if depth + 1 < n {
            depth += 1;
            continue;
        }
        if closure(degree, &images).len() == order {
            let hom = GroupHom { images: images.clone() };
            debug_assert!(verify_homomorphism(p, &hom, degree));
            return Ok(Some(hom));
        }
        choice[depth] += 1;
    }
}
