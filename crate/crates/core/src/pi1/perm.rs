use std::collections::{BTreeSet, VecDeque};
use std::fmt;

/// A permutation of `{0, .., n-1}`, acting on the right: `x·(p q) = (x·p)·q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let distinct: BTreeSet<usize> = images.iter().copied().collect();
        (distinct.len() == n && images.iter().all(|&i| i < n)).then_some(Perm { images })
    }

    /// Builds a permutation of `n` points from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                *images.get_mut(x)? = c[(i + 1) % c.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0;
        for s in 0..self.images.len() {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }

    /// Non-trivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for s in 0..self.images.len() {
            if seen[s] || self.images[s] == s {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Perm {
    /// Cycle notation on the points `1..=n`; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// A finite permutation group given by generators.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        assert!(generators.iter().all(|g| g.degree() == degree), "generator degree mismatch");
        PermGroup { degree, generators }
    }

    /// The alternating group on five points, generated by `(1 2 3)` and `(1 2 3 4 5)`.
    pub fn alternating5() -> Self {
        PermGroup::new(
            5,
            vec![Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(), Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()],
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements, sorted by image lists.
    pub fn elements(&self) -> Vec<Perm> {
        closure(self.degree, &self.generators).into_iter().collect()
    }

    pub fn order(&self) -> usize {
        closure(self.degree, &self.generators).len()
    }
}

/// The subgroup generated by `gens`.
pub fn closure(degree: usize, gens: &[Perm]) -> BTreeSet<Perm> {
    let id = Perm::identity(degree);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}
