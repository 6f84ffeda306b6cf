//! Integer homology of simplicial and cellular chain complexes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::snf::{invariant_factors, IntegerMatrix};

/// A finitely generated abelian group `Z^rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk`, `t1 | ... | tk`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Cokernel-style group `Z^generators / (image spanned by invariant factors)`.
    pub(crate) fn from_factors(generators: usize, factors: &[BigInt]) -> Self {
        let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
        HomologyGroup { rank: generators - factors.len(), torsion }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Boundary operators `∂k : C_k → C_{k-1}` for `k = 1..=top`, with the chain group ranks.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `ranks[k]` = number of `k`-cells.
    pub ranks: Vec<usize>,
    /// `boundaries[k-1]` is `∂k`, a `ranks[k-1] × ranks[k]` matrix.
    pub boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::Dimension("boundary count must be one less than the number of chain groups".into()));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::Dimension(format!("∂{} has shape {}x{}", k + 1, d.rows(), d.cols())));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// `H_k` for every `k`; with `reduced`, `∂0` is the augmentation.
    pub fn homology(&self, reduced: bool) -> Vec<HomologyGroup> {
        let top = self.ranks.len();
        let factors: Vec<Vec<BigInt>> = self.boundaries.iter().map(invariant_factors).collect();
        (0..top)
            .map(|k| {
                let rank_out = if k == 0 {
                    usize::from(reduced && self.ranks[0] > 0)
                } else {
                    factors[k - 1].len()
                };
                let incoming: &[BigInt] = factors.get(k).map_or(&[], Vec::as_slice);
                let cycles = self.ranks[k] - rank_out;
                let torsion = incoming.iter().filter(|d| !d.is_one()).cloned().collect();
                HomologyGroup { rank: cycles - incoming.len(), torsion }
            })
            .collect()
    }
}

/// `∂k` of `K`: rows are the `(k-1)`-faces, columns the `k`-faces, both in canonical
/// order; deleting the `i`-th vertex contributes `(-1)^i`.
pub fn boundary_matrix(k: &SimplicialComplex, dim: usize) -> Result<IntegerMatrix> {
    let top = k.dim().ok_or_else(|| Error::Dimension("empty complex has no boundary maps".into()))?;
    if dim == 0 || dim > top {
        return Err(Error::Dimension(format!("boundary_matrix needs 1 <= k <= {top}, got {dim}")));
    }
    let lower = k.faces_of_dim(dim - 1);
    let upper = k.faces_of_dim(dim);
    Ok(boundary_between(&lower, &upper))
}

fn boundary_between(lower: &[Simplex], upper: &[Simplex]) -> IntegerMatrix {
    let index: BTreeMap<&Simplex, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = IntegerMatrix::zeros(lower.len(), upper.len());
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let face = s.facet_without(i).expect("dimension >= 1");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m.set(index[&face], j, BigInt::from(sign));
        }
    }
    m
}

/// The simplicial chain complex of `K`.
pub fn chain_complex(k: &SimplicialComplex) -> ChainComplex {
    let Some(top) = k.dim() else {
        return ChainComplex { ranks: vec![0], boundaries: Vec::new() };
    };
    let faces: Vec<Vec<Simplex>> = (0..=top).map(|d| k.faces_of_dim(d)).collect();
    let boundaries = (1..=top).map(|d| boundary_between(&faces[d - 1], &faces[d])).collect();
    ChainComplex { ranks: faces.iter().map(Vec::len).collect(), boundaries }
}

/// `H_k(K; Z)`, unreduced.
pub fn homology(k: &SimplicialComplex, dim: usize) -> Result<HomologyGroup> {
    let top = k.dim().ok_or_else(|| Error::Dimension("empty complex".into()))?;
    if dim > top {
        return Err(Error::Dimension(format!("homology degree {dim} exceeds dimension {top}")));
    }
    Ok(chain_complex(k).homology(false).swap_remove(dim))
}

/// Reduced homology in degrees `0..=dim K`.
pub fn reduced_homology_all(k: &SimplicialComplex) -> Vec<HomologyGroup> {
    if k.is_empty() {
        return Vec::new();
    }
    chain_complex(k).homology(true)
}

/// All reduced integer homology vanishes. The empty complex is not acyclic.
pub fn is_z_acyclic(k: &SimplicialComplex) -> bool {
    !k.is_empty() && reduced_homology_all(k).iter().all(HomologyGroup::is_trivial)
}
