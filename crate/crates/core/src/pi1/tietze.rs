use std::collections::BTreeSet;

use super::{cyclic_reduce, inverse_word, Letter, Presentation, Word};

/// Result of [`tietze_simplify`].
#[derive(Clone, Debug)]
pub struct TietzeOutcome {
    pub presentation: Presentation,
    /// Generators eliminated.
    pub eliminations: usize,
    /// The pass budget ran out while eliminations were still possible.
    pub budget_exceeded: bool,
}

/// Canonical representative of a relator up to cyclic permutation and inversion.
fn canonical(r: &[Letter]) -> Word {
    let inv = inverse_word(r);
    let n = r.len();
    (0..n)
        .flat_map(|s| {
            let a: Word = r[s..].iter().chain(&r[..s]).copied().collect();
            let b: Word = inv[s..].iter().chain(&inv[..s]).copied().collect();
            [a, b]
        })
        .min()
        .unwrap_or_default()
}

fn normalize(relators: Vec<Word>) -> Vec<Word> {
    let mut seen = BTreeSet::new();
    relators
        .into_iter()
        .map(|r| cyclic_reduce(&r))
        .filter(|r| !r.is_empty() && seen.insert(canonical(r)))
        .collect()
}

/// Substitutes `gen ↦ replacement` and renumbers the generators above `gen`.
fn substitute(relators: &[Word], gen: usize, replacement: &[Letter]) -> Vec<Word> {
    let inv = inverse_word(replacement);
    let shift = |l: Letter| Letter { gen: if l.gen > gen { l.gen - 1 } else { l.gen }, inverse: l.inverse };
    relators
        .iter()
        .map(|r| {
            r.iter()
                .flat_map(|&l| -> Word {
                    if l.gen == gen {
                        if l.inverse { inv.clone() } else { replacement.to_vec() }
                    } else {
                        vec![l]
                    }
                })
                .map(shift)
                .collect()
        })
        .collect()
}

struct Candidate {
    estimate: i64,
    relator: usize,
    gen: usize,
}

/// Simplifies a presentation by Tietze moves.
///
/// Relators are kept freely and cyclically reduced, empty and duplicate relators
/// dropped, and a generator occurring exactly once in some relator is eliminated
/// by solving that relator for it. Among eligible eliminations the one with the
/// smallest estimated growth is tried first; an elimination that would push the
/// total relator length above `max_total_length` is skipped. Each elimination
/// counts as one pass.
pub fn tietze_simplify(p: &Presentation, max_total_length: usize, max_passes: usize) -> TietzeOutcome {
    let mut gens = p.generator_count();
    let mut relators = normalize(p.relators().to_vec());
    let mut eliminations = 0;
    let mut budget_exceeded = false;

    loop {
        let mut candidates = Vec::new();
        for (ri, r) in relators.iter().enumerate() {
            for g in 0..gens {
                if r.iter().filter(|l| l.gen == g).count() != 1 {
                    continue;
                }
                let elsewhere: usize = relators
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != ri)
                    .map(|(_, w)| w.iter().filter(|l| l.gen == g).count())
                    .sum();
                let estimate = elsewhere as i64 * (r.len() as i64 - 2) - r.len() as i64;
                candidates.push(Candidate { estimate, relator: ri, gen: g });
            }
        }
        if candidates.is_empty() {
            break;
        }
        if eliminations >= max_passes {
            budget_exceeded = true;
            break;
        }
        candidates.sort_by_key(|c| (c.estimate, relators[c.relator].len(), c.relator, c.gen));

        let mut applied = false;
        for c in candidates {
            let r = &relators[c.relator];
            let at = r.iter().position(|l| l.gen == c.gen).unwrap();
            let rotated: Word = r[at..].iter().chain(&r[..at]).copied().collect();
            let rest = &rotated[1..];
            // g·rest = 1 gives g = rest^-1; g^-1·rest = 1 gives g = rest
            let replacement = if rotated[0].inverse { rest.to_vec() } else { inverse_word(rest) };
            let others: Vec<Word> =
                relators.iter().enumerate().filter(|&(j, _)| j != c.relator).map(|(_, w)| w.clone()).collect();
            let next = normalize(substitute(&others, c.gen, &replacement));
            if next.iter().map(Vec::len).sum::<usize>() > max_total_length {
                continue;
            }
            relators = next;
            gens -= 1;
            eliminations += 1;
            applied = true;
            break;
        }
        if !applied {
            break;
        }
    }

    TietzeOutcome {
        presentation: Presentation::new(gens, relators).expect("generators stay in range"),
        eliminations,
        budget_exceeded,
    }
}
