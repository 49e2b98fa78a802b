use serde::Serialize;
use thiserror::Error;

use super::{metric_certificate, MetricCertificate, Ratio, Symmetrized};
use crate::freewords::{Letter, Word};
use crate::presentations::FinitePresentation;
use crate::uce::{Factor, NormalClosureElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DehnError {
    #[error(
        "presentation is not C'(1/6): piece of length {piece} in a relator of length {relator}"
    )]
    NotCertified { piece: usize, relator: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Trivial,
    Nontrivial,
}

/// One replacement: `removed` letters at `position` matched more than half
/// of a rotation of `relator` and were replaced by `inserted` letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DehnStep {
    pub position: usize,
    pub relator: usize,
    pub removed: usize,
    pub inserted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnOutcome {
    pub verdict: Verdict,
    /// Dehn-reduced form of the input.
    pub residue: Word,
    pub steps: Vec<DehnStep>,
    /// Product of relator conjugates with `input = certificate * residue`
    /// in the free group.
    pub certificate: NormalClosureElement,
}

struct Node {
    children: Vec<(usize, usize)>,
    /// Shortest symmetrized word through this node: (length, occurrence).
    best: (usize, usize),
}

/// Dehn's algorithm over a C'(1/6)-certified presentation.
pub struct DehnSolver<'a> {
    p: &'a FinitePresentation,
    sym: Symmetrized,
    words: Vec<Word>,
    trie: Vec<Node>,
    max_len: usize,
    pub certificate: MetricCertificate,
}

impl<'a> DehnSolver<'a> {
    pub fn new(p: &'a FinitePresentation) -> Result<Self, DehnError> {
        let certificate = metric_certificate(p, Ratio::SIXTH);
        if let Some(w) = &certificate.witness {
            return Err(DehnError::NotCertified {
                piece: w.piece_length,
                relator: w.relator_length,
            });
        }
        let sym = Symmetrized::new(p);
        let words: Vec<Word> = sym.occurrences.iter().map(|o| sym.word(o)).collect();
        let mut trie = vec![Node {
            children: Vec::new(),
            best: (usize::MAX, usize::MAX),
        }];
        for (id, w) in words.iter().enumerate() {
            let mut node = 0;
            for l in w.letters() {
                let code = l.code();
                node = match trie[node].children.iter().find(|(c, _)| *c == code) {
                    Some(&(_, child)) => child,
                    None => {
                        trie.push(Node {
                            children: Vec::new(),
                            best: (usize::MAX, usize::MAX),
                        });
                        let child = trie.len() - 1;
                        trie[node].children.push((code, child));
                        child
                    }
                };
                trie[node].best = trie[node].best.min((w.len(), id));
            }
        }
        let max_len = words.iter().map(Word::len).max().unwrap_or(0);
        Ok(DehnSolver {
            p,
            sym,
            words,
            trie,
            max_len,
            certificate,
        })
    }

    /// Leftmost start, then longest match, whose matched length is more than
    /// half of the shortest symmetrized word it prefixes.
    fn find(&self, w: &[Letter], from: usize) -> Option<(usize, usize, usize)> {
        for i in from..w.len() {
            let mut node = 0;
            let mut hit = None;
            for (k, l) in w[i..].iter().enumerate() {
                let code = l.code();
                let Some(&(_, child)) = self.trie[node].children.iter().find(|(c, _)| *c == code)
                else {
                    break;
                };
                node = child;
                let (len, id) = self.trie[node].best;
                if 2 * (k + 1) > len {
                    hit = Some((i, k + 1, id));
                }
            }
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    pub fn reduce(&self, w: &Word) -> DehnOutcome {
        let mut cur: Vec<Letter> = w.reduced().into_letters();
        let mut factors = Vec::new();
        let mut steps = Vec::new();
        let mut from = 0;
        while let Some((i, len, id)) = self.find(&cur, from) {
            let s = &self.words[id];
            let occ = &self.sym.occurrences[id];
            let v_inv = s.subword(len, s.len()).inverse();
            let base = self.sym.base(occ.relator, occ.inverted);
            let prefix = base.subword(0, occ.offset);
            let core_conj = &self.sym.cores[occ.relator].1;
            let alpha = Word::from_letters(cur[..i].to_vec());
            let conj = Word::product([&alpha, &prefix.inverse(), &core_conj.inverse()]);
            factors.push(Factor::new(
                conj,
                occ.relator,
                if occ.inverted { -1 } else { 1 },
            ));
            steps.push(DehnStep {
                position: i,
                relator: occ.relator,
                removed: len,
                inserted: v_inv.len(),
            });

            let mut next = Word::from_letters(cur[..i].to_vec());
            next = next
                .mul(&v_inv)
                .mul(&Word::from_letters(cur[i + len..].to_vec()));
            let unchanged = cur
                .iter()
                .zip(next.letters())
                .take_while(|(a, b)| a == b)
                .count();
            from = unchanged.saturating_sub(self.max_len);
            cur = next.into_letters();
        }
        let residue = Word::from_letters(cur);
        let certificate = NormalClosureElement::from_factors(self.p, factors);
        debug_assert_eq!(
            certificate.expanded.mul(&residue),
            w.reduced(),
            "Dehn certificate mismatch"
        );
        let verdict = if residue.is_empty() {
            Verdict::Trivial
        } else {
            Verdict::Nontrivial
        };
        DehnOutcome {
            verdict,
            residue,
            steps,
            certificate,
        }
    }
}

/// Convenience wrapper building a solver for a single word.
pub fn dehn_word_problem(p: &FinitePresentation, w: &Word) -> Result<DehnOutcome, DehnError> {
    Ok(DehnSolver::new(p)?.reduce(w))
}
