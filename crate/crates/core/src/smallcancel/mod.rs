//! Metric small cancellation: pieces of the symmetrized relator set, the
//! C'(p/q) certificate, and Dehn's algorithm.

mod dehn;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::freewords::{Letter, Word};
use crate::presentations::FinitePresentation;

pub use dehn::{dehn_word_problem, DehnError, DehnOutcome, DehnSolver, DehnStep, Verdict};

/// A positive rational `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub const SIXTH: Ratio = Ratio { num: 1, den: 6 };

    pub fn new(num: u64, den: u64) -> Option<Ratio> {
        (num > 0 && den > 0).then_some(Ratio { num, den })
    }

    /// `len < self * total`, exactly.
    pub fn exceeds(&self, len: usize, total: usize) -> bool {
        (len as u128) * (self.den as u128) < (total as u128) * (self.num as u128)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once('/')
            .ok_or_else(|| format!("expected p/q, got {s:?}"))?;
        let num = a
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let den = b
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        Ratio::new(num, den).ok_or_else(|| format!("ratio {s:?} must be positive"))
    }
}

/// One cyclic word of the symmetrized set: a rotation of a relator's
/// cyclically reduced core or of its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub relator: usize,
    pub inverted: bool,
    pub offset: usize,
}

/// The symmetrized closure of a presentation's relators.
///
/// Relators are cyclically reduced; a relator whose cyclic normal form
/// repeats an earlier one is skipped. Rotations are kept per position, so a
/// proper power contributes coinciding words at distinct positions.
#[derive(Clone, Debug)]
pub struct Symmetrized {
    /// Cyclically reduced core and its conjugator for every input relator:
    /// `relator = conj * core * conj^-1`.
    pub cores: Vec<(Word, Word)>,
    /// Relator indices kept after de-duplication.
    pub kept: Vec<usize>,
    pub occurrences: Vec<Occurrence>,
}

impl Symmetrized {
    pub fn new(p: &FinitePresentation) -> Self {
        let cores: Vec<(Word, Word)> = p.relators().iter().map(Word::cyclically_reduce).collect();
        let mut seen = HashMap::new();
        let mut kept = Vec::new();
        for (i, r) in p.relators().iter().enumerate() {
            if seen.insert(r.cyclic_normal_form(), i).is_none() {
                kept.push(i);
            }
        }
        let mut occurrences = Vec::new();
        for &i in &kept {
            for inverted in [false, true] {
                for offset in 0..cores[i].0.len() {
                    occurrences.push(Occurrence {
                        relator: i,
                        inverted,
                        offset,
                    });
                }
            }
        }
        Symmetrized {
            cores,
            kept,
            occurrences,
        }
    }

    /// The core of relator `i`, inverted if asked.
    pub fn base(&self, relator: usize, inverted: bool) -> Word {
        let core = &self.cores[relator].0;
        if inverted {
            core.inverse()
        } else {
            core.clone()
        }
    }

    pub fn word(&self, o: &Occurrence) -> Word {
        self.base(o.relator, o.inverted).rotate(o.offset)
    }

    pub fn min_length(&self) -> usize {
        self.kept
            .iter()
            .map(|&i| self.cores[i].0.len())
            .min()
            .unwrap_or(0)
    }
}

fn lcp(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Occurrences sorted by their words, with the longest common prefix of each
/// adjacent pair.
struct SortedRotations {
    words: Vec<Word>,
    order: Vec<usize>,
    adjacent: Vec<usize>,
}

impl SortedRotations {
    fn new(sym: &Symmetrized) -> Self {
        let words: Vec<Word> = sym.occurrences.iter().map(|o| sym.word(o)).collect();
        let mut order: Vec<usize> = (0..words.len()).collect();
        order.sort_by(|&a, &b| match words[a].cmp(&words[b]) {
            Ordering::Equal => a.cmp(&b),
            o => o,
        });
        let adjacent = order
            .windows(2)
            .map(|w| lcp(words[w[0]].letters(), words[w[1]].letters()))
            .collect();
        SortedRotations {
            words,
            order,
            adjacent,
        }
    }

    /// Longest prefix each occurrence shares with some other occurrence.
    fn max_piece(&self) -> Vec<usize> {
        let mut best = vec![0; self.words.len()];
        for (t, &l) in self.adjacent.iter().enumerate() {
            let (a, b) = (self.order[t], self.order[t + 1]);
            best[a] = best[a].max(l);
            best[b] = best[b].max(l);
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceWitness {
    pub first: Occurrence,
    pub second: Occurrence,
    pub piece: Vec<i32>,
    pub piece_length: usize,
    /// Length of the symmetrized word the piece is measured against.
    pub relator_length: usize,
}

impl PieceWitness {
    pub fn piece_word(&self) -> Word {
        Word::from_signed(&self.piece)
    }
}

fn signed(w: &Word) -> Vec<i32> {
    w.letters()
        .iter()
        .map(|l| (l.gen() as i32 + 1) * l.sign() as i32)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricCertificate {
    pub lambda: Ratio,
    pub passed: bool,
    pub relators_checked: usize,
    pub min_relator_length: usize,
    /// Largest piece length found anywhere.
    pub max_piece: usize,
    /// On failure, the first offending piece in sorted order.
    pub witness: Option<PieceWitness>,
}

/// Exhaustive C'(lambda) check: every piece must be shorter than `lambda`
/// times the length of each symmetrized word that starts with it.
pub fn metric_certificate(p: &FinitePresentation, lambda: Ratio) -> MetricCertificate {
    let sym = Symmetrized::new(p);
    let sorted = SortedRotations::new(&sym);
    let best = sorted.max_piece();
    let mut witness = None;
    for (t, &l) in sorted.adjacent.iter().enumerate() {
        let (a, b) = (sorted.order[t], sorted.order[t + 1]);
        for (x, y) in [(a, b), (b, a)] {
            let len = sorted.words[x].len();
            if witness.is_none() && !lambda.exceeds(l, len) {
                witness = Some(PieceWitness {
                    first: sym.occurrences[x].clone(),
                    second: sym.occurrences[y].clone(),
                    piece: signed(&sorted.words[x].subword(0, l)),
                    piece_length: l,
                    relator_length: len,
                });
            }
        }
    }
    MetricCertificate {
        lambda,
        passed: witness.is_none(),
        relators_checked: sym.kept.len(),
        min_relator_length: sym.min_length(),
        max_piece: best.into_iter().max().unwrap_or(0),
        witness,
    }
}

/// Maximal piece length between every pair of (kept) relators, indexed by
/// original relator index. Entry `(i, i)` counts pieces between distinct
/// positions of the same relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceTable {
    pub relators: Vec<usize>,
    pub table: Vec<Vec<usize>>,
    pub min_relator_length: usize,
}

impl PieceTable {
    pub fn new(p: &FinitePresentation) -> Self {
        let sym = Symmetrized::new(p);
        let m = p.num_relators();
        let mut table = vec![vec![0; m]; m];
        // Length-1 pieces: relators sharing a generator (for distinct
        // relators) or using one twice (for a relator with itself).
        let mut gens_of: Vec<HashMap<usize, usize>> = vec![HashMap::new(); m];
        for &i in &sym.kept {
            for l in sym.cores[i].0.letters() {
                *gens_of[i].entry(l.gen()).or_default() += 1;
            }
        }
        for &i in &sym.kept {
            for &j in &sym.kept {
                let shared = if i == j {
                    gens_of[i].values().any(|&c| c >= 2)
                } else {
                    gens_of[i].keys().any(|g| gens_of[j].contains_key(g))
                };
                if shared {
                    table[i][j] = 1;
                }
            }
        }
        // Longer pieces: walk forward in sorted order while the running
        // minimum of adjacent prefixes stays at least 2.
        let sorted = SortedRotations::new(&sym);
        for t in 0..sorted.order.len() {
            let ri = sym.occurrences[sorted.order[t]].relator;
            let mut run = usize::MAX;
            for u in t + 1..sorted.order.len() {
                run = run.min(sorted.adjacent[u - 1]);
                if run < 2 {
                    break;
                }
                let rj = sym.occurrences[sorted.order[u]].relator;
                table[ri][rj] = table[ri][rj].max(run);
                table[rj][ri] = table[rj][ri].max(run);
            }
        }
        PieceTable {
            relators: sym.kept.clone(),
            table,
            min_relator_length: sym.min_length(),
        }
    }

    pub fn max_piece(&self) -> usize {
        self.table.iter().flatten().copied().max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_presentation;

    fn pres(s: &str) -> FinitePresentation {
        parse_presentation(s).unwrap()
    }

    /// Longest common subword between distinct positions, by brute force
    /// over all pairs of symmetrized words.
    fn brute_max_piece(p: &FinitePresentation) -> usize {
        let sym = Symmetrized::new(p);
        let words: Vec<Word> = sym.occurrences.iter().map(|o| sym.word(o)).collect();
        let mut best = 0;
        for i in 0..words.len() {
            for j in 0..words.len() {
                if i != j {
                    best = best.max(lcp(words[i].letters(), words[j].letters()));
                }
            }
        }
        best
    }

    #[test]
    fn proper_power_fails() {
        let c = metric_certificate(&pres("< a, b | a b a b >"), Ratio::SIXTH);
        assert!(!c.passed);
        let w = c.witness.unwrap();
        assert!(w.piece_length >= 2);
    }

    #[test]
    fn long_relator_passes() {
        let p = pres("< a, b, c, d | a b a^-1 b^-1 c d c^-1 d^-1 >");
        let c = metric_certificate(&p, Ratio::SIXTH);
        assert_eq!(c.max_piece, brute_max_piece(&p));
        assert_eq!(c.max_piece, 1);
        assert!(c.passed, "{c:?}");
        assert!(!metric_certificate(&p, Ratio::new(1, 8).unwrap()).passed);
    }

    #[test]
    fn monotone_in_lambda() {
        let p = pres("< a, b | a b a^-1 b^-2, a^3 b^3 a^-1 b >");
        let mut passed = false;
        for q in (1..=12).rev() {
            let c = metric_certificate(&p, Ratio::new(1, q).unwrap());
            assert!(!passed || c.passed);
            passed |= c.passed;
        }
    }

    #[test]
    fn piece_table_matches_brute_force() {
        for text in [
            "< a, b | a b a b >",
            "< a, b, c | a b c a^-1, c c b a^2 >",
            "< x | x^3 >",
            "< a, b | a b a^-1 b^-2, b a b^-1 a^-2 >",
        ] {
            let p = pres(text);
            let t = PieceTable::new(&p);
            assert_eq!(t.max_piece(), brute_max_piece(&p), "{text}");
            let len = |i: usize| p.relators()[i].cyclically_reduce().0.len();
            for &i in &t.relators {
                for &j in &t.relators {
                    assert!(t.table[i][j] <= len(i).min(len(j)));
                }
            }
            for i in 0..t.table.len() {
                for j in 0..t.table.len() {
                    assert_eq!(t.table[i][j], t.table[j][i]);
                }
            }
        }
    }

    #[test]
    fn duplicates_are_skipped() {
        let p = pres("< a, b | a b a^-1 b^-2, b^-2 a b a^-1 >");
        assert_eq!(Symmetrized::new(&p).kept, vec![0]);
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!("1/6".parse::<Ratio>().unwrap(), Ratio::SIXTH);
        assert!("0/6".parse::<Ratio>().is_err());
        assert!("x".parse::<Ratio>().is_err());
    }
}
