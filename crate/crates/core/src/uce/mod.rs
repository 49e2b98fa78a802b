//! Universal central extensions of perfect presentations.
//!
//! The extension of `<X | R>` is presented on the same letters by the
//! relators `x c_x` (one per generator, with `c_x` in the commutator
//! subgroup and `x c_x` a consequence of `R`) and the commutators `[x, r]`.

mod closure;
mod transfer;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::freewords::{Alphabet, Word};
use crate::homology::{
    h1, relation_matrix, smith_normal_form, solve_with, H1Report, IntegerMatrix,
};
use crate::presentations::FinitePresentation;

pub use closure::{normal_closure_stream, Factor, NormalClosureElement, NormalClosureStream};
pub(crate) use closure::{reduced_count, reduced_word};
pub use transfer::{
    uce_word_transfer, AbelianKernelOracle, CentralSubgroup, TransferCertificate,
    TransferDirection, TransferOutcome, TransferStage,
};

/// Default step budget for the semi-decision searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Error)]
pub enum UceError {
    #[error("presentation is not perfect: H1 = {}", .0.group)]
    NotPerfect(Box<H1Report>),
    #[error("witness search for generator {generator} gave up after {steps} steps")]
    BudgetExhausted { generator: usize, steps: u64 },
    #[error("relator coefficient for generator {generator} does not fit in 64 bits")]
    CoefficientOverflow { generator: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessStrategy {
    /// Integer linear algebra on exponent sums, then a product of relator powers.
    Constructive,
    /// Blind enumeration of (commutator word, closure element) pairs.
    Search { budget: u64 },
}

/// `generator * c` freely equals `rho.expanded`, and `c` has zero exponent sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorWitness {
    pub generator: usize,
    pub c: Word,
    pub rho: NormalClosureElement,
}

impl CommutatorWitness {
    pub fn verify(&self, p: &FinitePresentation) -> bool {
        self.generator < p.num_generators()
            && self
                .c
                .exponent_vector(p.num_generators())
                .iter()
                .all(|&e| e == 0)
            && self.rho.verify(p)
            && Word::generator(self.generator).mul(&self.c) == self.rho.expanded
    }

    /// Signed number of factors using each relator.
    pub fn relator_counts(&self, num_relators: usize) -> Vec<i64> {
        let mut out = vec![0; num_relators];
        for f in &self.rho.factors {
            out[f.relator] += i64::from(f.sign);
        }
        out
    }
}

fn check_perfect(p: &FinitePresentation) -> Result<(), UceError> {
    let report = h1(p);
    if report.group.is_trivial() {
        Ok(())
    } else {
        Err(UceError::NotPerfect(Box::new(report)))
    }
}

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

/// Greedily adds kernel vectors while that shrinks the total coefficient size.
fn shorten(mut y: Vec<BigInt>, kernel: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut best = l1(&y);
    loop {
        let mut improved = false;
        for k in kernel {
            for sign in [1i32, -1] {
                loop {
                    let cand: Vec<BigInt> = y.iter().zip(k).map(|(a, b)| a + b * sign).collect();
                    let c = l1(&cand);
                    if c < best {
                        best = c;
                        y = cand;
                        improved = true;
                    } else {
                        break;
                    }
                }
            }
        }
        if !improved {
            return y;
        }
    }
}

fn constructive_witnesses(p: &FinitePresentation) -> Result<Vec<CommutatorWitness>, UceError> {
    let m = relation_matrix(p);
    let snf = smith_normal_form(&m);
    let n = p.num_generators();
    (0..n)
        .map(|g| {
            let e: Vec<BigInt> = (0..n).map(|j| BigInt::from((j == g) as i64)).collect();
            let (y, kernel) = solve_with(&snf, m.rows(), &e)
                .expect("perfect presentation has unimodular exponent system");
            let y = shorten(y, &kernel);
            let mut factors = Vec::new();
            for (j, c) in y.iter().enumerate() {
                let k = c
                    .to_i64()
                    .ok_or(UceError::CoefficientOverflow { generator: g })?;
                let sign = if k < 0 { -1 } else { 1 };
                factors.extend((0..k.unsigned_abs()).map(|_| Factor::new(Word::empty(), j, sign)));
            }
            let rho = NormalClosureElement::from_factors(p, factors);
            let c = Word::generator(g).inverse().mul(&rho.expanded);
            Ok(CommutatorWitness {
                generator: g,
                c,
                rho,
            })
        })
        .collect()
}

/// Reduced words over `n` letters in shortlex order, starting with the empty word.
pub(crate) struct ShortlexWords {
    n: usize,
    len: usize,
    idx: u128,
}

impl ShortlexWords {
    pub(crate) fn new(n: usize) -> Self {
        ShortlexWords { n, len: 0, idx: 0 }
    }
}

impl Iterator for ShortlexWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while self.idx >= reduced_count(self.n, self.len) {
            if self.n == 0 {
                return None;
            }
            self.len += 1;
            self.idx = 0;
        }
        let w = reduced_word(self.n, self.len, self.idx);
        self.idx += 1;
        Some(w)
    }
}

/// Interleaves two streams, one item from each per step, checking each new
/// item against everything already seen from the other side. This finds a
/// matching pair after finitely many steps whenever one exists, exactly as
/// walking the finite diagonals of the pair grid would. Items whose key is
/// `None` are skipped but still cost a step.
fn dovetail<A, B>(
    left: impl Iterator<Item = A>,
    right: impl Iterator<Item = B>,
    left_key: impl Fn(&A) -> Option<Word>,
    right_key: impl Fn(&B) -> Option<Word>,
    budget: u64,
) -> Result<(A, B, u64), u64>
where
    A: Clone,
    B: Clone,
{
    let mut left = left.fuse();
    let mut right = right.fuse();
    let mut seen_left: HashMap<Word, A> = HashMap::new();
    let mut seen_right: HashMap<Word, B> = HashMap::new();
    let mut steps = 0u64;
    while steps < budget {
        let mut progressed = false;
        if let Some(a) = left.next() {
            progressed = true;
            steps += 1;
            if let Some(k) = left_key(&a) {
                if let Some(b) = seen_right.get(&k) {
                    return Ok((a, b.clone(), steps));
                }
                seen_left.entry(k).or_insert(a);
            }
        }
        if let Some(b) = right.next() {
            progressed = true;
            steps += 1;
            if let Some(k) = right_key(&b) {
                if let Some(a) = seen_left.get(&k) {
                    return Ok((a.clone(), b, steps));
                }
                seen_right.entry(k).or_insert(b);
            }
        }
        if !progressed {
            break;
        }
    }
    Err(steps)
}

fn search_witness(
    p: &FinitePresentation,
    g: usize,
    budget: u64,
) -> Result<CommutatorWitness, UceError> {
    let n = p.num_generators();
    let x_inv = Word::generator(g).inverse();
    // Pairs (d, rho) with x d rho = 1 freely, i.e. d = x^-1 rho^-1.
    let zero_sum = |d: &Word| {
        d.exponent_vector(n)
            .iter()
            .all(|&e| e == 0)
            .then(|| d.clone())
    };
    let rhos = std::iter::once(NormalClosureElement::identity()).chain(normal_closure_stream(p));
    let found = dovetail(
        ShortlexWords::new(n),
        rhos,
        zero_sum,
        |r: &NormalClosureElement| Some(x_inv.mul(&r.expanded.inverse())),
        budget,
    );
    match found {
        Ok((d, rho, _)) => Ok(CommutatorWitness {
            generator: g,
            c: d,
            rho: rho.inverse(),
        }),
        Err(steps) => Err(UceError::BudgetExhausted {
            generator: g,
            steps,
        }),
    }
}

/// One witness per generator. Fails on a non-perfect presentation.
pub fn find_commutator_witnesses(
    p: &FinitePresentation,
    strategy: WitnessStrategy,
) -> Result<Vec<CommutatorWitness>, UceError> {
    check_perfect(p)?;
    let ws = match strategy {
        WitnessStrategy::Constructive => constructive_witnesses(p)?,
        WitnessStrategy::Search { budget } => (0..p.num_generators())
            .map(|g| search_witness(p, g, budget))
            .collect::<Result<_, _>>()?,
    };
    assert!(
        ws.iter().all(|w| w.verify(p)),
        "commutator witness failed verification"
    );
    Ok(ws)
}

#[derive(Clone, Debug, Serialize)]
pub struct DroppedCommutator {
    pub generator: usize,
    pub relator: usize,
}

#[derive(Clone, Debug)]
pub struct UcePresentation {
    pub base: FinitePresentation,
    pub result: FinitePresentation,
    pub witnesses: Vec<CommutatorWitness>,
    /// Central elements of `result` generating the kernel of the map to
    /// `base`: the base relators read in the extension.
    pub kernel_generators: Vec<Word>,
    /// Commutators `[x, r]` that are freely trivial (for instance when `r`
    /// is a power of `x`) and so carry no relation.
    pub dropped: Vec<DroppedCommutator>,
}

impl UcePresentation {
    /// Generators of the base followed by one fresh letter per kernel generator.
    pub fn extended_alphabet(&self) -> Alphabet {
        let mut a = self.base.alphabet().clone();
        for j in 0..self.kernel_generators.len() {
            let name = a.fresh_name(&format!("z{}", j + 1));
            a.push(name).expect("fresh name");
        }
        a
    }

    /// Reads a word over the extended alphabet as a word over the base letters.
    pub fn substitute_kernel(&self, w: &Word) -> Word {
        let n = self.base.num_generators();
        let images: Vec<Word> = (0..n)
            .map(Word::generator)
            .chain(self.kernel_generators.iter().cloned())
            .collect();
        w.apply_map(&images)
            .expect("word over the extended alphabet")
    }

    /// The `[x, r]` relator for generator `x` and base relator `r`, if kept.
    pub fn commutator_relator_index(&self, generator: usize, relator: usize) -> Option<usize> {
        let skipped = self
            .dropped
            .iter()
            .take_while(|d| (d.generator, d.relator) < (generator, relator))
            .count();
        if self
            .dropped
            .iter()
            .any(|d| d.generator == generator && d.relator == relator)
        {
            None
        } else {
            Some(
                self.base.num_generators() + generator * self.base.num_relators() + relator
                    - skipped,
            )
        }
    }
}

/// Builds the extension presentation from commutator witnesses.
pub fn miller_uce(
    p: &FinitePresentation,
    strategy: WitnessStrategy,
) -> Result<UcePresentation, UceError> {
    let witnesses = find_commutator_witnesses(p, strategy)?;
    let mut relators: Vec<Word> = witnesses.iter().map(|w| w.rho.expanded.clone()).collect();
    let mut dropped = Vec::new();
    for x in 0..p.num_generators() {
        for (j, r) in p.relators().iter().enumerate() {
            let c = Word::commutator(&Word::generator(x), r);
            if c.is_empty() {
                dropped.push(DroppedCommutator {
                    generator: x,
                    relator: j,
                });
            } else {
                relators.push(c);
            }
        }
    }
    let result = FinitePresentation::new(p.alphabet().clone(), relators)
        .expect("extension relators are nontrivial");
    assert!(h1(&result).group.is_trivial(), "extension must be perfect");
    Ok(UcePresentation {
        base: p.clone(),
        result,
        witnesses,
        kernel_generators: p.relators().to_vec(),
        dropped,
    })
}

/// Result of expressing a word in subgroup generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    /// `w * image(pi)^-1` freely equals `certificate.expanded`, where `pi`
    /// is a word whose letter `i` stands for `subgens[i]`.
    Found {
        pi: Word,
        certificate: NormalClosureElement,
        steps: u64,
    },
    Inconclusive {
        steps: u64,
    },
}

/// Searches for a word `pi` in the subgroup generators together with a
/// product of relator conjugates `P` with `P = w pi^-1` in the free group.
/// The caller promises `w` lies in the subgroup; without that promise the
/// search can only run out of budget, never report a false expression.
pub fn express_in_generators(
    g: &FinitePresentation,
    subgens: &[Word],
    w: &Word,
    budget: u64,
) -> Expression {
    let w = w.reduced();
    let key = |pi: &Word| {
        w.mul(
            &pi.apply_map(subgens)
                .expect("pi over subgroup letters")
                .inverse(),
        )
    };
    let rhos = std::iter::once(NormalClosureElement::identity()).chain(normal_closure_stream(g));
    let found = dovetail(
        ShortlexWords::new(subgens.len()),
        rhos,
        |pi| Some(key(pi)),
        |r| Some(r.expanded.clone()),
        budget,
    );
    match found {
        Ok((pi, certificate, steps)) => {
            assert!(
                certificate.verify(g) && certificate.expanded == key(&pi),
                "unverified subgroup expression"
            );
            Expression::Found {
                pi,
                certificate,
                steps,
            }
        }
        Err(steps) => Expression::Inconclusive { steps },
    }
}

/// Matrix of signed relator counts, one row per witness.
pub fn witness_matrix(u: &UcePresentation) -> IntegerMatrix {
    let m = u.base.num_relators();
    let rows: Vec<Vec<i64>> = u.witnesses.iter().map(|w| w.relator_counts(m)).collect();
    IntegerMatrix::from_rows(m, &rows)
}
