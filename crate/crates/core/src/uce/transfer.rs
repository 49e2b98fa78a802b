//! Moving word-problem solutions between a perfect group and its universal
//! central extension.
//!
//! Both directions reduce to the same two ingredients: an oracle for one of
//! the groups, and a central subgroup with known generators and its own
//! word-problem oracle. A word known to be central is rewritten in the
//! central generators by [`express_in_generators`], and the rewritten word is
//! then decided inside the central subgroup.

use num_bigint::BigInt;
use serde::Serialize;

use super::{
    express_in_generators, witness_matrix, Expression, NormalClosureElement, UcePresentation,
};
use crate::freewords::Word;
use crate::homology::solve_row_combination;
use crate::oracle::{Decision, WordOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferDirection {
    /// Decide a word of the base group using an oracle for the extension.
    BaseFromExtension,
    /// Decide a word of the extension using an oracle for the base group.
    ExtensionFromBase,
}

/// Where a transfer stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferStage {
    Centrality,
    BaseImage,
    CentreSearch,
    CentreDecision,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransferCertificate {
    /// The lifted word fails to commute with test generator `index`
    /// (base letters first, then kernel generators).
    NotCentral { index: usize },
    /// Deleting the kernel letters leaves a word the base oracle rejects.
    BaseImageNontrivial { image: Word },
    /// The word equals `pi` over the central generators, witnessed by
    /// `word * image(pi)^-1 = certificate` in the free group.
    Central {
        pi: Word,
        certificate: NormalClosureElement,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferOutcome {
    pub decision: Decision,
    pub stage: TransferStage,
    pub certificate: Option<TransferCertificate>,
}

impl TransferOutcome {
    fn stop(
        decision: Decision,
        stage: TransferStage,
        certificate: Option<TransferCertificate>,
    ) -> Self {
        TransferOutcome {
            decision,
            stage,
            certificate,
        }
    }
}

/// A central subgroup given by generating words and an oracle for words in
/// those generators (letter `i` stands for `generators[i]`).
pub struct CentralSubgroup<'a> {
    pub generators: Vec<Word>,
    pub oracle: &'a dyn WordOracle,
}

fn only_empty(w: &Word) -> Decision {
    if w.is_empty() {
        Decision::Trivial
    } else {
        Decision::Inconclusive("letter outside the trivial subgroup".into())
    }
}

impl CentralSubgroup<'static> {
    /// The trivial centre: no generators.
    pub fn trivial() -> Self {
        CentralSubgroup {
            generators: Vec::new(),
            oracle: &only_empty,
        }
    }
}

/// Word problem for the kernel of the extension when the base presentation
/// is aspherical. Then relators are independent modulo `[F, R]`, so a
/// product of kernel generators with exponent sums `e` is trivial exactly
/// when `e` is an integer combination of the witnesses' relator counts.
pub struct AbelianKernelOracle {
    counts: crate::homology::IntegerMatrix,
    rank: usize,
}

impl AbelianKernelOracle {
    /// `None` unless the base carries an asphericity note.
    pub fn new(u: &UcePresentation) -> Option<Self> {
        u.base.asphericity()?;
        Some(AbelianKernelOracle {
            counts: witness_matrix(u),
            rank: u.base.num_relators(),
        })
    }

    pub fn subgroup<'a>(&'a self, u: &UcePresentation) -> CentralSubgroup<'a> {
        CentralSubgroup {
            generators: u.kernel_generators.clone(),
            oracle: self,
        }
    }
}

impl WordOracle for AbelianKernelOracle {
    fn decide(&self, w: &Word) -> Decision {
        let e: Vec<BigInt> = w
            .exponent_vector(self.rank)
            .into_iter()
            .map(BigInt::from)
            .collect();
        if solve_row_combination(&self.counts, &e).is_some() {
            Decision::Trivial
        } else {
            Decision::Nontrivial
        }
    }
}

fn decide_central(
    ambient: &crate::presentations::FinitePresentation,
    centre: &CentralSubgroup<'_>,
    w: &Word,
    budget: u64,
) -> TransferOutcome {
    match express_in_generators(ambient, &centre.generators, w, budget) {
        Expression::Inconclusive { steps } => TransferOutcome::stop(
            Decision::Inconclusive(format!("no central expression within {steps} steps")),
            TransferStage::CentreSearch,
            None,
        ),
        Expression::Found {
            pi, certificate, ..
        } => {
            let decision = centre.oracle.decide(&pi);
            TransferOutcome::stop(
                decision,
                TransferStage::CentreDecision,
                Some(TransferCertificate::Central { pi, certificate }),
            )
        }
    }
}

/// Decides `word` in one group of the pair using an oracle for the other.
///
/// For [`TransferDirection::BaseFromExtension`], `word` is over the base
/// letters, `oracle` decides the extension and `centre` is a central
/// subgroup of the base known to contain every central element (the full
/// centre). For [`TransferDirection::ExtensionFromBase`], `word` is over
/// [`UcePresentation::extended_alphabet`], `oracle` decides the base and
/// `centre` is the centre of the extension; for a base with trivial centre
/// the kernel generators suffice.
pub fn uce_word_transfer(
    u: &UcePresentation,
    direction: TransferDirection,
    word: &Word,
    oracle: &dyn WordOracle,
    centre: &CentralSubgroup<'_>,
    budget: u64,
) -> TransferOutcome {
    match direction {
        TransferDirection::BaseFromExtension => {
            let lifted = word.reduced();
            let tests = (0..u.base.num_generators())
                .map(Word::generator)
                .chain(u.kernel_generators.iter().cloned());
            for (index, y) in tests.enumerate() {
                match oracle.decide(&Word::commutator(&lifted, &y)) {
                    Decision::Trivial => {}
                    Decision::Nontrivial => {
                        return TransferOutcome::stop(
                            Decision::Nontrivial,
                            TransferStage::Centrality,
                            Some(TransferCertificate::NotCentral { index }),
                        )
                    }
                    Decision::Inconclusive(why) => {
                        return TransferOutcome::stop(
                            Decision::Inconclusive(why),
                            TransferStage::Centrality,
                            None,
                        )
                    }
                }
            }
            decide_central(&u.base, centre, &lifted, budget)
        }
        TransferDirection::ExtensionFromBase => {
            let n = u.base.num_generators();
            let image = word.delete_gens(|g| g >= n);
            match oracle.decide(&image) {
                Decision::Trivial => {}
                Decision::Nontrivial => {
                    return TransferOutcome::stop(
                        Decision::Nontrivial,
                        TransferStage::BaseImage,
                        Some(TransferCertificate::BaseImageNontrivial { image }),
                    )
                }
                Decision::Inconclusive(why) => {
                    return TransferOutcome::stop(
                        Decision::Inconclusive(why),
                        TransferStage::BaseImage,
                        None,
                    )
                }
            }
            decide_central(&u.result, centre, &u.substitute_kernel(word), budget)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::FiniteGroupOracle;
    use crate::presentations::{higman_j, parse_presentation};
    use crate::uce::{miller_uce, WitnessStrategy};

    #[test]
    fn kernel_commutator_is_trivial() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^5 >").unwrap();
        let u = miller_uce(&p, WitnessStrategy::Constructive).unwrap();
        let ext = u.extended_alphabet();
        let base = FiniteGroupOracle::enumerate(&p, 1000).unwrap();
        let big = FiniteGroupOracle::enumerate(&u.result, 100_000).unwrap();
        let big_ref = &big;
        let kernel_letters: Vec<Word> = (0..3).map(|j| Word::generator(2 + j)).collect();
        let kernel_decider =
            |pi: &Word| big_ref.decide(&pi.apply_map(&u.kernel_generators).unwrap());
        let centre = CentralSubgroup {
            generators: u.kernel_generators.clone(),
            oracle: &kernel_decider,
        };

        let w = Word::commutator(&Word::generator(0), &kernel_letters[1]);
        let out = uce_word_transfer(
            &u,
            TransferDirection::ExtensionFromBase,
            &w,
            &base,
            &centre,
            10_000,
        );
        assert_eq!(out.decision, Decision::Trivial, "{:?}", out);

        let w = crate::freewords::parse_word("a b z2", &ext).unwrap();
        let out = uce_word_transfer(
            &u,
            TransferDirection::ExtensionFromBase,
            &w,
            &base,
            &centre,
            10_000,
        );
        assert_eq!(out.decision, Decision::Nontrivial);
        assert_eq!(out.stage, TransferStage::BaseImage);

        // Generator of the base is not central; the identity is.
        let trivial = CentralSubgroup::trivial();
        let out = uce_word_transfer(
            &u,
            TransferDirection::BaseFromExtension,
            &Word::generator(1),
            &big,
            &trivial,
            1000,
        );
        assert_eq!(out.decision, Decision::Nontrivial);
        let out = uce_word_transfer(
            &u,
            TransferDirection::BaseFromExtension,
            &p.relators()[2],
            &big,
            &trivial,
            1000,
        );
        assert_eq!(out.decision, Decision::Trivial);
    }

    #[test]
    fn aspherical_kernel_oracle() {
        let j = higman_j();
        let u = miller_uce(&j, WitnessStrategy::Constructive).unwrap();
        let k = AbelianKernelOracle::new(&u).unwrap();
        // Super-perfect aspherical base: every kernel generator dies.
        for z in 0..4 {
            assert_eq!(k.decide(&Word::generator(z)), Decision::Trivial);
        }
        let unasserted = miller_uce(
            &parse_presentation("< x | x >").unwrap(),
            WitnessStrategy::Constructive,
        )
        .unwrap();
        assert!(AbelianKernelOracle::new(&unasserted).is_none());
    }
}
