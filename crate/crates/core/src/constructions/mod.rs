//! Presentation-level constructions: the Rips-Wise transform, attaching
//! groups without finite quotients, super-perfect pipelines, and generating
//! sets for fibre products and related subgroups of direct products.

mod delta;
mod killfq;
mod rips;

use serde::Serialize;
use thiserror::Error;

use crate::freewords::Word;
use crate::oracle::{Decision, WordOracle};
use crate::presentations::{
    direct_product_presentation, Combined, FinitePresentation, PresentationError,
    PresentationMorphism,
};

pub use delta::{acyclic_subdirect, delta_amalgam, lift_to_extension, AcyclicOutput, DeltaOutput};
pub use killfq::{
    kill_finite_quotients, super_perfectify, Attachment, KillFqOutput, SuperPerfectError,
    SuperPerfectOutput,
};
pub use rips::{de_bruijn_ternary, rips_wise, RipsCounts, RipsOutput};

/// An element of `G x G` as a pair of words over the alphabet of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairWord {
    pub left: Word,
    pub right: Word,
}

impl PairWord {
    pub fn new(left: Word, right: Word) -> Self {
        PairWord {
            left: left.reduced(),
            right: right.reduced(),
        }
    }

    pub fn identity() -> Self {
        PairWord::new(Word::empty(), Word::empty())
    }

    pub fn diagonal(w: &Word) -> Self {
        PairWord::new(w.clone(), w.clone())
    }

    pub fn mul(&self, other: &PairWord) -> PairWord {
        PairWord {
            left: self.left.mul(&other.left),
            right: self.right.mul(&other.right),
        }
    }

    pub fn inverse(&self) -> PairWord {
        PairWord {
            left: self.left.inverse(),
            right: self.right.inverse(),
        }
    }

    /// `(w, 1)` followed by `(1, w')`, written over the tagged product alphabet.
    pub fn to_product_word(&self, product: &Combined) -> Word {
        product
            .left_word(&self.left)
            .concat(&product.right_word(&self.right))
    }

    /// Splits a word over a tagged product alphabet into its two coordinates.
    pub fn from_product_word(product: &Combined, w: &Word) -> PairWord {
        let n = product.presentation.num_generators();
        let mut back_left = vec![None; n];
        let mut back_right = vec![None; n];
        for (i, &g) in product.left.iter().enumerate() {
            back_left[g] = Some(i);
        }
        for (i, &g) in product.right.iter().enumerate() {
            back_right[g] = Some(i);
        }
        let left = w
            .delete_gens(|g| back_left[g].is_none())
            .relabel(|g| back_left[g].expect("left letter"));
        let right = w
            .delete_gens(|g| back_right[g].is_none())
            .relabel(|g| back_right[g].expect("right letter"));
        PairWord::new(left, right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Diagonal generators and `(r, 1)` for relators, in `F x F`.
    S,
    /// Kernel letters on either side and diagonal generators, in `Gamma x Gamma`.
    U,
    /// Diagonal generators and rewritten input relators, in `H x H`.
    Theta,
    /// `Theta` lifted to the Rips group of `H`, plus the kernel letters on either side.
    ThetaTilde,
    /// `S` read inside the amalgam with the Higman copies, plus the copies'
    /// first three generators.
    SPlus,
    /// The first three generators of every Higman copy in the amalgam.
    C,
    /// Lifts of the amalgam's generators plus the central kernel generators.
    B,
    /// A subgroup generating set of the amalgam lifted to its central
    /// extension, plus the central kernel generators.
    Lifted,
}

#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub kind: GeneratorKind,
    pub ambient: FinitePresentation,
    /// Elements as words over the ambient alphabet.
    pub elements: Vec<Word>,
    /// The same elements as coordinate pairs when the ambient is a direct
    /// product; empty otherwise.
    pub pairs: Vec<PairWord>,
}

impl GeneratingSet {
    fn from_pairs(kind: GeneratorKind, product: &Combined, pairs: Vec<PairWord>) -> Self {
        GeneratingSet {
            kind,
            ambient: product.presentation.clone(),
            elements: pairs.iter().map(|p| p.to_product_word(product)).collect(),
            pairs,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn well_formed(&self) -> bool {
        self.elements
            .iter()
            .all(|w| self.ambient.alphabet().check(w).is_ok())
    }
}

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("mismatched inputs: {0}")]
    Mismatch(String),
}

/// Free group on the alphabet of `p`.
fn free_on(p: &FinitePresentation) -> FinitePresentation {
    FinitePresentation::free(p.alphabet().clone())
}

/// `S`: `(x, x)` for each generator and `(r, 1)` for each relator of `p`,
/// inside `F x F` over the generators of `p`.
pub fn s_generators(p: &FinitePresentation) -> Result<GeneratingSet, ConstructionError> {
    let f = free_on(p);
    let product = direct_product_presentation(&f, &f)?;
    let pairs = (0..p.num_generators())
        .map(|x| PairWord::diagonal(&Word::generator(x)))
        .chain(
            p.relators()
                .iter()
                .map(|r| PairWord::new(r.clone(), Word::empty())),
        )
        .collect();
    Ok(GeneratingSet::from_pairs(GeneratorKind::S, &product, pairs))
}

/// `U`: kernel letters on either side and `(x, 1)(1, x)` for every
/// generator (kernel letters included), inside `Gamma x Gamma`.
pub fn u_generators(rips: &RipsOutput) -> Result<GeneratingSet, ConstructionError> {
    let product = direct_product_presentation(&rips.gamma, &rips.gamma)?;
    let mut pairs = Vec::new();
    for &a in &rips.kernel_generators {
        pairs.push(PairWord::new(Word::generator(a), Word::empty()));
        pairs.push(PairWord::new(Word::empty(), Word::generator(a)));
    }
    pairs.extend((0..rips.gamma.num_generators()).map(|x| PairWord::diagonal(&Word::generator(x))));
    Ok(GeneratingSet::from_pairs(GeneratorKind::U, &product, pairs))
}

/// The free product of the attached copies: the simplified presentation
/// without the rewritten input relators.
pub fn attached_free_product(k: &KillFqOutput) -> FinitePresentation {
    let rels = k.simplified.relators()[k.rewritten_count()..].to_vec();
    let mut h = FinitePresentation::new(k.simplified.alphabet().clone(), rels)
        .expect("copies' relators are nontrivial");
    if let Some(note) = k.attachment.presentation.asphericity() {
        h = h.with_asphericity(format!(
            "free product of copies of an aspherical presentation ({note})"
        ));
    }
    h
}

/// `Theta`: `(y, 1)(1, y)` for every copy generator and `(v, 1)` for every
/// rewritten input relator, inside `H x H`.
pub fn theta_generators(k: &KillFqOutput) -> Result<GeneratingSet, ConstructionError> {
    let h = attached_free_product(k);
    let product = direct_product_presentation(&h, &h)?;
    Ok(GeneratingSet::from_pairs(
        GeneratorKind::Theta,
        &product,
        theta_pairs(k),
    ))
}

fn theta_pairs(k: &KillFqOutput) -> Vec<PairWord> {
    (0..k.simplified.num_generators())
        .map(|y| PairWord::diagonal(&Word::generator(y)))
        .chain(
            k.simplified.relators()[..k.rewritten_count()]
                .iter()
                .map(|v| PairWord::new(v.clone(), Word::empty())),
        )
        .collect()
}

/// `Theta~`: `Theta` read in `Gamma x Gamma` for the Rips group of `H`,
/// plus the kernel letters on either side. `rips` must be the Rips output
/// of [`attached_free_product`]`(k)`.
pub fn theta_tilde_generators(
    k: &KillFqOutput,
    rips: &RipsOutput,
) -> Result<GeneratingSet, ConstructionError> {
    let h = attached_free_product(k);
    if rips.p.target != h {
        return Err(ConstructionError::Mismatch(
            "Rips output is not built from the attached free product".into(),
        ));
    }
    let product = direct_product_presentation(&rips.gamma, &rips.gamma)?;
    let mut pairs = theta_pairs(k);
    for &a in &rips.kernel_generators {
        pairs.push(PairWord::new(Word::generator(a), Word::empty()));
        pairs.push(PairWord::new(Word::empty(), Word::generator(a)));
    }
    Ok(GeneratingSet::from_pairs(
        GeneratorKind::ThetaTilde,
        &product,
        pairs,
    ))
}

/// Decides whether a pair lies in the fibre product of `p`: true iff
/// `p(left) p(right)^-1` is trivial according to `oracle` (which must
/// solve the word problem of `p`'s target). An inconclusive oracle answer
/// comes back as `Err` with its reason.
pub fn fibre_membership(
    pw: &PairWord,
    p: &PresentationMorphism,
    oracle: &dyn WordOracle,
) -> Result<bool, String> {
    let l = p.apply(&pw.left).map_err(|e| e.to_string())?;
    let r = p.apply(&pw.right).map_err(|e| e.to_string())?;
    match oracle.decide(&l.mul(&r.inverse())) {
        Decision::Trivial => Ok(true),
        Decision::Nontrivial => Ok(false),
        Decision::Inconclusive(why) => Err(why),
    }
}

/// The pair `((w^-1 a w, a), (a, a))`. The first is the conjugate of the
/// second by `(w, 1)`; both lie in the fibre product whenever `a` is in the
/// kernel, and they are conjugate there exactly when `(w, 1)` is.
pub fn conjugacy_gadget(w: &Word, a: usize) -> (PairWord, PairWord) {
    let aw = Word::generator(a);
    let diag = PairWord::diagonal(&aw);
    let conj = PairWord::new(Word::product([&w.inverse(), &aw, w]), aw.clone());
    (conj, diag)
}

/// `(w, 1)^-1 (a, a) (w, 1)`, componentwise reduced.
pub fn gadget_conjugate(w: &Word, a: usize) -> PairWord {
    let g = PairWord::new(w.clone(), Word::empty());
    g.inverse()
        .mul(&PairWord::diagonal(&Word::generator(a)))
        .mul(&g)
}
