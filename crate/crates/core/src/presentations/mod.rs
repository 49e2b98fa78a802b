//! Finite presentations `< X | R >`: the data model, its text grammar,
//! Tietze moves, and builders for products, amalgams and HNN extensions.

mod builders;
mod tietze;

use std::fmt;

use thiserror::Error;

use crate::freewords::{
    parse_word_at, Alphabet, AlphabetError, Cursor, ParseError, ParseErrorKind, Word, WordError,
};

pub use builders::{
    amalgamated_product, direct_product_presentation, free_product, higman_d, higman_j,
    higman_presentations, hnn_extension, Combined,
};
pub use tietze::{kill_generators, tietze_eliminate_generator, TietzeElimination};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("relator {index} is freely trivial")]
    TrivialRelator { index: usize },
    #[error("generator name {0:?} occurs in both factors")]
    NameClash(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("relator {relator} cannot be used to eliminate generator {generator}: {reason}")]
    NotEliminable {
        generator: String,
        relator: usize,
        reason: &'static str,
    },
    #[error("relator index {0} out of range")]
    NoSuchRelator(usize),
    #[error("an amalgamation or HNN extension needs at least one pair")]
    NoPairs,
    #[error("{what} has {got} images but {expected} were required")]
    ImageCount {
        what: &'static str,
        expected: usize,
        got: usize,
    },
}

/// `< X | R >`. Relators are stored freely reduced and are never empty.
///
/// The optional asphericity note is metadata asserted by whoever built the
/// presentation; it does not take part in equality and is not serialised.
#[derive(Clone, Debug)]
pub struct FinitePresentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    aspherical: Option<String>,
}

impl PartialEq for FinitePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.relators == other.relators
    }
}

impl Eq for FinitePresentation {}

impl FinitePresentation {
    /// Validates, reduces and stores the relators. A relator that reduces to
    /// the empty word is an error.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut reduced = Vec::with_capacity(relators.len());
        for (index, r) in relators.iter().enumerate() {
            alphabet.check(r)?;
            let r = r.reduced();
            if r.is_empty() {
                return Err(PresentationError::TrivialRelator { index });
            }
            reduced.push(r);
        }
        Ok(FinitePresentation {
            alphabet,
            relators: reduced,
            aspherical: None,
        })
    }

    /// Like [`FinitePresentation::new`] but silently drops relators that
    /// reduce to the empty word; returns the indices dropped.
    pub fn new_dropping_trivial(
        alphabet: Alphabet,
        relators: Vec<Word>,
    ) -> Result<(Self, Vec<usize>), PresentationError> {
        let mut kept = Vec::with_capacity(relators.len());
        let mut dropped = Vec::new();
        for (i, r) in relators.iter().enumerate() {
            alphabet.check(r)?;
            let r = r.reduced();
            if r.is_empty() {
                dropped.push(i);
            } else {
                kept.push(r);
            }
        }
        Ok((
            FinitePresentation {
                alphabet,
                relators: kept,
                aspherical: None,
            },
            dropped,
        ))
    }

    pub fn free(alphabet: Alphabet) -> Self {
        FinitePresentation {
            alphabet,
            relators: Vec::new(),
            aspherical: None,
        }
    }

    /// Parses the `< gens | rels >` grammar.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_presentation(text)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    /// Provenance note of the asphericity assertion, if one was made.
    pub fn asphericity(&self) -> Option<&str> {
        self.aspherical.as_deref()
    }

    pub fn with_asphericity(mut self, note: impl Into<String>) -> Self {
        self.aspherical = Some(note.into());
        self
    }

    pub fn without_asphericity(mut self) -> Self {
        self.aspherical = None;
        self
    }

    pub fn generator(&self, name: &str) -> Result<usize, PresentationError> {
        self.alphabet
            .lookup(name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
    }

    /// Parses a word over this presentation's generators.
    pub fn word(&self, text: &str) -> Result<Word, ParseError> {
        crate::freewords::parse_word(text, &self.alphabet)
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.display(&self.alphabet).to_string()
    }

    /// Same relators over a renamed alphabet.
    pub fn renamed(&self, f: impl FnMut(&str) -> String) -> Result<Self, PresentationError> {
        Ok(FinitePresentation {
            alphabet: self.alphabet.renamed(f)?,
            relators: self.relators.clone(),
            aspherical: self.aspherical.clone(),
        })
    }

    /// Integer exponent-sum matrix: one row per relator, one column per generator.
    pub fn exponent_rows(&self) -> Vec<Vec<i64>> {
        let n = self.num_generators();
        self.relators.iter().map(|r| r.exponent_vector(n)).collect()
    }

    pub(crate) fn from_parts_unchecked(
        alphabet: Alphabet,
        relators: Vec<Word>,
        aspherical: Option<String>,
    ) -> Self {
        debug_assert!(relators.iter().all(|r| !r.is_empty() && r.is_reduced()));
        FinitePresentation {
            alphabet,
            relators,
            aspherical,
        }
    }
}

/// Canonical form: generators in declaration order, relators freely reduced,
/// `*` separators, negative exponents as `^-k`.
impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("< ")?;
        f.write_str(&self.alphabet.symbols().join(", "))?;
        f.write_str(" |")?;
        for (i, r) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{}", r.display(&self.alphabet))?;
        }
        f.write_str(" >")
    }
}

/// `'<' gen (',' gen)* '|' [rel (',' rel)*] '>'`, where a relation `u = v`
/// is stored as `u v^-1`.
pub fn parse_presentation(text: &str) -> Result<FinitePresentation, ParseError> {
    let mut cur = Cursor::new(text);
    cur.expect('<', "'<'")?;
    let mut alphabet = Alphabet::empty();
    loop {
        cur.skip_ws();
        let at = cur.clone();
        let name = cur.ident().ok_or_else(|| {
            if cur.at_end() {
                cur.error(ParseErrorKind::UnexpectedEnd)
            } else {
                cur.error(ParseErrorKind::Expected("generator name"))
            }
        })?;
        if alphabet.push(name.to_string()).is_err() {
            return Err(at.error(ParseErrorKind::DuplicateGenerator(name.to_string())));
        }
        if cur.eat(',') {
            continue;
        }
        cur.expect('|', "',' or '|'")?;
        break;
    }
    let mut relators = Vec::new();
    cur.skip_ws();
    if !cur.eat('>') {
        loop {
            cur.skip_ws();
            let start = cur.clone();
            let lhs = parse_word_at(&mut cur, &alphabet)?;
            let rel = if cur.eat('=') {
                let rhs = parse_word_at(&mut cur, &alphabet)?;
                lhs.concat(&rhs.inverse())
            } else {
                lhs
            };
            let rel = rel.reduced();
            if rel.is_empty() {
                return Err(start.error(ParseErrorKind::TrivialRelator));
            }
            relators.push(rel);
            if cur.eat(',') {
                continue;
            }
            cur.expect('>', "',' or '>'")?;
            break;
        }
    }
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error(ParseErrorKind::TrailingInput));
    }
    Ok(FinitePresentation {
        alphabet,
        relators,
        aspherical: None,
    })
}

/// Homomorphism between presented groups, given by generator images.
#[derive(Clone, Debug)]
pub struct PresentationMorphism {
    pub source: FinitePresentation,
    pub target: FinitePresentation,
    pub images: Vec<Word>,
    pub justification: Justification,
}

/// Why each source relator maps into the target's normal closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Every relator image is freely trivial or a cyclic conjugate of a
    /// target relator or its inverse; checked on construction.
    Verified,
    /// Recorded by the constructing operation without a machine check.
    Asserted(String),
}

impl PresentationMorphism {
    /// Builds the morphism, checking image count and alphabet, and upgrades
    /// the justification to [`Justification::Verified`] when every relator
    /// image is visibly a consequence of the target relators.
    pub fn new(
        source: FinitePresentation,
        target: FinitePresentation,
        images: Vec<Word>,
        provenance: impl Into<String>,
    ) -> Result<Self, PresentationError> {
        if images.len() != source.num_generators() {
            return Err(PresentationError::ImageCount {
                what: "morphism",
                expected: source.num_generators(),
                got: images.len(),
            });
        }
        for img in &images {
            target.alphabet().check(img)?;
        }
        let images: Vec<Word> = images.iter().map(Word::reduced).collect();
        let targets: std::collections::HashSet<Word> = target
            .relators()
            .iter()
            .map(Word::cyclic_normal_form)
            .collect();
        let verified = source.relators().iter().all(|r| {
            let img = r.apply_map(&images).expect("image count checked");
            img.is_empty() || targets.contains(&img.cyclic_normal_form())
        });
        let justification = if verified {
            Justification::Verified
        } else {
            Justification::Asserted(provenance.into())
        };
        Ok(PresentationMorphism {
            source,
            target,
            images,
            justification,
        })
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        self.source.alphabet().check(w)?;
        w.apply_map(&self.images)
    }
}
