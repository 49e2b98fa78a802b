//! Free-group word algebra over a finite named alphabet.
//!
//! A [`Word`] is a sequence of signed generator letters. Words carry no
//! reference to their alphabet; the [`Alphabet`] is supplied wherever names
//! matter (parsing, rendering, validation).

mod conjugacy;
mod parse;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use conjugacy::{conjugacy_test, free_conjugator, ConjugacyError};
pub use parse::{
    parse_word, parse_word_at, Cursor, ParseError, ParseErrorKind, MAX_NESTING, MAX_WORD_LEN,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter refers to generator {index} but the alphabet has {size} symbols")]
    MalformedWord { index: usize, size: usize },
    #[error("no image supplied for generator {0}")]
    UnmappedSymbol(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("duplicate generator name {0:?}")]
    Duplicate(String),
}

/// Returns true for names matching `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Ordered list of distinct generator names.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.symbols).finish()
    }
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet {
            symbols: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            alphabet.push(name.into())?;
        }
        Ok(alphabet)
    }

    pub fn empty() -> Self {
        Alphabet {
            symbols: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn push(&mut self, name: String) -> Result<usize, AlphabetError> {
        if !is_valid_name(&name) {
            return Err(AlphabetError::InvalidName(name));
        }
        if self.index.contains_key(&name) {
            return Err(AlphabetError::Duplicate(name));
        }
        let i = self.symbols.len();
        self.index.insert(name.clone(), i);
        self.symbols.push(name);
        Ok(i)
    }

    /// A name derived from `base` that is not yet in the alphabet.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.contains(base) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| !self.contains(n))
            .expect("unbounded search")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Checks that every letter of `w` indexes this alphabet.
    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.letters.iter().find(|l| l.gen() >= self.len()) {
            Some(l) => Err(WordError::MalformedWord {
                index: l.gen(),
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    /// The single-letter word for generator `i`.
    pub fn gen(&self, i: usize) -> Word {
        assert!(i < self.len());
        Word::generator(i)
    }

    pub fn renamed(&self, mut f: impl FnMut(&str) -> String) -> Result<Self, AlphabetError> {
        Alphabet::new(self.symbols.iter().map(|s| f(s)))
    }
}

/// A generator or its inverse. Ordering is `x0 < x0^-1 < x1 < x1^-1 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    gen: u32,
    inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter {
            gen: u32::try_from(gen).expect("generator index fits u32"),
            inverse,
        }
    }

    pub fn pos(gen: usize) -> Self {
        Letter::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Letter::new(gen, true)
    }

    pub fn gen(self) -> usize {
        self.gen as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Dense index in `0..2n`: `2*gen + inverse`.
    pub fn code(self) -> usize {
        2 * self.gen as usize + self.inverse as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter::new(code / 2, code % 2 == 1)
    }
}

/// An element of a free group, as a sequence of letters. Not necessarily
/// reduced; operations that promise a normal form say so.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn generator(i: usize) -> Self {
        Word {
            letters: vec![Letter::pos(i)],
        }
    }

    /// Builds a word from signed 1-based integers: `3` is generator 2,
    /// `-1` is generator 0 inverted. Zero is not allowed.
    pub fn from_signed(codes: &[i32]) -> Self {
        Word {
            letters: codes
                .iter()
                .map(|&c| {
                    assert!(c != 0, "signed letter code must be nonzero");
                    Letter::new(c.unsigned_abs() as usize - 1, c < 0)
                })
                .collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.reduced().letters;
        for &l in &other.letters {
            push_reducing(&mut out, l);
        }
        Word { letters: out }
    }

    /// Plain concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Reduced product of a sequence of words.
    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut out = Vec::new();
        for w in words {
            for &l in &w.letters {
                push_reducing(&mut out, l);
            }
        }
        Word { letters: out }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            for &l in &base.letters {
                push_reducing(&mut out, l);
            }
        }
        Word { letters: out }
    }

    /// `[u, v] = u v u^-1 v^-1`, freely reduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        Word::product([u, v, &u.inverse(), &v.inverse()])
    }

    /// `u v u^-1`, freely reduced.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        Word::product([u, self, &u.inverse()])
    }

    /// The unique freely reduced word equal to `self` in the free group.
    pub fn reduced(&self) -> Word {
        let mut out = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            push_reducing(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inv())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.first(), self.last()) {
                (Some(a), Some(b)) => self.len() == 1 || a != b.inv(),
                _ => true,
            }
    }

    /// Splits a word into `(core, conjugator)` with `core` cyclically reduced
    /// and `conjugator * core * conjugator^-1` freely equal to `self`.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let w = self.reduced();
        let n = w.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && w.letters[k] == w.letters[n - 1 - k].inv() {
            k += 1;
        }
        (
            Word {
                letters: w.letters[k..n - k].to_vec(),
            },
            Word {
                letters: w.letters[..k].to_vec(),
            },
        )
    }

    /// Rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word {
            letters: self.letters[start..end].to_vec(),
        }
    }

    /// Signed letter counts per generator.
    pub fn exponent_vector(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for l in &self.letters {
            v[l.gen()] += l.sign();
        }
        v
    }

    /// True iff the word lies in the commutator subgroup of the free group.
    pub fn in_commutator_subgroup(&self, rank: usize) -> bool {
        self.exponent_vector(rank).iter().all(|&e| e == 0)
    }

    pub fn contains_gen(&self, g: usize) -> bool {
        self.letters.iter().any(|l| l.gen() == g)
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen()).max()
    }

    /// Substitutes `images[g]` for each generator `g` (inverting for inverse
    /// letters) and freely reduces.
    pub fn apply_map(&self, images: &[Word]) -> Result<Word, WordError> {
        let mut out = Vec::new();
        for &l in &self.letters {
            let img = images
                .get(l.gen())
                .ok_or(WordError::UnmappedSymbol(l.gen()))?;
            if l.is_inverse() {
                for &m in img.letters.iter().rev() {
                    push_reducing(&mut out, m.inv());
                }
            } else {
                for &m in &img.letters {
                    push_reducing(&mut out, m);
                }
            }
        }
        Ok(Word { letters: out })
    }

    /// Relabels generators through an index map; no reduction needed since
    /// the map is injective on letters.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(map(l.gen()), l.is_inverse()))
                .collect(),
        }
    }

    /// Drops every letter whose generator satisfies `kill`, then reduces.
    pub fn delete_gens(&self, kill: impl Fn(usize) -> bool) -> Word {
        let mut out = Vec::new();
        for &l in &self.letters {
            if !kill(l.gen()) {
                push_reducing(&mut out, l);
            }
        }
        Word { letters: out }
    }

    /// Representative of the conjugacy class of `self` and its inverse: the
    /// lexicographically least rotation of the cyclically reduced core or of
    /// its inverse. Two relators define the same normal closure contribution
    /// when their normal forms agree.
    pub fn cyclic_normal_form(&self) -> Word {
        let (core, _) = self.cyclically_reduce();
        let inv = core.inverse();
        (0..core.len().max(1))
            .flat_map(|k| [core.rotate(k), inv.rotate(k)])
            .min()
            .unwrap_or_default()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

pub(crate) fn push_reducing(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Canonical rendering: runs collapsed to `x^k`, `*` separators, `1` for the
/// empty word.
pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i + 1;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let run = (j - i) as i64 * l.sign();
            let name = self
                .alphabet
                .symbols
                .get(l.gen())
                .map(String::as_str)
                .unwrap_or("?");
            if run == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b", "c", "d"]).unwrap()
    }

    fn w(s: &str) -> Word {
        parse_word(s, &ab()).unwrap()
    }

    #[test]
    fn adjacent_cancellation() {
        assert_eq!(w("a a^-1 b").reduced(), w("b"));
        assert_eq!(Word::empty().reduced(), Word::empty());
        assert_eq!(w("a b b^-1 a^-1").reduced(), Word::empty());
    }

    #[test]
    fn cyclic_reduction_examples() {
        let (core, conj) = w("a b a^-1").cyclically_reduce();
        assert_eq!(core, w("b"));
        assert_eq!(conj, w("a"));
        let (core, conj) = w("a b").cyclically_reduce();
        assert_eq!(core, w("a b"));
        assert!(conj.is_empty());
        // a single letter is its own core
        let (core, _) = w("a").cyclically_reduce();
        assert_eq!(core, w("a"));
    }

    #[test]
    fn apply_map_kills_and_errors() {
        let images = vec![Word::generator(2), Word::empty()];
        let out = parse_word("a b", &ab())
            .unwrap()
            .apply_map(&images)
            .unwrap();
        assert_eq!(out, w("c"));
        let err = w("c").apply_map(&images).unwrap_err();
        assert_eq!(err, WordError::UnmappedSymbol(2));
    }

    #[test]
    fn exponent_vector_of_higman_relator() {
        assert_eq!(w("a b a^-1 b^-2").exponent_vector(4), vec![0, -1, 0, 0]);
        assert_eq!(
            Word::commutator(&w("a b^3"), &w("c d a")).exponent_vector(4),
            vec![0; 4]
        );
    }

    #[test]
    fn malformed_word_detected() {
        let small = Alphabet::new(["a"]).unwrap();
        assert_eq!(
            small.check(&Word::generator(3)),
            Err(WordError::MalformedWord { index: 3, size: 1 })
        );
    }

    #[test]
    fn rendering_collapses_runs() {
        let a = ab();
        assert_eq!(
            w("a a b^-1 b^-1 c a").display(&a).to_string(),
            "a^2*b^-2*c*a"
        );
        assert_eq!(Word::empty().display(&a).to_string(), "1");
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let a = Alphabet::new(["a1", "a1_1"]).unwrap();
        assert_eq!(a.fresh_name("a1"), "a1_2");
        assert_eq!(a.fresh_name("t"), "t");
    }

    #[test]
    fn alphabet_rejects_bad_names() {
        assert!(matches!(
            Alphabet::new(["1x"]),
            Err(AlphabetError::InvalidName(_))
        ));
        assert!(matches!(
            Alphabet::new(["x", "x"]),
            Err(AlphabetError::Duplicate(_))
        ));
    }
}
