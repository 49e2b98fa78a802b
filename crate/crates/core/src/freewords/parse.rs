//! Text syntax for words: juxtaposition with optional `*`, integer exponents
//! with `^`, parenthesised subwords, commutators `[u,v]`, and `1` for the
//! identity. Example: `a*b^-2*(c*d)^3*[a,b]`.

use std::fmt;

use thiserror::Error;

use super::{is_valid_name, Alphabet, Letter, Word};

/// Upper bound on the letter count of any parsed word, before reduction.
pub const MAX_WORD_LEN: usize = 1 << 20;
/// Upper bound on bracket nesting depth.
pub const MAX_NESTING: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownGenerator(String),
    DuplicateGenerator(String),
    InvalidNumber(String),
    ExponentOverflow,
    WordTooLong,
    NestingTooDeep,
    TrivialRelator,
    TrailingInput,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnknownGenerator(g) => write!(f, "unknown generator {g:?}"),
            ParseErrorKind::DuplicateGenerator(g) => write!(f, "duplicate generator {g:?}"),
            ParseErrorKind::InvalidNumber(s) => write!(f, "invalid number {s:?}"),
            ParseErrorKind::ExponentOverflow => f.write_str("exponent out of range"),
            ParseErrorKind::WordTooLong => write!(f, "word exceeds {MAX_WORD_LEN} letters"),
            ParseErrorKind::NestingTooDeep => {
                write!(f, "brackets nested deeper than {MAX_NESTING}")
            }
            ParseErrorKind::TrivialRelator => f.write_str("relator is freely trivial"),
            ParseErrorKind::TrailingInput => f.write_str("unexpected input after end"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Character cursor with 1-based line/column tracking.
#[derive(Clone)]
pub struct Cursor<'a> {
    src: &'a str,
    offset: usize,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            src,
            offset: 0,
            line: 1,
            column: 1,
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.src[self.offset..].chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub fn at_end(&self) -> bool {
        self.offset >= self.src.len()
    }

    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }

    /// Error for whatever is at the cursor: the offending character or end of input.
    pub fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    /// Skips whitespace, then consumes `c` if present.
    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else if self.at_end() {
            Err(self.error(ParseErrorKind::UnexpectedEnd))
        } else {
            Err(self.error(ParseErrorKind::Expected(what)))
        }
    }

    /// Reads `[A-Za-z][A-Za-z0-9_]*` at the cursor (no leading whitespace skip).
    pub fn ident(&mut self) -> Option<&'a str> {
        let start = self.offset;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        let name = &self.src[start..self.offset];
        debug_assert!(is_valid_name(name));
        Some(name)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.offset;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        &self.src[start..self.offset]
    }
}

/// Parses a complete word over `alphabet`. Empty (or all-whitespace) input
/// is the identity. Letters are kept as written; no reduction is applied.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.at_end() {
        return Ok(Word::empty());
    }
    let w = parse_word_at(&mut cur, alphabet)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error(ParseErrorKind::TrailingInput));
    }
    Ok(w)
}

/// Parses one word starting at the cursor, stopping before `,`, `|`, `>`,
/// `=`, `)`, `]` or end of input.
pub fn parse_word_at(cur: &mut Cursor<'_>, alphabet: &Alphabet) -> Result<Word, ParseError> {
    WordParser { alphabet, depth: 0 }.word(cur)
}

struct WordParser<'a> {
    alphabet: &'a Alphabet,
    depth: usize,
}

impl WordParser<'_> {
    fn word(&mut self, cur: &mut Cursor<'_>) -> Result<Word, ParseError> {
        let mut letters: Vec<Letter> = Vec::new();
        let mut any = false;
        loop {
            cur.skip_ws();
            let starts_factor =
                matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '[');
            if any {
                if cur.peek() == Some('*') {
                    cur.bump();
                    cur.skip_ws();
                } else if !starts_factor {
                    break;
                }
            } else if !starts_factor {
                return Err(cur.unexpected());
            }
            let factor = self.factor(cur)?;
            if letters.len() + factor.len() > MAX_WORD_LEN {
                return Err(cur.error(ParseErrorKind::WordTooLong));
            }
            letters.extend_from_slice(factor.letters());
            any = true;
        }
        Ok(Word::from_letters(letters))
    }

    fn factor(&mut self, cur: &mut Cursor<'_>) -> Result<Word, ParseError> {
        let atom = self.atom(cur)?;
        cur.skip_ws();
        if cur.peek() != Some('^') {
            return Ok(atom);
        }
        cur.bump();
        cur.skip_ws();
        let negative = match cur.peek() {
            Some('-') => {
                cur.bump();
                true
            }
            Some('+') => {
                cur.bump();
                false
            }
            _ => false,
        };
        let digits = cur.digits();
        if digits.is_empty() {
            return Err(cur.error(ParseErrorKind::Expected("exponent")));
        }
        let k: u64 = digits
            .parse()
            .map_err(|_| cur.error(ParseErrorKind::ExponentOverflow))?;
        let k = usize::try_from(k).map_err(|_| cur.error(ParseErrorKind::ExponentOverflow))?;
        if k > MAX_WORD_LEN {
            return Err(cur.error(ParseErrorKind::ExponentOverflow));
        }
        if atom.len().saturating_mul(k) > MAX_WORD_LEN {
            return Err(cur.error(ParseErrorKind::WordTooLong));
        }
        let base = if negative { atom.inverse() } else { atom };
        let mut letters = Vec::with_capacity(base.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(base.letters());
        }
        Ok(Word::from_letters(letters))
    }

    fn atom(&mut self, cur: &mut Cursor<'_>) -> Result<Word, ParseError> {
        cur.skip_ws();
        match cur.peek() {
            Some('(') => {
                self.enter(cur)?;
                cur.bump();
                let w = self.word(cur)?;
                cur.expect(')', "')'")?;
                self.depth -= 1;
                Ok(w)
            }
            Some('[') => {
                self.enter(cur)?;
                cur.bump();
                let u = self.word(cur)?;
                cur.expect(',', "','")?;
                let v = self.word(cur)?;
                cur.expect(']', "']'")?;
                self.depth -= 1;
                if 2 * (u.len() + v.len()) > MAX_WORD_LEN {
                    return Err(cur.error(ParseErrorKind::WordTooLong));
                }
                let mut letters = u.letters().to_vec();
                letters.extend_from_slice(v.letters());
                letters.extend(u.inverse().into_letters());
                letters.extend(v.inverse().into_letters());
                Ok(Word::from_letters(letters))
            }
            Some(c) if c.is_ascii_digit() => {
                let before = cur.clone();
                let digits = cur.digits();
                if digits == "1" {
                    Ok(Word::empty())
                } else {
                    Err(before.error(ParseErrorKind::InvalidNumber(digits.to_string())))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let before = cur.clone();
                let name = cur.ident().expect("peeked alphabetic");
                match self.alphabet.lookup(name) {
                    Some(i) => Ok(Word::generator(i)),
                    None => Err(before.error(ParseErrorKind::UnknownGenerator(name.to_string()))),
                }
            }
            _ => Err(cur.unexpected()),
        }
    }

    fn enter(&mut self, cur: &Cursor<'_>) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            Err(cur.error(ParseErrorKind::NestingTooDeep))
        } else {
            Ok(())
        }
    }
}
