use crate::freewords::{push_reducing, Letter, Word};
use crate::presentations::FinitePresentation;

/// One conjugate `w r^s w^-1` of a relator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub conjugator: Word,
    pub relator: usize,
    pub sign: i8,
}

impl Factor {
    pub fn new(conjugator: Word, relator: usize, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "factor sign must be +-1");
        Factor {
            conjugator,
            relator,
            sign,
        }
    }

    pub fn expand(&self, p: &FinitePresentation) -> Word {
        let r = &p.relators()[self.relator];
        let r = if self.sign > 0 {
            r.clone()
        } else {
            r.inverse()
        };
        r.conjugate_by(&self.conjugator)
    }
}

/// A product of relator conjugates together with its free reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalClosureElement {
    pub factors: Vec<Factor>,
    pub expanded: Word,
}

impl NormalClosureElement {
    pub fn identity() -> Self {
        NormalClosureElement {
            factors: Vec::new(),
            expanded: Word::empty(),
        }
    }

    /// Panics if a factor names a relator outside `p`.
    pub fn from_factors(p: &FinitePresentation, factors: Vec<Factor>) -> Self {
        let expanded = expand_factors(p, &factors);
        NormalClosureElement { factors, expanded }
    }

    /// Recomputes the product and compares with the stored expansion.
    pub fn verify(&self, p: &FinitePresentation) -> bool {
        self.factors
            .iter()
            .all(|f| f.relator < p.num_relators() && p.alphabet().check(&f.conjugator).is_ok())
            && expand_factors(p, &self.factors) == self.expanded
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        NormalClosureElement {
            factors,
            expanded: self.expanded.mul(&other.expanded),
        }
    }

    pub fn inverse(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| Factor::new(f.conjugator.clone(), f.relator, -f.sign))
            .collect();
        NormalClosureElement {
            factors,
            expanded: self.expanded.inverse(),
        }
    }

    /// `u self u^-1`.
    pub fn conjugate_by(&self, u: &Word) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|f| Factor::new(u.mul(&f.conjugator), f.relator, f.sign))
            .collect();
        NormalClosureElement {
            factors,
            expanded: self.expanded.conjugate_by(u),
        }
    }

    /// Size used for enumeration order: factor count plus conjugator lengths.
    pub fn size(&self) -> usize {
        self.factors.iter().map(|f| 1 + f.conjugator.len()).sum()
    }
}

fn expand_factors(p: &FinitePresentation, factors: &[Factor]) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for f in factors {
        for &l in f.expand(p).letters() {
            push_reducing(&mut out, l);
        }
    }
    Word::from_letters(out)
}

/// Number of reduced words of length `len` over `n` generators.
pub(crate) fn reduced_count(n: usize, len: usize) -> u128 {
    if len == 0 {
        1
    } else if n == 0 {
        0
    } else {
        let n = n as u128;
        (2 * n).saturating_mul((2 * n - 1).saturating_pow(len as u32 - 1))
    }
}

/// The `idx`-th reduced word of length `len` in shortlex order, where the
/// letter order is `x0 < x0^-1 < x1 < ...`.
pub(crate) fn reduced_word(n: usize, len: usize, mut idx: u128) -> Word {
    let mut digits = Vec::with_capacity(len);
    for pos in (0..len).rev() {
        let radix = if pos == 0 {
            2 * n as u128
        } else {
            2 * n as u128 - 1
        };
        digits.push((idx % radix) as usize);
        idx /= radix;
    }
    digits.reverse();
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for d in digits {
        let code = match letters.last() {
            None => d,
            Some(prev) => {
                let forbidden = prev.inv().code();
                if d >= forbidden {
                    d + 1
                } else {
                    d
                }
            }
        };
        letters.push(Letter::from_code(code));
    }
    Word::from_letters(letters)
}

/// Deterministic enumeration of products of relator conjugates.
///
/// Items come in order of size (factor count plus total conjugator length).
/// Within a size: fewer factors first, then conjugator lengths as a
/// composition in lexicographic order, then factors lexicographically with
/// each factor ordered by (conjugator shortlex, sign `+` before `-`,
/// relator index). Every product of at most `k` factors with conjugators of
/// length at most `k` has size at most `k(k+1)` and so appears among the
/// finitely many items of that size or less. Duplicate expansions are not
/// filtered.
pub struct NormalClosureStream<'a> {
    p: &'a FinitePresentation,
    size: usize,
    factors: usize,
    lengths: Vec<usize>,
    counters: Vec<u128>,
    limits: Vec<u128>,
    started: bool,
}

pub fn normal_closure_stream(p: &FinitePresentation) -> NormalClosureStream<'_> {
    NormalClosureStream {
        p,
        size: 1,
        factors: 1,
        lengths: vec![0],
        counters: vec![0],
        limits: Vec::new(),
        started: false,
    }
}

impl NormalClosureStream<'_> {
    fn per_factor(&self, len: usize) -> u128 {
        reduced_count(self.p.num_generators(), len)
            .saturating_mul(2 * self.p.num_relators() as u128)
    }

    fn reset_counters(&mut self) {
        self.limits = self.lengths.iter().map(|&l| self.per_factor(l)).collect();
        self.counters = vec![0; self.lengths.len()];
    }

    /// Next composition of `size - factors` into `factors` parts, lexicographic.
    fn next_composition(&mut self) -> bool {
        let k = self.lengths.len();
        // Find the rightmost position (not last) that can grow by taking one from the tail.
        for i in (0..k.saturating_sub(1)).rev() {
            let tail: usize = self.lengths[i + 1..].iter().sum();
            if tail > 0 {
                self.lengths[i] += 1;
                let rest = tail - 1;
                for x in &mut self.lengths[i + 1..] {
                    *x = 0;
                }
                self.lengths[k - 1] = rest;
                return true;
            }
        }
        false
    }

    fn advance_shape(&mut self) {
        loop {
            if self.next_composition() {
                // Compositions start at (0, .., 0, L), the lexicographically least.
            } else if self.factors < self.size {
                self.factors += 1;
                self.lengths = vec![0; self.factors];
                self.lengths[self.factors - 1] = self.size - self.factors;
            } else {
                self.size += 1;
                self.factors = 1;
                self.lengths = vec![self.size - 1];
            }
            self.reset_counters();
            if self.limits.iter().all(|&l| l > 0) {
                return;
            }
        }
    }

    fn item(&self) -> NormalClosureElement {
        let n = self.p.num_generators();
        let m = self.p.num_relators() as u128;
        let factors = self
            .lengths
            .iter()
            .zip(&self.counters)
            .map(|(&len, &c)| {
                let word = c / (2 * m);
                let rest = c % (2 * m);
                let sign = if rest < m { 1 } else { -1 };
                Factor::new(reduced_word(n, len, word), (rest % m) as usize, sign)
            })
            .collect();
        NormalClosureElement::from_factors(self.p, factors)
    }
}

impl Iterator for NormalClosureStream<'_> {
    type Item = NormalClosureElement;

    fn next(&mut self) -> Option<NormalClosureElement> {
        if self.p.num_relators() == 0 {
            return None;
        }
        if !self.started {
            self.started = true;
            self.reset_counters();
            return Some(self.item());
        }
        // Odometer over factor indices, last factor fastest.
        for i in (0..self.counters.len()).rev() {
            self.counters[i] += 1;
            if self.counters[i] < self.limits[i] {
                return Some(self.item());
            }
            self.counters[i] = 0;
        }
        self.advance_shape();
        Some(self.item())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{relation_matrix, solve_row_combination};
    use crate::presentations::parse_presentation;
    use num_bigint::BigInt;

    #[test]
    fn reduced_words_in_shortlex() {
        let n = 2;
        for len in 0..4 {
            let all: Vec<Word> = (0..reduced_count(n, len))
                .map(|i| reduced_word(n, len, i))
                .collect();
            assert!(all.iter().all(|w| w.len() == len && w.is_reduced()));
            assert!(all.windows(2).all(|p| p[0] < p[1]));
        }
        assert_eq!(reduced_count(2, 3), 36);
    }

    #[test]
    fn relators_come_first() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^5 >").unwrap();
        let first: Vec<Word> = normal_closure_stream(&p)
            .take(3)
            .map(|e| e.expanded)
            .collect();
        assert_eq!(first, p.relators());
    }

    #[test]
    fn square_from_two_factors() {
        let p = parse_presentation("< a | a >").unwrap();
        let sq = p.word("a^2").unwrap();
        let hit = normal_closure_stream(&p)
            .take(50)
            .find(|e| e.expanded == sq)
            .unwrap();
        assert_eq!(hit.factors.len(), 2);
    }

    #[test]
    fn sizes_are_monotone_and_items_verify() {
        let p = parse_presentation("< a, b | a b a^-1 b^-2 >").unwrap();
        let m = relation_matrix(&p);
        let items: Vec<_> = normal_closure_stream(&p).take(3000).collect();
        assert!(items.windows(2).all(|w| w[0].size() <= w[1].size()));
        for e in &items {
            assert!(e.verify(&p));
            let v: Vec<BigInt> = e
                .expanded
                .exponent_vector(2)
                .into_iter()
                .map(BigInt::from)
                .collect();
            assert!(solve_row_combination(&m, &v).is_some());
        }
        let distinct: std::collections::HashSet<_> =
            items.iter().map(|e| e.factors.clone()).collect();
        assert_eq!(distinct.len(), items.len());
    }

    #[test]
    fn element_algebra() {
        let p = parse_presentation("< x, y | x y x^-1 y^-2 >").unwrap();
        let e =
            NormalClosureElement::from_factors(&p, vec![Factor::new(p.word("y").unwrap(), 0, 1)]);
        let f = e.mul(&e.inverse());
        assert!(f.verify(&p));
        assert!(f.expanded.is_empty());
        assert!(e.conjugate_by(&p.word("x").unwrap()).verify(&p));
    }
}
