//! Word-problem oracles: anything that can answer "is this word trivial in
//! the group" for some presented group, possibly without an answer.

use std::collections::HashSet;

use serde::Serialize;

use crate::freewords::Word;
use crate::presentations::FinitePresentation;
use crate::quotients::{todd_coxeter, CosetTable};
use crate::smallcancel::{DehnSolver, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "decision", content = "reason", rename_all = "snake_case")]
pub enum Decision {
    Trivial,
    Nontrivial,
    Inconclusive(String),
}

impl Decision {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Decision::Trivial)
    }
}

pub trait WordOracle {
    fn decide(&self, w: &Word) -> Decision;
}

impl<F: Fn(&Word) -> Decision> WordOracle for F {
    fn decide(&self, w: &Word) -> Decision {
        self(w)
    }
}

/// The free group: trivial iff freely trivial.
pub struct FreeGroupOracle;

impl WordOracle for FreeGroupOracle {
    fn decide(&self, w: &Word) -> Decision {
        if w.reduced().is_empty() {
            Decision::Trivial
        } else {
            Decision::Nontrivial
        }
    }
}

impl WordOracle for DehnSolver<'_> {
    fn decide(&self, w: &Word) -> Decision {
        match self.reduce(w).verdict {
            Verdict::Trivial => Decision::Trivial,
            Verdict::Nontrivial => Decision::Nontrivial,
        }
    }
}

/// Regular action of a finite group from a complete coset table over the
/// trivial subgroup.
pub struct FiniteGroupOracle {
    table: CosetTable,
}

impl FiniteGroupOracle {
    /// Enumerates cosets of the trivial subgroup; `None` on overflow.
    pub fn enumerate(p: &FinitePresentation, max_cosets: usize) -> Option<Self> {
        let table = todd_coxeter(p, &[], max_cosets);
        table.index().map(|_| FiniteGroupOracle { table })
    }

    pub fn order(&self) -> usize {
        self.table.index().expect("complete table")
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }
}

impl WordOracle for FiniteGroupOracle {
    fn decide(&self, w: &Word) -> Decision {
        if self.table.in_subgroup(w) {
            Decision::Trivial
        } else {
            Decision::Nontrivial
        }
    }
}

/// Picks a word-problem solver for a presentation: the free group when there
/// are no relators, Dehn's algorithm when the C'(1/6) certificate passes,
/// otherwise the regular action if coset enumeration finishes in budget.
/// Without any of these only freely trivial words and cyclic conjugates of
/// relators (or their inverses) are decided.
pub enum AutoOracle<'a> {
    Free,
    Dehn(Box<DehnSolver<'a>>),
    Finite(FiniteGroupOracle),
    Unavailable { relators: HashSet<Word> },
}

impl<'a> AutoOracle<'a> {
    pub fn select(p: &'a FinitePresentation, max_cosets: usize) -> Self {
        if p.num_relators() == 0 {
            return AutoOracle::Free;
        }
        if let Ok(d) = DehnSolver::new(p) {
            return AutoOracle::Dehn(Box::new(d));
        }
        match FiniteGroupOracle::enumerate(p, max_cosets) {
            Some(f) => AutoOracle::Finite(f),
            None => AutoOracle::Unavailable {
                relators: p.relators().iter().map(Word::cyclic_normal_form).collect(),
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AutoOracle::Free => "free",
            AutoOracle::Dehn(_) => "dehn",
            AutoOracle::Finite(_) => "finite",
            AutoOracle::Unavailable { .. } => "unavailable",
        }
    }
}

impl WordOracle for AutoOracle<'_> {
    fn decide(&self, w: &Word) -> Decision {
        match self {
            AutoOracle::Free => FreeGroupOracle.decide(w),
            AutoOracle::Dehn(d) => d.decide(w),
            AutoOracle::Finite(f) => f.decide(w),
            AutoOracle::Unavailable { relators } => {
                let w = w.reduced();
                if w.is_empty() || relators.contains(&w.cyclic_normal_form()) {
                    Decision::Trivial
                } else {
                    Decision::Inconclusive(
                        "no word-problem solver: not C'(1/6) and coset enumeration overflowed"
                            .into(),
                    )
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_presentation;

    #[test]
    fn oracles_agree_on_simple_words() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^5 >").unwrap();
        let fin = FiniteGroupOracle::enumerate(&p, 1000).unwrap();
        assert_eq!(fin.order(), 60);
        assert_eq!(fin.decide(&p.word("b^3 a^2").unwrap()), Decision::Trivial);
        assert_eq!(fin.decide(&p.word("a b").unwrap()), Decision::Nontrivial);
        assert_eq!(
            FreeGroupOracle.decide(&p.word("a a^-1").unwrap()),
            Decision::Trivial
        );
        let closure = |w: &Word| {
            if w.is_empty() {
                Decision::Trivial
            } else {
                Decision::Inconclusive("no".into())
            }
        };
        assert!(closure.decide(&Word::empty()).is_trivial());
    }

    #[test]
    fn auto_selection() {
        let free = parse_presentation("< a, b | >").unwrap();
        assert_eq!(AutoOracle::select(&free, 10).kind(), "free");
        let s = parse_presentation("< a, b, c, d | [a, b] [c, d] >").unwrap();
        assert_eq!(AutoOracle::select(&s, 10).kind(), "dehn");
        let a5 = parse_presentation("< a, b | a^2, b^3, (a b)^5 >").unwrap();
        let o = AutoOracle::select(&a5, 1000);
        assert_eq!(o.kind(), "finite");
        assert_eq!(o.decide(&a5.word("(a b)^5").unwrap()), Decision::Trivial);
        let j = crate::presentations::higman_j();
        let o = AutoOracle::select(&j, 200);
        assert_eq!(o.kind(), "unavailable");
        assert!(matches!(
            o.decide(&Word::generator(0)),
            Decision::Inconclusive(_)
        ));
        let r = j.relators()[1].rotate(3).inverse();
        assert_eq!(o.decide(&r), Decision::Trivial);
    }
}
