//! Finite-quotient search into symmetric groups and Todd–Coxeter coset
//! enumeration.

mod homsearch;
mod todd_coxeter;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::freewords::Word;
use crate::presentations::FinitePresentation;

pub use homsearch::{
    conjugacy_class_representatives, finite_quotient_certificate, hom_search, hom_search_sharded,
    CertificateOutcome, FiniteQuotientReport, HomSearchResult, SearchMode, SearchOptions,
};
pub use todd_coxeter::{todd_coxeter, CosetTable, EnumerationStatus};

/// Permutation of `{0, .., n-1}` acting on the right: `p` maps `i` to `img[i]`,
/// and the product `p * q` applies `p` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Perm {
    img: Vec<u32>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation on the points `1..=n`, `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            img: (0..n as u32).collect(),
        }
    }

    /// Panics unless `img` is a permutation.
    pub fn from_images(img: Vec<u32>) -> Self {
        let mut seen = vec![false; img.len()];
        for &i in &img {
            assert!(
                (i as usize) < img.len() && !seen[i as usize],
                "not a permutation"
            );
            seen[i as usize] = true;
        }
        Perm { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.img.len()];
        for (i, &j) in self.img.iter().enumerate() {
            out[j as usize] = i as u32;
        }
        Perm { img: out }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            img: self.img.iter().map(|&i| other.img[i as usize]).collect(),
        }
    }

    /// Nontrivial cycles, each starting at its least point, in order of that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut i = self.apply(s);
            while i != s {
                seen[i] = true;
                c.push(i);
                i = self.apply(i);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

/// Evaluates a word under generator images (right action).
pub fn evaluate(images: &[Perm], inverses: &[Perm], w: &Word) -> Perm {
    let n = images.first().map_or(0, Perm::degree);
    let mut img: Vec<u32> = (0..n as u32).collect();
    for l in w.letters() {
        let p = if l.is_inverse() {
            &inverses[l.gen()]
        } else {
            &images[l.gen()]
        };
        for x in img.iter_mut() {
            *x = p.img[*x as usize];
        }
    }
    Perm { img }
}

/// A homomorphism into `S_degree`, one permutation per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PermAssignment {
    pub degree: usize,
    pub images: Vec<Perm>,
}

impl PermAssignment {
    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(Perm::is_identity)
    }

    pub fn evaluate(&self, w: &Word) -> Perm {
        let inv: Vec<Perm> = self.images.iter().map(Perm::inverse).collect();
        evaluate(&self.images, &inv, w)
    }

    /// Every relator evaluates to the identity.
    pub fn verify(&self, p: &FinitePresentation) -> bool {
        self.images.len() == p.num_generators()
            && self.images.iter().all(|q| q.degree() == self.degree)
            && p.relators().iter().all(|r| self.evaluate(r).is_identity())
    }

    /// Order of the image subgroup.
    pub fn image_order(&self) -> usize {
        generated_group_order(&self.images, self.degree)
    }
}

/// Order of the permutation group generated by `gens`, by orbit enumeration
/// of the identity under right multiplication. Intended for small degree.
pub fn generated_group_order(gens: &[Perm], degree: usize) -> usize {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        let p = Perm::from_images(vec![1, 2, 0, 3]);
        assert_eq!(p.to_string(), "(1 2 3)");
        assert_eq!(p.cycle_type(), vec![3, 1]);
        assert!(p.then(&p.inverse()).is_identity());
        let q = Perm::from_images(vec![1, 0, 2, 3]);
        assert_eq!(p.then(&q).apply(0), 0);
        assert_eq!(Perm::identity(3).to_string(), "()");
    }

    #[test]
    fn group_orders() {
        let a = Perm::from_images(vec![1, 0, 2, 3, 4]);
        let b = Perm::from_images(vec![1, 2, 3, 4, 0]);
        assert_eq!(generated_group_order(&[a, b.clone()], 5), 120);
        assert_eq!(generated_group_order(&[b], 5), 5);
        assert_eq!(generated_group_order(&[], 3), 1);
    }
}
