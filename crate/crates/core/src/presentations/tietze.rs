use super::{FinitePresentation, PresentationError};
use crate::freewords::{Alphabet, Word};

/// Result of removing one generator with a defining relator.
#[derive(Clone, Debug)]
pub struct TietzeElimination {
    pub presentation: FinitePresentation,
    /// Image of every old generator as a word over the new alphabet.
    pub forward: Vec<Word>,
    /// Image of every new generator as a word over the old alphabet.
    pub backward: Vec<Word>,
    /// Old relator indices (other than the defining one) that became freely
    /// trivial after substitution and were dropped.
    pub dropped: Vec<usize>,
}

/// Removes generator `g` using relator `defining`, in which `g` must occur
/// exactly once. Writing a cyclic conjugate of that relator as `g^e u`, every
/// other occurrence of `g` is replaced by `u^-e`.
///
/// The asphericity note survives only if no relator was dropped: deleting a
/// generator together with a relator in which it occurs once collapses a
/// free face of the 2-complex, which is a homotopy equivalence.
pub fn tietze_eliminate_generator(
    p: &FinitePresentation,
    g: usize,
    defining: usize,
) -> Result<TietzeElimination, PresentationError> {
    let n = p.num_generators();
    if g >= n {
        return Err(PresentationError::UnknownGenerator(format!("#{g}")));
    }
    let rel = p
        .relators()
        .get(defining)
        .ok_or(PresentationError::NoSuchRelator(defining))?;
    let gname = p.alphabet().name(g).to_string();
    let positions: Vec<usize> = (0..rel.len())
        .filter(|&i| rel.letters()[i].gen() == g)
        .collect();
    if positions.len() != 1 {
        return Err(PresentationError::NotEliminable {
            generator: gname,
            relator: defining,
            reason: if positions.is_empty() {
                "generator does not occur"
            } else {
                "generator occurs more than once"
            },
        });
    }
    let rotated = rel.rotate(positions[0]);
    let e = rotated.letters()[0];
    let u = rotated.subword(1, rotated.len());
    let value_old = if e.is_inverse() { u } else { u.inverse() };

    let new_index = |i: usize| if i < g { i } else { i - 1 };
    let mut names = Vec::with_capacity(n - 1);
    let mut backward = Vec::with_capacity(n - 1);
    for i in (0..n).filter(|&i| i != g) {
        names.push(p.alphabet().name(i).to_string());
        backward.push(Word::generator(i));
    }
    let alphabet = Alphabet::new(names)?;
    let value_new = value_old.relabel(new_index);
    let forward: Vec<Word> = (0..n)
        .map(|i| {
            if i == g {
                value_new.clone()
            } else {
                Word::generator(new_index(i))
            }
        })
        .collect();

    let mut relators = Vec::new();
    let mut dropped = Vec::new();
    for (j, r) in p.relators().iter().enumerate() {
        if j == defining {
            continue;
        }
        let img = r.apply_map(&forward)?;
        if img.is_empty() {
            dropped.push(j);
        } else {
            relators.push(img);
        }
    }
    let aspherical = if dropped.is_empty() {
        p.asphericity().map(str::to_string)
    } else {
        None
    };
    Ok(TietzeElimination {
        presentation: FinitePresentation::from_parts_unchecked(alphabet, relators, aspherical),
        forward,
        backward,
        dropped,
    })
}

/// Quotient by the normal closure of the listed generators: they are deleted
/// from every relator and relators that become freely trivial are dropped.
/// Returns the presentation over the remaining generators (in order) and the
/// dropped relator indices. The asphericity note is not carried over.
pub fn kill_generators(
    p: &FinitePresentation,
    kill: &[usize],
) -> Result<(FinitePresentation, Vec<usize>), PresentationError> {
    let n = p.num_generators();
    if let Some(&bad) = kill.iter().find(|&&k| k >= n) {
        return Err(PresentationError::UnknownGenerator(format!("#{bad}")));
    }
    let mut keep = vec![true; n];
    for &k in kill {
        keep[k] = false;
    }
    let mut map = vec![Word::empty(); n];
    let mut names = Vec::new();
    for i in 0..n {
        if keep[i] {
            map[i] = Word::generator(names.len());
            names.push(p.alphabet().name(i).to_string());
        }
    }
    let relators = p
        .relators()
        .iter()
        .map(|r| r.apply_map(&map))
        .collect::<Result<Vec<_>, _>>()?;
    FinitePresentation::new_dropping_trivial(Alphabet::new(names)?, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_presentation;

    #[test]
    fn eliminate_identification() {
        let p = parse_presentation("< x, y | x y^-1, x^3 y^-2 x >").unwrap();
        let t = tietze_eliminate_generator(&p, 0, 0).unwrap();
        assert_eq!(t.presentation, parse_presentation("< y | y^2 >").unwrap());
        assert_eq!(t.forward[0], Word::generator(0));
        assert_eq!(t.backward, vec![Word::generator(1)]);
    }

    #[test]
    fn generator_in_middle_of_relator() {
        let p = parse_presentation("< a, b, c | a c^-1 b, c a c >").unwrap();
        let t = tietze_eliminate_generator(&p, 2, 0).unwrap();
        // c = b a, so c a c = b a a b a
        assert_eq!(
            t.presentation,
            parse_presentation("< a, b | b a a b a >").unwrap()
        );
    }

    #[test]
    fn shape_errors() {
        let p = parse_presentation("< a, b | a b a, b >").unwrap();
        assert!(matches!(
            tietze_eliminate_generator(&p, 0, 0),
            Err(PresentationError::NotEliminable { .. })
        ));
        assert!(matches!(
            tietze_eliminate_generator(&p, 0, 1),
            Err(PresentationError::NotEliminable { .. })
        ));
        assert!(matches!(
            tietze_eliminate_generator(&p, 0, 7),
            Err(PresentationError::NoSuchRelator(7))
        ));
    }

    #[test]
    fn dropped_relators_and_flag() {
        let p = parse_presentation("< x, y | x y^-1, x y^-1 >")
            .unwrap()
            .with_asphericity("test");
        let t = tietze_eliminate_generator(&p, 0, 0).unwrap();
        assert_eq!(t.dropped, vec![1]);
        assert_eq!(t.presentation.num_relators(), 0);
        assert!(t.presentation.asphericity().is_none());
    }

    #[test]
    fn kill() {
        let p = parse_presentation("< x, a | x a x^-1 a^-2, a, x a x a^-1 >").unwrap();
        let (q, dropped) = kill_generators(&p, &[1]).unwrap();
        assert_eq!(q, parse_presentation("< x | x^2 >").unwrap());
        assert_eq!(dropped, vec![0, 1]);
    }
}
