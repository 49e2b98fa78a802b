use thiserror::Error;

use crate::freewords::{Alphabet, Word};
use crate::homology::{h1, H1Report};
use crate::presentations::{higman_j, FinitePresentation, PresentationError};
use crate::uce::{miller_uce, UceError, UcePresentation, WitnessStrategy};

/// A presentation with no nontrivial finite quotients together with a
/// generator whose normal closure is everything.
#[derive(Clone, Debug)]
pub struct Attachment {
    pub presentation: FinitePresentation,
    pub distinguished: usize,
}

impl Default for Attachment {
    /// Higman's group with `d` distinguished.
    fn default() -> Self {
        Attachment {
            presentation: higman_j(),
            distinguished: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KillFqOutput {
    pub input: FinitePresentation,
    pub attachment: Attachment,
    /// Input generators, then one renamed copy of the attachment per input
    /// generator. Relators: input relators, the copies' relators, then
    /// `x_i^-1 y_i`.
    pub full: FinitePresentation,
    /// `copies[i][g]` is the index in `full` of generator `g` of copy `i`.
    pub copies: Vec<Vec<usize>>,
    /// The input generators eliminated: generators are the copies in order,
    /// relators are the input relators rewritten in the copies followed by
    /// the copies' relators.
    pub simplified: FinitePresentation,
}

impl KillFqOutput {
    /// Number of rewritten input relators at the front of `simplified`.
    pub fn rewritten_count(&self) -> usize {
        self.input.num_relators()
    }

    /// Generator `g` of copy `i` in the simplified alphabet.
    pub fn simplified_index(&self, copy: usize, g: usize) -> usize {
        copy * self.attachment.presentation.num_generators() + g
    }

    /// Image of input generator `i` in the simplified presentation.
    pub fn input_image(&self, i: usize) -> Word {
        Word::generator(self.simplified_index(i, self.attachment.distinguished))
    }
}

/// Attaches a copy of `attach` to every generator of `p` by identifying the
/// generator with the copy's distinguished element. Copy `i` (1-based) names
/// its generators `{name}_{i}`, with a further suffix on clashes.
pub fn kill_finite_quotients(
    p: &FinitePresentation,
    attach: &Attachment,
) -> Result<KillFqOutput, PresentationError> {
    let l = p.num_generators();
    if l == 0 {
        return Err(PresentationError::ImageCount {
            what: "generators to attach to",
            expected: 1,
            got: 0,
        });
    }
    let t = &attach.presentation;
    let mut alphabet = p.alphabet().clone();
    let mut copies = Vec::with_capacity(l);
    for i in 0..l {
        let idx = t
            .alphabet()
            .symbols()
            .iter()
            .map(|s| {
                let name = alphabet.fresh_name(&format!("{s}_{}", i + 1));
                alphabet.push(name)
            })
            .collect::<Result<Vec<_>, _>>()?;
        copies.push(idx);
    }
    let mut relators: Vec<Word> = p.relators().to_vec();
    for c in &copies {
        relators.extend(t.relators().iter().map(|r| r.relabel(|g| c[g])));
    }
    for (i, c) in copies.iter().enumerate() {
        relators.push(
            Word::generator(i)
                .inverse()
                .mul(&Word::generator(c[attach.distinguished])),
        );
    }
    let full = FinitePresentation::new(alphabet.clone(), relators)?;

    let simple_alphabet = Alphabet::new(alphabet.symbols()[l..].iter().cloned())?;
    let shift = |g: usize| g - l;
    let x_to_y: Vec<Word> = copies
        .iter()
        .map(|c| Word::generator(shift(c[attach.distinguished])))
        .collect();
    let mut simple_relators = p
        .relators()
        .iter()
        .map(|r| r.apply_map(&x_to_y))
        .collect::<Result<Vec<_>, _>>()?;
    for c in &copies {
        simple_relators.extend(t.relators().iter().map(|r| r.relabel(|g| shift(c[g]))));
    }
    let simplified = FinitePresentation::new(simple_alphabet, simple_relators)?;
    Ok(KillFqOutput {
        input: p.clone(),
        attachment: attach.clone(),
        full,
        copies,
        simplified,
    })
}

#[derive(Debug, Error)]
pub enum SuperPerfectError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("attached presentation is not perfect: H1 = {}", .0.group)]
    NotPerfect(Box<H1Report>),
    #[error(transparent)]
    Uce(#[from] UceError),
}

#[derive(Clone, Debug)]
pub struct SuperPerfectOutput {
    pub killed: KillFqOutput,
    pub uce: UcePresentation,
}

impl SuperPerfectOutput {
    pub fn presentation(&self) -> &FinitePresentation {
        &self.uce.result
    }

    /// Generators and relators of the extension, plus how many
    /// commutator relators were freely trivial.
    pub fn relator_count(&self) -> (usize, usize, usize) {
        let u = &self.uce;
        (
            u.result.num_generators(),
            u.result.num_relators(),
            u.dropped.len(),
        )
    }
}

/// Attaches copies of a group without finite quotients, then passes to the
/// universal central extension of the result.
pub fn super_perfectify(
    p: &FinitePresentation,
    attach: &Attachment,
    strategy: WitnessStrategy,
) -> Result<SuperPerfectOutput, SuperPerfectError> {
    let killed = kill_finite_quotients(p, attach)?;
    let report = h1(&killed.full);
    if !report.group.is_trivial() {
        return Err(SuperPerfectError::NotPerfect(Box::new(report)));
    }
    let uce = miller_uce(&killed.full, strategy)?;
    Ok(SuperPerfectOutput { killed, uce })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{parse_presentation, tietze_eliminate_generator};
    use crate::quotients::todd_coxeter;

    #[test]
    fn counts_for_four_generators() {
        let out = kill_finite_quotients(&higman_j(), &Attachment::default()).unwrap();
        assert_eq!(
            (out.full.num_generators(), out.full.num_relators()),
            (20, 24)
        );
        assert_eq!(
            (
                out.simplified.num_generators(),
                out.simplified.num_relators()
            ),
            (16, 20)
        );
        assert_eq!(out.full.alphabet().name(4), "a_1");
        assert_eq!(h1(&out.full).group, h1(&out.simplified).group);
    }

    #[test]
    fn simplified_matches_tietze_moves() {
        let p = parse_presentation("< x, y | x y x^-1 y^-2 >").unwrap();
        let out = kill_finite_quotients(&p, &Attachment::default()).unwrap();
        // x is removed with the second-to-last relator, then y with the last.
        let step = tietze_eliminate_generator(&out.full, 0, 9)
            .unwrap()
            .presentation;
        let cur = tietze_eliminate_generator(&step, 0, 9)
            .unwrap()
            .presentation;
        assert_eq!(cur, out.simplified);
    }

    #[test]
    fn trivial_input_collapses() {
        let p = parse_presentation("< x | x >").unwrap();
        let out = kill_finite_quotients(&p, &Attachment::default()).unwrap();
        assert_eq!(todd_coxeter(&out.full, &[], 10_000).index(), Some(1));
        let sp =
            super_perfectify(&p, &Attachment::default(), WitnessStrategy::Constructive).unwrap();
        assert!(h1(sp.presentation()).group.is_trivial());
        assert_eq!(
            todd_coxeter(sp.presentation(), &[], 100_000).index(),
            Some(1)
        );
    }
}
