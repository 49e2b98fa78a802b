use std::collections::HashSet;

use super::{FinitePresentation, PresentationError};
use crate::freewords::{Alphabet, Word};

/// A presentation built from two inputs, with the index of every input
/// generator in the combined alphabet.
#[derive(Clone, Debug)]
pub struct Combined {
    pub presentation: FinitePresentation,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Combined {
    pub fn left_word(&self, w: &Word) -> Word {
        w.relabel(|i| self.left[i])
    }

    pub fn right_word(&self, w: &Word) -> Word {
        w.relabel(|i| self.right[i])
    }
}

/// Disjoint union of alphabets. Clashing names get `_1` / `_2` appended when
/// `auto_suffix` is set (repeatedly, until unique).
fn union_alphabets(
    a: &Alphabet,
    b: &Alphabet,
    auto_suffix: bool,
) -> Result<(Alphabet, Vec<usize>, Vec<usize>), PresentationError> {
    let clash: HashSet<&str> = a
        .symbols()
        .iter()
        .filter(|s| b.contains(s))
        .map(String::as_str)
        .collect();
    if !auto_suffix {
        if let Some(name) = a.symbols().iter().find(|s| clash.contains(s.as_str())) {
            return Err(PresentationError::NameClash(name.clone()));
        }
    }
    let mut out = Alphabet::empty();
    let mut taken: HashSet<String> = a.symbols().iter().chain(b.symbols()).cloned().collect();
    let mut place =
        |name: &str, suffix: &str, out: &mut Alphabet| -> Result<usize, PresentationError> {
            if !clash.contains(name) {
                return Ok(out.push(name.to_string())?);
            }
            let mut candidate = format!("{name}{suffix}");
            while taken.contains(&candidate) {
                candidate.push_str(suffix);
            }
            taken.insert(candidate.clone());
            Ok(out.push(candidate)?)
        };
    let left = a
        .symbols()
        .iter()
        .map(|s| place(s, "_1", &mut out))
        .collect::<Result<Vec<_>, _>>()?;
    let right = b
        .symbols()
        .iter()
        .map(|s| place(s, "_2", &mut out))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((out, left, right))
}

/// Joint alphabet, positions of each factor's generators, joint relators.
type Combination = (Alphabet, Vec<usize>, Vec<usize>, Vec<Word>);

fn combine(
    p1: &FinitePresentation,
    p2: &FinitePresentation,
    auto_suffix: bool,
) -> Result<Combination, PresentationError> {
    let (alphabet, left, right) = union_alphabets(p1.alphabet(), p2.alphabet(), auto_suffix)?;
    let relators = p1
        .relators()
        .iter()
        .map(|r| r.relabel(|i| left[i]))
        .chain(p2.relators().iter().map(|r| r.relabel(|i| right[i])))
        .collect();
    Ok((alphabet, left, right, relators))
}

/// `P1 * P2`: union of generators and relators. The asphericity note is kept
/// when both inputs carry one, since a wedge of aspherical complexes is
/// aspherical.
pub fn free_product(
    p1: &FinitePresentation,
    p2: &FinitePresentation,
    auto_suffix: bool,
) -> Result<Combined, PresentationError> {
    let (alphabet, left, right, relators) = combine(p1, p2, auto_suffix)?;
    let aspherical = match (p1.asphericity(), p2.asphericity()) {
        (Some(a), Some(b)) => Some(format!(
            "free product of aspherical presentations ({a}; {b})"
        )),
        _ => None,
    };
    let presentation = FinitePresentation::from_parts_unchecked(alphabet, relators, aspherical);
    Ok(Combined {
        presentation,
        left,
        right,
    })
}

/// `P1 *_{u_i = v_i} P2`: relators of both inputs then `u_i v_i^-1` for each pair.
///
/// `free_assertion` is the caller's claim that the identified subgroups are
/// free on the listed words; together with asphericity of both inputs it
/// justifies flagging the output aspherical. Nothing is checked.
pub fn amalgamated_product(
    p1: &FinitePresentation,
    p2: &FinitePresentation,
    pairs: &[(Word, Word)],
    auto_suffix: bool,
    free_assertion: Option<&str>,
) -> Result<Combined, PresentationError> {
    if pairs.is_empty() {
        return Err(PresentationError::NoPairs);
    }
    let (alphabet, left, right, mut relators) = combine(p1, p2, auto_suffix)?;
    for (u, v) in pairs {
        p1.alphabet().check(u)?;
        p2.alphabet().check(v)?;
        relators.push(
            u.relabel(|i| left[i])
                .mul(&v.relabel(|i| right[i]).inverse()),
        );
    }
    let aspherical = match (p1.asphericity(), p2.asphericity(), free_assertion) {
        (Some(a), Some(b), Some(f)) => Some(format!(
            "amalgam of aspherical presentations along free subgroups ({a}; {b}; asserted: {f})"
        )),
        _ => None,
    };
    let presentation = FinitePresentation::new(alphabet, relators)?;
    let presentation = match aspherical {
        Some(note) => presentation.with_asphericity(note),
        None => presentation,
    };
    Ok(Combined {
        presentation,
        left,
        right,
    })
}

/// Adds a stable letter `t` and relators `t u_i t^-1 v_i^-1`. The new
/// generator is last in the alphabet.
pub fn hnn_extension(
    p: &FinitePresentation,
    t: &str,
    pairs: &[(Word, Word)],
    free_assertion: Option<&str>,
) -> Result<FinitePresentation, PresentationError> {
    if pairs.is_empty() {
        return Err(PresentationError::NoPairs);
    }
    let mut alphabet = p.alphabet().clone();
    let ti = alphabet.push(t.to_string())?;
    let tw = Word::generator(ti);
    let mut relators = p.relators().to_vec();
    for (u, v) in pairs {
        p.alphabet().check(u)?;
        p.alphabet().check(v)?;
        relators.push(Word::product([&tw, u, &tw.inverse(), &v.inverse()]));
    }
    let presentation = FinitePresentation::new(alphabet, relators)?;
    Ok(match (p.asphericity(), free_assertion) {
        (Some(a), Some(f)) => presentation.with_asphericity(format!(
            "HNN extension of an aspherical presentation along free subgroups ({a}; asserted: {f})"
        )),
        _ => presentation,
    })
}

/// `P1 x P2` with generators tagged `_L` and `_R`: relators of each factor
/// followed by `[x_L, z_R]` for every pair, `x` major.
pub fn direct_product_presentation(
    p1: &FinitePresentation,
    p2: &FinitePresentation,
) -> Result<Combined, PresentationError> {
    let mut alphabet = Alphabet::empty();
    let left = p1
        .alphabet()
        .symbols()
        .iter()
        .map(|s| alphabet.push(format!("{s}_L")))
        .collect::<Result<Vec<_>, _>>()?;
    let right = p2
        .alphabet()
        .symbols()
        .iter()
        .map(|s| alphabet.push(format!("{s}_R")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut relators: Vec<Word> = p1
        .relators()
        .iter()
        .map(|r| r.relabel(|i| left[i]))
        .collect();
    relators.extend(p2.relators().iter().map(|r| r.relabel(|i| right[i])));
    for &x in &left {
        for &z in &right {
            relators.push(Word::commutator(&Word::generator(x), &Word::generator(z)));
        }
    }
    Ok(Combined {
        presentation: FinitePresentation::from_parts_unchecked(alphabet, relators, None),
        left,
        right,
    })
}

/// `x y x^-1 y^-2` over generator indices.
fn doubling(x: usize, y: usize) -> Word {
    Word::from_signed(&[
        x as i32 + 1,
        y as i32 + 1,
        -(x as i32 + 1),
        -(y as i32 + 1),
        -(y as i32 + 1),
    ])
}

/// Higman's four-generator group: each generator conjugates its successor
/// (cyclically) to that successor's square.
pub fn higman_j() -> FinitePresentation {
    let alphabet = Alphabet::new(["a", "b", "c", "d"]).expect("static names");
    let relators = (0..4).map(|i| doubling(i, (i + 1) % 4)).collect();
    FinitePresentation::from_parts_unchecked(alphabet, relators, None)
        .with_asphericity("Higman presentation: collapses from the aspherical amalgam of two copies of D along a free subgroup")
}

/// The three-generator half of Higman's group, an iterated HNN extension of
/// the infinite cyclic group along cyclic subgroups.
pub fn higman_d() -> FinitePresentation {
    let alphabet = Alphabet::new(["alpha", "beta", "gamma"]).expect("static names");
    FinitePresentation::from_parts_unchecked(alphabet, vec![doubling(0, 1), doubling(1, 2)], None)
        .with_asphericity("two HNN extensions of Z along cyclic subgroups")
}

pub fn higman_presentations() -> (FinitePresentation, FinitePresentation) {
    (higman_j(), higman_d())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{parse_presentation, tietze_eliminate_generator};

    fn pres(s: &str) -> FinitePresentation {
        parse_presentation(s).unwrap()
    }

    #[test]
    fn free_product_basic() {
        let c = free_product(&pres("<a|>"), &pres("<b|>"), false).unwrap();
        assert_eq!(c.presentation, pres("<a,b|>"));
        let j = higman_j();
        let jj = free_product(&j, &j, true).unwrap();
        assert_eq!(
            (
                jj.presentation.num_generators(),
                jj.presentation.num_relators()
            ),
            (8, 8)
        );
        assert_eq!(jj.presentation.alphabet().name(0), "a_1");
        assert_eq!(jj.presentation.alphabet().name(4), "a_2");
        assert!(matches!(
            free_product(&j, &j, false),
            Err(PresentationError::NameClash(_))
        ));
    }

    #[test]
    fn suffix_avoids_existing_names() {
        let c = free_product(&pres("<a, a_1|>"), &pres("<a|>"), true).unwrap();
        assert_eq!(c.presentation.alphabet().symbols(), ["a_1_1", "a_1", "a_2"]);
    }

    #[test]
    fn amalgam_single_pair() {
        let c = amalgamated_product(
            &pres("<a|>"),
            &pres("<b|>"),
            &[(Word::generator(0), Word::generator(0))],
            false,
            None,
        )
        .unwrap();
        assert_eq!(c.presentation, pres("<a,b| a b^-1>"));
        assert!(amalgamated_product(&pres("<a|>"), &pres("<b|>"), &[], false, None).is_err());
    }

    #[test]
    fn hnn_shapes() {
        let p = hnn_extension(
            &pres("<a|>"),
            "t",
            &[(Word::generator(0), Word::generator(0))],
            None,
        )
        .unwrap();
        assert_eq!(p, pres("<a,t | t a t^-1 a^-1>"));
        assert!(hnn_extension(
            &pres("<a|>"),
            "a",
            &[(Word::generator(0), Word::generator(0))],
            None
        )
        .is_err());
    }

    #[test]
    fn d_from_two_hnn_extensions() {
        let g = pres("<gamma|>");
        let step1 = hnn_extension(
            &g,
            "beta",
            &[(Word::generator(0), Word::generator(0).pow(2))],
            Some("cyclic"),
        )
        .unwrap();
        let b = step1.generator("beta").unwrap();
        let step2 = hnn_extension(
            &step1,
            "alpha",
            &[(Word::generator(b), Word::generator(b).pow(2))],
            Some("cyclic"),
        )
        .unwrap();
        let order = ["alpha", "beta", "gamma"];
        let perm: Vec<usize> = (0..3)
            .map(|i| {
                order
                    .iter()
                    .position(|&n| n == step2.alphabet().name(i))
                    .unwrap()
            })
            .collect();
        let rels: Vec<Word> = step2
            .relators()
            .iter()
            .rev()
            .map(|r| r.relabel(|i| perm[i]))
            .collect();
        assert_eq!(
            FinitePresentation::new(Alphabet::new(order).unwrap(), rels).unwrap(),
            higman_d()
        );
    }

    #[test]
    fn direct_product_counts() {
        let c = direct_product_presentation(&pres("<a|>"), &pres("<b|>")).unwrap();
        assert_eq!(c.presentation, pres("<a_L, b_R | [a_L, b_R]>"));
        let j = higman_j();
        let c = direct_product_presentation(&j, &j).unwrap();
        assert_eq!(c.presentation.num_relators(), 4 + 4 + 16);
    }

    #[test]
    fn j_from_amalgam_of_d() {
        let d = higman_d();
        let amalgam = amalgamated_product(
            &d,
            &d,
            &[
                (Word::generator(0), Word::generator(2)),
                (Word::generator(2), Word::generator(0)),
            ],
            true,
            Some("alpha and gamma generate a free subgroup of D"),
        )
        .unwrap()
        .presentation;
        assert_eq!((amalgam.num_generators(), amalgam.num_relators()), (6, 6));
        assert!(amalgam.asphericity().is_some());
        let gamma2 = amalgam.generator("gamma_2").unwrap();
        let step = tietze_eliminate_generator(&amalgam, gamma2, 4)
            .unwrap()
            .presentation;
        let alpha2 = step.generator("alpha_2").unwrap();
        let step = tietze_eliminate_generator(&step, alpha2, 4)
            .unwrap()
            .presentation;
        assert!(step.asphericity().is_some());
        let names = ["a", "b", "c", "d"];
        let j = step.renamed({
            let mut it = names.iter();
            move |_| it.next().unwrap().to_string()
        });
        assert_eq!(j.unwrap(), higman_j());
    }
}
