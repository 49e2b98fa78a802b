use serde::Serialize;

use crate::freewords::{Letter, Word};
use crate::presentations::{FinitePresentation, PresentationMorphism};
use crate::smallcancel::{metric_certificate, MetricCertificate, Ratio};

/// A presentation of a hyperbolic group mapping onto the input, with the
/// kernel generated by three extra letters.
#[derive(Clone, Debug)]
pub struct RipsOutput {
    pub gamma: FinitePresentation,
    /// `x -> x`, extra letters to the empty word.
    pub p: PresentationMorphism,
    /// Indices of the three kernel letters in `gamma`.
    pub kernel_generators: [usize; 3],
    pub certificate: MetricCertificate,
    /// Window length of the de Bruijn sequence the filler words come from.
    pub window: usize,
}

/// Linear de Bruijn sequence over `{0, 1, 2}` with window `k`: every word of
/// length `k` occurs exactly once as a factor. Length `3^k + k - 1`.
pub fn de_bruijn_ternary(k: usize) -> Vec<u8> {
    assert!(k >= 1);
    // Concatenation of Lyndon words of length dividing k, in lex order.
    let mut out = Vec::with_capacity(3usize.pow(k as u32) + k);
    let mut a = vec![0u8; k + 1];
    fn gen(t: usize, p: usize, k: usize, a: &mut Vec<u8>, out: &mut Vec<u8>) {
        if t > k {
            if k.is_multiple_of(p) {
                out.extend_from_slice(&a[1..=p]);
            }
        } else {
            a[t] = a[t - p];
            gen(t + 1, p, k, a, out);
            for j in (a[t - p] + 1)..3 {
                a[t] = j;
                gen(t + 1, t, k, a, out);
            }
        }
    }
    gen(1, 1, k, &mut a, &mut out);
    let wrap: Vec<u8> = out[..k - 1].to_vec();
    out.extend(wrap);
    out
}

/// Filler length for a conjugation relator, enough that pieces (at most
/// two partial fillers plus two letters, each partial shorter than `k`) stay
/// under a sixth.
fn conj_filler(k: usize) -> usize {
    12 * k + 4
}

/// Filler length for a relator `r`: pieces can also contain all of `r`.
fn rel_filler(k: usize, r: usize) -> usize {
    5 * r + 12 * k - 11
}

fn total_filler(p: &FinitePresentation, k: usize) -> usize {
    6 * p.num_generators() * conj_filler(k)
        + p.relators()
            .iter()
            .map(|r| rel_filler(k, r.len()))
            .sum::<usize>()
}

fn build(p: &FinitePresentation, k: usize) -> RipsOutput {
    let n = p.num_generators();
    let mut alphabet = p.alphabet().clone();
    let a: [usize; 3] = std::array::from_fn(|i| {
        let name = alphabet.fresh_name(&format!("a{}", i + 1));
        alphabet.push(name).expect("fresh name")
    });
    let seq = de_bruijn_ternary(k);
    let mut cursor = 0;
    let mut take = |len: usize| -> Word {
        let w = Word::from_letters(
            seq[cursor..cursor + len]
                .iter()
                .map(|&s| Letter::pos(a[s as usize]))
                .collect(),
        );
        cursor += len;
        w
    };
    let mut relators = Vec::with_capacity(p.num_relators() + 6 * n);
    for r in p.relators() {
        let w = take(rel_filler(k, r.len()));
        relators.push(r.concat(&w.inverse()));
    }
    for x in 0..n {
        for &ai in &a {
            for inverse in [false, true] {
                let xe = Word::from_letters(vec![Letter::new(x, inverse)]);
                let w = take(conj_filler(k));
                let lhs = Word::product([&xe, &Word::generator(ai), &xe.inverse()]);
                relators.push(lhs.concat(&w.inverse()));
            }
        }
    }
    let certificate_input =
        FinitePresentation::new(alphabet, relators).expect("relators are nonempty");
    let certificate = metric_certificate(&certificate_input, Ratio::SIXTH);
    let gamma = if certificate.passed {
        certificate_input.with_asphericity(
            "metric C'(1/6) presentation without proper powers (certificate attached)",
        )
    } else {
        certificate_input
    };
    let images: Vec<Word> = (0..n)
        .map(Word::generator)
        .chain(std::iter::repeat_n(Word::empty(), 3))
        .collect();
    let p = PresentationMorphism::new(gamma.clone(), p.clone(), images, "kills the extra letters")
        .expect("images over the input alphabet");
    RipsOutput {
        gamma,
        p,
        kernel_generators: a,
        certificate,
        window: k,
    }
}

/// Rips-Wise transform. Each relator `r` becomes `r W_r^-1` and every
/// generator `x`, extra letter `a_i` and sign `e` contribute
/// `x^e a_i x^-e W^-1`, where the `W` are disjoint segments of a ternary de
/// Bruijn sequence on the extra letters. The window grows until the whole
/// filler fits and the result passes the C'(1/6) certificate.
pub fn rips_wise(p: &FinitePresentation) -> RipsOutput {
    let mut k = 3;
    loop {
        let room = 3usize.pow(k as u32) + k - 1;
        if total_filler(p, k) <= room {
            let out = build(p, k);
            if out.certificate.passed {
                return out;
            }
        }
        k += 1;
    }
}

/// Size summary of a Rips output.
#[derive(Clone, Debug, Serialize)]
pub struct RipsCounts {
    pub generators: usize,
    pub relators: usize,
    pub window: usize,
    pub max_piece: usize,
    pub min_relator_length: usize,
}

impl RipsOutput {
    pub fn counts(&self) -> RipsCounts {
        RipsCounts {
            generators: self.gamma.num_generators(),
            relators: self.gamma.num_relators(),
            window: self.window,
            max_piece: self.certificate.max_piece,
            min_relator_length: self.certificate.min_relator_length,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::h1;
    use crate::presentations::{higman_j, kill_generators, parse_presentation, Justification};
    use std::collections::HashSet;

    #[test]
    fn de_bruijn_windows_unique() {
        for k in 1..6 {
            let s = de_bruijn_ternary(k);
            assert_eq!(s.len(), 3usize.pow(k as u32) + k - 1);
            let windows: HashSet<&[u8]> = s.windows(k).collect();
            assert_eq!(windows.len(), 3usize.pow(k as u32));
        }
    }

    #[test]
    fn free_cyclic_input() {
        let out = rips_wise(&parse_presentation("< x | >").unwrap());
        assert_eq!(out.gamma.num_generators(), 4);
        assert_eq!(out.gamma.num_relators(), 6);
        assert!(out.certificate.passed);
        assert_eq!(out.p.justification, Justification::Verified);
    }

    #[test]
    fn higman_counts_and_kernel() {
        let j = higman_j();
        let out = rips_wise(&j);
        assert_eq!(
            (out.gamma.num_generators(), out.gamma.num_relators()),
            (7, 28)
        );
        assert!(out.certificate.passed);
        for (i, r) in out.gamma.relators().iter().enumerate() {
            let img = out.p.apply(r).unwrap();
            if i < 4 {
                assert_eq!(img, j.relators()[i]);
            } else {
                assert!(img.is_empty());
            }
        }
        let (killed, dropped) = kill_generators(&out.gamma, &out.kernel_generators).unwrap();
        assert_eq!(dropped.len(), 24);
        assert_eq!(h1(&killed), h1(&j));
    }
}
