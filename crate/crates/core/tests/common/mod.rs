#![allow(dead_code)]

use std::path::PathBuf;

use presforge::freewords::{Alphabet, Letter, Word};
use presforge::homology::is_perfect;
use presforge::presentations::FinitePresentation;
use presforge::smallcancel::{metric_certificate, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform letters, not necessarily reduced.
pub fn random_word(rng: &mut ChaCha8Rng, gens: usize, len: usize) -> Word {
    Word::from_letters(
        (0..len)
            .map(|_| Letter::new(rng.gen_range(0..gens), rng.gen_bool(0.5)))
            .collect(),
    )
}

/// Freely and cyclically reduced word of exactly `len` letters.
pub fn random_cyclic_word(rng: &mut ChaCha8Rng, gens: usize, len: usize) -> Word {
    assert!(gens >= 2 || len <= 1);
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = Letter::new(rng.gen_range(0..gens), rng.gen_bool(0.5));
        if out.last() == Some(&l.inv()) {
            continue;
        }
        if out.len() + 1 == len && out.first() == Some(&l.inv()) {
            continue;
        }
        out.push(l);
    }
    Word::from_letters(out)
}

fn names(gens: usize) -> Alphabet {
    Alphabet::new((0..gens).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

/// First perfect C'(1/6) presentation with `gens` generators and as many
/// relators of length `len` drawn from the seeded stream. With two
/// generators `len` must be odd: even lengths force an even determinant.
pub fn perfect_small_cancellation(seed: u64, gens: usize, len: usize) -> FinitePresentation {
    let mut rng = rng(seed);
    loop {
        let rels = (0..gens)
            .map(|_| random_cyclic_word(&mut rng, gens, len))
            .collect();
        let p = FinitePresentation::new(names(gens), rels).unwrap();
        if is_perfect(&p) && metric_certificate(&p, Ratio::SIXTH).passed {
            return p;
        }
    }
}

/// The standing example: two generators, two relators of length 61.
pub fn standard_q() -> FinitePresentation {
    perfect_small_cancellation(2024, 2, 61)
}
