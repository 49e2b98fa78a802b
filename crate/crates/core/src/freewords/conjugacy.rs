use thiserror::Error;

use super::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjugacyError {
    #[error("tuples have {left} and {right} components")]
    FactorMismatch { left: usize, right: usize },
}

/// Decides conjugacy in a free group. On success returns `g` with
/// `u = g v g^-1` in the free group.
///
/// Both words are cyclically reduced; they are conjugate iff the cores are
/// cyclic rotations of each other.
pub fn free_conjugator(u: &Word, v: &Word) -> Option<Word> {
    let (u_core, u_conj) = u.cyclically_reduce();
    let (v_core, v_conj) = v.cyclically_reduce();
    if u_core.len() != v_core.len() {
        return None;
    }
    let n = v_core.len();
    if n == 0 {
        return Some(Word::empty());
    }
    // v_core = s t and u_core = t s, so u_core = t v_core t^-1.
    let k = (0..n).find(|&k| {
        let (s, t) = v_core.letters().split_at(k);
        u_core.letters()[..t.len()] == *t && u_core.letters()[t.len()..] == *s
    })?;
    let t = v_core.subword(k, n);
    Some(Word::product([&u_conj, &t, &v_conj.inverse()]))
}

/// Componentwise conjugacy in a direct product of free groups. Each tuple
/// entry is a word over that factor's alphabet; a witness tuple `g` satisfies
/// `u[i] = g[i] v[i] g[i]^-1` for every `i`.
pub fn conjugacy_test(u: &[Word], v: &[Word]) -> Result<Option<Vec<Word>>, ConjugacyError> {
    if u.len() != v.len() {
        return Err(ConjugacyError::FactorMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.iter()
        .zip(v)
        .map(|(a, b)| free_conjugator(a, b))
        .collect())
}
