//! Integer homology of presentations: the relation matrix, its Smith normal
//! form, H1 with generator images, and H2 for aspherical presentations.

mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use snf::{smith_normal_form, IntegerMatrix, SmithForm};

use crate::presentations::FinitePresentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("H2 needs an aspherical presentation; none was asserted")]
    NotAspherical,
}

/// `Z^rank + Z/t_1 + ... + Z/t_k` with each `t_i > 1` dividing `t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroupDescriptor {
    pub rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl AbelianGroupDescriptor {
    pub fn trivial() -> Self {
        AbelianGroupDescriptor {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupDescriptor {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Invariant factors of a direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Vec::new();
        for t in self.torsion.iter().chain(&other.torsion) {
            m.push(t.clone());
        }
        // diag(t_1..t_k) has the direct sum's torsion as its Smith form.
        let k = m.len();
        let mut mat = IntegerMatrix::zeros(k, k);
        for (i, t) in m.into_iter().enumerate() {
            mat.set(i, i, t);
        }
        let torsion = smith_normal_form(&mat)
            .diagonal
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroupDescriptor {
            rank: self.rank + other.rank,
            torsion,
        }
    }
}

impl fmt::Display for AbelianGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Exponent-sum matrix: row `i` is relator `i`, column `j` generator `j`.
pub fn relation_matrix(p: &FinitePresentation) -> IntegerMatrix {
    IntegerMatrix::from_rows(p.num_generators(), &p.exponent_rows())
}

/// H1 together with the image of each generator. Image coordinates follow
/// the descriptor: one entry per torsion factor (reduced mod that factor),
/// then one per free summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub group: AbelianGroupDescriptor,
    pub generator_images: Vec<Vec<BigInt>>,
}

pub fn h1(p: &FinitePresentation) -> H1Report {
    let m = relation_matrix(p);
    let s = smith_normal_form(&m);
    let n = p.num_generators();
    let r = s.rank();
    // Coordinates k with d_k = 1 are killed; d_k > 1 give torsion; k >= r are free.
    let torsion_idx: Vec<usize> = (0..r).filter(|&k| !s.diagonal[k].is_one()).collect();
    let group = AbelianGroupDescriptor {
        rank: n - r,
        torsion: torsion_idx.iter().map(|&k| s.diagonal[k].clone()).collect(),
    };
    let generator_images = (0..n)
        .map(|j| {
            let row = s.right.row(j);
            torsion_idx
                .iter()
                .map(|&k| row[k].mod_floor(&s.diagonal[k]))
                .chain((r..n).map(|k| row[k].clone()))
                .collect()
        })
        .collect();
    H1Report {
        group,
        generator_images,
    }
}

pub fn is_perfect(p: &FinitePresentation) -> bool {
    h1(p).group.is_trivial()
}

/// H2 of an aspherical presentation, with the provenance of the asphericity claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Report {
    pub group: AbelianGroupDescriptor,
    pub provenance: String,
}

/// For an aspherical presentation H2 is the kernel of the relation matrix
/// acting on relator chains, free of rank `#relators - rank`.
pub fn h2_aspherical(p: &FinitePresentation) -> Result<H2Report, HomologyError> {
    let note = p.asphericity().ok_or(HomologyError::NotAspherical)?;
    let rank = smith_normal_form(&relation_matrix(p)).rank();
    Ok(H2Report {
        group: AbelianGroupDescriptor::free(p.num_relators() - rank),
        provenance: note.to_string(),
    })
}

/// Solves `y * M = e` over the integers, if possible, returning `y` and a
/// basis of the left kernel `{y : y M = 0}`.
pub fn solve_row_combination(
    m: &IntegerMatrix,
    e: &[BigInt],
) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let s = smith_normal_form(m);
    solve_with(&s, m.rows(), e)
}

/// Same as [`solve_row_combination`] with a precomputed Smith form.
pub fn solve_with(
    s: &SmithForm,
    rows: usize,
    e: &[BigInt],
) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    // y M = e  with  y = z L  becomes  z D = e R.
    let f = s.right.left_apply(e);
    let r = s.rank();
    if f[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut z = vec![BigInt::zero(); rows];
    for k in 0..r {
        let (q, rem) = f[k].div_rem(&s.diagonal[k]);
        if !rem.is_zero() {
            return None;
        }
        z[k] = q;
    }
    let y = s.left.left_apply(&z);
    let kernel = (r..rows).map(|i| s.left.row(i).to_vec()).collect();
    Some((y, kernel))
}
