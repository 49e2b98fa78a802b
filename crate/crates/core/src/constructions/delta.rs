use crate::freewords::{Alphabet, Word};
use crate::homology::AbelianGroupDescriptor;
use crate::presentations::{
    amalgamated_product, direct_product_presentation, higman_j, FinitePresentation,
    PresentationMorphism,
};
use crate::uce::UcePresentation;

use super::{
    attached_free_product, theta_generators, ConstructionError, GeneratingSet, GeneratorKind,
    KillFqOutput,
};

/// `F x F` amalgamated with `2l` copies of Higman's group, copy `i`
/// identifying its `d` with `(x_i, 1)` for `i <= l` and with `(1, x_{i-l})`
/// after that.
#[derive(Clone, Debug)]
pub struct DeltaOutput {
    pub delta: FinitePresentation,
    /// Indices in `delta` of `(x, 1)` and `(1, x)`.
    pub x_left: Vec<usize>,
    pub x_right: Vec<usize>,
    /// `copies[i][g]`: generator `g` of Higman copy `i` in `delta`.
    pub copies: Vec<Vec<usize>>,
    /// The first three generators of every copy.
    pub c_set: GeneratingSet,
}

const HIGMAN_D: usize = 3;

pub fn delta_amalgam(x: &Alphabet) -> Result<DeltaOutput, ConstructionError> {
    let l = x.len();
    if l == 0 {
        return Err(ConstructionError::Mismatch("empty alphabet".into()));
    }
    let f = FinitePresentation::free(x.clone());
    let ff = direct_product_presentation(&f, &f)?;
    let mut cur = ff
        .presentation
        .clone()
        .with_asphericity("direct product of two free groups: the product of two roses");
    let mut x_left = ff.left.clone();
    let mut x_right = ff.right.clone();
    let mut copies: Vec<Vec<usize>> = Vec::new();
    let j = higman_j();
    for i in 0..2 * l {
        let ji = j.renamed(|s| format!("{s}_{}", i + 1))?;
        let anchor = if i < l { x_left[i] } else { x_right[i - l] };
        let c = amalgamated_product(
            &cur,
            &ji,
            &[(Word::generator(anchor), Word::generator(HIGMAN_D))],
            true,
            Some("both identified cyclic subgroups are infinite"),
        )?;
        for v in x_left.iter_mut().chain(x_right.iter_mut()) {
            *v = c.left[*v];
        }
        for copy in copies.iter_mut() {
            for v in copy.iter_mut() {
                *v = c.left[*v];
            }
        }
        copies.push(c.right.clone());
        cur = c.presentation;
    }
    let elements: Vec<Word> = copies
        .iter()
        .flat_map(|c| c[..3].iter().map(|&g| Word::generator(g)))
        .collect();
    let c_set = GeneratingSet {
        kind: GeneratorKind::C,
        ambient: cur.clone(),
        elements,
        pairs: Vec::new(),
    };
    Ok(DeltaOutput {
        delta: cur,
        x_left,
        x_right,
        copies,
        c_set,
    })
}

impl DeltaOutput {
    /// `S+`: `(x, x)` as `(x, 1)(1, x)`, `(r, 1)` over the left letters,
    /// then the copies' first three generators. `p` must be over the
    /// alphabet the amalgam was built from.
    pub fn s_plus(&self, p: &FinitePresentation) -> Result<GeneratingSet, ConstructionError> {
        if p.num_generators() != self.x_left.len() {
            return Err(ConstructionError::Mismatch(format!(
                "presentation has {} generators, amalgam was built on {}",
                p.num_generators(),
                self.x_left.len()
            )));
        }
        let mut elements: Vec<Word> = (0..p.num_generators())
            .map(|i| Word::generator(self.x_left[i]).concat(&Word::generator(self.x_right[i])))
            .collect();
        elements.extend(p.relators().iter().map(|r| r.relabel(|g| self.x_left[g])));
        elements.extend(self.c_set.elements.iter().cloned());
        Ok(GeneratingSet {
            kind: GeneratorKind::SPlus,
            ambient: self.delta.clone(),
            elements,
            pairs: Vec::new(),
        })
    }

    /// `B`: every generator of the amalgam, read in the central extension,
    /// plus the central kernel generators.
    pub fn b_set(&self, uce: &UcePresentation) -> Result<GeneratingSet, ConstructionError> {
        if uce.base != self.delta {
            return Err(ConstructionError::Mismatch(
                "extension is not built on this amalgam".into(),
            ));
        }
        let mut gens: Vec<usize> = self.x_left.iter().chain(&self.x_right).copied().collect();
        gens.extend(self.copies.iter().flat_map(|c| c[..3].iter().copied()));
        let mut elements: Vec<Word> = gens.into_iter().map(Word::generator).collect();
        elements.extend(uce.kernel_generators.iter().cloned());
        Ok(GeneratingSet {
            kind: GeneratorKind::B,
            ambient: uce.result.clone(),
            elements,
            pairs: Vec::new(),
        })
    }
}

/// A generating set of the extension's base read in the extension (same
/// letters), together with the central kernel generators.
pub fn lift_to_extension(
    set: &GeneratingSet,
    uce: &UcePresentation,
) -> Result<GeneratingSet, ConstructionError> {
    if set.ambient.alphabet() != uce.base.alphabet() {
        return Err(ConstructionError::Mismatch(
            "generating set and extension use different alphabets".into(),
        ));
    }
    let mut elements = set.elements.clone();
    elements.extend(uce.kernel_generators.iter().cloned());
    Ok(GeneratingSet {
        kind: GeneratorKind::Lifted,
        ambient: uce.result.clone(),
        elements,
        pairs: Vec::new(),
    })
}

#[derive(Clone, Debug)]
pub struct AcyclicOutput {
    /// Free product of the attached copies.
    pub h: FinitePresentation,
    /// `H` onto the simplified presentation, generators to themselves.
    pub q: PresentationMorphism,
    pub theta: GeneratingSet,
    /// First homology of the fibre product of `q` when its target is
    /// nontrivial: free of rank relators minus generators of the attached
    /// presentation.
    pub predicted_h1: AbelianGroupDescriptor,
}

pub fn acyclic_subdirect(k: &KillFqOutput) -> Result<AcyclicOutput, ConstructionError> {
    let h = attached_free_product(k);
    let images = (0..h.num_generators()).map(Word::generator).collect();
    let q = PresentationMorphism::new(
        h.clone(),
        k.simplified.clone(),
        images,
        "labelling of generators",
    )?;
    let theta = theta_generators(k)?;
    let (m, n) = (k.full.num_relators(), k.full.num_generators());
    if m < n {
        return Err(ConstructionError::Mismatch(
            "attached presentation has fewer relators than generators".into(),
        ));
    }
    Ok(AcyclicOutput {
        h,
        q,
        theta,
        predicted_h1: AbelianGroupDescriptor::free(m - n),
    })
}
