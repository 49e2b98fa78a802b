use std::thread;

use serde::Serialize;

use super::{Perm, PermAssignment};
use crate::freewords::Word;
use crate::presentations::FinitePresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    All,
    FirstNontrivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Relator checks at intermediate depths and restriction of the first
    /// generator to conjugacy class representatives. With `false` every
    /// assignment is enumerated and checked at the leaves.
    pub prune: bool,
    /// `(index, count)`: only first-generator candidates whose position is
    /// congruent to `index` mod `count`.
    pub shard: Option<(usize, usize)>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            shard: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSearchResult {
    pub degree: usize,
    /// Homomorphisms found, in search order. Under pruning the first
    /// searched generator is restricted to class representatives.
    pub homs: Vec<PermAssignment>,
    /// Number of homomorphisms these stand for: each found with the first
    /// generator on a class representative counts the size of that class.
    /// Equals `homs.len()` without pruning.
    pub total: u128,
    pub nodes: u64,
    /// False when the search stopped early in first-nontrivial mode.
    pub exhaustive: bool,
}

impl HomSearchResult {
    pub fn nontrivial(&self) -> impl Iterator<Item = &PermAssignment> {
        self.homs.iter().filter(|h| !h.is_trivial())
    }

    pub fn only_trivial(&self) -> bool {
        self.nontrivial().next().is_none()
    }
}

/// All permutations of `0..k` in lexicographic order.
fn all_perms(k: usize) -> Vec<Perm> {
    let mut cur: Vec<u32> = (0..k as u32).collect();
    let mut out = vec![Perm { img: cur.clone() }];
    while let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..k)
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm { img: cur.clone() });
    }
    out
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

fn partitions(k: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in 1..=max.min(k) {
        prefix.push(part);
        partitions(k - part, part, prefix, out);
        prefix.pop();
    }
}

/// One permutation per conjugacy class of `S_k` with the class size, the
/// identity first. Representatives use consecutive points for each cycle.
pub fn conjugacy_class_representatives(k: usize) -> Vec<(Perm, u128)> {
    let mut parts = Vec::new();
    partitions(k, k, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|lambda| {
            let mut img: Vec<u32> = (0..k as u32).collect();
            let mut start = 0;
            let mut denom: u128 = 1;
            for &len in &lambda {
                for i in 0..len {
                    img[start + i] = (start + (i + 1) % len) as u32;
                }
                start += len;
                denom *= len as u128;
            }
            let mut i = 0;
            while i < lambda.len() {
                let run = lambda[i..].iter().take_while(|&&x| x == lambda[i]).count();
                denom *= factorial(run);
                i += run;
            }
            (Perm { img }, factorial(k) / denom)
        })
        .collect()
}

/// Search order: generator 0 first, then repeatedly the generator closing
/// the most relators, then touching the most, lowest index on ties.
fn search_order(p: &FinitePresentation) -> Vec<usize> {
    let n = p.num_generators();
    let gens: Vec<Vec<bool>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut g = vec![false; n];
            for l in r.letters() {
                g[l.gen()] = true;
            }
            g
        })
        .collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let pick = if step == 0 {
            0
        } else {
            (0..n)
                .filter(|&g| !placed[g])
                .max_by_key(|&g| {
                    let closes = gens
                        .iter()
                        .filter(|rg| rg[g] && (0..n).all(|h| !rg[h] || h == g || placed[h]))
                        .count();
                    let touches = gens.iter().filter(|rg| rg[g]).count();
                    (closes, touches, std::cmp::Reverse(g))
                })
                .expect("unplaced generator remains")
        };
        placed[pick] = true;
        order.push(pick);
    }
    order
}

struct Searcher<'a> {
    k: usize,
    perms: &'a [Perm],
    inverses: &'a [Perm],
    order: Vec<usize>,
    /// Relators to check once depth `d` of the order is assigned.
    checks: Vec<Vec<&'a Word>>,
    assigned: Vec<usize>,
    mode: SearchMode,
    homs: Vec<PermAssignment>,
    nodes: u64,
    stop: bool,
}

impl Searcher<'_> {
    fn relator_holds(&self, r: &Word) -> bool {
        (0..self.k).all(|start| {
            let mut pt = start;
            for l in r.letters() {
                let idx = self.assigned[l.gen()];
                let p = if l.is_inverse() {
                    &self.inverses[idx]
                } else {
                    &self.perms[idx]
                };
                pt = p.img[pt] as usize;
            }
            pt == start
        })
    }

    fn descend(&mut self, depth: usize) {
        if self.stop {
            return;
        }
        if depth == self.order.len() {
            let a = PermAssignment {
                degree: self.k,
                images: self
                    .assigned
                    .iter()
                    .map(|&i| self.perms[i].clone())
                    .collect(),
            };
            let nontrivial = !a.is_trivial();
            self.homs.push(a);
            if nontrivial && self.mode == SearchMode::FirstNontrivial {
                self.stop = true;
            }
            return;
        }
        let g = self.order[depth];
        for idx in 0..self.perms.len() {
            self.assigned[g] = idx;
            self.nodes += 1;
            if self.checks[depth].iter().all(|r| self.relator_holds(r)) {
                self.descend(depth + 1);
                if self.stop {
                    return;
                }
            }
        }
    }
}

struct Plan<'a> {
    perms: Vec<Perm>,
    inverses: Vec<Perm>,
    order: Vec<usize>,
    checks: Vec<Vec<&'a Word>>,
    /// First-generator candidates as (index into `perms`, weight).
    first: Vec<(usize, u128)>,
}

fn plan(p: &FinitePresentation, k: usize, prune: bool) -> Plan<'_> {
    let perms = all_perms(k);
    let inverses: Vec<Perm> = perms.iter().map(Perm::inverse).collect();
    let n = p.num_generators();
    let order = search_order(p);
    let mut pos = vec![0; n];
    for (d, &g) in order.iter().enumerate() {
        pos[g] = d;
    }
    let mut checks: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in p.relators() {
        let depth = if prune {
            r.letters().iter().map(|l| pos[l.gen()]).max().unwrap_or(0)
        } else {
            n.saturating_sub(1)
        };
        checks[depth].push(r);
    }
    let first = if prune {
        conjugacy_class_representatives(k)
            .into_iter()
            .map(|(rep, size)| {
                (
                    perms
                        .binary_search(&rep)
                        .expect("representative is a permutation"),
                    size,
                )
            })
            .collect()
    } else {
        (0..perms.len()).map(|i| (i, 1)).collect()
    };
    Plan {
        perms,
        inverses,
        order,
        checks,
        first,
    }
}

/// Exhaustive backtracking search for homomorphisms `P -> S_k`.
pub fn hom_search(
    p: &FinitePresentation,
    k: usize,
    mode: SearchMode,
    opts: SearchOptions,
) -> HomSearchResult {
    assert!(k >= 1, "degree must be positive");
    if p.num_generators() == 0 {
        return HomSearchResult {
            degree: k,
            homs: vec![PermAssignment {
                degree: k,
                images: Vec::new(),
            }],
            total: 1,
            nodes: 0,
            exhaustive: true,
        };
    }
    let plan = plan(p, k, opts.prune);
    let mut s = Searcher {
        k,
        perms: &plan.perms,
        inverses: &plan.inverses,
        order: plan.order.clone(),
        checks: plan.checks.clone(),
        assigned: vec![0; p.num_generators()],
        mode,
        homs: Vec::new(),
        nodes: 0,
        stop: false,
    };
    let g0 = plan.order[0];
    let mut total = 0u128;
    for (pos, &(idx, weight)) in plan.first.iter().enumerate() {
        if let Some((i, m)) = opts.shard {
            if pos % m != i {
                continue;
            }
        }
        s.assigned[g0] = idx;
        s.nodes += 1;
        if !s.checks[0].iter().all(|r| s.relator_holds(r)) {
            continue;
        }
        let before = s.homs.len();
        s.descend(1);
        total += weight * (s.homs.len() - before) as u128;
        if s.stop {
            break;
        }
    }
    HomSearchResult {
        degree: k,
        total,
        nodes: s.nodes,
        exhaustive: !s.stop,
        homs: s.homs,
    }
}

/// Runs `shards` interleaved shards on separate threads and merges them in
/// first-candidate order, which reproduces the single-threaded result.
pub fn hom_search_sharded(
    p: &FinitePresentation,
    k: usize,
    mode: SearchMode,
    prune: bool,
    shards: usize,
) -> HomSearchResult {
    let shards = shards.max(1);
    if shards == 1 {
        return hom_search(p, k, mode, SearchOptions { prune, shard: None });
    }
    let parts: Vec<HomSearchResult> = thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|i| {
                scope.spawn(move || {
                    hom_search(
                        p,
                        k,
                        mode,
                        SearchOptions {
                            prune,
                            shard: Some((i, shards)),
                        },
                    )
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search shard panicked"))
            .collect()
    });
    merge_shards(p, k, mode, prune, parts)
}

fn merge_shards(
    p: &FinitePresentation,
    k: usize,
    mode: SearchMode,
    prune: bool,
    parts: Vec<HomSearchResult>,
) -> HomSearchResult {
    let g0 = search_order(p)[0];
    let first: Vec<Perm> = if prune {
        conjugacy_class_representatives(k)
            .into_iter()
            .map(|(r, _)| r)
            .collect()
    } else {
        all_perms(k)
    };
    let weight = |img: &Perm| -> u128 {
        if prune {
            conjugacy_class_representatives(k)
                .into_iter()
                .find(|(r, _)| r == img)
                .map_or(1, |(_, w)| w)
        } else {
            1
        }
    };
    // Group each shard's homs by their first-candidate position.
    let mut buckets: Vec<Vec<PermAssignment>> = vec![Vec::new(); first.len()];
    let nodes = parts.iter().map(|r| r.nodes).sum();
    for part in parts {
        for h in part.homs {
            let pos = first
                .iter()
                .position(|f| *f == h.images[g0])
                .expect("first image is a candidate");
            buckets[pos].push(h);
        }
    }
    let mut homs = Vec::new();
    let mut stopped = false;
    for b in buckets {
        for h in b {
            let nontrivial = !h.is_trivial();
            homs.push(h);
            if nontrivial && mode == SearchMode::FirstNontrivial {
                stopped = true;
                break;
            }
        }
        if stopped {
            break;
        }
    }
    let total = homs.iter().map(|h| weight(&h.images[g0])).sum();
    HomSearchResult {
        degree: k,
        homs,
        total,
        nodes,
        exhaustive: !stopped,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CertificateOutcome {
    /// No nontrivial homomorphism to `S_k` for any `k <= max_degree`. A
    /// bounded statement, not a proof about all finite quotients.
    Certified { max_degree: usize },
    Counterexample {
        degree: usize,
        assignment: PermAssignment,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteQuotientReport {
    pub outcome: CertificateOutcome,
    /// Search nodes visited per degree, from 2 upward.
    pub nodes: Vec<(usize, u64)>,
}

impl FiniteQuotientReport {
    pub fn is_certified(&self) -> bool {
        matches!(self.outcome, CertificateOutcome::Certified { .. })
    }
}

/// Sweeps `k = 2..=max_degree` looking for a nontrivial map to `S_k`.
pub fn finite_quotient_certificate(
    p: &FinitePresentation,
    max_degree: usize,
    prune: bool,
    shards: usize,
) -> FiniteQuotientReport {
    assert!(max_degree >= 2, "certificate needs max degree at least 2");
    let mut nodes = Vec::new();
    for k in 2..=max_degree {
        let r = hom_search_sharded(p, k, SearchMode::FirstNontrivial, prune, shards);
        nodes.push((k, r.nodes));
        let found = r.nontrivial().next().cloned();
        if let Some(assignment) = found {
            return FiniteQuotientReport {
                outcome: CertificateOutcome::Counterexample {
                    degree: k,
                    assignment,
                },
                nodes,
            };
        }
    }
    FiniteQuotientReport {
        outcome: CertificateOutcome::Certified { max_degree },
        nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{higman_j, parse_presentation};

    fn pres(s: &str) -> FinitePresentation {
        parse_presentation(s).unwrap()
    }

    #[test]
    fn class_representatives() {
        let reps = conjugacy_class_representatives(4);
        assert_eq!(reps.len(), 5);
        assert!(reps[0].0.is_identity());
        assert_eq!(reps.iter().map(|r| r.1).sum::<u128>(), 24);
        assert_eq!(all_perms(4).len(), 24);
    }

    #[test]
    fn order_two() {
        let p = pres("< a | a^2 >");
        let r = hom_search(
            &p,
            2,
            SearchMode::All,
            SearchOptions {
                prune: false,
                shard: None,
            },
        );
        assert_eq!(r.homs.len(), 2);
        let r = hom_search(&p, 3, SearchMode::All, SearchOptions::default());
        assert_eq!(r.total, 4);
        let cert = finite_quotient_certificate(&p, 2, true, 1);
        assert!(matches!(
            cert.outcome,
            CertificateOutcome::Counterexample { degree: 2, .. }
        ));
    }

    #[test]
    fn pruned_counts_match_unpruned() {
        for text in [
            "< a, b | a^2, b^3, (a b)^5 >",
            "< a, b | a b a^-1 b^-2 >",
            "< x, y | [x, y] >",
        ] {
            let p = pres(text);
            for k in 1..=3 {
                let full = hom_search(
                    &p,
                    k,
                    SearchMode::All,
                    SearchOptions {
                        prune: false,
                        shard: None,
                    },
                );
                let pruned = hom_search(&p, k, SearchMode::All, SearchOptions::default());
                assert_eq!(full.total, full.homs.len() as u128);
                assert_eq!(full.total, pruned.total, "{text} k={k}");
                assert!(pruned.homs.iter().all(|h| h.verify(&p)));
            }
        }
    }

    #[test]
    fn a5_has_quotient_of_order_60() {
        let p = pres("< a, b | a^2, b^3, (a b)^5 >");
        let r = hom_search(&p, 5, SearchMode::All, SearchOptions::default());
        assert!(r.nontrivial().any(|h| h.image_order() == 60));
    }

    #[test]
    fn higman_small_degrees() {
        let r = finite_quotient_certificate(&higman_j(), 4, true, 1);
        assert!(r.is_certified());
    }

    #[test]
    fn shard_union_matches() {
        let p = pres("< a, b | a^2, b^3, (a b)^5 >");
        for prune in [true, false] {
            let single = hom_search(&p, 4, SearchMode::All, SearchOptions { prune, shard: None });
            let sharded = hom_search_sharded(&p, 4, SearchMode::All, prune, 3);
            assert_eq!(single.homs, sharded.homs);
            assert_eq!(single.total, sharded.total);
        }
    }
}
