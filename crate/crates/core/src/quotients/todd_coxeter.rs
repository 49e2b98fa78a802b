use serde::Serialize;

use super::Perm;
use crate::freewords::Word;
use crate::presentations::FinitePresentation;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EnumerationStatus {
    Complete {
        index: usize,
    },
    /// More than `max_cosets` cosets were needed; no answer.
    Overflow {
        max_cosets: usize,
    },
}

/// Coset table. Column `2g` is generator `g`, column `2g+1` its inverse.
/// Complete tables are compacted so live cosets are `0..index` with the
/// subgroup's coset at 0.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub status: EnumerationStatus,
    num_gens: usize,
    rows: Vec<Vec<usize>>,
    /// Total cosets defined during enumeration, including later-merged ones.
    pub defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> Option<usize> {
        match self.status {
            EnumerationStatus::Complete { index } => Some(index),
            EnumerationStatus::Overflow { .. } => None,
        }
    }

    /// Coset reached from `coset` by reading `w`. Only meaningful on a
    /// complete table.
    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        assert!(self.index().is_some(), "trace on an incomplete table");
        w.letters()
            .iter()
            .fold(coset, |c, l| self.rows[c][col(l.gen(), l.is_inverse())])
    }

    /// The permutation action of each generator on cosets.
    pub fn permutations(&self) -> Option<Vec<Perm>> {
        let n = self.index()?;
        Some(
            (0..self.num_gens)
                .map(|g| Perm::from_images((0..n).map(|c| self.rows[c][2 * g] as u32).collect()))
                .collect(),
        )
    }

    /// True iff `w` lies in the subgroup the table was built for. With the
    /// trivial subgroup this decides the word problem of the finite group.
    pub fn in_subgroup(&self, w: &Word) -> bool {
        self.trace(0, w) == 0
    }
}

fn col(g: usize, inverse: bool) -> usize {
    2 * g + inverse as usize
}

struct Enumerator {
    ncols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    max_cosets: usize,
    overflow: bool,
}

impl Enumerator {
    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.table.len() >= self.max_cosets {
            self.overflow = true;
            return false;
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.ncols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        true
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][x ^ 1] = NONE;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    /// Scans `w` from coset `c` in both directions, defining cosets to close
    /// the gap and recording deductions or coincidences.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() - 1);
        loop {
            while i <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.table[b][w[j] ^ 1] != NONE {
                b = self.table[b][w[j] ^ 1];
                if j == 0 {
                    // Only reachable when i == 0 too: the whole word closed backwards.
                    self.coincidence(f, b);
                    return;
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                return;
            }
            if !self.define(f, w[i]) {
                return;
            }
        }
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters()
        .iter()
        .map(|l| col(l.gen(), l.is_inverse()))
        .collect()
}

/// HLT coset enumeration of `P` over the subgroup generated by
/// `subgroup_gens`. Cosets are processed in order; each is scanned under
/// every relator and then its row is filled in generator order. A complete
/// table is verified (all relators close at every coset, subgroup
/// generators fix coset 0) before it is returned.
pub fn todd_coxeter(
    p: &FinitePresentation,
    subgroup_gens: &[Word],
    max_cosets: usize,
) -> CosetTable {
    assert!(max_cosets >= 1, "coset budget must be positive");
    let ncols = 2 * p.num_generators();
    let mut e = Enumerator {
        ncols,
        table: vec![vec![NONE; ncols]],
        parent: vec![0],
        max_cosets,
        overflow: false,
    };
    let relators: Vec<Vec<usize>> = p.relators().iter().map(|r| columns(&r.reduced())).collect();
    let subgroup: Vec<Vec<usize>> = subgroup_gens
        .iter()
        .map(|w| columns(&w.reduced()))
        .collect();
    let overflow = |e: &Enumerator| CosetTable {
        status: EnumerationStatus::Overflow { max_cosets },
        num_gens: p.num_generators(),
        rows: Vec::new(),
        defined: e.table.len(),
    };

    for h in &subgroup {
        if e.live(0) {
            e.scan_and_fill(0, h);
        }
        if e.overflow {
            return overflow(&e);
        }
    }
    let mut c = 0;
    while c < e.table.len() {
        for r in &relators {
            if !e.live(c) {
                break;
            }
            e.scan_and_fill(c, r);
            if e.overflow {
                return overflow(&e);
            }
        }
        if e.live(c) {
            for x in 0..ncols {
                if e.table[c][x] == NONE && !e.define(c, x) {
                    return overflow(&e);
                }
            }
        }
        c += 1;
    }

    // Compact: renumber live cosets in order of appearance.
    let mut new_id = vec![NONE; e.table.len()];
    let mut live = Vec::new();
    for (c, id) in new_id.iter_mut().enumerate() {
        if e.live(c) {
            *id = live.len();
            live.push(c);
        }
    }
    let rows: Vec<Vec<usize>> = live
        .iter()
        .map(|&c| e.table[c].iter().map(|&d| new_id[d]).collect())
        .collect();
    let table = CosetTable {
        status: EnumerationStatus::Complete { index: rows.len() },
        num_gens: p.num_generators(),
        rows,
        defined: e.table.len(),
    };
    assert!(
        verify_complete(&table, &relators, &subgroup),
        "coset table failed verification"
    );
    table
}

fn verify_complete(t: &CosetTable, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> bool {
    let n = t.rows.len();
    let walk = |c: usize, w: &[usize]| {
        w.iter()
            .try_fold(c, |c, &x| Some(t.rows[c][x]).filter(|&d| d < n))
    };
    let defined = t.rows.iter().enumerate().all(|(c, row)| {
        row.iter()
            .enumerate()
            .all(|(x, &d)| d < n && t.rows[d][x ^ 1] == c)
    });
    defined
        && (0..n).all(|c| relators.iter().all(|r| walk(c, r) == Some(c)))
        && subgroup.iter().all(|h| walk(0, h) == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{higman_j, parse_presentation};

    fn order(text: &str) -> Option<usize> {
        todd_coxeter(&parse_presentation(text).unwrap(), &[], 100_000).index()
    }

    #[test]
    fn small_orders() {
        assert_eq!(order("< x | x >"), Some(1));
        assert_eq!(order("< a | a^5 >"), Some(5));
        assert_eq!(order("< a, b | a^2, b^3, (a b)^5 >"), Some(60));
        assert_eq!(order("< a, b | a^2, b^2, (a b)^4 >"), Some(8));
        assert_eq!(order("< a, b | a^3, b^3, (a b)^3, (a b^-1)^3 >"), Some(27));
    }

    #[test]
    fn subgroup_index() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^5 >").unwrap();
        let t = todd_coxeter(&p, &[p.word("a").unwrap(), p.word("b").unwrap()], 1000);
        assert_eq!(t.index(), Some(1));
        let t = todd_coxeter(&p, &[p.word("b").unwrap()], 1000);
        assert_eq!(t.index(), Some(20));
        assert!(t.in_subgroup(&p.word("b^2").unwrap()));
        assert!(!t.in_subgroup(&p.word("a").unwrap()));
    }

    #[test]
    fn overflow_is_reported() {
        let t = todd_coxeter(&parse_presentation("< a | >").unwrap(), &[], 50);
        assert_eq!(t.status, EnumerationStatus::Overflow { max_cosets: 50 });
        let t = todd_coxeter(&higman_j(), &[], 200);
        assert!(t.index().is_none());
    }

    #[test]
    fn regular_action_decides_words() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^5 >").unwrap();
        let t = todd_coxeter(&p, &[], 1000);
        assert!(t.in_subgroup(&p.word("(a b)^5").unwrap()));
        assert!(t.in_subgroup(&p.word("b a b a b a b a b a").unwrap()));
        assert!(!t.in_subgroup(&p.word("a b").unwrap()));
        let perms = t.permutations().unwrap();
        assert_eq!(super::super::generated_group_order(&perms, 60), 60);
    }
}
