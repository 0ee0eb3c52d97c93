//! HLT coset enumeration with union-find coincidence processing.
//!
//! Column `2i` holds generator `i + 1`, column `2i + 1` its inverse. Cosets
//! are numbered in order of definition and compacted at the end.

use serde::{Deserialize, Serialize};

use crate::presentation::{Presentation, Word};

const NONE: usize = usize::MAX;

fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

/// A complete coset table; coset `0` is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub generators: usize,
    /// `table[c][2i]` is `c · xᵢ`, `table[c][2i + 1]` is `c · xᵢ⁻¹`.
    pub table: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        self.table.len()
    }

    pub fn act(&self, coset: usize, letter: i32) -> usize {
        self.table[coset][column(letter)]
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Totality, mutual inverseness, closed relator traces at every coset
    /// and subgroup words fixing coset `0`.
    pub fn verify(&self, p: &Presentation, subgroup: &[Word]) -> bool {
        let n = self.num_cosets();
        let shape = self.table.iter().all(|row| row.len() == 2 * self.generators && row.iter().all(|&d| d < n));
        shape
            && (0..n).all(|c| (0..2 * self.generators).all(|x| self.table[self.table[c][x]][x ^ 1] == c))
            && (0..n).all(|c| p.relators.iter().all(|r| self.trace(c, r) == c))
            && subgroup.iter().all(|w| self.trace(0, w) == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TcOutcome {
    Complete(CosetTable),
    /// Enumeration stopped after `defined` coset definitions with `live` alive.
    OutOfBudget { live: usize, defined: usize },
}

impl TcOutcome {
    pub fn table(&self) -> Option<&CosetTable> {
        match self {
            TcOutcome::Complete(t) => Some(t),
            TcOutcome::OutOfBudget { .. } => None,
        }
    }

    pub fn index(&self) -> Option<usize> {
        self.table().map(CosetTable::num_cosets)
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max_cosets: usize,
}

struct Exhausted;

impl Enumerator {
    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), Exhausted> {
        if self.table.len() >= self.max_cosets {
            return Err(Exhausted);
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        self.live -= 1;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][x ^ 1] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
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

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), Exhausted> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != NONE {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][w[j as usize] ^ 1] != NONE {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn compact(&self) -> CosetTable {
        let mut index = vec![NONE; self.table.len()];
        let mut n = 0;
        for (c, slot) in index.iter_mut().enumerate() {
            if self.alive(c) {
                *slot = n;
                n += 1;
            }
        }
        let table = (0..self.table.len())
            .filter(|&c| self.alive(c))
            .map(|c| self.table[c].iter().map(|&d| index[d]).collect())
            .collect();
        CosetTable { generators: self.cols / 2, table }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `p`, defining at most `max_cosets` cosets in total.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> TcOutcome {
    let cols = 2 * p.num_generators();
    let to_cols = |w: &Word| w.letters().iter().map(|&l| column(l)).collect::<Vec<_>>();
    let relators: Vec<Vec<usize>> = p.relators.iter().map(to_cols).filter(|r| !r.is_empty()).collect();
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect();
    if max_cosets == 0 {
        return TcOutcome::OutOfBudget { live: 0, defined: 0 };
    }
    let mut e = Enumerator { cols, table: vec![vec![NONE; cols]], parent: vec![0], live: 1, max_cosets };
    let run = |e: &mut Enumerator| -> Result<(), Exhausted> {
        for w in &subgroup {
            e.scan_and_fill(0, w)?;
        }
        let mut c = 0;
        while c < e.table.len() {
            for r in &relators {
                if !e.alive(c) {
                    break;
                }
                e.scan_and_fill(c, r)?;
            }
            if e.alive(c) {
                for x in 0..cols {
                    if e.table[c][x] == NONE {
                        e.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    };
    match run(&mut e) {
        Ok(()) => TcOutcome::Complete(e.compact()),
        Err(Exhausted) => TcOutcome::OutOfBudget { live: e.live, defined: e.table.len() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn small_groups() {
        for (p, n) in [(corpus::cyclic(5), 5), (corpus::dihedral6(), 6), (corpus::cyclic(1), 1)] {
            let t = todd_coxeter(&p, &[], 1000);
            let table = t.table().unwrap();
            assert_eq!(table.num_cosets(), n);
            assert!(table.verify(&p, &[]));
        }
    }

    #[test]
    fn subgroup_index() {
        let d6 = corpus::dihedral6();
        let t = todd_coxeter(&d6, &[Word::new(vec![1])], 100);
        assert_eq!(t.index(), Some(3));
        assert!(t.table().unwrap().verify(&d6, &[Word::new(vec![1])]));
    }

    #[test]
    fn infinite_group_runs_out() {
        match todd_coxeter(&corpus::free_group(1), &[], 50) {
            TcOutcome::OutOfBudget { live, defined } => {
                assert_eq!(defined, 50);
                assert!(live > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coincidences() {
        // ⟨a, b | aba⁻¹b⁻², bab⁻¹a⁻²⟩ is trivial
        let p = Presentation::parse("<a,b | a b a^-1 b^-2, b a b^-1 a^-2>").unwrap();
        assert_eq!(todd_coxeter(&p, &[], 10_000).index(), Some(1));
        let q8 = Presentation::parse("<a,b | a^4, a^2b^-2, abab^-1>").unwrap();
        let t = todd_coxeter(&q8, &[], 10_000);
        assert_eq!(t.index(), Some(8));
        assert!(t.table().unwrap().verify(&q8, &[]));
    }
}
