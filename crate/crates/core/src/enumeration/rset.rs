//! The set `R(G, g) = {n : g₁ⁿ⋯g_lⁿ = 1}` from below and above.
//!
//! `ℒ(N)` is the set of free reductions of products of at most `N` factors
//! `w r^{±1} w⁻¹` with `r` a relator and `|w| ≤ N`. Membership of a word is
//! decided by depth-first search: peel one conjugate off the target, recurse
//! on the remainder with one factor fewer, and finish with a hash lookup.
//! Failed `(remainder, factors)` states are memoised. Levels `N₀ = 0, 1, …, N`
//! are searched in order from a shared budget, so a certificate found for
//! some `N` is found again for every larger `N`.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::homs::{witness_nontrivial, Witness};
use crate::error::{Error, Result};
use crate::presentation::{free_reduce, Presentation, Word};

/// One factor `w r^{sign} w⁻¹`; `relator` indexes the presentation's relators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub conjugator: Word,
    pub relator: usize,
    pub sign: i8,
}

impl Factor {
    pub fn word(&self, p: &Presentation) -> Word {
        let r = &p.relators[self.relator];
        let r = if self.sign > 0 { r.clone() } else { r.inverse() };
        free_reduce(&self.conjugator.concat(&r).concat(&self.conjugator.inverse()))
    }
}

/// Expresses a word as a product of conjugated relators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub factors: Vec<Factor>,
}

impl Certificate {
    pub fn product(&self, p: &Presentation) -> Word {
        free_reduce(&Word(self.factors.iter().flat_map(|f| f.word(p).0).collect()))
    }

    /// The certificate stays within `ℒ(n_budget)` and its product reduces
    /// to the reduction of `target`.
    pub fn verify(&self, p: &Presentation, target: &Word, n_budget: usize) -> bool {
        self.factors.len() <= n_budget
            && self.factors.iter().all(|f| {
                f.relator < p.relators.len()
                    && f.sign.abs() == 1
                    && f.conjugator.len() <= n_budget
                    && p.check_word(&f.conjugator).is_ok()
            })
            && self.product(p) == free_reduce(target)
    }
}

/// `g₁ⁿ g₂ⁿ ⋯ g_lⁿ`, freely reduced.
pub fn tuple_word(g: &[Word], n: i64) -> Word {
    free_reduce(&Word::power_product(g, n))
}

/// `x·y` for freely reduced `x` and `y`.
fn reduce_product(x: &[i32], y: &[i32]) -> Vec<i32> {
    let mut m = 0;
    while m < x.len() && m < y.len() && x[x.len() - 1 - m] == -y[m] {
        m += 1;
    }
    let mut out = Vec::with_capacity(x.len() + y.len() - 2 * m);
    out.extend_from_slice(&x[..x.len() - m]);
    out.extend_from_slice(&y[m..]);
    out
}

/// Every freely reduced word of length at most `n`.
pub fn reduced_words(generators: usize, n: usize) -> Vec<Word> {
    let letters: Vec<i32> = (1..=generators as i32).flat_map(|g| [g, -g]).collect();
    let mut all = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.0.last() != Some(&-l) {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Reduced conjugates `w r^{±1} w⁻¹` with `|w| ≤ n`, deduplicated.
fn conjugates(p: &Presentation, n: usize) -> Vec<(Vec<i32>, Factor)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in reduced_words(p.num_generators(), n) {
        for (i, r) in p.relators.iter().enumerate() {
            if r.is_empty() {
                continue;
            }
            for sign in [1i8, -1] {
                let f = Factor { conjugator: w.clone(), relator: i, sign };
                let c = f.word(p).0;
                if !c.is_empty() && seen.insert(c.clone()) {
                    out.push((c, f));
                }
            }
        }
    }
    out
}

/// The literal `ℒ(n)`; exponential, for small `n` only.
pub fn literal_list(p: &Presentation, n: usize) -> HashSet<Word> {
    let cs: Vec<Vec<i32>> = conjugates(p, n).into_iter().map(|(c, _)| c).collect();
    let mut all: HashSet<Vec<i32>> = HashSet::from([Vec::new()]);
    let mut frontier = all.clone();
    for _ in 0..n {
        let mut next = HashSet::new();
        for x in &frontier {
            for c in &cs {
                let y = reduce_product(x, c);
                if !all.contains(&y) {
                    next.insert(y);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.into_iter().map(Word).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Certified(Certificate),
    /// The search over `ℒ(N)` finished without finding the word.
    NotInList,
    Unknown,
}

struct Level {
    conjugates: Vec<(Vec<i32>, Factor)>,
    lookup: HashMap<Vec<i32>, usize>,
    max_len: usize,
    failed: HashMap<Vec<i32>, usize>,
}

struct OutOfBudget;

impl Level {
    fn new(p: &Presentation, n: usize) -> Self {
        let conjugates = conjugates(p, n);
        let lookup = conjugates.iter().enumerate().map(|(i, (c, _))| (c.clone(), i)).collect();
        let max_len = conjugates.iter().map(|(c, _)| c.len()).max().unwrap_or(0);
        Level { conjugates, lookup, max_len, failed: HashMap::new() }
    }

    /// Whether `t` is a product of at most `k` conjugates.
    fn search(&mut self, t: &[i32], k: usize, spent: &mut u64, budget: u64) -> Result<Option<Vec<usize>>, OutOfBudget> {
        if t.is_empty() {
            return Ok(Some(Vec::new()));
        }
        if k == 0 || t.len() > k * self.max_len {
            return Ok(None);
        }
        if self.failed.get(t).is_some_and(|&f| f >= k) {
            return Ok(None);
        }
        if let Some(&i) = self.lookup.get(t) {
            return Ok(Some(vec![i]));
        }
        if k >= 2 {
            let mut rests: Vec<(Vec<i32>, usize)> = Vec::new();
            for (i, (c, _)) in self.conjugates.iter().enumerate() {
                *spent += 1;
                if *spent > budget {
                    return Err(OutOfBudget);
                }
                let inv: Vec<i32> = c.iter().rev().map(|l| -l).collect();
                let rest = reduce_product(&inv, t);
                if rest.len() <= (k - 1) * self.max_len {
                    rests.push((rest, i));
                }
            }
            rests.sort_by_key(|(r, i)| (r.len(), *i));
            for (rest, i) in rests {
                if let Some(mut tail) = self.search(&rest, k - 1, spent, budget)? {
                    tail.insert(0, i);
                    return Ok(Some(tail));
                }
            }
        }
        let entry = self.failed.entry(t.to_vec()).or_insert(0);
        *entry = (*entry).max(k);
        Ok(None)
    }
}

/// Decides `target ∈ ℒ(n)` within `budget` conjugate reductions.
pub fn membership(p: &Presentation, target: &Word, n: usize, budget: u64) -> Membership {
    let t = free_reduce(target).0;
    let mut spent = 0;
    for n0 in 0..=n {
        let mut level = Level::new(p, n0);
        match level.search(&t, n0, &mut spent, budget) {
            Ok(Some(idx)) => {
                let factors = idx.iter().map(|&i| level.conjugates[i].1.clone()).collect();
                return Membership::Certified(Certificate { factors });
            }
            Ok(None) => {}
            Err(OutOfBudget) => return Membership::Unknown,
        }
    }
    Membership::NotInList
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Conjugate reductions per exponent in the positive search.
    pub reductions: u64,
    /// Search nodes per exponent in the witness search.
    pub witness_nodes: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { reductions: 2_000_000, witness_nodes: 2_000_000 }
    }
}

impl Budgets {
    pub fn scaled(self, factor: f64) -> Self {
        Budgets {
            reductions: (self.reductions as f64 * factor) as u64,
            witness_nodes: (self.witness_nodes as f64 * factor) as u64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Positive {
    pub n: i64,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Negative {
    pub n: i64,
    pub witness: Witness,
}

/// Certified members, witnessed non-members and the rest of `[-N, N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RSetReport {
    pub budget: usize,
    pub tuple: Vec<Word>,
    pub positives: Vec<Positive>,
    pub negatives: Vec<Negative>,
    pub unknown: Vec<i64>,
    /// Exponents whose word was shown to lie outside `ℒ(N)`.
    pub not_in_list: Vec<i64>,
}

impl RSetReport {
    pub fn positive_set(&self) -> Vec<i64> {
        self.positives.iter().map(|p| p.n).collect()
    }

    pub fn negative_set(&self) -> Vec<i64> {
        self.negatives.iter().map(|p| p.n).collect()
    }

    /// Re-checks the partition, every certificate and every witness.
    pub fn verify(&self, p: &Presentation) -> bool {
        let n = self.budget as i64;
        let mut all: Vec<i64> = self.positive_set();
        all.extend(self.negative_set());
        all.extend(&self.unknown);
        all.sort_unstable();
        all == (-n..=n).collect::<Vec<_>>()
            && self.positives.iter().all(|x| x.certificate.verify(p, &tuple_word(&self.tuple, x.n), self.budget))
            && self.negatives.iter().all(|x| x.witness.verify(p, &tuple_word(&self.tuple, x.n)))
    }
}

/// Positive side only: every `|n| ≤ N` is certified or left unknown.
pub fn r_set_enumerate(p: &Presentation, g: &[Word], n: usize, budgets: Budgets) -> Result<RSetReport> {
    for w in g {
        p.check_word(w)?;
    }
    let mut report =
        RSetReport { budget: n, tuple: g.to_vec(), positives: vec![], negatives: vec![], unknown: vec![], not_in_list: vec![] };
    for e in -(n as i64)..=n as i64 {
        match membership(p, &tuple_word(g, e), n, budgets.reductions) {
            Membership::Certified(certificate) => report.positives.push(Positive { n: e, certificate }),
            Membership::NotInList => {
                report.unknown.push(e);
                report.not_in_list.push(e);
            }
            Membership::Unknown => report.unknown.push(e),
        }
    }
    Ok(report)
}

/// Adds finite-quotient witnesses in degree at most `degree_bound` for
/// every exponent the positive side did not certify.
pub fn r_set_report(p: &Presentation, g: &[Word], n: usize, degree_bound: usize, budgets: Budgets) -> Result<RSetReport> {
    let mut report = r_set_enumerate(p, g, n, budgets)?;
    let mut unknown = Vec::new();
    for &e in &report.unknown {
        let w = tuple_word(g, e);
        match witness_nontrivial(p, &w, degree_bound, budgets.witness_nodes).witness() {
            Some(witness) => report.negatives.push(Negative { n: e, witness: witness.clone() }),
            None => unknown.push(e),
        }
    }
    report.unknown = unknown;
    let pos: HashSet<i64> = report.positive_set().into_iter().collect();
    if let Some(n) = report.negative_set().into_iter().find(|n| pos.contains(n)) {
        return Err(Error::Inconsistent(format!("exponent {n} is both certified and witnessed")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec())
    }

    #[test]
    fn reduced_word_counts() {
        // 1 + 4 + 12 + 36
        assert_eq!(reduced_words(2, 3).len(), 53);
        assert_eq!(reduced_words(1, 4).len(), 9);
    }

    #[test]
    fn free_group_inverse_pair() {
        let f1 = corpus::free_group(1);
        let r = r_set_enumerate(&f1, &[w(&[1]), w(&[-1])], 4, Budgets::default()).unwrap();
        assert_eq!(r.positive_set(), (-4..=4).collect::<Vec<_>>());
        assert!(r.verify(&f1));
    }

    #[test]
    fn cyclic_two() {
        let z2 = corpus::cyclic(2);
        let r = r_set_report(&z2, &[w(&[1])], 5, 3, Budgets::default()).unwrap();
        assert_eq!(r.positive_set(), vec![-4, -2, 0, 2, 4]);
        assert_eq!(r.negative_set(), vec![-5, -3, -1, 1, 3, 5]);
        assert!(r.unknown.is_empty());
        assert!(r.verify(&z2));
    }

    #[test]
    fn agrees_with_literal_list() {
        let presentations = [corpus::cyclic(2), corpus::cyclic(3), Presentation::parse("<a,b | aba^-1b^-1>").unwrap()];
        for p in &presentations {
            for n in 0..=2 {
                let list = literal_list(p, n);
                for t in reduced_words(p.num_generators(), 4) {
                    let m = membership(p, &t, n, u64::MAX);
                    assert_eq!(matches!(m, Membership::Certified(_)), list.contains(&t), "{p} {t:?} {n}");
                    assert_ne!(m, Membership::Unknown);
                }
            }
        }
    }

    #[test]
    fn monotone_in_n() {
        let p = Presentation::parse("<a,b | a^2, b^3, abab>").unwrap();
        let g = [w(&[1]), w(&[2])];
        let budgets = Budgets { reductions: 20_000, witness_nodes: 0 };
        let mut prev: Vec<i64> = vec![];
        for n in 1..=4 {
            let r = r_set_enumerate(&p, &g, n, budgets).unwrap();
            let now = r.positive_set();
            assert!(prev.iter().all(|x| now.contains(x)));
            assert!(r.verify(&p));
            prev = now;
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let z2 = corpus::cyclic(2);
        let c = Certificate { factors: vec![Factor { conjugator: w(&[1]), relator: 0, sign: 1 }] };
        assert!(c.verify(&z2, &w(&[1, 1]), 1));
        assert!(!c.verify(&z2, &w(&[1]), 1));
        assert!(!c.verify(&z2, &w(&[1, 1]), 0));
    }
}
