//! Backtracking search for homomorphisms into finite groups.
//!
//! Generators are assigned in order of decreasing relator occurrence. A
//! relator is evaluated as soon as all its letters are assigned, and a
//! relator in which exactly one letter is unassigned forces that letter.

use serde::{Deserialize, Serialize};

use super::groups::FiniteGroup;
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};

type Letters = Vec<(usize, i32)>;

fn letters(w: &Word) -> Letters {
    w.letters().iter().map(|&l| (l.unsigned_abs() as usize - 1, l.signum())).collect()
}

enum Status {
    Holds,
    Violated,
    Forced(usize, u16),
    Open,
}

fn status(g: &FiniteGroup, r: &Letters, images: &[Option<u16>]) -> Status {
    let mut unknown: Option<(usize, usize)> = None;
    for (k, &(x, _)) in r.iter().enumerate() {
        if images[x].is_none() {
            if unknown.is_some() {
                return Status::Open;
            }
            unknown = Some((k, x));
        }
    }
    let eval = |part: &[(usize, i32)]| {
        part.iter().fold(0u16, |acc, &(x, s)| g.mul(acc, g.signed(images[x].unwrap(), s)))
    };
    match unknown {
        None => {
            if eval(r) == 0 {
                Status::Holds
            } else {
                Status::Violated
            }
        }
        Some((k, x)) => {
            // u·x^s·v = 1 gives x^s = u⁻¹·v⁻¹
            let u = eval(&r[..k]);
            let v = eval(&r[k + 1..]);
            let val = g.mul(g.inv(u), g.inv(v));
            Status::Forced(x, g.signed(val, r[k].1))
        }
    }
}

struct Search<'a, F: FnMut(&[u16]) -> bool> {
    g: &'a FiniteGroup,
    relators: Vec<Letters>,
    order: Vec<usize>,
    images: Vec<Option<u16>>,
    restrict_first: Option<Vec<u16>>,
    nodes: u64,
    budget: u64,
    visit: F,
}

#[derive(Debug, PartialEq, Eq)]
enum End {
    Exhausted,
    Stopped,
    OutOfBudget,
}

impl<F: FnMut(&[u16]) -> bool> Search<'_, F> {
    fn propagate(&mut self, assigned: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.relators.len() {
                match status(self.g, &self.relators[i], &self.images) {
                    Status::Violated => return false,
                    Status::Forced(x, v) => {
                        self.images[x] = Some(v);
                        assigned.push(x);
                        changed = true;
                    }
                    Status::Holds | Status::Open => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, depth: usize) -> End {
        self.nodes += 1;
        if self.nodes > self.budget {
            return End::OutOfBudget;
        }
        let mut assigned = Vec::new();
        let end = if !self.propagate(&mut assigned) {
            End::Exhausted
        } else {
            match self.order.iter().copied().find(|&x| self.images[x].is_none()) {
                None => {
                    let full: Vec<u16> = self.images.iter().map(|x| x.unwrap()).collect();
                    if (self.visit)(&full) {
                        End::Exhausted
                    } else {
                        End::Stopped
                    }
                }
                Some(x) => {
                    let candidates: Vec<u16> = match (&self.restrict_first, depth) {
                        (Some(reps), 0) => reps.clone(),
                        _ => (0..self.g.order() as u16).collect(),
                    };
                    let mut end = End::Exhausted;
                    for a in candidates {
                        self.images[x] = Some(a);
                        end = self.run(depth + 1);
                        if end != End::Exhausted {
                            break;
                        }
                    }
                    self.images[x] = None;
                    end
                }
            }
        };
        for x in assigned {
            self.images[x] = None;
        }
        end
    }
}

/// Generators occurring in `relators`, most frequent first.
fn generator_order(n: usize, relators: &[Letters]) -> Vec<usize> {
    let mut count = vec![0usize; n];
    for r in relators {
        for &(x, _) in r {
            count[x] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&x| count[x] > 0).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(count[x]), x));
    order
}

/// Number of homomorphisms from the group presented by `p` to `g`.
/// Generators absent from every relator contribute a factor `|g|` each.
pub fn hom_count(p: &Presentation, g: &FiniteGroup, order_bound: usize) -> Result<u128> {
    if g.order() > order_bound {
        return Err(Error::OrderBoundExceeded { order: g.order(), bound: order_bound });
    }
    let n = p.num_generators();
    let relators: Vec<Letters> = p.relators.iter().map(letters).collect();
    let order = generator_order(n, &relators);
    let free = n - order.len();
    let mut images = vec![None; n];
    for x in 0..n {
        if !order.contains(&x) {
            images[x] = Some(0);
        }
    }
    let mut count: u128 = 0;
    let mut search = Search {
        g,
        relators,
        order,
        images,
        restrict_first: None,
        nodes: 0,
        budget: u64::MAX,
        visit: |_: &[u16]| {
            count += 1;
            true
        },
    };
    search.run(0);
    Ok(count * (g.order() as u128).pow(free as u32))
}

/// Generator images in `Sym(degree)`, each a permutation of `0..degree`.
/// A word acts letter by letter from the left: `w = xy` sends `i` to `y(x(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub degree: usize,
    pub images: Vec<Vec<usize>>,
}

impl Witness {
    pub fn evaluate(&self, w: &Word) -> Vec<usize> {
        let mut inverses = Vec::with_capacity(self.images.len());
        for p in &self.images {
            let mut q = vec![0; self.degree];
            for (i, &j) in p.iter().enumerate() {
                q[j] = i;
            }
            inverses.push(q);
        }
        (0..self.degree)
            .map(|i| {
                w.letters().iter().fold(i, |pt, &l| {
                    let x = l.unsigned_abs() as usize - 1;
                    if l > 0 {
                        self.images[x][pt]
                    } else {
                        inverses[x][pt]
                    }
                })
            })
            .collect()
    }

    /// Recomputes everything from the permutations alone.
    pub fn verify(&self, p: &Presentation, w: &Word) -> bool {
        let is_perm = |q: &Vec<usize>| {
            let mut seen = vec![false; self.degree];
            q.len() == self.degree && q.iter().all(|&j| j < self.degree && !std::mem::replace(&mut seen[j], true))
        };
        let id: Vec<usize> = (0..self.degree).collect();
        self.images.len() == p.num_generators()
            && self.images.iter().all(is_perm)
            && p.check_word(w).is_ok()
            && p.relators.iter().all(|r| self.evaluate(r) == id)
            && self.evaluate(w) != id
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WitnessOutcome {
    Found(Witness),
    Inconclusive { nodes: u64 },
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            WitnessOutcome::Found(w) => Some(w),
            WitnessOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Searches `Sym(2), …, Sym(degree_bound)` for a homomorphism under which
/// `w` is not the identity, visiting at most `budget` search nodes. The
/// first branched generator ranges over conjugacy class representatives.
pub fn witness_nontrivial(p: &Presentation, w: &Word, degree_bound: usize, budget: u64) -> WitnessOutcome {
    let n = p.num_generators();
    if p.check_word(w).is_err() {
        return WitnessOutcome::Inconclusive { nodes: 0 };
    }
    let relators: Vec<Letters> = p.relators.iter().map(letters).collect();
    let target = letters(w);
    let mut with_target = relators.clone();
    with_target.push(target.clone());
    let order = generator_order(n, &with_target);
    let mut used = 0;
    for d in 2..=degree_bound.min(7) {
        let Ok(g) = FiniteGroup::symmetric(d) else { break };
        let mut images = vec![None; n];
        for x in 0..n {
            if !order.contains(&x) {
                images[x] = Some(0);
            }
        }
        let mut found: Option<Vec<u16>> = None;
        let mut search = Search {
            g: &g,
            relators: relators.clone(),
            order: order.clone(),
            images,
            restrict_first: Some(g.class_representatives()),
            nodes: 0,
            budget: budget - used,
            visit: |imgs: &[u16]| {
                let v = target.iter().fold(0u16, |acc, &(x, s)| g.mul(acc, g.signed(imgs[x], s)));
                if v != 0 {
                    found = Some(imgs.to_vec());
                    false
                } else {
                    true
                }
            },
        };
        let end = search.run(0);
        used += search.nodes.min(budget - used);
        if let Some(imgs) = found {
            let images = imgs.iter().map(|&a| g.perm(a).unwrap().iter().map(|&x| x as usize).collect()).collect();
            return WitnessOutcome::Found(Witness { degree: d, images });
        }
        if end == End::OutOfBudget || used >= budget {
            break;
        }
    }
    WitnessOutcome::Inconclusive { nodes: used }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn counts() {
        let c6 = FiniteGroup::cyclic(6);
        assert_eq!(hom_count(&corpus::free_group(1), &c6, 100).unwrap(), 6);
        assert_eq!(hom_count(&corpus::cyclic(2), &FiniteGroup::cyclic(3), 100).unwrap(), 1);
        assert_eq!(hom_count(&corpus::cyclic(2), &c6, 100).unwrap(), 2);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        // the trivial map, three with image of order 2, six automorphisms
        assert_eq!(hom_count(&corpus::dihedral6(), &s3, 100).unwrap(), 10);
        assert!(matches!(hom_count(&corpus::free_group(1), &c6, 5), Err(Error::OrderBoundExceeded { .. })));
    }

    #[test]
    fn products_multiply() {
        let p = corpus::dihedral6();
        let a = FiniteGroup::cyclic(2);
        let b = FiniteGroup::dihedral(3);
        let ab = FiniteGroup::direct_product(&a, &b);
        let ha = hom_count(&p, &a, 100).unwrap();
        let hb = hom_count(&p, &b, 100).unwrap();
        assert_eq!(hom_count(&p, &ab, 100).unwrap(), ha * hb);
    }

    #[test]
    fn witnesses() {
        let f1 = corpus::free_group(1);
        let w = witness_nontrivial(&f1, &Word::new(vec![1]), 2, 1000);
        let found = w.witness().unwrap();
        assert_eq!(found.degree, 2);
        assert!(found.verify(&f1, &Word::new(vec![1])));

        let f2 = corpus::free_group(2);
        let comm = Word::new(vec![1, 2, -1, -2]);
        let found = witness_nontrivial(&f2, &comm, 5, 10_000);
        assert_eq!(found.witness().unwrap().degree, 3);
        assert!(found.witness().unwrap().verify(&f2, &comm));
    }

    #[test]
    fn no_witness_for_trivial_words() {
        let z2 = corpus::cyclic(2);
        assert!(witness_nontrivial(&z2, &Word::new(vec![1, 1]), 4, 100_000).witness().is_none());
        let found = witness_nontrivial(&z2, &Word::new(vec![1, 1, 1]), 4, 100_000);
        assert!(found.witness().unwrap().verify(&z2, &Word::new(vec![1, 1, 1])));
    }

    #[test]
    fn tampered_witness_fails() {
        let z2 = corpus::cyclic(2);
        let bad = Witness { degree: 3, images: vec![vec![1, 2, 0]] };
        assert!(!bad.verify(&z2, &Word::new(vec![1])));
    }
}
