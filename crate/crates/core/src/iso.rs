//! Simplicial isomorphism search by backtracking over vertex bijections.
//!
//! Candidates are restricted by an iterated neighbourhood signature
//! (colour, degree, simplex counts at the vertex, link f-vector, then the
//! multiset of neighbour classes). Vertices are placed in BFS order so that
//! adjacency to already-placed vertices prunes early.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::complex::{Simplex, SimplicialComplex};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `map[v]` is the image in the second complex of vertex `v` of the first.
    Found(Vec<usize>),
    NotIsomorphic,
    OutOfBudget(u64),
}

impl IsoOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoOutcome::Found(_))
    }

    pub fn mapping(&self) -> Option<&[usize]> {
        match self {
            IsoOutcome::Found(m) => Some(m),
            _ => None,
        }
    }
}

pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> IsoOutcome {
    let ca = vec![0; a.num_vertices()];
    let cb = vec![0; b.num_vertices()];
    are_isomorphic_colored(a, b, &ca, &cb, DEFAULT_BUDGET)
}

/// Isomorphisms that carry each vertex to a vertex of the same colour.
pub fn are_isomorphic_colored(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    colors_a: &[u64],
    colors_b: &[u64],
    budget: u64,
) -> IsoOutcome {
    assert_eq!(colors_a.len(), a.num_vertices());
    assert_eq!(colors_b.len(), b.num_vertices());
    if a.f_vector() != b.f_vector() {
        return IsoOutcome::NotIsomorphic;
    }
    let n = a.num_vertices();
    if n == 0 {
        return IsoOutcome::Found(Vec::new());
    }
    let (class_a, class_b) = refine(a, b, colors_a, colors_b);
    let mut hist_a: HashMap<usize, usize> = HashMap::new();
    let mut hist_b: HashMap<usize, usize> = HashMap::new();
    for &c in &class_a {
        *hist_a.entry(c).or_default() += 1;
    }
    for &c in &class_b {
        *hist_b.entry(c).or_default() += 1;
    }
    if hist_a != hist_b {
        return IsoOutcome::NotIsomorphic;
    }

    let order = search_order(a, &class_a, &hist_a);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // simplices of dimension ≥ 2 checked when their last vertex is placed
    let mut closing: Vec<Vec<Simplex>> = vec![Vec::new(); n];
    for k in 2..a.f_vector().len() {
        for s in a.simplices(k) {
            let last = *s.iter().max_by_key(|&&v| position[v]).unwrap();
            closing[position[last]].push(s.clone());
        }
    }
    let adj_a: Vec<HashSet<usize>> = a.adjacency().into_iter().map(|x| x.into_iter().collect()).collect();
    let adj_b: Vec<HashSet<usize>> = b.adjacency().into_iter().map(|x| x.into_iter().collect()).collect();
    let mut by_class_b: HashMap<usize, Vec<usize>> = HashMap::new();
    for (v, &c) in class_b.iter().enumerate() {
        by_class_b.entry(c).or_default().push(v);
    }

    let mut search = Search {
        b,
        order: &order,
        class_a: &class_a,
        by_class_b: &by_class_b,
        adj_a: &adj_a,
        adj_b: &adj_b,
        closing: &closing,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        budget,
    };
    match search.run(0) {
        Some(true) => IsoOutcome::Found(search.map),
        Some(false) => IsoOutcome::NotIsomorphic,
        None => IsoOutcome::OutOfBudget(budget),
    }
}

fn base_signature(c: &SimplicialComplex, colors: &[u64]) -> Vec<(u64, Vec<usize>, Vec<usize>)> {
    let mut counts = vec![vec![0; c.f_vector().len()]; c.num_vertices()];
    for (k, _) in c.f_vector().iter().enumerate() {
        for s in c.simplices(k) {
            for &v in s {
                counts[v][k] += 1;
            }
        }
    }
    (0..c.num_vertices())
        .map(|v| (colors[v], counts[v].clone(), c.link(v).f_vector()))
        .collect()
}

/// Joint colour refinement so that class ids are comparable across `a` and `b`.
fn refine(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    colors_a: &[u64],
    colors_b: &[u64],
) -> (Vec<usize>, Vec<usize>) {
    let sig_a = base_signature(a, colors_a);
    let sig_b = base_signature(b, colors_b);
    let mut ids: BTreeMap<_, usize> = BTreeMap::new();
    for s in sig_a.iter().chain(&sig_b) {
        let next = ids.len();
        ids.entry(s.clone()).or_insert(next);
    }
    let mut ca: Vec<usize> = sig_a.iter().map(|s| ids[s]).collect();
    let mut cb: Vec<usize> = sig_b.iter().map(|s| ids[s]).collect();
    let adj_a = a.adjacency();
    let adj_b = b.adjacency();
    let mut classes = ids.len();
    loop {
        let key = |cls: &[usize], adj: &[Vec<usize>], v: usize| {
            let mut nb: Vec<usize> = adj[v].iter().map(|&w| cls[w]).collect();
            nb.sort_unstable();
            (cls[v], nb)
        };
        let ka: Vec<_> = (0..ca.len()).map(|v| key(&ca, &adj_a, v)).collect();
        let kb: Vec<_> = (0..cb.len()).map(|v| key(&cb, &adj_b, v)).collect();
        let mut ids: BTreeMap<_, usize> = BTreeMap::new();
        for k in ka.iter().chain(&kb) {
            let next = ids.len();
            ids.entry(k.clone()).or_insert(next);
        }
        ca = ka.iter().map(|k| ids[k]).collect();
        cb = kb.iter().map(|k| ids[k]).collect();
        if ids.len() == classes {
            return (ca, cb);
        }
        classes = ids.len();
    }
}

/// BFS from the rarest class, preferring rare classes at each frontier.
fn search_order(a: &SimplicialComplex, class: &[usize], hist: &HashMap<usize, usize>) -> Vec<usize> {
    let n = a.num_vertices();
    let adj = a.adjacency();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    remaining.sort_by_key(|&v| (hist[&class[v]], v));
    for &start in &remaining {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut next: Vec<usize> = adj[u].iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_by_key(|&w| (hist[&class[w]], w));
            for w in next {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

struct Search<'a> {
    b: &'a SimplicialComplex,
    order: &'a [usize],
    class_a: &'a [usize],
    by_class_b: &'a HashMap<usize, Vec<usize>>,
    adj_a: &'a [HashSet<usize>],
    adj_b: &'a [HashSet<usize>],
    closing: &'a [Vec<Simplex>],
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// `None` when the budget runs out.
    fn run(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let v = self.order[depth];
        let placed = &self.order[..depth];
        let candidates = self.by_class_b.get(&self.class_a[v]).cloned().unwrap_or_default();
        for w in candidates {
            if self.used[w] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let consistent = placed.iter().all(|&u| self.adj_a[v].contains(&u) == self.adj_b[w].contains(&self.map[u]));
            if !consistent {
                continue;
            }
            self.map[v] = w;
            let closes = self.closing[depth].iter().all(|s| {
                let mut t: Simplex = s.iter().map(|&x| self.map[x]).collect();
                t.sort_unstable();
                self.b.contains(&t)
            });
            if closes {
                self.used[w] = true;
                match self.run(depth + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.used[w] = false;
            }
            self.map[v] = usize::MAX;
        }
        Some(false)
    }
}

/// Checks that `map` is a simplicial isomorphism from `a` onto `b`.
pub fn is_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex, map: &[usize]) -> bool {
    if map.len() != a.num_vertices() || a.f_vector() != b.f_vector() {
        return false;
    }
    let mut seen = vec![false; b.num_vertices()];
    for &w in map {
        if w >= seen.len() || std::mem::replace(&mut seen[w], true) {
            return false;
        }
    }
    a.iter_simplices().all(|s| {
        let mut t: Simplex = s.iter().map(|&v| map[v]).collect();
        t.sort_unstable();
        b.contains(&t)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cycles() {
        let c4 = corpus::cycle(4);
        let relabelled = c4.relabel(|l| format!("x{l}")).unwrap();
        let out = are_isomorphic(&c4, &relabelled);
        assert!(is_isomorphism(&c4, &relabelled, out.mapping().unwrap()));
        assert_eq!(are_isomorphic(&c4, &corpus::cycle(5)), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn same_counts_different_shape() {
        // a 6-cycle and two disjoint triangles share the f-vector (6, 6)
        let two = corpus::cycle(3).disjoint_union(&corpus::cycle(3).relabel(|l| format!("{l}'")).unwrap()).unwrap();
        assert_eq!(are_isomorphic(&corpus::cycle(6), &two), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn budget_is_reported() {
        let oct = corpus::octahedron();
        let c = vec![0; 6];
        assert_eq!(are_isomorphic_colored(&oct, &oct, &c, &c, 0), IsoOutcome::OutOfBudget(0));
    }

    #[test]
    fn colours_constrain() {
        let e = corpus::edge();
        assert!(are_isomorphic_colored(&e, &e, &[0, 1], &[1, 0], 100).is_found());
        assert_eq!(are_isomorphic_colored(&e, &e, &[0, 0], &[0, 1], 100), IsoOutcome::NotIsomorphic);
    }
}
