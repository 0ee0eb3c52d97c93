//! Finite abstract simplicial complexes.
//!
//! Vertices carry string labels and are stored in sorted label order, so a
//! vertex index is the rank of its label. Simplices are sorted index vectors
//! bucketed by dimension; every face of a stored simplex is stored.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simplex as a strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    faces: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector())
            .field("labels", &self.labels)
            .finish()
    }
}

/// JSON file form: `{"vertices": [...], "maximal_simplices": [[...], ...]}`.
///
/// `simplices` is an optional explicit listing of every simplex; when it is
/// present [`ComplexFile::validate`] checks it for closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub maximal_simplices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Issue {
    DuplicateVertex { vertex: String },
    DanglingVertex { simplex: Vec<String>, vertex: String },
    RepeatedVertex { simplex: Vec<String>, vertex: String },
    EmptySimplex,
    ClosureViolation { simplex: Vec<String>, missing_face: Vec<String> },
    Malformed { detail: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

impl ComplexFile {
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                issues.push(Issue::DuplicateVertex { vertex: v.clone() });
            }
        }
        let listed = self.simplices.iter().flatten();
        for s in self.maximal_simplices.iter().chain(listed) {
            if s.is_empty() {
                issues.push(Issue::EmptySimplex);
                continue;
            }
            let mut inner = HashSet::new();
            for v in s {
                if !seen.contains(v.as_str()) {
                    issues.push(Issue::DanglingVertex { simplex: s.clone(), vertex: v.clone() });
                }
                if !inner.insert(v.as_str()) {
                    issues.push(Issue::RepeatedVertex { simplex: s.clone(), vertex: v.clone() });
                }
            }
        }
        if let Some(all) = &self.simplices {
            let present: HashSet<Vec<&str>> = all.iter().map(|s| sorted_refs(s)).collect();
            for s in all {
                let key = sorted_refs(s);
                if key.len() < 2 {
                    continue;
                }
                for i in 0..key.len() {
                    let mut face = key.clone();
                    face.remove(i);
                    let is_vertex = face.len() == 1 && seen.contains(face[0]);
                    if !present.contains(&face) && !is_vertex {
                        issues.push(Issue::ClosureViolation {
                            simplex: s.clone(),
                            missing_face: face.iter().map(|x| x.to_string()).collect(),
                        });
                    }
                }
            }
        }
        ValidationReport { issues }
    }
}

fn sorted_refs(s: &[String]) -> Vec<&str> {
    let mut v: Vec<&str> = s.iter().map(|x| x.as_str()).collect();
    v.sort_unstable();
    v
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { labels: Vec::new(), faces: Vec::new(), index: Vec::new() }
    }

    /// Builds the closure of the given simplices over the labelled vertex set.
    pub fn new<V, S>(vertices: V, simplices: &[Vec<S>]) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        S: AsRef<str>,
    {
        let labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let lookup: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut gens = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut idx = Vec::with_capacity(s.len());
            for v in s {
                let v = v.as_ref();
                idx.push(*lookup.get(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?);
            }
            gens.push(idx);
        }
        Self::from_indexed(labels, gens)
    }

    /// Builds a complex from labels and generating simplices given as indices
    /// into `labels`. Labels are re-sorted; the closure is computed.
    pub fn from_indexed<I>(labels: Vec<String>, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let n = labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        for w in order.windows(2) {
            if labels[w[0]] == labels[w[1]] {
                return Err(Error::DuplicateVertex(labels[w[0]].clone()));
            }
        }
        let mut rank = vec![0; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let sorted_labels: Vec<String> = order.iter().map(|&i| labels[i].clone()).collect();

        let mut all: HashSet<Simplex> = HashSet::new();
        let mut stack: Vec<Simplex> = (0..n).map(|v| vec![v]).collect();
        for g in generators {
            if g.is_empty() {
                return Err(Error::EmptySimplex);
            }
            let mut s = Vec::with_capacity(g.len());
            for &v in &g {
                if v >= n {
                    return Err(Error::UnknownVertex(format!("#{v}")));
                }
                s.push(rank[v]);
            }
            s.sort_unstable();
            if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex {
                    simplex: g.iter().map(|&v| labels[v].clone()).collect(),
                    vertex: sorted_labels[w[0]].clone(),
                });
            }
            stack.push(s);
        }
        while let Some(s) = stack.pop() {
            if s.len() > 1 && !all.contains(&s) {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    stack.push(f);
                }
            }
            all.insert(s);
        }
        Ok(Self::from_closed(sorted_labels, all))
    }

    /// `labels` sorted and unique, `all` closed under faces.
    fn from_closed(labels: Vec<String>, all: HashSet<Simplex>) -> Self {
        let top = all.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut faces: Vec<Vec<Simplex>> = vec![Vec::new(); top];
        for s in all {
            faces[s.len() - 1].push(s);
        }
        for bucket in &mut faces {
            bucket.sort_unstable();
        }
        let index = faces
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { labels, faces, index }
    }

    pub fn from_file(file: &ComplexFile) -> Result<Self> {
        let report = file.validate();
        for issue in report.issues {
            match issue {
                Issue::ClosureViolation { .. } => {}
                Issue::DuplicateVertex { vertex } => return Err(Error::DuplicateVertex(vertex)),
                Issue::DanglingVertex { vertex, .. } => return Err(Error::UnknownVertex(vertex)),
                Issue::RepeatedVertex { simplex, vertex } => {
                    return Err(Error::RepeatedVertex { simplex, vertex })
                }
                Issue::EmptySimplex => return Err(Error::EmptySimplex),
                Issue::Malformed { detail } => return Err(Error::Parse(detail)),
            }
        }
        let mut gens = file.maximal_simplices.clone();
        if let Some(all) = &file.simplices {
            gens.extend(all.iter().cloned());
        }
        Self::new(file.vertices.iter().cloned(), &gens)
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            vertices: self.labels.clone(),
            maximal_simplices: self
                .maximal_simplices()
                .iter()
                .map(|s| self.simplex_labels(s))
                .collect(),
            simplices: None,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn vertex_or_err(&self, label: &str) -> Result<usize> {
        self.vertex(label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn simplex_labels(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Dimension, with `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 1
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.faces.get(k).map(|b| b.as_slice()).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|b| b.len()).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.faces.iter().map(|b| b.len()).sum()
    }

    /// Index of a sorted simplex within its dimension bucket.
    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplex_index(s).is_some()
    }

    /// Looks up a simplex given by labels in any order.
    pub fn contains_labels<S: AsRef<str>>(&self, s: &[S]) -> bool {
        let mut idx = Vec::with_capacity(s.len());
        for l in s {
            match self.vertex(l.as_ref()) {
                Some(v) => idx.push(v),
                None => return false,
            }
        }
        idx.sort_unstable();
        self.contains(&idx)
    }

    pub fn iter_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for e in self.simplices(1) {
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.simplices(1).iter().filter(|e| e.contains(&v)).count()
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: HashSet<&[usize]> = HashSet::new();
        for bucket in self.faces.iter().skip(1) {
            for s in bucket {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if let Some(k) = self.simplex_index(&f) {
                        covered.insert(self.faces[f.len() - 1][k].as_slice());
                    }
                }
            }
        }
        self.iter_simplices().filter(|s| !covered.contains(s.as_slice())).cloned().collect()
    }

    /// Re-checks the stored representation: sorted labels, sorted simplices,
    /// in-range indices, and closure under faces.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for w in self.labels.windows(2) {
            if w[0] >= w[1] {
                issues.push(Issue::DuplicateVertex { vertex: w[1].clone() });
            }
        }
        let n = self.num_vertices();
        if self.count(0) != n {
            issues.push(Issue::Malformed { detail: "vertex list and 0-simplices differ".into() });
        }
        for (k, bucket) in self.faces.iter().enumerate() {
            for s in bucket {
                if s.len() != k + 1 || s.windows(2).any(|w| w[0] >= w[1]) {
                    issues.push(Issue::Malformed { detail: format!("bad simplex {s:?}") });
                    continue;
                }
                if let Some(&v) = s.iter().find(|&&v| v >= n) {
                    issues.push(Issue::DanglingVertex {
                        simplex: vec![format!("{s:?}")],
                        vertex: format!("#{v}"),
                    });
                    continue;
                }
                if k == 0 {
                    continue;
                }
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !self.contains(&f) {
                        issues.push(Issue::ClosureViolation {
                            simplex: self.simplex_labels(s),
                            missing_face: self.simplex_labels(&f),
                        });
                    }
                }
            }
        }
        ValidationReport { issues }
    }

    /// True iff every clique of the 1-skeleton spans a simplex.
    ///
    /// Every clique of size m+1 is a simplex σ of size m extended by a vertex
    /// above max σ, so it suffices to extend each simplex by its common
    /// neighbours above its largest vertex.
    pub fn is_flag(&self) -> bool {
        let adj = self.adjacency();
        for bucket in self.faces.iter().skip(1) {
            for s in bucket {
                let top = *s.last().unwrap();
                for &w in adj[s[0]].iter().filter(|&&w| w > top) {
                    if s[1..].iter().all(|&u| adj[u].binary_search(&w).is_ok()) {
                        let mut t = s.clone();
                        t.push(w);
                        if !self.contains(&t) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn link(&self, v: usize) -> SimplicialComplex {
        let mut vertices = HashSet::new();
        let mut all = HashSet::new();
        for s in self.iter_simplices().filter(|s| s.len() > 1 && s.contains(&v)) {
            let rest: Simplex = s.iter().copied().filter(|&u| u != v).collect();
            vertices.extend(rest.iter().copied());
            all.insert(rest);
        }
        self.restrict_to(vertices, all)
    }

    pub fn star(&self, v: usize) -> SimplicialComplex {
        let mut vertices = HashSet::new();
        let mut all = HashSet::new();
        for s in self.iter_simplices() {
            let mut with_v = s.clone();
            if !with_v.contains(&v) {
                with_v.push(v);
                with_v.sort_unstable();
            }
            if self.contains(&with_v) {
                vertices.extend(with_v.iter().copied());
                all.insert(s.clone());
            }
        }
        self.restrict_to(vertices, all)
    }

    pub fn link_of(&self, label: &str) -> Result<SimplicialComplex> {
        Ok(self.link(self.vertex_or_err(label)?))
    }

    pub fn star_of(&self, label: &str) -> Result<SimplicialComplex> {
        Ok(self.star(self.vertex_or_err(label)?))
    }

    /// Re-indexes a closed family of simplices on a vertex subset.
    fn restrict_to(&self, vertices: HashSet<usize>, all: HashSet<Simplex>) -> SimplicialComplex {
        let mut keep: Vec<usize> = vertices.into_iter().collect();
        keep.sort_unstable();
        let mut new_index = HashMap::with_capacity(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            new_index.insert(v, i);
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let mapped: HashSet<Simplex> = all
            .into_iter()
            .chain(keep.iter().map(|&v| vec![v]))
            .map(|s| s.iter().map(|v| new_index[v]).collect())
            .collect();
        Self::from_closed(labels, mapped)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_vertices()];
        let mut out = Vec::new();
        for start in 0..self.num_vertices() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connectivity of the 1-skeleton; the empty complex is not connected.
    pub fn is_connected(&self) -> bool {
        self.num_vertices() > 0 && self.components().len() == 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut touched = vec![false; self.num_vertices()];
        for e in self.simplices(1) {
            touched[e[0]] = true;
            touched[e[1]] = true;
        }
        (0..self.num_vertices()).filter(|&v| !touched[v]).collect()
    }

    /// No local cut points: every edge lies in a triangle and every vertex
    /// link is connected. Isolated vertices are outside the domain.
    pub fn has_nlcp(&self) -> Result<bool> {
        if let Some(&v) = self.isolated_vertices().first() {
            return Err(Error::IsolatedVertex(self.labels[v].clone()));
        }
        let mut in_triangle = vec![false; self.count(1)];
        for t in self.simplices(2) {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                in_triangle[self.simplex_index(&[a, b]).unwrap()] = true;
            }
        }
        if in_triangle.iter().any(|&x| !x) {
            return Ok(false);
        }
        Ok((0..self.num_vertices()).all(|v| self.link(v).is_connected()))
    }

    /// All simplices with every vertex in `vertices`.
    pub fn full_subcomplex(&self, vertices: &[usize]) -> SimplicialComplex {
        let keep: HashSet<usize> = vertices.iter().copied().collect();
        let all: HashSet<Simplex> = self
            .iter_simplices()
            .filter(|s| s.iter().all(|v| keep.contains(v)))
            .cloned()
            .collect();
        self.restrict_to(keep, all)
    }

    pub fn full_subcomplex_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SimplicialComplex> {
        let idx = labels
            .iter()
            .map(|l| self.vertex_or_err(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.full_subcomplex(&idx))
    }

    /// Whether `sub` (matched by labels) is a subcomplex of `self`.
    pub fn is_subcomplex(&self, sub: &SimplicialComplex) -> Result<bool> {
        let map = self.label_map(sub)?;
        Ok(sub.iter_simplices().all(|s| {
            let mut t: Simplex = s.iter().map(|&v| map[v]).collect();
            t.sort_unstable();
            self.contains(&t)
        }))
    }

    /// Whether `sub` equals the full subcomplex of `self` on its vertices.
    pub fn is_full(&self, sub: &SimplicialComplex) -> Result<bool> {
        let map = self.label_map(sub)?;
        Ok(self.full_subcomplex(&map) == *sub)
    }

    fn label_map(&self, sub: &SimplicialComplex) -> Result<Vec<usize>> {
        sub.labels.iter().map(|l| self.vertex_or_err(l)).collect()
    }

    /// Renames every vertex; the new names must be distinct.
    pub fn relabel<F: Fn(&str) -> String>(&self, f: F) -> Result<SimplicialComplex> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        Self::from_indexed(labels, self.maximal_simplices())
    }

    pub fn disjoint_union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let n = self.num_vertices();
        let labels = self.labels.iter().chain(other.labels.iter()).cloned().collect();
        let gens = self
            .maximal_simplices()
            .into_iter()
            .chain(other.maximal_simplices().into_iter().map(|s| s.iter().map(|v| v + n).collect()))
            .collect::<Vec<_>>();
        Self::from_indexed(labels, gens)
    }
}

/// A vertex map between two complexes, `map[v]` the image of source vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialMap {
    pub map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(map: Vec<usize>) -> Self {
        SimplicialMap { map }
    }

    pub fn identity(n: usize) -> Self {
        SimplicialMap { map: (0..n).collect() }
    }

    pub fn apply(&self, s: &[usize]) -> Simplex {
        let mut t: Simplex = s.iter().map(|&v| self.map[v]).collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    pub fn is_simplicial(&self, source: &SimplicialComplex, target: &SimplicialComplex) -> bool {
        self.map.len() == source.num_vertices()
            && self.map.iter().all(|&v| v < target.num_vertices())
            && source.iter_simplices().all(|s| target.contains(&self.apply(s)))
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &SimplicialMap) -> SimplicialMap {
        SimplicialMap { map: self.map.iter().map(|&v| then.map[v]).collect() }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.map.iter().all(|v| seen.insert(*v))
    }

    /// Subcomplex of `target` made of images of simplices of `source`.
    pub fn image(&self, source: &SimplicialComplex, target: &SimplicialComplex) -> SimplicialComplex {
        let vertices: HashSet<usize> = self.map.iter().copied().collect();
        let all: HashSet<Simplex> = source.iter_simplices().map(|s| self.apply(s)).collect();
        target.restrict_to(vertices, all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn c(vs: &[&str], ss: &[&[&str]]) -> SimplicialComplex {
        let ss: Vec<Vec<&str>> = ss.iter().map(|s| s.to_vec()).collect();
        SimplicialComplex::new(vs.iter().copied(), &ss).unwrap()
    }

    #[test]
    fn closure_and_counts() {
        let t = corpus::solid_triangle();
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
        assert!(t.validate().is_empty());
        assert_eq!(t.dimension(), 2);
        assert_eq!(SimplicialComplex::empty().dimension(), -1);
    }

    #[test]
    fn validate_reports() {
        let file = ComplexFile {
            vertices: vec!["1".into(), "2".into(), "3".into()],
            maximal_simplices: vec![],
            simplices: Some(vec![
                vec!["1".into(), "2".into(), "3".into()],
                vec!["1".into(), "3".into()],
                vec!["2".into(), "3".into()],
            ]),
        };
        let report = file.validate();
        assert_eq!(report.issues.len(), 1);
        assert!(matches!(&report.issues[0], Issue::ClosureViolation { missing_face, .. } if missing_face == &["1", "2"]));

        let dup = ComplexFile {
            vertices: vec!["a".into(), "a".into()],
            maximal_simplices: vec![],
            simplices: None,
        };
        assert_eq!(dup.validate().issues, vec![Issue::DuplicateVertex { vertex: "a".into() }]);

        let dangling = ComplexFile {
            vertices: vec!["a".into()],
            maximal_simplices: vec![vec!["a".into(), "b".into()]],
            simplices: None,
        };
        assert!(matches!(dangling.validate().issues[0], Issue::DanglingVertex { .. }));
        assert!(SimplicialComplex::from_file(&dangling).is_err());

        let oct = corpus::octahedron();
        assert!(oct.validate().is_empty());
        assert!(oct.to_file().validate().is_empty());
        assert_eq!(SimplicialComplex::from_file(&oct.to_file()).unwrap(), oct);
    }

    #[test]
    fn flag_examples() {
        assert!(!corpus::hollow_triangle().is_flag());
        assert!(corpus::square().is_flag());
        let k4 = c(
            &["1", "2", "3", "4"],
            &[&["1", "2", "3"], &["1", "2", "4"], &["1", "3", "4"], &["2", "3", "4"]],
        );
        assert!(!k4.is_flag());
        assert!(corpus::octahedron().is_flag());
        assert!(corpus::solid_triangle().is_flag());
    }

    #[test]
    fn links_and_stars() {
        let oct = corpus::octahedron();
        for v in 0..oct.num_vertices() {
            let l = oct.link(v);
            assert_eq!(l.f_vector(), vec![4, 4]);
            assert!(crate::iso::are_isomorphic(&l, &corpus::square()).is_found());
        }
        let t = corpus::solid_triangle();
        let l = t.link_of("1").unwrap();
        assert_eq!(l.labels(), &["2", "3"]);
        assert_eq!(l.f_vector(), vec![2, 1]);
        assert_eq!(t.star_of("1").unwrap(), t);

        let iso = c(&["x", "y"], &[]);
        assert_eq!(iso.link_of("x").unwrap().num_vertices(), 0);
        assert!(matches!(t.link_of("9"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn connectivity_and_euler() {
        let two = c(&["1", "2", "3", "4"], &[&["1", "2"], &["3", "4"]]);
        assert!(!two.is_connected());
        assert!(!SimplicialComplex::empty().is_connected());
        assert_eq!(corpus::octahedron().euler_characteristic(), 2);
        assert_eq!(two.components().len(), 2);
    }

    #[test]
    fn nlcp_examples() {
        assert_eq!(corpus::edge().has_nlcp(), Ok(false));
        assert_eq!(corpus::octahedron().has_nlcp(), Ok(true));
        assert_eq!(corpus::point().has_nlcp(), Err(Error::IsolatedVertex("v".into())));
    }

    #[test]
    fn full_subcomplexes() {
        let sq = corpus::square();
        let opp = sq.full_subcomplex_labels(&["1", "3"]).unwrap();
        assert_eq!(opp.f_vector(), vec![2]);
        assert!(sq.is_full(&opp).unwrap());

        let t = corpus::solid_triangle();
        let boundary = corpus::hollow_triangle();
        assert!(t.is_subcomplex(&boundary).unwrap());
        assert!(!t.is_full(&boundary).unwrap());
        assert!(matches!(sq.full_subcomplex_labels(&["9"]), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            SimplicialComplex::new(["a", "a"], &Vec::<Vec<&str>>::new()),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(matches!(
            SimplicialComplex::new(["a", "b"], &[vec!["a", "a"]]),
            Err(Error::RepeatedVertex { .. })
        ));
    }

    #[test]
    fn maps() {
        let sq = corpus::square();
        let id = SimplicialMap::identity(4);
        assert!(id.is_simplicial(&sq, &sq));
        assert_eq!(id.image(&sq, &sq), sq);
        let collapse = SimplicialMap::new(vec![0, 1, 0, 1]);
        assert!(collapse.is_simplicial(&sq, &sq));
        assert!(!collapse.is_injective());
    }
}
