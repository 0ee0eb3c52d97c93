//! Polygonal 2-complexes, regular cell complexes given by their face posets,
//! and the subdivisions that turn them into flag simplicial complexes.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{self, ChainComplex, HomologyProfile, IntegerMatrix, Ring};

/// A face side: edge index and traversal sign (+1 along, -1 against).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub edge: usize,
    pub sign: i8,
}

/// 2-complex with loops and multi-edges allowed; each face is a cyclic word
/// in directed edges. An empty face word is a 2-cell attached along a constant map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonalComplex {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<Side>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonalFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub faces: Vec<Vec<(EdgeRef, i8)>>,
}

/// Face entries name an edge either by index or as `"e<index>"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeRef {
    Index(usize),
    Name(String),
}

impl EdgeRef {
    fn resolve(&self) -> Result<usize> {
        match self {
            EdgeRef::Index(i) => Ok(*i),
            EdgeRef::Name(s) => s
                .strip_prefix('e')
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| Error::MalformedPolygon(format!("bad edge reference `{s}`"))),
        }
    }
}

fn side_endpoints(edges: &[(usize, usize)], s: Side) -> (usize, usize) {
    let (a, b) = edges[s.edge];
    if s.sign > 0 {
        (a, b)
    } else {
        (b, a)
    }
}

impl PolygonalComplex {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>, faces: Vec<Vec<Side>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        for &(a, b) in &edges {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(Error::MalformedPolygon(format!("edge ({a},{b}) out of range")));
            }
        }
        for (f, word) in faces.iter().enumerate() {
            for s in word {
                if s.edge >= edges.len() || (s.sign != 1 && s.sign != -1) {
                    return Err(Error::MalformedPolygon(format!("face {f}: bad side {s:?}")));
                }
            }
            for i in 0..word.len() {
                let (_, head) = side_endpoints(&edges, word[i]);
                let (tail, _) = side_endpoints(&edges, word[(i + 1) % word.len()]);
                if head != tail {
                    return Err(Error::MalformedPolygon(format!("face {f} is not a closed edge path at side {i}")));
                }
            }
        }
        Ok(PolygonalComplex { vertices, edges, faces })
    }

    /// (tail, head) of a directed side.
    pub fn endpoints(&self, s: Side) -> (usize, usize) {
        side_endpoints(&self.edges, s)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<Side>] {
        &self.faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn from_file(file: &PolygonalFile) -> Result<Self> {
        let lookup = |l: &str| {
            file.vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::UnknownVertex(l.to_string()))
        };
        let edges = file
            .edges
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let faces = file
            .faces
            .iter()
            .map(|w| w.iter().map(|(e, s)| Ok(Side { edge: e.resolve()?, sign: *s })).collect())
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.vertices.clone(), edges, faces)
    }

    pub fn to_file(&self) -> PolygonalFile {
        PolygonalFile {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.vertices[a].clone(), self.vertices[b].clone()])
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|w| w.iter().map(|s| (EdgeRef::Name(format!("e{}", s.edge)), s.sign)).collect())
                .collect(),
        }
    }

    /// Cellular boundary maps `∂₁` (vertices × edges) and `∂₂` (edges × faces).
    pub fn chain_complex(&self) -> ChainComplex {
        let mut d1 = vec![vec![0i64; self.edges.len()]; self.vertices.len()];
        for (j, &(a, b)) in self.edges.iter().enumerate() {
            d1[b][j] += 1;
            d1[a][j] -= 1;
        }
        let mut d2 = vec![vec![0i64; self.faces.len()]; self.edges.len()];
        for (j, w) in self.faces.iter().enumerate() {
            for s in w {
                d2[s.edge][j] += s.sign as i64;
            }
        }
        ChainComplex::new(vec![
            IntegerMatrix::from_rows_i64(self.vertices.len(), self.edges.len(), &d1),
            IntegerMatrix::from_rows_i64(self.edges.len(), self.faces.len(), &d2),
        ])
        .expect("polygonal boundary maps compose to zero")
    }

    pub fn homology(&self, ring: Ring, reduced: bool) -> HomologyProfile {
        let cc = self.chain_complex();
        let cc = if reduced { cc.augmented() } else { cc };
        homology::chain_homology(&cc, ring)
    }

    /// First barycentric subdivision: one new vertex per edge and per face,
    /// each n-gon split into 2n triangles around its centre.
    ///
    /// The result is a regular cell complex whose cells are triangles, but
    /// it is simplicial only when no two cells share a vertex set (faces
    /// through one vertex several times, as in presentation complexes, are not).
    pub fn subdivide(&self) -> Result<CellComplex> {
        let mut cx = CellComplex::default();
        let vertex_cells: Vec<usize> = self.vertices.iter().map(|v| cx.add(v.clone(), vec![])).collect();
        let mids: Vec<usize> = (0..self.edges.len()).map(|e| cx.add(format!("e{e}"), vec![])).collect();
        // halves[e] = (cell touching the tail, cell touching the head)
        let halves: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| {
                let h0 = cx.add(format!("e{e}.0"), vec![vertex_cells[a], mids[e]]);
                let h1 = cx.add(format!("e{e}.1"), vec![mids[e], vertex_cells[b]]);
                (h0, h1)
            })
            .collect();
        for (f, word) in self.faces.iter().enumerate() {
            if word.is_empty() {
                return Err(Error::MalformedPolygon(format!("face {f} has an empty boundary word")));
            }
            let centre = cx.add(format!("f{f}"), vec![]);
            let corners: Vec<usize> = (0..word.len())
                .map(|i| {
                    let (tail, _) = self.endpoints(word[i]);
                    cx.add(format!("f{f}.c{i}"), vec![centre, vertex_cells[tail]])
                })
                .collect();
            for (i, &side) in word.iter().enumerate() {
                let spoke = cx.add(format!("f{f}.s{i}"), vec![centre, mids[side.edge]]);
                let (near_tail, near_head) = if side.sign > 0 {
                    halves[side.edge]
                } else {
                    (halves[side.edge].1, halves[side.edge].0)
                };
                let next = corners[(i + 1) % word.len()];
                cx.add(format!("f{f}.t{i}.0"), vec![corners[i], spoke, near_tail]);
                cx.add(format!("f{f}.t{i}.1"), vec![spoke, next, near_head]);
            }
        }
        Ok(cx)
    }
}

/// A regular cell complex recorded by its face poset: every cell lists its
/// codimension-one faces. Cells are named; the names label the vertices of
/// the barycentric subdivision.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellComplex {
    names: Vec<String>,
    dims: Vec<usize>,
    facets: Vec<Vec<usize>>,
}

impl CellComplex {
    /// Adds a cell; its dimension is one more than its facets' (0 if none).
    pub fn add(&mut self, name: String, facets: Vec<usize>) -> usize {
        let dim = facets.first().map(|&f| self.dims[f] + 1).unwrap_or(0);
        debug_assert!(facets.iter().all(|&f| self.dims[f] + 1 == dim));
        self.names.push(name);
        self.dims.push(dim);
        self.facets.push(facets);
        self.names.len() - 1
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, c: usize) -> &str {
        &self.names[c]
    }

    pub fn dim_of(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn facets(&self, c: usize) -> &[usize] {
        &self.facets[c]
    }

    pub fn count(&self, k: usize) -> usize {
        self.dims.iter().filter(|&&d| d == k).count()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dims.iter().copied().max().map(|d| d + 1).unwrap_or(0);
        (0..top).map(|k| self.count(k)).collect()
    }

    /// Vertex cells under a cell.
    pub fn vertex_set(&self, c: usize) -> Vec<usize> {
        let mut out = HashSet::new();
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            if self.dims[x] == 0 {
                out.insert(x);
            } else {
                stack.extend(self.facets[x].iter().copied());
            }
        }
        let mut v: Vec<usize> = out.into_iter().collect();
        v.sort_unstable();
        v
    }

    pub fn from_simplicial(c: &SimplicialComplex) -> CellComplex {
        let mut cx = CellComplex::default();
        let mut ids: Vec<Vec<usize>> = Vec::new();
        for k in 0..c.f_vector().len() {
            let mut row = Vec::with_capacity(c.count(k));
            for s in c.simplices(k) {
                let facets = if k == 0 {
                    vec![]
                } else {
                    (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            ids[k - 1][c.simplex_index(&f).unwrap()]
                        })
                        .collect()
                };
                let name = if k == 0 {
                    c.label(s[0]).to_string()
                } else {
                    format!("{{{}}}", c.simplex_labels(s).join(","))
                };
                row.push(cx.add(name, facets));
            }
            ids.push(row);
        }
        cx
    }

    /// The complex as a simplicial complex, when every cell is a simplex
    /// determined by its vertex set.
    pub fn to_simplicial(&self) -> Result<SimplicialComplex> {
        let vertex_ids: Vec<usize> = (0..self.len()).filter(|&c| self.dims[c] == 0).collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &c) in vertex_ids.iter().enumerate() {
            pos[c] = i;
        }
        let mut seen: HashSet<Simplex> = HashSet::new();
        let mut gens = Vec::new();
        for c in 0..self.len() {
            let vs: Simplex = self.vertex_set(c).iter().map(|&v| pos[v]).collect();
            if vs.len() != self.dims[c] + 1 || !seen.insert(vs.clone()) {
                return Err(Error::Inconsistent(format!(
                    "cell `{}` is not a simplex determined by its vertices",
                    self.names[c]
                )));
            }
            gens.push(vs);
        }
        let labels = vertex_ids.iter().map(|&c| self.names[c].clone()).collect();
        SimplicialComplex::from_indexed(labels, gens)
    }

    /// Order complex of the face poset: one vertex per cell, one simplex per
    /// chain of cells under the face relation.
    pub fn barycentric_subdivision(&self) -> Result<SimplicialComplex> {
        let mut is_facet = vec![false; self.len()];
        for fs in &self.facets {
            for &f in fs {
                is_facet[f] = true;
            }
        }
        let mut chains = Vec::new();
        let mut stack: Vec<Vec<usize>> =
            (0..self.len()).filter(|&c| !is_facet[c]).map(|c| vec![c]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            if self.facets[last].is_empty() {
                chains.push(chain);
            } else {
                for &f in &self.facets[last] {
                    let mut next = chain.clone();
                    next.push(f);
                    stack.push(next);
                }
            }
        }
        SimplicialComplex::from_indexed(self.names.clone(), chains)
    }
}

impl SimplicialComplex {
    /// Vertices are the simplices of `self`, simplices are inclusion chains.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        CellComplex::from_simplicial(self)
            .barycentric_subdivision()
            .expect("simplex names are distinct")
    }
}

/// Subdivides a polygonal complex into a simplicial complex via its first
/// barycentric subdivision; fails when that subdivision is not yet simplicial.
pub fn subdivide_polygonal(p: &PolygonalComplex) -> Result<SimplicialComplex> {
    p.subdivide()?.to_simplicial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn square_face() -> PolygonalComplex {
        let vs = ["a", "b", "c", "d"].map(String::from).to_vec();
        let edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        let face = (0..4).map(|e| Side { edge: e, sign: 1 }).collect();
        PolygonalComplex::new(vs, edges, vec![face]).unwrap()
    }

    #[test]
    fn square_subdivides_simplicially() {
        let s = subdivide_polygonal(&square_face()).unwrap();
        assert_eq!(s.f_vector(), vec![9, 16, 8]);
        assert!(s.validate().is_empty());
    }

    #[test]
    fn higman_first_subdivision_counts() {
        let h = corpus::higman_polygonal();
        let sd = h.subdivide().unwrap();
        // V' = 1 + 4 + 4, E' = 2·4 + 4·(2·5), T' = 4·(2·5)
        assert_eq!(sd.f_vector(), vec![9, 48, 40]);
        assert!(sd.to_simplicial().is_err());
        let per_face = sd.count(2) / h.faces().len();
        assert_eq!(per_face, 10);
    }

    #[test]
    fn barycentric_of_triangle() {
        let b = corpus::solid_triangle().barycentric_subdivision();
        assert_eq!(b.f_vector(), vec![7, 12, 6]);
        assert!(b.is_flag());
        assert!(corpus::hollow_triangle().barycentric_subdivision().is_flag());
    }

    #[test]
    fn malformed_faces_rejected() {
        let vs = ["a", "b"].map(String::from).to_vec();
        let r = PolygonalComplex::new(vs.clone(), vec![(0, 1)], vec![vec![Side { edge: 0, sign: 1 }]]);
        assert!(matches!(r, Err(Error::MalformedPolygon(_))));
        let empty = PolygonalComplex::new(vs, vec![(0, 1)], vec![vec![]]).unwrap();
        assert!(empty.subdivide().is_err());
    }

    #[test]
    fn file_round_trip() {
        let h = corpus::higman_polygonal();
        let json = serde_json::to_string(&h.to_file()).unwrap();
        let back: PolygonalFile = serde_json::from_str(&json).unwrap();
        assert_eq!(PolygonalComplex::from_file(&back).unwrap(), h);
        let by_index: PolygonalFile = serde_json::from_str(
            r#"{"vertices":["p"],"edges":[["p","p"]],"faces":[[[0,1],[0,1]]]}"#,
        )
        .unwrap();
        assert_eq!(PolygonalComplex::from_file(&by_index).unwrap().faces()[0].len(), 2);
    }
}
