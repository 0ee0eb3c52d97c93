//! The Salvetti complex `T_L`: one vertex and one `|σ|`-cube for every
//! simplex `σ` of a flag complex `L`, with opposite faces identified.
//!
//! The cube of `σ` has coordinates `x_v ∈ [0, 1]` for `v ∈ σ`; the Morse
//! function is `Σ x_v`, so the cube of an `(n-1)`-simplex spans heights
//! `[0, n]`. At the corner `x = c`, the direction of `v` is `v+` when
//! `c_v = 0` (leaving upwards) and `v-` when `c_v = 1`.

use serde::{Deserialize, Serialize};

use crate::cell::{PolygonalComplex, Side};
use crate::complex::{Simplex, SimplicialComplex};
use crate::constructions::{sphere_label, sphere_link, Sign};
use crate::error::{Error, Result};
use crate::homology::{cellular_homology, ChainComplex, HomologyProfile, IntegerMatrix, Ring};
use crate::iso::{are_isomorphic, is_isomorphism, IsoOutcome};
use crate::presentation::{Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetSide {
    /// `x_v = 0`
    Bottom,
    /// `x_v = 1`
    Top,
}

/// A facet of a cube: the cell one dimension down, which side, and its
/// coefficient in the cellular boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub cell: usize,
    pub side: FacetSide,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalvettiComplex {
    base: SimplicialComplex,
    /// `cells[k]` lists the `(k-1)`-simplices, i.e. the `k`-cubes.
    cells: Vec<Vec<Simplex>>,
}

/// Builds `T_L`; `L` must be flag.
pub fn salvetti(l: &SimplicialComplex) -> Result<SalvettiComplex> {
    if !l.is_flag() {
        return Err(Error::NotFlag);
    }
    let mut cells = vec![vec![Vec::new()]];
    for k in 0..l.f_vector().len() {
        cells.push(l.simplices(k).to_vec());
    }
    Ok(SalvettiComplex { base: l.clone(), cells })
}

impl SalvettiComplex {
    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn count(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, Vec::len)
    }

    pub fn cells(&self, k: usize) -> &[Simplex] {
        &self.cells[k]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Width of the height interval covered by a `k`-cube.
    pub fn height_span(&self, k: usize) -> usize {
        k
    }

    /// Deleting the `i`-th vertex of the sorted simplex gives the pair of
    /// facets `x_v = 1` and `x_v = 0`, entering with `(-1)^i` and `-(-1)^i`.
    pub fn facets(&self, k: usize, j: usize) -> Vec<Facet> {
        let s = &self.cells[k][j];
        let mut out = Vec::with_capacity(2 * s.len());
        for i in 0..s.len() {
            let mut t = s.clone();
            t.remove(i);
            let cell = if t.is_empty() { 0 } else { self.base.simplex_index(&t).expect("closed complex") };
            let sign: i8 = if i % 2 == 0 { 1 } else { -1 };
            out.push(Facet { cell, side: FacetSide::Top, sign });
            out.push(Facet { cell, side: FacetSide::Bottom, sign: -sign });
        }
        out
    }

    /// `∂_k : C_k → C_{k-1}` for `k = 1..=dim`, summed honestly over facets.
    pub fn boundary_matrices(&self) -> Vec<IntegerMatrix> {
        (1..=self.dimension())
            .map(|k| {
                let entries = (0..self.count(k))
                    .flat_map(|j| self.facets(k, j).into_iter().map(move |f| (f.cell, j, f.sign as i64)));
                IntegerMatrix::from_triplets(self.count(k - 1), self.count(k), entries)
            })
            .collect()
    }

    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let b = self.boundary_matrices();
        if b.is_empty() {
            return Ok(ChainComplex::single(1, 0));
        }
        ChainComplex::new(b)
    }

    pub fn to_file(&self) -> SalvettiFile {
        let offsets: Vec<usize> = self
            .cells
            .iter()
            .scan(0, |acc, c| {
                let start = *acc;
                *acc += c.len();
                Some(start)
            })
            .collect();
        let mut cells = Vec::new();
        for k in 0..self.cells.len() {
            for j in 0..self.count(k) {
                let facets = if k == 0 {
                    Vec::new()
                } else {
                    self.facets(k, j)
                        .into_iter()
                        .map(|f| Facet { cell: offsets[k - 1] + f.cell, ..f })
                        .collect()
                };
                cells.push(CubeRecord {
                    id: offsets[k] + j,
                    dimension: k,
                    simplex: self.base.simplex_labels(&self.cells[k][j]),
                    facets,
                });
            }
        }
        SalvettiFile { cells }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeRecord {
    pub id: usize,
    pub dimension: usize,
    pub simplex: Vec<String>,
    pub facets: Vec<Facet>,
}

/// Cells in order of dimension, facets referring to global ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SalvettiFile {
    pub cells: Vec<CubeRecord>,
}

/// Cellular homology of `T_L`, after checking that every boundary map is zero.
pub fn salvetti_homology(l: &SimplicialComplex) -> Result<HomologyProfile> {
    let t = salvetti(l)?;
    let b = t.boundary_matrices();
    if let Some(k) = b.iter().position(|m| !m.is_zero()) {
        return Err(Error::Inconsistent(format!("Salvetti boundary ∂_{} is not zero", k + 1)));
    }
    if b.is_empty() {
        return Ok(crate::homology::chain_homology(&ChainComplex::single(1, 0), Ring::Z));
    }
    cellular_homology(&b, Ring::Z)
}

/// The corner complex at the vertex: every corner `c` of the cube of `σ`
/// spans the simplex `{v± : v ∈ σ}` with signs read off `c`.
pub fn vertex_link(t: &SalvettiComplex) -> SimplicialComplex {
    let l = &t.base;
    let mut labels = Vec::with_capacity(2 * l.num_vertices());
    for v in 0..l.num_vertices() {
        labels.push(sphere_label(l.label(v), Sign::Plus));
        labels.push(sphere_label(l.label(v), Sign::Minus));
    }
    let mut simplices = Vec::new();
    for k in 1..t.cells.len() {
        for s in &t.cells[k] {
            for corner in 0u64..(1 << s.len()) {
                simplices.push(
                    s.iter().enumerate().map(|(i, &v)| 2 * v + (corner >> i & 1) as usize).collect::<Vec<_>>(),
                );
            }
        }
    }
    SimplicialComplex::from_indexed(labels, simplices).expect("corner simplices are well formed")
}

fn signed_part(t: &SalvettiComplex, sign: Sign) -> SimplicialComplex {
    let link = vertex_link(t);
    let offset = if sign == Sign::Plus { 0 } else { 1 };
    let vs: Vec<usize> = (0..t.base.num_vertices()).map(|v| 2 * v + offset).collect();
    link.full_subcomplex(&vs)
}

/// Directions in which the Morse function increases: the `v+` vertices.
pub fn ascending_link(t: &SalvettiComplex) -> SimplicialComplex {
    signed_part(t, Sign::Plus)
}

/// Directions in which the Morse function decreases: the `v-` vertices.
pub fn descending_link(t: &SalvettiComplex) -> SimplicialComplex {
    signed_part(t, Sign::Minus)
}

/// Isomorphisms `vertex_link ≅ S(L)`, `ascending ≅ L`, `descending ≅ L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkWitnesses {
    pub vertex: Vec<usize>,
    pub ascending: Vec<usize>,
    pub descending: Vec<usize>,
}

/// Tries the map matching vertex names first and searches only if it fails.
fn witness(a: &SimplicialComplex, b: &SimplicialComplex, name: impl Fn(&str) -> String) -> Option<Vec<usize>> {
    let by_name: Option<Vec<usize>> = (0..a.num_vertices()).map(|v| b.vertex(&name(a.label(v)))).collect();
    if let Some(m) = by_name.filter(|m| is_isomorphism(a, b, m)) {
        return Some(m);
    }
    match are_isomorphic(a, b) {
        IsoOutcome::Found(m) => Some(m),
        _ => None,
    }
}

pub fn link_witnesses(t: &SalvettiComplex) -> Result<LinkWitnesses> {
    let l = &t.base;
    let strip = |s: &str| s[..s.len() - 1].to_string();
    let vertex = witness(&vertex_link(t), &sphere_link(l), str::to_string)
        .ok_or_else(|| Error::Inconsistent("vertex link is not S(L)".into()))?;
    let ascending = witness(&ascending_link(t), l, strip)
        .ok_or_else(|| Error::Inconsistent("ascending link is not L".into()))?;
    let descending = witness(&descending_link(t), l, strip)
        .ok_or_else(|| Error::Inconsistent("descending link is not L".into()))?;
    Ok(LinkWitnesses { vertex, ascending, descending })
}

/// `X₀/BB_L` for `dim L ≤ 2`, its homology and the presentation read off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSet {
    pub complex: PolygonalComplex,
    pub homology: HomologyProfile,
    pub presentation: Presentation,
}

/// One vertex, a loop for each edge of `L`, and for each triangle
/// `x < y < z` the faces `(x,y)(y,z)(x,z)⁻¹` and `(x,y)⁻¹(y,z)⁻¹(x,z)`.
pub fn level_set_complex(l: &SimplicialComplex) -> Result<LevelSet> {
    if l.dimension() > 2 {
        return Err(Error::DimensionTooLarge { found: l.dimension() as usize, max: 2 });
    }
    let edges = vec![(0, 0); l.count(1)];
    let edge = |a: usize, b: usize| l.simplex_index(&[a, b]).expect("face of a triangle");
    let side = |e: usize, sign: i8| Side { edge: e, sign };
    let mut faces = Vec::new();
    for t in l.simplices(2) {
        let (a, b, c) = (edge(t[0], t[1]), edge(t[1], t[2]), edge(t[0], t[2]));
        faces.push(vec![side(a, 1), side(b, 1), side(c, -1)]);
        faces.push(vec![side(a, -1), side(b, -1), side(c, 1)]);
    }
    let complex = PolygonalComplex::new(vec!["o".into()], edges, faces)?;
    let homology = complex.homology(Ring::Z, false);
    let generators = l.simplices(1).iter().map(|e| format!("({},{})", l.label(e[0]), l.label(e[1]))).collect();
    let relators = complex
        .faces()
        .iter()
        .map(|f| Word::new(f.iter().map(|s| (s.edge as i32 + 1) * s.sign as i32).collect()))
        .collect();
    let presentation = Presentation::new(generators, relators)?;
    Ok(LevelSet { complex, homology, presentation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::presentation::{bb_presentation, HeightSet};

    #[test]
    fn small_salvetti_complexes() {
        let t = salvetti(&corpus::point()).unwrap();
        assert_eq!((t.count(0), t.count(1)), (1, 1));
        let t = salvetti(&corpus::edge()).unwrap();
        assert_eq!((t.count(0), t.count(1), t.count(2)), (1, 2, 1));
        assert_eq!(t.facets(2, 0).len(), 4);
        let t = salvetti(&corpus::square()).unwrap();
        assert_eq!((t.count(0), t.count(1), t.count(2)), (1, 4, 4));
        assert_eq!(salvetti(&corpus::hollow_triangle()), Err(Error::NotFlag));
    }

    #[test]
    fn homology_ranks() {
        assert_eq!(salvetti_homology(&corpus::point()).unwrap().ranks(), vec![1, 1]);
        assert_eq!(salvetti_homology(&corpus::edge()).unwrap().ranks(), vec![1, 2, 1]);
        assert_eq!(salvetti_homology(&corpus::square()).unwrap().ranks(), vec![1, 4, 4]);
        assert_eq!(salvetti_homology(&corpus::solid_triangle()).unwrap().ranks(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn links() {
        let t = salvetti(&corpus::edge()).unwrap();
        assert!(are_isomorphic(&vertex_link(&t), &corpus::cycle(4)).is_found());
        let t = salvetti(&corpus::solid_triangle()).unwrap();
        assert!(are_isomorphic(&vertex_link(&t), &corpus::octahedron()).is_found());
        let t = salvetti(&corpus::octahedron()).unwrap();
        let w = link_witnesses(&t).unwrap();
        assert_eq!(w.ascending.len(), 6);
        assert!(are_isomorphic(&ascending_link(&t), &corpus::octahedron()).is_found());
    }

    #[test]
    fn level_sets() {
        let tri = level_set_complex(&corpus::solid_triangle()).unwrap();
        assert_eq!(tri.homology.ranks(), vec![1, 2, 1]);
        assert_eq!(tri.complex.euler_characteristic(), 0);
        let sq = level_set_complex(&corpus::square()).unwrap();
        assert_eq!(sq.homology.ranks(), vec![1, 4, 0]);
        let bb = bb_presentation(&corpus::rp2_barycentric(), &[], &HeightSet::new([0])).unwrap();
        assert_eq!(level_set_complex(&corpus::rp2_barycentric()).unwrap().presentation, bb.presentation);
        let tet = SimplicialComplex::new(["1", "2", "3", "4"], &[vec!["1", "2", "3", "4"]]).unwrap();
        assert_eq!(level_set_complex(&tet).map(|_| ()), Err(Error::DimensionTooLarge { found: 3, max: 2 }));
    }

    #[test]
    fn file_lists_cells() {
        let f = salvetti(&corpus::edge()).unwrap().to_file();
        assert_eq!(f.cells.len(), 4);
        assert_eq!(f.cells[3].facets.iter().filter(|x| x.cell == 1).count(), 2);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<SalvettiFile>(&json).unwrap(), f);
    }
}
