//! Named complexes and presentations used throughout the tests and the CLI.

use crate::cell::{PolygonalComplex, Side};
use crate::complex::SimplicialComplex;
use crate::presentation::{DirectedLoop, Presentation, Word};

fn build(vertices: &[&str], simplices: &[&[&str]]) -> SimplicialComplex {
    let s: Vec<Vec<&str>> = simplices.iter().map(|x| x.to_vec()).collect();
    SimplicialComplex::new(vertices.iter().copied(), &s).expect("corpus complex is well formed")
}

pub fn point() -> SimplicialComplex {
    build(&["v"], &[])
}

pub fn edge() -> SimplicialComplex {
    build(&["v", "w"], &[&["v", "w"]])
}

pub fn path3() -> SimplicialComplex {
    build(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]])
}

/// The `n`-cycle on vertices `1..=n`.
pub fn cycle(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::from_indexed(labels, edges).unwrap()
}

pub fn square() -> SimplicialComplex {
    cycle(4)
}

pub fn hollow_triangle() -> SimplicialComplex {
    cycle(3)
}

pub fn solid_triangle() -> SimplicialComplex {
    build(&["1", "2", "3"], &[&["1", "2", "3"]])
}

/// Boundary of the cross-polytope, the join of three 0-spheres.
pub fn octahedron() -> SimplicialComplex {
    let mut tris = Vec::new();
    for x in ["x+", "x-"] {
        for y in ["y+", "y-"] {
            for z in ["z+", "z-"] {
                tris.push(vec![x, y, z]);
            }
        }
    }
    SimplicialComplex::new(["x+", "x-", "y+", "y-", "z+", "z-"], &tris).unwrap()
}

/// The 6-vertex real projective plane (half the icosahedron).
pub fn rp2_6() -> SimplicialComplex {
    build(
        &["1", "2", "3", "4", "5", "6"],
        &[
            &["1", "2", "3"],
            &["1", "3", "4"],
            &["1", "4", "5"],
            &["1", "5", "6"],
            &["1", "2", "6"],
            &["2", "3", "5"],
            &["3", "4", "6"],
            &["2", "4", "5"],
            &["3", "5", "6"],
            &["2", "4", "6"],
        ],
    )
}

/// Barycentric subdivision of [`rp2_6`]; a flag complex with 31 vertices.
pub fn rp2_barycentric() -> SimplicialComplex {
    rp2_6().barycentric_subdivision()
}

const HIGMAN_GENERATORS: [&str; 4] = ["a", "b", "c", "d"];

/// Relator words of `x^y = x²` for consecutive generators: `y⁻¹ x y x⁻¹ x⁻¹`.
fn higman_relators() -> Vec<Vec<i32>> {
    (0..4i32)
        .map(|i| {
            let x = i + 1;
            let y = (i + 1) % 4 + 1;
            vec![-y, x, y, -x, -x]
        })
        .collect()
}

/// Higman's group `⟨a,b,c,d : a^b = a², b^c = b², c^d = c², d^a = d²⟩`.
pub fn higman_presentation() -> Presentation {
    Presentation::new(
        HIGMAN_GENERATORS.iter().map(|s| s.to_string()).collect(),
        higman_relators().into_iter().map(Word::new).collect(),
    )
    .unwrap()
}

/// Presentation 2-complex of Higman's group: one vertex `o`, four loops,
/// four pentagons.
pub fn higman_polygonal() -> PolygonalComplex {
    let faces = higman_relators()
        .into_iter()
        .map(|r| r.into_iter().map(|l| Side { edge: l.unsigned_abs() as usize - 1, sign: l.signum() as i8 }).collect())
        .collect();
    PolygonalComplex::new(vec!["o".into()], vec![(0, 0); 4], faces).unwrap()
}

/// Barycentric subdivision of the first subdivision of [`higman_polygonal`]:
/// 97 vertices, 336 edges, 240 triangles.
pub fn higman_flag() -> SimplicialComplex {
    higman_polygonal()
        .subdivide()
        .and_then(|c| c.barycentric_subdivision())
        .expect("Higman subdivision is regular")
}

/// The four generator loops of [`higman_flag`], each running
/// `o → e<k>.0 → e<k> → e<k>.1 → o` along a subdivided edge. Together they
/// generate the fundamental group.
pub fn higman_generator_loops() -> Vec<DirectedLoop> {
    (0..4)
        .map(|k| {
            DirectedLoop::new(
                ["o".to_string(), format!("e{k}.0"), format!("e{k}"), format!("e{k}.1"), "o".to_string()].to_vec(),
            )
        })
        .collect()
}

/// The boundary loop `1 → 2 → … → n → 1` of [`cycle`].
pub fn cycle_loop(n: usize) -> DirectedLoop {
    DirectedLoop::new((1..=n).chain(std::iter::once(1)).map(|i| i.to_string()).collect())
}

pub fn free_group(rank: usize) -> Presentation {
    Presentation::new(letter_names(rank), Vec::new()).unwrap()
}

/// `⟨a | aⁿ⟩`
pub fn cyclic(n: usize) -> Presentation {
    Presentation::new(letter_names(1), vec![Word::new(vec![1; n])]).unwrap()
}

/// `⟨a, b | a², b², (ab)³⟩`
pub fn dihedral6() -> Presentation {
    Presentation::new(
        letter_names(2),
        vec![Word::new(vec![1, 1]), Word::new(vec![2, 2]), Word::new(vec![1, 2, 1, 2, 1, 2])],
    )
    .unwrap()
}

/// `a, b, c, …, z, x27, x28, …`
pub fn letter_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{}", i + 1) })
        .collect()
}

/// Every named complex in the corpus, with its file stem.
pub fn complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("point", point()),
        ("edge", edge()),
        ("path3", path3()),
        ("square", square()),
        ("pentagon", cycle(5)),
        ("solid_triangle", solid_triangle()),
        ("hollow_triangle", hollow_triangle()),
        ("octahedron", octahedron()),
        ("rp2_6", rp2_6()),
        ("rp2_barycentric", rp2_barycentric()),
        ("higman_flag", higman_flag()),
    ]
}

pub fn presentations() -> Vec<(&'static str, Presentation)> {
    vec![
        ("free1", free_group(1)),
        ("free2", free_group(2)),
        ("z2", cyclic(2)),
        ("z5", cyclic(5)),
        ("dihedral6", dihedral6()),
        ("higman", higman_presentation()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(octahedron().f_vector(), vec![6, 12, 8]);
        assert_eq!(rp2_6().f_vector(), vec![6, 15, 10]);
        assert_eq!(rp2_barycentric().f_vector(), vec![31, 90, 60]);
        assert_eq!(higman_flag().f_vector(), vec![97, 336, 240]);
        assert_eq!(higman_flag().euler_characteristic(), 1);
    }

    #[test]
    fn all_valid() {
        for (name, c) in complexes() {
            assert!(c.validate().is_empty(), "{name}");
        }
    }

    #[test]
    fn higman_loops_are_loops() {
        let h = higman_flag();
        for l in higman_generator_loops() {
            assert!(l.edges(&h).is_ok());
        }
    }
}
