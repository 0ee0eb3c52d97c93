//! Complexes built from a flag complex `L`: the sphere link `S(L)`, the
//! nlcp repairs `N(L)` and `M(L)`, finite covers from permutation voltages,
//! the pullback square and opposite pairs in covers of `S(L)`.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexFile, Simplex, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::iso::{self, IsoOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn suffix(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

pub fn sphere_label(label: &str, sign: Sign) -> String {
    format!("{label}{}", sign.suffix())
}

/// Splits `v+` / `v-` into the base label and sign.
pub fn parse_sphere_label(label: &str) -> Option<(&str, Sign)> {
    if let Some(base) = label.strip_suffix('+') {
        Some((base, Sign::Plus))
    } else {
        label.strip_suffix('-').map(|base| (base, Sign::Minus))
    }
}

/// `S(L)`: vertices `v+`, `v-`; `{v₀^ε₀, …, v_k^ε_k}` is a simplex iff the
/// `vᵢ` are distinct and span a simplex of `L`.
pub fn sphere_link(l: &SimplicialComplex) -> SimplicialComplex {
    sphere_link_with_origin(l).0
}

/// `S(L)` together with the `(vertex of L, sign)` behind each vertex.
pub fn sphere_link_with_origin(l: &SimplicialComplex) -> (SimplicialComplex, Vec<(usize, Sign)>) {
    let n = l.num_vertices();
    let labels: Vec<String> = (0..n)
        .flat_map(|v| [sphere_label(l.label(v), Sign::Plus), sphere_label(l.label(v), Sign::Minus)])
        .collect();
    let mut gens = Vec::new();
    for s in l.maximal_simplices() {
        for mask in 0u64..(1 << s.len()) {
            gens.push(s.iter().enumerate().map(|(i, &v)| 2 * v + ((mask >> i) & 1) as usize).collect());
        }
    }
    let sl = SimplicialComplex::from_indexed(labels, gens).expect("sphere labels are distinct");
    let mut origin = vec![(0, Sign::Plus); sl.num_vertices()];
    for v in 0..n {
        for sign in [Sign::Plus, Sign::Minus] {
            origin[sl.vertex(&sphere_label(l.label(v), sign)).unwrap()] = (v, sign);
        }
    }
    (sl, origin)
}

/// The opposite vertex `v∓` of `v±` in a sphere link.
pub fn sphere_partner(sl: &SimplicialComplex, x: usize) -> Option<usize> {
    let (base, sign) = parse_sphere_label(sl.label(x))?;
    sl.vertex(&sphere_label(base, sign.flip()))
}

/// The projection `v^ε ↦ v` from `S(L)` to `L`.
pub fn sphere_projection(l: &SimplicialComplex, sl: &SimplicialComplex) -> Result<SimplicialMap> {
    let map = (0..sl.num_vertices())
        .map(|x| {
            let (base, _) = parse_sphere_label(sl.label(x))
                .ok_or_else(|| Error::InvalidMap(format!("`{}` is not a sphere-link vertex", sl.label(x))))?;
            l.vertex_or_err(base)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap::new(map))
}

/// A choice of sign for every vertex of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignFunction {
    pub signs: Vec<Sign>,
}

impl SignFunction {
    pub fn constant(n: usize, sign: Sign) -> Self {
        SignFunction { signs: vec![sign; n] }
    }

    pub fn alternating(n: usize) -> Self {
        SignFunction { signs: (0..n).map(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus }).collect() }
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        SignFunction { signs: (0..n).map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }).collect() }
    }
}

/// The section `v ↦ v^{g(v)}` of the projection `S(L) → L`.
pub fn retraction_section(l: &SimplicialComplex, sl: &SimplicialComplex, g: &SignFunction) -> Result<SimplicialMap> {
    if g.signs.len() != l.num_vertices() {
        return Err(Error::InvalidMap(format!(
            "sign function has {} entries for {} vertices",
            g.signs.len(),
            l.num_vertices()
        )));
    }
    let map = (0..l.num_vertices())
        .map(|v| sl.vertex_or_err(&sphere_label(l.label(v), g.signs[v])))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap::new(map))
}

fn simplex_label(l: &SimplicialComplex, s: &[usize]) -> String {
    format!("[{}]", l.simplex_labels(s).join(","))
}

/// For each simplex (as `(dim, index)`), the simplices one dimension up that contain it.
fn cofaces(l: &SimplicialComplex) -> Vec<Vec<Vec<usize>>> {
    let f = l.f_vector();
    let mut up: Vec<Vec<Vec<usize>>> = f.iter().map(|&c| vec![Vec::new(); c]).collect();
    for k in 1..f.len() {
        for (j, s) in l.simplices(k).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                up[k - 1][l.simplex_index(&face).unwrap()].push(j);
            }
        }
    }
    up
}

/// The complex `N(L)`: vertices are those of `L` together with the
/// simplices of `L`; `{v₀,…,v_k, σ_{k+1},…,σ_n}` is a simplex when the `vᵢ`
/// span a simplex, the `σⱼ` form a chain and every `vᵢ` lies in every `σⱼ`.
pub fn mapping_cylinder_n(l: &SimplicialComplex) -> Result<SimplicialComplex> {
    if let Some(&v) = l.isolated_vertices().first() {
        return Err(Error::IsolatedVertex(l.label(v).to_string()));
    }
    let n = l.num_vertices();
    let f = l.f_vector();
    let mut offset = vec![n; f.len() + 1];
    for k in 0..f.len() {
        offset[k + 1] = offset[k] + f[k];
    }
    let mut labels: Vec<String> = l.labels().to_vec();
    for k in 0..f.len() {
        labels.extend(l.simplices(k).iter().map(|s| simplex_label(l, s)));
    }
    let up = cofaces(l);
    let mut gens = Vec::new();
    for k in 0..f.len() {
        for (j, s) in l.simplices(k).iter().enumerate() {
            // saturated chains from s to a maximal simplex
            let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(k, j, vec![offset[k] + j])];
            while let Some((dim, idx, chain)) = stack.pop() {
                if dim + 1 >= f.len() || up[dim][idx].is_empty() {
                    let mut g: Vec<usize> = s.clone();
                    g.extend(chain);
                    gens.push(g);
                    continue;
                }
                for &c in &up[dim][idx] {
                    let mut next = chain.clone();
                    next.push(offset[dim + 1] + c);
                    stack.push((dim + 1, c, next));
                }
            }
        }
    }
    SimplicialComplex::from_indexed(labels, gens)
}

/// `M(L)` with the inclusion of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NlcpRepair {
    pub complex: SimplicialComplex,
    pub embedding: SimplicialMap,
}

/// `M(L)`: the full subcomplex of `N(L)` on the vertices of `L` and the
/// vertices standing for 0- and 1-simplices.
pub fn nlcp_repair_m(l: &SimplicialComplex) -> Result<NlcpRepair> {
    let nl = mapping_cylinder_n(l)?;
    let mut keep: Vec<usize> = (0..l.num_vertices()).map(|v| nl.vertex(l.label(v)).unwrap()).collect();
    for k in 0..2 {
        keep.extend(l.simplices(k).iter().map(|s| nl.vertex(&simplex_label(l, s)).unwrap()));
    }
    let complex = nl.full_subcomplex(&keep);
    let embedding = SimplicialMap::new((0..l.num_vertices()).map(|v| complex.vertex(l.label(v)).unwrap()).collect());
    Ok(NlcpRepair { complex, embedding })
}

/// A permutation of `{0..d}` as its image list.
pub type Perm = Vec<usize>;

pub fn perm_identity(d: usize) -> Perm {
    (0..d).collect()
}

/// `p` then `q`.
pub fn perm_then(p: &[usize], q: &[usize]) -> Perm {
    p.iter().map(|&i| q[i]).collect()
}

pub fn perm_inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn is_perm(p: &[usize], d: usize) -> bool {
    let mut seen = vec![false; d];
    p.len() == d && p.iter().all(|&i| i < d && !std::mem::replace(&mut seen[i], true))
}

/// Permutations on the directed edges of `L`, stored for both directions.
/// Edges left unspecified carry the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageAssignment {
    degree: usize,
    perms: BTreeMap<(usize, usize), Perm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoltageFile {
    pub degree: usize,
    pub edges: Vec<VoltageEdge>,
}

/// `perm` lists 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoltageEdge {
    pub from: String,
    pub to: String,
    pub perm: Vec<usize>,
}

impl VoltageAssignment {
    pub fn trivial(degree: usize) -> Self {
        VoltageAssignment { degree, perms: BTreeMap::new() }
    }

    /// Checks the inverse condition on each edge and the cocycle condition
    /// `ρ_xy ∘ ρ_yz = ρ_xz` on each triangle.
    pub fn new(l: &SimplicialComplex, degree: usize, directed: Vec<((usize, usize), Perm)>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidVoltage("degree must be positive".into()));
        }
        let mut perms: BTreeMap<(usize, usize), Perm> = BTreeMap::new();
        for ((x, y), p) in directed {
            let name = format!("({}, {})", label_or(l, x), label_or(l, y));
            if x >= l.num_vertices() || y >= l.num_vertices() || !l.contains(&sorted_pair(x, y)) {
                return Err(Error::InvalidVoltage(format!("{name} is not an edge")));
            }
            if !is_perm(&p, degree) {
                return Err(Error::InvalidVoltage(format!("{name}: {p:?} is not a permutation of degree {degree}")));
            }
            let inv = perm_inverse(&p);
            for (key, val) in [((x, y), p), ((y, x), inv)] {
                if let Some(old) = perms.get(&key) {
                    if *old != val {
                        return Err(Error::InvalidVoltage(format!("{name}: reverse edge is not the inverse")));
                    }
                }
                perms.insert(key, val);
            }
        }
        let rho = VoltageAssignment { degree, perms };
        for t in l.simplices(2) {
            let (x, y, z) = (t[0], t[1], t[2]);
            if perm_then(&rho.get(x, y), &rho.get(y, z)) != rho.get(x, z) {
                return Err(Error::InvalidVoltage(format!(
                    "cocycle fails on triangle {{{}, {}, {}}}",
                    l.label(x),
                    l.label(y),
                    l.label(z)
                )));
            }
        }
        Ok(rho)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, x: usize, y: usize) -> Perm {
        if x == y {
            return perm_identity(self.degree);
        }
        self.perms.get(&(x, y)).cloned().unwrap_or_else(|| perm_identity(self.degree))
    }

    pub fn from_file(l: &SimplicialComplex, file: &VoltageFile) -> Result<Self> {
        let directed = file
            .edges
            .iter()
            .map(|e| {
                let perm = e
                    .perm
                    .iter()
                    .map(|&i| {
                        i.checked_sub(1)
                            .ok_or_else(|| Error::InvalidVoltage(format!("({}, {}): images are 1-based", e.from, e.to)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(((l.vertex_or_err(&e.from)?, l.vertex_or_err(&e.to)?), perm))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(l, file.degree, directed)
    }

    /// Lists each edge once, from its smaller to its larger vertex.
    pub fn to_file(&self, l: &SimplicialComplex) -> VoltageFile {
        VoltageFile {
            degree: self.degree,
            edges: self
                .perms
                .iter()
                .filter(|((x, y), _)| x < y)
                .map(|((x, y), p)| VoltageEdge {
                    from: l.label(*x).to_string(),
                    to: l.label(*y).to_string(),
                    perm: p.iter().map(|i| i + 1).collect(),
                })
                .collect(),
        }
    }

    /// The voltage on `S(L)` giving `{v^ε, w^δ}` the permutation `ρ_vw`.
    pub fn lift_to_sphere(&self, l: &SimplicialComplex) -> Result<(SimplicialComplex, VoltageAssignment)> {
        let (sl, origin) = sphere_link_with_origin(l);
        let directed = sl
            .simplices(1)
            .iter()
            .map(|e| ((e[0], e[1]), self.get(origin[e[0]].0, origin[e[1]].0)))
            .collect();
        let lifted = VoltageAssignment::new(&sl, self.degree, directed)?;
        Ok((sl, lifted))
    }
}

fn label_or(l: &SimplicialComplex, v: usize) -> String {
    if v < l.num_vertices() {
        l.label(v).to_string()
    } else {
        format!("#{v}")
    }
}

fn sorted_pair(x: usize, y: usize) -> Simplex {
    if x < y {
        vec![x, y]
    } else {
        vec![y, x]
    }
}

/// A spanning forest of the 1-skeleton as a set of sorted edges.
pub fn spanning_tree(l: &SimplicialComplex) -> HashSet<Simplex> {
    let adj = l.adjacency();
    let mut seen = vec![false; l.num_vertices()];
    let mut tree = HashSet::new();
    for root in 0..l.num_vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    tree.insert(sorted_pair(u, w));
                    queue.push_back(w);
                }
            }
        }
    }
    tree
}

/// Degree-2 voltages for a basis of `H¹(L; 𝔽₂)`, each vanishing on a fixed
/// spanning tree. A nonzero class gives a connected double cover.
pub fn z2_voltages(l: &SimplicialComplex) -> Vec<VoltageAssignment> {
    let tree = spanning_tree(l);
    let free: Vec<usize> = (0..l.count(1)).filter(|&i| !tree.contains(&l.simplices(1)[i])).collect();
    let column: HashMap<usize, usize> = free.iter().enumerate().map(|(c, &e)| (e, c)).collect();
    let m = free.len();
    let words = m.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = l
        .simplices(2)
        .iter()
        .map(|t| {
            let mut row = vec![0u64; words];
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                if let Some(&c) = column.get(&l.simplex_index(&[a, b]).unwrap()) {
                    row[c / 64] ^= 1 << (c % 64);
                }
            }
            row
        })
        .collect();
    let bit = |row: &[u64], c: usize| row[c / 64] >> (c % 64) & 1 == 1;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], c)) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && bit(&rows[i], c) {
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
    let swap = vec![1, 0];
    (0..m)
        .filter(|c| !pivot_set.contains(c))
        .map(|fc| {
            let mut ones = vec![fc];
            for (i, &pc) in pivots.iter().enumerate() {
                if bit(&rows[i], fc) {
                    ones.push(pc);
                }
            }
            let directed = ones
                .into_iter()
                .map(|c| {
                    let e = &l.simplices(1)[free[c]];
                    ((e[0], e[1]), swap.clone())
                })
                .collect();
            VoltageAssignment::new(l, 2, directed).expect("solution of the cocycle equations")
        })
        .collect()
}

/// A finite cover with its projection; `sheet[x]` is the 0-based sheet of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub complex: SimplicialComplex,
    pub projection: SimplicialMap,
    pub sheet: Vec<usize>,
}

pub fn cover_label(label: &str, sheet: usize) -> String {
    format!("{label}#{}", sheet + 1)
}

/// Vertices `(v, i)`; `{(v₀,i₀),…,(v_k,i_k)}` is a simplex iff `{v₀,…,v_k}`
/// is a simplex of `L` (sorted) and `i_j = ρ_{v₀v_j}(i₀)`.
pub fn build_cover(l: &SimplicialComplex, rho: &VoltageAssignment) -> Result<Cover> {
    if !l.is_connected() {
        return Err(Error::Disconnected);
    }
    let d = rho.degree();
    let labels: Vec<String> =
        (0..l.num_vertices()).flat_map(|v| (0..d).map(move |i| (v, i))).map(|(v, i)| cover_label(l.label(v), i)).collect();
    let mut gens = Vec::new();
    for s in l.maximal_simplices() {
        let lifts: Vec<Perm> = s.iter().map(|&v| rho.get(s[0], v)).collect();
        for i in 0..d {
            gens.push(s.iter().zip(&lifts).map(|(&v, p)| v * d + p[i]).collect());
        }
    }
    let complex = SimplicialComplex::from_indexed(labels, gens)?;
    let mut projection = vec![0; complex.num_vertices()];
    let mut sheet = vec![0; complex.num_vertices()];
    for v in 0..l.num_vertices() {
        for i in 0..d {
            let x = complex.vertex(&cover_label(l.label(v), i)).unwrap();
            projection[x] = v;
            sheet[x] = i;
        }
    }
    Ok(Cover { complex, projection: SimplicialMap::new(projection), sheet })
}

impl Cover {
    /// Whether the projection is a simplicial covering: simplicial, `d` to 1
    /// on each simplex, and a bijection from each vertex star onto the star
    /// of its image.
    pub fn is_covering_of(&self, l: &SimplicialComplex) -> bool {
        if !self.projection.is_simplicial(&self.complex, l) {
            return false;
        }
        let d = if l.num_vertices() == 0 { 0 } else { self.complex.num_vertices() / l.num_vertices() };
        let fc = self.complex.f_vector();
        if fc.len() != l.f_vector().len() || fc.iter().zip(l.f_vector()).any(|(a, b)| *a != b * d) {
            return false;
        }
        self.complex.iter_simplices().all(|s| self.projection.apply(s).len() == s.len())
            && (0..self.complex.num_vertices()).all(|x| {
                let v = self.projection.map[x];
                let up = self.complex.link(x);
                let down = l.link(v);
                up.f_vector() == down.f_vector()
            })
    }
}

/// JSON form of a cover: the covering complex and the projection by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    pub complex: ComplexFile,
    pub projection: BTreeMap<String, String>,
}

impl Cover {
    pub fn to_file(&self, l: &SimplicialComplex) -> CoverFile {
        CoverFile {
            complex: self.complex.to_file(),
            projection: (0..self.complex.num_vertices())
                .map(|x| (self.complex.label(x).to_string(), l.label(self.projection.map[x]).to_string()))
                .collect(),
        }
    }

    /// Sheets are numbered within each fibre in vertex order.
    pub fn from_file(l: &SimplicialComplex, file: &CoverFile) -> Result<Cover> {
        let complex = SimplicialComplex::from_file(&file.complex)?;
        let mut projection = vec![0; complex.num_vertices()];
        let mut sheet = vec![0; complex.num_vertices()];
        let mut fibre = vec![0; l.num_vertices()];
        for x in 0..complex.num_vertices() {
            let label = complex.label(x);
            let image = file.projection.get(label).ok_or_else(|| Error::InvalidMap(format!("`{label}` has no image")))?;
            let v = l.vertex_or_err(image)?;
            projection[x] = v;
            sheet[x] = fibre[v];
            fibre[v] += 1;
        }
        let cover = Cover { complex, projection: SimplicialMap::new(projection), sheet };
        if !cover.is_covering_of(l) {
            return Err(Error::InvalidMap("projection is not a covering map".into()));
        }
        Ok(cover)
    }
}

/// Outcome of comparing `S(cover(L, ρ))` with `cover(S(L), ρ′)`.
#[derive(Clone, Debug)]
pub struct PullbackCheck {
    pub sphere_of_cover: SimplicialComplex,
    pub cover_of_sphere: Cover,
    pub outcome: IsoOutcome,
    /// `(v, i)^ε ↦ (v^ε, i)` is itself an isomorphism.
    pub natural_map_is_iso: bool,
}

impl PullbackCheck {
    pub fn holds(&self) -> bool {
        self.outcome.is_found()
    }
}

/// Searches for an isomorphism over `S(L)`: vertices of both sides are
/// coloured by their image `v^ε` in `S(L)`.
pub fn pullback_square_check(l: &SimplicialComplex, rho: &VoltageAssignment) -> Result<PullbackCheck> {
    if l.num_vertices() < 2 {
        return Err(Error::Inconsistent("pullback square needs L connected and not a point".into()));
    }
    let cover = build_cover(l, rho)?;
    let (sphere_of_cover, origin_a) = sphere_link_with_origin(&cover.complex);
    let (sl, lifted) = rho.lift_to_sphere(l)?;
    let cover_of_sphere = build_cover(&sl, &lifted)?;
    let (_, origin_sl) = sphere_link_with_origin(l);

    let color = |v: usize, s: Sign| (2 * v + (s == Sign::Minus) as usize) as u64;
    let colors_a: Vec<u64> =
        origin_a.iter().map(|&(x, s)| color(cover.projection.map[x], s)).collect();
    let colors_b: Vec<u64> = (0..cover_of_sphere.complex.num_vertices())
        .map(|y| {
            let (v, s) = origin_sl[cover_of_sphere.projection.map[y]];
            color(v, s)
        })
        .collect();
    let outcome = iso::are_isomorphic_colored(
        &sphere_of_cover,
        &cover_of_sphere.complex,
        &colors_a,
        &colors_b,
        iso::DEFAULT_BUDGET,
    );

    let natural: Option<Vec<usize>> = origin_a
        .iter()
        .map(|&(x, s)| {
            let base = sphere_label(l.label(cover.projection.map[x]), s);
            cover_of_sphere.complex.vertex(&cover_label(&base, cover.sheet[x]))
        })
        .collect();
    let natural_map_is_iso = natural
        .map(|m| iso::is_isomorphism(&sphere_of_cover, &cover_of_sphere.complex, &m))
        .unwrap_or(false);
    Ok(PullbackCheck { sphere_of_cover, cover_of_sphere, outcome, natural_map_is_iso })
}

/// Opposite pairs in a cover of `S(L)` pulled back from a cover of `L`:
/// `x̂` and `ŷ` pair up when an edge path of length two joins them and they
/// project to `v+` and `v-` for one `v`.
///
/// The length-four loop used to show uniqueness projects to a backtracking
/// loop `(p, q, p, q′, p)` in `L`, which lifts to a closed loop in any cover,
/// so the criterion applies to every finite pullback cover and not only to
/// the universal one.
pub fn opposite_pairs(cover: &Cover, sl: &SimplicialComplex) -> Result<Vec<(usize, usize)>> {
    let c = &cover.complex;
    let adj = c.adjacency();
    let mut partner = vec![usize::MAX; c.num_vertices()];
    for x in 0..c.num_vertices() {
        let target = sphere_partner(sl, cover.projection.map[x])
            .ok_or_else(|| Error::InvalidMap(format!("`{}` does not cover a sphere-link vertex", c.label(x))))?;
        let mut candidates: Vec<usize> = adj[x]
            .iter()
            .flat_map(|&m| adj[m].iter().copied())
            .filter(|&y| y != x && cover.projection.map[y] == target)
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        if candidates.len() != 1 {
            return Err(Error::OppositePairing { vertex: c.label(x).to_string(), candidates: candidates.len() });
        }
        partner[x] = candidates[0];
    }
    let mut pairs = Vec::new();
    for x in 0..c.num_vertices() {
        let y = partner[x];
        if partner[y] != x {
            return Err(Error::OppositePairing { vertex: c.label(x).to_string(), candidates: 0 });
        }
        if x < y {
            pairs.push((x, y));
        }
    }
    Ok(pairs)
}

/// Whether every pair is `(v+, i) ↔ (v-, i)` in the product structure.
pub fn pairs_match_product_structure(cover: &Cover, sl: &SimplicialComplex, pairs: &[(usize, usize)]) -> bool {
    2 * pairs.len() == cover.complex.num_vertices()
        && pairs.iter().all(|&(x, y)| {
            cover.sheet[x] == cover.sheet[y]
                && sphere_partner(sl, cover.projection.map[x]) == Some(cover.projection.map[y])
        })
}

/// Deck transformations given by generating permutations of cover vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckAction {
    pub generators: Vec<Perm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckFile {
    /// Each generator maps vertex labels to vertex labels.
    pub generators: Vec<BTreeMap<String, String>>,
}

impl DeckAction {
    /// Swaps the two sheets of a double cover.
    pub fn sheet_swap(cover: &Cover) -> Result<Self> {
        let c = &cover.complex;
        if !c.num_vertices().is_multiple_of(2) || cover.sheet.iter().any(|&s| s > 1) {
            return Err(Error::InvalidDeckAction("sheet swap needs a double cover".into()));
        }
        let mut by_key = HashMap::new();
        for x in 0..c.num_vertices() {
            by_key.insert((cover.projection.map[x], cover.sheet[x]), x);
        }
        let perm = (0..c.num_vertices())
            .map(|x| by_key[&(cover.projection.map[x], 1 - cover.sheet[x])])
            .collect();
        Ok(DeckAction { generators: vec![perm] })
    }

    pub fn from_file(cover: &SimplicialComplex, file: &DeckFile) -> Result<Self> {
        let generators = file
            .generators
            .iter()
            .map(|g| {
                let mut p = vec![usize::MAX; cover.num_vertices()];
                for (a, b) in g {
                    p[cover.vertex_or_err(a)?] = cover.vertex_or_err(b)?;
                }
                if !is_perm(&p, cover.num_vertices()) {
                    return Err(Error::InvalidDeckAction("generator is not a permutation of the vertices".into()));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DeckAction { generators })
    }

    pub fn to_file(&self, cover: &SimplicialComplex) -> DeckFile {
        DeckFile {
            generators: self
                .generators
                .iter()
                .map(|p| p.iter().enumerate().map(|(x, &y)| (cover.label(x).to_string(), cover.label(y).to_string())).collect())
                .collect(),
        }
    }

    /// Every group element, with the identity first.
    pub fn elements(&self, n: usize) -> Vec<Perm> {
        let id = perm_identity(n);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let next = perm_then(&out[i], g);
                if seen.insert(next.clone()) {
                    out.push(next);
                }
            }
            i += 1;
        }
        out
    }

    /// Each generator is an automorphism commuting with the projection, and
    /// no non-identity element fixes a simplex of positive dimension.
    pub fn validate(&self, cover: &Cover) -> Result<()> {
        let c = &cover.complex;
        let n = c.num_vertices();
        for (i, g) in self.generators.iter().enumerate() {
            if !is_perm(g, n) {
                return Err(Error::InvalidDeckAction(format!("generator {i} is not a permutation")));
            }
            if (0..n).any(|x| cover.projection.map[g[x]] != cover.projection.map[x]) {
                return Err(Error::InvalidDeckAction(format!("generator {i} does not commute with the projection")));
            }
            if !iso::is_isomorphism(c, c, g) {
                return Err(Error::InvalidDeckAction(format!("generator {i} is not simplicial")));
            }
        }
        for g in self.elements(n).iter().skip(1) {
            let map = SimplicialMap::new(g.clone());
            if let Some(s) = c.iter_simplices().find(|s| s.len() > 1 && map.apply(s) == **s) {
                return Err(Error::InvalidDeckAction(format!("a deck element fixes {:?}", c.simplex_labels(s))));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::homology::{reduced_homology, Ring};
    use crate::iso::are_isomorphic;

    #[test]
    fn sphere_link_examples() {
        let p = sphere_link(&corpus::point());
        assert_eq!(p.f_vector(), vec![2]);
        let e = sphere_link(&corpus::edge());
        assert!(are_isomorphic(&e, &corpus::square()).is_found());
        let t = sphere_link(&corpus::solid_triangle());
        assert_eq!(t.f_vector(), vec![6, 12, 8]);
        assert!(are_isomorphic(&t, &corpus::octahedron()).is_found());
        let h = corpus::rp2_6();
        let counts: Vec<usize> = h.f_vector().iter().enumerate().map(|(k, c)| c << (k + 1)).collect();
        assert_eq!(sphere_link(&h).f_vector(), counts);
    }

    #[test]
    fn section_then_projection() {
        let sq = corpus::square();
        let sl = sphere_link(&sq);
        let proj = sphere_projection(&sq, &sl).unwrap();
        for g in [SignFunction::constant(4, Sign::Plus), SignFunction::alternating(4)] {
            let s = retraction_section(&sq, &sl, &g).unwrap();
            assert!(s.is_simplicial(&sq, &sl));
            assert_eq!(s.then(&proj), SimplicialMap::identity(4));
        }
        let p3 = corpus::path3();
        let sl3 = sphere_link(&p3);
        assert!(retraction_section(&p3, &sl3, &SignFunction::alternating(3)).unwrap().is_simplicial(&p3, &sl3));
    }

    #[test]
    fn repair_of_hollow_triangle() {
        let l = corpus::hollow_triangle();
        let m = nlcp_repair_m(&l).unwrap();
        assert_eq!(m.complex.num_vertices(), 9);
        assert_eq!(m.complex.has_nlcp(), Ok(true));
        assert!(m.embedding.is_simplicial(&l, &m.complex));
        assert!(m.complex.is_full(&l).unwrap());
        assert!(reduced_homology(&m.complex, Ring::Z).same_groups(&reduced_homology(&l, Ring::Z)));
        assert!(matches!(nlcp_repair_m(&corpus::point()), Err(Error::IsolatedVertex(_))));
    }

    #[test]
    fn repair_of_octahedron() {
        let l = corpus::octahedron();
        let m = nlcp_repair_m(&l).unwrap();
        assert_eq!(m.complex.dimension(), 2);
        assert!(reduced_homology(&m.complex, Ring::Z).same_groups(&reduced_homology(&l, Ring::Z)));
        let n = mapping_cylinder_n(&l).unwrap();
        assert_eq!(n.dimension(), 3);
        assert!(reduced_homology(&n, Ring::Z).same_groups(&reduced_homology(&l, Ring::Z)));
    }

    #[test]
    fn covers_of_the_square() {
        let sq = corpus::square();
        let three = build_cover(&sq, &VoltageAssignment::trivial(3)).unwrap();
        assert_eq!(three.complex.components().len(), 3);
        assert!(three.is_covering_of(&sq));

        let a = sq.vertex("1").unwrap();
        let b = sq.vertex("2").unwrap();
        let rho = VoltageAssignment::new(&sq, 2, vec![((a, b), vec![1, 0])]).unwrap();
        let double = build_cover(&sq, &rho).unwrap();
        assert!(are_isomorphic(&double.complex, &corpus::cycle(8)).is_found());
        assert!(double.is_covering_of(&sq));
        assert_eq!(VoltageAssignment::from_file(&sq, &rho.to_file(&sq)).unwrap(), rho);
    }

    #[test]
    fn voltage_errors() {
        let t = corpus::solid_triangle();
        let bad = VoltageAssignment::new(&t, 2, vec![((0, 1), vec![1, 0])]);
        assert!(matches!(bad, Err(Error::InvalidVoltage(m)) if m.contains("triangle")));
        let not_edge = VoltageAssignment::new(&corpus::square(), 2, vec![((0, 2), vec![1, 0])]);
        assert!(matches!(not_edge, Err(Error::InvalidVoltage(_))));
        let not_inverse = VoltageAssignment::new(
            &corpus::edge(),
            3,
            vec![((0, 1), vec![1, 2, 0]), ((1, 0), vec![1, 2, 0])],
        );
        assert!(not_inverse.is_err());
    }

    #[test]
    fn rp2_orientation_cover_is_a_sphere() {
        let l = corpus::rp2_barycentric();
        let classes = z2_voltages(&l);
        assert_eq!(classes.len(), 1);
        let cover = build_cover(&l, &classes[0]).unwrap();
        assert!(cover.complex.is_connected());
        assert_eq!(cover.complex.euler_characteristic(), 2);
        let h = reduced_homology(&cover.complex, Ring::Z);
        assert_eq!(h.degree(2).rank, 1);
        assert!(h.degree(1).is_zero());
        assert!(z2_voltages(&corpus::octahedron()).is_empty());
        assert_eq!(z2_voltages(&corpus::square()).len(), 1);
    }

    #[test]
    fn pullback_and_pairs_on_square() {
        let sq = corpus::square();
        let rho = z2_voltages(&sq).remove(0);
        let check = pullback_square_check(&sq, &rho).unwrap();
        assert!(check.holds());
        assert!(check.natural_map_is_iso);
        assert_eq!(check.sphere_of_cover.num_vertices(), 16);
        let sl = sphere_link(&sq);
        let pairs = opposite_pairs(&check.cover_of_sphere, &sl).unwrap();
        assert!(pairs_match_product_structure(&check.cover_of_sphere, &sl, &pairs));
    }

    #[test]
    fn deck_swap_on_double_cover() {
        let l = corpus::rp2_barycentric();
        let cover = build_cover(&l, &z2_voltages(&l)[0]).unwrap();
        let deck = DeckAction::sheet_swap(&cover).unwrap();
        deck.validate(&cover).unwrap();
        assert_eq!(deck.elements(cover.complex.num_vertices()).len(), 2);
        let trivial = build_cover(&l, &VoltageAssignment::trivial(1));
        assert!(trivial.is_ok());
    }
}
