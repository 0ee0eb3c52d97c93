//! Words, finite presentations and the presentations attached to a flag
//! complex: edge-path groups, `P_L(Γ, S)`, and the semidirect-product
//! presentation of `G_L(∅)` from a finite simply connected cover.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cell::{PolygonalComplex, Side};
use crate::complex::SimplicialComplex;
use crate::constructions::{perm_identity, spanning_tree, Cover, DeckAction, Perm};
use crate::enumeration::todd_coxeter::{todd_coxeter, TcOutcome};
use crate::error::{Error, Result};
use crate::homology::{smith_normal_form, HomologyGroup, HomologyProfile, IntegerMatrix, Ring};

/// Signed 1-based generator indices: `k` is the k-th generator, `-k` its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: i32) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `wⁿ`, with negative `n` meaning a power of the inverse.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// Product `w₁ⁿ w₂ⁿ ⋯ w_lⁿ`.
    pub fn power_product(words: &[Word], n: i64) -> Word {
        Word(words.iter().flat_map(|w| w.pow(n).0).collect())
    }

    pub fn free_reduce(&self) -> Word {
        free_reduce(self)
    }

    /// Free reduction followed by removal of inverse pairs at the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = free_reduce(self).0;
        let mut i = 0;
        let mut j = w.len();
        while j > i + 1 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn is_cyclic_conjugate_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let doubled: Vec<i32> = other.0.iter().chain(&other.0).copied().collect();
        doubled.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Replaces each generator `k` by `images[k-1]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out.extend_from_slice(&img.0);
            } else {
                out.extend(img.0.iter().rev().map(|x| -x));
            }
        }
        free_reduce(&Word(out))
    }
}

/// Stack-based cancellation of adjacent `x x⁻¹` pairs.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// Generators and relator words; relators are kept freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        for r in &relators {
            if let Some(&l) = r.0.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > n) {
                return Err(Error::LetterOutOfRange { letter: l, generators: n });
            }
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g) {
                return Err(Error::Parse(format!("duplicate generator `{g}`")));
            }
        }
        Ok(Presentation { generators, relators: relators.iter().map(free_reduce).collect() })
    }

    /// Re-validates a deserialized presentation.
    pub fn checked(self) -> Result<Self> {
        Self::new(self.generators, self.relators)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > self.generators.len()) {
            Some(&l) => Err(Error::LetterOutOfRange { letter: l, generators: self.generators.len() }),
            None => Ok(()),
        }
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Presentation> {
        let mut relators = self.relators.clone();
        relators.extend(extra);
        Presentation::new(self.generators.clone(), relators)
    }

    /// Renames generators to `a, b, c, …`.
    pub fn with_letter_names(&self) -> Presentation {
        Presentation {
            generators: crate::corpus::letter_names(self.generators.len()),
            relators: self.relators.clone(),
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses `⟨a, b | abab, a^3⟩` (or with `<` `>`); a letter is a generator
    /// name, longest match first, optionally followed by `^n`.
    pub fn parse(text: &str) -> Result<Presentation> {
        let t = text.trim();
        let inner = t
            .strip_prefix('⟨')
            .and_then(|s| s.strip_suffix('⟩'))
            .or_else(|| t.strip_prefix('<').and_then(|s| s.strip_suffix('>')))
            .ok_or_else(|| Error::Parse("presentation must be enclosed in ⟨ ⟩ or < >".into()))?;
        let (gens, rels) = inner.split_once('|').unwrap_or((inner, ""));
        let generators: Vec<String> =
            gens.split(',').map(|g| g.trim().to_string()).filter(|g| !g.is_empty()).collect();
        let p = Presentation::new(generators, Vec::new())?;
        let relators = rels
            .split(',')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| p.parse_word(r))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(p.generators, relators)
    }

    /// Parses a word such as `a^2 b a^-1` or `ab^-1`; `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == ['1'] {
            return Ok(Word::empty());
        }
        let mut names: Vec<(Vec<char>, i32)> =
            self.generators.iter().enumerate().map(|(i, g)| (g.chars().collect(), i as i32 + 1)).collect();
        names.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));
        let mut out = Vec::new();
        let mut i = 0;
        while i < s.len() {
            let (name, idx) = names
                .iter()
                .find(|(n, _)| !n.is_empty() && s[i..].starts_with(n))
                .ok_or_else(|| Error::Parse(format!("unknown generator at `{}`", s[i..].iter().collect::<String>())))?;
            i += name.len();
            let mut exp: i64 = 1;
            if i < s.len() && s[i] == '^' {
                let start = i + 1;
                let mut end = start;
                if end < s.len() && s[end] == '-' {
                    end += 1;
                }
                while end < s.len() && s[end].is_ascii_digit() {
                    end += 1;
                }
                exp = s[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{text}`")))?;
                i = end;
            }
            out.extend(Word::letter(*idx).pow(exp).0);
        }
        Ok(Word(out))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let sep = if self.generators.iter().all(|g| g.chars().count() == 1) { "" } else { " " };
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let l = w.0[i];
            let mut j = i;
            while j < w.len() && w.0[j] == l {
                j += 1;
            }
            let name = &self.generators[l.unsigned_abs() as usize - 1];
            let e = (j - i) as i64 * l.signum() as i64;
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(sep)
    }

    /// Relator exponent sums: one row per relator, one column per generator.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_triplets(
            self.relators.len(),
            self.generators.len(),
            self.relators
                .iter()
                .enumerate()
                .flat_map(|(r, w)| w.0.iter().map(move |&l| (r, l.unsigned_abs() as usize - 1, l.signum() as i64))),
        )
    }

    /// Deterministic cleanup: cyclically reduce relators, drop trivial and
    /// repeated ones, and eliminate a generator occurring in a relator of
    /// length one or two (with two distinct generators), to a fixed point.
    pub fn simplify(&self) -> Simplified {
        let n = self.generators.len();
        let mut images: Vec<Word> = (1..=n as i32).map(Word::letter).collect();
        let mut alive = vec![true; n];
        let mut relators: Vec<Word> = self.relators.clone();
        loop {
            relators = tidy(&relators);
            let step = relators.iter().find_map(|r| match *r.0.as_slice() {
                [x] => Some((x.unsigned_abs() as usize, Word::empty())),
                [x, y] if x.abs() != y.abs() => {
                    // xy = 1 gives each letter as the inverse of the other; the later generator goes
                    let (elim, keep) = if x.abs() > y.abs() { (x, y) } else { (y, x) };
                    let value = Word::letter(-keep);
                    let value = if elim > 0 { value } else { value.inverse() };
                    Some((elim.unsigned_abs() as usize, value))
                }
                _ => None,
            });
            let Some((g, value)) = step else { break };
            let mut subst: Vec<Word> = (1..=n as i32).map(Word::letter).collect();
            subst[g - 1] = value;
            alive[g - 1] = false;
            relators = relators.iter().map(|r| r.substitute(&subst)).collect();
            images = images.iter().map(|w| w.substitute(&subst)).collect();
        }
        let mut renumber = vec![0i32; n + 1];
        let mut generators = Vec::new();
        for (i, name) in self.generators.iter().enumerate() {
            if alive[i] {
                generators.push(name.clone());
                renumber[i + 1] = generators.len() as i32;
            }
        }
        let rn = |w: &Word| Word(w.0.iter().map(|&l| renumber[l.unsigned_abs() as usize] * l.signum()).collect());
        Simplified {
            presentation: Presentation { generators, relators: relators.iter().map(rn).collect() },
            images: images.iter().map(rn).collect(),
        }
    }

    /// Free rank and torsion of the abelianization, by Smith normal form.
    pub fn abelianization(&self) -> HomologyGroup {
        let snf = smith_normal_form(&self.exponent_matrix());
        HomologyGroup { rank: self.generators.len() - snf.rank(), torsion: snf.torsion() }
    }
}

fn tidy(relators: &[Word]) -> Vec<Word> {
    let mut seen = HashSet::new();
    relators
        .iter()
        .map(Word::cyclic_reduce)
        .filter(|r| !r.is_empty() && seen.insert(r.clone()))
        .collect()
}

/// A simplified presentation with the images of the original generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: Presentation,
    pub images: Vec<Word>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        if rels.is_empty() {
            write!(f, "⟨{} | ⟩", self.generators.join(", "))
        } else {
            write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> HomologyGroup {
    p.abelianization()
}

/// Presentation 2-complex: one vertex, a loop per generator, a polygon per
/// relator; unreduced cellular homology in degrees 0 to 2.
pub fn presentation_2complex(p: &Presentation) -> (PolygonalComplex, HomologyProfile) {
    let edges = vec![(0, 0); p.generators.len()];
    let faces = p
        .relators
        .iter()
        .map(|r| r.0.iter().map(|&l| Side { edge: l.unsigned_abs() as usize - 1, sign: l.signum() as i8 }).collect())
        .collect();
    let pc = PolygonalComplex::new(vec!["o".into()], edges, faces).expect("one-vertex faces are closed");
    let h = pc.homology(Ring::Z, false);
    (pc, h)
}

/// A closed directed edge path given by its vertices, first equal to last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DirectedLoop {
    pub vertices: Vec<String>,
}

impl DirectedLoop {
    pub fn new(vertices: Vec<String>) -> Self {
        DirectedLoop { vertices }
    }

    /// The directed edges `(v_{i-1}, v_i)` as vertex indices of `l`.
    pub fn edges(&self, l: &SimplicialComplex) -> Result<Vec<(usize, usize)>> {
        let vs = &self.vertices;
        if vs.len() < 2 || vs.first() != vs.last() {
            return Err(Error::InvalidLoop(format!("{vs:?} is not closed")));
        }
        let idx = vs
            .iter()
            .map(|v| l.vertex(v).ok_or_else(|| Error::InvalidLoop(format!("unknown vertex `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        idx.windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let e = if a < b { [a, b] } else { [b, a] };
                if a == b || !l.contains(&e) {
                    Err(Error::InvalidLoop(format!("({}, {}) is not an edge", l.label(a), l.label(b))))
                } else {
                    Ok((a, b))
                }
            })
            .collect()
    }
}

/// A finite set of heights `S ⊆ ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HeightSet {
    pub values: BTreeSet<i64>,
}

impl HeightSet {
    pub fn new(values: impl IntoIterator<Item = i64>) -> Self {
        HeightSet { values: values.into_iter().collect() }
    }

    pub fn contains_zero(&self) -> bool {
        self.values.contains(&0)
    }

    /// Parses `0,1,3`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>().map_err(|_| Error::Parse(format!("bad height `{s}`"))))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(HeightSet { values })
    }

    pub fn nonzero(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().copied().filter(|&n| n != 0)
    }
}

fn edge_name(l: &SimplicialComplex, a: usize, b: usize) -> String {
    format!("({},{})", l.label(a), l.label(b))
}

/// Generators indexed by directed edges, with their orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGenerators {
    /// `edges[i]` is the directed edge behind generator `i + 1`.
    pub edges: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), i32>,
}

impl EdgeGenerators {
    fn new(edges: Vec<(usize, usize)>) -> Self {
        let mut lookup = HashMap::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            lookup.insert((a, b), i as i32 + 1);
            lookup.insert((b, a), -(i as i32 + 1));
        }
        EdgeGenerators { edges, lookup }
    }

    /// The letter for the directed edge `(a, b)`.
    pub fn letter(&self, a: usize, b: usize) -> Option<i32> {
        self.lookup.get(&(a, b)).copied()
    }

    pub fn path_word(&self, edges: &[(usize, usize)]) -> Option<Word> {
        edges.iter().map(|&(a, b)| self.letter(a, b)).collect::<Option<Vec<_>>>().map(Word)
    }

    fn names(&self, l: &SimplicialComplex) -> Vec<String> {
        self.edges.iter().map(|&(a, b)| edge_name(l, a, b)).collect()
    }

    /// `abc` and `a⁻¹b⁻¹c⁻¹` for the cycle `x → y → z → x` of a sorted triangle.
    fn triangle_relators(&self, t: &[usize]) -> [Word; 2] {
        let a = self.letter(t[0], t[1]).unwrap();
        let b = self.letter(t[1], t[2]).unwrap();
        let c = self.letter(t[2], t[0]).unwrap();
        [Word(vec![a, b, c]), Word(vec![-a, -b, -c])]
    }
}

/// Edge-path presentation of `π₁(|c|, base)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePathPresentation {
    pub presentation: Presentation,
    pub generators: EdgeGenerators,
}

impl EdgePathPresentation {
    pub fn loop_word(&self, l: &SimplicialComplex, gamma: &DirectedLoop) -> Result<Word> {
        Ok(self.generators.path_word(&gamma.edges(l)?).expect("loop edges are edges"))
    }
}

/// Generators: one per edge, oriented from smaller to larger vertex.
/// Relators: spanning-tree edges, and `(x,y)(y,z)(z,x)` per triangle.
pub fn edge_path_presentation(c: &SimplicialComplex, base: &str) -> Result<EdgePathPresentation> {
    c.vertex_or_err(base)?;
    if !c.is_connected() {
        return Err(Error::Disconnected);
    }
    let gens = EdgeGenerators::new(c.simplices(1).iter().map(|e| (e[0], e[1])).collect());
    let tree = spanning_tree(c);
    let mut relators: Vec<Word> = c
        .simplices(1)
        .iter()
        .filter(|e| tree.contains(*e))
        .map(|e| Word::letter(gens.letter(e[0], e[1]).unwrap()))
        .collect();
    relators.extend(c.simplices(2).iter().map(|t| gens.triangle_relators(t)[0].clone()));
    let presentation = Presentation::new(gens.names(c), relators)?;
    Ok(EdgePathPresentation { presentation, generators: gens })
}

/// `P_L(Γ, S)` with the edge relations compiled away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbPresentation {
    pub presentation: Presentation,
    pub generators: EdgeGenerators,
    pub triangle_relators: usize,
    pub long_relators: usize,
}

/// One generator per edge. Edges traversed by `Γ` come first, in order of
/// first traversal and oriented along it; the rest follow in sorted order,
/// oriented from smaller to larger vertex. Each triangle `x < y < z`
/// contributes `abc` and `a⁻¹b⁻¹c⁻¹` for `a = (x,y)`, `b = (y,z)`,
/// `c = (z,x)`; each loop and each `n ∈ S∖{0}` contributes `a₁ⁿ⋯a_lⁿ`.
pub fn bb_presentation(l: &SimplicialComplex, gamma: &[DirectedLoop], s: &HeightSet) -> Result<BbPresentation> {
    if !s.contains_zero() {
        return Err(Error::MissingZeroHeight);
    }
    if !l.is_flag() {
        return Err(Error::NotFlag);
    }
    if !l.is_connected() {
        return Err(Error::Disconnected);
    }
    let loops = gamma.iter().map(|g| g.edges(l)).collect::<Result<Vec<_>>>()?;
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut placed: HashSet<(usize, usize)> = HashSet::new();
    for &(a, b) in loops.iter().flatten() {
        let key = (a.min(b), a.max(b));
        if placed.insert(key) {
            order.push((a, b));
        }
    }
    for e in l.simplices(1) {
        if placed.insert((e[0], e[1])) {
            order.push((e[0], e[1]));
        }
    }
    let gens = EdgeGenerators::new(order);
    let mut relators = Vec::new();
    for t in l.simplices(2) {
        relators.extend(gens.triangle_relators(t));
    }
    let triangle_relators = relators.len();
    for n in s.nonzero() {
        for lp in &loops {
            let letters: Vec<Word> = lp.iter().map(|&(a, b)| Word::letter(gens.letter(a, b).unwrap())).collect();
            relators.push(Word::power_product(&letters, n));
        }
    }
    let long_relators = relators.len() - triangle_relators;
    let presentation = Presentation::new(gens.names(l), relators)?;
    Ok(BbPresentation { presentation, generators: gens, triangle_relators, long_relators })
}

/// Result of checking that `Γ` normally generates `π₁(L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GammaCheck {
    Certified { cosets: usize },
    Inconclusive { live_cosets: usize },
}

impl GammaCheck {
    pub fn is_certified(&self) -> bool {
        matches!(self, GammaCheck::Certified { .. })
    }
}

/// Coset enumeration over the trivial subgroup for the edge-path
/// presentation with the loops of `Γ` added as relators. The presentation
/// is simplified first; that is a sequence of Tietze moves, so the group is
/// unchanged.
pub fn validate_gamma(l: &SimplicialComplex, gamma: &[DirectedLoop], max_cosets: usize) -> Result<GammaCheck> {
    let base = l.labels().first().ok_or(Error::Disconnected)?.clone();
    let ep = edge_path_presentation(l, &base)?;
    let loops = gamma.iter().map(|g| ep.loop_word(l, g)).collect::<Result<Vec<_>>>()?;
    let p = ep.presentation.with_relators(loops)?.simplify().presentation;
    Ok(match todd_coxeter(&p, &[], max_cosets) {
        TcOutcome::Complete(t) if t.num_cosets() == 1 => GammaCheck::Certified { cosets: 1 },
        TcOutcome::Complete(t) => GammaCheck::Inconclusive { live_cosets: t.num_cosets() },
        TcOutcome::OutOfBudget { live, .. } => GammaCheck::Inconclusive { live_cosets: live },
    })
}

/// Whether a complex is simply connected, certified by coset enumeration.
pub fn certify_simply_connected(c: &SimplicialComplex, max_cosets: usize) -> Result<bool> {
    Ok(validate_gamma(c, &[], max_cosets)?.is_certified())
}

/// Presentation of a finite permutation group on its generators, read off
/// the Cayley graph: one relator `w_g s w_{gs}⁻¹` per non-tree edge.
/// Words act on the left: the word `s₁ s₂` is the permutation `s₁ ∘ s₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupPresentation {
    pub presentation: Presentation,
    /// Group elements, identity first, with their spanning-tree words.
    pub elements: Vec<Perm>,
    pub words: Vec<Word>,
}

fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn permutation_group_presentation(generators: &[Perm], degree: usize) -> FiniteGroupPresentation {
    let id = perm_identity(degree);
    let mut index: HashMap<Perm, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elements = vec![id];
    let mut words = vec![Word::empty()];
    let mut relators = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (s, g) in generators.iter().enumerate() {
            let next = compose(&elements[i], g);
            let w = words[i].concat(&Word::letter(s as i32 + 1));
            match index.get(&next) {
                Some(&j) => {
                    let r = free_reduce(&w.concat(&words[j].inverse()));
                    if !r.is_empty() {
                        relators.push(r);
                    }
                }
                None => {
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    words.push(w);
                }
            }
        }
        i += 1;
    }
    let names = (1..=generators.len()).map(|k| format!("t{k}")).collect();
    FiniteGroupPresentation { presentation: Presentation::new(names, tidy(&relators)).unwrap(), elements, words }
}

/// Presentation of `G_L(∅) = BB_{L̃} ⋊ π₁(L)` from a finite simply connected
/// regular cover `L̃` and its deck group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GEmptyPresentation {
    pub presentation: Presentation,
    pub deck_generators: usize,
    /// Edges of the fundamental domain `K`, oriented like their images in `L`.
    pub domain_edges: Vec<(usize, usize)>,
    pub domain_triangles: usize,
    pub conjugacy_relators: usize,
    /// Images in `P_L(∅, {0})` of every generator: deck generators go to
    /// the identity, edges of `K` to their projections.
    pub quotient_images: Vec<Word>,
}

pub fn g_empty_presentation(
    l: &SimplicialComplex,
    cover: &Cover,
    deck: &DeckAction,
    max_cosets: usize,
) -> Result<GEmptyPresentation> {
    let c = &cover.complex;
    if !cover.is_covering_of(l) {
        return Err(Error::InvalidMap("projection is not a covering".into()));
    }
    deck.validate(cover)?;
    let dp = permutation_group_presentation(&deck.generators, c.num_vertices());
    if dp.elements.len() * l.num_vertices() != c.num_vertices() {
        return Err(Error::InvalidDeckAction(format!(
            "{} deck elements do not act transitively on {}-point fibres",
            dp.elements.len(),
            c.num_vertices() / l.num_vertices().max(1)
        )));
    }
    if !c.is_connected() || !certify_simply_connected(c, max_cosets)? {
        return Err(Error::CoverNotSimplyConnected(format!("no one-coset enumeration within {max_cosets} cosets")));
    }

    let proj = &cover.projection.map;
    let k = fundamental_domain(c, &dp.elements);
    let orient = |x: usize, y: usize| if proj[x] < proj[y] { (x, y) } else { (y, x) };
    let domain_edges: Vec<(usize, usize)> = c
        .simplices(1)
        .iter()
        .filter(|e| k.contains(*e))
        .map(|e| orient(e[0], e[1]))
        .collect();
    let shift = dp.presentation.num_generators() as i32;
    let mut letter: HashMap<(usize, usize), i32> = HashMap::new();
    for (i, &(x, y)) in domain_edges.iter().enumerate() {
        letter.insert((x, y), shift + i as i32 + 1);
        letter.insert((y, x), -(shift + i as i32 + 1));
    }

    let mut relators = dp.presentation.relators.clone();
    let mut domain_triangles = 0;
    for t in c.simplices(2).iter().filter(|t| k.contains(*t)) {
        let mut t = t.clone();
        t.sort_by_key(|&x| proj[x]);
        let a = letter[&(t[0], t[1])];
        let b = letter[&(t[1], t[2])];
        let cc = letter[&(t[2], t[0])];
        relators.push(Word(vec![a, b, cc]));
        relators.push(Word(vec![-a, -b, -cc]));
        domain_triangles += 1;
    }
    let mut conjugacy_relators = 0;
    for (g, w) in dp.elements.iter().zip(&dp.words).skip(1) {
        for &(x, y) in &domain_edges {
            if let Some(&b) = letter.get(&(g[x], g[y])) {
                let a = letter[&(x, y)];
                relators.push(w.concat(&Word::letter(a)).concat(&w.inverse()).concat(&Word::letter(-b)));
                conjugacy_relators += 1;
            }
        }
    }

    let mut generators = dp.presentation.generators.clone();
    generators.extend(domain_edges.iter().map(|&(x, y)| format!("({},{})", c.label(x), c.label(y))));
    let mut quotient_images = vec![Word::empty(); shift as usize];
    for &(x, y) in &domain_edges {
        let (a, b) = (proj[x], proj[y]);
        quotient_images.push(Word::letter(l.simplex_index(&[a, b]).expect("projection of an edge") as i32 + 1));
    }
    Ok(GEmptyPresentation {
        presentation: Presentation::new(generators, relators)?,
        deck_generators: shift as usize,
        domain_edges,
        domain_triangles,
        conjugacy_relators,
        quotient_images,
    })
}

/// A subcomplex closed under faces containing a simplex from every orbit,
/// grown greedily from the top dimension, preferring representatives that
/// share the most vertices with what is already chosen.
fn fundamental_domain(c: &SimplicialComplex, elements: &[Perm]) -> HashSet<Vec<usize>> {
    let mut k: HashSet<Vec<usize>> = HashSet::new();
    let mut k_vertices: HashSet<usize> = HashSet::new();
    for dim in (0..c.f_vector().len()).rev() {
        let mut done: HashSet<Vec<usize>> = HashSet::new();
        for s in c.simplices(dim) {
            if done.contains(s) {
                continue;
            }
            let orbit: Vec<Vec<usize>> = elements
                .iter()
                .map(|g| {
                    let mut t: Vec<usize> = s.iter().map(|&x| g[x]).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            done.extend(orbit.iter().cloned());
            if orbit.iter().any(|t| k.contains(t)) {
                continue;
            }
            let best = orbit
                .iter()
                .max_by_key(|t| (t.iter().filter(|x| k_vertices.contains(x)).count(), std::cmp::Reverse((*t).clone())))
                .unwrap()
                .clone();
            for mask in 1u64..(1 << best.len()) {
                let face: Vec<usize> =
                    best.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
                k.insert(face);
            }
            k_vertices.extend(best.iter().copied());
        }
    }
    k
}

/// `C₁(L)/B₁(L) ⊕ D^ab`, the abelianization of `BB_{L̃} ⋊ D` computed from
/// the chain complex of `L` and the deck group alone.
pub fn semidirect_abelianization(l: &SimplicialComplex, deck: &Presentation) -> HomologyGroup {
    let e = l.count(1);
    let d = deck.num_generators();
    let mut entries = Vec::new();
    let mut row = 0;
    for t in l.simplices(2) {
        for (i, (a, b)) in [(t[1], t[2]), (t[0], t[2]), (t[0], t[1])].into_iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            entries.push((row, l.simplex_index(&[a, b]).unwrap(), sign));
        }
        row += 1;
    }
    for r in &deck.relators {
        for &x in &r.0 {
            entries.push((row, e + x.unsigned_abs() as usize - 1, x.signum() as i64));
        }
        row += 1;
    }
    let m = IntegerMatrix::from_triplets(row, e + d, entries);
    let snf = smith_normal_form(&m);
    HomologyGroup { rank: e + d - snf.rank(), torsion: snf.torsion() }
}

/// Each relator of `p`, after substituting `images`, freely reduces to the
/// empty word or to a cyclic conjugate of a relator of `q` or its inverse.
pub fn relators_map_to_consequences(p: &Presentation, images: &[Word], q: &Presentation) -> bool {
    let targets: Vec<Word> = q.relators.iter().flat_map(|r| [r.cyclic_reduce(), r.inverse().cyclic_reduce()]).collect();
    p.relators.iter().all(|r| {
        let img = r.substitute(images).cyclic_reduce();
        img.is_empty() || targets.iter().any(|t| img.is_cyclic_conjugate_of(t))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_cover, z2_voltages};
    use crate::corpus;
    use num_bigint::BigUint;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec())
    }

    #[test]
    fn reduction() {
        assert_eq!(free_reduce(&w(&[1, -1])), Word::empty());
        assert_eq!(free_reduce(&w(&[1, 2, -2, 1])), w(&[1, 1]));
        assert_eq!(free_reduce(&w(&[1, 2, 1])), w(&[1, 2, 1]));
        assert_eq!(w(&[-2, 1, 3, 2]).cyclic_reduce(), w(&[1, 3]));
        assert!(w(&[1, 2, 3]).is_cyclic_conjugate_of(&w(&[3, 1, 2])));
        assert!(!w(&[1, 2, 3]).is_cyclic_conjugate_of(&w(&[3, 2, 1])));
    }

    #[test]
    fn parse_and_display() {
        let p = Presentation::parse("⟨a,b,c,d | abcd, a^3b^3c^3d^3⟩").unwrap();
        assert_eq!(p.relators[1].len(), 12);
        assert_eq!(p.to_string(), "⟨a, b, c, d | abcd, a^3b^3c^3d^3⟩");
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
        assert_eq!(p.parse_word("a^-2 b").unwrap(), w(&[-1, -1, 2]));
        assert!(Presentation::new(vec!["a".into()], vec![w(&[2])]).is_err());
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.starts_with(r#"{"generators":["a","b","c","d"],"relators":[[1,2,3,4]"#));
    }

    #[test]
    fn edge_path_groups() {
        let sq = edge_path_presentation(&corpus::square(), "1").unwrap();
        let s = sq.presentation.simplify().presentation;
        assert_eq!(s.num_generators(), 1);
        assert!(s.relators.is_empty());
        let t = edge_path_presentation(&corpus::solid_triangle(), "1").unwrap().presentation.simplify();
        assert_eq!(t.presentation.num_generators(), 0);
        let two = corpus::edge().disjoint_union(&corpus::edge().relabel(|l| format!("{l}'")).unwrap()).unwrap();
        assert_eq!(edge_path_presentation(&two, "v"), Err(Error::Disconnected));
    }

    #[test]
    fn square_family() {
        let bb = bb_presentation(&corpus::square(), &[corpus::cycle_loop(4)], &HeightSet::new([0, 1, 3])).unwrap();
        let expected = Presentation::parse("⟨a,b,c,d | abcd, a^3b^3c^3d^3⟩").unwrap();
        assert_eq!(bb.presentation.with_letter_names(), expected);
        let zero = bb_presentation(&corpus::square(), &[corpus::cycle_loop(4)], &HeightSet::new([0])).unwrap();
        assert!(zero.presentation.relators.is_empty());
        assert_eq!(zero.presentation.abelianization(), HomologyGroup::free(4));
        assert_eq!(expected.abelianization(), HomologyGroup::free(3));
    }

    #[test]
    fn bb_errors() {
        let sq = corpus::square();
        assert_eq!(bb_presentation(&sq, &[], &HeightSet::new([1])), Err(Error::MissingZeroHeight));
        assert_eq!(bb_presentation(&corpus::hollow_triangle(), &[], &HeightSet::new([0])), Err(Error::NotFlag));
        let bad = DirectedLoop::new(["1", "3", "1"].map(String::from).to_vec());
        assert!(matches!(bb_presentation(&sq, &[bad], &HeightSet::new([0])), Err(Error::InvalidLoop(_))));
    }

    #[test]
    fn triangle_family() {
        let bb = bb_presentation(&corpus::solid_triangle(), &[], &HeightSet::new([0])).unwrap();
        assert_eq!(bb.presentation.num_generators(), 3);
        assert_eq!(bb.presentation.relators.len(), 2);
        assert_eq!(bb.presentation.abelianization(), HomologyGroup::free(2));
    }

    #[test]
    fn two_complexes() {
        let (_, h) = presentation_2complex(&corpus::cyclic(2));
        assert_eq!(h.degree(1).torsion, vec![BigUint::from(2u32)]);
        let torus = Presentation::parse("<a,b | aba^-1b^-1>").unwrap();
        let (_, h) = presentation_2complex(&torus);
        assert_eq!(h.ranks(), vec![1, 2, 1]);
        let (_, h) = presentation_2complex(&corpus::higman_presentation());
        assert_eq!(h.ranks(), vec![1, 0, 0]);
        assert!(h.degree(1).torsion.is_empty());
        let empty = Presentation::new(vec!["a".into()], vec![Word::empty()]).unwrap();
        assert_eq!(presentation_2complex(&empty).1.ranks(), vec![1, 1, 1]);
    }

    #[test]
    fn gamma_certificates() {
        let sq = corpus::square();
        assert!(validate_gamma(&sq, &[corpus::cycle_loop(4)], 1000).unwrap().is_certified());
        assert!(!validate_gamma(&sq, &[], 1000).unwrap().is_certified());
    }

    #[test]
    fn simplify_tracks_images() {
        let p = Presentation::parse("<a,b,c | ab^-1, c, abab>").unwrap();
        let s = p.simplify();
        assert_eq!(s.presentation.to_string(), "⟨a | a^4⟩");
        assert_eq!(s.images, vec![w(&[1]), w(&[1]), Word::empty()]);
    }

    #[test]
    fn g_empty_for_rp2() {
        let l = corpus::rp2_barycentric();
        let cover = build_cover(&l, &z2_voltages(&l)[0]).unwrap();
        let deck = DeckAction::sheet_swap(&cover).unwrap();
        let g = g_empty_presentation(&l, &cover, &deck, 10_000).unwrap();
        let dp = permutation_group_presentation(&deck.generators, cover.complex.num_vertices());
        assert_eq!(dp.presentation.to_string(), "⟨t1 | t1^2⟩");
        assert_eq!(g.presentation.abelianization(), semidirect_abelianization(&l, &dp.presentation));
        let bb = bb_presentation(&l, &[], &HeightSet::new([0])).unwrap();
        assert!(relators_map_to_consequences(&g.presentation, &g.quotient_images, &bb.presentation));
    }

    #[test]
    fn g_empty_for_simply_connected() {
        let l = corpus::solid_triangle();
        let cover = build_cover(&l, &crate::constructions::VoltageAssignment::trivial(1)).unwrap();
        let deck = DeckAction { generators: vec![] };
        let g = g_empty_presentation(&l, &cover, &deck, 100).unwrap();
        let bb = bb_presentation(&l, &[], &HeightSet::new([0])).unwrap();
        assert_eq!(g.presentation.relators, bb.presentation.relators);
        assert_eq!(g.presentation.num_generators(), bb.presentation.num_generators());
    }
}
