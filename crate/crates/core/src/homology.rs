//! Exact integer linear algebra for homology: sparse integer matrices,
//! Smith normal form, ranks modulo a prime, and homology of finite free
//! chain complexes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Sparse integer matrix, row-major, each row sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Sums duplicate coordinates; drops zeros.
    pub fn from_triplets<I, T>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, T)>,
        T: Into<BigInt>,
    {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc[r].entry(c).or_insert_with(BigInt::zero) += v.into();
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        IntegerMatrix { rows, cols, data }
    }

    pub fn from_rows_i64(rows: usize, cols: usize, dense: &[Vec<i64>]) -> Self {
        assert_eq!(dense.len(), rows);
        Self::from_triplets(
            rows,
            cols,
            dense.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), cols);
                row.iter().enumerate().map(move |(c, &v)| (r, c, v))
            }),
        )
    }

    pub fn from_dense(dense: &[Vec<BigInt>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map(|r| r.len()).unwrap_or(0);
        Self::from_triplets(
            rows,
            cols,
            dense.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, 1)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, BigInt)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c, r, v.clone()))),
        )
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(BigInt::zero) += a * b;
                }
            }
            entries.extend(acc.into_iter().map(|(c, v)| (r, c, v)));
        }
        Ok(Self::from_triplets(self.rows, other.cols, entries))
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let shift = self.cols;
        let entries = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone())))
            .chain(
                other
                    .data
                    .iter()
                    .enumerate()
                    .flat_map(move |(r, row)| row.iter().map(move |(c, v)| (r, c + shift, v.clone()))),
            );
        Ok(Self::from_triplets(self.rows, self.cols + other.cols, entries))
    }
}

/// Invariant factors `d₁ | d₂ | … | d_r` (all positive) of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Factors different from 1.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.magnitude().clone())
            .collect()
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.invariant_factors.iter().all(|d| d.is_positive())
            && self.invariant_factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

/// Invariant factors by sparse elimination, pivoting on an entry of least
/// absolute value with the smallest Markowitz count.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let mut work = SparseWork::new(a);
    let mut diagonal = Vec::new();
    while let Some((mut r, mut c)) = work.best_pivot() {
        loop {
            if let Some(i) = work.clear_column(r, c) {
                r = i;
                continue;
            }
            if let Some(j) = work.clear_row(r, c) {
                c = j;
                continue;
            }
            diagonal.push(work.take_pivot(r, c));
            break;
        }
    }
    SnfResult { invariant_factors: divisibility_chain(diagonal) }
}

fn divisibility_chain(diagonal: Vec<BigInt>) -> Vec<BigInt> {
    let (units, mut rest): (Vec<BigInt>, Vec<BigInt>) = diagonal.into_iter().partition(|d| d.is_one());
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    units.into_iter().chain(rest).collect()
}

struct SparseWork {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl SparseWork {
    fn new(a: &IntegerMatrix) -> Self {
        let mut cols = vec![BTreeSet::new(); a.cols];
        let rows = a
            .data
            .iter()
            .enumerate()
            .map(|(r, row)| {
                for (c, _) in row {
                    cols[*c].insert(r);
                }
                row.iter().cloned().collect()
            })
            .collect();
        SparseWork { rows, cols }
    }

    fn best_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(&BigUint, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                let cost = (row.len() - 1) * (self.cols[c].len() - 1);
                let key = (v.magnitude(), cost, r, c);
                if best.as_ref().is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn set(&mut self, r: usize, c: usize, v: BigInt) {
        if v.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.rows[r].insert(c, v);
            self.cols[c].insert(r);
        }
    }

    /// row_i -= q · row_r
    fn row_sub(&mut self, i: usize, r: usize, q: &BigInt) {
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (&j, v) in &pivot_row {
            let cur = self.rows[i].get(&j).cloned().unwrap_or_default();
            self.set(i, j, cur - q * v);
        }
        self.rows[r] = pivot_row;
    }

    /// Reduces column `c` below/above the pivot; returns a row holding a
    /// nonzero remainder of smaller absolute value, if any.
    fn clear_column(&mut self, r: usize, c: usize) -> Option<usize> {
        let p = self.rows[r][&c].clone();
        let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
        let mut smallest: Option<(BigUint, usize)> = None;
        for i in others {
            let q = &self.rows[i][&c] / &p;
            if !q.is_zero() {
                self.row_sub(i, r, &q);
            }
            if let Some(rem) = self.rows[i].get(&c) {
                let m = rem.magnitude().clone();
                if smallest.as_ref().is_none_or(|(s, _)| m < *s) {
                    smallest = Some((m, i));
                }
            }
        }
        smallest.map(|(_, i)| i)
    }

    /// With column `c` cleared, column operations only touch row `r`.
    fn clear_row(&mut self, r: usize, c: usize) -> Option<usize> {
        let p = self.rows[r][&c].clone();
        let entries: Vec<(usize, BigInt)> =
            self.rows[r].iter().filter(|(j, _)| **j != c).map(|(j, v)| (*j, v.clone())).collect();
        let mut smallest: Option<(BigUint, usize)> = None;
        for (j, v) in entries {
            let rem = &v - (&v / &p) * &p;
            if !rem.is_zero() {
                let m = rem.magnitude().clone();
                if smallest.as_ref().is_none_or(|(s, _)| m < *s) {
                    smallest = Some((m, j));
                }
            }
            self.set(r, j, rem);
        }
        smallest.map(|(_, j)| j)
    }

    fn take_pivot(&mut self, r: usize, c: usize) -> BigInt {
        let p = self.rows[r].remove(&c).expect("pivot present");
        debug_assert!(self.rows[r].is_empty());
        self.cols[c].remove(&r);
        debug_assert!(self.cols[c].is_empty());
        p.abs()
    }
}

/// Dense Smith normal form with unimodular transforms `U·A·V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
    pub result: SnfResult,
}

pub fn smith_normal_form_with_transforms(a: &IntegerMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.to_dense();
    let mut u = IntegerMatrix::identity(m).to_dense();
    let mut v = IntegerMatrix::identity(n).to_dense();
    let mut factors = Vec::new();

    fn add_row(mat: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
        for k in 0..mat[0].len() {
            let delta = q * &mat[src][k];
            mat[dst][k] += delta;
        }
    }
    fn add_col(mat: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
        for row in mat.iter_mut() {
            let delta = q * &row[src];
            row[dst] += delta;
        }
    }
    fn swap_cols(mat: &mut [Vec<BigInt>], a: usize, b: usize) {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
    }

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(BigUint, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[i][j].is_zero() {
                        let mag = d[i][j].magnitude().clone();
                        if best.as_ref().is_none_or(|b| mag < b.0) {
                            best = Some((mag, i, j));
                        }
                    }
                }
            }
            let Some((_, i, j)) = best else {
                return finish(u, v, d, factors);
            };
            d.swap(t, i);
            u.swap(t, i);
            swap_cols(&mut d, t, j);
            swap_cols(&mut v, t, j);

            let mut dirty = false;
            for i in t + 1..m {
                let q = -(&d[i][t] / &d[t][t]);
                if !q.is_zero() {
                    add_row(&mut d, i, t, &q);
                    add_row(&mut u, i, t, &q);
                }
                dirty |= !d[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = -(&d[t][j] / &d[t][t]);
                if !q.is_zero() {
                    add_col(&mut d, j, t, &q);
                    add_col(&mut v, j, t, &q);
                }
                dirty |= !d[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            let p = d[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &p).is_zero()));
            if let Some(i) = bad {
                let one = BigInt::one();
                add_row(&mut d, t, i, &one);
                add_row(&mut u, t, i, &one);
                continue;
            }
            if p.is_negative() {
                for k in 0..n {
                    d[t][k] = -d[t][k].clone();
                }
                for k in 0..m {
                    u[t][k] = -u[t][k].clone();
                }
            }
            factors.push(d[t][t].clone());
            break;
        }
    }
    return finish(u, v, d, factors);

    fn finish(
        u: Vec<Vec<BigInt>>,
        v: Vec<Vec<BigInt>>,
        d: Vec<Vec<BigInt>>,
        factors: Vec<BigInt>,
    ) -> SnfDecomposition {
        let rows = d.len();
        let cols = v.len();
        let dm = if rows == 0 || cols == 0 { IntegerMatrix::zeros(rows, cols) } else { IntegerMatrix::from_dense(&d) };
        let um = if rows == 0 { IntegerMatrix::zeros(0, 0) } else { IntegerMatrix::from_dense(&u) };
        let vm = if cols == 0 { IntegerMatrix::zeros(0, 0) } else { IntegerMatrix::from_dense(&v) };
        SnfDecomposition { u: um, v: vm, d: dm, result: SnfResult { invariant_factors: factors } }
    }
}

/// Rank over `𝔽_p` by sparse row echelon reduction.
pub fn rank_mod_p(a: &IntegerMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be at least 2");
    let reduce = |v: &BigInt| -> u64 {
        let r = v.mod_floor(&BigInt::from(p));
        r.to_u64().expect("residue fits")
    };
    let mut pivots: HashMap<usize, BTreeMap<usize, u64>> = HashMap::new();
    for row in &a.data {
        let mut cur: BTreeMap<usize, u64> =
            row.iter().map(|(c, v)| (*c, reduce(v))).filter(|(_, v)| *v != 0).collect();
        while let Some((&lead, &lv)) = cur.iter().next() {
            match pivots.get(&lead) {
                Some(prow) => {
                    // cur -= (lv / prow[lead]) · prow; prow is normalised to lead 1
                    for (&j, &pv) in prow {
                        let e = cur.entry(j).or_insert(0);
                        *e = (*e + p - (lv as u128 * pv as u128 % p as u128) as u64) % p;
                        if *e == 0 {
                            cur.remove(&j);
                        }
                    }
                }
                None => {
                    let inv = mod_inverse(lv, p);
                    for x in cur.values_mut() {
                        *x = (*x as u128 * inv as u128 % p as u128) as u64;
                    }
                    pivots.insert(lead, cur);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "{a} not invertible mod {p}; modulus must be prime");
    s0.rem_euclid(p as i128) as u64
}

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Q,
    /// Prime field; the modulus is assumed prime.
    Fp(u64),
}

impl Ring {
    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Z)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::Fp(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" => Ok(Ring::Z),
            "Q" | "q" => Ok(Ring::Q),
            _ => {
                let p: u64 = s
                    .strip_prefix(['F', 'f'])
                    .and_then(|r| r.trim_start_matches(['p', '_']).parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ring `{s}` (use Z, Q or F<p>)")))?;
                if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
                    return Err(Error::Parse(format!("F{p}: modulus must be prime")));
                }
                Ok(Ring::Fp(p))
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One homology group: free rank plus torsion coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(with = "big_list")]
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of torsion coefficients divisible by `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        self.torsion.iter().filter(|t| (*t % p).is_zero()).count()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in consecutive degrees starting at `min_degree` (-1 when reduced).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub ring: Ring,
    pub min_degree: i32,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn degree(&self, k: i32) -> HomologyGroup {
        let i = k - self.min_degree;
        if i < 0 {
            return HomologyGroup::default();
        }
        self.groups.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(|g| g.is_zero())
    }

    /// Drops zero groups above the top nonzero degree.
    pub fn trimmed(&self) -> HomologyProfile {
        let mut groups = self.groups.clone();
        while groups.last().is_some_and(HomologyGroup::is_zero) {
            groups.pop();
        }
        HomologyProfile { ring: self.ring, min_degree: self.min_degree, groups }
    }

    /// Equal groups in every degree, ignoring trailing zeros.
    pub fn same_groups(&self, other: &HomologyProfile) -> bool {
        self.ring == other.ring && self.min_degree == other.min_degree && self.trimmed().groups == other.trimmed().groups
    }

    /// Zero in every degree up to and including `n`.
    pub fn vanishes_through(&self, n: i32) -> bool {
        self.groups
            .iter()
            .enumerate()
            .filter(|(i, _)| self.min_degree + *i as i32 <= n)
            .all(|(_, g)| g.is_zero())
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .enumerate()
            .map(|(i, g)| format!("H{}={}", self.min_degree + i as i32, g))
            .collect();
        write!(f, "[{}] {}", self.ring, parts.join(", "))
    }
}

mod big_list {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> =
            v.iter().map(|b| b.to_u64().map(Entry::Small).unwrap_or_else(|| Entry::Big(b.to_string()))).collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigUint>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        entries
            .into_iter()
            .map(|e| match e {
                Entry::Small(x) => Ok(BigUint::from(x)),
                Entry::Big(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

/// A finite free chain complex `C_min ← C_{min+1} ← …`.
///
/// `boundaries[i]` maps `C_{min+i+1}` to `C_{min+i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
    min_degree: i32,
}

impl ChainComplex {
    /// Checks shapes and `∂∂ = 0`; degrees start at 0.
    pub fn new(boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        let Some(first) = boundaries.first() else {
            return Err(Error::DimensionMismatch("chain complex needs at least one boundary map".into()));
        };
        let mut dims = vec![first.rows()];
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[i] {
                return Err(Error::DimensionMismatch(format!(
                    "boundary {} has {} rows, expected {}",
                    i + 1,
                    b.rows(),
                    dims[i]
                )));
            }
            dims.push(b.cols());
        }
        Self::from_parts(dims, boundaries, 0)
    }

    /// A complex concentrated in one degree.
    pub fn single(dim: usize, degree: i32) -> Self {
        ChainComplex { dims: vec![dim], boundaries: Vec::new(), min_degree: degree }
    }

    fn from_parts(dims: Vec<usize>, boundaries: Vec<IntegerMatrix>, min_degree: i32) -> Result<Self> {
        for (i, w) in boundaries.windows(2).enumerate() {
            if !w[0].mul(&w[1])?.is_zero() {
                return Err(Error::BoundaryNotZero { degree: i + 1 });
            }
        }
        Ok(ChainComplex { dims, boundaries, min_degree })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundaries(&self) -> &[IntegerMatrix] {
        &self.boundaries
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    /// Prepends `ℤ` in degree `min - 1` with the augmentation `Σ x_i`.
    pub fn augmented(&self) -> ChainComplex {
        let n0 = self.dims[0];
        let eps = IntegerMatrix::from_triplets(1, n0, (0..n0).map(|j| (0, j, 1)));
        let mut dims = vec![1];
        dims.extend(self.dims.iter().copied());
        let mut boundaries = vec![eps];
        boundaries.extend(self.boundaries.iter().cloned());
        Self::from_parts(dims, boundaries, self.min_degree - 1).expect("augmentation of a cycle-closed complex")
    }
}

pub fn chain_homology(cc: &ChainComplex, ring: Ring) -> HomologyProfile {
    let mut ranks = Vec::with_capacity(cc.boundaries.len());
    let mut torsion = Vec::with_capacity(cc.boundaries.len());
    for b in &cc.boundaries {
        match ring {
            Ring::Z | Ring::Q => {
                let snf = smith_normal_form(b);
                ranks.push(snf.rank());
                torsion.push(if ring == Ring::Z { snf.torsion() } else { Vec::new() });
            }
            Ring::Fp(p) => {
                ranks.push(rank_mod_p(b, p));
                torsion.push(Vec::new());
            }
        }
    }
    let groups = (0..cc.dims.len())
        .map(|i| {
            let out_rank = if i > 0 { ranks[i - 1] } else { 0 };
            let in_rank = ranks.get(i).copied().unwrap_or(0);
            HomologyGroup {
                rank: cc.dims[i] - out_rank - in_rank,
                torsion: torsion.get(i).cloned().unwrap_or_default(),
            }
        })
        .collect();
    HomologyProfile { ring, min_degree: cc.min_degree, groups }
}

/// Homology of a free chain complex given by its boundary maps, degree 0 first.
pub fn cellular_homology(boundaries: &[IntegerMatrix], ring: Ring) -> Result<HomologyProfile> {
    Ok(chain_homology(&ChainComplex::new(boundaries.to_vec())?, ring))
}

/// Simplicial boundary maps `∂_k : C_k → C_{k-1}` for `k = 1..=dim`, with
/// simplices oriented by sorted vertex order; deleting position `i` carries
/// sign `(-1)^i`.
pub fn boundary_matrices(c: &SimplicialComplex) -> Vec<IntegerMatrix> {
    let dim = c.dimension();
    (1..=dim.max(0) as usize)
        .filter(|_| dim >= 1)
        .map(|k| {
            let entries = c.simplices(k).iter().enumerate().flat_map(|(j, s)| {
                (0..s.len()).map(move |i| {
                    let mut f = s.clone();
                    f.remove(i);
                    let row = c.simplex_index(&f).expect("closed complex");
                    (row, j, if i % 2 == 0 { 1 } else { -1 })
                })
            });
            IntegerMatrix::from_triplets(c.count(k - 1), c.count(k), entries)
        })
        .collect()
}

pub fn simplicial_chain_complex(c: &SimplicialComplex) -> ChainComplex {
    let b = boundary_matrices(c);
    if b.is_empty() {
        return ChainComplex::single(c.count(0), 0);
    }
    ChainComplex::new(b).expect("simplicial boundary squares to zero")
}

pub fn homology(c: &SimplicialComplex, ring: Ring) -> HomologyProfile {
    chain_homology(&simplicial_chain_complex(c), ring)
}

/// Reduced homology via the augmented chain complex, degree -1 first.
pub fn reduced_homology(c: &SimplicialComplex, ring: Ring) -> HomologyProfile {
    chain_homology(&simplicial_chain_complex(c).augmented(), ring)
}

pub fn is_acyclic(c: &SimplicialComplex, ring: Ring) -> bool {
    reduced_homology(c, ring).is_zero()
}

/// Reduced homology vanishes in degrees `≤ n`.
pub fn is_n_acyclic(c: &SimplicialComplex, ring: Ring, n: i32) -> bool {
    reduced_homology(c, ring).vanishes_through(n)
}

/// `true` when `x` has a unit sign (used by callers that need ±1 checks).
pub fn is_unit(x: &BigInt) -> bool {
    x.sign() != Sign::NoSign && x.magnitude().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        IntegerMatrix::from_rows_i64(r, c, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>())
    }

    fn factors(a: &IntegerMatrix) -> Vec<i64> {
        smith_normal_form(a).invariant_factors.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(factors(&m(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert!(smith_normal_form(&IntegerMatrix::zeros(3, 4)).invariant_factors.is_empty());
        // hand elimination: [[2,4],[6,10]] → r2 -= 3 r1 → [[2,4],[0,-2]] → c2 -= 2 c1 → diag(2,2)
        assert_eq!(factors(&m(&[&[2, 4], &[6, 10]])), vec![2, 2]);
        assert_eq!(factors(&m(&[&[4, 6]])), vec![2]);
    }

    #[test]
    fn transforms_satisfy_uav() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let dec = smith_normal_form_with_transforms(&a);
        assert_eq!(dec.u.mul(&a).unwrap().mul(&dec.v).unwrap(), dec.d);
        let f: Vec<i64> = dec.result.invariant_factors.iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(f, vec![2, 6, 12]);
        assert_eq!(factors(&a), f);
    }

    #[test]
    fn triangle_boundary_column() {
        let b = boundary_matrices(&corpus::solid_triangle());
        assert_eq!(b.len(), 2);
        let d2: Vec<i64> = (0..3).map(|r| b[1].get(r, 0).to_i64().unwrap()).collect();
        assert_eq!(d2, vec![1, -1, 1]);
        let oct = boundary_matrices(&corpus::octahedron());
        assert!(oct[0].mul(&oct[1]).unwrap().is_zero());
    }

    #[test]
    fn reduced_examples() {
        let oct = reduced_homology(&corpus::octahedron(), Ring::Z);
        assert_eq!(oct.min_degree, -1);
        assert_eq!(oct.ranks(), vec![0, 0, 0, 1]);
        assert!(is_n_acyclic(&corpus::octahedron(), Ring::Z, 1));
        assert!(!is_acyclic(&corpus::octahedron(), Ring::Z));
        let empty = reduced_homology(&SimplicialComplex::empty(), Ring::Z);
        assert_eq!(empty.groups, vec![HomologyGroup::free(1), HomologyGroup::free(0)]);
        let two_points = SimplicialComplex::new(["a", "b"], &Vec::<Vec<&str>>::new()).unwrap();
        assert_eq!(reduced_homology(&two_points, Ring::Z).ranks(), vec![0, 1]);
    }

    #[test]
    fn rp2_coefficients() {
        let rp2 = corpus::rp2_barycentric();
        let z = reduced_homology(&rp2, Ring::Z);
        assert_eq!(z.degree(1).torsion, vec![BigUint::from(2u32)]);
        assert_eq!(z.degree(1).rank, 0);
        assert!(z.degree(2).is_zero());
        assert!(!is_n_acyclic(&rp2, Ring::Fp(2), 1));
        assert_eq!(reduced_homology(&rp2, Ring::Fp(2)).degree(1).rank, 1);
        assert!(is_acyclic(&rp2, Ring::Q));
        assert!(is_acyclic(&rp2, Ring::Fp(3)));
    }

    #[test]
    fn cellular_examples() {
        let chain = [IntegerMatrix::zeros(1, 4), IntegerMatrix::zeros(4, 4)];
        assert_eq!(cellular_homology(&chain, Ring::Z).unwrap().ranks(), vec![1, 4, 4]);
        // ⟨a | a²⟩
        let two = [IntegerMatrix::zeros(1, 1), m(&[&[2]])];
        let h = cellular_homology(&two, Ring::Z).unwrap();
        assert_eq!(h.degree(1).torsion, vec![BigUint::from(2u32)]);
        let bad = [m(&[&[1]]), m(&[&[1]])];
        assert_eq!(cellular_homology(&bad, Ring::Z), Err(Error::BoundaryNotZero { degree: 1 }));
    }

    #[test]
    fn ring_parsing_and_json() {
        assert_eq!("F2".parse::<Ring>().unwrap(), Ring::Fp(2));
        assert_eq!("Fp5".parse::<Ring>().unwrap(), Ring::Fp(5));
        assert!("F4".parse::<Ring>().is_err());
        let h = reduced_homology(&corpus::octahedron(), Ring::Z);
        let json = serde_json::to_string(&h).unwrap();
        assert!(json.starts_with(r#"{"ring":"Z","min_degree":-1,"groups":[{"rank":0,"torsion":[]}"#));
        assert_eq!(serde_json::from_str::<HomologyProfile>(&json).unwrap(), h);
    }

    #[test]
    fn mod_p_rank_matches_small() {
        let a = m(&[&[2, 4], &[6, 10]]);
        assert_eq!(rank_mod_p(&a, 2), 0);
        assert_eq!(rank_mod_p(&a, 3), 2);
        assert_eq!(rank_mod_p(&m(&[&[1, 2], &[2, 4]]), 7), 1);
    }
}
