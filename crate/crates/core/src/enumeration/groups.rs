//! Finite groups as multiplication tables.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Element `0` is the identity; `mul(a, b)` is the product `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    /// Permutation realisations of the elements, when the group is one.
    perms: Option<Vec<Vec<u8>>>,
}

impl FiniteGroup {
    /// Checks identity, inverses and associativity of the table.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > u16::MAX as usize || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table must be square with entries in range".into()));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(Error::InvalidGroup("element 0 is not the identity".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        let g = Self::from_fn(name, n, |a, b| table[a][b]);
        if g.inverse.iter().any(|&x| x as usize == usize::from(u16::MAX)) {
            return Err(Error::InvalidGroup("some element has no inverse".into()));
        }
        Ok(g)
    }

    fn from_fn(name: impl Into<String>, n: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0u16; n * n];
        let mut inverse = vec![u16::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                table[a * n + b] = c as u16;
                if c == 0 {
                    inverse[a] = b as u16;
                }
            }
        }
        FiniteGroup { name: name.into(), order: n, table, inverse, perms: None }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inverse[a as usize]
    }

    /// `a` or `a⁻¹` according to the sign of a letter.
    #[inline]
    pub fn signed(&self, a: u16, sign: i32) -> u16 {
        if sign > 0 {
            a
        } else {
            self.inv(a)
        }
    }

    pub fn perm(&self, a: u16) -> Option<&[u8]> {
        self.perms.as_ref().map(|p| p[a as usize].as_slice())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(format!("C{n}"), n, |a, b| (a + b) % n)
    }

    /// Symmetries of the regular `n`-gon, order `2n`; element `i + n·j` is `rⁱsʲ`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(format!("D{}", 2 * n), 2 * n, |x, y| {
            let (a, b) = (x % n, x / n);
            let (c, d) = (y % n, y / n);
            let r = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            r + n * ((b + d) % 2)
        })
    }

    pub fn quaternion() -> Self {
        // units 1, i, j, k; element s·4 + u is (−1)ˢ·u
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        Self::from_fn("Q8", 8, |x, y| {
            let (s, u) = UNIT[x % 4][y % 4];
            4 * ((s + x / 4 + y / 4) % 2) + u
        })
    }

    /// Elements indexed by lexicographic rank; `a·b` applies `a` first.
    pub fn symmetric(d: usize) -> Result<Self> {
        if d == 0 || d > 7 {
            return Err(Error::InvalidGroup(format!("symmetric groups supported for degree 1 to 7, not {d}")));
        }
        let perms = all_perms(d);
        let n = perms.len();
        let mut g = Self::from_fn(format!("S{d}"), n, |a, b| {
            let (p, q) = (&perms[a], &perms[b]);
            let composed: Vec<u8> = p.iter().map(|&i| q[i as usize]).collect();
            rank(&composed)
        });
        g.perms = Some(perms);
        Ok(g)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let m = b.order;
        Self::from_fn(format!("{}x{}", a.name, b.name), a.order * m, |x, y| {
            a.mul((x / m) as u16, (y / m) as u16) as usize * m + b.mul((x % m) as u16, (y % m) as u16) as usize
        })
    }

    /// The fourteen groups of order at most 8, up to isomorphism.
    pub fn all_of_order_at_most_8() -> Vec<FiniteGroup> {
        let c2 = Self::cyclic(2);
        vec![
            Self::trivial(),
            Self::cyclic(2),
            Self::cyclic(3),
            Self::cyclic(4),
            Self::direct_product(&c2, &c2),
            Self::cyclic(5),
            Self::cyclic(6),
            Self::dihedral(3),
            Self::cyclic(7),
            Self::cyclic(8),
            Self::direct_product(&Self::cyclic(4), &c2),
            Self::direct_product(&Self::direct_product(&c2, &c2), &c2),
            Self::dihedral(4),
            Self::quaternion(),
        ]
    }

    /// Smallest element of each conjugacy class.
    pub fn class_representatives(&self) -> Vec<u16> {
        let mut seen = vec![false; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order as u16 {
            if seen[a as usize] {
                continue;
            }
            reps.push(a);
            for g in 0..self.order as u16 {
                let c = self.mul(self.mul(g, a), self.inv(g));
                seen[c as usize] = true;
            }
        }
        reps
    }

    pub fn element_order(&self, a: u16) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

fn all_perms(d: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..d as u8).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..d).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// Lexicographic rank through the Lehmer code.
fn rank(p: &[u8]) -> usize {
    let d = p.len();
    let mut r = 0;
    for i in 0..d {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r = r * (d - i) + smaller;
    }
    r
}

/// Index of each permutation of `0..d` in [`FiniteGroup::symmetric`].
pub fn symmetric_index(p: &[usize]) -> usize {
    rank(&p.iter().map(|&x| x as u8).collect::<Vec<_>>())
}

/// Counts of element orders, a cheap isomorphism invariant.
pub fn order_statistics(g: &FiniteGroup) -> HashMap<usize, usize> {
    let mut m = HashMap::new();
    for a in 0..g.order() as u16 {
        *m.entry(g.element_order(a)).or_default() += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abelian(g: &FiniteGroup) -> bool {
        (0..g.order() as u16).all(|a| (0..g.order() as u16).all(|b| g.mul(a, b) == g.mul(b, a)))
    }

    #[test]
    fn tables_are_groups() {
        for g in FiniteGroup::all_of_order_at_most_8() {
            let n = g.order();
            let table: Vec<Vec<usize>> =
                (0..n).map(|a| (0..n).map(|b| g.mul(a as u16, b as u16) as usize).collect()).collect();
            assert!(FiniteGroup::from_table(g.name.clone(), table).is_ok(), "{}", g.name);
        }
        assert!(FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn pairwise_distinct() {
        let gs = FiniteGroup::all_of_order_at_most_8();
        assert_eq!(gs.len(), 14);
        let q8 = FiniteGroup::quaternion();
        let d8 = FiniteGroup::dihedral(4);
        assert!(!abelian(&q8) && !abelian(&d8));
        assert_ne!(order_statistics(&q8), order_statistics(&d8));
        assert_eq!(order_statistics(&q8)[&4], 6);
    }

    #[test]
    fn symmetric_groups() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!abelian(&s3));
        assert_eq!(s3.class_representatives().len(), 3);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().class_representatives().len(), 5);
        assert_eq!(symmetric_index(&[0, 1, 2]), 0);
        assert_eq!(symmetric_index(&[2, 1, 0]), 5);
        assert_eq!(s3.perm(5), Some(&[2u8, 1, 0][..]));
    }
}
