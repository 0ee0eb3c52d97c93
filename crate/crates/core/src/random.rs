//! Seeded random complexes for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;

pub const DEFAULT_SEED: u64 = 0x5eed_f1a9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closure of random subsets of `{0..n}` of size 2 to 4, each kept with
/// probability `p`.
pub fn random_complex<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimplicialComplex {
    let mut gens = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones();
        if (2..=4).contains(&size) && rng.gen_bool(p) {
            gens.push((0..n).filter(|&i| mask & (1 << i) != 0).collect());
        }
    }
    SimplicialComplex::from_indexed(labels(n), gens).unwrap()
}

/// Clique complex of a random graph `G(n, p)`.
pub fn random_flag_complex<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimplicialComplex {
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let mut gens = Vec::new();
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if vs.len() >= 2 && vs.iter().all(|&a| vs.iter().all(|&b| a == b || adj[a][b])) {
            gens.push(vs);
        }
    }
    SimplicialComplex::from_indexed(labels(n), gens).unwrap()
}

/// Alternates between the two generators with a random size in `1..=max_n`.
pub fn mixed<R: Rng>(rng: &mut R, max_n: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_n);
    let p = *[0.2, 0.35, 0.5, 0.7].choose(rng).unwrap();
    if rng.gen_bool(0.5) {
        random_flag_complex(rng, n, p)
    } else {
        random_complex(rng, n, p)
    }
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_flag() {
        let a = random_complex(&mut rng(7), 6, 0.4);
        let b = random_complex(&mut rng(7), 6, 0.4);
        assert_eq!(a, b);
        let mut r = rng(3);
        for _ in 0..20 {
            assert!(random_flag_complex(&mut r, 6, 0.5).is_flag());
        }
    }
}
