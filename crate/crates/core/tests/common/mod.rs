//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use bosonlaw::fock::factorial;
use bosonlaw::{Interferometer, OccupationVector, C64};
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Σ_σ Π_i a_{i,σ(i)} by recursion over columns.
pub fn naive_permanent(a: &DMatrix<C64>) -> C64 {
    fn go(a: &DMatrix<C64>, row: usize, used: &mut Vec<bool>) -> C64 {
        if row == a.nrows() {
            return C64::new(1.0, 0.0);
        }
        let mut s = C64::new(0.0, 0.0);
        for j in 0..a.ncols() {
            if !used[j] {
                used[j] = true;
                s += a[(row, j)] * go(a, row + 1, used);
                used[j] = false;
            }
        }
        s
    }
    go(a, 0, &mut vec![false; a.ncols()])
}

/// ⟨n|m⟩ from the mode expansion: multiply out Π_k (Σ_l U_kl x_l)^{m_k},
/// take the coefficient of Π x_l^{n_l} and rescale by √(n!/m!).
pub fn expansion_amplitude(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> C64 {
    let dim = u.dim();
    let mut poly: BTreeMap<Vec<usize>, C64> = BTreeMap::new();
    poly.insert(vec![0; dim], C64::new(1.0, 0.0));
    for k in 0..dim {
        for _ in 0..m[k] {
            let mut next: BTreeMap<Vec<usize>, C64> = BTreeMap::new();
            for (mono, c) in &poly {
                for l in 0..dim {
                    let mut e = mono.clone();
                    e[l] += 1;
                    *next.entry(e).or_default() += c * u.entry(k, l);
                }
            }
            poly = next;
        }
    }
    let coeff = poly.get(n.counts()).copied().unwrap_or_default();
    let scale: f64 = (0..dim).map(|l| factorial(n[l]) / factorial(m[l])).product();
    coeff * scale.sqrt()
}

/// Uniform random occupation of `total` photons over `modes` modes.
pub fn random_occupation<R: rand::Rng>(modes: usize, total: usize, rng: &mut R) -> OccupationVector {
    let mut v = vec![0; modes];
    for _ in 0..total {
        v[rng.random_range(0..modes)] += 1;
    }
    OccupationVector::new(v)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}
