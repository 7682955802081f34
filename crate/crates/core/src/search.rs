//! Random sampling of null symplectic triple systems.
//!
//! Totally symmetric products are drawn with a support size uniform in
//! 1..=coefficients, then a uniform support and uniform nonzero values.
//! Survivors of the derivation identity are tested for simplicity by the
//! inder-submodule search, and every simple find keeps its search record.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactla::Fp;
use crate::triples::{dxx_squared_vanishes, is_simple_triple, TripleError, TripleKind, TripleSimplicityMethod, TripleSystem};

#[derive(Clone, Copy, Debug)]
pub struct SearchParams {
    pub dim: usize,
    pub p: u32,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleFind {
    pub trial: usize,
    /// coefficients of [e_i e_j e_k] for i ≤ j ≤ k in lexicographic order
    pub tensor: Vec<Vec<u32>>,
    pub inder_dim: usize,
    pub witness: TripleSimplicityMethod,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub dim: usize,
    pub p: u32,
    pub trials: usize,
    pub seed: u64,
    /// number of free coefficients; the space has p^coefficients tensors
    pub coefficients: usize,
    /// trials over the size of the space
    pub coverage: String,
    pub zero_product: usize,
    pub failed_identity: usize,
    pub survivors: usize,
    pub not_simple: usize,
    pub simple: Vec<SimpleFind>,
    /// d_{x,x}² = 0 on every survivor; only checked when p ≥ 5
    pub dxx_squared_zero: Option<bool>,
}

impl SearchReport {
    /// A simple null STS of dimension above 2 is the interesting event.
    pub fn simple_above_dim2(&self) -> bool {
        self.dim > 2 && !self.simple.is_empty()
    }
}

fn multisets(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn coverage(trials: usize, p: u32, coefficients: usize) -> String {
    let exponent = coefficients as f64 * f64::from(p).log10();
    if exponent < 15.0 {
        let total = u64::from(p).pow(coefficients as u32);
        format!("{trials}/{total}")
    } else {
        format!("{trials}/{p}^{coefficients}")
    }
}

fn sample(rng: &mut ChaCha8Rng, sets: usize, n: usize, p: u32) -> Vec<Vec<u32>> {
    let total = sets * n;
    let support = rng.gen_range(1..=total);
    let mut flat = vec![0; total];
    for at in rand::seq::index::sample(rng, total, support) {
        flat[at] = rng.gen_range(1..p);
    }
    flat.chunks(n).map(<[u32]>::to_vec).collect()
}

/// The null STS with [e_i e_j e_k] = tensor[index of sorted (i, j, k)].
pub fn symmetric_system(f: Fp, n: usize, tensor: &[Vec<u32>]) -> Result<TripleSystem, TripleError> {
    let sets = multisets(n);
    TripleSystem::from_basis_fn(f, n, TripleKind::NullSts, None, None, |i, j, k| {
        let mut key = [i, j, k];
        key.sort_unstable();
        let at = sets.binary_search(&key).expect("sorted multiset");
        tensor[at].clone()
    })
}

pub fn search_null_sts(params: SearchParams) -> Result<SearchReport, TripleError> {
    let f = Fp::new(params.p).map_err(|e| TripleError::Precondition(e.to_string()))?;
    let n = params.dim;
    if n == 0 {
        return Err(TripleError::Precondition("dimension must be positive".into()));
    }
    let sets = multisets(n);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut report = SearchReport {
        dim: n,
        p: params.p,
        trials: params.trials,
        seed: params.seed,
        coefficients: sets.len() * n,
        coverage: coverage(params.trials, params.p, sets.len() * n),
        zero_product: 0,
        failed_identity: 0,
        survivors: 0,
        not_simple: 0,
        simple: Vec::new(),
        dxx_squared_zero: (params.p >= 5).then_some(true),
    };
    for trial in 0..params.trials {
        let tensor = sample(&mut rng, sets.len(), n, params.p);
        let t = symmetric_system(f, n, &tensor)?;
        if t.product_is_zero() {
            report.zero_product += 1;
            continue;
        }
        if !t.check_axioms().passed() {
            report.failed_identity += 1;
            continue;
        }
        report.survivors += 1;
        if let Some(ok) = report.dxx_squared_zero.as_mut() {
            *ok &= dxx_squared_vanishes(&t, 8, params.seed ^ trial as u64);
        }
        let verdict = is_simple_triple(&t);
        if verdict.simple {
            report.simple.push(SimpleFind { trial, tensor, inder_dim: t.inder()?.dim(), witness: verdict.method });
        } else {
            report.not_simple += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dimensional_simple_finds_exist() {
        let r = search_null_sts(SearchParams { dim: 2, p: 3, trials: 1000, seed: 1 }).unwrap();
        assert_eq!(r.zero_product + r.failed_identity + r.survivors, 1000);
        assert_eq!(r.survivors, r.not_simple + r.simple.len());
        assert!(!r.simple.is_empty());
        assert!(!r.simple_above_dim2());
        for s in &r.simple {
            let t = symmetric_system(Fp::new(3).unwrap(), 2, &s.tensor).unwrap();
            assert!(t.check_axioms().passed());
            assert!(matches!(s.witness, TripleSimplicityMethod::CyclicSearch(ref c) if c.witness.is_none() && c.points == 4));
        }
    }

    #[test]
    fn exhaustive_dim2_over_gf3() {
        // every symmetric tensor on k²: exactly the two ε-shapes are simple
        let f = Fp::new(3).unwrap();
        let mut simple = Vec::new();
        for code in 0..3u32.pow(8) {
            let flat: Vec<u32> = (0..8).map(|i| code / 3u32.pow(i) % 3).collect();
            let tensor: Vec<Vec<u32>> = flat.chunks(2).map(<[u32]>::to_vec).collect();
            let t = symmetric_system(f, 2, &tensor).unwrap();
            if !t.product_is_zero() && t.check_axioms().passed() && is_simple_triple(&t).simple {
                simple.push(tensor);
            }
        }
        assert_eq!(simple, vec![vec![vec![0, 0], vec![2, 0], vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0], vec![0, 2], vec![0, 0]]]);
    }

    #[test]
    fn deterministic_for_seed() {
        let a = search_null_sts(SearchParams { dim: 2, p: 3, trials: 200, seed: 7 }).unwrap();
        let b = search_null_sts(SearchParams { dim: 2, p: 3, trials: 200, seed: 7 }).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn no_simple_finds_outside_char3() {
        // no simple null STS exists in characteristic ≠ 2, 3
        let r = search_null_sts(SearchParams { dim: 2, p: 5, trials: 3000, seed: 3 }).unwrap();
        assert!(r.simple.is_empty());
        assert_eq!(r.dxx_squared_zero, Some(true));
    }

    #[test]
    fn coverage_strings() {
        assert_eq!(coverage(10, 3, 8), "10/6561");
        assert_eq!(coverage(10, 3, 60), "10/3^60");
    }
}
