//! Irreducibility testing for modules given by generating operators.
//!
//! A module is `GF(p)^n` acted on by the associative algebra generated by a
//! list of operators. Proper submodules are found by spinning kernel vectors
//! of random algebra elements; irreducibility is certified with Norton's
//! criterion in the Holt–Rees form (an irreducible factor f with
//! dim ker f(B) = deg f).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactla::{rank_kernel, Fp, Matrix, SparseMatrix, Subspace};

pub const DEFAULT_TRIALS: usize = 64;

#[derive(Clone, Debug)]
pub struct MatrixModule {
    field: Fp,
    dim: usize,
    gens: Vec<SparseMatrix>,
}

/// Evidence that the module is irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NortonCertificate {
    pub seed: u64,
    pub trial: usize,
    /// monic irreducible polynomial, coefficients from the constant term up
    pub poly: Vec<u32>,
    pub nullity: usize,
    /// spins to the whole module
    pub kernel_vector: Vec<u32>,
    /// spins to the whole dual module
    pub dual_vector: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeataxeOutcome {
    Irreducible(NortonCertificate),
    Reducible(Subspace),
    Inconclusive { trials: usize, seed: u64 },
}

/// Result of spinning every projective point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicSearch {
    pub points: usize,
    /// first point found to generate a proper submodule
    pub witness: Option<Vec<u32>>,
}

impl MatrixModule {
    pub fn new(field: Fp, dim: usize, gens: Vec<SparseMatrix>) -> MatrixModule {
        assert!(gens.iter().all(|g| g.rows() == dim && g.ncols() == dim), "generator shape mismatch");
        MatrixModule { field, dim, gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[SparseMatrix] {
        &self.gens
    }

    pub fn dual(&self) -> MatrixModule {
        MatrixModule { field: self.field, dim: self.dim, gens: self.gens.iter().map(SparseMatrix::transpose).collect() }
    }

    /// Whether `s` is invariant under every generator.
    pub fn is_invariant(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| self.gens.iter().all(|g| s.contains(self.field, &g.apply(self.field, v))))
    }

    /// Smallest invariant subspace containing `seeds`.
    pub fn spin(&self, seeds: &[Vec<u32>]) -> Subspace {
        let f = self.field;
        let mut s = Subspace::zero(self.dim);
        for v in seeds {
            s.insert(f, v.clone());
        }
        self.close(s, None)
    }

    /// Spin, trying the cheap operators in `fast` first; the result is the
    /// invariant closure either way.
    fn close(&self, mut s: Subspace, fast: Option<&[Matrix]>) -> Subspace {
        let f = self.field;
        if let Some(ops) = fast {
            let mut queue: Vec<Vec<u32>> = s.basis().to_vec();
            while let Some(v) = queue.pop() {
                if s.is_full() {
                    return s;
                }
                for op in ops {
                    let w = op.mul_vec(f, &v);
                    if s.insert(f, w.clone()) {
                        queue.push(w);
                    }
                }
            }
        }
        let mut queue: Vec<Vec<u32>> = s.basis().to_vec();
        while let Some(v) = queue.pop() {
            if s.is_full() {
                break;
            }
            for g in &self.gens {
                let w = g.apply(f, &v);
                if s.insert(f, w.clone()) {
                    queue.push(w);
                }
            }
        }
        s
    }

    fn random_combination(&self, rng: &mut ChaCha8Rng) -> Matrix {
        let f = self.field;
        let mut m = Matrix::zeros(self.dim, self.dim);
        for g in &self.gens {
            let c = rng.gen_range(0..f.p());
            if c == 0 {
                continue;
            }
            for (j, col) in g.columns().iter().enumerate() {
                for &(i, x) in &col.entries {
                    let i = i as usize;
                    m.set(i, j, f.add(m.get(i, j), f.mul(c, x)));
                }
            }
        }
        m
    }

    /// Random element c·1 + A1 + A2A3 + A4A5A6 of the enveloping algebra.
    fn random_element(&self, rng: &mut ChaCha8Rng) -> (Matrix, [Matrix; 2]) {
        let f = self.field;
        let a: Vec<Matrix> = (0..6).map(|_| self.random_combination(rng)).collect();
        let c = rng.gen_range(0..f.p());
        let mut b = Matrix::scalar(self.dim, c);
        b = b.add(f, &a[0]);
        b = b.add(f, &a[1].mul(f, &a[2]));
        b = b.add(f, &a[3].mul(f, &a[4]).mul(f, &a[5]));
        (b, [a[0].clone(), a[1].clone()])
    }

    /// Monic irreducible polynomials of degree 1 and 2.
    fn candidate_polys(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut out: Vec<Vec<u32>> = f.elements().map(|l| vec![f.neg(l), 1]).collect();
        for a in f.elements() {
            for b in f.elements() {
                // x² + a x + b irreducible iff a² − 4b is a non-square
                let disc = f.sub(f.mul(a, a), f.mul(4 % f.p(), b));
                if !f.is_square(disc) {
                    out.push(vec![b, a, 1]);
                }
            }
        }
        out
    }

    pub fn meataxe(&self, seed: u64, budget: usize) -> MeataxeOutcome {
        let f = self.field;
        let n = self.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let polys = self.candidate_polys();
        for trial in 0..budget {
            let (b, fast) = self.random_element(&mut rng);
            let b2 = b.mul(f, &b);
            for poly in &polys {
                let mut m = Matrix::scalar(n, poly[0]);
                m.add_scaled(f, poly[1], &b);
                if poly.len() == 3 {
                    m = m.add(f, &b2);
                }
                let deg = poly.len() - 1;
                let (rank, kernel) = rank_kernel(f, &m);
                if rank == n {
                    continue;
                }
                let v = kernel.basis()[0].clone();
                let mut start = Subspace::zero(n);
                start.insert(f, v.clone());
                let span = self.close(start, Some(&fast));
                if !span.is_full() {
                    return MeataxeOutcome::Reducible(span);
                }
                if n - rank != deg {
                    continue;
                }
                let dual = self.dual();
                let (_, dual_kernel) = rank_kernel(f, &m.transpose());
                let w = dual_kernel.basis()[0].clone();
                let mut start = Subspace::zero(n);
                start.insert(f, w.clone());
                let fast_t = [fast[0].transpose(), fast[1].transpose()];
                let dual_span = dual.close(start, Some(&fast_t));
                if !dual_span.is_full() {
                    return MeataxeOutcome::Reducible(dual_span.annihilator(f));
                }
                return MeataxeOutcome::Irreducible(NortonCertificate {
                    seed,
                    trial,
                    poly: poly.clone(),
                    nullity: deg,
                    kernel_vector: v,
                    dual_vector: w,
                });
            }
        }
        MeataxeOutcome::Inconclusive { trials: budget, seed }
    }

    /// Re-run the two spins recorded in a certificate.
    pub fn verify_certificate(&self, cert: &NortonCertificate) -> bool {
        cert.nullity + 1 == cert.poly.len()
            && self.spin(std::slice::from_ref(&cert.kernel_vector)).is_full()
            && self.dual().spin(std::slice::from_ref(&cert.dual_vector)).is_full()
    }

    /// Spin every nonzero vector up to scalars.
    pub fn cyclic_search(&self) -> CyclicSearch {
        let f = self.field;
        let n = self.dim;
        let mut points = 0;
        for lead in 0..n {
            let tail = n - lead - 1;
            let count = (f.p() as usize).pow(tail as u32);
            for code in 0..count {
                let mut v = vec![0; n];
                v[lead] = 1;
                let mut c = code;
                for slot in v.iter_mut().skip(lead + 1) {
                    *slot = (c % f.p() as usize) as u32;
                    c /= f.p() as usize;
                }
                points += 1;
                if !self.spin(&[v.clone()]).is_full() {
                    return CyclicSearch { points, witness: Some(v) };
                }
            }
        }
        CyclicSearch { points, witness: None }
    }

    /// Number of projective points, saturating.
    pub fn projective_points(&self) -> u128 {
        let p = u128::from(self.field.p());
        let mut acc: u128 = 0;
        for k in 0..self.dim {
            acc = acc.saturating_add(p.saturating_pow(k as u32));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::SparseVec;

    fn f3() -> Fp {
        Fp::new(3).unwrap()
    }

    fn op(m: &[Vec<u32>]) -> SparseMatrix {
        SparseMatrix::from_dense(&Matrix::from_rows(m))
    }

    #[test]
    fn upper_triangular_action_is_reducible() {
        let m = MatrixModule::new(f3(), 2, vec![op(&[vec![1, 1], vec![0, 1]])]);
        match m.meataxe(1, 8) {
            MeataxeOutcome::Reducible(s) => {
                assert_eq!(s.dim(), 1);
                assert!(m.is_invariant(&s));
            }
            other => panic!("expected reducible, got {other:?}"),
        }
        assert!(m.cyclic_search().witness.is_some());
    }

    #[test]
    fn full_matrix_algebra_is_irreducible() {
        let e12 = op(&[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        let cyc = op(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let m = MatrixModule::new(f3(), 3, vec![e12, cyc]);
        match m.meataxe(7, DEFAULT_TRIALS) {
            MeataxeOutcome::Irreducible(c) => assert!(m.verify_certificate(&c)),
            other => panic!("expected irreducible, got {other:?}"),
        }
        assert_eq!(m.cyclic_search(), CyclicSearch { points: 13, witness: None });
        assert_eq!(m.projective_points(), 13);
    }

    #[test]
    fn field_extension_structure_needs_quadratic_factor() {
        // multiplication by a root of x² + 1 on GF(9) = GF(3)²: irreducible,
        // but no linear factor ever has a kernel of dimension 1
        let j = op(&[vec![0, 2], vec![1, 0]]);
        let m = MatrixModule::new(f3(), 2, vec![j]);
        match m.meataxe(3, DEFAULT_TRIALS) {
            MeataxeOutcome::Irreducible(c) => assert_eq!(c.poly.len(), 3),
            other => panic!("expected irreducible, got {other:?}"),
        }
    }

    #[test]
    fn zero_action_on_two_dims_splits() {
        let z = SparseMatrix::from_columns(2, vec![SparseVec::new(), SparseVec::new()]);
        let m = MatrixModule::new(f3(), 2, vec![z]);
        assert!(matches!(m.meataxe(0, 4), MeataxeOutcome::Reducible(_)));
    }
}
