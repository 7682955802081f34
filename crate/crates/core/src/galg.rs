//! Z/2-graded Lie algebras and Lie superalgebras given by structure
//! constants, with Jacobi checks and structure analysis.
//!
//! Even basis vectors come first: indices `0..dim_even` are even and the
//! rest odd.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{rank_kernel, Fp, Matrix, SparseMatrix, SparseVec, Subspace};
use crate::meataxe::{MatrixModule, MeataxeOutcome, NortonCertificate, DEFAULT_TRIALS};
use crate::par::map_range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Lie,
    Superlie,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

/// Where the basis came from: which construction, on which input, and the
/// index ranges of its pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub functor: String,
    pub source: String,
    pub blocks: Vec<Block>,
}

impl Provenance {
    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GalgError {
    #[error("index {0} out of range")]
    Index(usize),
    #[error("pair ({0}, {1}) is not canonical (need i <= j)")]
    PairOrder(usize, usize),
    #[error("[e{i}, e{j}] has a component on e{k} of the wrong parity")]
    Parity { i: usize, j: usize, k: usize },
    #[error("[e{0}, e{0}] must vanish")]
    Diagonal(usize),
    #[error("coefficient {0} out of range")]
    Coefficient(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{0}")]
    WrongKind(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: Fp,
    kind: AlgebraKind,
    dim_even: usize,
    dim_odd: usize,
    /// table[i * n + j] = [e_i, e_j], completed
    table: Vec<SparseVec>,
    labels: Vec<String>,
    provenance: Option<Provenance>,
}

impl GradedAlgebra {
    /// Build from brackets on canonical pairs i ≤ j; missing pairs are zero.
    pub fn from_pairs(
        f: Fp,
        kind: AlgebraKind,
        dim_even: usize,
        dim_odd: usize,
        labels: Option<Vec<String>>,
        pairs: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
    ) -> Result<GradedAlgebra, GalgError> {
        let n = dim_even + dim_odd;
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("e{i}")).collect());
        if labels.len() != n {
            return Err(GalgError::Dimension { expected: n, got: labels.len() });
        }
        let mut g = GradedAlgebra { field: f, kind, dim_even, dim_odd, table: vec![SparseVec::new(); n * n], labels, provenance: None };
        for ((i, j), v) in pairs {
            if i >= n || j >= n {
                return Err(GalgError::Index(i.max(j)));
            }
            if i > j {
                return Err(GalgError::PairOrder(i, j));
            }
            for &(k, c) in &v.entries {
                if k as usize >= n {
                    return Err(GalgError::Index(k as usize));
                }
                if c == 0 || c >= f.p() {
                    return Err(GalgError::Coefficient(c));
                }
                if g.is_odd(k as usize) != (g.is_odd(i) ^ g.is_odd(j)) {
                    return Err(GalgError::Parity { i, j, k: k as usize });
                }
            }
            if i == j && !v.is_zero() && !(kind == AlgebraKind::Superlie && g.is_odd(i)) {
                return Err(GalgError::Diagonal(i));
            }
            let sign = g.swap_sign(i, j);
            g.table[j * n + i] = v.scaled(f, sign);
            g.table[i * n + j] = v;
        }
        Ok(g)
    }

    /// Build from a bracket function evaluated on canonical pairs.
    pub fn from_fn(
        f: Fp,
        kind: AlgebraKind,
        dim_even: usize,
        dim_odd: usize,
        labels: Option<Vec<String>>,
        mut bracket: impl FnMut(usize, usize) -> SparseVec,
    ) -> Result<GradedAlgebra, GalgError> {
        let n = dim_even + dim_odd;
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = bracket(i, j);
                if !v.is_zero() {
                    pairs.push(((i, j), v));
                }
            }
        }
        GradedAlgebra::from_pairs(f, kind, dim_even, dim_odd, labels, pairs)
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> GradedAlgebra {
        self.provenance = Some(provenance);
        self
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim_even + self.dim_odd
    }

    pub fn dim_even(&self) -> usize {
        self.dim_even
    }

    pub fn dim_odd(&self) -> usize {
        self.dim_odd
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        i >= self.dim_even
    }

    /// c with [e_j, e_i] = c [e_i, e_j].
    pub fn swap_sign(&self, i: usize, j: usize) -> u32 {
        let f = self.field;
        if self.kind == AlgebraKind::Superlie && self.is_odd(i) && self.is_odd(j) {
            1
        } else {
            f.neg(1)
        }
    }

    /// [e_i, e_j]
    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero brackets on canonical pairs, in lexicographic order.
    pub fn stored_pairs(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| (i..n).map(move |j| (i, j))).map(move |(i, j)| ((i, j), self.basis_bracket(i, j))).filter(|(_, v)| !v.is_zero())
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Result<Vec<u32>, GalgError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(GalgError::Dimension { expected: n, got: v.len() });
            }
        }
        let f = self.field;
        let mut out = vec![0; n];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    self.table[i * n + j].add_into(f, &mut out, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// ad e_i, column j = [e_i, e_j].
    pub fn ad(&self, i: usize) -> SparseMatrix {
        let n = self.dim();
        SparseMatrix::from_columns(n, self.table[i * n..(i + 1) * n].to_vec())
    }

    /// ad x for an arbitrary vector.
    pub fn ad_vec(&self, x: &[u32]) -> SparseMatrix {
        let f = self.field;
        let n = self.dim();
        let ads: Vec<(u32, SparseMatrix)> = x.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, &c)| (c, self.ad(i))).collect();
        let terms: Vec<(u32, &SparseMatrix)> = ads.iter().map(|(c, m)| (*c, m)).collect();
        SparseMatrix::lin_comb(f, n, n, &terms)
    }

    pub fn product_is_zero(&self) -> bool {
        self.table.iter().all(SparseVec::is_zero)
    }

    /// Copy with the coefficient of e_k in [e_i, e_j] (i ≤ j) raised by one;
    /// parity is not re-checked.
    pub fn with_perturbed(&self, i: usize, j: usize, k: usize) -> GradedAlgebra {
        let f = self.field;
        let n = self.dim();
        let mut out = self.clone();
        let mut v = self.table[i * n + j].to_dense(n);
        v[k] = f.add(v[k], 1);
        out.table[i * n + j] = SparseVec::from_dense(&v);
        if i != j {
            out.table[j * n + i] = out.table[i * n + j].scaled(f, self.swap_sign(i, j));
        }
        out
    }

    fn sign(&self, a: usize, b: usize) -> u32 {
        if self.kind == AlgebraKind::Superlie && self.is_odd(a) && self.is_odd(b) {
            self.field.neg(1)
        } else {
            1
        }
    }

    /// [[x, y], z] accumulated into `out` with coefficient `scale`.
    fn double_bracket_into(&self, x: usize, y: usize, z: usize, out: &mut [u32], scale: u32) {
        let f = self.field;
        let n = self.dim();
        for &(m, c) in &self.table[x * n + y].entries {
            self.table[m as usize * n + z].add_into(f, out, f.mul(c, scale));
        }
    }

    fn jacobiator_is_zero(&self, i: usize, j: usize, k: usize, buf: &mut [u32]) -> bool {
        self.double_bracket_into(i, j, k, buf, self.sign(i, k));
        self.double_bracket_into(j, k, i, buf, self.sign(j, i));
        self.double_bracket_into(k, i, j, buf, self.sign(k, j));
        let zero = buf.iter().all(|&c| c == 0);
        buf.iter_mut().for_each(|c| *c = 0);
        zero
    }

    fn sweep(&self) -> JacobiReport {
        let n = self.dim();
        let per_i = map_range(n, |i| {
            let mut buf = vec![0; n];
            let mut bad = Vec::new();
            let mut count = 0u64;
            for j in i..n {
                for k in j..n {
                    count += 1;
                    if !self.jacobiator_is_zero(i, j, k, &mut buf) {
                        bad.push([i, j, k]);
                    }
                }
            }
            if self.kind == AlgebraKind::Superlie && self.is_odd(i) {
                // [[x, x], x] = 0 for odd x is not implied by the graded
                // Jacobi identity in characteristic 3
                count += 1;
                self.double_bracket_into(i, i, i, &mut buf, 1);
                if buf.iter().any(|&c| c != 0) && !bad.contains(&[i, i, i]) {
                    bad.insert(0, [i, i, i]);
                }
                buf.iter_mut().for_each(|c| *c = 0);
            }
            (count, bad)
        });
        let mut report = JacobiReport { triples_checked: 0, violations: Vec::new() };
        for (c, bad) in per_i {
            report.triples_checked += c;
            report.violations.extend(bad);
        }
        report
    }

    /// Jacobi identity on all basis triples i ≤ j ≤ k.
    pub fn check_jacobi(&self) -> Result<JacobiReport, GalgError> {
        if self.kind != AlgebraKind::Lie {
            return Err(GalgError::WrongKind("check_jacobi needs a Lie algebra"));
        }
        Ok(self.sweep())
    }

    /// Graded Jacobi identity on all basis triples i ≤ j ≤ k, plus
    /// [[x, x], x] = 0 on odd basis vectors.
    pub fn check_super_jacobi(&self) -> Result<JacobiReport, GalgError> {
        if self.kind != AlgebraKind::Superlie {
            return Err(GalgError::WrongKind("check_super_jacobi needs a superalgebra"));
        }
        Ok(self.sweep())
    }

    /// Whichever Jacobi check matches the kind.
    pub fn check_identities(&self) -> JacobiReport {
        self.sweep()
    }

    /// {x : [x, e_i] = 0 for all i}
    pub fn center(&self) -> Subspace {
        let f = self.field;
        let n = self.dim();
        // columns of `basis` span the candidates
        let mut basis: Vec<Vec<u32>> = (0..n).map(|i| crate::exactla::unit(n, i)).collect();
        for i in 0..n {
            if basis.is_empty() {
                break;
            }
            // column j of the image: [x_j, e_i]
            let images: Vec<Vec<u32>> = basis
                .iter()
                .map(|x| {
                    let mut out = vec![0; n];
                    for (m, &c) in x.iter().enumerate() {
                        if c != 0 {
                            self.table[m * n + i].add_into(f, &mut out, c);
                        }
                    }
                    out
                })
                .collect();
            if images.iter().all(|v| crate::exactla::is_zero(v)) {
                continue;
            }
            let m = Matrix::from_columns(n, &images);
            let (_, kernel) = rank_kernel(f, &m);
            basis = kernel
                .basis()
                .iter()
                .map(|k| {
                    let mut out = vec![0; n];
                    for (x, &c) in basis.iter().zip(k) {
                        crate::exactla::axpy(f, &mut out, c, x);
                    }
                    out
                })
                .collect();
        }
        Subspace::from_vectors(f, n, basis)
    }

    /// span of all [e_i, e_j]
    pub fn derived_subalgebra(&self) -> Subspace {
        let f = self.field;
        let n = self.dim();
        let mut s = Subspace::zero(n);
        for (_, v) in self.stored_pairs() {
            if s.is_full() {
                break;
            }
            s.insert(f, v.to_dense(n));
        }
        s
    }

    pub fn adjoint_module(&self) -> MatrixModule {
        let gens = (0..self.dim()).map(|i| self.ad(i)).filter(|m| !m.is_zero()).collect();
        MatrixModule::new(self.field, self.dim(), gens)
    }

    /// Smallest ideal containing `seed`.
    pub fn ideal_closure(&self, seed: &Subspace) -> Subspace {
        self.adjoint_module().spin(seed.basis())
    }

    /// [e_i, W] ⊆ W for every i, checked on basis pairs.
    pub fn is_ideal(&self, w: &Subspace) -> bool {
        let f = self.field;
        let n = self.dim();
        w.basis().iter().all(|x| (0..n).all(|i| w.contains(f, &self.ad(i).apply(f, x))))
    }

    /// Adjoint-module Meataxe: proper ideals are submodules.
    pub fn is_simple(&self, seed: u64) -> SimplicityCertificate {
        self.is_simple_with_budget(seed, DEFAULT_TRIALS)
    }

    pub fn is_simple_with_budget(&self, seed: u64, budget: usize) -> SimplicityCertificate {
        let f = self.field;
        let n = self.dim();
        if self.product_is_zero() {
            let witness = (n > 1).then(|| Subspace::from_vectors(f, n, [crate::exactla::unit(n, 0)]));
            return SimplicityCertificate { verdict: Verdict::NotSimple, reason: "zero product".into(), witness, norton: None, trials: 0, seed };
        }
        let module = self.adjoint_module();
        match module.meataxe(seed, budget) {
            MeataxeOutcome::Irreducible(cert) => {
                SimplicityCertificate { verdict: Verdict::Simple, reason: "adjoint module irreducible".into(), witness: None, trials: cert.trial + 1, norton: Some(cert), seed }
            }
            MeataxeOutcome::Reducible(w) => {
                assert!(w.dim() > 0 && w.dim() < n && self.is_ideal(&w), "meataxe returned an invalid ideal");
                SimplicityCertificate { verdict: Verdict::NotSimple, reason: "proper ideal".into(), witness: Some(w), norton: None, trials: 0, seed }
            }
            MeataxeOutcome::Inconclusive { trials, .. } => {
                SimplicityCertificate { verdict: Verdict::ProbablySimple, reason: "trial budget exhausted".into(), witness: None, norton: None, trials, seed }
            }
        }
    }

    /// Re-checks a certificate against this algebra.
    pub fn verify_certificate(&self, cert: &SimplicityCertificate) -> bool {
        match cert.verdict {
            Verdict::Simple => !self.product_is_zero() && cert.norton.as_ref().is_some_and(|c| self.adjoint_module().verify_certificate(c)),
            Verdict::NotSimple => match &cert.witness {
                Some(w) => w.dim() > 0 && w.dim() < self.dim() && self.is_ideal(w),
                None => self.product_is_zero(),
            },
            Verdict::ProbablySimple => false,
        }
    }

    /// κ(e_i, e_j) = str(ad e_i ad e_j) and the rank of its Gram matrix.
    pub fn killing_form(&self) -> (Matrix, usize) {
        let f = self.field;
        let n = self.dim();
        // rows[i][k]: the row k of ad e_i, as (m, coefficient) with [e_i, e_m] having e_k-coefficient
        let rows: Vec<Vec<Vec<(usize, u32)>>> = map_range(n, |i| {
            let mut r = vec![Vec::new(); n];
            for m in 0..n {
                for &(k, c) in &self.table[i * n + m].entries {
                    r[k as usize].push((m, c));
                }
            }
            r
        });
        let entries = map_range(n, |i| {
            (i..n)
                .map(|j| {
                    let mut acc = 0;
                    for k in 0..n {
                        let col = &self.table[j * n + k];
                        let mut s = 0;
                        for &(m, c) in &rows[i][k] {
                            s = f.add(s, f.mul(c, col.get(m)));
                        }
                        acc = if self.kind == AlgebraKind::Superlie && self.is_odd(k) { f.sub(acc, s) } else { f.add(acc, s) };
                    }
                    acc
                })
                .collect::<Vec<u32>>()
        });
        let mut gram = Matrix::zeros(n, n);
        for (i, row) in entries.iter().enumerate() {
            for (off, &v) in row.iter().enumerate() {
                gram.set(i, i + off, v);
                gram.set(i + off, i, v);
            }
        }
        let rank = gram.rank(f);
        (gram, rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub triples_checked: u64,
    pub violations: Vec<[usize; 3]>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Simple,
    NotSimple,
    ProbablySimple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityCertificate {
    pub verdict: Verdict,
    pub reason: String,
    /// a proper nonzero ideal for `NotSimple`
    pub witness: Option<Subspace>,
    pub norton: Option<NortonCertificate>,
    pub trials: usize,
    pub seed: u64,
}

impl SimplicityCertificate {
    pub fn is_simple(&self) -> bool {
        self.verdict == Verdict::Simple
    }

    /// Whether the witness ideal is spanned by homogeneous vectors.
    pub fn witness_is_homogeneous(&self, g: &GradedAlgebra) -> Option<bool> {
        let w = self.witness.as_ref()?;
        let f = g.field();
        let e = g.dim_even();
        let even = |v: &[u32]| v.iter().enumerate().map(|(i, &c)| if i < e { c } else { 0 }).collect::<Vec<_>>();
        let odd = |v: &[u32]| v.iter().enumerate().map(|(i, &c)| if i >= e { c } else { 0 }).collect::<Vec<_>>();
        Some(w.basis().iter().all(|v| w.contains(f, &even(v)) && w.contains(f, &odd(v))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::unit;

    fn f3() -> Fp {
        Fp::new(3).unwrap()
    }

    /// gl_m with basis E_ab (row-major) as a raw table.
    fn gl(f: Fp, m: usize) -> GradedAlgebra {
        let n = m * m;
        GradedAlgebra::from_fn(f, AlgebraKind::Lie, n, 0, None, |x, y| {
            let (a, b, c, d) = (x / m, x % m, y / m, y % m);
            let mut v = vec![0; n];
            if b == c {
                v[a * m + d] = f.add(v[a * m + d], 1);
            }
            if d == a {
                v[c * m + b] = f.sub(v[c * m + b], 1);
            }
            SparseVec::from_dense(&v)
        })
        .unwrap()
    }

    /// sl_m as the traceless matrices with basis E_ab (a ≠ b) and E_aa − E_mm.
    fn sl(f: Fp, m: usize) -> GradedAlgebra {
        let g = gl(f, m);
        let mut basis: Vec<Vec<u32>> = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    basis.push(unit(m * m, a * m + b));
                }
            }
        }
        for a in 0..m - 1 {
            let mut v = unit(m * m, a * m + a);
            v[(m - 1) * m + m - 1] = f.neg(1);
            basis.push(v);
        }
        let cols = Matrix::from_columns(m * m, &basis);
        let d = basis.len();
        GradedAlgebra::from_fn(f, AlgebraKind::Lie, d, 0, None, |i, j| {
            let v = g.bracket(&basis[i], &basis[j]).unwrap();
            SparseVec::from_dense(&crate::exactla::solve(f, &cols, &v).expect("sl is closed"))
        })
        .unwrap()
    }

    #[test]
    fn completion_and_sign_rules() {
        let f = f3();
        let g = gl(f, 2);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*g.basis_bracket(j, i), g.basis_bracket(i, j).scaled(f, f.neg(1)));
            }
            assert!(g.basis_bracket(i, i).is_zero());
        }
    }

    #[test]
    fn construction_rejects_bad_tables() {
        let f = f3();
        let one = SparseVec::from_dense(&[0, 1]);
        assert_eq!(GradedAlgebra::from_pairs(f, AlgebraKind::Lie, 2, 0, None, [((0, 0), one.clone())]).unwrap_err(), GalgError::Diagonal(0));
        assert_eq!(GradedAlgebra::from_pairs(f, AlgebraKind::Lie, 2, 0, None, [((1, 0), one.clone())]).unwrap_err(), GalgError::PairOrder(1, 0));
        assert_eq!(
            GradedAlgebra::from_pairs(f, AlgebraKind::Superlie, 1, 1, None, [((0, 1), SparseVec::from_dense(&[1, 0]))]).unwrap_err(),
            GalgError::Parity { i: 0, j: 1, k: 0 }
        );
        // odd squares are allowed in superalgebras
        assert!(GradedAlgebra::from_pairs(f, AlgebraKind::Superlie, 1, 1, None, [((1, 1), SparseVec::from_dense(&[1, 0]))]).is_ok());
        assert_eq!(
            GradedAlgebra::from_pairs(f, AlgebraKind::Lie, 2, 0, None, [((0, 1), SparseVec { entries: vec![(1, 3)] })]).unwrap_err(),
            GalgError::Coefficient(3)
        );
    }

    #[test]
    fn abelian_algebra() {
        let f = f3();
        let g = GradedAlgebra::from_pairs(f, AlgebraKind::Lie, 3, 0, None, []).unwrap();
        assert!(g.check_jacobi().unwrap().passed());
        assert_eq!(g.center().dim(), 3);
        assert_eq!(g.derived_subalgebra().dim(), 0);
        assert!(g.killing_form().0.is_zero());
        let cert = g.is_simple(0);
        assert_eq!(cert.verdict, Verdict::NotSimple);
        assert!(g.verify_certificate(&cert));
        let one = GradedAlgebra::from_pairs(f, AlgebraKind::Lie, 1, 0, None, []).unwrap();
        assert_eq!(one.is_simple(0).verdict, Verdict::NotSimple);
    }

    #[test]
    fn gl3_structure() {
        let f = f3();
        let g = gl(f, 3);
        assert!(g.check_jacobi().unwrap().passed());
        // scalars are central; at p = 3 the identity is also traceless
        assert_eq!(g.center().dim(), 1);
        assert_eq!(g.derived_subalgebra().dim(), 8);
        let s = sl(f, 3);
        assert!(s.check_jacobi().unwrap().passed());
        assert_eq!(s.center().dim(), 1);
        assert_eq!(s.derived_subalgebra().dim(), 8);
        let cert = s.is_simple(0);
        assert_eq!(cert.verdict, Verdict::NotSimple);
        assert!(g.verify_certificate(&g.is_simple(0)));
    }

    #[test]
    fn sl2_at_five_is_simple() {
        let f = Fp::new(5).unwrap();
        let s = sl(f, 2);
        let cert = s.is_simple(1);
        assert!(cert.is_simple(), "{cert:?}");
        assert!(s.verify_certificate(&cert));
        let (_, rank) = s.killing_form();
        assert_eq!(rank, 3);
    }

    #[test]
    fn perturbation_breaks_jacobi() {
        let f = Fp::new(5).unwrap();
        let s = sl(f, 3);
        let bad = s.with_perturbed(0, 1, 2);
        assert!(!bad.check_jacobi().unwrap().passed());
    }

    #[test]
    fn ideal_closure_is_monotone_and_idempotent() {
        let f = f3();
        let g = gl(f, 3);
        let seed = Subspace::from_vectors(f, 9, [unit(9, 1)]);
        let i1 = g.ideal_closure(&seed);
        assert!(i1.contains_subspace(f, &seed));
        assert_eq!(g.ideal_closure(&i1), i1);
        assert!(g.is_ideal(&i1));
        assert_eq!(g.ideal_closure(&Subspace::full(9)).dim(), 9);
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let f = f3();
        let g = gl(f, 2);
        assert!(g.check_super_jacobi().is_err());
        let s = GradedAlgebra::from_pairs(f, AlgebraKind::Superlie, 1, 0, None, []).unwrap();
        assert_eq!(s.check_super_jacobi().unwrap(), s.check_identities());
        assert!(s.check_jacobi().is_err());
    }

    #[test]
    fn odd_cube_is_checked() {
        // one odd x with [x, x] = h and [h, x] = x; at p = 3 the graded
        // Jacobiator of (x, x, x) is −3[[x, x], x] = 0
        let f = f3();
        let g = GradedAlgebra::from_pairs(
            f,
            AlgebraKind::Superlie,
            1,
            1,
            None,
            [((1, 1), SparseVec::from_dense(&[1, 0])), ((0, 1), SparseVec::from_dense(&[0, 1]))],
        )
        .unwrap();
        let r = g.check_super_jacobi().unwrap();
        assert!(r.violations.contains(&[1, 1, 1]));
    }

    fn commutator_oracle(f: Fp, m: usize, x: &[u32], y: &[u32]) -> Vec<u32> {
        let (a, b) = (Matrix::from_flat(m, m, x.to_vec()), Matrix::from_flat(m, m, y.to_vec()));
        a.mul(f, &b).sub(f, &b.mul(f, &a)).into_flat()
    }

    proptest::proptest! {
        #[test]
        fn gl3_bracket_is_the_commutator(x in proptest::collection::vec(0u32..3, 9), y in proptest::collection::vec(0u32..3, 9)) {
            let f = f3();
            proptest::prop_assert_eq!(gl(f, 3).bracket(&x, &y).unwrap(), commutator_oracle(f, 3, &x, &y));
        }

        #[test]
        fn homogeneous_brackets_are_super_antisymmetric(x in proptest::collection::vec(0u32..3, 29), y in proptest::collection::vec(0u32..3, 29), px: bool, py: bool) {
            let f = f3();
            let t = crate::catalog::CatalogKey::parse("sts:sts8").unwrap().build(f).unwrap();
            let g = crate::functors::build_gtilde_sts(&t).unwrap();
            let part = |v: &[u32], odd: bool| -> Vec<u32> { v.iter().enumerate().map(|(i, &c)| if g.is_odd(i) == odd { c } else { 0 }).collect() };
            let n = g.dim();
            let (x, y) = (part(&x[..n], px), part(&y[..n], py));
            let sign = if px && py { 1 } else { f.neg(1) };
            let yx: Vec<u32> = g.bracket(&y, &x).unwrap().iter().map(|&c| f.mul(sign, c)).collect();
            proptest::prop_assert_eq!(g.bracket(&x, &y).unwrap(), yx);
        }
    }
}
