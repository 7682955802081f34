//! Freudenthal triple systems and Faulkner ternary algebras.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{TripleError, TripleKind, TripleSystem};
use crate::exactla::{BilinForm, Fp, SparseMatrix, SparseVec, SpanBasis};

/// Polarized checks of the quartic identity run over all basis tuples up to
/// this dimension; above it, random vectors are used.
pub const FREUDENTHAL_EXHAUSTIVE_DIM: usize = 32;
pub const FREUDENTHAL_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreudenthalSystem {
    field: Fp,
    dim: usize,
    form: BilinForm,
    /// ops[i * n + j] has column k equal to e_i e_j e_k
    ops: Vec<SparseMatrix>,
}

impl FreudenthalSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &BilinForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.ops.iter().all(SparseMatrix::is_zero)
    }

    pub fn basis_product(&self, i: usize, j: usize, k: usize) -> &SparseVec {
        self.ops[i * self.dim + j].col(k)
    }

    pub fn eval(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        let f = self.field;
        let n = self.dim;
        let mut out = vec![0; n];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                if a != 0 && b != 0 {
                    self.ops[i * n + j].apply_into(f, z, &mut out, f.mul(a, b));
                }
            }
        }
        out
    }

    /// Product of a sparse vector with two basis vectors, `v e_j e_k`.
    fn eval_sparse_first(&self, v: &SparseVec, j: usize, k: usize, out: &mut [u32], scale: u32) {
        let f = self.field;
        for &(i, c) in &v.entries {
            self.basis_product(i as usize, j, k).add_into(f, out, f.mul(c, scale));
        }
    }

    fn form_sparse(&self, v: &SparseVec, j: usize) -> u32 {
        let f = self.field;
        v.entries.iter().fold(0, |acc, &(i, c)| f.add(acc, f.mul(c, self.form.eval_basis(i as usize, j))))
    }

    /// xyz totally symmetric.
    fn check_symmetric(&self) -> Result<(), String> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let v = self.basis_product(i, j, k);
                    for (a, b, c) in [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                        if self.basis_product(a, b, c) != v {
                            return Err(format!("product not symmetric at ({i}, {j}, {k})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// (x|yzt) totally symmetric; with xyz symmetric it is enough to swap x and y.
    fn check_form_symmetric(&self) -> Result<(), String> {
        let n = self.dim;
        for x in 0..n {
            for y in x + 1..n {
                for z in 0..n {
                    for t in z..n {
                        let a = self.form_sparse(self.basis_product(y, z, t), x);
                        let b = self.form_sparse(self.basis_product(x, z, t), y);
                        // (x|v) = −(v|x)
                        if a != b {
                            return Err(format!("(x|yzt) not symmetric at ({x}, {y}, {z}, {t})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Left side of the quartic identity at (x, y, z).
    pub fn quartic(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        let f = self.field;
        let xyy = self.eval(x, y, y);
        let yxx = self.eval(y, x, x);
        let mut out = self.eval(&xyy, x, z);
        crate::exactla::axpy(f, &mut out, 1, &self.eval(&yxx, y, z));
        crate::exactla::axpy(f, &mut out, self.form.eval(f, &xyy, z), x);
        crate::exactla::axpy(f, &mut out, self.form.eval(f, &yxx, z), y);
        crate::exactla::axpy(f, &mut out, self.form.eval(f, x, z), &xyy);
        crate::exactla::axpy(f, &mut out, self.form.eval(f, y, z), &yxx);
        out
    }

    /// Half the full polarization of the quartic identity in x and y, on
    /// basis vectors (x1, x2, y1, y2, z); needs the product symmetric.
    fn polarized_quartic_is_zero(&self, x: [usize; 2], y: [usize; 2], z: usize, out: &mut [u32]) -> bool {
        let f = self.field;
        out.iter_mut().for_each(|o| *o = 0);
        for (a, b) in [(x[0], x[1]), (x[1], x[0])] {
            let ayy = self.basis_product(a, y[0], y[1]);
            self.eval_sparse_first(ayy, b, z, out, 1);
            out[b] = f.add(out[b], self.form_sparse(ayy, z));
            let az = self.form.eval_basis(a, z);
            if az != 0 {
                self.basis_product(b, y[0], y[1]).add_into(f, out, az);
            }
        }
        for (a, b) in [(y[0], y[1]), (y[1], y[0])] {
            let axx = self.basis_product(a, x[0], x[1]);
            self.eval_sparse_first(axx, b, z, out, 1);
            out[b] = f.add(out[b], self.form_sparse(axx, z));
            let az = self.form.eval_basis(a, z);
            if az != 0 {
                self.basis_product(b, x[0], x[1]).add_into(f, out, az);
            }
        }
        out.iter().all(|&c| c == 0)
    }

    fn check_quartic(&self, seed: u64) -> Result<(), String> {
        let n = self.dim;
        if n <= FREUDENTHAL_EXHAUSTIVE_DIM {
            let mut out = vec![0; n];
            for x0 in 0..n {
                for x1 in x0..n {
                    for y0 in 0..n {
                        for y1 in y0..n {
                            for z in 0..n {
                                if !self.polarized_quartic_is_zero([x0, x1], [y0, y1], z, &mut out) {
                                    return Err(format!("quartic identity fails at ({x0}, {x1}, {y0}, {y1}, {z})"));
                                }
                            }
                        }
                    }
                }
            }
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = self.field.p();
        let mut random = || -> Vec<u32> { (0..n).map(|_| rand::Rng::gen_range(&mut rng, 0..p)).collect() };
        for s in 0..FREUDENTHAL_SAMPLES {
            let (x, y, z) = (random(), random(), random());
            if !crate::exactla::is_zero(&self.quartic(&x, &y, &z)) {
                return Err(format!("quartic identity fails on random sample {s}"));
            }
        }
        Ok(())
    }

    /// Symmetry of xyz and of (x|yzt) on all basis tuples, and the quartic
    /// identity (exhaustively in polarized form for small dimensions).
    pub fn check(&self, seed: u64) -> Result<(), String> {
        self.check_symmetric()?;
        self.check_form_symmetric()?;
        self.check_quartic(seed)
    }
}

/// xyz = [xyz] − ψ_{x,y}(z) with ψ_{x,y}(z) = (x|z)y + (y|z)x, validated.
pub fn to_freudenthal(t: &TripleSystem) -> Result<FreudenthalSystem, TripleError> {
    if t.kind() != TripleKind::Sts {
        return Err(TripleError::Precondition("Freudenthal conversion needs an STS".into()));
    }
    let f = t.field();
    let n = t.dim();
    let form = t.form().expect("STS carries a form").clone();
    if !form.is_nondegenerate(f) {
        return Err(TripleError::Precondition("Freudenthal conversion needs a nondegenerate form".into()));
    }
    let mut ops = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = t.op(i, j).to_dense();
            for k in 0..n {
                m.set(j, k, f.sub(m.get(j, k), form.eval_basis(i, k)));
                m.set(i, k, f.sub(m.get(i, k), form.eval_basis(j, k)));
            }
            ops.push(SparseMatrix::from_dense(&m));
        }
    }
    let fts = FreudenthalSystem { field: f, dim: n, form, ops };
    if !fts.is_zero() {
        fts.check(0).map_err(TripleError::Freudenthal)?;
    }
    Ok(fts)
}

/// A ternary product ⟨xyz⟩ with an alternating form, stored as right
/// multiplications R_{y,z} = ⟨· y z⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaulknerSystem {
    field: Fp,
    dim: usize,
    form: BilinForm,
    rops: Vec<SparseMatrix>,
}

impl FaulknerSystem {
    pub fn from_rops(f: Fp, form: BilinForm, rops: Vec<SparseMatrix>) -> Result<FaulknerSystem, TripleError> {
        let n = form.dim();
        if rops.len() != n * n {
            return Err(TripleError::Dimension { expected: n * n, got: rops.len() });
        }
        if form.symmetry() != crate::exactla::Symmetry::Alternating {
            return Err(TripleError::Precondition("Faulkner algebras carry an alternating form".into()));
        }
        Ok(FaulknerSystem { field: f, dim: n, form, rops })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &BilinForm {
        &self.form
    }

    /// R_{y,z}
    pub fn rop(&self, y: usize, z: usize) -> &SparseMatrix {
        &self.rops[y * self.dim + z]
    }

    /// ⟨e_x e_y e_z⟩
    pub fn basis_product(&self, x: usize, y: usize, z: usize) -> &SparseVec {
        self.rop(y, z).col(x)
    }

    pub fn eval(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        let f = self.field;
        let n = self.dim;
        let mut out = vec![0; n];
        for (j, &b) in y.iter().enumerate() {
            for (k, &c) in z.iter().enumerate() {
                if b != 0 && c != 0 {
                    self.rops[j * n + k].apply_into(f, x, &mut out, f.mul(b, c));
                }
            }
        }
        out
    }

    /// ⟨xyz⟩ = ⟨yxz⟩ + (x|y)z, ⟨xyz⟩ = ⟨xzy⟩ + (y|z)x, the derivation
    /// identity for the pairs (R_{v,w}, R_{w,v}) and the invariance
    /// (⟨xzw⟩|y) + (x|⟨ywz⟩) = 0. The last two are linear in the pair
    /// (R_{v,w}, R_{w,v}), so they are checked on a basis of the span of those pairs.
    pub fn check(&self) -> Result<(), String> {
        let f = self.field;
        let n = self.dim;
        let mut out = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = self.basis_product(x, y, z);
                    out.iter_mut().for_each(|o| *o = 0);
                    v.add_into(f, &mut out, 1);
                    self.basis_product(y, x, z).add_into(f, &mut out, f.neg(1));
                    out[z] = f.sub(out[z], self.form.eval_basis(x, y));
                    if out.iter().any(|&c| c != 0) {
                        return Err(format!("<xyz> = <yxz> + (x|y)z fails at ({x}, {y}, {z})"));
                    }
                    out.iter_mut().for_each(|o| *o = 0);
                    v.add_into(f, &mut out, 1);
                    self.basis_product(x, z, y).add_into(f, &mut out, f.neg(1));
                    out[x] = f.sub(out[x], self.form.eval_basis(y, z));
                    if out.iter().any(|&c| c != 0) {
                        return Err(format!("<xyz> = <xzy> + (y|z)x fails at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        let mut span = SpanBasis::new(2 * n * n);
        let mut seen = std::collections::HashSet::new();
        let mut pairs = Vec::new();
        for v in 0..n {
            for w in 0..n {
                let (a, b) = (self.rop(v, w), self.rop(w, v));
                if a.is_zero() && b.is_zero() || !seen.insert((a.clone(), b.clone())) {
                    continue;
                }
                let mut flat = a.flatten();
                flat.extend(b.flatten());
                if span.offer(f, v * n + w, &flat) {
                    pairs.push((v, w));
                }
            }
        }
        for &(v, w) in &pairs {
            let (a, b) = (self.rop(v, w), self.rop(w, v));
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        out.iter_mut().for_each(|o| *o = 0);
                        for &(m, c) in &self.basis_product(x, y, z).entries {
                            a.col(m as usize).add_into(f, &mut out, c);
                        }
                        for &(m, c) in &a.col(x).entries {
                            self.basis_product(m as usize, y, z).add_into(f, &mut out, f.neg(c));
                        }
                        for &(m, c) in &a.col(y).entries {
                            self.basis_product(x, m as usize, z).add_into(f, &mut out, f.neg(c));
                        }
                        for &(m, c) in &b.col(z).entries {
                            self.basis_product(x, y, m as usize).add_into(f, &mut out, f.neg(c));
                        }
                        if out.iter().any(|&c| c != 0) {
                            return Err(format!("derivation identity fails for R({v}, {w}) at ({x}, {y}, {z})"));
                        }
                    }
                }
                for y in 0..n {
                    let mut acc = 0;
                    for &(m, c) in &a.col(x).entries {
                        acc = f.add(acc, f.mul(c, self.form.eval_basis(m as usize, y)));
                    }
                    for &(m, c) in &b.col(y).entries {
                        acc = f.add(acc, f.mul(c, self.form.eval_basis(x, m as usize)));
                    }
                    if acc != 0 {
                        return Err(format!("invariance fails for R({v}, {w}) at ({x}, {y})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// ⟨xyz⟩ = −½([yzx] − (y|z)x), i.e. R_{y,z} = −½(d_{y,z} − (y|z)·1), validated.
/// A null STS maps to the algebra with zero form.
pub fn sts_to_faulkner(t: &TripleSystem) -> Result<FaulknerSystem, TripleError> {
    let f = t.field();
    let n = t.dim();
    let form = match (t.kind(), t.form()) {
        (TripleKind::Sts, Some(g)) => g.clone(),
        (TripleKind::NullSts, None) => BilinForm::new(f, crate::exactla::Matrix::zeros(n, n), crate::exactla::Symmetry::Alternating)?,
        _ => return Err(TripleError::Precondition("Faulkner conversion needs a symplectic kind".into())),
    };
    let minus_half = f.neg(f.half());
    let mut rops = Vec::with_capacity(n * n);
    for y in 0..n {
        for z in 0..n {
            let mut m = t.op(y, z).to_dense();
            let c = form.eval_basis(y, z);
            for x in 0..n {
                m.set(x, x, f.sub(m.get(x, x), c));
            }
            rops.push(SparseMatrix::from_dense(&m.scaled(f, minus_half)));
        }
    }
    let fa = FaulknerSystem { field: f, dim: n, form, rops };
    fa.check().map_err(TripleError::Faulkner)?;
    Ok(fa)
}

/// [xyz] = −2⟨zxy⟩ + (x|y)z, i.e. d_{x,y} = −2R_{x,y} + (x|y)·1; the input
/// is validated first. A zero form yields a null STS.
pub fn faulkner_to_sts(fa: &FaulknerSystem) -> Result<TripleSystem, TripleError> {
    fa.check().map_err(TripleError::Faulkner)?;
    let f = fa.field;
    let n = fa.dim;
    let minus_two = f.neg(f.from_i64(2));
    let mut ops = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut m = fa.rop(x, y).to_dense().scaled(f, minus_two);
            let c = fa.form.eval_basis(x, y);
            for z in 0..n {
                m.set(z, z, f.add(m.get(z, z), c));
            }
            ops.push(SparseMatrix::from_dense(&m));
        }
    }
    if fa.form.is_zero() {
        TripleSystem::from_ops(f, n, TripleKind::NullSts, None, None, ops)
    } else {
        TripleSystem::from_ops(f, n, TripleKind::Sts, Some(fa.form.gram().clone()), None, ops)
    }
}
