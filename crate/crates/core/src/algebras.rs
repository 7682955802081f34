//! Split composition algebras and the Jordan algebras built from them,
//! with the cubic (or quadratic) norm data the triple-system catalog needs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{add_vec, axpy, dot, is_zero, rank_kernel, scale, sub_vec, unit, Fp, Matrix, SparseVec};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("composition invariant failed: {0}")]
    Composition(String),
    #[error("{0}")]
    Jordan(String),
    #[error("cubic identity fails at {0}")]
    CubicIdentity(String),
}

/// Multiply basis-wise: table[i * n + j] = e_i * e_j.
fn bilinear(f: Fp, n: usize, table: &[SparseVec], x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = vec![0; n];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            if b != 0 {
                table[i * n + j].add_into(f, &mut out, f.mul(a, b));
            }
        }
    }
    out
}

fn random_vector(f: Fp, n: usize, rng: &mut impl Rng) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..f.p())).collect()
}

// ---------------------------------------------------------------------------
// composition algebras

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositionKind {
    /// the ground field k
    Unit,
    /// k × k
    Binarion,
    /// 2×2 matrices
    Quaternion,
    /// Zorn vector matrices
    Octonion,
}

impl CompositionKind {
    pub fn dim(self) -> usize {
        match self {
            CompositionKind::Unit => 1,
            CompositionKind::Binarion => 2,
            CompositionKind::Quaternion => 4,
            CompositionKind::Octonion => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CompositionKind::Unit => "k",
            CompositionKind::Binarion => "kk",
            CompositionKind::Quaternion => "quat",
            CompositionKind::Octonion => "oct",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompositionAlgebra {
    field: Fp,
    kind: CompositionKind,
    table: Vec<SparseVec>,
    conj: Matrix,
    // polar norm n(x,y) = n(x+y) - n(x) - n(y)
    norm_polar: Matrix,
    unit: Vec<u32>,
    labels: Vec<String>,
}

impl CompositionAlgebra {
    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn kind(&self) -> CompositionKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn one(&self) -> Vec<u32> {
        self.unit.clone()
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        bilinear(self.field, self.dim(), &self.table, x, y)
    }

    pub fn conj(&self, x: &[u32]) -> Vec<u32> {
        self.conj.mul_vec(self.field, x)
    }

    pub fn norm_polar(&self, x: &[u32], y: &[u32]) -> u32 {
        dot(self.field, x, &self.norm_polar.mul_vec(self.field, y))
    }

    pub fn norm(&self, x: &[u32]) -> u32 {
        let f = self.field;
        f.mul(f.half(), self.norm_polar(x, x))
    }

    pub fn trace(&self, x: &[u32]) -> u32 {
        self.norm_polar(x, &self.unit)
    }

    /// The scalar λ with v = λ·1, if v is a scalar.
    pub fn as_scalar(&self, v: &[u32]) -> Option<u32> {
        let f = self.field;
        let i = self.unit.iter().position(|&c| c != 0).expect("unit is nonzero");
        let lambda = f.div(v[i], self.unit[i]);
        let mut w = v.to_vec();
        axpy(f, &mut w, f.neg(lambda), &self.unit);
        is_zero(&w).then_some(lambda)
    }

    /// Checks x x̄ = n(x)1, x + x̄ = t(x)1, and the linearized
    /// multiplicativity n(xy, zw) + n(zy, xw) = n(x,z) n(y,w) on all basis
    /// quadruples, plus n(xy) = n(x)n(y) on random pairs.
    pub fn check_invariants(&self, samples: usize, seed: u64) -> Result<(), AlgebraError> {
        let f = self.field;
        let n = self.dim();
        let fail = |m: String| Err(AlgebraError::Composition(m));
        for i in 0..n {
            let x = unit(n, i);
            let xb = self.conj(&x);
            let Some(nn) = self.as_scalar(&self.mul(&x, &xb)) else { return fail(format!("e{i} conj(e{i}) not scalar")) };
            if nn != self.norm(&x) {
                return fail(format!("x conj(x) != n(x) at e{i}"));
            }
            if self.as_scalar(&add_vec(f, &x, &xb)) != Some(self.trace(&x)) {
                return fail(format!("x + conj(x) != t(x) at e{i}"));
            }
        }
        let basis: Vec<Vec<u32>> = (0..n).map(|i| unit(n, i)).collect();
        let prods: Vec<Vec<u32>> = (0..n * n).map(|k| self.mul(&basis[k / n], &basis[k % n])).collect();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let lhs = f.add(self.norm_polar(&prods[x * n + y], &prods[z * n + w]), self.norm_polar(&prods[z * n + y], &prods[x * n + w]));
                        let rhs = f.mul(self.norm_polar.get(x, z), self.norm_polar.get(y, w));
                        if lhs != rhs {
                            return fail(format!("multiplicativity at ({x},{y},{z},{w})"));
                        }
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = random_vector(f, n, &mut rng);
            let y = random_vector(f, n, &mut rng);
            if self.norm(&self.mul(&x, &y)) != f.mul(self.norm(&x), self.norm(&y)) {
                return fail(format!("n(xy) != n(x)n(y) for x={x:?} y={y:?}"));
            }
        }
        Ok(())
    }
}

pub fn make_composition(f: Fp, kind: CompositionKind) -> CompositionAlgebra {
    let n = kind.dim();
    let mut table = vec![SparseVec::new(); n * n];
    let mut put = |i: usize, j: usize, entries: &[(usize, i64)]| {
        let mut v = vec![0; n];
        for &(k, c) in entries {
            v[k] = f.add(v[k], f.from_i64(c));
        }
        table[i * n + j] = SparseVec::from_dense(&v);
    };
    let (conj, norm_polar, unit_vec, labels): (Matrix, Matrix, Vec<u32>, Vec<String>) = match kind {
        CompositionKind::Unit => {
            put(0, 0, &[(0, 1)]);
            (Matrix::identity(1), Matrix::scalar(1, 2), vec![1], vec!["1".into()])
        }
        CompositionKind::Binarion => {
            put(0, 0, &[(0, 1)]);
            put(1, 1, &[(1, 1)]);
            let swap = Matrix::from_rows(&[vec![0, 1], vec![1, 0]]);
            (swap.clone(), swap, vec![1, 1], vec!["e1".into(), "e2".into()])
        }
        CompositionKind::Quaternion => {
            // basis E11, E12, E21, E22 (index 2r + c)
            for (a, b) in (0..2).flat_map(|a| (0..2).map(move |b| (a, b))) {
                for (c, d) in (0..2).flat_map(|a| (0..2).map(move |b| (a, b))) {
                    if b == c {
                        put(2 * a + b, 2 * c + d, &[(2 * a + d, 1)]);
                    }
                }
            }
            let m1 = f.neg(1);
            let conj = Matrix::from_rows(&[vec![0, 0, 0, 1], vec![0, m1, 0, 0], vec![0, 0, m1, 0], vec![1, 0, 0, 0]]);
            let np = Matrix::from_rows(&[vec![0, 0, 0, 1], vec![0, 0, m1, 0], vec![0, m1, 0, 0], vec![1, 0, 0, 0]]);
            (conj, np, vec![1, 0, 0, 1], ["E11", "E12", "E21", "E22"].map(String::from).to_vec())
        }
        CompositionKind::Octonion => {
            // (α, a1..a3, b1..b3, β):
            // xy = (αα' + a·b', αa' + β'a − b×b', α'b + βb' + a×a', ββ' + b·a')
            let (al, be) = (0usize, 7usize);
            let a = |i: usize| 1 + i;
            let b = |i: usize| 4 + i;
            put(al, al, &[(al, 1)]);
            put(be, be, &[(be, 1)]);
            for i in 0..3 {
                put(al, a(i), &[(a(i), 1)]);
                put(a(i), be, &[(a(i), 1)]);
                put(b(i), al, &[(b(i), 1)]);
                put(be, b(i), &[(b(i), 1)]);
                put(a(i), b(i), &[(al, 1)]);
                put(b(i), a(i), &[(be, 1)]);
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                // e_i × e_j = e_k for cyclic (i, j, k)
                put(a(i), a(j), &[(b(k), 1)]);
                put(a(j), a(i), &[(b(k), -1)]);
                put(b(i), b(j), &[(a(k), -1)]);
                put(b(j), b(i), &[(a(k), 1)]);
            }
            let mut conj = Matrix::zeros(8, 8);
            conj.set(al, be, 1);
            conj.set(be, al, 1);
            let mut np = Matrix::zeros(8, 8);
            np.set(al, be, 1);
            np.set(be, al, 1);
            for i in 1..7 {
                conj.set(i, i, f.neg(1));
            }
            for i in 0..3 {
                np.set(a(i), b(i), f.neg(1));
                np.set(b(i), a(i), f.neg(1));
            }
            let mut u = vec![0; 8];
            u[al] = 1;
            u[be] = 1;
            let labels = ["alpha", "a1", "a2", "a3", "b1", "b2", "b3", "beta"].map(String::from).to_vec();
            (conj, np, u, labels)
        }
    };
    CompositionAlgebra { field: f, kind, table, conj, norm_polar, unit: unit_vec, labels }
}

// ---------------------------------------------------------------------------
// Jordan algebras

/// How the generic norm data of a Jordan algebra is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degree {
    /// degree 3, generic trace given as a linear functional
    Cubic { trace: Vec<u32> },
    /// Jord(q, e): polar form q with q(e, e) = 2
    Quadratic { q: Matrix },
}

#[derive(Clone, Debug)]
pub struct JordanAlgebra {
    field: Fp,
    name: String,
    table: Vec<SparseVec>,
    unit: Vec<u32>,
    degree: Degree,
    labels: Vec<String>,
}

/// Trace form and cross product, the only data the Jordan-based triple
/// constructions consume.
#[derive(Clone, Debug)]
pub struct CubicData {
    pub dim: usize,
    /// t(a, b)
    pub trace_form: Matrix,
    /// cross[i * dim + j] = e_i × e_j
    pub cross: Vec<SparseVec>,
}

impl CubicData {
    pub fn cross(&self, f: Fp, x: &[u32], y: &[u32]) -> Vec<u32> {
        bilinear(f, self.dim, &self.cross, x, y)
    }

    pub fn t(&self, f: Fp, x: &[u32], y: &[u32]) -> u32 {
        let mut acc = 0;
        for (i, &a) in x.iter().enumerate() {
            if a != 0 {
                for (j, &b) in y.iter().enumerate() {
                    if b != 0 {
                        acc = f.add(acc, f.mul(f.mul(a, b), self.trace_form.get(i, j)));
                    }
                }
            }
        }
        acc
    }
}

impl JordanAlgebra {
    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn one(&self) -> Vec<u32> {
        self.unit.clone()
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        bilinear(self.field, self.dim(), &self.table, x, y)
    }

    /// Generic linear trace t(x).
    pub fn trace(&self, x: &[u32]) -> u32 {
        let f = self.field;
        match &self.degree {
            Degree::Cubic { trace } => dot(f, trace, x),
            Degree::Quadratic { q } => dot(f, &q.mul_vec(f, &self.unit), x),
        }
    }

    /// t(x, y): t(xy) in degree 3, t(x)t(y) − q(x,y) in degree 2.
    pub fn trace_form(&self, x: &[u32], y: &[u32]) -> u32 {
        let f = self.field;
        match &self.degree {
            Degree::Cubic { .. } => self.trace(&self.mul(x, y)),
            Degree::Quadratic { q } => f.sub(f.mul(self.trace(x), self.trace(y)), dot(f, x, &q.mul_vec(f, y))),
        }
    }

    pub fn trace_gram(&self) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| self.trace_form(&unit(n, i), &unit(n, j)))
    }

    /// s(x) = (t(x)² − t(x²)) / 2
    pub fn spur(&self, x: &[u32]) -> u32 {
        let f = self.field;
        let t = self.trace(x);
        f.mul(f.half(), f.sub(f.mul(t, t), self.trace(&self.mul(x, x))))
    }

    /// x♯ = x² − t(x)x + s(x)1; zero in degree 2.
    pub fn sharp(&self, x: &[u32]) -> Vec<u32> {
        let f = self.field;
        if let Degree::Quadratic { .. } = self.degree {
            return vec![0; self.dim()];
        }
        let mut out = self.mul(x, x);
        axpy(f, &mut out, f.neg(self.trace(x)), x);
        axpy(f, &mut out, self.spur(x), &self.unit);
        out
    }

    /// x × y = (x+y)♯ − x♯ − y♯
    pub fn cross(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        sub_vec(f, &sub_vec(f, &self.sharp(&add_vec(f, x, y)), &self.sharp(x)), &self.sharp(y))
    }

    /// n(x), read off x·x♯ = n(x)1; `None` when x·x♯ is not a scalar.
    pub fn norm(&self, x: &[u32]) -> Option<u32> {
        let f = self.field;
        let v = self.mul(x, &self.sharp(x));
        let i = self.unit.iter().position(|&c| c != 0).expect("unit is nonzero");
        let lambda = f.div(v[i], self.unit[i]);
        let mut w = v;
        axpy(f, &mut w, f.neg(lambda), &self.unit);
        is_zero(&w).then_some(lambda)
    }

    /// D_{x,y}(z) = x·(y·z) − y·(x·z)
    pub fn inner_derivation(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        sub_vec(self.field, &self.mul(x, &self.mul(y, z)), &self.mul(y, &self.mul(x, z)))
    }

    pub fn cubic_data(&self) -> CubicData {
        let n = self.dim();
        let basis: Vec<Vec<u32>> = (0..n).map(|i| unit(n, i)).collect();
        let cross = (0..n * n).map(|k| SparseVec::from_dense(&self.cross(&basis[k / n], &basis[k % n]))).collect();
        CubicData { dim: n, trace_form: self.trace_gram(), cross }
    }

    /// x³ − t(x)x² + s(x)x − n(x)1 = 0 on the basis and on seeded random
    /// elements. Only meaningful in degree 3.
    pub fn check_cubic_identity(&self, samples: usize, seed: u64) -> Result<(), AlgebraError> {
        let f = self.field;
        let n = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..n).map(|i| unit(n, i)).chain((0..samples).map(|_| random_vector(f, n, &mut rng)));
        for x in points {
            let Some(nx) = self.norm(&x) else { return Err(AlgebraError::CubicIdentity(format!("{x:?}: x·x♯ not scalar"))) };
            let x2 = self.mul(&x, &x);
            let mut v = self.mul(&x, &x2);
            axpy(f, &mut v, f.neg(self.trace(&x)), &x2);
            axpy(f, &mut v, self.spur(&x), &x);
            axpy(f, &mut v, f.neg(nx), &self.unit);
            if !is_zero(&v) {
                return Err(AlgebraError::CubicIdentity(format!("{x:?}")));
            }
        }
        Ok(())
    }

    /// Copy with one structure constant shifted, for negative controls.
    pub fn with_perturbed_product(&self, i: usize, j: usize, k: usize) -> JordanAlgebra {
        let n = self.dim();
        let mut out = self.clone();
        for (a, b) in [(i, j), (j, i)] {
            let mut v = out.table[a * n + b].to_dense(n);
            v[k] = self.field.add(v[k], 1);
            out.table[a * n + b] = SparseVec::from_dense(&v);
        }
        out
    }
}

/// Trace-form kernel dimension; 0 means t(·,·) is nondegenerate.
pub fn trace_form_radical_dim(j: &JordanAlgebra) -> usize {
    rank_kernel(j.field, &j.trace_gram()).1.dim()
}

/// H₃(C): 3×3 hermitian matrices over C with x·y = ½(xy + yx).
pub fn make_h3(c: &CompositionAlgebra) -> JordanAlgebra {
    let f = c.field();
    let d = c.dim();
    let n = 3 + 3 * d;
    // off-diagonal slots: (1,2), (2,0), (0,1) carry c1, c2, c3
    let slots = [(1usize, 2usize), (2, 0), (0, 1)];
    let zero_c = vec![0u32; d];
    type Mat3 = [[Vec<u32>; 3]; 3];
    let empty = || -> Mat3 { std::array::from_fn(|_| std::array::from_fn(|_| vec![0u32; d])) };
    let element = |idx: usize| -> Mat3 {
        let mut m = empty();
        if idx < 3 {
            m[idx][idx] = c.one();
        } else {
            let (s, k) = ((idx - 3) / d, (idx - 3) % d);
            let (r, col) = slots[s];
            let u = unit(d, k);
            m[col][r] = c.conj(&u);
            m[r][col] = u;
        }
        m
    };
    let times = |x: &Mat3, y: &Mat3| -> Mat3 {
        let mut m = empty();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = zero_c.clone();
                for k in 0..3 {
                    acc = add_vec(f, &acc, &c.mul(&x[i][k], &y[k][j]));
                }
                m[i][j] = acc;
            }
        }
        m
    };
    let to_coords = |m: &Mat3| -> Vec<u32> {
        let mut v = vec![0; n];
        for i in 0..3 {
            v[i] = c.as_scalar(&m[i][i]).expect("hermitian diagonal must be scalar");
        }
        for (s, &(r, col)) in slots.iter().enumerate() {
            assert_eq!(c.conj(&m[r][col]), m[col][r], "product left the hermitian matrices");
            v[3 + s * d..3 + (s + 1) * d].copy_from_slice(&m[r][col]);
        }
        v
    };
    let elems: Vec<Mat3> = (0..n).map(element).collect();
    let mut table = vec![SparseVec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let (xy, yx) = (times(&elems[i], &elems[j]), times(&elems[j], &elems[i]));
            let sum: Mat3 = std::array::from_fn(|r| std::array::from_fn(|s| add_vec(f, &xy[r][s], &yx[r][s])));
            let mut v = to_coords(&sum);
            scale(f, &mut v, f.half());
            table[i * n + j] = SparseVec::from_dense(&v);
        }
    }
    let mut unit_vec = vec![0; n];
    unit_vec[..3].iter_mut().for_each(|x| *x = 1);
    let mut trace = vec![0; n];
    trace[..3].iter_mut().for_each(|x| *x = 1);
    let mut labels: Vec<String> = (1..=3).map(|i| format!("E{i}{i}")).collect();
    for s in 0..3 {
        for l in c.labels() {
            labels.push(format!("c{}[{l}]", s + 1));
        }
    }
    JordanAlgebra { field: f, name: format!("h3_{}", c.kind().name()), table, unit: unit_vec, degree: Degree::Cubic { trace }, labels }
}

/// Mat_n⁺: all n×n matrices with x·y = ½(xy + yx), basis E_ij row-major.
pub fn make_matrix_jordan(f: Fp, size: usize) -> JordanAlgebra {
    let n = size * size;
    let mut table = vec![SparseVec::new(); n * n];
    let h = f.half();
    for (a, b) in (0..size).flat_map(|a| (0..size).map(move |b| (a, b))) {
        for (c, d) in (0..size).flat_map(|a| (0..size).map(move |b| (a, b))) {
            let mut v = vec![0; n];
            if b == c {
                v[a * size + d] = f.add(v[a * size + d], h);
            }
            if d == a {
                v[c * size + b] = f.add(v[c * size + b], h);
            }
            table[(a * size + b) * n + c * size + d] = SparseVec::from_dense(&v);
        }
    }
    let mut unit_vec = vec![0; n];
    for i in 0..size {
        unit_vec[i * size + i] = 1;
    }
    let labels = (0..n).map(|k| format!("E{}{}", k / size + 1, k % size + 1)).collect();
    JordanAlgebra { field: f, name: format!("mat{size}"), table, unit: unit_vec.clone(), degree: Degree::Cubic { trace: unit_vec }, labels }
}

/// Jord(q, e) on k e ⊕ W: x·y = −½ q(x,y) e on W, e the unit, q(e) = 1.
pub fn make_jordq(f: Fp, gram_w: &Matrix) -> JordanAlgebra {
    let m = gram_w.rows();
    let n = m + 1;
    let mut q = Matrix::zeros(n, n);
    q.set(0, 0, 2);
    for i in 0..m {
        for j in 0..m {
            q.set(i + 1, j + 1, gram_w.get(i, j));
        }
    }
    let mut table = vec![SparseVec::new(); n * n];
    for i in 0..n {
        table[i] = SparseVec::from_dense(&unit(n, i));
        table[i * n] = SparseVec::from_dense(&unit(n, i));
    }
    let mh = f.neg(f.half());
    for i in 1..n {
        for j in 1..n {
            let mut v = vec![0; n];
            v[0] = f.mul(mh, q.get(i, j));
            table[i * n + j] = SparseVec::from_dense(&v);
        }
    }
    let labels = std::iter::once("e".to_string()).chain((1..=m).map(|i| format!("w{i}"))).collect();
    JordanAlgebra { field: f, name: format!("jordq{m}"), table, unit: unit(n, 0), degree: Degree::Quadratic { q }, labels }
}

/// k × Jord(q, e), a degree-3 algebra with t(α, a) = α + t(a).
pub fn make_k_plus_jordq(f: Fp, gram_w: &Matrix) -> JordanAlgebra {
    let inner = make_jordq(f, gram_w);
    let m = inner.dim();
    let n = m + 1;
    let mut table = vec![SparseVec::new(); n * n];
    table[0] = SparseVec::from_dense(&unit(n, 0));
    for i in 0..m {
        for j in 0..m {
            let v = &inner.table[i * m + j];
            table[(i + 1) * n + j + 1] = SparseVec { entries: v.entries.iter().map(|&(k, c)| (k + 1, c)).collect() };
        }
    }
    let mut unit_vec = vec![0; n];
    unit_vec[0] = 1;
    unit_vec[1] = 1;
    let mut trace = vec![0; n];
    trace[0] = 1;
    for i in 0..m {
        trace[i + 1] = inner.trace(&unit(m, i));
    }
    let labels = std::iter::once("1".to_string()).chain(inner.labels.iter().cloned()).collect();
    JordanAlgebra { field: f, name: format!("k_jordq{}", m - 1), table, unit: unit_vec, degree: Degree::Cubic { trace }, labels }
}

/// The ground field as a degree-3 algebra: n(α) = α³, t(α) = 3α.
pub fn make_ground_cubic(f: Fp) -> JordanAlgebra {
    JordanAlgebra {
        field: f,
        name: "k".into(),
        table: vec![SparseVec::from_dense(&[1])],
        unit: vec![1],
        degree: Degree::Cubic { trace: vec![f.from_i64(3)] },
        labels: vec!["1".into()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KINDS: [CompositionKind; 4] = [CompositionKind::Unit, CompositionKind::Binarion, CompositionKind::Quaternion, CompositionKind::Octonion];

    fn fp(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn composition_invariants_hold_for_small_primes() {
        for p in [3, 5, 7] {
            for kind in KINDS {
                let c = make_composition(fp(p), kind);
                assert_eq!(c.dim(), kind.dim());
                c.check_invariants(20, 1).unwrap_or_else(|e| panic!("{kind:?} at p={p}: {e}"));
            }
        }
    }

    #[test]
    fn quaternions_are_two_by_two_matrices() {
        let f = fp(5);
        let c = make_composition(f, CompositionKind::Quaternion);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = random_vector(f, 4, &mut rng);
            // basis order E11, E12, E21, E22
            let det = f.sub(f.mul(x[0], x[3]), f.mul(x[1], x[2]));
            assert_eq!(c.norm(&x), det);
            assert_eq!(c.trace(&x), f.add(x[0], x[3]));
        }
    }

    #[test]
    fn h3_dimensions() {
        let f = fp(3);
        let dims: Vec<usize> = KINDS.iter().map(|&k| make_h3(&make_composition(f, k)).dim()).collect();
        assert_eq!(dims, [6, 9, 15, 27]);
    }

    #[test]
    fn cubic_identity_for_h3_and_k_plus_jordq() {
        for p in [3, 5] {
            let f = fp(p);
            for kind in KINDS {
                let j = make_h3(&make_composition(f, kind));
                j.check_cubic_identity(30, 7).unwrap_or_else(|e| panic!("{} at p={p}: {e}", j.name()));
            }
            let j = make_k_plus_jordq(f, &Matrix::identity(3));
            j.check_cubic_identity(30, 7).unwrap();
            assert_eq!(j.one(), vec![1, 1, 0, 0, 0]);
            assert_eq!(j.trace(&unit(5, 0)), 1);
        }
    }

    #[test]
    fn perturbed_product_breaks_cubic_identity() {
        let f = fp(3);
        let j = make_h3(&make_composition(f, CompositionKind::Quaternion));
        let bad = j.with_perturbed_product(3, 4, 5);
        assert!(bad.check_cubic_identity(30, 7).is_err());
    }

    #[test]
    fn unit_cubic_data_in_h3k() {
        let f = fp(5);
        let j = make_h3(&make_composition(f, CompositionKind::Unit));
        let one = j.one();
        assert_eq!(j.trace(&one), 3);
        assert_eq!(j.spur(&one), 3);
        assert_eq!(j.sharp(&one), one);
        assert_eq!(j.norm(&one), Some(1));
        let e11 = unit(6, 0);
        assert_eq!(j.trace(&e11), 1);
        assert_eq!(j.spur(&e11), 0);
        assert!(is_zero(&j.sharp(&e11)));
        assert_eq!(j.norm(&e11), Some(0));
    }

    #[test]
    fn trace_forms_nondegenerate() {
        for p in [3, 5] {
            let f = fp(p);
            for kind in KINDS {
                let j = make_h3(&make_composition(f, kind));
                assert_eq!(trace_form_radical_dim(&j), 0, "{} at p={p}", j.name());
            }
        }
    }

    #[test]
    fn cross_trace_form_is_totally_symmetric() {
        let f = fp(5);
        let j = make_h3(&make_composition(f, CompositionKind::Binarion));
        let cd = j.cubic_data();
        let n = j.dim();
        let b = |i| unit(n, i);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = cd.t(f, &cd.cross(f, &b(x), &b(y)), &b(z));
                    assert_eq!(v, cd.t(f, &cd.cross(f, &b(y), &b(z)), &b(x)));
                    assert_eq!(v, cd.t(f, &cd.cross(f, &b(y), &b(x)), &b(z)));
                }
            }
        }
    }

    #[test]
    fn jordq_products_and_trace_form() {
        let f = fp(5);
        let j = make_jordq(f, &Matrix::identity(3));
        let (w1, w2) = (unit(4, 1), unit(4, 2));
        assert!(is_zero(&j.mul(&w1, &w2)));
        assert_eq!(j.trace_form(&w1, &w1), f.neg(1) % 5);
        assert_eq!(j.trace_form(&w1, &w2), 0);
        assert!(is_zero(&j.cross(&w1, &w2)));
    }

    #[test]
    fn inner_derivation_kills_unit_and_matches_commutators() {
        let f = fp(5);
        let j = make_matrix_jordan(f, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let quarter = f.inv(4);
        for _ in 0..10 {
            let (x, y, z) = (random_vector(f, 9, &mut rng), random_vector(f, 9, &mut rng), random_vector(f, 9, &mut rng));
            assert!(is_zero(&j.inner_derivation(&x, &y, &j.one())));
            assert!(is_zero(&j.inner_derivation(&x, &x, &z)));
            let m = |v: &[u32]| Matrix::from_flat(3, 3, v.to_vec());
            let xy = m(&x).commutator(f, &m(&y));
            let expected = xy.commutator(f, &m(&z)).scaled(f, quarter);
            assert_eq!(j.inner_derivation(&x, &y, &z), expected.into_flat());
        }
    }
}
