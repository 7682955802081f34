//! Symplectic and orthogonal triple systems (and their null variants).
//!
//! The product is kept as the operators d_{x,y} = [x y ·] on basis pairs;
//! `ops[i * n + j]` holds d_{e_i,e_j} for every ordered pair, completed by
//! the kind's symmetry in the first two slots.

mod axioms;
mod converters;
mod dim2;

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{solve, BilinForm, Fp, FormError, Matrix, SparseMatrix, SparseVec, SpanBasis, Subspace, Symmetry};
use crate::meataxe::{CyclicSearch, MatrixModule, MeataxeOutcome, NortonCertificate, DEFAULT_TRIALS};

pub use axioms::{AxiomReport, IdentityResult, IdentityTag};
pub use converters::{faulkner_to_sts, sts_to_faulkner, to_freudenthal, FaulknerSystem, FreudenthalSystem};
pub use dim2::{classify_dim2_sts, Dim2Class};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TripleKind {
    #[serde(rename = "STS")]
    Sts,
    #[serde(rename = "OTS")]
    Ots,
    #[serde(rename = "NullSTS")]
    NullSts,
    #[serde(rename = "NullOTS")]
    NullOts,
}

impl TripleKind {
    /// d_{x,y} = d_{y,x} (otherwise d_{x,y} = −d_{y,x}).
    pub fn symmetric_pairs(self) -> bool {
        matches!(self, TripleKind::Sts | TripleKind::NullSts)
    }

    pub fn has_form(self) -> bool {
        matches!(self, TripleKind::Sts | TripleKind::Ots)
    }

    pub fn form_symmetry(self) -> Symmetry {
        if self.symmetric_pairs() {
            Symmetry::Alternating
        } else {
            Symmetry::Symmetric
        }
    }

    /// Canonical stored pairs: i ≤ j for symmetric kinds, i < j otherwise.
    pub fn stored_pairs(self, n: usize) -> impl Iterator<Item = (usize, usize)> {
        let strict = !self.symmetric_pairs();
        (0..n).flat_map(move |i| ((if strict { i + 1 } else { i })..n).map(move |j| (i, j)))
    }

    pub fn name(self) -> &'static str {
        match self {
            TripleKind::Sts => "STS",
            TripleKind::Ots => "OTS",
            TripleKind::NullSts => "NullSTS",
            TripleKind::NullOts => "NullOTS",
        }
    }
}

#[derive(Debug, Error)]
pub enum TripleError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{kind:?} needs a nonzero {symmetry:?} form")]
    FormRequired { kind: TripleKind, symmetry: Symmetry },
    #[error("null kinds carry no form")]
    UnexpectedForm,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("product violates the {kind:?} pair symmetry at ({i}, {j})")]
    PairSymmetry { kind: TripleKind, i: usize, j: usize },
    #[error("coefficient {0} out of range")]
    Coefficient(u32),
    #[error("inner derivations not closed: {0}")]
    InderClosure(String),
    #[error("axioms fail: {0}")]
    Axioms(String),
    #[error("{0}")]
    Precondition(String),
    #[error("Freudenthal identities fail: {0}")]
    Freudenthal(String),
    #[error("Faulkner identities fail: {0}")]
    Faulkner(String),
    #[error("basis change is singular")]
    SingularBasis,
}

#[derive(Clone, Debug)]
pub struct TripleSystem {
    field: Fp,
    dim: usize,
    kind: TripleKind,
    ops: Vec<SparseMatrix>,
    form: Option<BilinForm>,
    labels: Vec<String>,
    inder_cache: OnceLock<Arc<Inder>>,
}

impl PartialEq for TripleSystem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.kind == other.kind
            && self.ops == other.ops
            && self.form == other.form
            && self.labels == other.labels
    }
}

impl Eq for TripleSystem {}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

impl TripleSystem {
    /// Build from a basis-level product `[e_i e_j e_k]`, evaluated on every
    /// ordered pair so that the kind's pair symmetry is checked, not assumed.
    pub fn from_basis_fn(
        f: Fp,
        n: usize,
        kind: TripleKind,
        form: Option<Matrix>,
        labels: Option<Vec<String>>,
        mut product: impl FnMut(usize, usize, usize) -> Vec<u32>,
    ) -> Result<TripleSystem, TripleError> {
        let mut ops = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let cols = (0..n)
                    .map(|k| {
                        let v = product(i, j, k);
                        assert_eq!(v.len(), n, "product vector has wrong length");
                        SparseVec::from_dense(&v)
                    })
                    .collect();
                ops.push(SparseMatrix::from_columns(n, cols));
            }
        }
        TripleSystem::from_ops(f, n, kind, form, labels, ops)
    }

    /// Build from a trilinear map on vectors.
    pub fn from_trilinear(
        f: Fp,
        n: usize,
        kind: TripleKind,
        form: Option<Matrix>,
        labels: Option<Vec<String>>,
        mut product: impl FnMut(&[u32], &[u32], &[u32]) -> Vec<u32>,
    ) -> Result<TripleSystem, TripleError> {
        let basis: Vec<Vec<u32>> = (0..n).map(|i| crate::exactla::unit(n, i)).collect();
        TripleSystem::from_basis_fn(f, n, kind, form, labels, |i, j, k| product(&basis[i], &basis[j], &basis[k]))
    }

    /// Build from operators for all ordered pairs; validates pair symmetry.
    pub fn from_ops(
        f: Fp,
        n: usize,
        kind: TripleKind,
        form: Option<Matrix>,
        labels: Option<Vec<String>>,
        ops: Vec<SparseMatrix>,
    ) -> Result<TripleSystem, TripleError> {
        if ops.len() != n * n {
            return Err(TripleError::Dimension { expected: n * n, got: ops.len() });
        }
        for i in 0..n {
            for j in i..n {
                let a = &ops[i * n + j];
                let b = &ops[j * n + i];
                let ok = if kind.symmetric_pairs() { a == b } else { *b == a.scaled(f, f.neg(1)) && (i != j || a.is_zero()) };
                if !ok {
                    return Err(TripleError::PairSymmetry { kind, i, j });
                }
            }
        }
        let form = match (kind.has_form(), form) {
            (true, Some(g)) => {
                let bf = BilinForm::new(f, g, kind.form_symmetry())?;
                if bf.is_zero() {
                    return Err(TripleError::FormRequired { kind, symmetry: kind.form_symmetry() });
                }
                if bf.dim() != n {
                    return Err(TripleError::Dimension { expected: n, got: bf.dim() });
                }
                Some(bf)
            }
            (true, None) => return Err(TripleError::FormRequired { kind, symmetry: kind.form_symmetry() }),
            (false, None) => None,
            (false, Some(_)) => return Err(TripleError::UnexpectedForm),
        };
        let labels = labels.unwrap_or_else(|| default_labels(n));
        if labels.len() != n {
            return Err(TripleError::Dimension { expected: n, got: labels.len() });
        }
        Ok(TripleSystem { field: f, dim: n, kind, ops, form, labels, inder_cache: OnceLock::new() })
    }

    /// Build from operators on the canonical stored pairs only.
    pub fn from_stored(
        f: Fp,
        n: usize,
        kind: TripleKind,
        form: Option<Matrix>,
        labels: Option<Vec<String>>,
        stored: impl IntoIterator<Item = ((usize, usize), SparseMatrix)>,
    ) -> Result<TripleSystem, TripleError> {
        let mut ops = vec![SparseMatrix::zeros(n, n); n * n];
        for ((i, j), m) in stored {
            if i >= n || j >= n || m.rows() != n || m.ncols() != n {
                return Err(TripleError::Dimension { expected: n, got: i.max(j).max(m.rows()) });
            }
            let canonical = if kind.symmetric_pairs() { i <= j } else { i < j };
            if !canonical {
                return Err(TripleError::PairSymmetry { kind, i, j });
            }
            let other = if kind.symmetric_pairs() { m.clone() } else { m.scaled(f, f.neg(1)) };
            ops[j * n + i] = other;
            ops[i * n + j] = m;
        }
        TripleSystem::from_ops(f, n, kind, form, labels, ops)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> TripleKind {
        self.kind
    }

    pub fn form(&self) -> Option<&BilinForm> {
        self.form.as_ref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// d_{e_i, e_j}
    pub fn op(&self, i: usize, j: usize) -> &SparseMatrix {
        &self.ops[i * self.dim + j]
    }

    /// Stored operators in canonical pair order.
    pub fn stored_ops(&self) -> impl Iterator<Item = ((usize, usize), &SparseMatrix)> + '_ {
        self.kind.stored_pairs(self.dim).map(move |(i, j)| ((i, j), self.op(i, j)))
    }

    /// [e_i e_j e_k]
    pub fn basis_product(&self, i: usize, j: usize, k: usize) -> &SparseVec {
        self.ops[i * self.dim + j].col(k)
    }

    /// (e_i | e_j), zero for null kinds.
    pub fn form_basis(&self, i: usize, j: usize) -> u32 {
        self.form.as_ref().map_or(0, |g| g.eval_basis(i, j))
    }

    pub fn form_eval(&self, x: &[u32], y: &[u32]) -> u32 {
        self.form.as_ref().map_or(0, |g| g.eval(self.field, x, y))
    }

    fn check_len(&self, v: &[u32]) -> Result<(), TripleError> {
        if v.len() != self.dim {
            return Err(TripleError::Dimension { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    /// [x y z]
    pub fn triple_eval(&self, x: &[u32], y: &[u32], z: &[u32]) -> Result<Vec<u32>, TripleError> {
        self.check_len(x)?;
        self.check_len(y)?;
        self.check_len(z)?;
        Ok(self.eval(x, y, z))
    }

    pub(crate) fn eval(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        let f = self.field;
        let n = self.dim;
        let mut out = vec![0; n];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    self.ops[i * n + j].apply_into(f, z, &mut out, f.mul(a, b));
                }
            }
        }
        out
    }

    /// d_{x,y} for arbitrary vectors.
    pub fn d_op(&self, x: &[u32], y: &[u32]) -> SparseMatrix {
        let f = self.field;
        let n = self.dim;
        let mut terms = Vec::new();
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                if a != 0 && b != 0 {
                    terms.push((f.mul(a, b), &self.ops[i * n + j]));
                }
            }
        }
        SparseMatrix::lin_comb(f, n, n, &terms)
    }

    pub fn product_is_zero(&self) -> bool {
        self.ops.iter().all(SparseMatrix::is_zero)
    }

    /// Copy with the coefficient of e_l in [e_i e_j e_k] raised by one,
    /// keeping the stored pair symmetry.
    pub fn with_perturbed_entry(&self, i: usize, j: usize, k: usize, l: usize) -> TripleSystem {
        let f = self.field;
        let n = self.dim;
        let mut out = self.clone();
        out.inder_cache = OnceLock::new();
        let bump = |m: &SparseMatrix, delta: u32| {
            let mut d = m.to_dense();
            d.set(l, k, f.add(d.get(l, k), delta));
            SparseMatrix::from_dense(&d)
        };
        let delta_ji = if self.kind.symmetric_pairs() { 1 } else { f.neg(1) };
        out.ops[i * n + j] = bump(&self.ops[i * n + j], 1);
        if i != j {
            out.ops[j * n + i] = bump(&self.ops[j * n + i], delta_ji);
        }
        out
    }

    /// The same system in the basis given by the columns of `basis`.
    pub fn change_basis(&self, basis: &Matrix) -> Result<TripleSystem, TripleError> {
        let f = self.field;
        let n = self.dim;
        if basis.rows() != n || basis.cols() != n {
            return Err(TripleError::Dimension { expected: n, got: basis.rows() });
        }
        if basis.rank(f) != n {
            return Err(TripleError::SingularBasis);
        }
        let cols: Vec<Vec<u32>> = (0..n).map(|k| basis.column(k)).collect();
        let inv_cols: Vec<Vec<u32>> = (0..n).map(|k| solve(f, basis, &crate::exactla::unit(n, k)).expect("basis is invertible")).collect();
        let inverse = Matrix::from_columns(n, &inv_cols);
        let coords = |v: Vec<u32>| inverse.mul_vec(f, &v);
        let mut ops = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let d = self.d_op(&cols[i], &cols[j]);
                let new_cols = (0..n).map(|k| SparseVec::from_dense(&coords(d.apply(f, &cols[k])))).collect();
                ops.push(SparseMatrix::from_columns(n, new_cols));
            }
        }
        let form = self.form.as_ref().map(|g| basis.transpose().mul(f, g.gram()).mul(f, basis));
        TripleSystem::from_ops(f, n, self.kind, form, Some(self.labels.clone()), ops)
    }

    pub fn check_axioms(&self) -> AxiomReport {
        axioms::check(self)
    }

    /// Inner derivations, with closure under commutators verified.
    pub fn inder(&self) -> Result<Arc<Inder>, TripleError> {
        if let Some(i) = self.inder_cache.get() {
            return Ok(i.clone());
        }
        let computed = Arc::new(Inder::compute(self)?);
        Ok(self.inder_cache.get_or_init(|| computed).clone())
    }

    /// Seeded random vector, for sampling checks.
    pub fn random_vector(&self, rng: &mut ChaCha8Rng) -> Vec<u32> {
        (0..self.dim).map(|_| rng.gen_range(0..self.field.p())).collect()
    }

    /// Operators z ↦ [x z y] and d_{x,y}: ideals are their common invariant
    /// subspaces.
    pub fn ideal_module(&self) -> MatrixModule {
        let f = self.field;
        let n = self.dim;
        let mut gens: Vec<SparseMatrix> = self.stored_ops().map(|(_, m)| m.clone()).filter(|m| !m.is_zero()).collect();
        for i in 0..n {
            for j in 0..n {
                let cols = (0..n).map(|z| self.basis_product(i, z, j).clone()).collect();
                let m = SparseMatrix::from_columns(n, cols);
                if !m.is_zero() {
                    gens.push(m);
                }
            }
        }
        gens.sort_by_key(|m| m.flatten());
        gens.dedup();
        MatrixModule::new(f, n, gens)
    }
}

/// The span of all d_{e_i,e_j} with its greedily chosen basis.
#[derive(Clone, Debug)]
pub struct Inder {
    n: usize,
    span: SpanBasis,
    /// basis operators, each an actual d_{e_i,e_j}
    basis: Vec<SparseMatrix>,
    pairs: Vec<(usize, usize)>,
    /// coordinates of d_{e_i,e_j} for every ordered pair
    pair_coords: Vec<SparseVec>,
    /// coordinates of [B_k, B_l] for k < l, index k * r + l
    brackets: Vec<SparseVec>,
}

/// Greedy basis of span{d_{e_i,e_j}} without the closure check.
pub(crate) fn inder_span(t: &TripleSystem) -> (SpanBasis, Vec<(usize, usize)>) {
    let f = t.field;
    let n = t.dim;
    let mut span = SpanBasis::new(n * n);
    let mut pairs = Vec::new();
    for (idx, ((i, j), m)) in t.stored_ops().enumerate() {
        if !m.is_zero() && span.offer(f, idx, &m.flatten()) {
            pairs.push((i, j));
        }
        if span.dim() == n * n {
            break;
        }
    }
    (span, pairs)
}

impl Inder {
    fn compute(t: &TripleSystem) -> Result<Inder, TripleError> {
        let f = t.field;
        let n = t.dim;
        let (span, pairs) = inder_span(t);
        let r = span.dim();
        let basis: Vec<SparseMatrix> = pairs.iter().map(|&(i, j)| t.op(i, j).clone()).collect();
        let mut pair_coords = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let m = t.op(i, j);
                pair_coords.push(if m.is_zero() { SparseVec::new() } else { SparseVec::from_dense(&span.coords_unchecked(f, &m.flatten())) });
            }
        }
        let coords_of_pair_combo = |x: &[u32], y: &[u32]| -> Vec<u32> {
            let mut out = vec![0; r];
            for (a, &xa) in x.iter().enumerate() {
                for (b, &yb) in y.iter().enumerate() {
                    if xa != 0 && yb != 0 {
                        pair_coords[a * n + b].add_into(f, &mut out, f.mul(xa, yb));
                    }
                }
            }
            out
        };
        let mut brackets = vec![SparseVec::new(); r * r];
        for k in 0..r {
            for l in k + 1..r {
                let comm = basis[k].commutator(f, &basis[l]);
                let flat = comm.flatten();
                let c = span.coords_unchecked(f, &flat);
                if span.combine(f, &c) != flat {
                    return Err(TripleError::InderClosure(format!("[B{k}, B{l}] leaves the span")));
                }
                // [d_a, d_{x,y}] = d_{d_a x, y} + d_{x, d_a y}
                let (i, j) = pairs[l];
                let bx = basis[k].col(i).to_dense(n);
                let by = basis[k].col(j).to_dense(n);
                let ei = crate::exactla::unit(n, i);
                let ej = crate::exactla::unit(n, j);
                let expected = crate::exactla::add_vec(f, &coords_of_pair_combo(&bx, &ej), &coords_of_pair_combo(&ei, &by));
                if expected != c {
                    return Err(TripleError::InderClosure(format!("[B{k}, B{l}] differs from the derivation formula")));
                }
                brackets[k * r + l] = SparseVec::from_dense(&c);
            }
        }
        Ok(Inder { n, span, basis, pairs, pair_coords, brackets })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseMatrix] {
        &self.basis
    }

    /// The pair (i, j) with B_k = d_{e_i,e_j}.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_coords(&self, i: usize, j: usize) -> &SparseVec {
        &self.pair_coords[i * self.n + j]
    }

    /// Coordinates of [B_k, B_l].
    pub fn bracket(&self, f: Fp, k: usize, l: usize) -> SparseVec {
        let r = self.dim();
        match k.cmp(&l) {
            std::cmp::Ordering::Less => self.brackets[k * r + l].clone(),
            std::cmp::Ordering::Equal => SparseVec::new(),
            std::cmp::Ordering::Greater => self.brackets[l * r + k].scaled(f, f.neg(1)),
        }
    }

    /// Coordinates of an arbitrary operator, `None` outside inder.
    pub fn coords(&self, f: Fp, m: &SparseMatrix) -> Option<Vec<u32>> {
        self.span.coords(f, &m.flatten())
    }

    pub fn operator(&self, f: Fp, coords: &[u32]) -> SparseMatrix {
        let terms: Vec<(u32, &SparseMatrix)> = coords.iter().zip(&self.basis).filter(|(c, _)| **c != 0).map(|(&c, m)| (c, m)).collect();
        SparseMatrix::lin_comb(f, self.n, self.n, &terms)
    }
}

// ---------------------------------------------------------------------------
// simplicity

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleSimplicityMethod {
    /// nondegenerate form and nonzero product
    FormCriterion,
    /// every projective point spun under the ideal operators
    CyclicSearch(CyclicSearch),
    Norton(NortonCertificate),
    ZeroProduct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSimplicity {
    pub simple: bool,
    pub method: TripleSimplicityMethod,
    /// a proper nonzero ideal, when one was found
    pub ideal: Option<Subspace>,
}

/// Largest projective point count for exhaustive cyclic search.
const CYCLIC_LIMIT: u128 = 20_000;

pub fn is_simple_triple(t: &TripleSystem) -> TripleSimplicity {
    let f = t.field;
    let n = t.dim;
    if t.product_is_zero() {
        let ideal = (n > 1).then(|| Subspace::from_vectors(f, n, [crate::exactla::unit(n, 0)]));
        return TripleSimplicity { simple: false, method: TripleSimplicityMethod::ZeroProduct, ideal };
    }
    let form_decides = match t.kind {
        TripleKind::Sts => n > 2 || f.p() != 3,
        TripleKind::Ots => true,
        _ => false,
    };
    if form_decides {
        let form = t.form.as_ref().expect("form kinds carry a form");
        let radical = crate::exactla::form_radical(f, form);
        let simple = radical.dim() == 0;
        return TripleSimplicity { simple, method: TripleSimplicityMethod::FormCriterion, ideal: (!simple).then_some(radical) };
    }
    direct_search(t)
}

/// Ideal search on the module of operators d_{x,y} and z ↦ [x z y].
pub fn direct_search(t: &TripleSystem) -> TripleSimplicity {
    let module = t.ideal_module();
    if module.projective_points() <= CYCLIC_LIMIT {
        let search = module.cyclic_search();
        let ideal = search.witness.as_ref().map(|v| module.spin(std::slice::from_ref(v)));
        return TripleSimplicity { simple: ideal.is_none(), ideal, method: TripleSimplicityMethod::CyclicSearch(search) };
    }
    match module.meataxe(0, DEFAULT_TRIALS) {
        MeataxeOutcome::Irreducible(c) => TripleSimplicity { simple: true, method: TripleSimplicityMethod::Norton(c), ideal: None },
        MeataxeOutcome::Reducible(s) => {
            let search = CyclicSearch { points: 0, witness: s.basis().first().cloned() };
            TripleSimplicity { simple: false, method: TripleSimplicityMethod::CyclicSearch(search), ideal: Some(s) }
        }
        MeataxeOutcome::Inconclusive { .. } => {
            let search = module.cyclic_search();
            let ideal = search.witness.as_ref().map(|v| module.spin(std::slice::from_ref(v)));
            TripleSimplicity { simple: ideal.is_none(), ideal, method: TripleSimplicityMethod::CyclicSearch(search) }
        }
    }
}

/// d_{x,x}² = 0 on the basis and on `samples` seeded random vectors.
pub fn dxx_squared_vanishes(t: &TripleSystem, samples: usize, seed: u64) -> bool {
    let f = t.field;
    let n = t.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n).map(|i| crate::exactla::unit(n, i)).chain((0..samples).map(|_| t.random_vector(&mut rng)));
    for x in points.collect::<Vec<_>>() {
        let d = t.d_op(&x, &x);
        if !d.mul(f, &d).is_zero() {
            return false;
        }
    }
    true
}

/// [T T T] as a subspace.
pub fn product_span(t: &TripleSystem) -> Subspace {
    let f = t.field;
    let n = t.dim;
    let mut s = Subspace::zero(n);
    for (_, m) in t.stored_ops() {
        for c in m.columns() {
            if !c.is_zero() && !s.is_full() {
                s.insert(f, c.to_dense(n));
            }
        }
    }
    s
}
