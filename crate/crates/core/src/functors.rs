//! Lie algebras and superalgebras built from triple systems.
//!
//! V is two-dimensional with basis (v, w) and ⟨v|w⟩ = 1. Bases of the
//! outputs are laid out as sp(V) (γ_{v,v}, γ_{v,w}, γ_{w,w}), then the inner
//! derivation basis, then v⊗T and w⊗T; the tilde constructions use inder(T)
//! followed by T.

use thiserror::Error;

use crate::exactla::{Fp, Matrix, SparseVec};
use crate::galg::{AlgebraKind, Block, GalgError, GradedAlgebra, Provenance};
use crate::triples::{Inder, TripleError, TripleKind, TripleSystem};

#[derive(Debug, Error)]
pub enum FunctorError {
    #[error("input is {found}, expected {expected}")]
    Kind { expected: &'static str, found: &'static str },
    #[error("this construction needs characteristic 3, got p = {0}")]
    Characteristic(u32),
    #[error("axioms fail: {0}")]
    Axioms(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Algebra(#[from] GalgError),
    #[error("round trip mismatch: {0}")]
    Roundtrip(String),
}

/// ψ_{x,y}(z) = (x|z)y + (y|z)x for the form with Gram matrix `gram`.
pub fn psi(f: Fp, gram: &Matrix, x: &[u32], y: &[u32]) -> Matrix {
    rank_two(f, gram, x, y, 1)
}

/// γ_{u,v} = ⟨u|·⟩v + ⟨v|·⟩u, the same shape as ψ for an alternating form.
pub fn gamma(f: Fp, gram: &Matrix, u: &[u32], v: &[u32]) -> Matrix {
    rank_two(f, gram, u, v, 1)
}

/// σ_{x,y}(z) = q(x,z)y − q(y,z)x
pub fn sigma(f: Fp, gram: &Matrix, x: &[u32], y: &[u32]) -> Matrix {
    rank_two(f, gram, x, y, f.neg(1))
}

/// τ_{x,y} = b(x,·)y − b(y,·)x
pub fn tau(f: Fp, gram: &Matrix, x: &[u32], y: &[u32]) -> Matrix {
    rank_two(f, gram, x, y, f.neg(1))
}

/// z ↦ (x|z)y + c (y|z)x
fn rank_two(f: Fp, gram: &Matrix, x: &[u32], y: &[u32], c: u32) -> Matrix {
    let n = gram.rows();
    let xg = gram.vec_mul(f, x);
    let yg = gram.vec_mul(f, y);
    Matrix::from_fn(n, n, |r, z| f.add(f.mul(xg[z], y[r]), f.mul(c, f.mul(yg[z], x[r]))))
}

/// Indices in V: 0 = v, 1 = w.
pub(crate) fn v_form(a: usize, b: usize, f: Fp) -> u32 {
    match (a, b) {
        (0, 1) => 1,
        (1, 0) => f.neg(1),
        _ => 0,
    }
}

/// sp(V) index of γ_{a,b} (γ_{v,v}, γ_{v,w}, γ_{w,w}).
pub(crate) fn gamma_index(a: usize, b: usize) -> usize {
    a + b
}

/// The 2×2 matrix of the sp(V) basis element k on (v, w).
pub(crate) fn sp_matrix(f: Fp, k: usize) -> [[u32; 2]; 2] {
    match k {
        0 => [[0, 2], [0, 0]],
        1 => [[f.neg(1), 0], [0, 1]],
        _ => [[0, 0], [f.neg(2), 0]],
    }
}

/// Coordinates of a traceless 2×2 matrix in the sp(V) basis.
pub(crate) fn sp_coords(f: Fp, m: [[u32; 2]; 2]) -> [u32; 3] {
    let h = f.half();
    [f.mul(h, m[0][1]), f.neg(m[0][0]), f.neg(f.mul(h, m[1][0]))]
}

fn sp_bracket(f: Fp, a: usize, b: usize) -> [u32; 3] {
    let (x, y) = (sp_matrix(f, a), sp_matrix(f, b));
    let mut m = [[0; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            for k in 0..2 {
                *e = f.add(*e, f.sub(f.mul(x[i][k], y[k][j]), f.mul(y[i][k], x[k][j])));
            }
        }
    }
    sp_coords(f, m)
}

fn shifted(v: &SparseVec, by: usize) -> SparseVec {
    SparseVec { entries: v.entries.iter().map(|&(k, c)| (k + by as u32, c)).collect() }
}

fn check(t: &TripleSystem, accepted: &[TripleKind], expected: &'static str) -> Result<(), FunctorError> {
    if !accepted.contains(&t.kind()) {
        return Err(FunctorError::Kind { expected, found: t.kind().name() });
    }
    let report = t.check_axioms();
    if !report.passed() {
        return Err(FunctorError::Axioms(report.summary()));
    }
    Ok(())
}

fn require_p3(t: &TripleSystem) -> Result<(), FunctorError> {
    match t.field().p() {
        3 => Ok(()),
        p => Err(FunctorError::Characteristic(p)),
    }
}

/// Layout of a V ⊗ T construction.
struct Layout {
    sp: usize,
    r: usize,
    n: usize,
}

impl Layout {
    fn even(&self) -> usize {
        self.sp + self.r
    }

    /// index of u ⊗ e_x
    fn odd(&self, u: usize, x: usize) -> usize {
        self.even() + u * self.n + x
    }

    fn split_odd(&self, i: usize) -> (usize, usize) {
        let k = i - self.even();
        (k / self.n, k % self.n)
    }
}

/// Shared builder for the constructions with odd part V ⊗ T. `d_sign`
/// multiplies ⟨u|v⟩d_{x,y}; the (x|y)γ_{u,v} term and sp(V) are present iff
/// `with_sp`.
fn build_v_tensor(t: &TripleSystem, kind: AlgebraKind, with_sp: bool, d_sign: u32, functor: &str) -> Result<GradedAlgebra, FunctorError> {
    let f = t.field();
    let inder = t.inder()?;
    let lay = Layout { sp: if with_sp { 3 } else { 0 }, r: inder.dim(), n: t.dim() };
    let n_even = lay.even();
    let n_odd = 2 * lay.n;
    let mut labels: Vec<String> = Vec::new();
    if with_sp {
        labels.extend(["g_vv", "g_vw", "g_ww"].map(String::from));
    }
    labels.extend(inder.pairs().iter().map(|(i, j)| format!("d({},{})", t.labels()[*i], t.labels()[*j])));
    for u in ["v", "w"] {
        labels.extend(t.labels().iter().map(|l| format!("{u}*{l}")));
    }
    let r = lay.r;
    let g = GradedAlgebra::from_fn(f, kind, n_even, n_odd, Some(labels), |i, j| {
        if i < lay.sp && j < lay.sp {
            return SparseVec::from_dense(&sp_bracket(f, i, j));
        }
        if i < n_even && j < n_even {
            if i < lay.sp {
                return SparseVec::new();
            }
            return shifted(&inder.bracket(f, i - lay.sp, j - lay.sp), lay.sp);
        }
        if i < n_even {
            let (u, x) = lay.split_odd(j);
            if i < lay.sp {
                // s(u) ⊗ x
                let m = sp_matrix(f, i);
                let mut v = Vec::new();
                for (row, mrow) in m.iter().enumerate() {
                    if mrow[u] != 0 {
                        v.push((lay.odd(row, x) as u32, mrow[u]));
                    }
                }
                v.sort_unstable();
                return SparseVec { entries: v };
            }
            // u ⊗ d(x)
            let d = &inder.basis()[i - lay.sp];
            return shifted(d.col(x), lay.odd(u, 0));
        }
        let (u, x) = lay.split_odd(i);
        let (u2, y) = lay.split_odd(j);
        let mut out = vec![0; n_even];
        if with_sp {
            out[gamma_index(u, u2)] = t.form_basis(x, y);
        }
        let c = f.mul(d_sign, v_form(u, u2, f));
        if c != 0 {
            for &(k, a) in &inder.pair_coords(x, y).entries {
                out[lay.sp + k as usize] = f.add(out[lay.sp + k as usize], f.mul(c, a));
            }
        }
        SparseVec::from_dense(&out)
    })?;
    let mut blocks = Vec::new();
    if with_sp {
        blocks.push(Block { name: "sp".into(), start: 0, len: 3 });
    }
    blocks.push(Block { name: "inder".into(), start: lay.sp, len: r });
    blocks.push(Block { name: "v_t".into(), start: n_even, len: lay.n });
    blocks.push(Block { name: "w_t".into(), start: n_even + lay.n, len: lay.n });
    Ok(g.with_provenance(Provenance { functor: functor.into(), source: t.kind().name().into(), blocks }))
}

/// Shared builder for inder(T) ⊕ T with [x, y] = d_{x,y}.
fn build_tilde(t: &TripleSystem, kind: AlgebraKind, functor: &str) -> Result<GradedAlgebra, FunctorError> {
    let f = t.field();
    let inder = t.inder()?;
    let r = inder.dim();
    let n = t.dim();
    let mut labels: Vec<String> = inder.pairs().iter().map(|(i, j)| format!("d({},{})", t.labels()[*i], t.labels()[*j])).collect();
    labels.extend(t.labels().iter().cloned());
    let g = GradedAlgebra::from_fn(f, kind, r, n, Some(labels), |i, j| {
        if j < r {
            inder.bracket(f, i, j)
        } else if i < r {
            shifted(inder.basis()[i].col(j - r), r)
        } else {
            inder.pair_coords(i - r, j - r).clone()
        }
    })?;
    let blocks = vec![Block { name: "inder".into(), start: 0, len: r }, Block { name: "t".into(), start: r, len: n }];
    Ok(g.with_provenance(Provenance { functor: functor.into(), source: t.kind().name().into(), blocks }))
}

/// 𝔤(T) = (sp(V) ⊕ inder T) ⊕ V⊗T with [u⊗x, v⊗y] = (x|y)γ_{u,v} + ⟨u|v⟩d_{x,y}.
pub fn build_g_sts(t: &TripleSystem) -> Result<GradedAlgebra, FunctorError> {
    check(t, &[TripleKind::Sts], "STS")?;
    build_v_tensor(t, AlgebraKind::Lie, true, 1, "g_sts")
}

/// inder T ⊕ T as a superalgebra with [x, y] = d_{x,y}; characteristic 3 only.
pub fn build_gtilde_sts(t: &TripleSystem) -> Result<GradedAlgebra, FunctorError> {
    require_p3(t)?;
    build_gtilde_sts_unchecked(t)
}

/// The same construction without the characteristic check.
pub fn build_gtilde_sts_unchecked(t: &TripleSystem) -> Result<GradedAlgebra, FunctorError> {
    check(t, &[TripleKind::Sts], "STS")?;
    build_tilde(t, AlgebraKind::Superlie, "gtilde_sts")
}

/// Superalgebra sp(V) ⊕ inder T ⊕ V⊗T with [u⊗x, v⊗y] = (x|y)γ_{u,v} − ⟨u|v⟩d_{x,y}.
pub fn build_g_ots(t: &TripleSystem) -> Result<GradedAlgebra, FunctorError> {
    check(t, &[TripleKind::Ots], "OTS")?;
    let f = t.field();
    build_v_tensor(t, AlgebraKind::Superlie, true, f.neg(1), "g_ots")
}

/// inder T ⊕ T as a Z/2-graded Lie algebra with [x, y] = d_{x,y}; characteristic 3 only.
pub fn build_gtilde_ots(t: &TripleSystem) -> Result<GradedAlgebra, FunctorError> {
    require_p3(t)?;
    check(t, &[TripleKind::Ots, TripleKind::NullOts], "OTS or NullOTS")?;
    build_tilde(t, AlgebraKind::Lie, "gtilde_ots")
}

/// inder T ⊕ V⊗T with [u⊗x, v⊗y] = ⟨u|v⟩d_{x,y}: a Lie algebra for null
/// STS and a superalgebra for null OTS.
pub fn build_g_null(t: &TripleSystem) -> Result<GradedAlgebra, FunctorError> {
    check(t, &[TripleKind::NullSts, TripleKind::NullOts], "NullSTS or NullOTS")?;
    let kind = if t.kind() == TripleKind::NullSts { AlgebraKind::Lie } else { AlgebraKind::Superlie };
    build_v_tensor(t, kind, false, 1, "g_null")
}

/// Rebuilds the form and the operators d_{e_i,e_j} from the odd brackets
/// of `g` and compares them with `t` exactly.
pub fn verify_roundtrip(g: &GradedAlgebra, t: &TripleSystem) -> Result<(), FunctorError> {
    let f = t.field();
    let n = t.dim();
    let prov = g.provenance().ok_or_else(|| FunctorError::Roundtrip("no provenance".into()))?;
    let inder_block = prov.block("inder").ok_or_else(|| FunctorError::Roundtrip("no inder block".into()))?;
    let inder: std::sync::Arc<Inder> = t.inder()?;
    if inder_block.len != inder.dim() {
        return Err(FunctorError::Roundtrip(format!("inder block has {} elements, expected {}", inder_block.len, inder.dim())));
    }
    let odd_start = |name: &str| prov.block(name).map(|b| b.start).ok_or_else(|| FunctorError::Roundtrip(format!("no {name} block")));
    // d-component of a bracket as an operator on T, via [d, x_block] = d(x)
    let x_start = match prov.functor.as_str() {
        "gtilde_sts" | "gtilde_ots" => odd_start("t")?,
        _ => odd_start("v_t")?,
    };
    let operator_of = |bracket: &SparseVec| -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for &(k, c) in &bracket.entries {
            let k = k as usize;
            if k < inder_block.start || k >= inder_block.start + inder_block.len {
                continue;
            }
            for z in 0..n {
                for &(row, a) in &g.basis_bracket(k, x_start + z).entries {
                    let row = row as usize - x_start;
                    m.set(row, z, f.add(m.get(row, z), f.mul(c, a)));
                }
            }
        }
        m
    };
    let (first, second, d_sign, form_expected) = match prov.functor.as_str() {
        "g_sts" => (odd_start("v_t")?, odd_start("w_t")?, 1, true),
        "g_ots" => (odd_start("v_t")?, odd_start("w_t")?, f.neg(1), true),
        "g_null" => (odd_start("v_t")?, odd_start("w_t")?, 1, false),
        "gtilde_sts" | "gtilde_ots" => (odd_start("t")?, odd_start("t")?, 1, false),
        other => return Err(FunctorError::Roundtrip(format!("unknown functor {other}"))),
    };
    for i in 0..n {
        for j in 0..n {
            let b = g.basis_bracket(first + i, second + j);
            if form_expected {
                // γ_{v,w} sits at index 1
                let c = b.get(1);
                if c != t.form_basis(i, j) {
                    return Err(FunctorError::Roundtrip(format!("form mismatch at ({i}, {j})")));
                }
            }
            let d = operator_of(b).scaled(f, d_sign);
            if d != t.op(i, j).to_dense() {
                return Err(FunctorError::Roundtrip(format!("d mismatch at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{span_and_coords, unit};

    #[test]
    fn sp_basis_and_brackets() {
        let f = Fp::new(5).unwrap();
        // γ_{a,b} from its definition on the basis (v, w)
        let gram = Matrix::from_rows(&[vec![0, 1], vec![4, 0]]);
        let e = |i| unit(2, i);
        for a in 0..2 {
            for b in a..2 {
                let m = gamma(f, &gram, &e(a), &e(b));
                let expect = sp_matrix(f, gamma_index(a, b));
                assert_eq!(m, Matrix::from_rows(&[expect[0].to_vec(), expect[1].to_vec()]));
            }
        }
        // [γ_vw, γ_vv] = −2γ_vv with γ_vw = diag(−1, 1)
        assert_eq!(sp_bracket(f, 1, 0), [f.neg(2), 0, 0]);
    }

    #[test]
    fn rank_one_operator_spans() {
        let f = Fp::new(5).unwrap();
        let n = 4;
        let q = Matrix::identity(n);
        let e = |i| unit(n, i);
        let sig: Vec<Vec<u32>> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| sigma(f, &q, &e(i), &e(j)).into_flat()).collect();
        assert_eq!(span_and_coords(f, n * n, &sig).dim(), 6);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(sigma(f, &q, &e(i), &e(j)), sigma(f, &q, &e(j), &e(i)).scaled(f, f.neg(1)));
                assert_eq!(psi(f, &q, &e(i), &e(j)), psi(f, &q, &e(j), &e(i)));
            }
        }
        // σ lands in so(q): σᵀq + qσ = 0
        let s = sigma(f, &q, &e(0), &e(1));
        assert!(s.transpose().mul(f, &q).add(f, &q.mul(f, &s)).is_zero());
    }
}
