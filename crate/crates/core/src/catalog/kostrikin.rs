//! The Kostrikin algebras 𝔤(T₂,ε) and the eight-dimensional STS built from
//! a module for 𝔤(T₂,₁).

use serde::Serialize;

use super::{verified, CatalogError};
use crate::exactla::{Fp, Matrix, SparseMatrix, Subspace};
use crate::functors::{build_g_sts, gamma, gamma_index, sp_coords, sp_matrix, v_form};
use crate::galg::GradedAlgebra;
use crate::triples::{Dim2Class, TripleKind, TripleSystem};

type M2 = [[u32; 2]; 2];

fn m2_mul(f: Fp, x: &M2, y: &M2) -> M2 {
    let mut m = [[0; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = f.add(f.mul(x[i][0], y[0][j]), f.mul(x[i][1], y[1][j]));
        }
    }
    m
}

fn m2_comm(f: Fp, x: &M2, y: &M2) -> M2 {
    let (a, b) = (m2_mul(f, x, y), m2_mul(f, y, x));
    [[f.sub(a[0][0], b[0][0]), f.sub(a[0][1], b[0][1])], [f.sub(a[1][0], b[1][0]), f.sub(a[1][1], b[1][1])]]
}

fn m2_trace(f: Fp, x: &M2) -> u32 {
    f.add(x[0][0], x[1][1])
}

fn m2_scaled(f: Fp, x: &M2, c: u32) -> M2 {
    x.map(|row| row.map(|e| f.mul(c, e)))
}

/// An element s₁ + s₂ + Σ odd[a₁][a₂] a₁⊗a₂ of 𝔤(T₂,₁) = (sp(V₁) ⊕ sp(V₂)) ⊕ V₁⊗V₂.
#[derive(Clone, Copy, Default)]
struct Elt {
    s1: M2,
    s2: M2,
    odd: M2,
}

/// W = V₁⊗sp(V₂) ⊕ V₂; index a₁·3 + k for a₁ ⊗ (k-th sp basis element), 6 + a₂ for V₂.
fn w0(a1: usize, k: usize) -> usize {
    a1 * 3 + k
}

fn w1(a2: usize) -> usize {
    6 + a2
}

/// ρ(x) as an 8×8 matrix.
fn rho(f: Fp, x: &Elt) -> Matrix {
    let mut m = Matrix::zeros(8, 8);
    let mut add = |r: usize, c: usize, v: u32| {
        let old = m.get(r, c);
        m.set(r, c, f.add(old, v));
    };
    for a1 in 0..2 {
        for k in 0..3 {
            let col = w0(a1, k);
            let t = sp_matrix(f, k);
            // s₁(a₁) ⊗ t
            for b1 in 0..2 {
                add(w0(b1, k), col, x.s1[b1][a1]);
            }
            // a₁ ⊗ [s₂, t]
            let c = sp_coords(f, m2_comm(f, &x.s2, &t));
            for (l, &cl) in c.iter().enumerate() {
                add(w0(a1, l), col, cl);
            }
            // odd: (c₁⊗c₂)(a₁⊗t) = −⟨c₁|a₁⟩ t(c₂)
            for c1 in 0..2 {
                for c2 in 0..2 {
                    let coef = f.mul(x.odd[c1][c2], f.neg(v_form(c1, a1, f)));
                    if coef != 0 {
                        for r in 0..2 {
                            add(w1(r), col, f.mul(coef, t[r][c2]));
                        }
                    }
                }
            }
        }
    }
    for a2 in 0..2 {
        let col = w1(a2);
        for b2 in 0..2 {
            add(w1(b2), col, x.s2[b2][a2]);
        }
        // (c₁⊗c₂)(a₂) = −c₁ ⊗ γ_{c₂,a₂}
        for c1 in 0..2 {
            for c2 in 0..2 {
                if x.odd[c1][c2] != 0 {
                    add(w0(c1, gamma_index(c2, a2)), col, f.neg(x.odd[c1][c2]));
                }
            }
        }
    }
    m
}

/// The 𝔤(T₂,₁) element of a basis vector of `g` as built by build_g_sts.
fn elt_of(f: Fp, g: &GradedAlgebra, inder: &crate::triples::Inder, i: usize) -> Elt {
    let prov = g.provenance().expect("functor output carries provenance");
    let sp = prov.block("sp").expect("sp block");
    let ind = prov.block("inder").expect("inder block");
    let vt = prov.block("v_t").expect("v_t block");
    let wt = prov.block("w_t").expect("w_t block");
    let mut e = Elt::default();
    if i < sp.start + sp.len {
        e.s1 = sp_matrix(f, i - sp.start);
    } else if i < ind.start + ind.len {
        let d = inder.basis()[i - ind.start].to_dense();
        e.s2 = [[d.get(0, 0), d.get(0, 1)], [d.get(1, 0), d.get(1, 1)]];
    } else if i < vt.start + vt.len {
        e.odd[0][i - vt.start] = 1;
    } else {
        e.odd[1][i - wt.start] = 1;
    }
    e
}

fn rho_vec(f: Fp, basis_rho: &[Matrix], coords: &[(u32, u32)]) -> Matrix {
    let mut m = Matrix::zeros(8, 8);
    for &(k, c) in coords {
        m.add_scaled(f, c, &basis_rho[k as usize]);
    }
    m
}

/// The eight-dimensional STS over GF(3) on W = V₁⊗sp(V₂) ⊕ V₂.
pub fn sts8(f: Fp) -> Result<TripleSystem, CatalogError> {
    if f.p() != 3 {
        return Err(CatalogError::Parameter("the eight-dimensional system needs p = 3".into()));
    }
    let t2 = Dim2Class::CaseII { epsilon: 1 }.normal_form(f)?;
    let g = build_g_sts(&t2)?;
    let inder = t2.inder()?;
    let basis_rho: Vec<Matrix> = (0..g.dim()).map(|i| rho(f, &elt_of(f, &g, &inder, i))).collect();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let lhs = rho_vec(f, &basis_rho, &g.basis_bracket(i, j).entries);
            let rhs = basis_rho[i].commutator(f, &basis_rho[j]);
            if lhs != rhs {
                return Err(CatalogError::Verification(format!("ρ fails on the bracket of basis elements {i} and {j}")));
            }
        }
    }

    let vg = crate::catalog::v_gram(f);
    let sp_basis: Vec<M2> = (0..3).map(|k| sp_matrix(f, k)).collect();
    let gram = Matrix::from_fn(8, 8, |i, j| match (i < 6, j < 6) {
        (true, true) => f.mul(v_form(i / 3, j / 3, f), m2_trace(f, &m2_mul(f, &sp_basis[i % 3], &sp_basis[j % 3]))),
        (false, false) => v_form(i - 6, j - 6, f),
        _ => 0,
    });
    let d = |i: usize, j: usize| -> Matrix {
        match (i < 6, j < 6) {
            (true, true) => {
                let (a1, s) = (i / 3, &sp_basis[i % 3]);
                let (b1, t) = (j / 3, &sp_basis[j % 3]);
                let g1 = gamma(f, &vg, &crate::exactla::unit(2, a1), &crate::exactla::unit(2, b1));
                let g1 = [[g1.get(0, 0), g1.get(0, 1)], [g1.get(1, 0), g1.get(1, 1)]];
                let e = Elt {
                    s1: m2_scaled(f, &g1, m2_trace(f, &m2_mul(f, s, t))),
                    s2: m2_scaled(f, &m2_comm(f, s, t), f.neg(v_form(a1, b1, f))),
                    odd: [[0; 2]; 2],
                };
                rho(f, &e)
            }
            (true, false) | (false, true) => {
                let (x, a2) = if i < 6 { (i, j - 6) } else { (j, i - 6) };
                let (a1, s) = (x / 3, &sp_basis[x % 3]);
                let mut e = Elt::default();
                for r in 0..2 {
                    e.odd[a1][r] = s[r][a2];
                }
                rho(f, &e)
            }
            (false, false) => {
                let mut e = Elt::default();
                e.s2 = sp_matrix(f, gamma_index(i - 6, j - 6));
                rho(f, &e).scaled(f, f.neg(1))
            }
        }
    };
    let mut ops = Vec::with_capacity(64);
    for i in 0..8 {
        for j in 0..8 {
            ops.push(SparseMatrix::from_dense(&d(i, j)));
        }
    }
    let labels = ["v.gvv", "v.gvw", "v.gww", "w.gvv", "w.gvw", "w.gww", "a", "b"].map(String::from).to_vec();
    let t = verified(TripleSystem::from_ops(f, 8, TripleKind::Sts, Some(gram), Some(labels), ops)?)?;

    let image = Subspace::from_vectors(f, 64, basis_rho.iter().map(|m| m.clone().into_flat()));
    let span = Subspace::from_vectors(f, 64, t.stored_ops().map(|(_, m)| m.flatten()));
    if image.dim() != 10 || image != span {
        return Err(CatalogError::Verification(format!("inder has dim {}, ρ(𝔤) has dim {}", span.dim(), image.dim())));
    }
    Ok(t)
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LepsReport {
    pub epsilon: u32,
    pub relations: Vec<Relation>,
}

impl LepsReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }
}

/// Checks the Chevalley-type generators of 𝔤(T₂,ε) against the Cartan
/// relations [h₁,e₁] = 2e₁, [h₁,e₂] = −e₂, [h₂,e₁] = −2εe₁,
/// [h₂,e₂] = (ε−1)e₂, h₁ = [e₁,f₁], h₂ = [e₂,f₂].
/// f₁ is −½γ_{w₂,w₂}: with f₁ = −γ_{w₂,w₂} one gets [e₁,f₁] = 2h₁.
pub fn verify_leps_cartan(f: Fp, epsilon: u32) -> Result<LepsReport, CatalogError> {
    let epsilon = epsilon % f.p();
    let t = Dim2Class::CaseII { epsilon }.normal_form(f)?;
    let g = build_g_sts(&t)?;
    let inder = t.inder()?;
    let prov = g.provenance().expect("functor output carries provenance");
    let ind = prov.block("inder").expect("inder block").start;
    let vt = prov.block("v_t").expect("v_t block").start;
    let wt = prov.block("w_t").expect("w_t block").start;
    let n = g.dim();
    let tg = t.form().expect("STS has a form").gram().clone();
    // γ_{x,y} on V₂ = T as an element of the inder block
    let g2 = |x: usize, y: usize| -> Vec<u32> {
        let m = gamma(f, &tg, &crate::exactla::unit(2, x), &crate::exactla::unit(2, y));
        let c = inder.coords(f, &SparseMatrix::from_dense(&m)).expect("γ lies in inder(T₂,ε)");
        let mut v = vec![0; n];
        for (k, &a) in c.iter().enumerate() {
            v[ind + k] = a;
        }
        v
    };
    let unit = |i: usize| crate::exactla::unit(n, i);
    let scaled = |mut v: Vec<u32>, c: u32| {
        crate::exactla::scale(f, &mut v, c);
        v
    };
    let e1 = scaled(g2(0, 0), f.half());
    let f1 = scaled(g2(1, 1), f.neg(f.half()));
    let h1 = scaled(g2(0, 1), f.neg(1));
    let e2 = unit(vt + 1);
    let f2 = scaled(unit(wt), f.neg(1));
    let mut h2 = unit(gamma_index(0, 1));
    crate::exactla::axpy(f, &mut h2, epsilon, &g2(0, 1));
    let br = |x: &[u32], y: &[u32]| g.bracket(x, y).expect("dimensions match");
    let relations = vec![
        Relation { name: "[h1,e1] = 2e1", holds: br(&h1, &e1) == scaled(e1.clone(), 2) },
        Relation { name: "[h1,e2] = -e2", holds: br(&h1, &e2) == scaled(e2.clone(), f.neg(1)) },
        Relation { name: "[h2,e1] = -2eps e1", holds: br(&h2, &e1) == scaled(e1.clone(), f.neg(f.mul(2, epsilon))) },
        Relation { name: "[h2,e2] = (eps-1)e2", holds: br(&h2, &e2) == scaled(e2.clone(), f.sub(epsilon, 1)) },
        Relation { name: "h1 = [e1,f1]", holds: br(&e1, &f1) == h1 },
        Relation { name: "h2 = [e2,f2]", holds: br(&e2, &f2) == h2 },
    ];
    let report = LepsReport { epsilon, relations };
    if !report.passed() {
        let failed: Vec<&str> = report.relations.iter().filter(|r| !r.holds).map(|r| r.name).collect();
        return Err(CatalogError::Verification(format!("Cartan relations fail: {}", failed.join(", "))));
    }
    Ok(report)
}
