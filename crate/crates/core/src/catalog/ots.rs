//! Orthogonal and null orthogonal triple systems.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{nondegenerate_symmetric, param, split2, standard_alternating, tensor, v_gram, verified, CatalogError};
use crate::algebras::{make_composition, CompositionKind, Degree, JordanAlgebra};
use crate::exactla::{axpy, rank_kernel, scale, solve, unit, Fp, Matrix, SpanBasis};
use crate::functors::{gamma, psi, sigma};
use crate::triples::{TripleKind, TripleSystem};

fn require_p3(f: Fp, what: &str) -> Result<(), CatalogError> {
    if f.p() == 3 {
        Ok(())
    } else {
        Err(param(format!("{what} needs p = 3")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OtsClassical {
    /// [xyz] = σ_{x,y}(z) for (T, gram)
    Orthogonal(Matrix),
    /// T = W ⊕ W*, dim W = m
    UnitarianSplit(usize),
    /// T = V ⊗ W, dim W = 2m
    SymplecticSplit(usize),
}

pub fn ots_classical(f: Fp, kind: &OtsClassical) -> Result<TripleSystem, CatalogError> {
    match kind {
        OtsClassical::Orthogonal(gram) => {
            nondegenerate_symmetric(f, gram)?;
            let n = gram.rows();
            let t = TripleSystem::from_trilinear(f, n, TripleKind::Ots, Some(gram.clone()), None, |x, y, z| sigma(f, gram, x, y).mul_vec(f, z))?;
            verified(t)
        }
        OtsClassical::UnitarianSplit(m) => unitarian_split(f, *m),
        OtsClassical::SymplecticSplit(m) => symplectic_split(f, *m),
    }
}

fn unitarian_split(f: Fp, m: usize) -> Result<TripleSystem, CatalogError> {
    if m < 3 {
        return Err(param("unitarian type needs dim W ≥ 3"));
    }
    let n = 2 * m;
    let gram = Matrix::from_fn(n, n, |i, j| u32::from(i.abs_diff(j) == m));
    let labels = (0..m).map(|i| format!("w{i}")).chain((0..m).map(|i| format!("w*{i}"))).collect();
    let t = TripleSystem::from_basis_fn(f, n, TripleKind::Ots, Some(gram), Some(labels), |i, j, k| {
        let mut out = vec![0; n];
        if (i < m) == (j < m) {
            return out;
        }
        // [x f ·] = −[f x ·]
        let (x, g, sign) = if i < m { (i, j, 1) } else { (j, i, f.neg(1)) };
        let pair = |x: usize, g: usize| u32::from(g - m == x);
        if k < m {
            // [x f y] = f(x)y − 2f(y)x
            out[k] = f.add(out[k], pair(x, g));
            out[x] = f.sub(out[x], f.mul(2, pair(k, g)));
        } else {
            // [x f h] = −f(x)h + 2h(x)f
            out[k] = f.sub(out[k], pair(x, g));
            out[g] = f.add(out[g], f.mul(2, pair(x, k)));
        }
        scale(f, &mut out, sign);
        out
    })?;
    verified(t)
}

fn symplectic_split(f: Fp, m: usize) -> Result<TripleSystem, CatalogError> {
    if m < 2 {
        return Err(param("symplectic type needs dim W = 2m ≥ 4"));
    }
    let w = 2 * m;
    let n = 2 * w;
    let vg = v_gram(f);
    let wg = standard_alternating(f, w);
    // [xyy] = (x|y)y − (y|y)x forces (a⊗x | b⊗y) = −⟨a|b⟩ψ(x,y)
    let gram = Matrix::from_fn(n, n, |i, j| {
        let ((a, x), (b, y)) = (split2(i, w), split2(j, w));
        f.neg(f.mul(vg.get(a, b), wg.get(x, y)))
    });
    let labels = (0..n).map(|i| format!("{}.x{}", ["v", "w"][i / w], i % w)).collect();
    let t = TripleSystem::from_basis_fn(f, n, TripleKind::Ots, Some(gram), Some(labels), |i, j, k| {
        let ((a, x), (b, y), (c, z)) = (split2(i, w), split2(j, w), split2(k, w));
        let (ea, eb, ec) = (unit(2, a), unit(2, b), unit(2, c));
        let (ex, ey, ez) = (unit(w, x), unit(w, y), unit(w, z));
        let mut out = tensor(f, &gamma(f, &vg, &ea, &eb).mul_vec(f, &ec), &ez);
        scale(f, &mut out, wg.get(x, y));
        let second = tensor(f, &ec, &psi(f, &wg, &ex, &ey).mul_vec(f, &ez));
        axpy(f, &mut out, f.neg(f.mul(2, vg.get(a, b))), &second);
        out
    })?;
    verified(t)
}

// ---------------------------------------------------------------------------
// dimension 4

fn det(f: Fp, m: &Matrix) -> u32 {
    let n = m.rows();
    let mut a = m.clone();
    let mut d = 1;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a.get(r, c) != 0) else { return 0 };
        if r != c {
            for j in 0..n {
                let (x, y) = (a.get(r, j), a.get(c, j));
                a.set(r, j, y);
                a.set(c, j, x);
            }
            d = f.neg(d);
        }
        let piv = a.get(c, c);
        d = f.mul(d, piv);
        let inv = f.inv(piv);
        for r2 in c + 1..n {
            let x = f.mul(a.get(r2, c), inv);
            if x != 0 {
                for j in c..n {
                    let v = f.sub(a.get(r2, j), f.mul(x, a.get(c, j)));
                    a.set(r2, j, v);
                }
            }
        }
    }
    d
}

#[derive(Clone, Debug)]
pub struct DmuSystem {
    pub system: TripleSystem,
    /// ({a₁a₂a₃} | {b₁b₂b₃}) = μ det((aᵢ|bⱼ))
    pub mu: u32,
}

/// Four-dimensional systems from the determinant 4-form Φ = λ·det:
/// [xyz] = {xyz} + σ_{x,y}(z), or {xyz} alone when `null`, where
/// Φ(x,y,z,t) = ({xyz}|t).
pub fn ots_dmu(f: Fp, lambda: u32, gram: &Matrix, null: bool) -> Result<DmuSystem, CatalogError> {
    let lambda = lambda % f.p();
    if lambda == 0 {
        return Err(param("λ must be nonzero"));
    }
    if gram.rows() != 4 {
        return Err(param("the determinant systems live in dimension 4"));
    }
    nondegenerate_symmetric(f, gram)?;
    let ginv_cols: Vec<Vec<u32>> = (0..4).map(|t| solve(f, gram, &unit(4, t)).expect("gram is invertible")).collect();
    let ginv = Matrix::from_columns(4, &ginv_cols);
    let braces = |x: &[u32], y: &[u32], z: &[u32]| -> Vec<u32> {
        let phi: Vec<u32> = (0..4).map(|t| f.mul(lambda, det(f, &Matrix::from_columns(4, &[x.to_vec(), y.to_vec(), z.to_vec(), unit(4, t)])))).collect();
        ginv.mul_vec(f, &phi)
    };
    let (kind, form) = if null { (TripleKind::NullOts, None) } else { (TripleKind::Ots, Some(gram.clone())) };
    let system = verified(TripleSystem::from_trilinear(f, 4, kind, form, None, |x, y, z| {
        let mut out = braces(x, y, z);
        if !null {
            axpy(f, &mut out, 1, &sigma(f, gram, x, y).mul_vec(f, z));
        }
        out
    })?)?;

    let q = |x: &[u32], y: &[u32]| crate::exactla::dot(f, x, &gram.mul_vec(f, y));
    let gram3 = |a: &[Vec<u32>], b: &[Vec<u32>]| Matrix::from_fn(3, 3, |i, j| q(&a[i], &b[j]));
    let triple = (0..4)
        .flat_map(|i| (i + 1..4).flat_map(move |j| (j + 1..4).map(move |k| [i, j, k])))
        .map(|ix| ix.map(|i| unit(4, i)).to_vec())
        .find(|e| det(f, &gram3(e, e)) != 0)
        .expect("a nondegenerate form has a nondegenerate 3×3 principal minor");
    let b = braces(&triple[0], &triple[1], &triple[2]);
    let mu = f.div(q(&b, &b), det(f, &gram3(&triple, &triple)));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let sample = |rng: &mut ChaCha8Rng| -> Vec<Vec<u32>> { (0..3).map(|_| system.random_vector(rng)).collect() };
    for _ in 0..20 {
        let (a, c) = (sample(&mut rng), sample(&mut rng));
        let lhs = q(&braces(&a[0], &a[1], &a[2]), &braces(&c[0], &c[1], &c[2]));
        if lhs != f.mul(mu, det(f, &gram3(&a, &c))) {
            return Err(CatalogError::Verification("μ differs between probes".into()));
        }
    }
    Ok(DmuSystem { system, mu })
}

/// T_α = V₂ ⊗ V₃ with
/// [xyz] = −α⟨x₃|y₃⟩γ_{x₂,y₂}(z₂)⊗z₃ + (1+α)⟨x₂|y₂⟩z₂⊗γ_{x₃,y₃}(z₃),
/// the sign read off from the odd bracket of D(2,1;α).
/// For α = −1 this returns the null system V₁ ⊗ V₂ with
/// d_{x,y} = ⟨x₂|y₂⟩γ_{x₁,y₁} − ⟨x₁|y₁⟩γ_{x₂,y₂}.
pub fn ots_dalpha(f: Fp, alpha: u32) -> Result<TripleSystem, CatalogError> {
    let alpha = alpha % f.p();
    if alpha == 0 {
        return Err(param("α must be nonzero"));
    }
    let vg = v_gram(f);
    let labels = ["v.v", "v.w", "w.v", "w.w"].map(String::from).to_vec();
    let (kind, form, c1, c2) = if alpha == f.neg(1) {
        (TripleKind::NullOts, None, 1, f.neg(1))
    } else {
        let form = Matrix::from_fn(4, 4, |i, j| f.mul(vg.get(i / 2, j / 2), vg.get(i % 2, j % 2)));
        (TripleKind::Ots, Some(form), f.neg(alpha), f.add(1, alpha))
    };
    // c₁⟨x₂'|y₂'⟩γ_{x₁',y₁'}(z₁') ⊗ z₂' + c₂⟨x₁'|y₁'⟩ z₁' ⊗ γ_{x₂',y₂'}(z₂')
    let t = TripleSystem::from_basis_fn(f, 4, kind, form, Some(labels), |i, j, k| {
        let ((x1, x2), (y1, y2), (z1, z2)) = (split2(i, 2), split2(j, 2), split2(k, 2));
        let g1 = gamma(f, &vg, &unit(2, x1), &unit(2, y1)).mul_vec(f, &unit(2, z1));
        let g2 = gamma(f, &vg, &unit(2, x2), &unit(2, y2)).mul_vec(f, &unit(2, z2));
        let mut out = tensor(f, &g1, &unit(2, z2));
        scale(f, &mut out, f.mul(c1, vg.get(x2, y2)));
        axpy(f, &mut out, f.mul(c2, vg.get(x1, y1)), &tensor(f, &unit(2, z1), &g2));
        out
    })?;
    verified(t)
}

// ---------------------------------------------------------------------------
// octonions

/// T = C₀ with [xyz] = α[[x,y],z] and (x|y) = −2α t(xy); characteristic 3.
pub fn ots_gtype(f: Fp, alpha: u32) -> Result<TripleSystem, CatalogError> {
    require_p3(f, "the G-type system")?;
    let alpha = alpha % f.p();
    if alpha == 0 {
        return Err(param("α must be nonzero"));
    }
    let c = make_composition(f, CompositionKind::Octonion);
    let tr = Matrix::from_fn(1, 8, |_, j| c.trace(&unit(8, j)));
    let c0 = rank_kernel(f, &tr).1;
    let basis = c0.basis().to_vec();
    let n = basis.len();
    let comm = |x: &[u32], y: &[u32]| crate::exactla::sub_vec(f, &c.mul(x, y), &c.mul(y, x));
    let gram = Matrix::from_fn(n, n, |i, j| f.mul(f.neg(f.mul(2, alpha)), c.trace(&c.mul(&basis[i], &basis[j]))));
    let t = TripleSystem::from_basis_fn(f, n, TripleKind::Ots, Some(gram), None, |i, j, k| {
        let mut v = comm(&comm(&basis[i], &basis[j]), &basis[k]);
        scale(f, &mut v, alpha);
        c0.coordinates(f, &v).expect("commutators stay in C₀")
    })?;
    verified(t)
}

/// Signs (s₁, s₂, s₃) of X(x,y,z) = (xȳ)z + s₁b(x,y)z + s₂b(y,z)x + s₃b(z,x)y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrossSigns(pub [i8; 3]);

#[derive(Clone, Debug)]
pub struct FType {
    pub system: TripleSystem,
    pub signs: CrossSigns,
}

/// The split octonions with the 3-fold cross product X as a null OTS in
/// characteristic 3. The signs of X are found by search: the accepted
/// choice is alternating on basis triples and satisfies
/// b(X(a₁,a₂,a₃), X(a₁,a₂,a₃)) = det(b(aᵢ,aⱼ)) on 200 seeded samples.
pub fn ots_ftype(f: Fp) -> Result<FType, CatalogError> {
    require_p3(f, "the F-type null system")?;
    let c = make_composition(f, CompositionKind::Octonion);
    let h = f.half();
    let b = |x: &[u32], y: &[u32]| f.mul(h, c.norm_polar(x, y));
    let cross = |s: [i8; 3], x: &[u32], y: &[u32], z: &[u32]| -> Vec<u32> {
        let sg = |e: i8| if e > 0 { 1 } else { f.neg(1) };
        let mut out = c.mul(&c.mul(x, &c.conj(y)), z);
        axpy(f, &mut out, f.mul(sg(s[0]), b(x, y)), z);
        axpy(f, &mut out, f.mul(sg(s[1]), b(y, z)), x);
        axpy(f, &mut out, f.mul(sg(s[2]), b(z, x)), y);
        out
    };
    let basis: Vec<Vec<u32>> = (0..8).map(|i| unit(8, i)).collect();
    let alternating = |s: [i8; 3]| {
        (0..8).all(|i| {
            (0..8).all(|j| {
                (0..8).all(|k| {
                    let v = cross(s, &basis[i], &basis[j], &basis[k]);
                    let neg = |w: Vec<u32>| w.iter().map(|&e| f.neg(e)).collect::<Vec<u32>>();
                    v == neg(cross(s, &basis[j], &basis[i], &basis[k])) && v == neg(cross(s, &basis[i], &basis[k], &basis[j]))
                })
            })
        })
    };
    let determinant = |s: [i8; 3]| {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        (0..200).all(|_| {
            let a: Vec<Vec<u32>> = (0..3).map(|_| (0..8).map(|_| rand::Rng::gen_range(&mut rng, 0..f.p())).collect()).collect();
            let x = cross(s, &a[0], &a[1], &a[2]);
            b(&x, &x) == det(f, &Matrix::from_fn(3, 3, |i, j| b(&a[i], &a[j])))
        })
    };
    let candidates = (0..8u8).map(|m| [0, 1, 2].map(|bit| if m >> bit & 1 == 0 { 1 } else { -1 }));
    let Some(signs) = candidates.into_iter().find(|&s| alternating(s) && determinant(s)) else {
        return Err(CatalogError::Verification("no sign choice gives a 3-fold cross product".into()));
    };
    let labels = c.labels().to_vec();
    let system = verified(TripleSystem::from_trilinear(f, 8, TripleKind::NullOts, None, Some(labels), |x, y, z| cross(signs, x, y, z))?)?;
    Ok(FType { system, signs: CrossSigns(signs) })
}

// ---------------------------------------------------------------------------
// Jordan algebras in characteristic 3

/// Ĵ = J₀ / k1 with [x̂ŷẑ] induced by D_{x,y} and the trace form.
pub fn ots_jordan(j: &JordanAlgebra) -> Result<TripleSystem, CatalogError> {
    let f = j.field();
    require_p3(f, "the Jordan-type system")?;
    if !matches!(j.degree(), Degree::Cubic { .. }) || j.dim() < 3 {
        return Err(param("the Jordan-type system needs a degree-3 algebra of dimension ≥ 3"));
    }
    let m = j.dim();
    let tr = Matrix::from_fn(1, m, |_, i| j.trace(&unit(m, i)));
    let j0 = rank_kernel(f, &tr).1;
    let one = j.one();
    if !j0.contains(f, &one) {
        return Err(param("t(1) must vanish"));
    }
    let mut span = SpanBasis::new(m);
    span.offer(f, 0, &one);
    for (i, v) in j0.basis().iter().enumerate() {
        span.offer(f, i + 1, v);
    }
    let reps: Vec<Vec<u32>> = span.vectors()[1..].to_vec();
    let n = reps.len();
    let coords = |v: &[u32]| -> Vec<u32> { span.coords(f, v).expect("D_{x,y} preserves J₀")[1..].to_vec() };
    let gram = Matrix::from_fn(n, n, |a, b| j.trace_form(&reps[a], &reps[b]));
    if gram.rank(f) != n {
        return Err(param("the induced trace form is degenerate"));
    }
    let product = |x: &[u32], y: &[u32], z: &[u32]| coords(&j.inner_derivation(x, y, z));
    let t = TripleSystem::from_basis_fn(f, n, TripleKind::Ots, Some(gram.clone()), None, |a, b, c| product(&reps[a], &reps[b], &reps[c]))?;
    // representatives shifted by 1 induce the same tensor and form
    let shift = |v: &[u32]| crate::exactla::add_vec(f, v, &one);
    for a in 0..n {
        for b in 0..n {
            if j.trace_form(&shift(&reps[a]), &shift(&reps[b])) != gram.get(a, b) {
                return Err(CatalogError::Verification("induced form depends on representatives".into()));
            }
            for c in 0..n {
                if product(&shift(&reps[a]), &shift(&reps[b]), &shift(&reps[c])) != t.basis_product(a, b, c).to_dense(n) {
                    return Err(CatalogError::Verification("induced product depends on representatives".into()));
                }
            }
        }
    }
    verified(t)
}
