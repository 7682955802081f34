//! Concrete symplectic and orthogonal triple systems.
//!
//! Every constructor runs the axiom suite on its output before returning.

mod key;
mod kostrikin;
mod ots;

use thiserror::Error;

pub use key::{CatalogKey, JordanChoice};
pub use kostrikin::{sts8, verify_leps_cartan, LepsReport};
pub use ots::{ots_classical, ots_dalpha, ots_dmu, ots_ftype, ots_gtype, ots_jordan, CrossSigns, DmuSystem, FType, OtsClassical};

use crate::algebras::{CubicData, Degree, JordanAlgebra};
use crate::exactla::{Fp, Matrix};
use crate::functors::{gamma, sigma, FunctorError};
use crate::triples::{Dim2Class, TripleError, TripleKind, TripleSystem};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("bad parameters: {0}")]
    Parameter(String),
    #[error("axioms fail: {0}")]
    Axioms(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("bad catalog key {key:?}: {reason}")]
    Key { key: String, reason: String },
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

fn param(msg: impl Into<String>) -> CatalogError {
    CatalogError::Parameter(msg.into())
}

pub(crate) fn verified(t: TripleSystem) -> Result<TripleSystem, CatalogError> {
    let report = t.check_axioms();
    if report.passed() {
        Ok(t)
    } else {
        Err(CatalogError::Axioms(report.summary()))
    }
}

/// Gram matrix of a two-dimensional V with ⟨v|w⟩ = 1.
pub(crate) fn v_gram(f: Fp) -> Matrix {
    Matrix::from_rows(&[vec![0, 1], vec![f.neg(1), 0]])
}

/// Standard alternating form on k^n, n even: (e_{2i} | e_{2i+1}) = 1.
pub fn standard_alternating(f: Fp, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| {
        if i / 2 != j / 2 {
            0
        } else if i % 2 == 0 && j == i + 1 {
            1
        } else if i % 2 == 1 && j + 1 == i {
            f.neg(1)
        } else {
            0
        }
    })
}

fn nondegenerate_symmetric(f: Fp, gram: &Matrix) -> Result<(), CatalogError> {
    let n = gram.rows();
    if gram.cols() != n || *gram != gram.transpose() {
        return Err(param("gram matrix must be square and symmetric"));
    }
    if gram.rank(f) != n {
        return Err(param("gram matrix must be nondegenerate"));
    }
    Ok(())
}

/// Split index `i` of V ⊗ U (dim U = m) into (V index, U index).
fn split2(i: usize, m: usize) -> (usize, usize) {
    (i / m, i % m)
}

fn tensor(f: Fp, a: &[u32], x: &[u32]) -> Vec<u32> {
    a.iter().flat_map(|&c| x.iter().map(move |&d| f.mul(c, d))).collect()
}

// ---------------------------------------------------------------------------
// characteristic 3, dimension 2

/// The two-dimensional normal forms over GF(3).
pub fn sts_dim2(f: Fp, class: Dim2Class) -> Result<TripleSystem, CatalogError> {
    verified(class.normal_form(f)?)
}

// ---------------------------------------------------------------------------
// Jordan algebras

/// Boxes (α, a; b, β) over J, coordinates [α, a, b, β].
struct Boxes<'a> {
    f: Fp,
    data: &'a CubicData,
}

struct BoxElt {
    al: u32,
    a: Vec<u32>,
    b: Vec<u32>,
    be: u32,
}

impl BoxElt {
    fn swapped(&self) -> BoxElt {
        BoxElt { al: self.be, a: self.b.clone(), b: self.a.clone(), be: self.al }
    }
}

impl Boxes<'_> {
    fn m(&self) -> usize {
        self.data.dim
    }

    fn split(&self, x: &[u32]) -> BoxElt {
        let m = self.m();
        BoxElt { al: x[0], a: x[1..=m].to_vec(), b: x[m + 1..=2 * m].to_vec(), be: x[2 * m + 1] }
    }

    fn t(&self, x: &[u32], y: &[u32]) -> u32 {
        self.data.t(self.f, x, y)
    }

    fn cross(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.data.cross(self.f, x, y)
    }

    fn form(&self, x: &BoxElt, y: &BoxElt) -> u32 {
        let f = self.f;
        let s = f.sub(f.mul(x.al, y.be), f.mul(y.al, x.be));
        f.add(f.sub(s, self.t(&x.a, &y.b)), self.t(&x.b, &y.a))
    }

    /// The (γ, c) corner of the product; (δ, d) is minus this on swapped arguments.
    fn corner(&self, x1: &BoxElt, x2: &BoxElt, x3: &BoxElt) -> (u32, Vec<u32>) {
        let f = self.f;
        let m = self.m();
        let ab = f.add(f.mul(x1.al, x2.be), f.mul(x2.al, x1.be));
        let tt = f.add(self.t(&x1.a, &x2.b), self.t(&x2.a, &x1.b));
        let a12 = self.cross(&x1.a, &x2.a);
        let t23 = self.t(&x2.b, &x3.a);
        let t13 = self.t(&x1.b, &x3.a);

        let mut g = f.mul(f.add(f.mul(f.from_i64(-3), ab), tt), x3.al);
        let inner = f.sub(f.add(f.mul(x1.al, t23), f.mul(x2.al, t13)), self.t(&a12, &x3.a));
        g = f.add(g, f.mul(2, inner));

        let mut c = vec![0; m];
        let axpy = |c: &mut Vec<u32>, s: u32, v: &[u32]| crate::exactla::axpy(f, c, s, v);
        axpy(&mut c, f.add(f.neg(ab), tt), &x3.a);
        axpy(&mut c, f.mul(2, f.sub(t23, f.mul(x2.be, x3.al))), &x1.a);
        axpy(&mut c, f.mul(2, f.sub(t13, f.mul(x1.be, x3.al))), &x2.a);
        axpy(&mut c, f.mul(2, x1.al), &self.cross(&x2.b, &x3.b));
        axpy(&mut c, f.mul(2, x2.al), &self.cross(&x1.b, &x3.b));
        axpy(&mut c, f.mul(2, x3.al), &self.cross(&x1.b, &x2.b));
        let m2 = f.neg(2);
        axpy(&mut c, m2, &self.cross(&a12, &x3.b));
        axpy(&mut c, m2, &self.cross(&self.cross(&x1.a, &x3.a), &x2.b));
        axpy(&mut c, m2, &self.cross(&self.cross(&x2.a, &x3.a), &x1.b));
        (g, c)
    }

    fn product(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        let f = self.f;
        let (x1, x2, x3) = (self.split(x), self.split(y), self.split(z));
        let (g, c) = self.corner(&x1, &x2, &x3);
        let (dg, dc) = self.corner(&x1.swapped(), &x2.swapped(), &x3.swapped());
        let mut out = Vec::with_capacity(2 * self.m() + 2);
        out.push(g);
        out.extend(c);
        out.extend(dc.iter().map(|&v| f.neg(v)));
        out.push(f.neg(dg));
        out
    }
}

fn box_labels(j: &[String]) -> Vec<String> {
    let mut labels = vec!["alpha".to_string()];
    labels.extend(j.iter().map(|l| format!("a.{l}")));
    labels.extend(j.iter().map(|l| format!("b.{l}")));
    labels.push("beta".into());
    labels
}

/// The STS on 2×2 boxes over a Jordan algebra of a cubic form (or of a
/// quadratic form, where the cross product vanishes).
pub fn sts_from_jordan(j: &JordanAlgebra) -> Result<TripleSystem, CatalogError> {
    let f = j.field();
    if f.p() == 3 && j.dim() == 1 && matches!(j.degree(), Degree::Cubic { .. }) {
        return Err(param("the one-dimensional cubic algebra has zero trace form in characteristic 3"));
    }
    sts_from_cubic_data(f, &j.cubic_data(), j.labels())
}

/// The same construction for J = 0: a two-dimensional STS, zero when p = 3.
pub fn sts_from_zero_jordan(f: Fp) -> Result<TripleSystem, CatalogError> {
    if f.p() == 3 {
        return Err(param("J = 0 gives the zero product in characteristic 3"));
    }
    let data = CubicData { dim: 0, trace_form: Matrix::zeros(0, 0), cross: Vec::new() };
    sts_from_cubic_data(f, &data, &[])
}

fn sts_from_cubic_data(f: Fp, data: &CubicData, labels: &[String]) -> Result<TripleSystem, CatalogError> {
    let boxes = Boxes { f, data };
    let n = 2 * data.dim + 2;
    let basis: Vec<Vec<u32>> = (0..n).map(|i| crate::exactla::unit(n, i)).collect();
    let split: Vec<BoxElt> = basis.iter().map(|x| boxes.split(x)).collect();
    let gram = Matrix::from_fn(n, n, |i, j| boxes.form(&split[i], &split[j]));
    let t = TripleSystem::from_basis_fn(f, n, TripleKind::Sts, Some(gram), Some(box_labels(labels)), |i, j, k| {
        boxes.product(&basis[i], &basis[j], &basis[k])
    })?;
    verified(t)
}

// ---------------------------------------------------------------------------
// classical families

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StsClassical {
    /// [xyz] = ψ_{x,y}(z) on k^n with the standard alternating form
    Symplectic(usize),
    /// T = W ⊕ W*, dim W = m
    Special(usize),
    /// T = V ⊗ W for (W, gram)
    Orthogonal(Matrix),
    /// T = V₃, binary cubic forms
    G2,
}

pub fn sts_classical(f: Fp, kind: &StsClassical) -> Result<TripleSystem, CatalogError> {
    match kind {
        StsClassical::Symplectic(n) => sts_symplectic(f, *n),
        StsClassical::Special(m) => sts_special(f, *m),
        StsClassical::Orthogonal(gram) => sts_orthogonal(f, gram),
        StsClassical::G2 => sts_g2(f),
    }
}

fn sts_symplectic(f: Fp, n: usize) -> Result<TripleSystem, CatalogError> {
    if n == 0 || n % 2 == 1 {
        return Err(param("symplectic type needs a positive even dimension"));
    }
    let gram = standard_alternating(f, n);
    let t = TripleSystem::from_trilinear(f, n, TripleKind::Sts, Some(gram.clone()), None, |x, y, z| {
        crate::functors::psi(f, &gram, x, y).mul_vec(f, z)
    })?;
    verified(t)
}

fn sts_special(f: Fp, m: usize) -> Result<TripleSystem, CatalogError> {
    if m == 0 {
        return Err(param("special type needs dim W ≥ 1"));
    }
    let n = 2 * m;
    // e_i ∈ W for i < m, e_{m+i} the dual functional of e_i
    let gram = Matrix::from_fn(n, n, |i, j| match (i < m, j < m) {
        (false, true) if i - m == j => 1,
        (true, false) if j - m == i => f.neg(1),
        _ => 0,
    });
    let labels = (0..m).map(|i| format!("w{i}")).chain((0..m).map(|i| format!("w*{i}"))).collect();
    let t = TripleSystem::from_basis_fn(f, n, TripleKind::Sts, Some(gram), Some(labels), |i, j, k| {
        let mut out = vec![0; n];
        let pair = |x: usize, g: usize| u32::from(g - m == x);
        match (i < m, j < m, k < m) {
            (true, true, _) | (false, false, _) => {}
            // [x f y] = f(x)y + 2f(y)x
            (true, false, true) | (false, true, true) => {
                let (x, g) = if i < m { (i, j) } else { (j, i) };
                out[k] = f.add(out[k], pair(x, g));
                out[x] = f.add(out[x], f.mul(2, pair(k, g)));
            }
            // [x f g] = −f(x)g − 2g(x)f
            (true, false, false) | (false, true, false) => {
                let (x, g) = if i < m { (i, j) } else { (j, i) };
                out[k] = f.sub(out[k], pair(x, g));
                out[g] = f.sub(out[g], f.mul(2, pair(x, k)));
            }
        }
        out
    })?;
    verified(t)
}

fn sts_orthogonal(f: Fp, q: &Matrix) -> Result<TripleSystem, CatalogError> {
    nondegenerate_symmetric(f, q)?;
    let m = q.rows();
    if m < 3 {
        return Err(param("orthogonal type needs dim W ≥ 3"));
    }
    let n = 2 * m;
    let vg = v_gram(f);
    let h = f.half();
    let gram = Matrix::from_fn(n, n, |i, j| {
        let ((u, x), (v, y)) = (split2(i, m), split2(j, m));
        f.mul(h, f.mul(vg.get(u, v), q.get(x, y)))
    });
    let labels = (0..n).map(|i| format!("{}.x{}", ["v", "w"][i / m], i % m)).collect();
    let t = TripleSystem::from_basis_fn(f, n, TripleKind::Sts, Some(gram), Some(labels), |i, j, k| {
        let ((u, x), (v, y), (w, z)) = (split2(i, m), split2(j, m), split2(k, m));
        let eu = crate::exactla::unit(2, u);
        let ev = crate::exactla::unit(2, v);
        let ew = crate::exactla::unit(2, w);
        let ex = crate::exactla::unit(m, x);
        let ey = crate::exactla::unit(m, y);
        let ez = crate::exactla::unit(m, z);
        let mut out = tensor(f, &gamma(f, &vg, &eu, &ev).mul_vec(f, &ew), &ez);
        crate::exactla::scale(f, &mut out, f.mul(h, q.get(x, y)));
        let second = tensor(f, &ew, &sigma(f, q, &ex, &ey).mul_vec(f, &ez));
        crate::exactla::axpy(f, &mut out, vg.get(u, v), &second);
        out
    })?;
    verified(t)
}

/// Binary forms of degree n: c[i] is the coefficient of x^{n−i} y^i.
fn falling(f: Fp, n: usize, k: usize) -> u32 {
    (0..k).fold(1, |acc, i| f.mul(acc, f.from_i64((n - i) as i64)))
}

/// ∂^q f / ∂x^{q−i} ∂y^i of a degree-n form.
fn partial(f: Fp, poly: &[u32], q: usize, i: usize) -> Vec<u32> {
    let n = poly.len() - 1;
    let mut out = vec![0; n + 1 - q];
    for (j, &c) in poly.iter().enumerate() {
        if c == 0 || j < i || n - j < q - i {
            continue;
        }
        let coef = f.mul(falling(f, n - j, q - i), falling(f, j, i));
        out[j - i] = f.add(out[j - i], f.mul(c, coef));
    }
    out
}

fn poly_mul(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// The transvection (f, g)_q of binary forms, with binomial weights C(q, i).
pub fn transvection(f: Fp, a: &[u32], b: &[u32], q: usize) -> Vec<u32> {
    let (n, m) = (a.len() - 1, b.len() - 1);
    if q > n.min(m) {
        return vec![0; (n + m + 1).saturating_sub(2 * q).max(1)];
    }
    let scalar = f.inv(f.mul(falling(f, n, q), falling(f, m, q)));
    let mut out = vec![0; n + m - 2 * q + 1];
    for i in 0..=q {
        let term = poly_mul(f, &partial(f, a, q, i), &partial(f, b, q, q - i));
        let c = f.mul(scalar, f.div(falling(f, q, i), falling(f, i, i)));
        let s = if i % 2 == 0 { c } else { f.neg(c) };
        crate::exactla::axpy(f, &mut out, s, &term);
    }
    out
}

fn sts_g2(f: Fp) -> Result<TripleSystem, CatalogError> {
    if f.p() < 5 {
        return Err(param("the G2 system needs p ≥ 5 (transvections divide by 3!)"));
    }
    let n = 4;
    let basis: Vec<Vec<u32>> = (0..n).map(|i| crate::exactla::unit(n, i)).collect();
    let gram = Matrix::from_fn(n, n, |i, j| transvection(f, &basis[i], &basis[j], 3)[0]);
    let labels = ["x3", "x2y", "xy2", "y3"].map(String::from).to_vec();
    // with binomial weights the axioms force [FGH] = 6((F,G)_2, H)_1 against (F,G)_3
    let t = TripleSystem::from_basis_fn(f, n, TripleKind::Sts, Some(gram), Some(labels), |i, j, k| {
        let mut v = transvection(f, &transvection(f, &basis[i], &basis[j], 2), &basis[k], 1);
        crate::exactla::scale(f, &mut v, f.from_i64(6));
        v
    })?;
    verified(t)
}

#[cfg(test)]
mod tests;
