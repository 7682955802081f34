//! Two-dimensional symplectic triple systems in characteristic 3.

use serde::Serialize;

use super::{TripleError, TripleKind, TripleSystem};
use crate::exactla::{Fp, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dim2Class {
    /// [aaa] = αb, every other basis product zero
    CaseI { alpha: u32 },
    /// [aab] = εa, [abb] = −εb, [aaa] = [bbb] = 0
    CaseII { epsilon: u32 },
}

impl Dim2Class {
    /// The normal form on the symplectic basis {a, b}, (a|b) = 1.
    pub fn normal_form(self, f: Fp) -> Result<TripleSystem, TripleError> {
        if f.p() != 3 {
            return Err(TripleError::Precondition("two-dimensional normal forms need p = 3".into()));
        }
        if let Dim2Class::CaseII { epsilon: 0 } = self {
            return Err(TripleError::Precondition("epsilon must be nonzero".into()));
        }
        let gram = Matrix::from_rows(&[vec![0, 1], vec![f.neg(1), 0]]);
        let labels = Some(vec!["a".to_string(), "b".to_string()]);
        TripleSystem::from_basis_fn(f, 2, TripleKind::Sts, Some(gram), labels, |i, j, k| {
            let ones = i + j + k;
            match self {
                Dim2Class::CaseI { alpha } => {
                    if ones == 0 {
                        vec![0, alpha]
                    } else {
                        vec![0, 0]
                    }
                }
                Dim2Class::CaseII { epsilon } => match ones {
                    1 => vec![epsilon, 0],
                    2 => vec![0, f.neg(epsilon)],
                    _ => vec![0, 0],
                },
            }
        })
    }
}

fn nonzero_vectors(f: Fp) -> impl Iterator<Item = Vec<u32>> {
    f.elements().flat_map(move |x| f.elements().map(move |y| vec![x, y])).filter(|v| v.iter().any(|&c| c != 0))
}

/// Classify a two-dimensional STS over GF(3), returning the class and the
/// basis change (columns a, b) that carries `t` onto the normal form.
pub fn classify_dim2_sts(t: &TripleSystem) -> Result<(Dim2Class, Matrix), TripleError> {
    let f = t.field();
    if t.kind() != TripleKind::Sts || t.dim() != 2 || f.p() != 3 {
        return Err(TripleError::Precondition("classification needs a two-dimensional STS over GF(3)".into()));
    }
    let report = t.check_axioms();
    if !report.passed() {
        return Err(TripleError::Axioms(report.summary()));
    }
    let form = |x: &[u32], y: &[u32]| t.form_eval(x, y);
    let (class, a, b) = if t.product_is_zero() {
        let a = vec![1, 0];
        let b = vec![0, f.inv(t.form_basis(0, 1))];
        (Dim2Class::CaseI { alpha: 0 }, a, b)
    } else if let Some((a, c)) = nonzero_vectors(f).map(|a| {
        let c = t.eval(&a, &a, &a);
        (a, c)
    })
    .find(|(_, c)| c.iter().any(|&x| x != 0))
    {
        let alpha = form(&a, &c);
        let inv = f.inv(alpha);
        let b = c.iter().map(|&x| f.mul(inv, x)).collect();
        (Dim2Class::CaseI { alpha }, a, b)
    } else {
        // [xxx] = 0 everywhere, so some d_{a,a} is nonzero and nilpotent with image ka
        let a = nonzero_vectors(f).find(|a| !t.d_op(a, a).is_zero()).expect("nonzero product has a nonzero d_{a,a}");
        let c = nonzero_vectors(f).find(|c| t.eval(&a, &a, c) == a).expect("nilpotent d_{a,a} reaches a");
        let alpha = form(&a, &c);
        let inv = f.inv(alpha);
        let b = c.iter().map(|&x| f.mul(inv, x)).collect();
        (Dim2Class::CaseII { epsilon: inv }, a, b)
    };
    let basis = Matrix::from_columns(2, &[a, b]);
    let moved = t.change_basis(&basis)?;
    let normal = class.normal_form(f)?;
    if moved.ops != normal.ops || moved.form != normal.form {
        return Err(TripleError::Precondition("basis change does not reproduce the normal form".into()));
    }
    Ok((class, basis))
}
