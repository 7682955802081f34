//! Identity checks on basis tuples.

use serde::Serialize;

use super::{inder_span, TripleKind, TripleSystem};
use crate::exactla::{SparseMatrix, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityTag {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub tag: IdentityTag,
    pub statement: &'static str,
    pub tuples_checked: u64,
    pub violations: Vec<Vec<usize>>,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub kind: TripleKind,
    pub results: Vec<IdentityResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(IdentityResult::passed)
    }

    pub fn get(&self, tag: IdentityTag) -> Option<&IdentityResult> {
        self.results.iter().find(|r| r.tag == tag)
    }

    pub fn failed_tags(&self) -> Vec<IdentityTag> {
        self.results.iter().filter(|r| !r.passed()).map(|r| r.tag).collect()
    }

    pub fn summary(&self) -> String {
        self.results
            .iter()
            .map(|r| format!("({}) {}: {} violations", format!("{:?}", r.tag).to_lowercase(), r.statement, r.violations.len()))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Accumulates a combination of sparse vectors into a dense scratch buffer.
struct Scratch {
    buf: Vec<u32>,
    touched: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch { buf: vec![0; n], touched: Vec::new() }
    }

    fn add(&mut self, f: crate::exactla::Fp, v: &SparseVec, a: u32) {
        if a == 0 {
            return;
        }
        for &(i, c) in &v.entries {
            let o = &mut self.buf[i as usize];
            if *o == 0 {
                self.touched.push(i);
            }
            *o = f.add(*o, f.mul(a, c));
        }
    }

    fn add_unit(&mut self, f: crate::exactla::Fp, i: usize, a: u32) {
        if a == 0 {
            return;
        }
        let o = &mut self.buf[i];
        if *o == 0 {
            self.touched.push(i as u32);
        }
        *o = f.add(*o, a);
    }

    /// Whether the accumulated vector is zero; resets the buffer.
    fn take_is_zero(&mut self) -> bool {
        let mut zero = true;
        for &i in &self.touched {
            if self.buf[i as usize] != 0 {
                zero = false;
                self.buf[i as usize] = 0;
            }
        }
        self.touched.clear();
        zero
    }
}

pub(super) fn check(t: &TripleSystem) -> AxiomReport {
    let mut results = vec![check_pair_symmetry(t)];
    match t.kind {
        TripleKind::Sts => {
            results.push(check_sts_b(t));
            let (c, d) = check_derivations(t, IdentityTag::C, true);
            results.push(c);
            results.push(d.expect("form kinds check invariance"));
        }
        TripleKind::Ots => {
            results.push(check_ots_b(t));
            let (c, d) = check_derivations(t, IdentityTag::C, true);
            results.push(c);
            results.push(d.expect("form kinds check invariance"));
        }
        TripleKind::NullSts | TripleKind::NullOts => {
            results[0] = check_null_symmetry(t);
            results.push(check_derivations(t, IdentityTag::B, false).0);
        }
    }
    AxiomReport { kind: t.kind, results }
}

fn check_pair_symmetry(t: &TripleSystem) -> IdentityResult {
    let f = t.field;
    let n = t.dim;
    let mut violations = Vec::new();
    let mut checked = 0;
    for i in 0..n {
        for j in i..n {
            checked += 1;
            let a = t.op(i, j);
            let b = t.op(j, i);
            let ok = if t.kind.symmetric_pairs() { a == b } else { *b == a.scaled(f, f.neg(1)) && (i != j || a.is_zero()) };
            if !ok {
                violations.push(vec![i, j]);
            }
        }
    }
    let statement = if t.kind.symmetric_pairs() { "[xyz] = [yxz]" } else { "[xxy] = 0" };
    IdentityResult { tag: IdentityTag::A, statement, tuples_checked: checked, violations }
}

/// Total symmetry for null STS; [xyy] = 0 (linearized) for null OTS.
fn check_null_symmetry(t: &TripleSystem) -> IdentityResult {
    let f = t.field;
    let n = t.dim;
    let mut pair = check_pair_symmetry(t);
    let mut s = Scratch::new(n);
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                pair.tuples_checked += 1;
                s.add(f, t.basis_product(i, j, k), 1);
                let sign = if t.kind == TripleKind::NullSts { f.neg(1) } else { 1 };
                s.add(f, t.basis_product(i, k, j), sign);
                if !s.take_is_zero() {
                    pair.violations.push(vec![i, j, k]);
                }
            }
        }
    }
    pair.statement = if t.kind == TripleKind::NullSts { "[xyz] = [yxz] = [xzy]" } else { "[xyy] = [yyx] = 0" };
    pair
}

/// [xyz] − [xzy] = (x|z)y − (x|y)z + 2(y|z)x
fn check_sts_b(t: &TripleSystem) -> IdentityResult {
    let f = t.field;
    let n = t.dim;
    let two = f.from_i64(2);
    let mut s = Scratch::new(n);
    let mut violations = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                s.add(f, t.basis_product(x, y, z), 1);
                s.add(f, t.basis_product(x, z, y), f.neg(1));
                s.add_unit(f, y, f.neg(t.form_basis(x, z)));
                s.add_unit(f, z, t.form_basis(x, y));
                s.add_unit(f, x, f.neg(f.mul(two, t.form_basis(y, z))));
                if !s.take_is_zero() {
                    violations.push(vec![x, y, z]);
                }
            }
        }
    }
    IdentityResult {
        tag: IdentityTag::B,
        statement: "[xyz] - [xzy] = (x|z)y - (x|y)z + 2(y|z)x",
        tuples_checked: (n * n * n) as u64,
        violations,
    }
}

/// [xyy] = (x|y)y − (y|y)x, linearized:
/// [xyz] + [xzy] = (x|y)z + (x|z)y − 2(y|z)x
fn check_ots_b(t: &TripleSystem) -> IdentityResult {
    let f = t.field;
    let n = t.dim;
    let two = f.from_i64(2);
    let mut s = Scratch::new(n);
    let mut violations = Vec::new();
    let mut checked = 0;
    for x in 0..n {
        for y in 0..n {
            for z in y..n {
                checked += 1;
                s.add(f, t.basis_product(x, y, z), 1);
                s.add(f, t.basis_product(x, z, y), 1);
                s.add_unit(f, z, f.neg(t.form_basis(x, y)));
                s.add_unit(f, y, f.neg(t.form_basis(x, z)));
                s.add_unit(f, x, f.mul(two, t.form_basis(y, z)));
                if !s.take_is_zero() {
                    violations.push(vec![x, y, z]);
                }
            }
        }
    }
    IdentityResult { tag: IdentityTag::B, statement: "[xyy] = (x|y)y - (y|y)x", tuples_checked: checked, violations }
}

/// Derivation identity d[uvw] = [du v w] + [u dv w] + [u v dw] and, for
/// form kinds, (du|v) + (u|dv) = 0, for d ranging over the greedy inner
/// derivation basis. Both identities are linear in d, so this is the same as
/// checking every d_{e_i,e_j}.
fn check_derivations(t: &TripleSystem, tag: IdentityTag, with_form: bool) -> (IdentityResult, Option<IdentityResult>) {
    let f = t.field;
    let n = t.dim;
    let (_, pairs) = inder_span(t);
    let mut s = Scratch::new(n);
    let mut violations = Vec::new();
    let mut inv_violations = Vec::new();
    let mut checked = 0;
    let mut inv_checked = 0;
    let ustart = |u: usize| if t.kind.symmetric_pairs() { u } else { u + 1 };
    for &(i, j) in &pairs {
        let d: &SparseMatrix = t.op(i, j);
        for u in 0..n {
            for v in ustart(u)..n {
                for w in 0..n {
                    checked += 1;
                    // d [uvw]
                    for &(m, c) in &t.basis_product(u, v, w).entries {
                        s.add(f, d.col(m as usize), c);
                    }
                    let neg = |c: u32| f.neg(c);
                    for &(m, c) in &d.col(u).entries {
                        s.add(f, t.basis_product(m as usize, v, w), neg(c));
                    }
                    for &(m, c) in &d.col(v).entries {
                        s.add(f, t.basis_product(u, m as usize, w), neg(c));
                    }
                    for &(m, c) in &d.col(w).entries {
                        s.add(f, t.basis_product(u, v, m as usize), neg(c));
                    }
                    if !s.take_is_zero() {
                        violations.push(vec![i, j, u, v, w]);
                    }
                }
            }
        }
        if with_form {
            for u in 0..n {
                for v in 0..n {
                    inv_checked += 1;
                    let mut acc = 0;
                    for &(m, c) in &d.col(u).entries {
                        acc = f.add(acc, f.mul(c, t.form_basis(m as usize, v)));
                    }
                    for &(m, c) in &d.col(v).entries {
                        acc = f.add(acc, f.mul(c, t.form_basis(u, m as usize)));
                    }
                    if acc != 0 {
                        inv_violations.push(vec![i, j, u, v]);
                    }
                }
            }
        }
    }
    let c = IdentityResult {
        tag,
        statement: "[xy[uvw]] = [[xyu]vw] + [u[xyv]w] + [uv[xyw]]",
        tuples_checked: checked,
        violations,
    };
    let d = with_form.then_some(IdentityResult {
        tag: IdentityTag::D,
        statement: "([xyu]|v) + (u|[xyv]) = 0",
        tuples_checked: inv_checked,
        violations: inv_violations,
    });
    (c, d)
}
