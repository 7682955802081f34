//! The dimension and simplicity table over the catalog, for one prime.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::{CatalogError, CatalogKey};
use crate::exactla::Fp;
use crate::functors::{build_g_null, build_g_ots, build_g_sts, build_gtilde_ots, build_gtilde_sts};
use crate::galg::{GradedAlgebra, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Functor {
    GSts,
    GtildeSts,
    GOts,
    GtildeOts,
    GNull,
}

impl Functor {
    pub fn name(self) -> &'static str {
        match self {
            Functor::GSts => "g_sts",
            Functor::GtildeSts => "gtilde_sts",
            Functor::GOts => "g_ots",
            Functor::GtildeOts => "gtilde_ots",
            Functor::GNull => "g_null",
        }
    }

    pub fn apply(self, t: &crate::triples::TripleSystem) -> Result<GradedAlgebra, crate::functors::FunctorError> {
        match self {
            Functor::GSts => build_g_sts(t),
            Functor::GtildeSts => build_gtilde_sts(t),
            Functor::GOts => build_g_ots(t),
            Functor::GtildeOts => build_gtilde_ots(t),
            Functor::GNull => build_g_null(t),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub group: &'static str,
    pub key: String,
    pub functor: Functor,
    pub dim: usize,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub center: usize,
    pub verdict: Verdict,
    pub expected_dim: usize,
    pub expected_simple: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub p: u32,
    pub seed: u64,
    pub rows: Vec<Row>,
    pub passed: bool,
}

type Expected = (&'static str, &'static str, Functor, usize, bool);

fn rows_for(p: u32) -> Vec<Expected> {
    use Functor::*;
    let mut rows: Vec<Expected> = Vec::new();
    if p == 3 {
        rows.extend([
            ("gtilde STS", "sts:sts8", GtildeSts, 18, true),
            ("gtilde STS", "sts:jordan:h3_k", GtildeSts, 35, true),
            ("gtilde STS", "sts:jordan:h3_kk", GtildeSts, 54, true),
            ("gtilde STS", "sts:jordan:h3_quat", GtildeSts, 98, true),
            ("gtilde STS", "sts:jordan:h3_oct", GtildeSts, 189, true),
            ("g OTS", "ots:gtype:alpha=1", GOts, 24, true),
            ("g OTS", "ots:ftype", GNull, 37, true),
            ("g OTS", "ots:jordan:h3_quat", GOts, 50, true),
            ("g OTS", "ots:jordan:h3_oct", GOts, 105, true),
            ("Kostrikin", "sts:dim2:ii:eps=1", GSts, 10, true),
            ("Kostrikin", "sts:dim2:ii:eps=2", GSts, 10, true),
            ("Kostrikin", "ots:dalpha:alpha=-1", GtildeOts, 10, true),
            ("Kostrikin", "ots:dalpha:alpha=1", GtildeOts, 10, true),
            ("Brown", "sts:sts8", GSts, 29, true),
            ("Brown", "ots:ftype", GtildeOts, 29, true),
            ("exceptional", "sts:jordan:h3_kk", GSts, 77, true),
            ("classical", "ots:classical:symplectic:m=2", GtildeOts, 21, true),
            ("classical", "ots:classical:unitarian:m=3", GtildeOts, 15, true),
            ("G-type", "ots:gtype:alpha=1", GtildeOts, 14, false),
            ("G-type", "ots:gtype:alpha=2", GtildeOts, 14, true),
            ("null D-type", "ots:dmu:lambda=1:null", GNull, 14, true),
        ]);
    } else {
        rows.extend([
            ("exceptional", "sts:jordan:h3_k", GSts, 52, true),
            ("exceptional", "sts:jordan:h3_kk", GSts, 78, true),
            ("exceptional", "sts:jordan:h3_quat", GSts, 133, true),
            ("exceptional", "sts:jordan:h3_oct", GSts, 248, true),
            ("exceptional", "sts:classical:g2", GSts, 14, true),
        ]);
    }
    rows
}

/// Classical rows follow dimension laws in m.
fn classical_rows(p: u32) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for m in 1..=4usize {
        let psl = usize::from((m + 2) % p as usize == 0);
        out.push((format!("sts:classical:special:m={m}"), (m + 2) * (m + 2) - 1 - psl));
    }
    for m in 3..=4usize {
        out.push((format!("sts:classical:orthogonal:m={m}"), (m + 4) * (m + 3) / 2));
    }
    out
}

fn evaluate(f: Fp, seed: u64, group: &'static str, key: &str, functor: Functor, expected_dim: usize, expected_simple: bool) -> Result<Row, CatalogError> {
    let t = CatalogKey::parse(key)?.build(f)?;
    let g = functor.apply(&t)?;
    let cert = g.is_simple(seed);
    let center = g.center().dim();
    let simple = cert.verdict == Verdict::Simple;
    let pass = g.dim() == expected_dim && simple == expected_simple && (!expected_simple || center == 0);
    Ok(Row {
        group,
        key: key.to_string(),
        functor,
        dim: g.dim(),
        dim_even: g.dim_even(),
        dim_odd: g.dim_odd(),
        center,
        verdict: cert.verdict,
        expected_dim,
        expected_simple,
        pass,
    })
}

pub fn acceptance_report(p: u32, seed: u64) -> Result<Report, CatalogError> {
    let f = Fp::new(p).map_err(|e| CatalogError::Parameter(e.to_string()))?;
    let mut rows = Vec::new();
    for (group, key, functor, dim, simple) in rows_for(p) {
        rows.push(evaluate(f, seed, group, key, functor, dim, simple)?);
    }
    for (key, dim) in classical_rows(p) {
        rows.push(evaluate(f, seed, "classical", &key, Functor::GSts, dim, true)?);
    }
    let passed = rows.iter().all(|r| r.pass);
    Ok(Report { p, seed, rows, passed })
}

impl Report {
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p = {}, seed = {}", self.p, self.seed);
        let _ = writeln!(out, "{:<12} {:<32} {:<11} {:>5} {:>11} {:>6} {:<16} {:>4}", "group", "key", "functor", "dim", "even+odd", "center", "verdict", "ok");
        for r in &self.rows {
            let verdict = match r.verdict {
                Verdict::Simple => "simple",
                Verdict::NotSimple => "not_simple",
                Verdict::ProbablySimple => "probably_simple",
            };
            let _ = writeln!(
                out,
                "{:<12} {:<32} {:<11} {:>5} {:>11} {:>6} {:<16} {:>4}",
                r.group,
                r.key,
                r.functor.name(),
                r.dim,
                format!("{}+{}", r.dim_even, r.dim_odd),
                r.center,
                verdict,
                if r.pass { "pass" } else { "FAIL" }
            );
        }
        let failed = self.rows.iter().filter(|r| !r.pass).count();
        let _ = writeln!(out, "{} rows, {} failed", self.rows.len(), failed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_law_depends_on_p() {
        let at3: Vec<usize> = classical_rows(3).into_iter().map(|r| r.1).take(4).collect();
        assert_eq!(at3, vec![7, 15, 24, 34]);
        let at5: Vec<usize> = classical_rows(5).into_iter().map(|r| r.1).take(4).collect();
        assert_eq!(at5, vec![8, 15, 23, 35]);
    }

    #[test]
    fn small_prime_rows_are_listed() {
        let dims: Vec<usize> = rows_for(3).iter().filter(|r| r.0 == "gtilde STS").map(|r| r.3).collect();
        assert_eq!(dims, vec![18, 35, 54, 98, 189]);
        let dims: Vec<usize> = rows_for(3).iter().filter(|r| r.0 == "g OTS").map(|r| r.3).collect();
        assert_eq!(dims, vec![24, 37, 50, 105]);
    }
}
