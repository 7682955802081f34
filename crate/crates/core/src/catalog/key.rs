//! String keys naming catalog entries, `family:variant:params`.
//!
//! ```text
//! sts:dim2:i:alpha=A            sts:dim2:ii:eps=E          sts:sts8
//! sts:jordan:J                  J = h3_k | h3_kk | h3_quat | h3_oct | k_jordq:m=M | jordq:m=M | ground | zero
//! sts:classical:symplectic:n=N  sts:classical:special:m=M  sts:classical:orthogonal:m=M  sts:classical:g2
//! ots:classical:orthogonal:n=N  ots:classical:unitarian:m=M  ots:classical:symplectic:m=M
//! ots:dmu:lambda=L[:det=D][:null]   ots:dalpha:alpha=A   ots:gtype:alpha=A   ots:ftype   ots:jordan:h3_C
//! ```
//!
//! Scalars are integers reduced mod p when the entry is built. Orthogonal
//! families use the identity Gram matrix; `det=D` makes the Gram matrix of
//! the determinant systems diag(1, 1, 1, D).

use std::fmt;

use super::{
    ots_classical, ots_dalpha, ots_dmu, ots_ftype, ots_gtype, ots_jordan, sts8, sts_classical, sts_dim2, sts_from_jordan, sts_from_zero_jordan, CatalogError, OtsClassical,
    StsClassical,
};
use crate::algebras::{make_composition, make_ground_cubic, make_h3, make_jordq, make_k_plus_jordq, CompositionKind, JordanAlgebra};
use crate::exactla::{Fp, Matrix};
use crate::triples::{Dim2Class, TripleSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanChoice {
    H3(CompositionKind),
    /// k × Jord(q, e) with q the identity form on an m-dimensional W
    KJordq(usize),
    /// Jord(q, e) on k e ⊕ W, dim W = m
    Jordq(usize),
    /// k with n(α) = α³
    Ground,
    Zero,
}

impl JordanChoice {
    /// `None` for J = 0.
    pub fn build(self, f: Fp) -> Option<JordanAlgebra> {
        Some(match self {
            JordanChoice::H3(kind) => make_h3(&make_composition(f, kind)),
            JordanChoice::KJordq(m) => make_k_plus_jordq(f, &Matrix::identity(m)),
            JordanChoice::Jordq(m) => make_jordq(f, &Matrix::identity(m)),
            JordanChoice::Ground => make_ground_cubic(f),
            JordanChoice::Zero => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogKey {
    StsDim2I { alpha: i64 },
    StsDim2II { eps: i64 },
    Sts8,
    StsJordan(JordanChoice),
    StsSymplectic { n: usize },
    StsSpecial { m: usize },
    StsOrthogonal { m: usize },
    StsG2,
    OtsOrthogonal { n: usize },
    OtsUnitarian { m: usize },
    OtsSymplectic { m: usize },
    OtsDmu { lambda: i64, det: i64, null: bool },
    OtsDalpha { alpha: i64 },
    OtsGtype { alpha: i64 },
    OtsFtype,
    OtsJordan(CompositionKind),
}

fn composition(name: &str) -> Option<CompositionKind> {
    [CompositionKind::Unit, CompositionKind::Binarion, CompositionKind::Quaternion, CompositionKind::Octonion]
        .into_iter()
        .find(|k| name.strip_prefix("h3_") == Some(k.name()))
}

struct Parser<'a> {
    key: &'a str,
    parts: Vec<&'a str>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> CatalogError {
        CatalogError::Key { key: self.key.to_string(), reason: reason.into() }
    }

    fn next(&mut self) -> Result<&'a str, CatalogError> {
        let p = self.parts.get(self.at).copied().ok_or_else(|| self.err("key ends early"))?;
        self.at += 1;
        Ok(p)
    }

    fn value<T: std::str::FromStr>(&mut self, name: &str) -> Result<T, CatalogError> {
        let part = self.next()?;
        let v = part.strip_prefix(name).and_then(|r| r.strip_prefix('=')).ok_or_else(|| self.err(format!("expected {name}=..., got {part:?}")))?;
        v.parse().map_err(|_| self.err(format!("bad value for {name}: {v:?}")))
    }

    fn optional<T: std::str::FromStr>(&mut self, name: &str) -> Result<Option<T>, CatalogError> {
        match self.parts.get(self.at) {
            Some(p) if p.starts_with(&format!("{name}=")) => self.value(name).map(Some),
            _ => Ok(None),
        }
    }

    fn flag(&mut self, name: &str) -> bool {
        let hit = self.parts.get(self.at) == Some(&name);
        if hit {
            self.at += 1;
        }
        hit
    }

    fn finish(self, key: CatalogKey) -> Result<CatalogKey, CatalogError> {
        if self.at != self.parts.len() {
            return Err(self.err(format!("unexpected trailing part {:?}", self.parts[self.at])));
        }
        Ok(key)
    }
}

impl CatalogKey {
    pub fn parse(key: &str) -> Result<CatalogKey, CatalogError> {
        let mut p = Parser { key, parts: key.split(':').collect(), at: 0 };
        let family = p.next()?;
        let variant = p.next()?;
        let out = match (family, variant) {
            ("sts", "dim2") => match p.next()? {
                "i" => CatalogKey::StsDim2I { alpha: p.value("alpha")? },
                "ii" => CatalogKey::StsDim2II { eps: p.value("eps")? },
                other => return Err(p.err(format!("unknown dim2 case {other:?}"))),
            },
            ("sts", "sts8") => CatalogKey::Sts8,
            ("sts", "jordan") => {
                let j = match p.next()? {
                    "k_jordq" => JordanChoice::KJordq(p.value("m")?),
                    "jordq" => JordanChoice::Jordq(p.value("m")?),
                    "ground" => JordanChoice::Ground,
                    "zero" => JordanChoice::Zero,
                    other => JordanChoice::H3(composition(other).ok_or_else(|| p.err(format!("unknown Jordan algebra {other:?}")))?),
                };
                CatalogKey::StsJordan(j)
            }
            ("sts", "classical") => match p.next()? {
                "symplectic" => CatalogKey::StsSymplectic { n: p.value("n")? },
                "special" => CatalogKey::StsSpecial { m: p.value("m")? },
                "orthogonal" => CatalogKey::StsOrthogonal { m: p.value("m")? },
                "g2" => CatalogKey::StsG2,
                other => return Err(p.err(format!("unknown classical STS {other:?}"))),
            },
            ("ots", "classical") => match p.next()? {
                "orthogonal" => CatalogKey::OtsOrthogonal { n: p.value("n")? },
                "unitarian" => CatalogKey::OtsUnitarian { m: p.value("m")? },
                "symplectic" => CatalogKey::OtsSymplectic { m: p.value("m")? },
                other => return Err(p.err(format!("unknown classical OTS {other:?}"))),
            },
            ("ots", "dmu") => {
                let lambda = p.value("lambda")?;
                let det = p.optional("det")?.unwrap_or(1);
                let null = p.flag("null");
                CatalogKey::OtsDmu { lambda, det, null }
            }
            ("ots", "dalpha") => CatalogKey::OtsDalpha { alpha: p.value("alpha")? },
            ("ots", "gtype") => CatalogKey::OtsGtype { alpha: p.value("alpha")? },
            ("ots", "ftype") => CatalogKey::OtsFtype,
            ("ots", "jordan") => {
                let name = p.next()?;
                CatalogKey::OtsJordan(composition(name).ok_or_else(|| p.err(format!("unknown Jordan algebra {name:?}")))?)
            }
            _ => return Err(p.err(format!("unknown family {family}:{variant}"))),
        };
        p.finish(out)
    }

    pub fn build(&self, f: Fp) -> Result<TripleSystem, CatalogError> {
        let s = |v: i64| f.from_i64(v);
        match *self {
            CatalogKey::StsDim2I { alpha } => sts_dim2(f, Dim2Class::CaseI { alpha: s(alpha) }),
            CatalogKey::StsDim2II { eps } => sts_dim2(f, Dim2Class::CaseII { epsilon: s(eps) }),
            CatalogKey::Sts8 => sts8(f),
            CatalogKey::StsJordan(j) => match j.build(f) {
                Some(j) => sts_from_jordan(&j),
                None => sts_from_zero_jordan(f),
            },
            CatalogKey::StsSymplectic { n } => sts_classical(f, &StsClassical::Symplectic(n)),
            CatalogKey::StsSpecial { m } => sts_classical(f, &StsClassical::Special(m)),
            CatalogKey::StsOrthogonal { m } => sts_classical(f, &StsClassical::Orthogonal(Matrix::identity(m))),
            CatalogKey::StsG2 => sts_classical(f, &StsClassical::G2),
            CatalogKey::OtsOrthogonal { n } => ots_classical(f, &OtsClassical::Orthogonal(Matrix::identity(n))),
            CatalogKey::OtsUnitarian { m } => ots_classical(f, &OtsClassical::UnitarianSplit(m)),
            CatalogKey::OtsSymplectic { m } => ots_classical(f, &OtsClassical::SymplecticSplit(m)),
            CatalogKey::OtsDmu { lambda, det, null } => {
                let mut gram = Matrix::identity(4);
                gram.set(3, 3, s(det));
                Ok(ots_dmu(f, s(lambda), &gram, null)?.system)
            }
            CatalogKey::OtsDalpha { alpha } => ots_dalpha(f, s(alpha)),
            CatalogKey::OtsGtype { alpha } => ots_gtype(f, s(alpha)),
            CatalogKey::OtsFtype => Ok(ots_ftype(f)?.system),
            CatalogKey::OtsJordan(kind) => ots_jordan(&make_h3(&make_composition(f, kind))),
        }
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::StsDim2I { alpha } => write!(out, "sts:dim2:i:alpha={alpha}"),
            CatalogKey::StsDim2II { eps } => write!(out, "sts:dim2:ii:eps={eps}"),
            CatalogKey::Sts8 => write!(out, "sts:sts8"),
            CatalogKey::StsJordan(j) => match j {
                JordanChoice::H3(k) => write!(out, "sts:jordan:h3_{}", k.name()),
                JordanChoice::KJordq(m) => write!(out, "sts:jordan:k_jordq:m={m}"),
                JordanChoice::Jordq(m) => write!(out, "sts:jordan:jordq:m={m}"),
                JordanChoice::Ground => write!(out, "sts:jordan:ground"),
                JordanChoice::Zero => write!(out, "sts:jordan:zero"),
            },
            CatalogKey::StsSymplectic { n } => write!(out, "sts:classical:symplectic:n={n}"),
            CatalogKey::StsSpecial { m } => write!(out, "sts:classical:special:m={m}"),
            CatalogKey::StsOrthogonal { m } => write!(out, "sts:classical:orthogonal:m={m}"),
            CatalogKey::StsG2 => write!(out, "sts:classical:g2"),
            CatalogKey::OtsOrthogonal { n } => write!(out, "ots:classical:orthogonal:n={n}"),
            CatalogKey::OtsUnitarian { m } => write!(out, "ots:classical:unitarian:m={m}"),
            CatalogKey::OtsSymplectic { m } => write!(out, "ots:classical:symplectic:m={m}"),
            CatalogKey::OtsDmu { lambda, det, null } => {
                write!(out, "ots:dmu:lambda={lambda}")?;
                if *det != 1 {
                    write!(out, ":det={det}")?;
                }
                if *null {
                    write!(out, ":null")?;
                }
                Ok(())
            }
            CatalogKey::OtsDalpha { alpha } => write!(out, "ots:dalpha:alpha={alpha}"),
            CatalogKey::OtsGtype { alpha } => write!(out, "ots:gtype:alpha={alpha}"),
            CatalogKey::OtsFtype => write!(out, "ots:ftype"),
            CatalogKey::OtsJordan(k) => write!(out, "ots:jordan:h3_{}", k.name()),
        }
    }
}

impl std::str::FromStr for CatalogKey {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CatalogKey::parse(s)
    }
}
