use super::*;
use crate::exactla::unit;
use crate::functors::{build_g_null, build_g_ots, build_g_sts, build_gtilde_ots, build_gtilde_sts};
use crate::triples::classify_dim2_sts;

fn gf(p: u32) -> Fp {
    Fp::new(p).unwrap()
}

fn key(s: &str, p: u32) -> TripleSystem {
    CatalogKey::parse(s).unwrap().build(gf(p)).unwrap()
}

fn inder_dim(t: &TripleSystem) -> usize {
    t.inder().unwrap().dim()
}

#[test]
fn dim2_normal_forms() {
    let f = gf(3);
    let t = sts_dim2(f, Dim2Class::CaseII { epsilon: 1 }).unwrap();
    assert_eq!(t.basis_product(0, 0, 1).to_dense(2), vec![1, 0]);
    assert_eq!(t.basis_product(0, 1, 1).to_dense(2), vec![0, 2]);
    let t = sts_dim2(f, Dim2Class::CaseI { alpha: 2 }).unwrap();
    assert_eq!(t.basis_product(0, 0, 0).to_dense(2), vec![0, 2]);
    assert!(t.basis_product(0, 0, 1).is_zero() && t.basis_product(1, 1, 1).is_zero());
    assert!(sts_dim2(f, Dim2Class::CaseI { alpha: 0 }).unwrap().product_is_zero());
    assert!(sts_dim2(f, Dim2Class::CaseII { epsilon: 0 }).is_err());
    assert!(sts_dim2(gf(5), Dim2Class::CaseII { epsilon: 1 }).is_err());
    for eps in [1, 2] {
        let t = sts_dim2(f, Dim2Class::CaseII { epsilon: eps }).unwrap();
        assert_eq!(classify_dim2_sts(&t).unwrap().0, Dim2Class::CaseII { epsilon: eps });
    }
}

#[test]
fn sts8_and_cartan_relations() {
    let f = gf(3);
    let t = sts8(f).unwrap();
    assert_eq!(t.dim(), 8);
    assert_eq!(t.form().unwrap().gram().rank(f), 8);
    assert_eq!(inder_dim(&t), 10);
    assert_eq!(build_g_sts(&t).unwrap().dim(), 29);
    assert!(sts8(gf(5)).is_err());
    for eps in [1, 2] {
        let r = verify_leps_cartan(f, eps).unwrap();
        assert!(r.passed());
        assert_eq!(r.relations.len(), 6);
    }
}

#[test]
fn jordan_sts_dimension_laws() {
    for (s, dj) in [("sts:jordan:h3_k", 6), ("sts:jordan:jordq:m=2", 3), ("sts:jordan:k_jordq:m=3", 5), ("sts:jordan:ground", 1)] {
        assert_eq!(key(s, 5).dim(), 2 + 2 * dj, "{s}");
    }
    let t = key("sts:jordan:h3_k", 5);
    assert_eq!(inder_dim(&t), 21);
    assert_eq!(build_g_sts(&t).unwrap().dim(), 52);
    // quadratic J behaves like the special case with m = 1 + dim J
    for m in [2, 3] {
        let q = key(&format!("sts:jordan:jordq:m={m}"), 5);
        let s = key(&format!("sts:classical:special:m={}", m + 2), 5);
        assert_eq!((q.dim(), inder_dim(&q)), (s.dim(), inder_dim(&s)));
    }
    let kq = key("sts:jordan:k_jordq:m=3", 5);
    let so = key("sts:classical:orthogonal:m=6", 5);
    assert_eq!(build_g_sts(&kq).unwrap().dim(), 45);
    assert_eq!((kq.dim(), inder_dim(&kq)), (so.dim(), inder_dim(&so)));
}

#[test]
fn char3_exclusions() {
    let f = gf(3);
    assert!(sts_from_zero_jordan(f).is_err());
    assert!(sts_from_jordan(&crate::algebras::make_ground_cubic(f)).is_err());
    assert_eq!(sts_from_zero_jordan(gf(5)).unwrap().dim(), 2);
    assert!(sts_classical(f, &StsClassical::G2).is_err());
}

#[test]
fn transvection_small_cases() {
    let f = gf(7);
    let (x, y) = (vec![1, 0], vec![0, 1]);
    assert_eq!(transvection(f, &x, &y, 1), vec![1]);
    assert_eq!(transvection(f, &y, &x, 1), vec![6]);
    // (x², y²)_2 = (1/2)² · ∂²x²/∂x² · ∂²y²/∂y²
    assert_eq!(transvection(f, &[1, 0, 0], &[0, 0, 1], 2), vec![1]);
    assert_eq!(transvection(f, &[1, 0, 0], &[0, 1], 2), vec![0]);
    // q = 0 is the product
    assert_eq!(transvection(f, &[1, 2], &[3, 1], 0), vec![3, 0, 2]);
}

#[test]
fn transvection_parity() {
    let f = gf(11);
    let a = vec![1, 4, 0, 7];
    let b = vec![2, 0, 9, 5];
    for q in 0..=3 {
        let ab = transvection(f, &a, &b, q);
        let ba = transvection(f, &b, &a, q);
        let sign = if q % 2 == 0 { 1 } else { f.neg(1) };
        assert_eq!(ab, ba.iter().map(|&c| f.mul(sign, c)).collect::<Vec<_>>());
    }
}

#[test]
fn classical_sts() {
    let g2 = key("sts:classical:g2", 5);
    let g = build_g_sts(&g2).unwrap();
    assert_eq!(g.dim(), 14);
    assert!(g.is_simple(1).is_simple());
    for m in 1..=4usize {
        let t = key(&format!("sts:classical:special:m={m}"), 3);
        let expect = (m + 2) * (m + 2) - 1 - usize::from((m + 2) % 3 == 0);
        assert_eq!(build_g_sts(&t).unwrap().dim(), expect, "special({m})");
    }
    for m in 3..=5usize {
        let t = key(&format!("sts:classical:orthogonal:m={m}"), 3);
        assert_eq!(build_g_sts(&t).unwrap().dim(), (m + 4) * (m + 3) / 2, "orthogonal({m})");
    }
    let sp = key("sts:classical:symplectic:n=4", 3);
    assert_eq!((sp.dim(), inder_dim(&sp)), (4, 10));
    assert!(sts_classical(gf(3), &StsClassical::Symplectic(3)).is_err());
    assert!(sts_classical(gf(3), &StsClassical::Orthogonal(Matrix::identity(2))).is_err());
}

#[test]
fn classical_ots() {
    let t = key("ots:classical:orthogonal:n=4", 3);
    assert_eq!(inder_dim(&t), 6);
    let u = key("ots:classical:unitarian:m=3", 3);
    let g = build_gtilde_ots(&u).unwrap();
    assert_eq!(g.dim(), 15);
    assert!(g.is_simple(1).is_simple());
    let s = key("ots:classical:symplectic:m=2", 3);
    assert_eq!(build_gtilde_ots(&s).unwrap().dim(), 21);
    assert!(ots_classical(gf(3), &OtsClassical::UnitarianSplit(2)).is_err());
}

#[test]
fn determinant_systems() {
    let f = gf(3);
    let one = ots_dmu(f, 1, &Matrix::identity(4), false).unwrap();
    assert_eq!(one.mu, 1);
    assert_eq!(inder_dim(&one.system), 3);
    let mut gram = Matrix::identity(4);
    gram.set(3, 3, 2);
    let other = ots_dmu(f, 2, &gram, false).unwrap();
    assert_ne!(other.mu, 1);
    assert_eq!(inder_dim(&other.system), 6);
    let null = ots_dmu(f, 1, &Matrix::identity(4), true).unwrap();
    let g = build_g_null(&null.system).unwrap();
    assert_eq!(g.dim(), 14);
    assert!(g.is_simple(1).is_simple());
}

#[test]
fn tensor_systems() {
    let f = gf(3);
    let t = ots_dalpha(f, 1).unwrap();
    assert_eq!(t.kind(), TripleKind::Ots);
    assert_eq!(inder_dim(&t), 6);
    assert_eq!(build_g_ots(&t).unwrap().dim(), 17);
    let g = build_gtilde_ots(&t).unwrap();
    assert_eq!(g.dim(), 10);
    assert!(g.is_simple(1).is_simple());
    let n = ots_dalpha(f, 2).unwrap();
    assert_eq!(n.kind(), TripleKind::NullOts);
    assert_eq!(build_gtilde_ots(&n).unwrap().dim(), 10);
    assert!(ots_dalpha(f, 0).is_err());
    assert_eq!(ots_dalpha(gf(5), 2).unwrap().kind(), TripleKind::Ots);
}

#[test]
fn octonion_systems() {
    let f = gf(3);
    for alpha in [1, 2] {
        let t = ots_gtype(f, alpha).unwrap();
        assert_eq!((t.dim(), inder_dim(&t)), (7, 7));
    }
    let ft = ots_ftype(f).unwrap();
    assert_eq!(inder_dim(&ft.system), 21);
    assert_eq!(ft.signs, CrossSigns([-1, -1, 1]));
    // X is alternating
    let e = |i| unit(8, i);
    let x = ft.system.triple_eval(&e(1), &e(1), &e(6)).unwrap();
    assert!(x.iter().all(|&c| c == 0));
    assert!(ots_ftype(gf(5)).is_err());
}

#[test]
fn jordan_ots() {
    for (s, dim, inder) in [("ots:jordan:h3_k", 4, 3), ("ots:jordan:h3_kk", 7, 7), ("ots:jordan:h3_quat", 13, 21)] {
        let t = key(s, 3);
        assert_eq!((t.dim(), inder_dim(&t)), (dim, inder), "{s}");
    }
    assert!(ots_jordan(&crate::algebras::make_h3(&crate::algebras::make_composition(gf(5), crate::algebras::CompositionKind::Unit))).is_err());
}

#[test]
fn gtilde_of_jordan_sts_is_odd_graded() {
    let t = key("sts:jordan:h3_k", 3);
    let g = build_gtilde_sts(&t).unwrap();
    assert_eq!((g.dim_even(), g.dim_odd()), (21, 14));
}

#[test]
fn key_round_trip() {
    for s in [
        "sts:dim2:i:alpha=0",
        "sts:dim2:ii:eps=-1",
        "sts:sts8",
        "sts:jordan:h3_oct",
        "sts:jordan:k_jordq:m=3",
        "sts:jordan:zero",
        "sts:classical:special:m=2",
        "sts:classical:g2",
        "ots:classical:unitarian:m=3",
        "ots:dmu:lambda=1:null",
        "ots:dmu:lambda=2:det=2",
        "ots:gtype:alpha=2",
        "ots:ftype",
        "ots:jordan:h3_quat",
    ] {
        assert_eq!(CatalogKey::parse(s).unwrap().to_string(), s);
    }
    assert_eq!(CatalogKey::parse("ots:dmu:lambda=1:det=1").unwrap().to_string(), "ots:dmu:lambda=1");
}

#[test]
fn key_errors() {
    for s in ["", "sts", "sts:dim2", "sts:dim2:iii:eps=1", "sts:dim2:ii:alpha=1", "sts:dim2:ii:eps=x", "sts:sts8:extra", "lie:e8", "ots:jordan:h3_foo", "ots:dmu:null"] {
        assert!(matches!(CatalogKey::parse(s), Err(CatalogError::Key { .. })), "{s}");
    }
}
