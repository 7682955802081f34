//! One PASS/FAIL line per acceptance criterion. Every comparison is exact
//! equality over GF(p). Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triplesys::algebras::{make_composition, make_h3, CompositionKind, JordanAlgebra};
use triplesys::catalog::{verify_leps_cartan, CatalogKey, JordanChoice};
use triplesys::exactla::Fp;
use triplesys::functors::{build_g_null, build_g_ots, build_g_sts, build_gtilde_ots, build_gtilde_sts, build_gtilde_sts_unchecked};
use triplesys::galg::{GradedAlgebra, Verdict};
use triplesys::persist::{export_algebra, export_triple};
use triplesys::report::acceptance_report;
use triplesys::triples::{faulkner_to_sts, is_simple_triple, sts_to_faulkner, to_freudenthal, TripleKind, TripleSystem};

type Outcome = Result<String, String>;

fn fp(p: u32) -> Fp {
    Fp::new(p).unwrap()
}

fn build(key: &str, p: u32) -> Result<TripleSystem, String> {
    CatalogKey::parse(key).and_then(|k| k.build(fp(p))).map_err(|e| format!("{key} at p={p}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// dim, simplicity with zero center, and the (super) Jacobi identity.
fn simple_of_dim(name: &str, g: &GradedAlgebra, dim: usize) -> Result<(), String> {
    ensure(g.dim() == dim, || format!("{name}: dim {} != {dim}", g.dim()))?;
    let cert = g.is_simple(0);
    ensure(cert.verdict == Verdict::Simple, || format!("{name}: verdict {:?} ({})", cert.verdict, cert.reason))?;
    ensure(g.center().dim() == 0, || format!("{name}: nonzero center"))?;
    let jac = g.check_identities();
    ensure(jac.passed(), || format!("{name}: {} Jacobi violations", jac.violations.len()))
}

/// Every STS named by the axiom criterion, with its prime.
fn catalog_sts() -> Vec<(String, u32)> {
    let mut keys = Vec::new();
    for a in 0..3 {
        keys.push((format!("sts:dim2:i:alpha={a}"), 3));
    }
    for e in 1..3 {
        keys.push((format!("sts:dim2:ii:eps={e}"), 3));
    }
    keys.push(("sts:sts8".into(), 3));
    for p in [3, 5] {
        for j in ["h3_k", "h3_kk", "h3_quat", "h3_oct", "k_jordq:m=2", "k_jordq:m=3"] {
            keys.push((format!("sts:jordan:{j}"), p));
        }
        for n in [2, 4, 6] {
            keys.push((format!("sts:classical:symplectic:n={n}"), p));
        }
        for m in 1..=4 {
            keys.push((format!("sts:classical:special:m={m}"), p));
        }
        for m in 3..=5 {
            keys.push((format!("sts:classical:orthogonal:m={m}"), p));
        }
    }
    keys.push(("sts:classical:g2".into(), 5));
    keys
}

fn c1_sts_axioms() -> Outcome {
    let keys = catalog_sts();
    for (key, p) in &keys {
        let t = build(key, *p)?;
        let r = t.check_axioms();
        ensure(t.kind() == TripleKind::Sts && r.passed(), || format!("{key} at p={p}: {}", r.summary()))?;
    }
    Ok(format!("{} systems, 0 violations", keys.len()))
}

fn c2_gtilde_sts() -> Outcome {
    let cases = [("sts:sts8", 18, 10), ("sts:jordan:h3_k", 35, 21), ("sts:jordan:h3_kk", 54, 34), ("sts:jordan:h3_quat", 98, 66), ("sts:jordan:h3_oct", 189, 133)];
    for (key, dim, even) in cases {
        let g = build_gtilde_sts(&build(key, 3)?).map_err(|e| format!("{key}: {e}"))?;
        ensure(g.dim_even() == even, || format!("{key}: even dim {} != {even}", g.dim_even()))?;
        simple_of_dim(key, &g, dim)?;
    }
    Ok("dims 18/35/54/98/189, even 10/21/34/66/133, simple".into())
}

fn c3_g_ots() -> Outcome {
    let g = build_g_ots(&build("ots:gtype:alpha=1", 3)?).map_err(|e| e.to_string())?;
    simple_of_dim("g(gtype α=1)", &g, 24)?;
    let g = build_g_null(&build("ots:ftype", 3)?).map_err(|e| e.to_string())?;
    simple_of_dim("g(ftype)", &g, 37)?;
    let g = build_g_ots(&build("ots:jordan:h3_quat", 3)?).map_err(|e| e.to_string())?;
    simple_of_dim("g(H3(Mat2) OTS)", &g, 50)?;
    let g = build_g_ots(&build("ots:jordan:h3_oct", 3)?).map_err(|e| e.to_string())?;
    simple_of_dim("g(H3(oct) OTS)", &g, 105)?;
    Ok("dims 24/37/50/105, simple".into())
}

fn c4_kostrikin() -> Outcome {
    for eps in [1, 2] {
        let t = build(&format!("sts:dim2:ii:eps={eps}"), 3)?;
        let g = build_g_sts(&t).map_err(|e| e.to_string())?;
        simple_of_dim(&format!("g(T2,{eps})"), &g, 10)?;
        let r = verify_leps_cartan(fp(3), eps).map_err(|e| format!("ε={eps}: {e}"))?;
        ensure(r.relations.len() == 6 && r.passed(), || format!("ε={eps}: relations {:?}", r.relations))?;
    }
    let t = build("ots:dalpha:alpha=-1", 3)?;
    ensure(t.kind() == TripleKind::NullOts, || format!("T_-1 has kind {}", t.kind().name()))?;
    let g = build_gtilde_ots(&t).map_err(|e| e.to_string())?;
    simple_of_dim("gtilde(T_-1)", &g, 10)?;
    Ok("ε=1,2: dim 10, simple, 6/6 relations; gtilde(T_-1 null): dim 10, simple".into())
}

fn c5_brown() -> Outcome {
    let g = build_g_sts(&build("sts:sts8", 3)?).map_err(|e| e.to_string())?;
    simple_of_dim("g(sts8)", &g, 29)?;
    let g = build_gtilde_ots(&build("ots:ftype", 3)?).map_err(|e| e.to_string())?;
    simple_of_dim("gtilde(ftype)", &g, 29)?;
    Ok("both dim 29, simple".into())
}

fn c6_exceptional() -> Outcome {
    let mut jacobi_248 = Duration::ZERO;
    for p in [5, 7] {
        for (c, dim) in [("h3_k", 52), ("h3_kk", 78), ("h3_quat", 133), ("h3_oct", 248)] {
            let key = format!("sts:jordan:{c}");
            let g = build_g_sts(&build(&key, p)?).map_err(|e| e.to_string())?;
            let start = Instant::now();
            simple_of_dim(&format!("{key} at p={p}"), &g, dim)?;
            if dim == 248 {
                jacobi_248 = jacobi_248.max(start.elapsed());
            }
        }
    }
    ensure(jacobi_248 < Duration::from_secs(300), || format!("dim-248 checks took {jacobi_248:?}"))?;
    let g = build_g_sts(&build("sts:jordan:h3_kk", 3)?).map_err(|e| e.to_string())?;
    simple_of_dim("h3_kk at p=3", &g, 77)?;
    Ok(format!("52/78/133/248 at p=5,7 and 77 at p=3, simple, zero center; dim-248 simplicity+Jacobi {:.1}s", jacobi_248.as_secs_f64()))
}

fn c7_classical() -> Outcome {
    for m in 1..=4usize {
        let dim = (m + 2) * (m + 2) - 1 - usize::from((m + 2) % 3 == 0);
        let g = build_g_sts(&build(&format!("sts:classical:special:m={m}"), 3)?).map_err(|e| e.to_string())?;
        simple_of_dim(&format!("special m={m}"), &g, dim)?;
    }
    for m in 3..=5usize {
        let g = build_g_sts(&build(&format!("sts:classical:orthogonal:m={m}"), 3)?).map_err(|e| e.to_string())?;
        simple_of_dim(&format!("orthogonal m={m}"), &g, (m + 4) * (m + 3) / 2)?;
    }
    let g = build_gtilde_ots(&build("ots:classical:symplectic:m=2", 3)?).map_err(|e| e.to_string())?;
    simple_of_dim("symplectic OTS m=2", &g, 21)?;
    let g = build_gtilde_ots(&build("ots:classical:unitarian:m=3", 3)?).map_err(|e| e.to_string())?;
    simple_of_dim("unitarian m=3", &g, 15)?;
    Ok("special (m+2)²−1−[3|m+2] for m=1..4, orthogonal (m+4)(m+3)/2 for m=3..5, 21, 15".into())
}

fn c8_converters() -> Outcome {
    let mut freud = 0;
    let mut faulk = 0;
    for (key, p) in catalog_sts() {
        let t = build(&key, p)?;
        let fa = sts_to_faulkner(&t).map_err(|e| format!("{key} at p={p}: {e}"))?;
        let back = faulkner_to_sts(&fa).map_err(|e| format!("{key} at p={p}: {e}"))?;
        let same = back.kind() == t.kind() && back.form() == t.form() && back.stored_ops().eq(t.stored_ops());
        ensure(same, || format!("{key} at p={p}: Faulkner round trip differs"))?;
        faulk += 1;
        if is_simple_triple(&t).simple {
            let fts = to_freudenthal(&t).map_err(|e| format!("{key} at p={p}: {e}"))?;
            fts.check(17).map_err(|e| format!("{key} at p={p}: {e}"))?;
            freud += 1;
        }
    }
    for p in [3, 5] {
        for n in [2, 4, 6] {
            let t = build(&format!("sts:classical:symplectic:n={n}"), p)?;
            let fts = to_freudenthal(&t).map_err(|e| e.to_string())?;
            ensure(fts.is_zero(), || format!("symplectic n={n} at p={p}: nonzero Freudenthal product"))?;
        }
    }
    Ok(format!("{freud} simple systems satisfy the Freudenthal identities, {faulk} bit-exact Faulkner round trips, symplectic type gives zero product"))
}

/// Symmetric 3×3 matrix of a coordinate vector of H₃(k).
fn h3k_matrix(v: &[u32]) -> [[u32; 3]; 3] {
    let mut m = [[0; 3]; 3];
    for i in 0..3 {
        m[i][i] = v[i];
    }
    for (s, (r, c)) in [(1, 2), (2, 0), (0, 1)].into_iter().enumerate() {
        m[r][c] = v[3 + s];
        m[c][r] = v[3 + s];
    }
    m
}

fn adjugate(f: Fp, m: &[[u32; 3]; 3]) -> [[u32; 3]; 3] {
    let mut a = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            a[i][j] = f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
        }
    }
    a
}

fn c9_jordan() -> Outcome {
    let mut checked = 0;
    for p in [3, 5] {
        let f = fp(p);
        let mut algebras: Vec<JordanAlgebra> = [CompositionKind::Unit, CompositionKind::Binarion, CompositionKind::Quaternion, CompositionKind::Octonion]
            .into_iter()
            .map(|k| make_h3(&make_composition(f, k)))
            .collect();
        for choice in [JordanChoice::KJordq(2), JordanChoice::KJordq(3), JordanChoice::Ground] {
            algebras.extend(choice.build(f));
        }
        for j in &algebras {
            j.check_cubic_identity(30, 5).map_err(|e| format!("{} at p={p}: {e}", j.name()))?;
            checked += 1;
        }
        let h3k = make_h3(&make_composition(f, CompositionKind::Unit));
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p));
        for trial in 0..100 {
            let mut v: Vec<u32> = (0..6).map(|i| if i < 3 || trial >= 50 { rng.gen_range(0..p) } else { 0 }).collect();
            if trial < 50 {
                v[3 + rng.gen_range(0..3)] = rng.gen_range(0..p);
            }
            let want = adjugate(f, &h3k_matrix(&v));
            let got = h3k_matrix(&h3k.sharp(&v));
            ensure(want == got, || format!("p={p}: sharp {got:?} != adjugate {want:?} at {v:?}"))?;
        }
    }
    Ok(format!("{checked} cubic identities at p=3,5; sharp = adjugate on 50 diagonal-plus-elementary and 50 general H3(k) elements per prime"))
}

fn c10_negative() -> Outcome {
    let t = build("sts:classical:symplectic:n=4", 5)?;
    let rejected = build_gtilde_sts(&t).is_err();
    let g = build_gtilde_sts_unchecked(&t).map_err(|e| e.to_string())?;
    let violations = g.check_super_jacobi().map_err(|e| e.to_string())?.violations.len();
    ensure(rejected || violations > 0, || "gtilde at p=5 accepted and super-Jacobi holds".into())?;
    let h3k = build("sts:jordan:h3_k", 5)?;
    let g = build_gtilde_sts_unchecked(&h3k).map_err(|e| e.to_string())?;
    let h3k_violations = g.check_super_jacobi().map_err(|e| e.to_string())?.violations.len();
    ensure(build_gtilde_sts(&h3k).is_err() && h3k_violations > 0, || "gtilde(H3(k) STS) at p=5 is a superalgebra".into())?;

    let sts8 = build("sts:sts8", 3)?;
    let n = sts8.dim();
    let mut mutations = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let r = sts8.with_perturbed_entry(i, j, k, l).check_axioms();
                    ensure(!r.passed(), || format!("mutation ({i},{j},{k},{l}) passes the axioms"))?;
                    mutations += 1;
                }
            }
        }
    }

    let g1 = build_gtilde_ots(&build("ots:gtype:alpha=1", 3)?).map_err(|e| e.to_string())?;
    let cert = g1.is_simple(0);
    let wdim = cert.witness.as_ref().map(|w| w.dim());
    ensure(cert.verdict == Verdict::NotSimple && wdim == Some(7), || format!("gtype α=1: {:?} with witness dim {wdim:?}", cert.verdict))?;
    ensure(g1.is_ideal(cert.witness.as_ref().unwrap()), || "gtype α=1 witness is not an ideal".into())?;
    let homogeneous = cert.witness_is_homogeneous(&g1).unwrap();
    let g2 = build_gtilde_ots(&build("ots:gtype:alpha=2", 3)?).map_err(|e| e.to_string())?;
    ensure(g2.is_simple(0).verdict == Verdict::Simple, || "gtype α=2 not simple".into())?;
    Ok(format!("gtilde at p=5: rejected={rejected}, {violations} super-Jacobi violations (osp type), {h3k_violations} on H3(k); {mutations}/{mutations} sts8 mutations fail; gtype α=1 ideal of dim 7 (homogeneous={homogeneous}), α=2 simple"))
}

fn c11_determinism() -> Outcome {
    let f = fp(3);
    for key in ["sts:sts8", "sts:jordan:h3_quat", "ots:ftype", "ots:dmu:lambda=1:null"] {
        let a = export_triple(&build(key, 3)?);
        let b = export_triple(&build(key, 3)?);
        ensure(a == b, || format!("{key}: triple JSON differs"))?;
    }
    let t = CatalogKey::parse("sts:jordan:h3_kk").unwrap().build(f).unwrap();
    let a = export_algebra(&build_gtilde_sts(&t).unwrap());
    let b = export_algebra(&build_gtilde_sts(&build("sts:jordan:h3_kk", 3)?).unwrap());
    ensure(a == b, || "algebra JSON differs".into())?;
    for p in [3, 5] {
        let r1 = serde_json::to_string(&acceptance_report(p, 11).map_err(|e| e.to_string())?).unwrap();
        let r2 = serde_json::to_string(&acceptance_report(p, 11).map_err(|e| e.to_string())?).unwrap();
        ensure(r1 == r2, || format!("report at p={p} differs"))?;
    }
    Ok("triple and algebra JSON byte-identical across builds; reports identical for (p, seed) = (3, 11), (5, 11)".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("sts axioms", c1_sts_axioms),
        ("gtilde of STS", c2_gtilde_sts),
        ("g of OTS", c3_g_ots),
        ("Kostrikin algebras", c4_kostrikin),
        ("Brown algebra", c5_brown),
        ("exceptional series", c6_exceptional),
        ("classical dimension laws", c7_classical),
        ("converters", c8_converters),
        ("Jordan layer", c9_jordan),
        ("negative controls", c10_negative),
        ("determinism", c11_determinism),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    let elapsed = total.elapsed();
    let in_budget = elapsed < Duration::from_secs(15 * 60);
    println!("{} timing: {:.1}s total, budget 900s", if in_budget { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
