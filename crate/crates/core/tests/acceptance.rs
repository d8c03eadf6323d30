//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`; pass criterion numbers after
//! `--` to run a subset, e.g. `cargo test --test acceptance -- 2 3`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::Instant;

use common::*;
use rand::Rng;
use serde_json::Value;
use unifact::algebra::{quotient, radical};
use unifact::certificate::*;
use unifact::gafact::{derived_membership, factor_three_unipotents, index2_commutator_semisimple};
use unifact::nilfree::nilfree_check;
use unifact::slfact::{commutator_witness_index2, three_unipotent_factorization, two_unipotent_factorization};
use unifact::unitrad::{unipotent_radical_check, Caps};
use unifact::{Algebra, Element, Error, Fe, FiniteField, FiniteGroup, Matrix, Structure, TwoCocycle};

type Outcome = Result<String, String>;

static CORPUS: Mutex<Vec<(String, Value)>> = Mutex::new(Vec::new());

fn emit(label: impl Into<String>, cert: Value) {
    CORPUS.lock().unwrap().push((label.into(), cert));
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field(q: u32) -> FiniteField {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let k = (1..).find(|&k| p.pow(k) == q).unwrap();
    FiniteField::new(p, k).unwrap()
}

fn setup(q: u32, g: &str, tau: Option<TwoCocycle>) -> (AlgebraInput, OAlg) {
    let f = field(q);
    let g = FiniteGroup::catalog(g).unwrap();
    let t = tau.unwrap_or_else(|| TwoCocycle::trivial(&g, &f));
    let oa = OAlg::new(&f, &g, &t);
    (AlgebraInput::new(f, g, t).unwrap(), oa)
}

fn random_unit(a: &Algebra, oa: &OAlg, r: &mut impl Rng) -> Element {
    loop {
        let x = element(a, &oa.random(r));
        if a.is_unit(&x) {
            return x;
        }
    }
}

/// Coboundary `t(x,y) = f(x) f(y) / f(xy)` with `f` random in the prime subfield.
fn prime_coboundary(g: &FiniteGroup, f: &FiniteField, r: &mut impl Rng) -> TwoCocycle {
    let p = f.characteristic();
    let e = g.identity();
    let vals: Vec<Fe> = (0..g.order())
        .map(|x| if x == e { Fe::ONE } else { Fe::from_index(r.gen_range(1..p)) })
        .collect();
    TwoCocycle::coboundary(g, f, &vals).unwrap()
}

/// `t(a^i b^j, a^k b^l) = (-1)^(j k)` on a Klein four-group generated by `a`, `b`.
fn klein_bicharacter(g: &FiniteGroup, f: &FiniteField) -> TwoCocycle {
    let e = g.identity();
    let a = (0..4).find(|&x| x != e).unwrap();
    let b = (0..4).find(|&x| x != e && x != a).unwrap();
    let coords = |x: usize| -> (usize, usize) {
        for i in 0..2 {
            for j in 0..2 {
                if g.mul(g.pow(a, i), g.pow(b, j)) == x {
                    return (i, j);
                }
            }
        }
        unreachable!()
    };
    let minus = Fe::from_index(f.characteristic() - 1);
    let vals: Vec<Vec<Fe>> = (0..4)
        .map(|x| (0..4).map(|y| if coords(x).1 * coords(y).0 == 1 { minus } else { Fe::ONE }).collect())
        .collect();
    TwoCocycle::from_values(g, f, &vals).unwrap()
}

// --------------------------------------------------------------------------

fn criterion1() -> Outcome {
    let f4 = field(4);
    let c22 = FiniteGroup::catalog("C2xC2").unwrap();
    let w = Fe::from_index(2);
    let tau4 = TwoCocycle::coboundary(&c22, &f4, &[Fe::ONE, w, w, f4.mul(w, w)]).unwrap();
    ensure!(!tau4.is_trivial(), "GF(4) cocycle should be nontrivial");
    let configs: Vec<(u32, &str, Option<TwoCocycle>)> =
        vec![(3, "S3", None), (4, "C2xC2", Some(tau4)), (5, "D4", None), (9, "C3", None), (3, "Q8", None)];
    let mut lengths = [0usize; 4];
    for (ci, (q, g, tau)) in configs.into_iter().enumerate() {
        let (input, oa) = setup(q, g, tau);
        let a = &input.algebra;
        let s = Structure::new(a.clone(), ci as u64).map_err(|e| format!("GF({q}){g}: {e}"))?;
        let mut r = rng(1000 + ci as u64);
        for sample in 0..200 {
            let mut alpha = oa.one();
            for _ in 0..r.gen_range(1..=3) {
                let (u, v) = (random_unit(a, &oa, &mut r), random_unit(a, &oa, &mut r));
                let c = a.commutator(&u, &v).unwrap();
                let (cu, cv, cc) = (coeffs(&u), coeffs(&v), coeffs(&c));
                ensure!(oa.product(&[cc.clone(), cv.clone(), cu.clone()]) == oa.mul(&cu, &cv), "commutator identity");
                for _ in 0..r.gen_range(1..=4) {
                    alpha = oa.mul(&alpha, &cc);
                }
            }
            let alpha_el = element(a, &alpha);
            let d = derived_membership(&s, &alpha_el).map_err(|e| format!("GF({q}){g} #{sample}: {e}"))?;
            ensure!(d.verdict, "GF({q}){g} #{sample}: product of commutators judged outside the derived subgroup");
            let fac = factor_three_unipotents(&s, &alpha_el).map_err(|e| format!("GF({q}){g} #{sample}: {e}"))?;
            let factors = fac.factors(a);
            ensure!(factors.len() <= 3, "GF({q}){g} #{sample}: {} factors", factors.len());
            lengths[factors.len()] += 1;
            let mut seq = Vec::new();
            for (role, u) in &factors {
                let cu = coeffs(u.element());
                ensure!(
                    oa.unipotent_index(&cu) == Some(u.index()),
                    "GF({q}){g} #{sample}: {role} has wrong unipotent index"
                );
                seq.push(cu);
            }
            ensure!(oa.product(&seq) == alpha, "GF({q}){g} #{sample}: product differs from input");
            if sample < 2 {
                emit(format!("factor GF({q}){g}"), factor_certificate(&input, &s, &fac));
                emit(format!("derived GF({q}){g}"), derived_certificate(&input, &s, &alpha_el, &d).unwrap());
            }
        }
    }
    Ok(format!("1000 elements; factor counts 0/1/2/3 = {:?}", lengths))
}

// --------------------------------------------------------------------------

fn all_matrices(q: u32, n: usize) -> impl Iterator<Item = OMat> {
    let total = (q as u64).pow((n * n) as u32);
    (0..total).map(move |mut i| {
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let d = (i % q as u64) as u32;
                        i /= q as u64;
                        d
                    })
                    .collect()
            })
            .collect()
    })
}

fn scalar_of(m: &OMat) -> Option<u32> {
    let n = m.len();
    let s = m[0][0];
    (0..n).all(|i| (0..n).all(|j| m[i][j] == if i == j { s } else { 0 })).then_some(s)
}

fn check_matrix_factors(of: &OField, target: &OMat, factors: &[unifact::UnipotentCertificate]) -> Result<(), String> {
    let mut prod = mat_identity(target.len());
    for c in factors {
        let m = omat(c.matrix());
        ensure!(mat_unipotent_index(of, &m) == Some(c.index()), "factor has wrong unipotent index");
        prod = mat_mul(of, &prod, &m);
    }
    ensure!(&prod == target, "product of factors differs from {target:?}");
    Ok(())
}

fn criterion2() -> Outcome {
    let mut summary = Vec::new();
    for q in [3, 4, 5] {
        let f = field(q);
        let of = OField::of(&f);
        let (mut sl, mut central) = (0, 0);
        for m in all_matrices(q, 2) {
            if mat_det(&of, &m) != 1 {
                continue;
            }
            sl += 1;
            let a = to_matrix(&f, &m);
            let scalar = scalar_of(&m);
            let fac = if matches!(scalar, Some(s) if s != 1) {
                central += 1;
                ensure!(
                    two_unipotent_factorization(&a) == Err(Error::CentralNonIdentity),
                    "GF({q}) {m:?}: central matrix not refused by the two-factor routine"
                );
                let fac = three_unipotent_factorization(&a).map_err(|e| format!("GF({q}) {m:?}: {e}"))?;
                ensure!(fac.len() <= 3, "GF({q}) {m:?}: {} factors", fac.len());
                fac
            } else {
                let fac = two_unipotent_factorization(&a).map_err(|e| format!("GF({q}) {m:?}: {e}"))?;
                ensure!(fac.len() <= 2, "GF({q}) {m:?}: {} factors", fac.len());
                fac
            };
            check_matrix_factors(&of, &m, fac.factors()).map_err(|e| format!("GF({q}) {m:?}: {e}"))?;
            if sl <= 2 || scalar.is_some() {
                emit(format!("sl GF({q})"), sl_factorization_certificate(if fac.len() == 3 { "three" } else { "two" }, &fac));
            }
        }
        let expected = q * (q * q - 1);
        ensure!(sl == expected, "|SL_2(GF({q}))| = {sl}, expected {expected}");
        summary.push(format!("|SL2({q})|={sl} ({central} central)"));
    }
    // 2I over GF(3), and -I over GF(5): no product of two unipotents.
    for (q, s) in [(3, 2), (5, 4)] {
        let of = OField::of(&field(q));
        let unip: Vec<OMat> = all_matrices(q, 2).filter(|m| mat_unipotent_index(&of, m).is_some()).collect();
        let target = vec![vec![s, 0], vec![0, s]];
        let hits = unip.iter().flat_map(|x| unip.iter().map(move |y| (x, y))).filter(|(x, y)| mat_mul(&of, x, y) == target).count();
        ensure!(hits == 0, "{s}I over GF({q}) is a product of two unipotents");
        summary.push(format!("{s}I/GF({q}): 0 of {} unipotent pairs", unip.len() * unip.len()));
    }
    Ok(summary.join("; "))
}

// --------------------------------------------------------------------------

fn check_commutator(f: &FiniteField, a: &OMat, label: &str) -> Result<(), String> {
    let of = OField::of(f);
    let am = to_matrix(f, a);
    let w = commutator_witness_index2(&am).map_err(|e| format!("{label}: {e}"))?;
    let (b, c) = (omat(&w.b), omat(&w.c));
    let (bi, ci) = (omat(&w.b.inverse().unwrap()), omat(&w.c.inverse().unwrap()));
    let id = mat_identity(a.len());
    ensure!(mat_mul(&of, &b, &bi) == id && mat_mul(&of, &c, &ci) == id, "{label}: inverses");
    let prod = mat_mul(&of, &mat_mul(&of, &b, &c), &mat_mul(&of, &bi, &ci));
    ensure!(&prod == a, "{label}: [B, C] differs from A");
    Ok(())
}

fn criterion3() -> Outcome {
    let mut count = 0;
    for q in [3, 4, 5] {
        let f = field(q);
        let of = OField::of(&f);
        let mut r = rng(30 + q as u64);
        for n in 1..=4usize {
            for blocks in 0..=n / 2 {
                let mut canon = mat_identity(n);
                for i in 0..blocks {
                    canon[2 * i][2 * i + 1] = 1;
                }
                for _ in 0..12 {
                    let p = loop {
                        let m: OMat = (0..n).map(|_| (0..n).map(|_| r.gen_range(0..q)).collect()).collect();
                        if mat_det(&of, &m) != 0 {
                            break m;
                        }
                    };
                    let pi = omat(&to_matrix(&f, &p).inverse().unwrap());
                    ensure!(mat_mul(&of, &p, &pi) == mat_identity(n), "oracle inverse");
                    let a = mat_mul(&of, &mat_mul(&of, &p, &canon), &pi);
                    check_commutator(&f, &a, &format!("GF({q}) n={n} r={blocks}"))?;
                    count += 1;
                }
                if n == 3 {
                    let w = commutator_witness_index2(&to_matrix(&f, &canon)).unwrap();
                    emit(format!("commutator GF({q})"), matrix_commutator_certificate(&w).unwrap());
                }
            }
        }
        let mut exhaustive = 0;
        for m in all_matrices(q, 2) {
            let d = mat_sub(&of, &m, &mat_identity(2));
            if mat_is_zero(&mat_mul(&of, &d, &d)) {
                check_commutator(&f, &m, &format!("GF({q}) {m:?}"))?;
                exhaustive += 1;
            }
        }
        // identity plus q^2 - 1 nonzero square-zero 2x2 matrices
        ensure!(exhaustive == q * q, "GF({q}): {exhaustive} index-2 unipotents in M_2, expected {}", q * q);
        count += exhaustive;
    }
    Ok(format!("{count} witnesses verified"))
}

// --------------------------------------------------------------------------

fn criterion4() -> Outcome {
    let (mut cases, mut exhaustive) = (0, 0);
    for q in [3, 4, 5, 9] {
        let f = field(q);
        for name in FiniteGroup::CATALOG {
            let g = FiniteGroup::catalog(name).unwrap();
            let mut r = rng(400 + q as u64 * 17 + g.order() as u64);
            let mut cocycles = vec![TwoCocycle::trivial(&g, &f)];
            if f.characteristic() > 2 {
                cocycles.push(prime_coboundary(&g, &f, &mut r));
                cocycles.push(prime_coboundary(&g, &f, &mut r));
                if name == "C2xC2" {
                    cocycles.push(klein_bicharacter(&g, &f));
                }
            }
            for (ti, tau) in cocycles.into_iter().enumerate() {
                let oa = OAlg::new(&f, &g, &tau);
                let n = g.order();
                let abelian = (0..n).all(|x| (0..n).all(|y| oa.table[x][y] == oa.table[y][x]));
                let symmetric = (0..n).all(|x| (0..n).all(|y| oa.tau[x][y] == oa.tau[y][x]));
                let coprime = !n.is_multiple_of(f.characteristic() as usize);
                let structural = abelian && coprime && symmetric;
                let label = format!("GF({q}){name} cocycle {ti}");
                let rep = nilfree_check(&f, &g, &tau, 0).map_err(|e| format!("{label}: {e}"))?;
                ensure!(rep.verdict == structural, "{label}: verdict {} vs structural {structural}", rep.verdict);
                if let Some(w) = &rep.witness {
                    let c = coeffs(&w.element);
                    ensure!(c.iter().any(|&x| x != 0) && oa.is_nilpotent(&c), "{label}: witness is not a nonzero nilpotent");
                }
                ensure!(rep.witness.is_some() != rep.verdict, "{label}: witness presence");
                if let Some(all) = oa.all(1_000_000) {
                    let has_nil = all.iter().any(|x| x.iter().any(|&c| c != 0) && oa.is_nilpotent(x));
                    ensure!(has_nil != rep.verdict, "{label}: exhaustive search disagrees with verdict");
                    exhaustive += 1;
                }
                if ti == 0 && (name == "C3" || name == "S3") || name == "C2xC2" && ti == 3 {
                    let input = AlgebraInput::new(f.clone(), g.clone(), tau.clone()).unwrap();
                    emit(format!("nilfree {label}"), nilfree_certificate(&input, 0, &rep));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, {exhaustive} confirmed by exhaustive search"))
}

// --------------------------------------------------------------------------

/// Reduce `rows` to a maximal independent subset.
fn independent(of: &OField, rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for r in rows {
        out.push(r);
        if rank(of, &out) < out.len() {
            out.pop();
        }
    }
    out
}

/// Oracle check that the span of `basis` is a nilpotent two-sided ideal.
fn oracle_nilpotent_ideal(oa: &OAlg, basis: &[Vec<u32>]) -> Result<(), String> {
    let of = &oa.f;
    let r0 = rank(of, basis);
    ensure!(r0 == basis.len(), "radical basis is dependent");
    for b in basis {
        for g in 0..oa.n {
            let e: Vec<u32> = (0..oa.n).map(|i| u32::from(i == g)).collect();
            for prod in [oa.mul(b, &e), oa.mul(&e, b)] {
                let mut rows = basis.to_vec();
                rows.push(prod);
                ensure!(rank(of, &rows) == r0, "radical is not a two-sided ideal");
            }
        }
    }
    let mut power = basis.to_vec();
    for _ in 0..=oa.n {
        if power.is_empty() {
            return Ok(());
        }
        let prods = power.iter().flat_map(|x| basis.iter().map(move |y| (x, y))).map(|(x, y)| oa.mul(x, y));
        power = independent(of, prods.filter(|v| v.iter().any(|&c| c != 0)).collect());
    }
    Err("radical is not nilpotent".into())
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn criterion5() -> Outcome {
    let (mut maschke, mut pgroup, mut other) = (0, 0, 0);
    let mut cases: Vec<(u32, &str, Option<TwoCocycle>)> = Vec::new();
    for q in [2, 3, 4, 5, 7, 9] {
        for name in FiniteGroup::CATALOG {
            cases.push((q, name, None));
        }
    }
    for q in [3, 5] {
        let g = FiniteGroup::catalog("C2xC2").unwrap();
        cases.push((q, "C2xC2", Some(klein_bicharacter(&g, &field(q)))));
    }
    let s3 = FiniteGroup::catalog("S3").unwrap();
    cases.push((3, "S3", Some(prime_coboundary(&s3, &field(3), &mut rng(5)))));
    for (q, name, tau) in cases {
        let twisted = tau.is_some();
        let (input, oa) = setup(q, name, tau);
        let a = &input.algebra;
        let label = format!("GF({q}){name}{}", if twisted { " twisted" } else { "" });
        let rad = radical(a).map_err(|e| format!("{label}: {e}"))?;
        let basis: Vec<Vec<u32>> = rad.basis().iter().map(coeffs).collect();
        oracle_nilpotent_ideal(&oa, &basis).map_err(|e| format!("{label}: {e}"))?;
        let quo = quotient(a, &rad);
        ensure!(radical(quo.algebra()).unwrap().dim() == 0, "{label}: quotient has a radical");
        let n = oa.n;
        let p = oa.f.p as usize;
        if n % p != 0 {
            ensure!(rad.dim() == 0, "{label}: Maschke case has dim J = {}", rad.dim());
            maschke += 1;
        } else if is_power_of(n, p) && !twisted {
            ensure!(rad.dim() == n - 1, "{label}: p-group case has dim J = {}", rad.dim());
            let aug = |v: &Vec<u32>| v.iter().fold(0, |s, &c| oa.f.add(s, c)) == 0;
            ensure!(basis.iter().all(aug), "{label}: J is not the augmentation ideal");
            pgroup += 1;
        } else {
            other += 1;
        }
        if q == 3 && name == "S3" && !twisted || q == 4 && name == "C2" {
            emit(format!("radical {label}"), radical_certificate(&input, &rad));
        }
    }
    Ok(format!("{maschke} semisimple, {pgroup} p-group, {other} mixed; all nilpotent ideals with semisimple quotient"))
}

// --------------------------------------------------------------------------

fn criterion6() -> Outcome {
    let mut count = 0;
    let mut cases: Vec<(u32, &str, Option<TwoCocycle>)> = Vec::new();
    for q in [2, 3, 4, 5, 7, 9] {
        for name in FiniteGroup::CATALOG {
            cases.push((q, name, None));
        }
    }
    for q in [3, 5, 7] {
        let g = FiniteGroup::catalog("C2xC2").unwrap();
        cases.push((q, "C2xC2", Some(klein_bicharacter(&g, &field(q)))));
    }
    let d4 = FiniteGroup::catalog("D4").unwrap();
    cases.push((5, "D4", Some(prime_coboundary(&d4, &field(5), &mut rng(6)))));
    for (ci, (q, name, tau)) in cases.into_iter().enumerate() {
        let twisted = tau.is_some();
        let (input, oa) = setup(q, name, tau);
        let a = &input.algebra;
        let label = format!("GF({q}){name}{}", if twisted { " twisted" } else { "" });
        let s = Structure::new(a.clone(), ci as u64).map_err(|e| format!("{label}: {e}"))?;
        let w = s.wedderburn();
        let base_degree = input.field.degree() as usize;
        let mut total = 0;
        for c in w.components() {
            let kf = OField::of(c.field());
            ensure!(kf.p == oa.f.p && kf.modulus_is_irreducible(), "{label}: component ring is not a field");
            ensure!(kf.k == base_degree * c.degree_over_base(), "{label}: inconsistent degree over the base field");
            total += c.size() * c.size() * c.degree_over_base();
        }
        let qdim = oa.n - s.radical().dim();
        ensure!(total == qdim, "{label}: sum n^2 [K:F] = {total}, dim A/J = {qdim}");
        let mut r = rng(600 + ci as u64);
        let ones = s.components_of(&a.one());
        ensure!(ones.iter().all(Matrix::is_identity), "{label}: unit not mapped to identity");
        for _ in 0..10 {
            let (x, y) = (oa.random(&mut r), oa.random(&mut r));
            let (bx, by) = (s.components_of(&element(a, &x)), s.components_of(&element(a, &y)));
            let bxy = s.components_of(&element(a, &oa.mul(&x, &y)));
            for (i, c) in w.components().iter().enumerate() {
                let kf = OField::of(c.field());
                ensure!(
                    mat_mul(&kf, &omat(&bx[i]), &omat(&by[i])) == omat(&bxy[i]),
                    "{label}: not multiplicative on component {i}"
                );
            }
            let back = s.pull_back(&bx).unwrap();
            let diff = a.sub(&back, &element(a, &x));
            ensure!(s.radical().contains(a, &diff), "{label}: pull-back of the image differs modulo J");
        }
        if q == 5 && name == "S3" || q == 2 && name == "C3" || q == 3 && name == "C2xC2" {
            emit(format!("wedderburn {label}"), wedderburn_certificate(&input, &s));
        }
        count += 1;
    }
    // Known shapes: x^3 - 1 = (x + 1)(x^2 + x + 1) over GF(2); GF(5)S3 has degrees 1, 1, 2.
    let shape = |q: u32, g: &str| -> Vec<(usize, u32)> {
        let (input, _) = setup(q, g, None);
        let s = Structure::new(input.algebra, 0).unwrap();
        let mut v: Vec<(usize, u32)> = s.wedderburn().components().iter().map(|c| (c.size(), c.field().order())).collect();
        v.sort();
        v
    };
    ensure!(shape(2, "C3") == vec![(1, 2), (1, 4)], "GF(2)C3 shape");
    ensure!(shape(5, "S3") == vec![(1, 5), (1, 5), (2, 5)], "GF(5)S3 shape");
    ensure!(shape(3, "Q8") == vec![(1, 3), (1, 3), (1, 3), (1, 3), (2, 3)], "GF(3)Q8 shape");
    Ok(format!("{count} decompositions verified"))
}

// --------------------------------------------------------------------------

fn criterion7() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (q, name) in [(4, "C2"), (9, "C3"), (4, "C2xC2"), (5, "C2")] {
        let (input, oa) = setup(q, name, None);
        let a = &input.algebra;
        let rad = radical(a).unwrap();
        let rep = unipotent_radical_check(a, &rad, Caps::default()).map_err(|e| format!("GF({q}){name}: {e}"))?;
        let all = oa.all(1_000_000).unwrap();
        let left_mult = |x: &Vec<u32>| -> OMat {
            (0..oa.n)
                .map(|i| {
                    let e: Vec<u32> = (0..oa.n).map(|j| u32::from(i == j)).collect();
                    oa.mul(x, &e)
                })
                .collect()
        };
        let units = all.iter().filter(|x| mat_det(&oa.f, &left_mult(x)) != 0).count();
        let unipotents: Vec<&Vec<u32>> = all.iter().filter(|x| oa.unipotent_index(x).is_some()).collect();
        // commutative: the unipotents form the largest unipotent normal subgroup
        let p = oa.f.p as usize;
        let j_dim = if is_power_of(oa.n, p) { oa.n - 1 } else { 0 };
        let one_plus_j = (q as usize).pow(j_dim as u32);
        let one_plus_j_set = |x: &Vec<u32>| {
            if j_dim == 0 {
                *x == oa.one()
            } else {
                x.iter().fold(0, |s, &c| oa.f.add(s, c)) == 1
            }
        };
        ensure!(unipotents.iter().all(|x| one_plus_j_set(x)), "GF({q}){name}: unipotent outside 1 + J");
        ensure!(unipotents.len() == one_plus_j, "GF({q}){name}: |unipotents| = {}", unipotents.len());
        ensure!(rep.verdict, "GF({q}){name}: verdict false");
        ensure!(rep.unit_group_order == units, "GF({q}){name}: |R*| {} vs oracle {units}", rep.unit_group_order);
        ensure!(rep.one_plus_j_order == one_plus_j, "GF({q}){name}: |1+J| {} vs {one_plus_j}", rep.one_plus_j_order);
        ensure!(rep.unipotent_count == unipotents.len(), "GF({q}){name}: unipotent count");
        emit(format!("unipotent-radical GF({q}){name}"), unipotent_radical_certificate(&input, &rad, &rep));
        lines.push(format!("GF({q}){name}: |R*|={units} |1+J|={one_plus_j}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 10.0, "took {secs:.1} s");
    Ok(lines.join("; "))
}

// --------------------------------------------------------------------------

/// Every copy of `v` with one numeric leaf moved by one or one boolean
/// flipped; the `seed` parameter is not certificate content.
fn perturbations(v: &Value) -> Vec<(String, Value)> {
    fn walk(v: &Value, path: &mut Vec<String>, out: &mut Vec<(Vec<String>, Value)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    if k == "seed" {
                        continue;
                    }
                    path.push(k.clone());
                    walk(x, path, out);
                    path.pop();
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    path.push(i.to_string());
                    walk(x, path, out);
                    path.pop();
                }
            }
            Value::Number(n) => {
                let n = n.as_u64().unwrap();
                out.push((path.clone(), Value::from(n + 1)));
                if n > 0 {
                    out.push((path.clone(), Value::from(n - 1)));
                }
            }
            Value::Bool(b) => out.push((path.clone(), Value::Bool(!b))),
            _ => {}
        }
    }
    let mut leaves = Vec::new();
    walk(v, &mut Vec::new(), &mut leaves);
    leaves
        .into_iter()
        .map(|(path, new)| {
            let mut copy = v.clone();
            let mut slot = &mut copy;
            for k in &path {
                slot = match slot {
                    Value::Object(m) => m.get_mut(k).unwrap(),
                    Value::Array(a) => &mut a[k.parse::<usize>().unwrap()],
                    _ => unreachable!(),
                };
            }
            *slot = new;
            (path.join("."), copy)
        })
        .collect()
}

fn own_corpus() -> Vec<(String, Value)> {
    let mut out = Vec::new();
    let (input, _) = setup(5, "S3", None);
    let s = Structure::new(input.algebra.clone(), 0).unwrap();
    let a = &input.algebra;
    let u = a.add(&a.one(), &a.sub(&a.basis(1), &a.basis(3)));
    if let Ok(w) = index2_commutator_semisimple(&s, &u) {
        out.push(("algebra-commutator GF(5)S3".into(), algebra_commutator_certificate(&input, &w).unwrap()));
    }
    let w = index2_commutator_semisimple(&s, &a.one()).unwrap();
    out.push(("algebra-commutator GF(5)S3 identity".into(), algebra_commutator_certificate(&input, &w).unwrap()));
    let f5 = field(5);
    let t = Matrix::from_ints(&f5, &[&[2, 0], &[0, 3]]);
    let fac = unifact::slfact::transvection_factorization(&t).unwrap();
    out.push(("sl transvection GF(5)".into(), sl_factorization_certificate("transvection", &fac)));
    let (input, _) = setup(5, "C2", None);
    let alpha = input.algebra.basis(1);
    let s = Structure::new(input.algebra.clone(), 0).unwrap();
    let d = derived_membership(&s, &alpha).unwrap();
    out.push(("derived GF(5)C2 negative".into(), derived_certificate(&input, &s, &alpha, &d).unwrap()));
    out
}

fn criterion8() -> Outcome {
    let mut corpus = CORPUS.lock().unwrap().clone();
    corpus.extend(own_corpus());
    for (label, c) in &corpus {
        verify(c).map_err(|e| format!("{label}: emitted certificate rejected: {e}"))?;
        let round: Value = serde_json::from_str(&serde_json::to_string(c).unwrap()).unwrap();
        verify(&round).map_err(|e| format!("{label}: rejected after serialization: {e}"))?;
    }
    // every certificate kind, first instance of each label
    let mut seen = std::collections::BTreeSet::new();
    let (mut tried, mut undetected) = (0, Vec::new());
    for (label, c) in &corpus {
        if !seen.insert(label.clone()) {
            continue;
        }
        for (path, bad) in perturbations(c) {
            tried += 1;
            if verify(&bad).is_ok() {
                undetected.push(format!("{label} @ {path}"));
            }
        }
    }
    ensure!(
        undetected.is_empty(),
        "{} of {tried} perturbations accepted, e.g. {:?}",
        undetected.len(),
        &undetected[..undetected.len().min(20)]
    );
    Ok(format!("{} certificates verified; {tried} single-entry perturbations all rejected", corpus.len()))
}

// --------------------------------------------------------------------------

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "three-unipotent factorization round-trip", criterion1),
        (2, "SL2 two/three-unipotent bounds", criterion2),
        (3, "index-2 unipotents are commutators", criterion3),
        (4, "nil-free verdicts", criterion4),
        (5, "Jacobson radical", criterion5),
        (6, "Wedderburn decomposition", criterion6),
        (7, "unipotent radical is 1 + J", criterion7),
        (8, "certificate integrity", criterion8),
    ];
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, title, run) in criteria {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("PASS criterion {id} ({title}) [{secs:.2}s]: {summary}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id} ({title}) [{secs:.2}s]: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
