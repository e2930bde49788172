//! Acceptance suite: one PASS/FAIL line per criterion, exact equality only.

mod common;

use common::{abstract_data, all_fixtures, expr, germ, lpow, same_value, Fixture};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;
use stringy_core::mmp::{run_mmp, run_mmp_with_order};
use stringy_core::sample;
use stringy_core::stratified::{duality_check, has_hodge_signs, hyperplane_oracle, zeta_abstract};
use stringy_core::stringy::{
    batyrev_expression, check_levels, compare_d_limit, default_model, veys_invariants, zeta, zeta_on_model, Level,
    ZetaValue,
};
use stringy_core::surface::Classification;
use stringy_core::symbolic::{
    euler_specialize, format_rational, hodge_specialize, int, limit_at_s1, rat, ratfn_equal, Limit, Poly, Rational,
    RationalExpr, UniRationalFn, Var,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn motivic(g: &stringy_core::surface::ResolutionGraph, d: &Rational) -> RationalExpr {
    zeta(g, d, Level::Motivic).expect("zeta").value.as_expr().expect("motivic").clone()
}

fn euler(g: &stringy_core::surface::ResolutionGraph, d: &Rational) -> UniRationalFn {
    zeta(g, d, Level::Euler).expect("zeta").value.as_euler().expect("euler").clone()
}

/// `p(s)/q(s)` from ascending coefficient lists.
fn ratfn(num: &[Rational], den: &[Rational]) -> UniRationalFn {
    UniRationalFn::new(Poly::from_coeffs(num.to_vec()), Poly::from_coeffs(den.to_vec()))
}

fn one_minus_s_times(c: &Rational) -> Poly {
    Poly::linear(c.clone(), -c.clone())
}

fn criterion_1() -> Outcome {
    let mut checks = 0;
    let ds = [int(0), rat(1, 3), rat(1, 2), rat(9, 10)];
    for kappa in [2, 3] {
        let g = germ(&format!("elliptic-kappa{kappa}"));
        for d in &ds {
            let x = lpow(&(int(1) - d), &(d - int(1)));
            let want = expr(&format!("[E]*(L-1)/({x}-1)"));
            ensure(ratfn_equal(&motivic(&g, d), &want), || format!("elliptic Z, kappa {kappa}, d {d}"))?;
            ensure(euler(&g, d).is_zero(), || format!("elliptic z, kappa {kappa}, d {d}"))?;
            checks += 2;
        }
    }
    for r in [2, 3, 5] {
        let g = germ(&format!("cycle-r{r}"));
        for d in [int(0), rat(1, 3), rat(9, 10)] {
            let x = lpow(&(int(1) - &d), &(&d - int(1)));
            let want = expr(&format!("{r}*(L-1)^2*(1/({x}-1)^2+1/({x}-1))"));
            ensure(ratfn_equal(&motivic(&g, &d), &want), || format!("cycle Z, r {r}, d {d}"))?;
            checks += 1;
        }
    }
    for k in [0i64, 1, 3] {
        let g = germ(&format!("double-fork-k{k}"));
        for d in &ds {
            let c = int(1) - d;
            let x = lpow(&c, &-c.clone());
            let y = lpow(&(int(1) - d / int(2)), &((d - int(1)) / int(2)));
            let want = expr(&format!("{k}*(L-1)^2/({x}-1)^2+(L-1)*({}*(L-1)+2*L+4*{y})/({x}-1)", k - 1));
            ensure(ratfn_equal(&motivic(&g, d), &want), || format!("double fork Z, k {k}, d {d}"))?;
            let one_s = UniRationalFn::from_poly(one_minus_s_times(&c));
            let z_want = &(&UniRationalFn::constant(int(k)) / &(&one_s * &one_s)) + &(&UniRationalFn::constant(int(6)) / &one_s);
            ensure(euler(&g, d) == z_want, || format!("double fork z, k {k}, d {d}"))?;
            checks += 2;
        }
    }
    let g = germ("tripod-3");
    let contracted_form = |d: &Rational| {
        let c = int(1) - d;
        let x = lpow(&c, &-c.clone());
        let w = lpow(&((int(2) - d) / int(3)), &((d - int(1)) / int(3)));
        let z = &UniRationalFn::constant(int(8)) / &UniRationalFn::from_poly(one_minus_s_times(&c));
        (z, expr(&format!("(L-1)/({x}-1)*(L-2+3*(1+{w}+({w})^2))")))
    };
    let open_form = |d: &Rational| {
        let c = int(1) - d;
        let x = lpow(&c, &-c.clone());
        let v = lpow(&c, &(d - rat(2, 3)));
        let u = lpow(&(int(2) - d), &(d - int(1)));
        let num = Poly::linear(int(5) - int(2) * d, int(2) * d - rat(7, 3));
        let den = &one_minus_s_times(&c) * &Poly::linear(c.clone(), d - rat(2, 3));
        let z = UniRationalFn::new(num, den);
        (z, expr(&format!("(L-1)*(-1-L+3*{u}+(L-2)*{v})/(({x}-1)*({v}-1))")))
    };
    for d in [rat(1, 2), rat(3, 4)] {
        let (z, big_z) = contracted_form(&d);
        ensure(euler(&g, &d) == z, || format!("tripod z, d {d}"))?;
        ensure(ratfn_equal(&motivic(&g, &d), &big_z), || format!("tripod Z, d {d}"))?;
        checks += 2;
    }
    for d in [int(0), rat(1, 4), rat(1, 2)] {
        let (z, big_z) = open_form(&d);
        let minimal = run_mmp(&g, &d).map_err(|e| e.to_string())?;
        ensure(minimal.contracted().is_empty(), || format!("tripod minimal model contracts at d {d}"))?;
        let ze = zeta_on_model(&minimal, Level::Euler).map_err(|e| e.to_string())?;
        let zm = zeta_on_model(&minimal, Level::Motivic).map_err(|e| e.to_string())?;
        ensure(ze.value == ZetaValue::Euler(z), || format!("tripod open z, d {d}"))?;
        ensure(ratfn_equal(zm.value.as_expr().expect("motivic"), &big_z), || format!("tripod open Z, d {d}"))?;
        checks += 2;
    }
    let (z1, big1) = contracted_form(&rat(1, 2));
    let (z2, big2) = open_form(&rat(1, 2));
    ensure(z1 == z2 && ratfn_equal(&big1, &big2), || "tripod forms differ at d = 1/2".into())?;
    Ok(format!("{} closed forms and the d = 1/2 coincidence", checks + 1))
}

fn criterion_2() -> Outcome {
    let mut checks = 0;
    for kappa in [1i64, 2, 3, 5] {
        let g = germ(&format!("elliptic-branch-kappa{kappa}"));
        let k = int(kappa);
        let at_one = ratfn(&[&k * &k, -k.clone()], &[int(0), int(0), int(2)]);
        ensure(euler(&g, &int(1)) == at_one, || format!("d = 1, kappa {kappa}"))?;
        let below_one = |d: &Rational| {
            let x = UniRationalFn::from_poly(Poly::linear(int(1) - d, d - int(1) - int(1) / &k));
            let half = UniRationalFn::constant(rat(1, 2));
            &(&half / &(&x * &x)) + &(&half / &x)
        };
        for d in [int(0), rat(1, 3), rat(1, 2), rat(9, 10), rat(99, 100), rat(999, 1000)] {
            ensure(euler(&g, &d) == below_one(&d), || format!("d < 1 form, kappa {kappa}, d {d}"))?;
            checks += 1;
        }
        ensure(below_one(&int(1)) == at_one, || format!("closed form at d = 1, kappa {kappa}"))?;
        let c = compare_d_limit(&g).map_err(|e| e.to_string())?;
        ensure(c.limit.as_ref() == Some(&at_one) && c.agrees(), || format!("d -> 1 limit, kappa {kappa}"))?;
        checks += 3;
    }
    Ok(format!("{checks} identities over kappa in {{1,2,3,5}}"))
}

fn criterion_3() -> Outcome {
    let data = abstract_data("example-3-6");
    let z = zeta_abstract(&data, Level::Euler).map_err(|e| e.to_string())?;
    ensure(z.value == ZetaValue::Euler(ratfn(&[int(13)], &[int(0), int(1)])), || "euler zeta is not 13/s".into())?;
    ensure(z.eval_or_limit_at_1().value().is_some_and(|v| v == stringy_core::stringy::EvalValue::Number(int(13))), || {
        "euler value at 1 is not 13".into()
    })?;
    let m = zeta_abstract(&data, Level::Motivic).map_err(|e| e.to_string())?;
    let m = m.value.as_expr().expect("motivic");
    let sum: Vec<String> = (1..=4).map(|i| lpow(&rat(i, 5), &rat(-i, 5))).collect();
    let display = expr(&format!("(L^3-1+(L-1)*[C]*({}))/(T-1)", sum.join("+")));
    ensure(ratfn_equal(m, &display), || "motivic zeta differs from the display".into())?;
    let at1 = limit_at_s1(m).value().ok_or("motivic zeta has a pole at 1")?;
    ensure(ratfn_equal(&at1, &expr("-(L^3+L^2+L+4*L*[C])")), || "motivic value at 1".into())?;
    let note = expr("-(u^3*v^3+5*u^2*v^2-12*u^2*v-12*u*v^2+5*u*v)");
    let h = hodge_specialize(&at1, &data.symbols).map_err(|e| e.to_string())?;
    ensure(ratfn_equal(&h, &note), || "Hodge specialization differs from the note".into())?;
    let hz = zeta_abstract(&data, Level::Hodge).map_err(|e| e.to_string())?;
    let h1 = limit_at_s1(hz.value.as_expr().expect("hodge")).value().ok_or("hodge pole")?;
    ensure(ratfn_equal(&h1, &note), || "Hodge-level limit differs from the note".into())?;
    let opposite = (-&h1).simplified();
    ensure(opposite.as_laurent().is_some_and(has_hodge_signs), || "opposite polynomial has a wrong sign".into())?;
    Ok("13/s, displayed Z, values 13 and -(L^3+L^2+L+4L[C]), Hodge polynomial with right signs".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let trials = 100;
    for t in 0..trials {
        let g = sample::random_non_lc_germ(&mut rng, 8);
        let inv = veys_invariants(&g).map_err(|e| format!("trial {t}: {e}\n{}", g.to_json()))?;
        let z = motivic(&g, &int(1));
        let Limit::Value(at1) = limit_at_s1(&z) else {
            return Err(format!("trial {t}: pole at s = 1\n{}", g.to_json()));
        };
        ensure(ratfn_equal(&inv.motivic, &at1), || format!("trial {t}: E(X) != Z(X;1)\n{}", g.to_json()))?;
        let e1 = euler(&g, &int(1)).limit_at_s1();
        ensure(e1 == Limit::Value(inv.euler.clone()), || format!("trial {t}: e(X) != z(X;1)\n{}", g.to_json()))?;
    }
    Ok(format!("{trials} random non-lc germs, motivic and Euler"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let params = sample::GermParams { max_vertices: 6, ..Default::default() };
    let mut done = 0;
    while done < 100 {
        let g = sample::random_germ(&mut rng, &params);
        let d = sample::random_d(&mut rng);
        if default_model(&g, &d).is_err() {
            continue;
        }
        let site = sample::random_site(&mut rng, &g);
        let h = g.blow_up(&site).map_err(|e| e.to_string())?;
        for level in Level::ALL {
            let a = zeta(&g, &d, level).map_err(|e| e.to_string())?;
            let b = zeta(&h, &d, level).map_err(|e| format!("{e} after blowing up {site:?}\n{}", g.to_json()))?;
            ensure(same_value(&a.value, &b.value), || {
                format!("{level} zeta changed at {site:?}, d {d}\n{}", g.to_json())
            })?;
        }
        done += 1;
    }
    Ok(format!("{done} (germ, site, d) triples on all three levels"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let params = sample::GermParams { max_vertices: 8, ..Default::default() };
    let mut germs = 0;
    while germs < 50 {
        let g = sample::random_germ(&mut rng, &params);
        let orders: Vec<Vec<usize>> = (0..5).map(|_| shuffled(g.len(), &mut rng)).collect();
        for d in [int(0), rat(1, 2), rat(9, 10)] {
            let reference = run_mmp(&g, &d).map_err(|e| e.to_string())?.contracted_ids();
            for order in &orders {
                let m = run_mmp_with_order(&g, &d, order).map_err(|e| e.to_string())?;
                let mut got = m.contracted_ids();
                let mut want = reference.clone();
                got.sort();
                want.sort();
                ensure(got == want, || format!("order {order:?} at d {d}\n{}", g.to_json()))?;
            }
        }
        germs += 1;
    }
    Ok(format!("{germs} germs, 3 values of d, 5 orders each"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = 0;
    for r in 2..=5u32 {
        for m in 0..=r.min(4) {
            for _ in 0..3 {
                let (k, d) = sample::random_oracle_params(&mut rng, m);
                let rep = hyperplane_oracle(r, &k, &d).map_err(|e| e.to_string())?;
                let show = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
                ensure(rep.equal, || format!("r {r}, m {m}, k [{}], d [{}]", show(&k), show(&d)))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} draws over all (r, m)"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 20;
    for t in 0..n {
        let data = sample::synthetic_complete(&mut rng);
        let rep = duality_check(&data).map_err(|e| e.to_string())?;
        ensure(rep.holds && rep.closed_form_agrees, || format!("synthetic dataset {t}\n{}", data.to_json()))?;
    }
    let good = duality_check(&abstract_data("duality-p2-cubic")).map_err(|e| e.to_string())?;
    ensure(good.holds, || "plane cubic fails".into())?;
    let bad = duality_check(&abstract_data("duality-p2-nonpalindromic")).map_err(|e| e.to_string())?;
    ensure(!bad.holds && !bad.residual.is_zero(), || "non-palindromic data passes".into())?;
    Ok(format!("{n} synthetic datasets and the plane cubic hold, the non-palindromic dataset fails"))
}

fn criterion_9() -> Outcome {
    let mut count = 0;
    let ds = [int(0), rat(1, 3), rat(1, 2), rat(9, 10), int(1)];
    for f in all_fixtures() {
        match f {
            Fixture::Germ(name, g) => {
                for d in &ds {
                    let Ok(model) = default_model(&g, d) else {
                        ensure(d == &int(1) && g.classify() == Classification::StrictlyLc, || {
                            format!("{name}: no model at d {d}")
                        })?;
                        continue;
                    };
                    let table = model.nu_n().map_err(|e| e.to_string())?;
                    let a = g.log_discrepancies();
                    for (row, a) in table.rows.iter().zip(a.vertices.iter().chain(&a.branches)) {
                        ensure(&(&row.nu + &row.n) == a, || format!("{name}: nu + N != a for {}", row.id))?;
                    }
                    check_levels(&g, d).map_err(|e| format!("{name}, d {d}: {e}"))?;
                    if g.classify() == Classification::Klt {
                        let z = motivic(&g, d);
                        ensure(!z.contains_var(Var::T), || format!("{name}: zeta depends on s"))?;
                        let b = batyrev_expression(&g, Level::Motivic).map_err(|e| e.to_string())?;
                        ensure(same_value(&ZetaValue::Expr(z), &b), || format!("{name}: zeta != Batyrev"))?;
                    }
                }
                count += 1;
            }
            Fixture::Abstract(name, data) => {
                if let Ok(m) = zeta_abstract(&data, Level::Motivic) {
                    let m = m.value.as_expr().expect("motivic").clone();
                    let e = zeta_abstract(&data, Level::Euler).map_err(|e| e.to_string())?;
                    let chi = euler_specialize(&m, &data.symbols).map_err(|e| e.to_string())?;
                    ensure(e.value == ZetaValue::Euler(chi), || format!("{name}: euler != chi(motivic)"))?;
                    let h = zeta_abstract(&data, Level::Hodge).map_err(|e| e.to_string())?;
                    let hm = hodge_specialize(&m, &data.symbols).map_err(|e| e.to_string())?;
                    ensure(same_value(&h.value, &ZetaValue::Expr(hm)), || format!("{name}: hodge != H(motivic)"))?;
                }
                for row in data.table() {
                    ensure(row.nu.clone() + row.n.clone() == row.a, || format!("{name}: nu + N != a"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} fixtures"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, f) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.2}s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.2}s) {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn shuffled(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}
