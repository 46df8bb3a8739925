//! The twelve acceptance criteria, run in order. Each prints one
//! `PASS`/`FAIL` line; the process exits nonzero if any criterion fails.
//! Runs without the libtest harness so the lines always show.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use orlov::orlov::{finite_length_certificate, hypercohomology, phi, psi, twist_compat_check, window_check_counts};
use orlov::resolution::gorenstein_data;
use orlov::{resolve_module, FreeComplex, FreeModule, GorensteinRing, ModuleComplex, PhiOptions, PresentedModule, QuotientRing};
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sorted(m: &FreeModule) -> Vec<i32> {
    let mut d = m.degrees().to_vec();
    d.sort();
    d
}

fn g27() -> GorensteinRing {
    GorensteinRing::new(ring27()).unwrap()
}

fn m27(g: &GorensteinRing) -> ModuleComplex {
    ModuleComplex::concentrated(module27(&g.ring), 0)
}

fn gorenstein(vars: &[&str], ideal: &[&str]) -> GorensteinRing {
    GorensteinRing::new(ring(vars, ideal)).unwrap()
}

fn unit() -> ModuleComplex {
    ModuleComplex::concentrated(PresentedModule::free(FreeModule::new(vec![0])), 0)
}

/// `dim_k` of degree `d` of `k[x0..x4]/(x0x1, x2x3x4)`, by counting monomials.
fn hf27(d: i32) -> usize {
    if d < 0 {
        return 0;
    }
    let d = d as usize;
    let mut n = 0;
    for a0 in 0..=d {
        for a1 in 0..=d - a0 {
            if a0 > 0 && a1 > 0 {
                continue;
            }
            for a2 in 0..=d - a0 - a1 {
                for a3 in 0..=d - a0 - a1 - a2 {
                    let a4 = d - a0 - a1 - a2 - a3;
                    if !(a2 > 0 && a3 > 0 && a4 > 0) {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

fn c1() -> Outcome {
    let g = g27();
    let start = Instant::now();
    let f = resolve_module(&g.ring, &module27(&g.ring), 4);
    let took = start.elapsed();
    let got: Vec<Vec<i32>> = (0..=4).map(|i| sorted(&f.term(-i).unwrap())).collect();
    let want = vec![vec![0], vec![1, 1], vec![2, 2, 3], vec![3, 3, 4, 4], vec![4, 4, 5, 5, 6]];
    check(got == want, || format!("twists {got:?}"))?;
    check(took < Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!("five steps exact in {took:.2?}"))
}

fn c2() -> Outcome {
    let g = g27();
    let start = Instant::now();
    let out = phi(&g, &m27(&g), 3, 6, PhiOptions { keep_stages: true, ..Default::default() }).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let st = out.stages.unwrap();
    let d = &st.d;
    let dshape: Vec<Vec<i32>> = (0..=4).map(|i| sorted(&d.term(i).unwrap())).collect();
    // R(3) at index 2, R(3)^2 ++ R(4)^2, R(4)^2 ++ R(5)^2 ++ R(6)
    let dwant = vec![vec![], vec![], vec![-3], vec![-4, -4, -3, -3], vec![-6, -5, -5, -4, -4]];
    check(dshape == dwant, || format!("D {dshape:?}"))?;
    let gshape: Vec<Vec<i32>> = (-2..=3).rev().map(|i| sorted(&st.g.term(i).unwrap())).collect();
    // R(2)^2 at index 3, R(1)^2, R, R(-3), R(-4)^2, R(-5)^2 ++ R(-6)
    let gwant = vec![vec![-2, -2], vec![-1, -1], vec![0], vec![3], vec![4, 4], vec![5, 5, 6]];
    check(gshape == gwant, || format!("G {gshape:?}"))?;
    check(st.g.term(4).unwrap().is_zero(), || "G^4 nonzero".into())?;
    check(took < Duration::from_secs(120), || format!("took {took:?}"))?;
    Ok(format!("D and G exact in {took:.2?}"))
}

/// `O(-2)^2, O(-1)^2, O, O(3), O(4)^2, O(5)^2 ++ O(6)` as generator degrees.
fn phi3_want() -> Vec<Vec<i32>> {
    vec![vec![2, 2], vec![1, 1], vec![0], vec![-3], vec![-4, -4], vec![-6, -5, -5]]
}

fn c3() -> Outcome {
    let g = g27();
    let out = phi(&g, &m27(&g), 3, 6, PhiOptions::default()).map_err(|e| e.to_string())?;
    let e = &out.complex;
    let got: Vec<Vec<i32>> = (e.lo()..e.lo() + 6).map(|i| sorted(&e.term(i).unwrap())).collect();
    check(got == phi3_want(), || format!("terms {got:?}"))?;
    Ok(format!("first six terms exact from index {}", e.lo()))
}

fn c4() -> Outcome {
    let g = g27();
    let out = phi(&g, &m27(&g), 3, 6, PhiOptions::default()).map_err(|e| e.to_string())?;
    let e = &out.complex;
    let mut want: Vec<Vec<i32>> = phi3_want();
    // past the sixth term, compare against the computed terms of E
    for i in e.lo() + 6..=e.hi() {
        want.push(sorted(&e.term(i).unwrap()));
    }
    let mut checked = 0;
    for (k, gens) in want.iter().enumerate() {
        let i = e.lo() + k as i32;
        check(sorted(&e.term(i).unwrap()) == *gens, || format!("Φ term {i}"))?;
        let term = ModuleComplex::concentrated(PresentedModule::free(FreeModule::new(gens.clone())), 0);
        let p = psi(&g, &term, 3, None).map_err(|e| e.to_string())?;
        for j in 3..=10 {
            let expect: usize = gens.iter().map(|&a| hf27(j - a)).sum();
            let h0 = p.cohomology_dim(&g.ring, 0, j);
            check(h0 == expect, || format!("term {i} degree {j}: H^0 {h0}, expected {expect}"))?;
            for n in 1..=p.cutoff {
                let h = p.cohomology_dim(&g.ring, n, j);
                check(h == 0, || format!("term {i} degree {j}: H^{n} = {h}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{} terms, {checked} (term, degree) pairs in 3..10", want.len()))
}

/// A bounded free complex with every twist in `[-4, 4]`, at most three
/// differentials and nonzero cohomology.
fn perfect_complex(r: &QuotientRing, g: &mut rand_chacha::ChaCha8Rng) -> FreeComplex {
    loop {
        let len = g.gen_range(1..=3);
        let c = free_complex(r, len, -4, 1, g);
        let ok = c.terms().iter().all(|m| m.degrees().iter().all(|d| (-4..=4).contains(d)));
        if ok && !c.cohomology_support(r).is_empty() {
            return c;
        }
    }
}

fn c5() -> Outcome {
    let rings = [g27(), gorenstein(&["x", "y", "z"], &["x^3+y^3+z^3"])];
    let mut g = rng(2024);
    let (mut total, mut modules, mut nonzero) = (0, 0, 0);
    for gr in &rings {
        for _ in 0..12 {
            let f = perfect_complex(&gr.ring, &mut g);
            let c = ModuleComplex::from_free(&f).unwrap();
            let t = g.gen_range(-2..=2);
            let out = phi(gr, &c, t, 10, PhiOptions::default()).map_err(|e| format!("case {total}: {e}"))?;
            total += 1;
            if !out.is_zero() {
                nonzero += 1;
            }
            let report = out.cohomology_report(&gr.ring).ok_or_else(|| format!("case {total}: no full model"))?;
            for h in report {
                modules += 1;
                let at = finite_length_certificate(&gr.ring, &h.module, 12).ok_or_else(|| format!("case {total}: H^{} not finite length", h.index))?;
                for deg in at..=at + 6 {
                    let v = h.module.hilbert_value(&gr.ring, deg);
                    check(v == 0, || format!("case {total}: H^{} has dim {v} in degree {deg}", h.index))?;
                }
            }
        }
    }
    check(total >= 20, || format!("only {total} complexes"))?;
    Ok(format!("{total} complexes, {modules} cohomology modules certified, {nonzero} with nonzero E"))
}

fn c6() -> Outcome {
    let g = gorenstein(&["x", "y"], &["x*y"]);
    let m = PresentedModule::quotient_of_ring(&[g.ring.poly("x").unwrap()]);
    let out = phi(&g, &ModuleComplex::concentrated(m, 0), 0, 8, PhiOptions::default()).map_err(|e| e.to_string())?;
    let report = out.cohomology_report(&g.ring).ok_or("no full model")?;
    let big: Vec<_> = report.iter().filter(|h| h.finite_length_at.is_none()).collect();
    check(big.len() == 1, || format!("{} non-finite-length modules", big.len()))?;
    let h = &big[0];
    for deg in 2..=10 {
        // M = k[y]: one monomial per degree
        let v = h.module.hilbert_value(&g.ring, deg);
        check(v == 1, || format!("H^{} has dim {v} in degree {deg}", h.index))?;
    }
    Ok(format!("one module, H^{}, HF = 1 on [2, 10]", h.index))
}

fn c7() -> Outcome {
    let g = gorenstein(&["x", "y", "z"], &["x^3+y^3+z^3"]);
    check(g.a() == 0 && g.d() == 2, || format!("a = {}, d = {}", g.a(), g.d()))?;
    let r = &g.ring;
    let k = PresentedModule::quotient_of_ring(&[r.poly("x").unwrap(), r.poly("y").unwrap(), r.poly("z").unwrap()]);
    let out = phi(&g, &ModuleComplex::concentrated(k, 0), 0, 8, PhiOptions::default()).map_err(|e| e.to_string())?;
    let report = out.cohomology_report(r).ok_or("no full model")?;
    let big: Vec<_> = report.iter().filter(|h| h.finite_length_at.is_none()).collect();
    check(big.len() == 1, || format!("{} non-finite-length modules", big.len()))?;
    let h = &big[0];
    check(h.index == -1, || format!("sits in degree {}", h.index))?;
    for deg in 1..=10 {
        // plane cubic: dim R_j = 3j for j ≥ 1
        let v = h.module.hilbert_value(r, deg);
        check(v == 3 * deg as usize, || format!("degree {deg}: {v}"))?;
    }
    Ok("H^-1 only, HF = 3j on [1, 10]".into())
}

fn c8() -> Outcome {
    let g = g27();
    let m = m27(&g);
    let mut rg = rng(8);
    let mut psi_compared = 0;
    let mut dims_compared = 0;
    for case in 0..10 {
        let t = rg.gen_range(-3..=3);
        let j = rg.gen_range(-3..=3);
        let rep = twist_compat_check(&g, &m, t, j, 5).map_err(|e| format!("(t, j) = ({t}, {j}): {e}"))?;
        check(rep.phi_twists_equal && rep.phi_matrices_equal, || format!("Φ fails at (t, j) = ({t}, {j})"))?;
        if case < 5 {
            check(rep.psi_terms_equal && rep.psi_dims_equal, || format!("Ψ fails at (t, j) = ({t}, {j})"))?;
            psi_compared += 1;
            dims_compared += rep.psi_dims.len();
        }
    }
    Ok(format!("10 Φ pairs, {psi_compared} Ψ pairs ({dims_compared} cohomology dimensions compared)"))
}

fn c9() -> Outcome {
    // a few more invocations on random modules, on top of everything above
    let g = g27();
    let mut rg = rng(9);
    for _ in 0..8 {
        let c = ModuleComplex::concentrated(module(&g.ring, &mut rg), 0);
        let t = rg.gen_range(-3..=3);
        phi(&g, &c, t, 4, PhiOptions::default()).map_err(|e| e.to_string())?;
    }
    let (checks, violations) = window_check_counts();
    check(checks > 0, || "no window assertions ran".into())?;
    check(violations == 0, || format!("{violations} of {checks} window assertions violated"))?;
    Ok(format!("{checks} window assertions, 0 violations"))
}

fn c10() -> Outcome {
    let g = g27();
    let c = unit();
    let p0 = psi(&g, &c, g.a(), None).map_err(|e| e.to_string())?;
    let p1 = psi(&g, &c, g.a(), Some(p0.r + 1)).map_err(|e| e.to_string())?;
    let mut n_checked = 0;
    for n in p0.lo()..=p0.cutoff {
        for j in 0..=8 {
            let (a, b) = (p0.cohomology_dim(&g.ring, n, j), p1.cohomology_dim(&g.ring, n, j));
            check(a == b, || format!("H^{n}_{j}: {a} with r = {}, {b} with r = {}", p0.r, p1.r))?;
            n_checked += 1;
        }
    }
    Ok(format!("r = {} and {}, {n_checked} pieces equal", p0.r, p1.r))
}

fn c11() -> Outcome {
    let start = Instant::now();
    let p2 = gorenstein(&["x", "y", "z"], &[]);
    let o = unit();
    let h: Vec<usize> = (0..3).map(|i| hypercohomology(&p2, &o, i, 0).unwrap()).collect();
    check(h == vec![1, 0, 0], || format!("P^2: {h:?}"))?;
    let e = gorenstein(&["x", "y", "z"], &["x^3+y^3+z^3"]);
    let o = unit();
    let h: Vec<usize> = (0..2).map(|i| hypercohomology(&e, &o, i, 0).unwrap()).collect();
    check(h == vec![1, 1], || format!("cubic: {h:?}"))?;
    let took = start.elapsed();
    check(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("(1, 0, 0) and (1, 1) in {took:.2?}"))
}

fn c12() -> Outcome {
    let five = ["x0", "x1", "x2", "x3", "x4"];
    let cases: Vec<(&str, QuotientRing, Vec<i32>, i32)> = vec![
        ("(2,3) complete intersection in P^4", ring(&five, &["x0^2+x1^2+x2^2+x3^2+x4^2", "x0^3+x1^3+x2^3+x3^3+x4^3"]), vec![2, 3], 0),
        ("conic in P^2", ring(&["x", "y", "z"], &["x^2+y^2+z^2"]), vec![2], 1),
        ("P^2", ring(&["x", "y", "z"], &[]), vec![], 3),
        ("P^4", ring(&five, &[]), vec![], 5),
    ];
    for (name, r, degs, want) in cases {
        let data = gorenstein_data(&r);
        check(data.is_gorenstein, || format!("{name}: not Gorenstein"))?;
        let formula = r.nvars() as i32 - degs.iter().sum::<i32>();
        check(data.a == want && formula == want, || format!("{name}: a = {}, formula {formula}, expected {want}", data.a))?;
    }
    Ok("a = 0, 1, n + 1 exact and equal to n + 1 - Σ deg".into())
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 resolution of coker(x0, x2)", c1),
        ("2 dual and its resolution G", c2),
        ("3 first six terms of Φ_3(M)", c3),
        ("4 termwise Ψ_3Φ_3(M)", c4),
        ("5 perfect complexes vanish", c5),
        ("6 hypersurface MCM", c6),
        ("7 Φ_0(k) on the Fermat cubic", c7),
        ("8 twist compatibility", c8),
        ("9 vanishing windows", c9),
        ("10 Ψ independent of r", c10),
        ("11 hypercohomology sanity", c11),
        ("12 Gorenstein parameters", c12),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        match res {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                println!("FAIL  criterion {name}: {why} [{took:.2?}]");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
