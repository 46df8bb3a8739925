//! Property tests for complexes, resolutions and the functors.

mod common;

use common::*;
use orlov::complex::{hom_complex, resolve_complex};
use orlov::orlov::{phi, psi, twist_compat_check};
use orlov::resolution::{gorenstein_data, resolve_over_s};
use orlov::{BettiTable, FreeComplex, FreeModule, GorensteinRing, GradedMap, ModuleComplex, PhiOptions, QuotientRing, Vector};
use proptest::prelude::*;
use rand::Rng;

fn sorted(m: &FreeModule) -> Vec<i32> {
    let mut d = m.degrees().to_vec();
    d.sort();
    d
}

/// `F ⊕ (R(-a) --1--> R(-a))` at indices `i, i+1`, with the new generator of
/// `F^{i+1}` then mixed into an old one by an elementary automorphism.
fn add_trivial_summand(r: &QuotientRing, f: &FreeComplex, i: i32, a: i32, g: &mut rand_chacha::ChaCha8Rng) -> FreeComplex {
    let one = FreeModule::new(vec![a]);
    let mut terms: Vec<FreeModule> = f.terms().to_vec();
    let mut diffs: Vec<GradedMap> = f.diffs().to_vec();
    let k = (i - f.lo()) as usize;
    terms[k] = terms[k].direct_sum(&one);
    terms[k + 1] = terms[k + 1].direct_sum(&one);
    if k > 0 {
        let z = GradedMap::zero(f.term(i - 1).unwrap(), one.clone());
        diffs[k - 1] = stack(r, &diffs[k - 1], &z);
    }
    diffs[k] = diffs[k].direct_sum(r, &GradedMap::identity(one.clone()));
    if k + 1 < diffs.len() {
        let z = GradedMap::zero(one.clone(), diffs[k + 1].target().clone());
        diffs[k + 1] = diffs[k + 1].hconcat(&z);
    }
    // U = I + N on term k+1, N sending the new generator e to p * (old generator q)
    let tk1 = terms[k + 1].clone();
    let e = tk1.rank() - 1;
    let cands: Vec<usize> = (0..e).filter(|&q| tk1.degrees()[q] <= a).collect();
    if let Some(&q) = cands.first() {
        let p = poly(r, a - tk1.degrees()[q], 2, g);
        let mut cols: Vec<Vector> = (0..tk1.rank()).map(|_| Vector::zero()).collect();
        cols[e] = Vector::from_poly(q, &r.reduce(&p));
        let n = GradedMap::from_columns(tk1.clone(), tk1.clone(), cols);
        let u = GradedMap::identity(tk1.clone()).add(r, &n);
        let u_inv = GradedMap::identity(tk1.clone()).add(r, &n.neg(r));
        diffs[k] = u.compose(r, &diffs[k]);
        if k + 1 < diffs.len() {
            diffs[k + 1] = diffs[k + 1].compose(r, &u_inv);
        }
    }
    FreeComplex::new(f.lo(), terms, diffs)
}

/// `[m; z]`: same source, targets stacked.
fn stack(r: &QuotientRing, m: &GradedMap, z: &GradedMap) -> GradedMap {
    let s = m.direct_sum(r, z);
    let cols: Vec<Vector> = s.columns()[..m.source().rank()].to_vec();
    GradedMap::from_columns(m.source().clone(), s.target().clone(), cols)
}

fn cohomology_hf(r: &QuotientRing, f: &FreeComplex, i: i32) -> Vec<(i32, usize)> {
    f.cohomology(r, i).unwrap().hilbert_function(r, -2, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructions_are_complexes(seed in any::<u64>(), j in -2i32..4, k in -2i32..3) {
        let r = ring27();
        let mut g = rng(seed);
        let f = free_complex(&r, 3, -1, 2, &mut g);
        prop_assert!(f.is_complex(&r));
        prop_assert!(f.shift(&r, k).is_complex(&r));
        prop_assert!(f.twist(k).is_complex(&r));
        prop_assert!(f.dual(&r).is_complex(&r));
        prop_assert!(f.truncate_geq(&r, j).is_complex(&r));
        prop_assert!(f.truncate_lt(&r, j).is_complex(&r));
        let small = f.restrict(f.hi() - 1, f.hi()).with_open_below(false);
        prop_assert!(hom_complex(&r, &small, &small).is_complex(&r));
    }

    #[test]
    fn degree_truncations_partition(seed in any::<u64>(), j in -2i32..5) {
        let r = ring27();
        let mut g = rng(seed);
        let f = free_complex(&r, 3, -1, 2, &mut g);
        let ge = f.truncate_geq(&r, j);
        let lt = f.truncate_lt(&r, j);
        for i in f.lo()..=f.hi() {
            let mut both: Vec<i32> = ge.term(i).unwrap().degrees().iter().chain(lt.term(i).unwrap().degrees()).copied().collect();
            both.sort();
            prop_assert_eq!(both, sorted(&f.term(i).unwrap()));
            prop_assert!(ge.term(i).unwrap().degrees().iter().all(|&d| d >= j));
            prop_assert!(lt.term(i).unwrap().degrees().iter().all(|&d| d < j));
        }
    }

    #[test]
    fn twist_commutes_with_truncation(seed in any::<u64>(), j in -3i32..4, t in -2i32..4) {
        let r = ring27();
        let mut g = rng(seed);
        let f = free_complex(&r, 3, -1, 2, &mut g);
        prop_assert_eq!(f.twist(j).truncate_geq(&r, t - j), f.truncate_geq(&r, t).twist(j));
        prop_assert_eq!(f.twist(j).truncate_lt(&r, t - j), f.truncate_lt(&r, t).twist(j));
    }

    #[test]
    fn hom_sign_rule(seed in any::<u64>()) {
        let r = ring27();
        let fld = r.field();
        let mut g = rng(seed);
        let c = free_complex(&r, 2, 0, 2, &mut g);
        let d = free_complex(&r, 2, 0, 2, &mut g);
        let h = hom_complex(&r, &c, &d);
        let j = g.gen_range(h.lo()..h.hi().max(h.lo() + 1));
        prop_assume!(j < h.hi());
        // α_i : C^i → D^{i+j}, degree 0
        let alpha: Vec<(i32, GradedMap)> = (c.lo()..=c.hi())
            .map(|i| {
                let s = c.term(i).unwrap();
                let t = d.term(i + j).unwrap();
                (i, map(&r, s.degrees(), t.degrees(), 0.7, &mut g))
            })
            .collect();
        let encode = |blocks: &[(i32, GradedMap)], jj: i32| -> Vector {
            let mut v = Vector::zero();
            let mut off = 0;
            for i in c.lo()..=c.hi() {
                let cr = c.term(i).unwrap().rank();
                let dr = d.term(i + jj).unwrap().rank();
                if let Some((_, a)) = blocks.iter().find(|b| b.0 == i) {
                    for p in 0..cr {
                        for q in 0..dr {
                            v = v.add(fld, &Vector::from_poly(off + p * dr + q, &a.entry(q, p)));
                        }
                    }
                }
                off += cr * dr;
            }
            v
        };
        let v = encode(&alpha, j);
        let got = r.reduce_vector(&h.diff(j).unwrap().apply(&r, &v));
        let sgn = if j % 2 == 0 { 1 } else { fld.neg(1) };
        let mut expect = Vec::new();
        for i in c.lo()..=c.hi() {
            let s = c.term(i).unwrap();
            let t = d.term(i + j + 1).unwrap();
            let mut m = GradedMap::zero(s.clone(), t.clone());
            if let (Ok(dd), Some((_, a))) = (d.diff(i + j), alpha.iter().find(|b| b.0 == i)) {
                if !d.term(i + j).unwrap().is_zero() && !t.is_zero() {
                    m = m.add(&r, &dd.compose(&r, a));
                }
            }
            if let (Ok(dc), Some((_, a1))) = (c.diff(i), alpha.iter().find(|b| b.0 == i + 1)) {
                if i < c.hi() {
                    m = m.add(&r, &a1.compose(&r, &dc).scale(&r, fld.neg(sgn)));
                }
            }
            expect.push((i, m));
        }
        prop_assert_eq!(got, r.reduce_vector(&encode(&expect, j + 1)));
    }

    #[test]
    fn minimize_preserves_cohomology(seed in any::<u64>()) {
        let r = ring27();
        let mut g = rng(seed);
        let f = free_complex(&r, 3, 0, 2, &mut g);
        prop_assume!(f.hi() > f.lo());
        let i = g.gen_range(f.lo()..f.hi());
        let a = g.gen_range(1..=3);
        let big = add_trivial_summand(&r, &f, i, a, &mut g);
        prop_assert!(big.is_complex(&r));
        prop_assert!(!big.is_minimal());
        let small = big.minimize(&r);
        prop_assert!(small.is_minimal());
        for k in f.lo()..=f.hi() {
            prop_assert_eq!(sorted(&small.term(k).unwrap()), sorted(&f.term(k).unwrap()));
            prop_assert_eq!(cohomology_hf(&r, &small, k), cohomology_hf(&r, &big, k));
        }
    }

    #[test]
    fn resolve_complex_is_minimal_quasi_isomorphism(seed in any::<u64>()) {
        let r = ring27();
        let mut g = rng(seed);
        // a two-term complex of modules M0 → M1 given by a random matrix on
        // generators, with M1 free so the map is always well defined
        let m0 = module(&r, &mut g);
        let t1 = degrees(g.gen_range(1..=2), -1, 0, &mut g);
        let d = map(&r, m0.generators().degrees(), &t1, 0.8, &mut g);
        let c = ModuleComplex::new(0, vec![m0, orlov::PresentedModule::free(FreeModule::new(t1))], vec![d]);
        let f = resolve_complex(&r, &c, -3);
        prop_assert!(f.is_minimal());
        prop_assert!(f.is_complex(&r));
        for i in -2..=1 {
            let hc = c.cohomology(&r, i).hilbert_function(&r, -2, 5);
            let hf = f.cohomology(&r, i).unwrap().hilbert_function(&r, -2, 5);
            prop_assert_eq!(hc, hf, "H^{}", i);
        }
    }

    #[test]
    fn s_resolution_betti_numbers(seed in any::<u64>()) {
        let r = ring27();
        let s = r.ambient();
        let mut g = rng(seed);
        let m = module(&s, &mut g);
        let f = resolve_over_s(&s, &m);
        prop_assert!(f.lo() >= -(s.nvars() as i32));
        prop_assert!(!f.open_below());
        prop_assert!(f.is_minimal());
        // Σ_i (-1)^i β_{i,j} = coefficient of t^j in HS(M) (1-t)^{n+1}
        let b = BettiTable::from_complex(&f);
        let nv = s.nvars() as i32;
        for j in -1..8 {
            let alt: i64 = (0..=nv).map(|i| if i % 2 == 0 { 1 } else { -1 } * b.get(i, j) as i64).sum();
            let binom = |k: i32| -> i64 { if k < 0 || k > nv { 0 } else { (1..=k as i64).fold(1, |acc, x| acc * (nv as i64 - x + 1) / x) } };
            let conv: i64 = (0..=nv).map(|k| if k % 2 == 0 { 1 } else { -1 } * binom(k) * m.hilbert_value(&s, j - k) as i64).sum();
            prop_assert_eq!(alt, conv, "degree {}", j);
        }
    }

    #[test]
    fn complete_intersection_a_invariant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let nv = g.gen_range(3..=5);
        let names = ["a", "b", "c", "d", "e"];
        let s = ring(&names[..nv], &[]);
        let k = g.gen_range(1..=2);
        let degs: Vec<i32> = (0..k).map(|_| g.gen_range(2..=3)).collect();
        let gens: Vec<String> = degs.iter().map(|&d| s.display(&poly(&s, d, 6, &mut g))).collect();
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let q = ring(&names[..nv], &refs);
        let data = gorenstein_data(&q);
        prop_assume!(data.codim == k as i32);
        prop_assert!(data.is_gorenstein);
        prop_assert_eq!(data.a, nv as i32 - degs.iter().sum::<i32>());
        // self-duality of the Betti table
        let last = data.betti.max_degree(data.pd as i32).unwrap();
        for (&(i, j), &v) in data.betti.entries() {
            prop_assert_eq!(data.betti.get(data.codim - i, last - j), v);
        }
    }
}

fn g27() -> GorensteinRing {
    GorensteinRing::new(ring27()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn phi_windows_and_stability(seed in any::<u64>(), t in -2i32..4) {
        let g = g27();
        let mut rg = rng(seed);
        let c = ModuleComplex::concentrated(module(&g.ring, &mut rg), 0);
        // window assertions run inside phi; a violation is an error
        let a = phi(&g, &c, t, 3, PhiOptions::default()).unwrap();
        let b = phi(&g, &c, t, 5, PhiOptions::default()).unwrap();
        let ta = a.twist_data();
        let tb: Vec<_> = b.twist_data().into_iter().take(ta.len()).collect();
        prop_assert_eq!(ta, tb);
    }

    #[test]
    fn twist_compatibility_random(seed in any::<u64>(), t in -3i32..=3, j in -3i32..=3) {
        let g = g27();
        let mut rg = rng(seed);
        let c = ModuleComplex::concentrated(module(&g.ring, &mut rg), 0);
        let rep = twist_compat_check(&g, &c, t, j, 4).unwrap();
        prop_assert!(rep.holds(), "{:?}", rep);
    }

    #[test]
    fn psi_independent_of_r(seed in any::<u64>()) {
        let g = GorensteinRing::new(ring(&["x", "y", "z"], &["x^3+y^3+z^3"])).unwrap();
        let mut rg = rng(seed);
        let c = ModuleComplex::concentrated(module(&g.ring, &mut rg), 0);
        let p0 = psi(&g, &c, g.a(), None).unwrap();
        prop_assume!(!p0.is_zero());
        let p1 = psi(&g, &c, g.a(), Some(p0.r + 1)).unwrap();
        for n in p0.lo()..=p0.cutoff {
            for w in 0..4 {
                prop_assert_eq!(p0.cohomology_dim(&g.ring, n, w), p1.cohomology_dim(&g.ring, n, w), "H^{}_{}", n, w);
            }
        }
    }
}
