#![allow(dead_code)]

use orlov::{FreeComplex, FreeModule, GradedMap, Monomial, Poly, PresentedModule, QuotientRing, Vector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: u32 = 32003;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(vars: &[&str], ideal: &[&str]) -> QuotientRing {
    QuotientRing::parse(P, vars, ideal).unwrap()
}

pub fn ring27() -> QuotientRing {
    ring(&["x0", "x1", "x2", "x3", "x4"], &["x0*x1", "x2*x3*x4"])
}

pub fn module27(r: &QuotientRing) -> PresentedModule {
    let cols = vec![Vector::from_poly(0, &r.poly("x0").unwrap()), Vector::from_poly(0, &r.poly("x2").unwrap())];
    PresentedModule::cokernel(GradedMap::from_columns(FreeModule::new(vec![1, 1]), FreeModule::new(vec![0]), cols))
}

/// A random homogeneous polynomial of degree `d` with at most `terms` terms.
pub fn poly(r: &QuotientRing, d: i32, terms: usize, g: &mut ChaCha8Rng) -> Poly {
    if d < 0 {
        return Poly::zero();
    }
    let mons = Monomial::all_of_degree(r.nvars(), d as u32);
    let f = r.field();
    let picked: Vec<(Monomial, u32)> = (0..terms)
        .map(|_| (*mons.choose(g).unwrap(), g.gen_range(1..P)))
        .collect();
    Poly::from_terms(f, picked)
}

/// A random homogeneous map `⊕R(-src) → ⊕R(-tgt)`, reduced modulo the ideal.
pub fn map(r: &QuotientRing, src: &[i32], tgt: &[i32], density: f64, g: &mut ChaCha8Rng) -> GradedMap {
    let f = r.field();
    let cols = src
        .iter()
        .map(|&s| {
            let mut entries: Vec<(usize, Poly)> = Vec::new();
            for (i, &t) in tgt.iter().enumerate() {
                if g.gen_bool(density) {
                    entries.push((i, r.reduce(&poly(r, s - t, 2, g))));
                }
            }
            Vector::from_entries(f, entries)
        })
        .collect();
    GradedMap::from_columns(FreeModule::new(src.to_vec()), FreeModule::new(tgt.to_vec()), cols)
}

pub fn degrees(n: usize, lo: i32, hi: i32, g: &mut ChaCha8Rng) -> Vec<i32> {
    (0..n).map(|_| g.gen_range(lo..=hi)).collect()
}

/// A random module `coker(R(-a)^k → R(-b)^l)` with small degrees.
pub fn module(r: &QuotientRing, g: &mut ChaCha8Rng) -> PresentedModule {
    let tgt = degrees(g.gen_range(1..=2), 0, 1, g);
    let src = degrees(g.gen_range(1..=3), 1, 3, g);
    PresentedModule::cokernel(map(r, &src, &tgt, 0.8, g))
}

/// A random bounded free complex with `len` differentials: each term is a
/// truncated resolution step, so `d² = 0` by construction.
pub fn free_complex(r: &QuotientRing, len: usize, twist_lo: i32, twist_hi: i32, g: &mut ChaCha8Rng) -> FreeComplex {
    let m = {
        let tgt = degrees(g.gen_range(1..=2), twist_lo, twist_hi, g);
        let lo = *tgt.iter().min().unwrap() + 1;
        let src = degrees(g.gen_range(1..=2), lo, (lo + 2).min(twist_hi.max(lo)), g);
        PresentedModule::cokernel(map(r, &src, &tgt, 0.9, g))
    };
    let f = orlov::resolve_module(r, &m, len);
    let shift = g.gen_range(-1..=1);
    f.restrict(f.lo().max(-(len as i32)), 0).with_open_below(false).shift(r, shift)
}
