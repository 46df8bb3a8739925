//! Property tests for linear algebra, polynomials, Gröbner bases and modules.

mod common;

use common::*;
use orlov::groebner::{buchberger, kernel_of_map, Over};
use orlov::module::{degree_piece_map, truncate_module};
use orlov::{ExactMatrix, Fp, Monomial, Vector};
use proptest::prelude::*;
use rand::Rng;

fn random_matrix(seed: u64, p: u32) -> ExactMatrix {
    let mut g = rng(seed);
    let (r, c) = (g.gen_range(1..7), g.gen_range(1..7));
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..c).map(|_| if g.gen_bool(0.5) { g.gen_range(0..p as i64) } else { 0 }).collect())
        .collect();
    ExactMatrix::from_rows(Fp::new(p).unwrap(), &rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_annihilated(seed in any::<u64>(), small in any::<bool>()) {
        let m = random_matrix(seed, if small { 3 } else { P });
        let k = m.kernel_basis();
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert_eq!(k.rref().rank, k.cols());
    }

    #[test]
    fn rref_is_idempotent(seed in any::<u64>()) {
        let m = random_matrix(seed, 5);
        let once = m.rref().reduced;
        prop_assert_eq!(once.rref().reduced, once);
    }

    #[test]
    fn solve_round_trip(seed in any::<u64>()) {
        let m = random_matrix(seed, 7);
        let mut g = rng(seed ^ 1);
        let b: Vec<u32> = (0..m.rows()).map(|_| g.gen_range(0..7)).collect();
        if let Some(x) = m.solve(&b) {
            prop_assert_eq!(m.apply(&x), b);
        }
        // a consistent system always solves
        let x0: Vec<u32> = (0..m.cols()).map(|_| g.gen_range(0..7)).collect();
        let b0 = m.apply(&x0);
        let x = m.solve(&b0);
        prop_assert!(x.is_some());
        prop_assert_eq!(m.apply(&x.unwrap()), b0);
    }

    #[test]
    fn normal_form_idempotent_and_linear(seed in any::<u64>()) {
        let r = ring27();
        let f = r.field();
        let mut g = rng(seed);
        let d = g.gen_range(0..6);
        let a = poly(&r, d, 5, &mut g);
        let b = poly(&r, d, 5, &mut g);
        let na = r.reduce(&a);
        prop_assert_eq!(r.reduce(&na), na.clone());
        let nb = r.reduce(&b);
        prop_assert_eq!(r.reduce(&a.add(f, &b)), r.reduce(&na.add(f, &nb)));
    }

    #[test]
    fn ring_axioms_by_evaluation(seed in any::<u64>()) {
        let s = ring(&["x", "y", "z", "w"], &[]);
        let f = s.field();
        let mut g = rng(seed);
        let [a, b, c] = [0, 1, 2].map(|_| { let d = g.gen_range(0..4); poly(&s, d, 4, &mut g) });
        let pt: Vec<u32> = (0..4).map(|_| g.gen_range(0..P)).collect();
        let ev = |p: &orlov::Poly| p.eval(f, &pt);
        prop_assert_eq!(ev(&a.mul(f, &b)), f.mul(ev(&a), ev(&b)));
        prop_assert_eq!(ev(&a.add(f, &b)), f.add(ev(&a), ev(&b)));
        prop_assert_eq!(a.mul(f, &b).mul(f, &c), a.mul(f, &b.mul(f, &c)));
        prop_assert_eq!(a.mul(f, &b.add(f, &c)), a.mul(f, &b).add(f, &a.mul(f, &c)));
        prop_assert!(a.sub(f, &a).is_zero());
    }

    #[test]
    fn groebner_matches_degreewise_span(seed in any::<u64>()) {
        let mut g = rng(seed);
        let nv = g.gen_range(2..=4);
        let names = ["a", "b", "c", "d"];
        let s = ring(&names[..nv], &[]);
        let gens: Vec<orlov::Poly> = (0..g.gen_range(1..=3))
            .map(|_| { let d = g.gen_range(1..=3); poly(&s, d, 3, &mut g) })
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let text: Vec<String> = gens.iter().map(|p| s.display(p)).collect();
        let refs: Vec<&str> = text.iter().map(String::as_str).collect();
        let q = ring(&names[..nv], &refs);
        for d in 0..=6 {
            // oracle: span of all monomial multiples of the generators in S_d
            let mons = Monomial::all_of_degree(nv, d as u32);
            let index = |m: &Monomial| mons.iter().position(|x| x == m).unwrap();
            let mut rows = Vec::new();
            for p in &gens {
                let e = p.degree().unwrap() as i32;
                if e > d { continue; }
                for m in Monomial::all_of_degree(nv, (d - e) as u32) {
                    let prod = p.mul_monomial(s.field(), &m, 1);
                    let mut row: Vec<(usize, u32)> = prod.terms().iter().map(|(mm, c)| (index(mm), *c)).collect();
                    row.sort();
                    rows.push(row);
                }
            }
            let span = ExactMatrix::from_sparse_rows(s.field(), mons.len(), rows).rank();
            prop_assert_eq!(q.hilbert_function(d), mons.len() - span, "degree {}", d);
        }
    }

    #[test]
    fn syzygies_compose_to_zero(seed in any::<u64>()) {
        let r = ring27();
        let mut g = rng(seed);
        let tgt = degrees(g.gen_range(1..=2), 0, 1, &mut g);
        let src = degrees(g.gen_range(1..=3), 1, 2, &mut g);
        let m = map(&r, &src, &tgt, 0.8, &mut g);
        for over in [Over::S, Over::R] {
            let k = kernel_of_map(&r, &m, over);
            prop_assert!(m.compose(&r, &k).reduced(&r).is_zero());
        }
    }

    #[test]
    fn quotient_kernels_match_linear_algebra(seed in any::<u64>()) {
        let r = ring27();
        let mut g = rng(seed);
        let tgt = degrees(g.gen_range(1..=2), 0, 1, &mut g);
        let src = degrees(g.gen_range(1..=3), 1, 2, &mut g);
        let m = map(&r, &src, &tgt, 0.8, &mut g);
        let k = kernel_of_map(&r, &m, Over::R);
        for d in 0..=5 {
            let md = degree_piece_map(&r, &m, d);
            let kd = degree_piece_map(&r, &k, d);
            prop_assert_eq!(kd.rank(), md.cols() - md.rank(), "degree {}", d);
        }
    }

    #[test]
    fn piece_maps_respect_composition(seed in any::<u64>()) {
        let r = ring27();
        let mut g = rng(seed);
        let a = degrees(2, 0, 1, &mut g);
        let b = degrees(2, 1, 2, &mut g);
        let c = degrees(2, 2, 3, &mut g);
        let f = map(&r, &b, &a, 0.8, &mut g);
        let h = map(&r, &c, &b, 0.8, &mut g);
        for d in 0..=5 {
            let lhs = degree_piece_map(&r, &f.compose(&r, &h), d);
            let rhs = degree_piece_map(&r, &f, d).mul(&degree_piece_map(&r, &h, d));
            prop_assert_eq!(lhs, rhs, "degree {}", d);
        }
    }

    #[test]
    fn minimal_presentation_keeps_hilbert_function(seed in any::<u64>()) {
        let r = ring27();
        let mut g = rng(seed);
        let m = module(&r, &mut g);
        let min = m.minimal_presentation(&r).module;
        prop_assert_eq!(m.hilbert_function(&r, -1, 5), min.hilbert_function(&r, -1, 5));
        prop_assert!(min.presentation().is_minimal());
    }

    #[test]
    fn truncation_hilbert_function(seed in any::<u64>(), s in -1i32..4) {
        let r = ring27();
        let mut g = rng(seed);
        let m = module(&r, &mut g);
        let t = truncate_module(&r, &m, s);
        for d in -1..=6 {
            let want = if d >= s { m.hilbert_value(&r, d) } else { 0 };
            prop_assert_eq!(t.hilbert_value(&r, d), want, "degree {}", d);
        }
    }

    #[test]
    fn maps_are_homogeneous(seed in any::<u64>()) {
        let r = ring27();
        let mut g = rng(seed);
        let m = map(&r, &[2, 3], &[0, 1], 1.0, &mut g);
        for (c, col) in m.columns().iter().enumerate() {
            prop_assert!(col.is_homogeneous(m.target().degrees()));
            if let Some(deg) = col.degree(m.target().degrees()) {
                prop_assert_eq!(deg, m.source().degrees()[c]);
            }
        }
        let bad = Vector::from_poly(0, &r.poly("x0^2").unwrap());
        prop_assert!(orlov::GradedMap::try_from_columns(orlov::FreeModule::new(vec![1]), orlov::FreeModule::new(vec![0]), vec![bad]).is_err());
    }
}

#[test]
fn groebner_basis_reduces_generators_to_zero() {
    let s = ring(&["x", "y", "z"], &[]);
    let gens: Vec<Vector> = ["x^2-y*z", "x*y-z^2"].iter().map(|p| Vector::from_poly(0, &s.poly(p).unwrap())).collect();
    let gb = buchberger(&s, &[0], &gens, Over::S);
    for v in &gens {
        assert!(gb.contains(v));
    }
    // the S-pair of x^2-yz and xy-z^2 leaves y^2z - xz^2
    assert!(gb.len() > gens.len());
}
