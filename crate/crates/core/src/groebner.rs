//! Homogeneous Buchberger algorithm for submodules of graded free modules,
//! Schreyer syzygies, kernels and lifts over `S` and over `R = S/I`.
//!
//! Computations over `R` adjoin `g * e_i` for every element `g` of the
//! Gröbner basis of `I` and every ambient generator `e_i`, and work over `S`.

use std::collections::BTreeMap;

use crate::field::Fp;
use crate::module::GradedMap;
use crate::poly::{Monomial, Poly};
use crate::ring::QuotientRing;
use crate::vector::Vector;

/// Which ring a computation is carried out over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Over {
    /// The polynomial ring `S`.
    S,
    /// The quotient `R = S/I`.
    R,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    deg: i32,
}

/// Incremental homogeneous Buchberger. Generators are inserted degree by
/// degree, so the generators that survive reduction form a minimal generating
/// set of the submodule they span together with any non-candidate input.
pub(crate) struct Builder {
    field: Fp,
    degrees: Vec<i32>,
    basis: Vec<Vector>,
    leads: Vec<(u32, Monomial)>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    rank_one: bool,
}

/// A generator queued for insertion; `candidate` tags it for minimality tracking.
pub(crate) struct Pending {
    pub vector: Vector,
    pub candidate: Option<usize>,
}

impl Builder {
    pub fn new(field: Fp, degrees: &[i32]) -> Self {
        Builder {
            field,
            degrees: degrees.to_vec(),
            basis: Vec::new(),
            leads: Vec::new(),
            by_comp: vec![Vec::new(); degrees.len()],
            pairs: Vec::new(),
            rank_one: degrees.len() == 1,
        }
    }

    fn find_divisor(&self, comp: u32, m: &Monomial) -> Option<usize> {
        self.by_comp[comp as usize].iter().copied().find(|&k| self.leads[k].1.divides(m))
    }

    /// Full reduction of `v` against the current basis.
    pub fn reduce(&self, v: Vector) -> Vector {
        let f = self.field;
        let mut rem = Vector::zero();
        let mut p = v;
        while let Some((c, m, coef)) = p.lead() {
            match self.find_divisor(c, &m) {
                Some(k) => {
                    let q = self.leads[k].1.quotient_of(&m);
                    p = p.add_scaled(f, &self.basis[k], f.neg(coef), &q);
                }
                None => {
                    let (t, rest) = p.split_lead();
                    rem.push_smaller(t);
                    p = rest;
                }
            }
        }
        rem
    }

    /// Reduction that records quotients: returns `(remainder, q)` with
    /// `v = sum_k q_k * basis_k + remainder`.
    pub fn reduce_tracking(&self, v: Vector) -> (Vector, BTreeMap<usize, Poly>) {
        let f = self.field;
        let mut quotients: BTreeMap<usize, Vec<(Monomial, u32)>> = BTreeMap::new();
        let mut rem = Vector::zero();
        let mut p = v;
        while let Some((c, m, coef)) = p.lead() {
            match self.find_divisor(c, &m) {
                Some(k) => {
                    let q = self.leads[k].1.quotient_of(&m);
                    quotients.entry(k).or_default().push((q, coef));
                    p = p.add_scaled(f, &self.basis[k], f.neg(coef), &q);
                }
                None => {
                    let (t, rest) = p.split_lead();
                    rem.push_smaller(t);
                    p = rest;
                }
            }
        }
        let q = quotients.into_iter().map(|(k, t)| (k, Poly::from_terms(f, t))).collect();
        (rem, q)
    }

    fn spair(&self, p: &Pair) -> Vector {
        let f = self.field;
        let (_, mi) = self.leads[p.i];
        let (_, mj) = self.leads[p.j];
        let qi = mi.quotient_of(&p.lcm);
        let qj = mj.quotient_of(&p.lcm);
        Vector::zero()
            .add_scaled(f, &self.basis[p.i], 1, &qi)
            .add_scaled(f, &self.basis[p.j], f.neg(1), &qj)
    }

    fn insert(&mut self, v: Vector) {
        let v = v.make_monic(self.field);
        let (c, m, _) = v.lead().expect("inserting zero vector");
        let k = self.basis.len();
        let lcm_of = |a: &Monomial| a.lcm(&m);
        // Gebauer-Moeller criterion B on existing pairs
        let leads = &self.leads;
        self.pairs.retain(|p| {
            if p.comp != c || !m.divides(&p.lcm) {
                return true;
            }
            lcm_of(&leads[p.i].1) == p.lcm || lcm_of(&leads[p.j].1) == p.lcm
        });
        let mut fresh: Vec<(Pair, bool)> = self.by_comp[c as usize]
            .iter()
            .map(|&i| {
                let l = lcm_of(&self.leads[i].1);
                let coprime = self.rank_one && self.leads[i].1.gcd_is_one(&m);
                let deg = l.degree() as i32 + self.degrees[c as usize];
                (Pair { i, j: k, lcm: l, comp: c, deg }, coprime)
            })
            .collect();
        // criterion M: drop pairs whose lcm is properly divisible by another's
        let lcms: Vec<Monomial> = fresh.iter().map(|p| p.0.lcm).collect();
        fresh.retain(|(p, _)| !lcms.iter().any(|l| *l != p.lcm && l.divides(&p.lcm)));
        // criterion F (and the product criterion for ideals)
        let mut kept: Vec<Pair> = Vec::new();
        let mut seen: Vec<Monomial> = Vec::new();
        for idx in 0..fresh.len() {
            let l = fresh[idx].0.lcm;
            if seen.contains(&l) {
                continue;
            }
            seen.push(l);
            let class: Vec<&(Pair, bool)> = fresh.iter().filter(|p| p.0.lcm == l).collect();
            if class.iter().any(|p| p.1) {
                continue;
            }
            kept.push(class[0].0.clone());
        }
        self.pairs.extend(kept);
        self.leads.push((c, m));
        self.by_comp[c as usize].push(k);
        self.basis.push(v);
    }

    /// Runs Buchberger on the queued generators. Returns, per candidate id, the
    /// reduced element it contributed (or `None` when it was redundant).
    pub fn run(&mut self, mut pending: Vec<Pending>) -> Vec<Option<Vector>> {
        let ncand = pending.iter().filter_map(|p| p.candidate).map(|c| c + 1).max().unwrap_or(0);
        let mut minimal = vec![None; ncand];
        pending.retain(|p| !p.vector.is_zero());
        let degs: Vec<i32> = pending
            .iter()
            .map(|p| p.vector.degree(&self.degrees).expect("nonzero"))
            .collect();
        for p in &pending {
            debug_assert!(p.vector.is_homogeneous(&self.degrees), "inhomogeneous generator");
        }
        let mut order: Vec<usize> = (0..pending.len()).collect();
        order.sort_by_key(|&i| (degs[i], i));
        let mut slots: Vec<Option<Pending>> = pending.into_iter().map(Some).collect();
        let mut gi = 0;
        loop {
            let dp = self.pairs.iter().map(|p| p.deg).min();
            let dg = order.get(gi).map(|&i| degs[i]);
            let d = match (dp, dg) {
                (None, None) => break,
                (Some(a), None) | (None, Some(a)) => a,
                (Some(a), Some(b)) => a.min(b),
            };
            let mut batch: Vec<Pair> = Vec::new();
            self.pairs.retain(|p| {
                if p.deg == d {
                    batch.push(p.clone());
                    false
                } else {
                    true
                }
            });
            batch.sort_by_key(|p| (p.j, p.i));
            for p in &batch {
                let r = self.reduce(self.spair(p));
                if !r.is_zero() {
                    self.insert(r);
                }
            }
            while gi < order.len() && degs[order[gi]] == d {
                let p = slots[order[gi]].take().unwrap();
                gi += 1;
                let r = self.reduce(p.vector);
                if !r.is_zero() {
                    let r = r.make_monic(self.field);
                    if let Some(c) = p.candidate {
                        minimal[c] = Some(r.clone());
                    }
                    self.insert(r);
                }
            }
        }
        minimal
    }

    /// Tail-reduces every element, producing the reduced basis.
    pub fn finish(mut self) -> GroebnerBasis {
        for k in 0..self.basis.len() {
            let v = std::mem::take(&mut self.basis[k]);
            let (lead, tail) = v.split_lead();
            let mut out = Vector::zero();
            out.push_smaller(lead);
            let tail = self.reduce(tail);
            out = out.add(self.field, &tail);
            self.basis[k] = out;
        }
        // deterministic canonical order: by lead, descending
        let mut idx: Vec<usize> = (0..self.basis.len()).collect();
        idx.sort_by(|&a, &b| {
            crate::vector::pot_cmp(&self.leads[b], &self.leads[a])
        });
        let elements: Vec<Vector> = idx.iter().map(|&i| self.basis[i].clone()).collect();
        GroebnerBasis::from_reduced(self.field, &self.degrees, elements)
    }
}

/// A reduced Gröbner basis of a homogeneous submodule of `⊕ S(-d_i)`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: Fp,
    degrees: Vec<i32>,
    elements: Vec<Vector>,
    leads: Vec<(u32, Monomial)>,
    by_comp: Vec<Vec<usize>>,
}

impl GroebnerBasis {
    fn from_reduced(field: Fp, degrees: &[i32], elements: Vec<Vector>) -> Self {
        let leads: Vec<(u32, Monomial)> =
            elements.iter().map(|v| v.lead().map(|(c, m, _)| (c, m)).unwrap()).collect();
        let mut by_comp = vec![Vec::new(); degrees.len()];
        for (k, l) in leads.iter().enumerate() {
            by_comp[l.0 as usize].push(k);
        }
        GroebnerBasis { field, degrees: degrees.to_vec(), elements, leads, by_comp }
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elements
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn leads(&self) -> &[(u32, Monomial)] {
        &self.leads
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Degrees of the elements (the Schreyer twists of the syzygy module).
    pub fn element_degrees(&self) -> Vec<i32> {
        self.elements.iter().map(|v| v.degree(&self.degrees).unwrap()).collect()
    }

    fn builder(&self) -> Builder {
        let mut b = Builder::new(self.field, &self.degrees);
        b.basis = self.elements.clone();
        b.leads = self.leads.clone();
        b.by_comp = self.by_comp.clone();
        b
    }

    pub fn normal_form(&self, v: &Vector) -> Vector {
        self.builder().reduce(v.clone())
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// True when some leading monomial in component `comp` divides `m`.
    pub fn lead_divides(&self, comp: usize, m: &Monomial) -> bool {
        self.by_comp[comp].iter().any(|&k| self.leads[k].1.divides(m))
    }

    /// Generators of the syzygy module of the basis elements (Schreyer): one
    /// per S-pair, obtained by recording the reduction of the pair to zero.
    pub fn syzygies(&self) -> Vec<Vector> {
        let f = self.field;
        let b = self.builder();
        let mut out = Vec::new();
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let (ci, mi) = self.leads[i];
                let (cj, mj) = self.leads[j];
                if ci != cj {
                    continue;
                }
                let l = mi.lcm(&mj);
                let qi = mi.quotient_of(&l);
                let qj = mj.quotient_of(&l);
                let s = Vector::zero()
                    .add_scaled(f, &self.elements[i], 1, &qi)
                    .add_scaled(f, &self.elements[j], f.neg(1), &qj);
                let (rem, quot) = b.reduce_tracking(s);
                assert!(rem.is_zero(), "S-pair of a Groebner basis did not reduce to zero");
                let mut terms = vec![(i as u32, qi, 1), (j as u32, qj, f.neg(1))];
                for (k, q) in quot {
                    terms.extend(q.terms().iter().map(|&(m, c)| (k as u32, m, f.neg(c))));
                }
                let syz = Vector::from_raw_terms(f, terms);
                if !syz.is_zero() {
                    out.push(syz);
                }
            }
        }
        out
    }
}

fn ideal_multiples(ring: &QuotientRing, rank: usize) -> Vec<Pending> {
    let mut out = Vec::new();
    for i in 0..rank {
        for g in ring.ideal_basis() {
            out.push(Pending { vector: Vector::from_poly(i, g), candidate: None });
        }
    }
    out
}

/// Gröbner basis of the submodule generated by `gens` in `⊕ R(-d_i)` (or over `S`).
/// Over `R` the result is a basis of the preimage in `⊕ S(-d_i)`.
pub fn buchberger(ring: &QuotientRing, degrees: &[i32], gens: &[Vector], over: Over) -> GroebnerBasis {
    let mut b = Builder::new(ring.field(), degrees);
    let mut pending: Vec<Pending> =
        gens.iter().map(|g| Pending { vector: g.clone(), candidate: None }).collect();
    if over == Over::R {
        pending.extend(ideal_multiples(ring, degrees.len()));
    }
    b.run(pending);
    b.finish()
}

/// A minimal homogeneous generating set of the submodule spanned by `gens`
/// (over `R`: modulo `I`). Returned elements are monic and reduced.
pub fn minimal_generators(ring: &QuotientRing, degrees: &[i32], gens: &[Vector], over: Over) -> Vec<Vector> {
    minimal_generators_modulo(ring, degrees, gens, &[], over)
}

/// Minimal generators of `(gens + base) / base`.
pub fn minimal_generators_modulo(
    ring: &QuotientRing,
    degrees: &[i32],
    gens: &[Vector],
    base: &[Vector],
    over: Over,
) -> Vec<Vector> {
    let mut b = Builder::new(ring.field(), degrees);
    let mut pending: Vec<Pending> =
        base.iter().map(|g| Pending { vector: g.clone(), candidate: None }).collect();
    if over == Over::R {
        pending.extend(ideal_multiples(ring, degrees.len()));
    }
    // base elements must be inserted before candidates of the same degree
    let ncand = gens.len();
    let mut cand: Vec<Pending> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| Pending { vector: g.clone(), candidate: Some(i) })
        .collect();
    pending.append(&mut cand);
    let mut flags = b.run(pending);
    flags.resize(ncand, None);
    flags.into_iter().flatten().collect()
}

/// Gröbner basis of the graph of a map `φ: ⊕R(-s_c) → ⊕R(-t_i)`, i.e. of the
/// module generated by `(φ(e_c), e_c)` in `target ⊕ source` with the target
/// block first. By elimination its elements with no target part form a
/// Gröbner basis of the kernel.
pub struct GraphBasis {
    gb: GroebnerBasis,
    target_rank: usize,
    source_degrees: Vec<i32>,
    over: Over,
}

impl GraphBasis {
    pub fn new(ring: &QuotientRing, map: &GradedMap, over: Over) -> Self {
        let f = ring.field();
        let a = map.target().rank();
        let mut degrees = map.target().degrees().to_vec();
        degrees.extend_from_slice(map.source().degrees());
        let mut pending = Vec::new();
        for (c, col) in map.columns().iter().enumerate() {
            let v = col.add(f, &Vector::basis(a + c));
            pending.push(Pending { vector: v, candidate: None });
        }
        if over == Over::R {
            pending.extend(ideal_multiples(ring, degrees.len()));
        }
        let mut b = Builder::new(f, &degrees);
        b.run(pending);
        GraphBasis { gb: b.finish(), target_rank: a, source_degrees: map.source().degrees().to_vec(), over }
    }

    /// Gröbner-basis elements of the kernel, as vectors in the source.
    pub fn kernel_elements(&self, ring: &QuotientRing) -> Vec<Vector> {
        let f = ring.field();
        let a = self.target_rank;
        let mut out = Vec::new();
        for v in self.gb.elements() {
            let (c, _, _) = v.lead().unwrap();
            if (c as usize) < a {
                continue;
            }
            let k = v.map_components(f, |i| i.checked_sub(a));
            let k = if self.over == Over::R { ring.reduce_vector(&k) } else { k };
            if !k.is_zero() {
                out.push(k);
            }
        }
        out
    }

    /// Minimal homogeneous generators of the kernel.
    pub fn kernel(&self, ring: &QuotientRing) -> Vec<Vector> {
        let gens = self.kernel_elements(ring);
        minimal_generators(ring, &self.source_degrees, &gens, self.over)
    }

    /// A preimage of `target`, or `None` when `target` is not in the image.
    pub fn lift(&self, ring: &QuotientRing, target: &Vector) -> Option<Vector> {
        let f = ring.field();
        let a = self.target_rank;
        let r = self.gb.normal_form(target);
        if r.terms().iter().any(|t| (t.0 as usize) < a) {
            return None;
        }
        let x = r.map_components(f, |i| i.checked_sub(a)).neg(f);
        Some(if self.over == Over::R { ring.reduce_vector(&x) } else { x })
    }
}

/// Inclusion of the kernel of `map`, with minimal homogeneous generators.
pub fn kernel_of_map(ring: &QuotientRing, map: &GradedMap, over: Over) -> GradedMap {
    let gens = GraphBasis::new(ring, map, over).kernel(ring);
    GradedMap::from_columns_auto(map.source().clone(), gens)
}

/// Lifts `target` through `through`, or `None` if it is not in the image.
pub fn lift(ring: &QuotientRing, target: &Vector, through: &GradedMap, over: Over) -> Option<Vector> {
    if target.is_zero() {
        return Some(Vector::zero());
    }
    GraphBasis::new(ring, through, over).lift(ring, target)
}
