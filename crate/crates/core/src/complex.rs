//! Cohomologically indexed complexes of graded free modules and of
//! presented modules.
//!
//! A [`FreeComplex`] stores terms on a window `[lo, hi]`. A side flagged as
//! open continues beyond the window (e.g. a resolution over `R`), and reading
//! past it is an error rather than a silent zero.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::groebner::{kernel_of_map, minimal_generators_modulo, GraphBasis, Over};
use crate::module::{FreeModule, GradedMap, PresentedModule};
use crate::ring::QuotientRing;
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    lo: i32,
    terms: Vec<FreeModule>,
    // diffs[k] : terms[k] -> terms[k + 1]
    diffs: Vec<GradedMap>,
    open_below: bool,
    open_above: bool,
}

fn sign(k: i32) -> bool {
    k.rem_euclid(2) == 1
}

impl FreeComplex {
    /// Terms `C^lo, C^{lo+1}, ...` with `diffs[k]: C^{lo+k} → C^{lo+k+1}`.
    pub fn new(lo: i32, terms: Vec<FreeModule>, diffs: Vec<GradedMap>) -> Self {
        assert_eq!(diffs.len() + 1, terms.len().max(1), "need one differential between consecutive terms");
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!(d.source(), &terms[k], "differential {k} has the wrong source");
            assert_eq!(d.target(), &terms[k + 1], "differential {k} has the wrong target");
        }
        FreeComplex { lo, terms, diffs, open_below: false, open_above: false }
    }

    pub fn zero() -> Self {
        FreeComplex { lo: 0, terms: Vec::new(), diffs: Vec::new(), open_below: false, open_above: false }
    }

    /// A single free module in cohomological degree `i`.
    pub fn concentrated(m: FreeModule, i: i32) -> Self {
        FreeComplex::new(i, vec![m], Vec::new())
    }

    /// Marks the complex as continuing below its stored window.
    pub fn with_open_below(mut self, open: bool) -> Self {
        self.open_below = open;
        self
    }

    pub fn with_open_above(mut self, open: bool) -> Self {
        self.open_above = open;
        self
    }

    pub fn open_below(&self) -> bool {
        self.open_below
    }

    pub fn open_above(&self) -> bool {
        self.open_above
    }

    /// Lowest stored index.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest stored index (`lo - 1` when nothing is stored).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    fn exhausted(&self, i: i32) -> Error {
        Error::WindowExhausted { index: i, lo: self.lo, hi: self.hi() }
    }

    /// `C^i`, zero outside a closed window.
    pub fn term(&self, i: i32) -> Result<FreeModule> {
        if i < self.lo {
            if self.open_below {
                return Err(self.exhausted(i));
            }
            return Ok(FreeModule::zero());
        }
        if i > self.hi() {
            if self.open_above {
                return Err(self.exhausted(i));
            }
            return Ok(FreeModule::zero());
        }
        Ok(self.terms[(i - self.lo) as usize].clone())
    }

    /// `d^i: C^i → C^{i+1}`.
    pub fn diff(&self, i: i32) -> Result<GradedMap> {
        let (s, t) = (self.term(i)?, self.term(i + 1)?);
        if i >= self.lo && i < self.hi() {
            return Ok(self.diffs[(i - self.lo) as usize].clone());
        }
        Ok(GradedMap::zero(s, t))
    }

    pub fn terms(&self) -> &[FreeModule] {
        &self.terms
    }

    pub fn diffs(&self) -> &[GradedMap] {
        &self.diffs
    }

    /// Indices of nonzero stored terms.
    pub fn support(&self) -> Vec<i32> {
        (self.lo..=self.hi()).filter(|&i| !self.terms[(i - self.lo) as usize].is_zero()).collect()
    }

    /// True when every stored term is zero and neither side is open.
    pub fn is_zero(&self) -> bool {
        !self.open_below && !self.open_above && self.terms.iter().all(|t| t.is_zero())
    }

    /// Drops zero terms at both ends of the window (closed sides only).
    pub fn trimmed(&self) -> FreeComplex {
        let mut a = 0;
        let mut b = self.terms.len();
        if !self.open_below {
            while a < b && self.terms[a].is_zero() {
                a += 1;
            }
        }
        if !self.open_above {
            while b > a && self.terms[b - 1].is_zero() {
                b -= 1;
            }
        }
        if a == b {
            return FreeComplex { lo: 0, terms: Vec::new(), diffs: Vec::new(), ..self.clone() };
        }
        FreeComplex {
            lo: self.lo + a as i32,
            terms: self.terms[a..b].to_vec(),
            diffs: self.diffs[a..b - 1].to_vec(),
            open_below: self.open_below,
            open_above: self.open_above,
        }
    }

    /// The part of the window inside `[lo, hi]`; sides cut off become open.
    pub fn restrict(&self, lo: i32, hi: i32) -> FreeComplex {
        let lo2 = lo.max(self.lo);
        let hi2 = hi.min(self.hi());
        if lo2 > hi2 {
            return FreeComplex::zero().with_open_below(self.open_below || lo > self.lo);
        }
        let a = (lo2 - self.lo) as usize;
        let b = (hi2 - self.lo) as usize + 1;
        FreeComplex {
            lo: lo2,
            terms: self.terms[a..b].to_vec(),
            diffs: self.diffs[a..b - 1].to_vec(),
            open_below: self.open_below || lo2 > self.lo,
            open_above: self.open_above || hi2 < self.hi(),
        }
    }

    /// Brutal truncation `C^{≤k}`: terms above `k` replaced by zero.
    pub fn brutal_above(&self, k: i32) -> FreeComplex {
        let mut c = self.restrict(self.lo, k);
        c.open_above = false;
        c
    }

    /// `C[k]`: `C[k]^j = C^{k+j}`, differential multiplied by `(-1)^k`.
    pub fn shift(&self, ring: &QuotientRing, k: i32) -> FreeComplex {
        let diffs = if sign(k) { self.diffs.iter().map(|d| d.neg(ring)).collect() } else { self.diffs.clone() };
        FreeComplex { lo: self.lo - k, terms: self.terms.clone(), diffs, ..*self }
    }

    /// `C(j)`: every term twisted by `j`, matrices unchanged.
    pub fn twist(&self, j: i32) -> FreeComplex {
        FreeComplex {
            lo: self.lo,
            terms: self.terms.iter().map(|t| t.twist(j)).collect(),
            diffs: self.diffs.iter().map(|d| d.twist(j)).collect(),
            ..*self
        }
    }

    /// `Hom(C, R)`: term `j` is `Hom(C^{-j}, R)` and the differential out of
    /// term `j` is `-(-1)^j` times the transpose of `d_C^{-j-1}`.
    pub fn dual(&self, ring: &QuotientRing) -> FreeComplex {
        let n = self.terms.len();
        let lo = -self.hi();
        let terms: Vec<FreeModule> = (0..n).rev().map(|k| self.terms[k].dual()).collect();
        let diffs = (0..n.saturating_sub(1))
            .map(|k| {
                let j = lo + k as i32;
                let t = self.diffs[n - 2 - k].dual(ring);
                if sign(j) {
                    t
                } else {
                    t.neg(ring)
                }
            })
            .collect();
        FreeComplex { lo, terms, diffs, open_below: self.open_above, open_above: self.open_below }
    }

    fn split_by_degree(&self, ring: &QuotientRing, j: i32, keep_high: bool) -> FreeComplex {
        let sel: Vec<Vec<usize>> = self
            .terms
            .iter()
            .map(|t| (0..t.rank()).filter(|&i| (t.degrees()[i] >= j) == keep_high).collect())
            .collect();
        let terms = self
            .terms
            .iter()
            .zip(&sel)
            .map(|(t, s)| FreeModule::new(s.iter().map(|&i| t.degrees()[i]).collect()))
            .collect();
        let diffs = self.diffs.iter().enumerate().map(|(k, d)| d.submatrix(ring, &sel[k + 1], &sel[k])).collect();
        FreeComplex { lo: self.lo, terms, diffs, ..*self }
    }

    /// `C_{≽j}`: the quotient complex on the summands generated in degree `≥ j`.
    pub fn truncate_geq(&self, ring: &QuotientRing, j: i32) -> FreeComplex {
        self.split_by_degree(ring, j, true)
    }

    /// `C_{≺j}`: the subcomplex on the summands generated in degree `< j`.
    pub fn truncate_lt(&self, ring: &QuotientRing, j: i32) -> FreeComplex {
        self.split_by_degree(ring, j, false)
    }

    /// Checks `d^{i+1} d^i = 0` exactly on the stored window.
    pub fn is_complex(&self, ring: &QuotientRing) -> bool {
        self.diffs.windows(2).all(|w| w[1].compose(ring, &w[0]).is_zero())
    }

    /// True when no differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_minimal())
    }

    /// Twist multisets `(index, [(j, mult)])` of nonzero terms, top index first.
    pub fn twist_data(&self) -> Vec<(i32, Vec<(i32, usize)>)> {
        (self.lo..=self.hi())
            .rev()
            .map(|i| (i, self.terms[(i - self.lo) as usize].twist_multiset()))
            .filter(|(_, m)| !m.is_empty())
            .collect()
    }

    /// Arrow notation from the top index down: `R <-- R(-1)^2 <-- ...`.
    pub fn display_arrows(&self, symbol: &str) -> String {
        let t = self.trimmed();
        if t.terms.is_empty() {
            return if t.open_below { "0 <-- ...".into() } else { "0".into() };
        }
        let mut parts: Vec<String> = t.terms.iter().rev().map(|m| m.display_with(symbol)).collect();
        if t.open_below {
            parts.push("...".into());
        }
        format!("{}    (degrees {} down to {})", parts.join(" <-- "), t.hi(), t.lo)
    }

    /// One line per index, top index first.
    pub fn display_terms(&self, symbol: &str) -> String {
        let mut s = String::new();
        for i in (self.lo..=self.hi()).rev() {
            let _ = writeln!(s, "{i:>4}: {}", self.terms[(i - self.lo) as usize].display_with(symbol));
        }
        if self.open_below {
            s.push_str("   ...\n");
        }
        s
    }

    /// The same complex with every differential negated.
    pub fn with_sign_flip(&self, ring: &QuotientRing) -> FreeComplex {
        FreeComplex { diffs: self.diffs.iter().map(|d| d.neg(ring)).collect(), ..self.clone() }
    }

    /// Differentials reduced modulo the ideal.
    pub(crate) fn reduced(&self, ring: &QuotientRing) -> FreeComplex {
        FreeComplex { diffs: self.diffs.iter().map(|d| d.reduced(ring)).collect(), ..self.clone() }
    }
}

/// `Hom(C, D)` for complexes with finite stored windows: term `j` is
/// `⊕_i Hom(C^i, D^{i+j})` and `∂α = ∂_D α - (-1)^j α ∂_C`.
///
/// Basis of `Hom(C^i, D^{i+j})`: `E_{q,p}` sends generator `p` of `C^i` to
/// generator `q` of `D^{i+j}`, in degree `deg D_q - deg C_p`, ordered by `i`,
/// then `p`, then `q`.
pub fn hom_complex(ring: &QuotientRing, c: &FreeComplex, d: &FreeComplex) -> FreeComplex {
    assert!(!c.open_below && !c.open_above && !d.open_below && !d.open_above, "hom needs finite complexes");
    let f = ring.field();
    if c.terms.is_empty() || d.terms.is_empty() {
        return FreeComplex::zero();
    }
    let jlo = d.lo - c.hi();
    let jhi = d.hi() - c.lo;
    // blocks[j] = list of (i, offset) for i with both C^i and D^{i+j} stored
    let layout = |j: i32| -> (Vec<(i32, usize)>, FreeModule) {
        let mut blocks = Vec::new();
        let mut degs = Vec::new();
        for i in c.lo..=c.hi() {
            let ci = c.term(i).unwrap();
            let di = d.term(i + j).unwrap();
            blocks.push((i, degs.len()));
            for p in 0..ci.rank() {
                for q in 0..di.rank() {
                    degs.push(di.degrees()[q] - ci.degrees()[p]);
                }
            }
        }
        (blocks, FreeModule::new(degs))
    };
    let mut terms = Vec::new();
    let mut layouts = Vec::new();
    for j in jlo..=jhi {
        let (b, m) = layout(j);
        terms.push(m);
        layouts.push(b);
    }
    let mut diffs = Vec::new();
    for j in jlo..jhi {
        let k = (j - jlo) as usize;
        let src = &layouts[k];
        let tgt = &layouts[k + 1];
        let off_t = |i: i32| tgt.iter().find(|b| b.0 == i).unwrap().1;
        let mut cols = Vec::new();
        for &(i, _) in src {
            let ci = c.term(i).unwrap();
            let di = d.term(i + j).unwrap();
            let di1 = d.term(i + j + 1).unwrap();
            for p in 0..ci.rank() {
                for q in 0..di.rank() {
                    let mut v = Vector::zero();
                    // ∂_D ∘ E_{q,p}: lands in Hom(C^i, D^{i+j+1})
                    if i + j >= d.lo && i + j < d.hi() {
                        let col = d.diff(i + j).unwrap();
                        let base = off_t(i);
                        for (q2, poly) in col.column(q).entries() {
                            v = v.add(f, &Vector::from_poly(base + p * di1.rank() + q2, &poly));
                        }
                    }
                    // -(-1)^j E_{q,p} ∘ ∂_C^{i-1}: lands in Hom(C^{i-1}, D^{i+j})
                    if i - 1 >= c.lo {
                        let dc = c.diff(i - 1).unwrap();
                        let ci1 = c.term(i - 1).unwrap();
                        let base = off_t(i - 1);
                        let s = if sign(j) { 1 } else { f.neg(1) };
                        for p2 in 0..ci1.rank() {
                            let e = dc.entry(p, p2);
                            if !e.is_zero() {
                                v = v.add(f, &Vector::from_poly(base + p2 * di.rank() + q, &e.scale(f, s)));
                            }
                        }
                    }
                    cols.push(v);
                }
            }
        }
        diffs.push(GradedMap::from_columns(terms[k].clone(), terms[k + 1].clone(), cols));
    }
    FreeComplex::new(jlo, terms, diffs).reduced(ring)
}

/// A bounded complex of presented modules. `maps[k]` is a matrix from the
/// generators of term `k` to the generators of term `k + 1`, assumed to
/// carry relations into relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleComplex {
    lo: i32,
    terms: Vec<PresentedModule>,
    maps: Vec<GradedMap>,
}

impl ModuleComplex {
    pub fn new(lo: i32, terms: Vec<PresentedModule>, maps: Vec<GradedMap>) -> Self {
        assert_eq!(maps.len() + 1, terms.len().max(1), "need one map between consecutive terms");
        for (k, d) in maps.iter().enumerate() {
            assert_eq!(d.source(), terms[k].generators(), "map {k} has the wrong source");
            assert_eq!(d.target(), terms[k + 1].generators(), "map {k} has the wrong target");
        }
        ModuleComplex { lo, terms, maps }
    }

    pub fn zero() -> Self {
        ModuleComplex { lo: 0, terms: Vec::new(), maps: Vec::new() }
    }

    /// A single module in cohomological degree `i`.
    pub fn concentrated(m: PresentedModule, i: i32) -> Self {
        ModuleComplex::new(i, vec![m], Vec::new())
    }

    /// Views a free complex with a closed window as a complex of modules.
    pub fn from_free(c: &FreeComplex) -> Result<Self> {
        if c.open_below || c.open_above {
            return Err(Error::WindowExhausted { index: if c.open_below { c.lo - 1 } else { c.hi() + 1 }, lo: c.lo, hi: c.hi() });
        }
        Ok(ModuleComplex {
            lo: c.lo,
            terms: c.terms.iter().map(|t| PresentedModule::free(t.clone())).collect(),
            maps: c.diffs.clone(),
        })
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn terms(&self) -> &[PresentedModule] {
        &self.terms
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    pub fn term(&self, i: i32) -> PresentedModule {
        if i < self.lo || i > self.hi() {
            return PresentedModule::zero();
        }
        self.terms[(i - self.lo) as usize].clone()
    }

    /// Matrix of `d^i` on generators.
    pub fn map(&self, i: i32) -> GradedMap {
        if i >= self.lo && i < self.hi() {
            return self.maps[(i - self.lo) as usize].clone();
        }
        GradedMap::zero(self.term(i).generators().clone(), self.term(i + 1).generators().clone())
    }

    pub fn twist(&self, j: i32) -> ModuleComplex {
        ModuleComplex {
            lo: self.lo,
            terms: self.terms.iter().map(|t| t.twist(j)).collect(),
            maps: self.maps.iter().map(|d| d.twist(j)).collect(),
        }
    }

    /// `C[k]`, with differential multiplied by `(-1)^k`.
    pub fn shift(&self, ring: &QuotientRing, k: i32) -> ModuleComplex {
        let maps = if sign(k) { self.maps.iter().map(|d| d.neg(ring)).collect() } else { self.maps.clone() };
        ModuleComplex { lo: self.lo - k, terms: self.terms.clone(), maps }
    }

    /// Checks `d^{i+1} d^i = 0` in the modules (composite lands in relations).
    pub fn is_complex(&self, ring: &QuotientRing) -> bool {
        self.maps.windows(2).enumerate().all(|(k, w)| {
            let comp = w[1].compose(ring, &w[0]);
            let rel = self.terms[k + 2].relations();
            let degs = self.terms[k + 2].generators().degrees();
            let gb = crate::groebner::buchberger(ring, degs, rel, Over::R);
            comp.columns().iter().all(|v| gb.contains(v))
        })
    }

    /// `H^i = ker d^i / im d^{i-1}`.
    pub fn cohomology(&self, ring: &QuotientRing, i: i32) -> PresentedModule {
        let mid = self.term(i);
        let next = self.term(i + 1);
        cohomology_at(ring, &self.map(i - 1), mid.relations(), &self.map(i), next.presentation())
    }

    /// Indices in the window with nonzero cohomology.
    pub fn cohomology_support(&self, ring: &QuotientRing) -> Vec<i32> {
        (self.lo..=self.hi()).filter(|&i| !self.cohomology(ring, i).is_zero(ring)).collect()
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self, ring: &QuotientRing) -> ModuleComplex {
        let nz: Vec<usize> = (0..self.terms.len()).filter(|&k| !self.terms[k].is_zero(ring)).collect();
        match (nz.first(), nz.last()) {
            (Some(&a), Some(&b)) => ModuleComplex {
                lo: self.lo + a as i32,
                terms: self.terms[a..=b].to_vec(),
                maps: self.maps[a..b].to_vec(),
            },
            _ => ModuleComplex::zero(),
        }
    }
}

/// Cohomology at a middle term `F / A` of `E --prev--> F/A --phi--> G/B`,
/// where `A` are relation vectors in `F` and `next` presents `G/B`.
pub(crate) fn cohomology_at(
    ring: &QuotientRing,
    prev: &GradedMap,
    a: &[Vector],
    phi: &GradedMap,
    next: &GradedMap,
) -> PresentedModule {
    let f = ring.field();
    let fr = phi.source().rank();
    let fdeg = phi.source().degrees();
    // cycles: x in F with phi(x) in the relations of G
    let combined = phi.hconcat(next);
    let z: Vec<Vector> = GraphBasis::new(ring, &combined, Over::R)
        .kernel_elements(ring)
        .into_iter()
        .map(|v| v.map_components(f, |c| (c < fr).then_some(c)))
        .filter(|v| !v.is_zero())
        .collect();
    let mut base: Vec<Vector> = a.to_vec();
    base.extend(prev.columns().iter().filter(|v| !v.is_zero()).cloned());
    let gens = minimal_generators_modulo(ring, fdeg, &z, &base, Over::R);
    if gens.is_empty() {
        return PresentedModule::zero();
    }
    let k = gens.len();
    let iota = GradedMap::from_images(phi.source().clone(), gens);
    let mut big = iota.clone();
    if !base.is_empty() {
        big = big.hconcat(&GradedMap::from_images(phi.source().clone(), base));
    }
    let rels: Vec<Vector> = GraphBasis::new(ring, &big, Over::R)
        .kernel_elements(ring)
        .into_iter()
        .map(|v| v.map_components(f, |c| (c < k).then_some(c)))
        .filter(|v| !v.is_zero())
        .collect();
    let rels = crate::groebner::minimal_generators(ring, iota.source().degrees(), &rels, Over::R);
    PresentedModule::from_relations(iota.source().clone(), rels)
}

impl FreeComplex {
    /// `H^i` as a presented module.
    pub fn cohomology(&self, ring: &QuotientRing, i: i32) -> Result<PresentedModule> {
        let prev = self.diff(i - 1)?;
        let phi = self.diff(i)?;
        let next = GradedMap::zero(FreeModule::zero(), phi.target().clone());
        Ok(cohomology_at(ring, &prev, &[], &phi, &next))
    }

    /// Indices of the stored window whose cohomology can be computed and is nonzero.
    /// Edge indices of open sides are skipped.
    pub fn cohomology_support(&self, ring: &QuotientRing) -> Vec<i32> {
        (self.lo..=self.hi())
            .filter_map(|i| self.cohomology(ring, i).ok().map(|h| (i, h)))
            .filter(|(_, h)| !h.is_zero(ring))
            .map(|(i, _)| i)
            .collect()
    }

    /// Smart truncation at `k`: terms below `k` unchanged, `ker d^k` in
    /// degree `k`, zero above. Quasi-isomorphic to `self` when the
    /// cohomology vanishes above `k`.
    pub fn smart_truncate(&self, ring: &QuotientRing, k: i32) -> Result<ModuleComplex> {
        if k < self.lo {
            if self.open_below {
                return Err(self.exhausted(k));
            }
            return Ok(ModuleComplex::zero());
        }
        if self.open_below {
            return Err(self.exhausted(self.lo - 1));
        }
        let dk = self.diff(k)?;
        let kernel = kernel_of_map(ring, &dk, Over::R);
        let kmod = if kernel.source().is_zero() {
            PresentedModule::zero()
        } else {
            let syz = GraphBasis::new(ring, &kernel, Over::R).kernel(ring);
            PresentedModule::from_relations(kernel.source().clone(), syz)
        };
        let mut terms: Vec<PresentedModule> = Vec::new();
        let mut maps = Vec::new();
        for i in self.lo..k {
            terms.push(PresentedModule::free(self.term(i)?));
            if i + 1 < k {
                maps.push(self.diff(i)?);
            }
        }
        if k > self.lo {
            let last = self.diff(k - 1)?;
            let graph = GraphBasis::new(ring, &kernel, Over::R);
            let cols = last
                .columns()
                .iter()
                .map(|v| {
                    if v.is_zero() {
                        Vector::zero()
                    } else {
                        graph.lift(ring, v).expect("image of the previous differential lies in the kernel")
                    }
                })
                .collect();
            maps.push(GradedMap::from_columns(last.source().clone(), kmod.generators().clone(), cols));
        }
        terms.push(kmod);
        Ok(ModuleComplex::new(self.lo, terms, maps))
    }
}

impl FreeComplex {
    /// Cancels unit entries of the differentials one at a time. For a unit
    /// `u` at `(r, c)` of `d^i`, write `d^i = [[u, β], [γ, δ]]`; the reduced
    /// complex drops generator `c` of `C^i` and `r` of `C^{i+1}` and uses
    /// `δ - γ u⁻¹ β`.
    pub fn minimize(&self, ring: &QuotientRing) -> FreeComplex {
        let f = ring.field();
        let mut c = self.reduced(ring);
        while let Some((k, (r, col, u))) = c.diffs.iter().enumerate().find_map(|(k, d)| d.find_unit().map(|x| (k, x))) {
            let d = &c.diffs[k];
            let pivot = d.column(col).clone();
            let uinv = f.inv(u);
            let cols: Vec<Vector> = d
                .columns()
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, v)| {
                    let b = v.entry(r);
                    let w = if b.is_zero() { v.clone() } else { v.sub(f, &pivot.mul_poly(f, &b.scale(f, uinv))) };
                    ring.reduce_vector(&w.map_components(f, |i| if i == r { None } else { Some(i - (i > r) as usize) }))
                })
                .collect();
            let drop = |m: &FreeModule, x: usize| {
                let mut d = m.degrees().to_vec();
                d.remove(x);
                FreeModule::new(d)
            };
            let src = drop(&c.terms[k], col);
            let tgt = drop(&c.terms[k + 1], r);
            c.diffs[k] = GradedMap::from_columns(src.clone(), tgt.clone(), cols);
            if k > 0 {
                let prev = &c.diffs[k - 1];
                let cols = prev
                    .columns()
                    .iter()
                    .map(|v| v.map_components(f, |i| if i == col { None } else { Some(i - (i > col) as usize) }))
                    .collect();
                c.diffs[k - 1] = GradedMap::from_columns(prev.source().clone(), src.clone(), cols);
            }
            if k + 1 < c.diffs.len() {
                let next = &c.diffs[k + 1];
                let cols = next.columns().iter().enumerate().filter(|&(j, _)| j != r).map(|(_, v)| v.clone()).collect();
                c.diffs[k + 1] = GradedMap::from_columns(tgt.clone(), next.target().clone(), cols);
            }
            c.terms[k] = src;
            c.terms[k + 1] = tgt;
        }
        c
    }
}

/// Minimal free resolution `F → C` of a bounded complex of presented
/// modules, computed on the window `[lo, sup C]`.
///
/// Works from the top index down, keeping the mapping cone of `q: F → C`
/// exact: at index `j` the new generators of `F^j` are minimal generators
/// of the cycles of `cone^j = F^{j+1} ⊕ C^j` modulo the image of `C^{j-1}`,
/// with `d e = -g` and `q e = c` for a cycle `(g, c)`. The result is then
/// minimized; one extra index is computed below `lo` and discarded, since
/// minimization cannot see past the bottom edge.
pub fn resolve_complex(ring: &QuotientRing, c: &ModuleComplex, lo: i32) -> FreeComplex {
    let f = ring.field();
    let top = c.hi();
    if c.terms().is_empty() || lo > top {
        return FreeComplex::zero();
    }
    let bottom = lo - 1;
    // fterms[k] = F^{top-k}, ds[k]: F^{top-k} -> F^{top-k+1}
    let mut fterms: Vec<FreeModule> = Vec::new();
    let mut ds: Vec<GradedMap> = Vec::new();
    let mut f_next = FreeModule::zero(); // F^{j+1}
    let mut q_next = GradedMap::zero(FreeModule::zero(), c.term(top + 1).generators().clone());
    let mut d_next = GradedMap::zero(FreeModule::zero(), FreeModule::zero()); // F^{j+1} -> F^{j+2}
    let mut closed = false;
    let mut j = top;
    while j >= bottom {
        let pj = c.term(j);
        let pj1 = c.term(j + 1);
        let (nf, np) = (f_next.rank(), pj.generators().rank());
        // Θ(g, c, r) = (-d g, q g + δ c + A r)
        let tgt = d_next.target().direct_sum(pj1.generators());
        let off = d_next.target().rank();
        let mut cols = Vec::new();
        for k in 0..nf {
            let a = d_next.column(k).neg(f);
            let b = q_next.column(k).map_components(f, |i| Some(i + off));
            cols.push(a.add(f, &b));
        }
        let delta = c.map(j);
        for k in 0..np {
            cols.push(delta.column(k).map_components(f, |i| Some(i + off)));
        }
        for v in pj1.relations() {
            cols.push(v.map_components(f, |i| Some(i + off)));
        }
        let mut sdeg = f_next.degrees().to_vec();
        sdeg.extend_from_slice(pj.generators().degrees());
        sdeg.extend(pj1.relations().iter().map(|v| v.degree(pj1.generators().degrees()).unwrap()));
        let theta = GradedMap::from_columns(FreeModule::new(sdeg), tgt, cols);
        let width = nf + np;
        let z: Vec<Vector> = GraphBasis::new(ring, &theta, Over::R)
            .kernel_elements(ring)
            .into_iter()
            .map(|v| v.map_components(f, |i| (i < width).then_some(i)))
            .filter(|v| !v.is_zero())
            .collect();
        let cone = f_next.direct_sum(pj.generators());
        let mut base: Vec<Vector> = c.map(j - 1).columns().iter().map(|v| v.map_components(f, |i| Some(i + nf))).collect();
        base.extend(pj.relations().iter().map(|v| v.map_components(f, |i| Some(i + nf))));
        base.retain(|v| !v.is_zero());
        let gens = minimal_generators_modulo(ring, cone.degrees(), &z, &base, Over::R);
        let fj = FreeModule::new(gens.iter().map(|v| v.degree(cone.degrees()).unwrap()).collect());
        let dcols = gens.iter().map(|v| v.map_components(f, |i| (i < nf).then_some(i)).neg(f)).collect();
        let qcols = gens.iter().map(|v| v.map_components(f, |i| i.checked_sub(nf))).collect();
        let d = GradedMap::from_columns(fj.clone(), f_next.clone(), dcols);
        let q = GradedMap::from_columns(fj.clone(), pj.generators().clone(), qcols);
        fterms.push(fj.clone());
        ds.push(d.clone());
        f_next = fj;
        q_next = q;
        d_next = d;
        if f_next.is_zero() && j <= c.lo() {
            closed = true;
            break;
        }
        j -= 1;
    }
    // assemble from the bottom
    let n = fterms.len();
    let lo_built = top - n as i32 + 1;
    let terms: Vec<FreeModule> = fterms.into_iter().rev().collect();
    let diffs: Vec<GradedMap> = ds.into_iter().rev().take(n - 1).collect();
    let full = FreeComplex::new(lo_built, terms, diffs).with_open_below(!closed);
    let min = full.minimize(ring);
    if closed {
        min.trimmed()
    } else {
        let mut r = min.restrict(lo, top);
        r.open_above = false;
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kxy() -> QuotientRing {
        QuotientRing::parse(32003, &["x", "y"], &[]).unwrap()
    }

    fn ring27() -> QuotientRing {
        QuotientRing::parse(32003, &["x0", "x1", "x2", "x3", "x4"], &["x0*x1", "x2*x3*x4"]).unwrap()
    }

    fn map(ring: &QuotientRing, src: Vec<i32>, tgt: Vec<i32>, rows: &[&[&str]]) -> GradedMap {
        let cols = (0..src.len())
            .map(|c| {
                Vector::from_entries(ring.field(), rows.iter().enumerate().map(|(r, row)| (r, ring.poly(row[c]).unwrap())))
            })
            .collect();
        GradedMap::from_columns(FreeModule::new(src), FreeModule::new(tgt), cols)
    }

    /// Koszul complex of (x, y) in degrees -2..0.
    fn koszul(ring: &QuotientRing) -> FreeComplex {
        let d1 = map(ring, vec![1, 1], vec![0], &[&["x", "y"]]);
        let d2 = map(ring, vec![2], vec![1, 1], &[&["y"], &["-x"]]);
        FreeComplex::new(-2, vec![FreeModule::new(vec![2]), FreeModule::new(vec![1, 1]), FreeModule::new(vec![0])], vec![d2, d1])
    }

    fn module27(ring: &QuotientRing) -> PresentedModule {
        PresentedModule::cokernel(map(ring, vec![1, 1], vec![0], &[&["x0", "x2"]]))
    }

    #[test]
    fn shifts() {
        let r = kxy();
        let c = koszul(&r);
        assert_eq!(c.shift(&r, 0), c);
        assert_eq!(c.shift(&r, 1).shift(&r, -1), c);
        let s = c.shift(&r, 1);
        assert_eq!(s.lo(), -3);
        assert_eq!(s.diffs()[0], c.diffs()[0].neg(&r));
        assert!(s.is_complex(&r));
    }

    #[test]
    fn twists_and_truncations_commute() {
        let r = ring27();
        let f = resolve_complex(&r, &ModuleComplex::concentrated(module27(&r), 0), -4);
        for (t, j) in [(3, 2), (0, -1), (2, 3), (-1, 1)] {
            assert_eq!(f.twist(j).truncate_geq(&r, t - j), f.truncate_geq(&r, t).twist(j));
            assert_eq!(f.twist(j).truncate_lt(&r, t - j), f.truncate_lt(&r, t).twist(j));
        }
        let single = FreeComplex::concentrated(FreeModule::new(vec![3]), -2);
        assert_eq!(single.twist(3).terms()[0], FreeModule::new(vec![0]));
    }

    #[test]
    fn dual_of_one_quadric() {
        let r = kxy();
        let c = FreeComplex::new(-1, vec![FreeModule::new(vec![2]), FreeModule::new(vec![0])], vec![map(&r, vec![2], vec![0], &[&["x*y"]])]);
        let d = c.dual(&r);
        assert_eq!(d.lo(), 0);
        assert_eq!(d.terms(), &[FreeModule::new(vec![0]), FreeModule::new(vec![-2])]);
        // differential out of degree 0 is -(+1) times the transpose
        assert_eq!(d.diffs()[0].entry(0, 0), r.poly("-x*y").unwrap());
        // with this sign rule the double dual negates every differential,
        // which is isomorphic to C via alternating signs on the terms
        assert_eq!(d.dual(&r), c.with_sign_flip(&r));
    }

    #[test]
    fn hom_into_ring_is_dual() {
        let r = kxy();
        let c = koszul(&r);
        let ringc = FreeComplex::concentrated(FreeModule::new(vec![0]), 0);
        assert_eq!(hom_complex(&r, &c, &ringc), c.dual(&r));
        assert!(c.dual(&r).is_complex(&r));
        let hh = hom_complex(&r, &c, &c);
        assert!(hh.is_complex(&r));
        assert_eq!(hh.lo(), -2);
    }

    #[test]
    fn truncation_edges() {
        let r = kxy();
        let c = koszul(&r);
        assert_eq!(c.truncate_geq(&r, -5), c);
        assert!(c.truncate_lt(&r, -5).terms().iter().all(|t| t.is_zero()));
        assert!(c.truncate_geq(&r, 9).terms().iter().all(|t| t.is_zero()));
        assert_eq!(c.truncate_lt(&r, 9), c);
        let hi = c.truncate_geq(&r, 1);
        assert_eq!(hi.terms()[1].rank() + c.truncate_lt(&r, 1).terms()[1].rank(), 2);
        assert!(hi.is_complex(&r));
    }

    #[test]
    fn koszul_cohomology() {
        let r = kxy();
        let c = koszul(&r);
        let h0 = c.cohomology(&r, 0).unwrap();
        let hf: Vec<usize> = h0.hilbert_function(&r, 0, 3).into_iter().map(|e| e.1).collect();
        assert_eq!(hf, vec![1, 0, 0, 0]);
        assert!(c.cohomology(&r, -1).unwrap().is_zero(&r));
        assert!(c.cohomology(&r, -2).unwrap().is_zero(&r));
        assert_eq!(c.cohomology_support(&r), vec![0]);
    }

    #[test]
    fn minimize_cancels_identity_summand() {
        let r = kxy();
        let unit = FreeComplex::new(0, vec![FreeModule::new(vec![0]), FreeModule::new(vec![0])], vec![GradedMap::identity(FreeModule::new(vec![0]))]);
        assert!(unit.minimize(&r).terms().iter().all(|t| t.is_zero()));
        let c = koszul(&r);
        assert_eq!(c.minimize(&r), c);
    }

    #[test]
    fn minimize_recovers_koszul() {
        // resolution of k over k[x] padded with a trivial summand R(-1) -> R(-1)
        let s = QuotientRing::parse(32003, &["x"], &[]).unwrap();
        let d = map(&s, vec![1, 1], vec![0, 1], &[&["x", "0"], &["0", "1"]]);
        let padded = FreeComplex::new(-1, vec![FreeModule::new(vec![1, 1]), FreeModule::new(vec![0, 1])], vec![d]);
        let m = padded.minimize(&s);
        assert_eq!(m.terms(), &[FreeModule::new(vec![1]), FreeModule::new(vec![0])]);
        assert!(m.is_minimal());
    }

    #[test]
    fn resolve_single_module() {
        let r = kxy();
        let k = PresentedModule::cokernel(map(&r, vec![1, 1], vec![0], &[&["x", "y"]]));
        let f = resolve_complex(&r, &ModuleComplex::concentrated(k, 0), -4);
        assert_eq!(f.trimmed().terms(), koszul(&r).terms());
        assert!(!f.open_below());
    }

    #[test]
    fn resolve_exact_complex_is_zero() {
        let r = kxy();
        let c = ModuleComplex::from_free(&FreeComplex::new(
            0,
            vec![FreeModule::new(vec![1]), FreeModule::new(vec![1])],
            vec![GradedMap::identity(FreeModule::new(vec![1]))],
        ))
        .unwrap();
        assert!(resolve_complex(&r, &c, -3).is_zero());
    }

    #[test]
    fn resolution_of_example_module() {
        let r = ring27();
        let f = resolve_complex(&r, &ModuleComplex::concentrated(module27(&r), 0), -4);
        let degs: Vec<Vec<i32>> = (-4..=0).rev().map(|i| {
            let mut d = f.term(i).unwrap().degrees().to_vec();
            d.sort();
            d
        }).collect();
        assert_eq!(degs, vec![vec![0], vec![1, 1], vec![2, 2, 3], vec![3, 3, 4, 4], vec![4, 4, 5, 5, 6]]);
        assert!(f.is_minimal());
        assert!(f.is_complex(&r));
        assert!(matches!(f.term(-5), Err(Error::WindowExhausted { .. })));
    }

    #[test]
    fn smart_truncation_of_exact_pair() {
        let r = kxy();
        let c = FreeComplex::new(-1, vec![FreeModule::new(vec![0]), FreeModule::new(vec![0])], vec![GradedMap::identity(FreeModule::new(vec![0]))]);
        let t = c.smart_truncate(&r, -1).unwrap();
        assert!(t.terms().iter().all(|m| m.is_zero(&r)));
        let k = koszul(&r);
        let same = k.smart_truncate(&r, 1).unwrap();
        assert_eq!(same.cohomology_support(&r), vec![0]);
    }
}
