//! The functors `Φ_t` (graded singularity category to `D^b(X)`) and `Ψ_t`
//! (back again) for a Gorenstein quotient ring, computed on finite windows.

use std::cell::RefCell;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::complex::{resolve_complex, FreeComplex, ModuleComplex};
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, SparseVec};
use crate::module::{FreeModule, PresentedModule, Piece};
use crate::resolution::{gorenstein_data, resolve_module, resolve_over_s, BettiTable, GorensteinData};
use crate::ring::QuotientRing;
use crate::vector::Vector;

/// A quotient ring together with its Gorenstein data.
#[derive(Clone, Debug)]
pub struct GorensteinRing {
    pub ring: QuotientRing,
    pub data: GorensteinData,
}

impl GorensteinRing {
    /// Fails with [`Error::NotGorenstein`] unless the ring is Gorenstein.
    pub fn new(ring: QuotientRing) -> Result<Self> {
        let data = gorenstein_data(&ring);
        if !data.is_gorenstein {
            return Err(Error::NotGorenstein(format!(
                "projective dimension {} over S, codimension {}, last Betti number {}",
                data.pd,
                data.codim,
                data.betti.total(data.pd)
            )));
        }
        Ok(GorensteinRing { ring, data })
    }

    pub fn a(&self) -> i32 {
        self.data.a
    }

    pub fn d(&self) -> i32 {
        self.data.d
    }

    /// `n` with `S = k[x_0..x_n]`.
    pub fn n(&self) -> i32 {
        self.ring.nvars() as i32 - 1
    }
}

/// Window integers of a `Φ_t` computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiWindow {
    pub t: i32,
    pub d: i32,
    /// Lowest index with nonzero cohomology of the input.
    pub s: i32,
    /// Highest index with nonzero cohomology of the input.
    pub u: i32,
    /// Lowest generator degree of `H^s` of the brutal truncation `F^{≤s}`.
    pub m: i32,
    pub c: i32,
    /// Smart-truncation cutoff `d - c`.
    pub top: i32,
    /// `min{-s + m' + t - 1, -s}`. Here `-s` is the lowest index where `G` has
    /// cohomology and `m'` is the least `m_k + k + s` over the lowest degrees
    /// `m_k` of `H^k(G)`; with only `H^{-s}(G)` nonzero this is its lowest degree.
    pub b: i32,
    pub ell: usize,
}

impl PhiWindow {
    /// `c = min{s + m - t, s}`.
    pub fn c_of(s: i32, m: i32, t: i32) -> i32 {
        (s + m - t).min(s)
    }

    /// `b = min{-s + m' + t - 1, -s}`.
    pub fn b_of(s: i32, m_prime: Option<i32>, t: i32) -> i32 {
        match m_prime {
            Some(mp) => (-s + mp + t - 1).min(-s),
            None => -s,
        }
    }
}

/// The output of `Φ_t`: a complex of sums of twists `O(j)`, given by a
/// complex of graded free modules read termwise as sheaves.
#[derive(Clone, Debug)]
pub struct SheafObject {
    /// `E^{k0} → ... → E^{k0 + ell}`, `k0` the first nonzero index `≥ c - d`.
    pub complex: FreeComplex,
    /// The smart truncation `E^{c-d} → ... → ker ∂^{d-b}`, when `ell` reaches it.
    pub full_model: Option<ModuleComplex>,
    /// `None` when the input has no cohomology.
    pub window: Option<PhiWindow>,
    /// Intermediate complexes, kept for inspection.
    pub stages: Option<PhiStages>,
}

/// Intermediate complexes of a `Φ_t` run.
#[derive(Clone, Debug)]
pub struct PhiStages {
    /// `F^{≤s}` (minimal resolution of `H^s(F^{≤s})[-s]`).
    pub f: FreeComplex,
    pub f_trunc: FreeComplex,
    /// `Hom(F_{≽t}, R)`.
    pub d: FreeComplex,
    /// Minimal resolution of the smart truncation of `D` at `d - c`.
    pub g: FreeComplex,
    /// `Hom(G, R)_{≺t}`.
    pub e: FreeComplex,
}

impl SheafObject {
    pub fn zero() -> Self {
        SheafObject { complex: FreeComplex::zero(), full_model: None, window: None, stages: None }
    }

    /// No terms at all: the input had no cohomology, or `E` vanished.
    pub fn is_zero(&self) -> bool {
        self.complex.terms().iter().all(|t| t.is_zero())
    }

    /// `(index, [(j, mult)])` for every nonzero term, ascending index.
    pub fn twist_data(&self) -> Vec<(i32, Vec<(i32, usize)>)> {
        let mut v = self.complex.twist_data();
        v.reverse();
        v
    }

    /// `O(-2)^2 --> O(-1)^2 --> ...`.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let c = &self.complex;
        let mut parts: Vec<String> = (c.lo()..=c.hi()).map(|i| c.term(i).unwrap().display_with("O")).collect();
        if c.open_above() {
            parts.push("...".into());
        }
        format!("{}    (degrees {} to {})", parts.join(" --> "), c.lo(), c.hi())
    }

    /// `SheafObject(j)`: every term twisted.
    pub fn twist(&self, j: i32) -> SheafObject {
        SheafObject {
            complex: self.complex.twist(j),
            full_model: self.full_model.as_ref().map(|m| m.twist(j)),
            window: self.window.clone(),
            stages: None,
        }
    }

    /// Cohomology modules of the full model, with a finite-length verdict.
    pub fn cohomology_report(&self, ring: &QuotientRing) -> Option<Vec<CohomologyModule>> {
        let model = self.full_model.as_ref()?;
        Some(
            (model.lo()..=model.hi())
                .map(|i| {
                    let h = model.cohomology(ring, i).minimal_presentation(ring).module;
                    let finite = finite_length_certificate(ring, &h, FINITE_LENGTH_SLACK);
                    CohomologyModule { index: i, module: h, finite_length_at: finite }
                })
                .collect(),
        )
    }
}

/// A cohomology module of a sheaf model.
#[derive(Clone, Debug)]
pub struct CohomologyModule {
    pub index: i32,
    pub module: PresentedModule,
    /// Some `g` at or past every generator degree with `H_g = 0`; `None`
    /// when no such degree was found within the search slack.
    pub finite_length_at: Option<i32>,
}

/// Degrees searched past the top generator degree for a vanishing piece.
pub const FINITE_LENGTH_SLACK: i32 = 12;

/// A module generated in degrees `≤ g0` with `M_g = 0` for some `g ≥ g0` has
/// finite length, because `M_{g'} = R_{g'-g} M_g` for `g' ≥ g`. Returns the
/// first such `g` in `[g0, g0 + slack]`.
pub fn finite_length_certificate(ring: &QuotientRing, m: &PresentedModule, slack: i32) -> Option<i32> {
    let Some(g0) = m.generators().max_degree() else { return Some(0) };
    (g0..=g0 + slack).find(|&g| m.hilbert_value(ring, g) == 0)
}

/// Indices `i` in `[lo, hi]` where `H^i` is computable and nonzero.
fn nonzero_cohomology(ring: &QuotientRing, c: &FreeComplex, lo: i32, hi: i32) -> Vec<i32> {
    (lo..=hi)
        .filter(|&i| matches!(c.cohomology(ring, i), Ok(h) if !h.is_zero(ring)))
        .collect()
}

/// `H^i(C)` vanishes for every index of `[lo, hi]` outside `[wlo, whi]`.
static WINDOW_CHECKS: AtomicUsize = AtomicUsize::new(0);
static WINDOW_VIOLATIONS: AtomicUsize = AtomicUsize::new(0);

/// Window assertions run so far in this process, and how many failed.
pub fn window_check_counts() -> (usize, usize) {
    (WINDOW_CHECKS.load(Ordering::Relaxed), WINDOW_VIOLATIONS.load(Ordering::Relaxed))
}

fn check_window(ring: &QuotientRing, c: &FreeComplex, lo: i32, hi: i32, wlo: i32, whi: i32, what: &str) -> Result<()> {
    let bad: Vec<i32> = nonzero_cohomology(ring, c, lo, wlo - 1)
        .into_iter()
        .chain(nonzero_cohomology(ring, c, whi + 1, hi))
        .collect();
    WINDOW_CHECKS.fetch_add(1, Ordering::Relaxed);
    if !bad.is_empty() {
        WINDOW_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::WindowCheck(format!("{what} has cohomology in degrees {bad:?}, outside [{wlo}, {whi}]")))
    }
}

/// Lowest index with nonzero cohomology and the highest, for a bounded complex.
fn cohomology_range(ring: &QuotientRing, c: &ModuleComplex) -> Option<(i32, i32)> {
    let sup = c.cohomology_support(ring);
    Some((*sup.first()?, *sup.last()?))
}

/// Options for [`phi`].
#[derive(Clone, Copy, Debug)]
pub struct PhiOptions {
    /// Run the vanishing-window assertions.
    pub check_windows: bool,
    /// Keep the intermediate complexes in the result.
    pub keep_stages: bool,
    /// Extra indices computed past every bound.
    pub slack: i32,
}

impl Default for PhiOptions {
    fn default() -> Self {
        PhiOptions { check_windows: true, keep_stages: false, slack: 2 }
    }
}

/// Window integers that do not depend on `G`, plus the module
/// `N = H^s(F^{≤s})` and `s`, `u`.
fn phi_setup(g: &GorensteinRing, c: &ModuleComplex, t: i32) -> Option<(PresentedModule, i32, i32, i32, i32)> {
    let ring = &g.ring;
    let (s, u) = cohomology_range(ring, c)?;
    let n = if c.lo() == c.hi() {
        c.term(s)
    } else {
        // F^{s-1} -> F^s of the minimal resolution; one index below is discarded
        let f = resolve_complex(ring, c, s - 1);
        PresentedModule::cokernel(f.diff(s - 1).expect("resolution window covers s - 1"))
    };
    let n = n.minimal_presentation(ring).module;
    let m = n.generators().min_degree().expect("H^s is nonzero");
    let cc = PhiWindow::c_of(s, m, t);
    Some((n, s, u, m, cc))
}

/// The window integers of `Φ_t(C)`; `None` for the zero object.
pub fn phi_window(g: &GorensteinRing, c: &ModuleComplex, t: i32) -> Result<Option<PhiWindow>> {
    Ok(phi(g, c, t, 0, PhiOptions { check_windows: false, ..Default::default() })?.window)
}

/// `Φ_t(C)` as a length-`ell` approximation (counted from the first nonzero
/// term), plus the full smart-truncated model once `ell` is large enough.
pub fn phi(g: &GorensteinRing, c: &ModuleComplex, t: i32, ell: usize, opts: PhiOptions) -> Result<SheafObject> {
    match phi_attempt(g, c, t, ell, opts) {
        Err(Error::WindowExhausted { .. }) => phi_attempt(g, c, t, ell, PhiOptions { slack: 2 * opts.slack + 2, ..opts }),
        r => r,
    }
}

fn phi_attempt(g: &GorensteinRing, c: &ModuleComplex, t: i32, ell: usize, opts: PhiOptions) -> Result<SheafObject> {
    let ring = &g.ring;
    let d = g.d();
    let Some((n, s, u, m, cc)) = phi_setup(g, c, t) else { return Ok(SheafObject::zero()) };
    let top = d - cc;
    let slack = opts.slack;

    // (1) F^{≤s}: resolution of N with N in degree s, down to index -top-1
    let length = (s + top + 1 + slack).max(1) as usize;
    let p = resolve_module(ring, &n, length);
    let f = p.shift(ring, -s);
    let ft = f.truncate_geq(ring, t);
    // (2) D = Hom(F_{≽t}, R), smart-truncated at d - c
    let dd = ft.dual(ring);
    if opts.check_windows {
        check_window(ring, &ft, f.lo() + 1, s, cc, s, "F_{>=t}")?;
        check_window(ring, &dd, -s, dd.hi() - 1, -s, top, "Hom(F_{>=t}, R)")?;
    }
    let w = dd.smart_truncate(ring, top)?;
    // b from the cohomology of G = cohomology of W. Generators of the tail of
    // G come from every H^k(W), the one at index k starting k - σ steps later
    // than those of the lowest one H^σ, so m' is the least m_k + k - σ.
    let mut low: Option<(i32, i32)> = None;
    for k in -s..=top {
        let h = w.cohomology(ring, k).minimal_presentation(ring).module;
        if let Some(mk) = h.generators().min_degree() {
            let (sigma, mp) = *low.get_or_insert((k, mk));
            low = Some((sigma, mp.min(mk + k - sigma)));
        }
    }
    let bb = match low {
        Some((sigma, mp)) => PhiWindow::b_of(-sigma, Some(mp), t),
        None => -s,
    };

    // (3) G, then E = Hom(G, R)_{≺t} with E^k = Hom(G^{-k}, R). Every output
    // index k satisfies k ≥ c - d = -top, so G is needed down to
    // -(k0 + ell) ≥ top - ell, and down to -(d - b) - 1 for the full model.
    let glo = (top - ell as i32).min(-(d - bb) - 1) - slack;
    let gg = resolve_complex(ring, &w, glo);
    let window = PhiWindow { t, d, s, u, m, c: cc, top, b: bb, ell };
    let e_all = gg.dual(ring).truncate_lt(ring, t);
    let Some(k0) = (cc - d..=e_all.hi()).find(|&i| !e_all.term(i).map(|x| x.is_zero()).unwrap_or(true)) else {
        let stages = opts.keep_stages.then(|| PhiStages { f, f_trunc: ft, d: dd, g: gg, e: e_all });
        return Ok(SheafObject { full_model: Some(ModuleComplex::zero()), window: Some(window), stages, ..SheafObject::zero() });
    };
    if opts.check_windows {
        check_window(ring, &e_all, cc - d, e_all.hi() - 1, cc - d, d - bb, "Hom(G, R)_{<t}")?;
    }
    let complex = e_all.restrict(k0, k0 + ell as i32).with_open_above(true);
    let full_model = if k0 + ell as i32 >= d - bb {
        Some(e_all.restrict(cc - d, d - bb + 1).smart_truncate(ring, d - bb)?)
    } else {
        None
    };
    let stages = opts.keep_stages.then(|| PhiStages { f, f_trunc: ft, d: dd, g: gg, e: e_all });
    Ok(SheafObject { complex, full_model, window: Some(window), stages })
}

/// `max{ā_i(C^j)} - n` over the terms of `C`, from their minimal
/// resolutions over `S`; `None` when every term is zero.
pub fn r_bound(g: &GorensteinRing, c: &ModuleComplex) -> Option<i32> {
    let ring = &g.ring;
    let mut best: Option<i32> = None;
    let rbetti = &g.data.betti;
    let rmax = (0..=g.data.pd).filter_map(|i| rbetti.max_degree(i)).max().unwrap_or(0);
    for m in c.terms() {
        let top = if m.relations().is_empty() {
            // free: ā_i(⊕R(-g)) = max_g (ā_i(R) + g)
            m.generators().max_degree().map(|gmax| rmax + gmax)
        } else {
            let b = s_betti(ring, m);
            b.entries().keys().map(|&(_, j)| j).max()
        };
        if let Some(v) = top {
            best = Some(best.map_or(v, |b: i32| b.max(v)));
        }
    }
    best.map(|v| v - g.n())
}

/// Betti table over `S` of an `R`-module (relations plus `I` times every generator).
pub fn s_betti(ring: &QuotientRing, m: &PresentedModule) -> BettiTable {
    let mut rels: Vec<Vector> = m.relations().to_vec();
    for i in 0..m.generators().rank() {
        for p in ring.ideal_basis() {
            rels.push(Vector::from_poly(i, p));
        }
    }
    let sm = PresentedModule::from_relations(m.generators().clone(), rels);
    BettiTable::from_complex(&resolve_over_s(ring, &sm))
}

/// `Hom(R(-e), C^p)_{≥ bound} = C^p(e)_{≥ bound}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TruncatedTwist {
    /// Index `p` of the input term.
    pub term: i32,
    pub twist: i32,
    pub bound: i32,
}

/// `Ψ_t(C) = RHom_R(R_{≥r}, C)_{≥ t-a}` as the total complex of
/// `Hom(P, C)` with `P` a resolution of `R_{≥r}`, truncated in internal
/// degrees `≥ t - a` and smart-truncated at `sup C + d - 1`.
#[derive(Clone, Debug)]
pub struct PsiResult {
    pub t: i32,
    pub r: i32,
    /// Internal-degree bound `t - a`.
    pub bound: i32,
    /// Highest cohomological index kept.
    pub cutoff: i32,
    pub input: ModuleComplex,
    /// Resolution of `R_{≥r}` (just `R` when `r ≤ 0`).
    pub resolution: FreeComplex,
    cache: RefCell<PsiCache>,
}

#[derive(Clone, Debug, Default)]
struct PsiCache {
    pieces: PieceCache,
    ranks: HashMap<(i32, i32), usize>,
}

/// `Ψ_t(C)`; `r` defaults to the smallest valid bound for `C(t - a)`.
pub fn psi(g: &GorensteinRing, c: &ModuleComplex, t: i32, r: Option<i32>) -> Result<PsiResult> {
    let ring = &g.ring;
    let bound = t - g.a();
    let c = c.trimmed(ring);
    let d = g.d();
    let Some(rb) = r_bound(g, &c) else {
        return Ok(PsiResult { t, r: 0, bound, cutoff: 0, input: c, resolution: FreeComplex::zero(), cache: Default::default() });
    };
    let r = r.unwrap_or(rb - bound);
    let cutoff = c.hi() + d - 1;
    let length = (c.hi() - c.lo() + d + 1) as usize;
    let rmod = PresentedModule::free(FreeModule::new(vec![0]));
    let resolution = if r <= 0 {
        FreeComplex::concentrated(FreeModule::new(vec![0]), 0)
    } else {
        resolve_module(ring, &rmod.truncate(ring, r), length)
    };
    Ok(PsiResult { t, r, bound, cutoff, input: c, resolution, cache: Default::default() })
}

impl PsiResult {
    pub fn is_zero(&self) -> bool {
        self.input.terms().is_empty()
    }

    /// Lowest cohomological index of the total complex.
    pub fn lo(&self) -> i32 {
        self.input.lo()
    }

    /// Summands `C^p(e)_{≥ bound}` of term `n`, sorted.
    pub fn term(&self, n: i32) -> Vec<TruncatedTwist> {
        if self.is_zero() || n > self.cutoff {
            return Vec::new();
        }
        let mut out = Vec::new();
        for p in self.input.lo()..=self.input.hi().min(n) {
            if let Ok(pm) = self.resolution.term(p - n) {
                for &e in pm.degrees() {
                    out.push(TruncatedTwist { term: p, twist: e, bound: self.bound });
                }
            }
        }
        out.sort();
        out
    }

    /// `Ψ(j)`-style termwise data when the input terms are free:
    /// `(index, [(twist of R, bound, mult)])`.
    pub fn free_twist_data(&self) -> Vec<(i32, Vec<(i32, i32, usize)>)> {
        let mut out = Vec::new();
        for n in self.lo()..=self.cutoff {
            let mut counts: BTreeMap<(i32, i32), usize> = BTreeMap::new();
            for tt in self.term(n) {
                for &gdeg in self.input.term(tt.term).generators().degrees() {
                    *counts.entry((tt.twist - gdeg, tt.bound)).or_default() += 1;
                }
            }
            if !counts.is_empty() {
                out.push((n, counts.into_iter().rev().map(|((j, b), k)| (j, b, k)).collect()));
            }
        }
        out
    }

    /// `R(-2)^2_{>=3} --> ...` for free inputs, `C^p(e)_{>=w}` otherwise.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let free = self.input.terms().iter().all(|m| m.relations().is_empty());
        let mut parts = Vec::new();
        for n in self.lo()..=self.cutoff {
            let s = if free {
                let data = self.free_twist_data();
                match data.iter().find(|(i, _)| *i == n) {
                    None => "0".to_string(),
                    Some((_, v)) => v
                        .iter()
                        .map(|&(j, b, k)| {
                            let base = if j == 0 { "R".to_string() } else { format!("R({j})") };
                            if k == 1 {
                                format!("{base}_{{>={b}}}")
                            } else {
                                format!("{base}^{k}_{{>={b}}}")
                            }
                        })
                        .collect::<Vec<_>>()
                        .join(" ++ "),
                }
            } else {
                let v = self.term(n);
                if v.is_empty() {
                    "0".to_string()
                } else {
                    v.iter().map(|tt| format!("C^{}({})_{{>={}}}", tt.term, tt.twist, tt.bound)).collect::<Vec<_>>().join(" ++ ")
                }
            };
            parts.push(s);
        }
        format!("{}    (degrees {} to {})", parts.join(" --> "), self.lo(), self.cutoff)
    }

    /// `dim_k` of the degree-`j` piece of term `n`.
    pub fn term_dim(&self, ring: &QuotientRing, n: i32, j: i32) -> usize {
        if j < self.bound {
            return 0;
        }
        self.term(n).iter().map(|tt| self.input.term(tt.term).hilbert_value(ring, j + tt.twist)).sum()
    }

    /// The presented module `⊕ C^p(e)_{≥ bound}` of term `n`.
    pub fn term_module(&self, ring: &QuotientRing, n: i32) -> PresentedModule {
        let mut acc = PresentedModule::zero();
        for tt in self.term(n) {
            let m = self.input.term(tt.term).twist(tt.twist).truncate(ring, tt.bound);
            acc = acc.direct_sum(ring, &m);
        }
        acc
    }

    /// `dim_k H^n(Ψ)_j`, by linear algebra on degree-`j` pieces.
    pub fn cohomology_dim(&self, ring: &QuotientRing, n: i32, j: i32) -> usize {
        if self.is_zero() || j < self.bound || n > self.cutoff || n < self.lo() {
            return 0;
        }
        let dim = self.term_dim(ring, n, j);
        if dim == 0 {
            return 0;
        }
        dim - self.cached_rank(ring, n, j) - self.cached_rank(ring, n - 1, j)
    }

    fn cached_rank(&self, ring: &QuotientRing, n: i32, j: i32) -> usize {
        if let Some(&k) = self.cache.borrow().ranks.get(&(n, j)) {
            return k;
        }
        let mut cache = self.cache.borrow_mut();
        let k = self.differential_rank(ring, &mut cache.pieces, n, j);
        cache.ranks.insert((n, j), k);
        k
    }

    /// Rank of `∂^n` on degree-`j` pieces:
    /// `∂α = d_C α - (-1)^n α d_P` on `Hom(P^{p-n}, C^p)`.
    fn differential_rank(&self, ring: &QuotientRing, pieces: &mut PieceCache, n: i32, j: i32) -> usize {
        let f = ring.field();
        let src = self.layout(ring, pieces, n, j);
        let tgt = self.layout(ring, pieces, n + 1, j);
        if src.dim == 0 || tgt.dim == 0 {
            return 0;
        }
        let sgn = if n.rem_euclid(2) == 0 { f.neg(1) } else { 1 };
        let mut cols: Vec<SparseVec> = Vec::with_capacity(src.dim);
        for blk in &src.blocks {
            let (p, a, e) = (blk.term, blk.gen, blk.twist);
            let deg = j + e;
            let cmap = self.input.map(p);
            let pdiff = self.resolution.diff(p - n - 1).ok();
            let k = pieces.get(ring, &self.input, p, deg).dim();
            for q in 0..k {
                let v = pieces.get(ring, &self.input, p, deg).representative(q);
                let mut col: BTreeMap<usize, u32> = BTreeMap::new();
                // d_C: (p, a) -> (p + 1, a)
                if let Some(tb) = tgt.find(p + 1, a) {
                    let img = cmap.apply(ring, &v);
                    if !img.is_zero() {
                        for (i, x) in pieces.get(ring, &self.input, p + 1, deg).coordinates(&img) {
                            add_entry(f, &mut col, tb.offset + i, x);
                        }
                    }
                }
                // -(-1)^n α d_P: (p, a) -> (p, b) through multiplication by d_P[a, b]
                if let Some(dp) = &pdiff {
                    for (b, colb) in dp.columns().iter().enumerate() {
                        let entry = colb.entry(a);
                        if entry.is_zero() {
                            continue;
                        }
                        let tb = tgt.find(p, b).expect("layout covers P^{p-n-1}");
                        let img = ring.reduce_vector(&v.mul_poly(f, &entry));
                        if img.is_zero() {
                            continue;
                        }
                        let deg_b = j + tb.twist;
                        for (i, x) in pieces.get(ring, &self.input, p, deg_b).coordinates(&img) {
                            add_entry(f, &mut col, tb.offset + i, f.mul(sgn, x));
                        }
                    }
                }
                cols.push(col.into_iter().filter(|e| e.1 != 0).collect());
            }
        }
        ExactMatrix::from_columns(f, tgt.dim, &cols).rank()
    }

    fn layout(&self, ring: &QuotientRing, pieces: &mut PieceCache, n: i32, j: i32) -> Layout {
        let mut blocks = Vec::new();
        let mut dim = 0;
        for p in self.input.lo()..=self.input.hi().min(n) {
            let Ok(pm) = self.resolution.term(p - n) else { continue };
            for (a, &e) in pm.degrees().iter().enumerate() {
                let k = pieces.get(ring, &self.input, p, j + e).dim();
                blocks.push(Block { term: p, gen: a, twist: e, offset: dim });
                dim += k;
            }
        }
        Layout { blocks, dim }
    }
}

fn add_entry(f: crate::field::Fp, col: &mut BTreeMap<usize, u32>, i: usize, x: u32) {
    let e = col.entry(i).or_insert(0);
    *e = f.add(*e, x);
}

struct Block {
    term: i32,
    gen: usize,
    twist: i32,
    offset: usize,
}

struct Layout {
    blocks: Vec<Block>,
    dim: usize,
}

impl Layout {
    fn find(&self, term: i32, gen: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.term == term && b.gen == gen)
    }
}

#[derive(Clone, Debug, Default)]
struct PieceCache {
    map: HashMap<(i32, i32), Piece>,
}

impl PieceCache {
    fn get(&mut self, ring: &QuotientRing, c: &ModuleComplex, p: i32, deg: i32) -> &mut Piece {
        self.map.entry((p, deg)).or_insert_with(|| c.term(p).piece(ring, deg))
    }
}

/// `dim_k H^i(X, sheafification of C twisted by j)` for `j ≥ 0`, read off
/// the degree-`j` piece of `H^i(Ψ_a(C))`.
pub fn hypercohomology(g: &GorensteinRing, c: &ModuleComplex, i: i32, j: i32) -> Result<usize> {
    if j < 0 {
        return Err(Error::Validation(format!("hypercohomology needs a twist j >= 0, got {j}")));
    }
    let p = psi(g, c, g.a(), None)?;
    Ok(p.cohomology_dim(&g.ring, i, j))
}

/// The input complex `Ψ` acts on for a sheaf object: the smart-truncated
/// full model when present, otherwise the computed window of terms.
pub fn sheaf_input(s: &SheafObject) -> Result<ModuleComplex> {
    if s.is_zero() {
        return Ok(ModuleComplex::zero());
    }
    match &s.full_model {
        Some(m) => Ok(m.clone()),
        None => ModuleComplex::from_free(&s.complex.clone().with_open_above(false)),
    }
}

/// Both sides of `Φ_t(C(j)) = Φ_{t+j}(C)(j)` and `Ψ_t(𝒞(j)) = Ψ_{t+j}(𝒞)(j)`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistCompatReport {
    pub t: i32,
    pub j: i32,
    pub ell: usize,
    pub phi_lhs: Vec<(i32, Vec<(i32, usize)>)>,
    pub phi_rhs: Vec<(i32, Vec<(i32, usize)>)>,
    pub phi_twists_equal: bool,
    /// Differentials agree entry by entry, not just the twists.
    pub phi_matrices_equal: bool,
    pub psi_terms_equal: bool,
    /// `(n, degree, lhs, rhs)` over the compared window; empty when the
    /// resolution of `R_{≥r}` is too large to compare.
    pub psi_dims: Vec<(i32, i32, usize, usize)>,
    pub psi_dims_equal: bool,
}

impl TwistCompatReport {
    pub fn holds(&self) -> bool {
        self.phi_twists_equal && self.phi_matrices_equal && self.psi_terms_equal && self.psi_dims_equal
    }
}

/// Degrees past the truncation bound compared for `Ψ`.
pub const PSI_COMPARE_SPAN: i32 = 3;

/// Cohomology dimensions of `Ψ` are only compared when the resolution of
/// `R_{≥r}` has at most this many generators in total; the symbolic terms
/// are always compared.
pub const PSI_COMPARE_MAX_RANK: usize = 150;

pub fn twist_compat_check(g: &GorensteinRing, c: &ModuleComplex, t: i32, j: i32, ell: usize) -> Result<TwistCompatReport> {
    let ring = &g.ring;
    let cj = c.twist(j);
    let lhs = phi(g, &cj, t, ell, PhiOptions::default())?;
    let rhs = phi(g, c, t + j, ell, PhiOptions::default())?.twist(j);
    let phi_lhs = lhs.twist_data();
    let phi_rhs = rhs.twist_data();
    let phi_twists_equal = phi_lhs == phi_rhs;
    let phi_matrices_equal = lhs.complex.trimmed() == rhs.complex.trimmed();

    let pl = psi(g, &cj, t, None)?;
    let pr = psi(g, c, t + j, None)?;
    let mut psi_terms_equal = pl.is_zero() == pr.is_zero();
    let mut psi_dims = Vec::new();
    if !pl.is_zero() && !pr.is_zero() {
        psi_terms_equal &= (pl.lo(), pl.cutoff) == (pr.lo(), pr.cutoff);
        for n in pl.lo()..=pl.cutoff {
            // the left side indexes terms of `C(j)`, whose twist by `e` is `C^p(e + j)`
            let shifted: Vec<TruncatedTwist> = pr
                .term(n)
                .into_iter()
                .map(|tt| TruncatedTwist { bound: tt.bound - j, ..tt })
                .collect();
            psi_terms_equal &= pl.term(n) == shifted;
            if pl.resolution.terms().iter().map(FreeModule::rank).sum::<usize>() > PSI_COMPARE_MAX_RANK {
                continue;
            }
            for deg in pl.bound..pl.bound + PSI_COMPARE_SPAN {
                psi_dims.push((n, deg, pl.cohomology_dim(ring, n, deg), pr.cohomology_dim(ring, n, deg + j)));
            }
        }
    }
    let psi_dims_equal = psi_dims.iter().all(|&(_, _, a, b)| a == b);
    Ok(TwistCompatReport { t, j, ell, phi_lhs, phi_rhs, phi_twists_equal, phi_matrices_equal, psi_terms_equal, psi_dims, psi_dims_equal })
}
