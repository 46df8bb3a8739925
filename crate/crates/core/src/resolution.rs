//! Minimal free resolutions of modules, Betti tables, and the Gorenstein
//! data of a quotient ring.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::FreeComplex;
use crate::groebner::{kernel_of_map, Over};
use crate::module::{GradedMap, PresentedModule};
#[cfg(test)]
use crate::module::FreeModule;
use crate::ring::QuotientRing;

/// Minimal free resolution of `M` over `ring`, with `F^0` the generators and
/// terms down to `F^{-length}`. Over a polynomial ring the result closes as
/// soon as a kernel vanishes.
pub fn resolve_module(ring: &QuotientRing, m: &PresentedModule, length: usize) -> FreeComplex {
    let min = m.minimal_presentation(ring).module;
    let f0 = min.generators().clone();
    if f0.is_zero() {
        return FreeComplex::zero();
    }
    let mut terms = vec![f0];
    let mut diffs: Vec<GradedMap> = Vec::new();
    let first = min.presentation().clone();
    let mut closed = first.source().is_zero();
    if !closed && length >= 1 {
        terms.push(first.source().clone());
        diffs.push(first);
    }
    while !closed && !diffs.is_empty() {
        // one kernel past the window decides whether the resolution ends here
        let k = kernel_of_map(ring, diffs.last().unwrap(), Over::R);
        if k.source().is_zero() {
            closed = true;
        } else if terms.len() <= length {
            terms.push(k.source().clone());
            diffs.push(k);
        } else {
            break;
        }
    }
    let n = terms.len();
    let lo = -(n as i32 - 1);
    terms.reverse();
    diffs.reverse();
    FreeComplex::new(lo, terms, diffs).with_open_below(!closed)
}

/// Finite minimal resolution over the ambient polynomial ring.
pub fn resolve_over_s(ring: &QuotientRing, m: &PresentedModule) -> FreeComplex {
    let s = ring.ambient();
    resolve_module(&s, m, ring.nvars() + 1)
}

/// Minimal resolution over `R` on the window `[-length, 0]`.
pub fn resolve_over_r(ring: &QuotientRing, m: &PresentedModule, length: usize) -> FreeComplex {
    resolve_module(ring, m, length)
}

/// `β_{i,j}`: rank of the degree-`j` generators of the `i`-th term
/// (homological index `i = -cohomological index`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(i32, i32), usize>,
}

/// Serialized as a list of `{i, j, rank}` (JSON keys must be strings).
impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: i32,
            j: i32,
            rank: usize,
        }
        ser.collect_seq(self.entries.iter().map(|(&(i, j), &rank)| Entry { i, j, rank }))
    }
}

impl BettiTable {
    pub fn from_complex(c: &FreeComplex) -> Self {
        let mut entries = BTreeMap::new();
        for (k, t) in c.terms().iter().enumerate() {
            let i = -(c.lo() + k as i32);
            for &d in t.degrees() {
                *entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    pub fn get(&self, i: i32, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(i32, i32), usize> {
        &self.entries
    }

    pub fn total(&self, i: i32) -> usize {
        self.entries.iter().filter(|((a, _), _)| *a == i).map(|(_, v)| v).sum()
    }

    /// `ā_i = sup{j : β_{i,j} ≠ 0}`.
    pub fn max_degree(&self, i: i32) -> Option<i32> {
        self.entries.keys().filter(|(a, _)| *a == i).map(|&(_, j)| j).max()
    }

    pub fn length(&self) -> Option<i32> {
        self.entries.keys().map(|&(i, _)| i).max()
    }
}

impl fmt::Display for BettiTable {
    /// Rows are `j - i`, columns are `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(zero)");
        }
        let imin = self.entries.keys().map(|k| k.0).min().unwrap();
        let imax = self.entries.keys().map(|k| k.0).max().unwrap();
        let rmin = self.entries.keys().map(|k| k.1 - k.0).min().unwrap();
        let rmax = self.entries.keys().map(|k| k.1 - k.0).max().unwrap();
        let w = self.entries.values().map(|v| v.to_string().len()).max().unwrap().max(imax.to_string().len()).max(2);
        write!(f, "{:>7}", "")?;
        for i in imin..=imax {
            write!(f, " {i:>w$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>7}", "total:")?;
        for i in imin..=imax {
            write!(f, " {:>w$}", self.total(i))?;
        }
        writeln!(f)?;
        for r in rmin..=rmax {
            write!(f, "{:>7}", format!("{r}:"))?;
            for i in imin..=imax {
                let v = self.get(i, i + r);
                if v == 0 {
                    write!(f, " {:>w$}", ".")?;
                } else {
                    write!(f, " {v:>w$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinData {
    pub is_gorenstein: bool,
    /// Gorenstein parameter (meaningful when `is_gorenstein`).
    pub a: i32,
    /// Krull dimension of `R`.
    pub d: i32,
    pub codim: i32,
    /// Projective dimension of `R` over `S`.
    pub pd: i32,
    /// Betti table of `R` over `S`.
    pub betti: BettiTable,
}

/// Degree of the eventual Hilbert polynomial plus one (0 when the Hilbert
/// function vanishes eventually), from finite differences of consecutive
/// values in the range where the Hilbert function is already polynomial.
pub fn dimension_from_hilbert(values: &[i64]) -> i32 {
    let mut v = values.to_vec();
    let mut order = 0;
    let mut last_nonzero = None;
    while !v.is_empty() {
        if v.iter().any(|&x| x != 0) {
            last_nonzero = Some(order);
        }
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
        order += 1;
    }
    match last_nonzero {
        None => 0,
        Some(k) => k + 1,
    }
}

/// Gorenstein test and parameters from the minimal `S`-resolution of `R`.
pub fn gorenstein_data(ring: &QuotientRing) -> GorensteinData {
    let rmod = PresentedModule::quotient_of_ring(ring.ideal_basis());
    let res = resolve_over_s(ring, &rmod);
    let betti = BettiTable::from_complex(&res);
    let nvars = ring.nvars() as i32;
    let pd = betti.length().unwrap_or(0);
    // Hilbert function is polynomial past the largest twist minus n
    let start = res.terms().iter().flat_map(|t| t.degrees().iter().copied()).max().unwrap_or(0).max(0);
    let values: Vec<i64> = (start..start + nvars + 2).map(|d| ring.hilbert_function(d) as i64).collect();
    let d = dimension_from_hilbert(&values);
    let codim = nvars - d;
    let last = res.term(-pd).unwrap_or_default();
    let is_gorenstein = pd == codim && last.rank() == 1;
    let a = if is_gorenstein { nvars - last.degrees()[0] } else { 0 };
    GorensteinData { is_gorenstein, a, d, codim, pd, betti }
}

/// `Ext^i_R(M, R) = 0` for `1 ≤ i ≤ d`.
pub fn is_mcm(ring: &QuotientRing, m: &PresentedModule, d: i32) -> bool {
    let f = resolve_over_r(ring, m, d as usize + 1);
    let dual = f.dual(ring);
    (1..=d).all(|i| dual.cohomology(ring, i).expect("resolution window covers Ext^1..Ext^d").is_zero(ring))
}
