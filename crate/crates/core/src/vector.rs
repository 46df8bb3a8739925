//! Elements of free modules over a polynomial ring, stored as flat term lists
//! in position-over-term order.

use std::cmp::Ordering;

use crate::field::Fp;
use crate::poly::{Monomial, Poly};

/// Position-over-term comparison: a smaller component index is larger; within
/// a component, grevlex decides.
#[inline]
pub fn pot_cmp(a: &(u32, Monomial), b: &(u32, Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => a.1.grevlex(&b.1),
        o => o,
    }
}

/// An element `sum_k c_k m_k e_{i_k}` of a free module.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Vector {
    // sorted decreasing in position-over-term order
    terms: Vec<(u32, Monomial, u32)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    /// The basis vector `e_i`.
    pub fn basis(i: usize) -> Self {
        Vector { terms: vec![(i as u32, Monomial::ONE, 1)] }
    }

    /// `m * e_i`.
    pub fn monomial(i: usize, m: Monomial) -> Self {
        Vector { terms: vec![(i as u32, m, 1)] }
    }

    /// `p * e_i`.
    pub fn from_poly(i: usize, p: &Poly) -> Self {
        Vector { terms: p.terms().iter().map(|&(m, c)| (i as u32, m, c)).collect() }
    }

    /// Builds from `(component, poly)` pairs in any order.
    pub fn from_entries(field: Fp, entries: impl IntoIterator<Item = (usize, Poly)>) -> Self {
        let mut terms: Vec<(u32, Monomial, u32)> = Vec::new();
        for (i, p) in entries {
            terms.extend(p.terms().iter().map(|&(m, c)| (i as u32, m, c)));
        }
        Self::from_raw_terms(field, terms)
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_raw_terms(field: Fp, mut terms: Vec<(u32, Monomial, u32)>) -> Self {
        terms.sort_by(|a, b| pot_cmp(&(b.0, b.1), &(a.0, a.1)));
        let mut out: Vec<(u32, Monomial, u32)> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.0 == t.0 && last.1 == t.1 => last.2 = field.add(last.2, t.2),
                _ => out.push(t),
            }
        }
        out.retain(|t| t.2 != 0);
        Vector { terms: out }
    }

    pub fn terms(&self) -> &[(u32, Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(u32, Monomial, u32)> {
        self.terms.first().copied()
    }

    /// The polynomial in component `i`.
    pub fn entry(&self, i: usize) -> Poly {
        let i = i as u32;
        Poly::from_sorted(self.terms.iter().filter(|t| t.0 == i).map(|t| (t.1, t.2)).collect())
    }

    /// Nonzero `(component, poly)` pairs in increasing component order.
    pub fn entries(&self) -> Vec<(usize, Poly)> {
        let mut out: Vec<(usize, Poly)> = Vec::new();
        let mut start = 0;
        while start < self.terms.len() {
            let c = self.terms[start].0;
            let mut end = start;
            while end < self.terms.len() && self.terms[end].0 == c {
                end += 1;
            }
            out.push((
                c as usize,
                Poly::from_sorted(self.terms[start..end].iter().map(|t| (t.1, t.2)).collect()),
            ));
            start = end;
        }
        out
    }

    /// Largest component index plus one (0 for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.terms.iter().map(|t| t.0 as usize + 1).max().unwrap_or(0)
    }

    /// Internal degree of the leading term with respect to generator degrees.
    pub fn degree(&self, degrees: &[i32]) -> Option<i32> {
        self.lead().map(|(c, m, _)| m.degree() as i32 + degrees[c as usize])
    }

    pub fn is_homogeneous(&self, degrees: &[i32]) -> bool {
        let mut it = self.terms.iter().map(|t| t.1.degree() as i32 + degrees[t.0 as usize]);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, field: Fp, other: &Vector, c: u32, m: &Monomial) -> Vector {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|&(i, t, v)| (i, t.mul(m), field.mul(v, c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match pot_cmp(&(x.0, x.1), &(y.0, y.1)) {
                    Ordering::Greater => out.push(*a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = field.add(x.2, y.2);
                        let (i, mon) = (x.0, x.1);
                        a.next();
                        b.next();
                        if s != 0 {
                            out.push((i, mon, s));
                        }
                    }
                },
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Vector { terms: out }
    }

    pub fn add(&self, field: Fp, other: &Vector) -> Vector {
        self.add_scaled(field, other, 1, &Monomial::ONE)
    }

    pub fn sub(&self, field: Fp, other: &Vector) -> Vector {
        self.add_scaled(field, other, field.neg(1), &Monomial::ONE)
    }

    pub fn scale(&self, field: Fp, c: u32) -> Vector {
        if c == 0 {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|&(i, m, v)| (i, m, field.mul(v, c))).collect() }
    }

    pub fn neg(&self, field: Fp) -> Vector {
        self.scale(field, field.neg(1))
    }

    pub fn mul_poly(&self, field: Fp, p: &Poly) -> Vector {
        let mut acc = Vector::zero();
        for &(m, c) in p.terms() {
            acc = acc.add_scaled(field, self, c, &m);
        }
        acc
    }

    pub fn make_monic(&self, field: Fp) -> Vector {
        match self.lead() {
            Some((_, _, c)) => self.scale(field, field.inv(c)),
            None => Vector::zero(),
        }
    }

    /// Relabels components through `f`; entries mapped to `None` are dropped.
    pub fn map_components(&self, field: Fp, f: impl Fn(usize) -> Option<usize>) -> Vector {
        let terms = self
            .terms
            .iter()
            .filter_map(|&(i, m, c)| f(i as usize).map(|j| (j as u32, m, c)))
            .collect();
        Self::from_raw_terms(field, terms)
    }

    /// Drops the first term (used by reduction loops).
    pub(crate) fn split_lead(mut self) -> ((u32, Monomial, u32), Vector) {
        let t = self.terms.remove(0);
        (t, self)
    }

    pub(crate) fn push_smaller(&mut self, t: (u32, Monomial, u32)) {
        debug_assert!(self.terms.last().map_or(true, |l| pot_cmp(&(l.0, l.1), &(t.0, t.1)) == Ordering::Greater));
        self.terms.push(t);
    }
}
