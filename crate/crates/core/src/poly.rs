//! Monomials and polynomials over GF(p) in the standard grading, ordered by
//! graded reverse lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Fp;

/// Maximum number of variables supported by [`Monomial`].
pub const MAX_VARS: usize = 16;

/// A monomial `x_0^e_0 ... x_n^e_n` with cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], deg: 0 };

    pub fn new(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut m = Self::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = e;
            m.deg += e as u32;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product; exponent overflow past 16 bits is a hard error.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        out.deg = self.deg + other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.exps[i] = other.exps[i] - self.exps[i];
        }
        out.deg = other.deg - self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Self::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Graded reverse lexicographic comparison.
    #[inline]
    pub fn grevlex(&self, other: &Monomial) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// All monomials of degree `d` in `nvars` variables, in decreasing grevlex order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Self::ONE);
            }
            return out;
        }
        let mut cur = [0u16; MAX_VARS];
        fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
            if i == nvars - 1 {
                cur[i] = left as u16;
                out.push(Monomial::new(&cur[..nvars]));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, nvars, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, nvars, d, &mut cur, &mut out);
        out.sort_by(|a, b| b.grevlex(a));
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.exps[i] != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// A polynomial: terms sorted by decreasing grevlex order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Poly { terms: vec![(Monomial::ONE, c)] }
        }
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i), 1)
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(field: Fp, mut terms: Vec<(Monomial, u32)>) -> Self {
        terms.sort_by(|a, b| b.0.grevlex(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    /// Wraps terms already sorted and free of duplicates/zeros.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
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

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Degree of the leading term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// The nonzero constant value, if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn add(&self, field: Fp, other: &Poly) -> Poly {
        self.add_scaled(field, other, 1, &Monomial::ONE)
    }

    pub fn sub(&self, field: Fp, other: &Poly) -> Poly {
        self.add_scaled(field, other, field.neg(1), &Monomial::ONE)
    }

    pub fn neg(&self, field: Fp) -> Poly {
        self.scale(field, field.neg(1))
    }

    pub fn scale(&self, field: Fp, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(m, a)| (m, field.mul(a, c))).collect() }
    }

    pub fn mul_monomial(&self, field: Fp, m: &Monomial, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(t, a)| (t.mul(m), field.mul(a, c))).collect() }
    }

    /// `self + c * m * other`, merging sorted term lists.
    pub fn add_scaled(&self, field: Fp, other: &Poly, c: u32, m: &Monomial) -> Poly {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|&(t, v)| (t.mul(m), field.mul(v, c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.0.grevlex(&y.0) {
                    Ordering::Greater => out.push(*a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = field.add(x.1, y.1);
                        let mon = x.0;
                        a.next();
                        b.next();
                        if s != 0 {
                            out.push((mon, s));
                        }
                    }
                },
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Poly { terms: out }
    }

    pub fn mul(&self, field: Fp, other: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for &(m, c) in &other.terms {
            acc = acc.add_scaled(field, self, c, &m);
        }
        acc
    }

    pub fn make_monic(&self, field: Fp) -> Poly {
        match self.lead() {
            Some(&(_, c)) => self.scale(field, field.inv(c)),
            None => Poly::zero(),
        }
    }

    /// Evaluates at a point of GF(p)^n.
    pub fn eval(&self, field: Fp, point: &[u32]) -> u32 {
        self.terms.iter().fold(0, |acc, (m, c)| {
            let mut v = *c;
            for (i, &x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    v = field.mul(v, x);
                }
            }
            field.add(acc, v)
        })
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|t| t.0.degree() == d).cloned().collect() }
    }

    /// Renders the polynomial with the given variable names.
    pub fn display<'a>(&'a self, field: Fp, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, field, names }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    field: Fp,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let c = self.field.signed(*c);
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut factors = Vec::new();
            if abs != 1 || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, name) in self.names.iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Error from [`parse_poly`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial {input:?}: {reason}")]
pub struct ParseError {
    pub input: String,
    pub reason: String,
}

/// Parses text such as `3*x0^2*x1 - x2 + 1`. Whitespace is ignored; variables
/// must be among `names`.
pub fn parse_poly(field: Fp, names: &[String], input: &str) -> Result<Poly, ParseError> {
    let err = |reason: String| ParseError { input: input.to_string(), reason };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input".into()));
    }
    let mut terms = Vec::new();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            sign = -1;
        } else if !first {
            return Err(err(format!("expected '+' or '-' before {rest:?}")));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        if term.is_empty() {
            return Err(err("empty term".into()));
        }
        let mut coeff = field.from_i64(sign);
        let mut mono = Monomial::ONE;
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err(format!("empty factor in {term:?}")));
            }
            if factor.chars().all(|c| c.is_ascii_digit()) {
                let v: i64 = factor.parse().map_err(|_| err(format!("bad integer {factor:?}")))?;
                coeff = field.mul(coeff, field.from_i64(v));
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u16 = e.parse().map_err(|_| err(format!("bad exponent in {factor:?}")))?;
                    (n, e)
                }
                None => (factor, 1),
            };
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| err(format!("unknown variable {name:?}")))?;
            let mut exps = [0u16; MAX_VARS];
            exps[idx] = exp;
            mono = mono.mul(&Monomial::new(&exps[..names.len()]));
        }
        terms.push((mono, coeff));
    }
    Ok(Poly::from_terms(field, terms))
}

/// Index of the first divisor (in list order) of `m` among `leads`.
pub(crate) fn find_divisor(leads: &[Monomial], m: &Monomial) -> Option<usize> {
    leads.iter().position(|l| l.divides(m))
}

/// Multivariate division: fully reduces `f` by the marked generators `gens`
/// (leading terms w.r.t. grevlex). The result has no term divisible by any
/// leading monomial; `f - result` lies in the ideal they generate.
pub fn normal_form(field: Fp, f: &Poly, gens: &[Poly]) -> Poly {
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.make_monic(field)).collect();
    let leads: Vec<Monomial> = gens.iter().map(|g| g.lead().unwrap().0).collect();
    reduce_with(field, f, &gens, &leads)
}

pub(crate) fn reduce_with(field: Fp, f: &Poly, gens: &[Poly], leads: &[Monomial]) -> Poly {
    if leads.is_empty() {
        return f.clone();
    }
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    let mut p = f.clone();
    while let Some(&(m, c)) = p.lead() {
        match find_divisor(leads, &m) {
            Some(k) => {
                let q = leads[k].quotient_of(&m);
                p = p.add_scaled(field, &gens[k], field.neg(c), &q);
            }
            None => {
                rem.push((m, c));
                p.terms.remove(0);
            }
        }
    }
    Poly::from_sorted(rem)
}
