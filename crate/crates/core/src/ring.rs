//! The graded quotient ring `R = k[x_0..x_n]/I`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groebner::{Builder, Pending};
use crate::poly::{parse_poly, reduce_with, Monomial, Poly};
use crate::vector::Vector;

/// `S = GF(p)[x_0..x_n]` together with a reduced Gröbner basis of a
/// homogeneous ideal `I`. With `I = 0` this is `S` itself.
#[derive(Debug)]
pub struct QuotientRing {
    field: Fp,
    names: Vec<String>,
    generators: Vec<Poly>,
    basis: Vec<Poly>,
    basis_leads: Vec<Monomial>,
    standard: Mutex<HashMap<u32, Arc<Vec<Monomial>>>>,
}

impl Clone for QuotientRing {
    fn clone(&self) -> Self {
        QuotientRing {
            field: self.field,
            names: self.names.clone(),
            generators: self.generators.clone(),
            basis: self.basis.clone(),
            basis_leads: self.basis_leads.clone(),
            standard: Mutex::new(HashMap::new()),
        }
    }
}

impl QuotientRing {
    pub fn new(field: Fp, names: Vec<String>, generators: Vec<Poly>) -> Result<Self> {
        if names.is_empty() || names.len() > crate::poly::MAX_VARS {
            return Err(Error::Validation(format!(
                "number of variables must be between 1 and {}",
                crate::poly::MAX_VARS
            )));
        }
        let generators: Vec<Poly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &generators {
            if !g.is_homogeneous() {
                return Err(Error::Validation(format!(
                    "ideal generator {} is not homogeneous",
                    g.display(field, &names)
                )));
            }
        }
        let mut b = Builder::new(field, &[0]);
        b.run(generators.iter().map(|g| Pending { vector: Vector::from_poly(0, g), candidate: None }).collect());
        let gb = b.finish();
        let basis: Vec<Poly> = gb.elements().iter().map(|v| v.entry(0)).collect();
        let basis_leads = basis.iter().map(|p| p.lead().unwrap().0).collect();
        Ok(QuotientRing { field, names, generators, basis, basis_leads, standard: Mutex::new(HashMap::new()) })
    }

    /// Convenience constructor from text.
    pub fn parse(p: u32, names: &[&str], ideal: &[&str]) -> Result<Self> {
        let field = Fp::new(p).ok_or_else(|| Error::Validation(format!("{p} is not a prime below 2^31")))?;
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let gens = ideal
            .iter()
            .map(|s| parse_poly(field, &names, s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(field, names, gens)
    }

    /// The ambient polynomial ring `S`.
    pub fn ambient(&self) -> QuotientRing {
        QuotientRing {
            field: self.field,
            names: self.names.clone(),
            generators: Vec::new(),
            basis: Vec::new(),
            basis_leads: Vec::new(),
            standard: Mutex::new(HashMap::new()),
        }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Number of variables `n + 1`.
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn ideal_generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Reduced Gröbner basis of `I` (monic, grevlex).
    pub fn ideal_basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn poly(&self, s: &str) -> Result<Poly> {
        Ok(parse_poly(self.field, &self.names, s)?)
    }

    pub fn display(&self, p: &Poly) -> String {
        p.display(self.field, &self.names).to_string()
    }

    /// Normal form modulo `I`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        reduce_with(self.field, p, &self.basis, &self.basis_leads)
    }

    /// Componentwise normal form modulo `I`.
    pub fn reduce_vector(&self, v: &Vector) -> Vector {
        if self.basis.is_empty() {
            return v.clone();
        }
        Vector::from_entries(self.field, v.entries().into_iter().map(|(i, p)| (i, self.reduce(&p))))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(self.field, b))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.basis_leads.iter().any(|l| l.divides(m))
    }

    /// Monomials of degree `d` outside the initial ideal, in decreasing order.
    /// They form a k-basis of `R_d`.
    pub fn standard_monomials(&self, d: i32) -> Arc<Vec<Monomial>> {
        if d < 0 {
            return Arc::new(Vec::new());
        }
        let d = d as u32;
        if let Some(v) = self.standard.lock().unwrap().get(&d) {
            return v.clone();
        }
        let v: Vec<Monomial> = if d == 0 {
            vec![Monomial::ONE]
        } else {
            // extend standard monomials of degree d-1 by one variable
            let prev = self.standard_monomials(d as i32 - 1);
            let mut set = std::collections::HashSet::new();
            for m in prev.iter() {
                for i in 0..self.nvars() {
                    let mm = m.mul(&Monomial::var(i));
                    if self.is_standard(&mm) {
                        set.insert(mm);
                    }
                }
            }
            let mut v: Vec<Monomial> = set.into_iter().collect();
            v.sort_by(|a, b| b.cmp(a));
            v
        };
        let v = Arc::new(v);
        self.standard.lock().unwrap().insert(d, v.clone());
        v
    }

    /// `dim_k R_d`.
    pub fn hilbert_function(&self, d: i32) -> usize {
        self.standard_monomials(d).len()
    }
}
