//! Graded free modules, homogeneous maps between them, and finitely
//! presented graded modules (cokernels of homogeneous matrices).

use std::collections::HashMap;
use std::fmt;

use crate::field::{Echelon, ExactMatrix, SparseVec};
use crate::groebner::{minimal_generators, minimal_generators_modulo, GraphBasis, Over};
use crate::poly::{Monomial, Poly};
use crate::ring::QuotientRing;
use crate::vector::Vector;

/// `⊕_i R(-d_i)`: generator `i` lives in internal degree `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeModule {
    degrees: Vec<i32>,
}

impl FreeModule {
    pub fn new(degrees: Vec<i32>) -> Self {
        FreeModule { degrees }
    }

    pub fn zero() -> Self {
        FreeModule { degrees: Vec::new() }
    }

    /// The rank-one module `R(j)`, generated in degree `-j`.
    pub fn twist_of_ring(j: i32) -> Self {
        FreeModule { degrees: vec![-j] }
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `M(j)`: every generator degree drops by `j`.
    pub fn twist(&self, j: i32) -> FreeModule {
        FreeModule { degrees: self.degrees.iter().map(|d| d - j).collect() }
    }

    /// `Hom(M, R)`: generator degrees negated.
    pub fn dual(&self) -> FreeModule {
        FreeModule { degrees: self.degrees.iter().map(|d| -d).collect() }
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        FreeModule { degrees }
    }

    /// Twists `j` appearing as `R(j)^mult`, sorted by decreasing `j`.
    pub fn twist_multiset(&self) -> Vec<(i32, usize)> {
        let mut m: std::collections::BTreeMap<i32, usize> = Default::default();
        for &d in &self.degrees {
            *m.entry(-d).or_default() += 1;
        }
        m.into_iter().rev().collect()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    /// k-dimension of the degree-`d` piece.
    pub fn dim(&self, ring: &QuotientRing, d: i32) -> usize {
        self.degrees.iter().map(|&g| ring.hilbert_function(d - g)).sum()
    }

    /// Monomial basis of the degree-`d` piece, ordered by generator then by
    /// decreasing monomial.
    pub fn piece_basis(&self, ring: &QuotientRing, d: i32) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (i, &g) in self.degrees.iter().enumerate() {
            for m in ring.standard_monomials(d - g).iter() {
                out.push((i, *m));
            }
        }
        out
    }

    /// Renders as `R(-2)^2 ++ R(-3)`, or `0`.
    pub fn display_with(&self, symbol: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = self.twist_multiset();
        // farthest from R last: R(-4) ++ R(-5), O(5) ++ O(6)
        parts.sort_by_key(|&(j, _)| (j.abs(), j));
        parts
            .into_iter()
            .map(|(j, k)| {
                let base = if j == 0 { symbol.to_string() } else { format!("{symbol}({j})") };
                if k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ++ ")
    }
}

impl fmt::Display for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("R"))
    }
}

/// A homogeneous map of degree 0 between graded free modules. Column `c` is
/// the image of source generator `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: FreeModule,
    target: FreeModule,
    columns: Vec<Vector>,
}

impl GradedMap {
    /// Panics unless every entry `(r, c)` is homogeneous of degree
    /// `source[c] - target[r]`.
    pub fn from_columns(source: FreeModule, target: FreeModule, columns: Vec<Vector>) -> Self {
        let m = GradedMap { source, target, columns };
        if let Err(e) = m.check() {
            panic!("{e}");
        }
        m
    }

    pub fn try_from_columns(source: FreeModule, target: FreeModule, columns: Vec<Vector>) -> Result<Self, String> {
        let m = GradedMap { source, target, columns };
        m.check()?;
        Ok(m)
    }

    /// A map whose source degrees are read off the (nonzero) images.
    pub fn from_images(target: FreeModule, columns: Vec<Vector>) -> Self {
        let degrees = columns
            .iter()
            .map(|c| c.degree(target.degrees()).expect("image must be nonzero"))
            .collect();
        Self::from_columns(FreeModule::new(degrees), target, columns)
    }

    pub(crate) fn from_columns_auto(target: FreeModule, columns: Vec<Vector>) -> Self {
        Self::from_images(target, columns)
    }

    fn check(&self) -> Result<(), String> {
        if self.columns.len() != self.source.rank() {
            return Err(format!(
                "map has {} columns but source has rank {}",
                self.columns.len(),
                self.source.rank()
            ));
        }
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, m, _) in col.terms() {
                let r = r as usize;
                if r >= self.target.rank() {
                    return Err(format!("column {c} has an entry in row {r} beyond the target rank"));
                }
                let want = self.source.degrees()[c] - self.target.degrees()[r];
                if m.degree() as i32 != want {
                    return Err(format!(
                        "entry ({r}, {c}) has degree {} but must be homogeneous of degree {want}",
                        m.degree()
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let columns = vec![Vector::zero(); source.rank()];
        GradedMap { source, target, columns }
    }

    pub fn identity(m: FreeModule) -> Self {
        let columns = (0..m.rank()).map(Vector::basis).collect();
        GradedMap { source: m.clone(), target: m, columns }
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn column(&self, c: usize) -> &Vector {
        &self.columns[c]
    }

    pub fn entry(&self, r: usize, c: usize) -> Poly {
        self.columns[c].entry(r)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Position `(row, column, value)` of a nonzero constant entry, if any.
    pub fn find_unit(&self) -> Option<(usize, usize, u32)> {
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, m, v) in col.terms() {
                if m.is_one() {
                    return Some((r as usize, c, v));
                }
            }
        }
        None
    }

    /// True when no entry has a constant term.
    pub fn is_minimal(&self) -> bool {
        self.find_unit().is_none()
    }

    /// Image of a source vector, reduced modulo the ideal.
    pub fn apply(&self, ring: &QuotientRing, v: &Vector) -> Vector {
        let f = ring.field();
        let mut acc = Vector::zero();
        for &(c, m, a) in v.terms() {
            acc = acc.add_scaled(f, &self.columns[c as usize], a, &m);
        }
        ring.reduce_vector(&acc)
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &QuotientRing, other: &GradedMap) -> GradedMap {
        assert_eq!(other.target.degrees(), self.source.degrees(), "composition of incompatible maps");
        let columns = other.columns.iter().map(|v| self.apply(ring, v)).collect();
        GradedMap { source: other.source.clone(), target: self.target.clone(), columns }
    }

    pub fn scale(&self, ring: &QuotientRing, c: u32) -> GradedMap {
        let f = ring.field();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            columns: self.columns.iter().map(|v| v.scale(f, c)).collect(),
        }
    }

    pub fn neg(&self, ring: &QuotientRing) -> GradedMap {
        self.scale(ring, ring.field().neg(1))
    }

    pub fn add(&self, ring: &QuotientRing, other: &GradedMap) -> GradedMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let f = ring.field();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(f, b)).collect(),
        }
    }

    /// Reduces every entry modulo the ideal.
    pub fn reduced(&self, ring: &QuotientRing) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            columns: self.columns.iter().map(|v| ring.reduce_vector(v)).collect(),
        }
    }

    /// The same matrix between `source(j)` and `target(j)`.
    pub fn twist(&self, j: i32) -> GradedMap {
        GradedMap { source: self.source.twist(j), target: self.target.twist(j), columns: self.columns.clone() }
    }

    /// The transpose `Hom(target, R) → Hom(source, R)`.
    pub fn dual(&self, ring: &QuotientRing) -> GradedMap {
        let f = ring.field();
        let mut cols: Vec<Vec<(u32, Monomial, u32)>> = vec![Vec::new(); self.target.rank()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, m, v) in col.terms() {
                cols[r as usize].push((c as u32, m, v));
            }
        }
        GradedMap {
            source: self.target.dual(),
            target: self.source.dual(),
            columns: cols.into_iter().map(|t| Vector::from_raw_terms(f, t)).collect(),
        }
    }

    /// Restriction to the given source columns and target rows (in order).
    pub fn submatrix(&self, ring: &QuotientRing, rows: &[usize], cols: &[usize]) -> GradedMap {
        let f = ring.field();
        let mut row_pos = vec![None; self.target.rank()];
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = Some(k);
        }
        GradedMap {
            source: FreeModule::new(cols.iter().map(|&c| self.source.degrees()[c]).collect()),
            target: FreeModule::new(rows.iter().map(|&r| self.target.degrees()[r]).collect()),
            columns: cols.iter().map(|&c| self.columns[c].map_components(f, |r| row_pos[r])).collect(),
        }
    }

    /// Block matrix `[self other]` with a shared target.
    pub fn hconcat(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.target, other.target);
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        GradedMap { source: self.source.direct_sum(&other.source), target: self.target.clone(), columns }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, ring: &QuotientRing, other: &GradedMap) -> GradedMap {
        let f = ring.field();
        let off = self.target.rank();
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().map(|v| v.map_components(f, |r| Some(r + off))));
        GradedMap {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            columns,
        }
    }

    /// Renders the matrix row by row.
    pub fn display(&self, ring: &QuotientRing) -> String {
        let mut s = String::new();
        for r in 0..self.target.rank() {
            let row: Vec<String> = (0..self.source.rank()).map(|c| ring.display(&self.entry(r, c))).collect();
            s.push_str(&format!("| {} |\n", row.join("  ")));
        }
        s
    }
}

/// Matrix of the k-linear map induced on degree-`d` pieces of free modules,
/// with respect to the monomial bases of [`FreeModule::piece_basis`].
pub fn degree_piece_map(ring: &QuotientRing, f: &GradedMap, d: i32) -> ExactMatrix {
    let src = f.source().piece_basis(ring, d);
    let tgt = Piece::free(ring, f.target(), d);
    let cols: Vec<SparseVec> = src
        .iter()
        .map(|&(i, m)| tgt.coordinates_free(&f.apply(ring, &Vector::monomial(i, m))))
        .collect();
    ExactMatrix::from_columns(ring.field(), tgt.dim_free(), &cols)
}

/// The degree-`d` piece of a presented module, with a chosen basis of the
/// quotient `F_d / (image of relations)_d`.
#[derive(Clone, Debug)]
pub struct Piece {
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    echelon: Echelon,
    quotient_index: Vec<Option<usize>>,
    // basis position of each quotient basis vector
    reps: Vec<usize>,
}

impl Piece {
    fn free(ring: &QuotientRing, module: &FreeModule, d: i32) -> Piece {
        Self::build(ring, module, &[], d)
    }

    fn build(ring: &QuotientRing, generators: &FreeModule, relations: &[Vector], d: i32) -> Piece {
        let f = ring.field();
        let basis = generators.piece_basis(ring, d);
        let index: HashMap<(usize, Monomial), usize> =
            basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let mut echelon = Echelon::new(f, basis.len());
        for rel in relations {
            let Some(e) = rel.degree(generators.degrees()) else { continue };
            for m in ring.standard_monomials(d - e).iter() {
                let v = ring.reduce_vector(&Vector::zero().add_scaled(f, rel, 1, m));
                let coords = Self::coords_in(&index, &v);
                echelon.insert(coords);
            }
        }
        let mut quotient_index = vec![None; basis.len()];
        let mut is_pivot = vec![false; basis.len()];
        for p in echelon.pivots() {
            is_pivot[p] = true;
        }
        let mut reps = Vec::new();
        for (j, q) in quotient_index.iter_mut().enumerate() {
            if !is_pivot[j] {
                *q = Some(reps.len());
                reps.push(j);
            }
        }
        Piece { basis, index, echelon, quotient_index, reps }
    }

    fn coords_in(index: &HashMap<(usize, Monomial), usize>, v: &Vector) -> SparseVec {
        let mut out: SparseVec = v
            .terms()
            .iter()
            .map(|&(i, m, c)| {
                let k = *index.get(&(i as usize, m)).expect("vector is not a reduced element of this degree");
                (k, c)
            })
            .collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    fn dim_free(&self) -> usize {
        self.basis.len()
    }

    fn coordinates_free(&self, v: &Vector) -> SparseVec {
        Self::coords_in(&self.index, v)
    }

    /// Quotient coordinates of a (reduced, homogeneous) vector of this degree.
    pub fn coordinates(&mut self, v: &Vector) -> SparseVec {
        let c = Self::coords_in(&self.index, v);
        let r = self.echelon.reduce(&c);
        r.into_iter().map(|(j, a)| (self.quotient_index[j].expect("reduced past pivot"), a)).collect()
    }

    /// A representative of quotient basis vector `k`.
    pub fn representative(&self, k: usize) -> Vector {
        let (i, m) = self.basis[self.reps[k]];
        Vector::monomial(i, m)
    }
}

/// A finitely presented graded module: the cokernel of `relations: F_1 → F_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    presentation: GradedMap,
}

/// Result of [`PresentedModule::minimal_presentation`], recording how the
/// old generators are expressed in the surviving ones.
#[derive(Clone, Debug)]
pub struct MinimalPresentation {
    pub module: PresentedModule,
    /// Indices of the old generators that survive, in order.
    pub kept: Vec<usize>,
    /// For every old generator, its class written in the new generators.
    pub substitution: Vec<Vector>,
}

impl PresentedModule {
    /// Zero relation columns are dropped.
    pub fn new(presentation: GradedMap) -> Self {
        if presentation.columns.iter().all(|c| !c.is_zero()) {
            return PresentedModule { presentation };
        }
        let keep: Vec<usize> = (0..presentation.columns.len()).filter(|&k| !presentation.columns[k].is_zero()).collect();
        let source = FreeModule::new(keep.iter().map(|&k| presentation.source.degrees()[k]).collect());
        let columns = keep.iter().map(|&k| presentation.columns[k].clone()).collect();
        PresentedModule { presentation: GradedMap { source, target: presentation.target, columns } }
    }

    pub fn cokernel(map: GradedMap) -> Self {
        Self::new(map)
    }

    pub fn free(m: FreeModule) -> Self {
        Self::new(GradedMap::zero(FreeModule::zero(), m))
    }

    pub fn zero() -> Self {
        Self::free(FreeModule::zero())
    }

    /// Module with the given generators and relation vectors.
    pub fn from_relations(generators: FreeModule, relations: Vec<Vector>) -> Self {
        let relations: Vec<Vector> = relations.into_iter().filter(|v| !v.is_zero()).collect();
        Self::new(GradedMap::from_images(generators, relations))
    }

    /// `R / (gens)`.
    pub fn quotient_of_ring(gens: &[Poly]) -> Self {
        let rel = gens.iter().filter(|g| !g.is_zero()).map(|g| Vector::from_poly(0, g)).collect();
        Self::from_relations(FreeModule::new(vec![0]), rel)
    }

    pub fn presentation(&self) -> &GradedMap {
        &self.presentation
    }

    pub fn generators(&self) -> &FreeModule {
        self.presentation.target()
    }

    pub fn relations(&self) -> &[Vector] {
        self.presentation.columns()
    }

    /// `M(j)`.
    pub fn twist(&self, j: i32) -> PresentedModule {
        Self::new(self.presentation.twist(j))
    }

    pub fn direct_sum(&self, ring: &QuotientRing, other: &PresentedModule) -> PresentedModule {
        Self::new(self.presentation.direct_sum(ring, &other.presentation))
    }

    /// Dimension of the degree-`d` piece, by linear algebra on graded pieces.
    pub fn hilbert_value(&self, ring: &QuotientRing, d: i32) -> usize {
        self.piece(ring, d).dim()
    }

    /// `d ↦ dim_k M_d` for `lo ≤ d ≤ hi`.
    pub fn hilbert_function(&self, ring: &QuotientRing, lo: i32, hi: i32) -> Vec<(i32, usize)> {
        assert!(lo <= hi, "empty degree window");
        (lo..=hi).map(|d| (d, self.hilbert_value(ring, d))).collect()
    }

    /// The degree-`d` piece with a quotient basis.
    pub fn piece(&self, ring: &QuotientRing, d: i32) -> Piece {
        Piece::build(ring, self.generators(), self.relations(), d)
    }

    /// Minimal presentation: no constant entries and minimal relations.
    pub fn minimal_presentation(&self, ring: &QuotientRing) -> MinimalPresentation {
        let f = ring.field();
        let n = self.generators().rank();
        let mut degrees: Vec<i32> = self.generators().degrees().to_vec();
        let mut alive: Vec<usize> = (0..n).collect();
        // substitution[i] expresses old generator i in the current generators (old indexing)
        let mut substitution: Vec<Vector> = (0..n).map(Vector::basis).collect();
        let mut rels: Vec<Vector> = self.relations().iter().map(|v| ring.reduce_vector(v)).collect();
        loop {
            // eliminate one generator per unit entry
            while let Some((ri, ci, u)) = find_unit(&rels) {
                let pivot = rels.remove(ci);
                // e_ri = -(1/u) (pivot - u e_ri)
                let uinv = f.inv(u);
                let rest = pivot.sub(f, &Vector::basis(ri).scale(f, u));
                let expr = rest.scale(f, f.neg(uinv));
                let subst = |v: &Vector| -> Vector {
                    let c = v.entry(ri);
                    if c.is_zero() {
                        return v.clone();
                    }
                    let without = v.map_components(f, |i| if i == ri { None } else { Some(i) });
                    ring.reduce_vector(&without.add(f, &expr.mul_poly(f, &c)))
                };
                rels = rels.iter().map(&subst).filter(|v| !v.is_zero()).collect();
                substitution = substitution.iter().map(&subst).collect();
                alive.retain(|&i| i != ri);
            }
            let min = minimal_generators(ring, &degrees, &rels, Over::R);
            let stable = min.len() == rels.len() && find_unit(&min).is_none();
            rels = min;
            if stable {
                break;
            }
        }
        // renumber to surviving generators
        let mut pos = vec![None; n];
        for (k, &i) in alive.iter().enumerate() {
            pos[i] = Some(k);
        }
        degrees = alive.iter().map(|&i| degrees[i]).collect();
        let renum = |v: &Vector| v.map_components(f, |i| Some(pos[i].expect("eliminated generator survived")));
        let rels: Vec<Vector> = rels.iter().map(renum).collect();
        let substitution = substitution.iter().map(renum).collect();
        MinimalPresentation {
            module: PresentedModule::from_relations(FreeModule::new(degrees), rels),
            kept: alive,
            substitution,
        }
    }

    /// True when the module is zero (every generator lies in the relations).
    pub fn is_zero(&self, ring: &QuotientRing) -> bool {
        let gens: Vec<Vector> = (0..self.generators().rank()).map(Vector::basis).collect();
        minimal_generators_modulo(ring, self.generators().degrees(), &gens, self.relations(), Over::R).is_empty()
    }

    /// Degrees of a minimal generating set (sorted).
    pub fn minimal_generator_degrees(&self, ring: &QuotientRing) -> Vec<i32> {
        let gens: Vec<Vector> = (0..self.generators().rank()).map(Vector::basis).collect();
        let mut d: Vec<i32> = minimal_generators_modulo(ring, self.generators().degrees(), &gens, self.relations(), Over::R)
            .iter()
            .map(|v| v.degree(self.generators().degrees()).unwrap())
            .collect();
        d.sort();
        d
    }

    /// The submodule generated by all homogeneous elements of degree `≥ s`,
    /// presented on the products `m * e_i` (`deg m = s - deg e_i`) and the
    /// generators already in degree `≥ s`.
    pub fn truncate(&self, ring: &QuotientRing, s: i32) -> PresentedModule {
        let f = ring.field();
        let gdeg = self.generators().degrees();
        if gdeg.iter().all(|&d| d >= s) {
            return self.clone();
        }
        let mut images = Vec::new();
        for (i, &d) in gdeg.iter().enumerate() {
            if d >= s {
                images.push(Vector::basis(i));
            } else {
                for m in ring.standard_monomials(s - d).iter() {
                    images.push(Vector::zero().add_scaled(f, &Vector::basis(i), 1, m));
                }
            }
        }
        let new_gens = FreeModule::new(images.iter().map(|v| v.degree(gdeg).unwrap()).collect());
        let k = images.len();
        let iota = GradedMap::from_columns(new_gens.clone(), self.generators().clone(), images);
        let full = iota.hconcat(&self.presentation);
        let graph = GraphBasis::new(ring, &full, Over::R);
        let rels: Vec<Vector> = graph
            .kernel(ring)
            .into_iter()
            .map(|v| v.map_components(f, |i| (i < k).then_some(i)))
            .filter(|v| !v.is_zero())
            .collect();
        PresentedModule::from_relations(new_gens, rels)
    }
}

fn find_unit(rels: &[Vector]) -> Option<(usize, usize, u32)> {
    for (c, v) in rels.iter().enumerate() {
        for &(r, m, a) in v.terms() {
            if m.is_one() {
                return Some((r as usize, c, a));
            }
        }
    }
    None
}

/// Convenience: `truncate_module(M, s)`.
pub fn truncate_module(ring: &QuotientRing, m: &PresentedModule, s: i32) -> PresentedModule {
    m.truncate(ring, s)
}

/// Matrix of the map induced on degree-`d` pieces by `f: F_0(src) → F_0(tgt)`
/// between presented modules, in quotient coordinates.
pub fn presented_piece_map(
    ring: &QuotientRing,
    src: &PresentedModule,
    tgt: &PresentedModule,
    f: &GradedMap,
    d: i32,
) -> ExactMatrix {
    let s = src.piece(ring, d);
    let mut t = tgt.piece(ring, d);
    let cols: Vec<SparseVec> = (0..s.dim())
        .map(|k| {
            let rep = s.representative(k);
            t.coordinates(&f.apply(ring, &rep))
        })
        .collect();
    ExactMatrix::from_columns(ring.field(), t.dim(), &cols)
}
