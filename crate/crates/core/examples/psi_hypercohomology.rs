//! Ψ_t and sheaf cohomology read off graded pieces of RHom(R_{≥r}, C).

use orlov::orlov::r_bound;
use orlov::{hypercohomology, phi, psi, FreeModule, GorensteinRing, GradedMap, ModuleComplex, PhiOptions, PresentedModule, QuotientRing, Vector};

fn structure_sheaf() -> ModuleComplex {
    ModuleComplex::concentrated(PresentedModule::free(FreeModule::new(vec![0])), 0)
}

fn table(g: &GorensteinRing, c: &ModuleComplex, top: i32) -> orlov::Result<()> {
    for i in 0..g.d() {
        let row: Vec<usize> = (0..=top).map(|j| hypercohomology(g, c, i, j)).collect::<Result<_, _>>()?;
        println!("  h^{i}(O(j)), j = 0..{top}: {row:?}");
    }
    Ok(())
}

fn main() -> orlov::Result<()> {
    let p2 = GorensteinRing::new(QuotientRing::parse(32003, &["x", "y", "z"], &[])?)?;
    println!("P^2:");
    table(&p2, &structure_sheaf(), 4)?;

    let e = GorensteinRing::new(QuotientRing::parse(32003, &["x", "y", "z"], &["x^3+y^3+z^3"])?)?;
    println!("Fermat cubic curve (r = {:?}):", r_bound(&e, &structure_sheaf()));
    table(&e, &structure_sheaf(), 4)?;

    // Ψ_3 of the terms of Φ_3(M): each is R(j)_{≥3} with no higher cohomology
    let r = QuotientRing::parse(32003, &["x0", "x1", "x2", "x3", "x4"], &["x0*x1", "x2*x3*x4"])?;
    let g = GorensteinRing::new(r.clone())?;
    let cols = vec![Vector::from_poly(0, &r.poly("x0")?), Vector::from_poly(0, &r.poly("x2")?)];
    let m = PresentedModule::cokernel(GradedMap::from_columns(FreeModule::new(vec![1, 1]), FreeModule::new(vec![0]), cols));
    let out = phi(&g, &ModuleComplex::concentrated(m, 0), 3, 5, PhiOptions::default())?;
    println!("Phi_3(M) = {}", out.display());
    for k in out.complex.lo()..=out.complex.hi() {
        let term = out.complex.term(k)?;
        let p = psi(&g, &ModuleComplex::concentrated(PresentedModule::free(term.clone()), 0), 3, None)?;
        let h: Vec<Vec<usize>> = (0..g.d()).map(|i| (3..=6).map(|j| p.cohomology_dim(&r, i, j)).collect()).collect();
        println!("  Psi_3({}): r = {}, dim H^i_j for j = 3..6: {h:?}", term.display_with("O"), p.r);
    }
    Ok(())
}
