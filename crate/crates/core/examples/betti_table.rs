//! Minimal free resolution over a quotient ring and its Betti table.

use orlov::{resolve_module, BettiTable, FreeModule, GradedMap, PresentedModule, QuotientRing, Vector};

fn main() -> orlov::Result<()> {
    let r = QuotientRing::parse(32003, &["x0", "x1", "x2", "x3", "x4"], &["x0*x1", "x2*x3*x4"])?;
    let cols = vec![Vector::from_poly(0, &r.poly("x0")?), Vector::from_poly(0, &r.poly("x2")?)];
    let m = PresentedModule::cokernel(GradedMap::from_columns(FreeModule::new(vec![1, 1]), FreeModule::new(vec![0]), cols));

    let f = resolve_module(&r, &m, 6);
    println!("M = coker(x0, x2) over k[x0..x4]/(x0x1, x2x3x4)");
    println!("{}", f.display_terms("R"));
    println!("{}", BettiTable::from_complex(&f));

    // a hypersurface: resolutions of MCM modules become 2-periodic
    let h = QuotientRing::parse(32003, &["x", "y"], &["x*y"])?;
    let n = PresentedModule::quotient_of_ring(&[h.poly("x")?]);
    let g = resolve_module(&h, &n, 5);
    println!("R/(x) over k[x,y]/(xy):\n{}", g.display_terms("R"));
    Ok(())
}
