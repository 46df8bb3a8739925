//! Φ_3 of coker(x0, x2) over k[x0..x4]/(x0x1, x2x3x4), with every
//! intermediate complex printed.

use orlov::{phi, FreeModule, GorensteinRing, GradedMap, ModuleComplex, PhiOptions, PresentedModule, QuotientRing, Vector};

fn main() -> orlov::Result<()> {
    let r = QuotientRing::parse(32003, &["x0", "x1", "x2", "x3", "x4"], &["x0*x1", "x2*x3*x4"])?;
    let g = GorensteinRing::new(r.clone())?;
    println!("a = {}, d = {}", g.a(), g.d());

    let cols = vec![Vector::from_poly(0, &r.poly("x0")?), Vector::from_poly(0, &r.poly("x2")?)];
    let m = PresentedModule::cokernel(GradedMap::from_columns(FreeModule::new(vec![1, 1]), FreeModule::new(vec![0]), cols));
    let c = ModuleComplex::concentrated(m, 0);

    let out = phi(&g, &c, 3, 6, PhiOptions { keep_stages: true, ..Default::default() })?;
    let w = out.window.as_ref().unwrap();
    println!("s = {}, u = {}, m = {}, c = {}, b = {}", w.s, w.u, w.m, w.c, w.b);
    let st = out.stages.as_ref().unwrap();
    println!("\nF:\n{}", st.f.display_terms("R"));
    println!("F_(>=3):\n{}", st.f_trunc.display_terms("R"));
    println!("Hom(F_(>=3), R):\n{}", st.d.display_terms("R"));
    println!("G:\n{}", st.g.display_terms("R"));
    println!("Phi_3(M) = {}", out.display());

    if let Some(report) = out.cohomology_report(&r) {
        for h in report.iter().filter(|h| !h.module.is_zero(&r)) {
            match h.finite_length_at {
                Some(deg) => println!("H^{} has finite length (zero from degree {deg})", h.index),
                None => println!("H^{} has HF {:?}", h.index, h.module.hilbert_function(&r, 3, 8)),
            }
        }
    }
    Ok(())
}
