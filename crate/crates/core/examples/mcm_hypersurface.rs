//! Maximal Cohen-Macaulay modules over hypersurfaces, and Φ_0(k) on a
//! plane cubic where a = 0.

use orlov::resolution::is_mcm;
use orlov::{phi, GorensteinRing, ModuleComplex, PhiOptions, PresentedModule, QuotientRing};

fn report(g: &GorensteinRing, m: PresentedModule, t: i32, lo: i32, hi: i32) -> orlov::Result<()> {
    let r = &g.ring;
    println!("  MCM: {}", is_mcm(r, &m, g.d()));
    let out = phi(g, &ModuleComplex::concentrated(m.clone(), 0), t, 4, PhiOptions::default())?;
    println!("  Phi_{t} = {}", out.display());
    for h in out.cohomology_report(r).unwrap_or_default() {
        if h.module.is_zero(r) {
            continue;
        }
        match h.finite_length_at {
            Some(deg) => println!("  H^{}: finite length, zero from degree {deg}", h.index),
            None => println!("  H^{}: HF({lo}..{hi}) = {:?}", h.index, h.module.hilbert_function(r, lo, hi)),
        }
    }
    println!("  M: HF({lo}..{hi}) = {:?}", m.hilbert_function(r, lo, hi));
    Ok(())
}

fn main() -> orlov::Result<()> {
    let node = GorensteinRing::new(QuotientRing::parse(32003, &["x", "y"], &["x*y"])?)?;
    println!("R/(x) over k[x,y]/(xy):");
    report(&node, PresentedModule::quotient_of_ring(&[node.ring.poly("x")?]), 0, 2, 8)?;

    let cubic = GorensteinRing::new(QuotientRing::parse(32003, &["x", "y", "z"], &["x^3+y^3+z^3"])?)?;
    let r = &cubic.ring;
    println!("k over k[x,y,z]/(x^3+y^3+z^3), R shown for comparison:");
    report(&cubic, PresentedModule::quotient_of_ring(&[r.poly("x")?, r.poly("y")?, r.poly("z")?]), 0, 1, 8)?;
    let hf: Vec<usize> = (1..=8).map(|d| r.hilbert_function(d)).collect();
    println!("  R: HF(1..8) = {hf:?}");
    Ok(())
}
