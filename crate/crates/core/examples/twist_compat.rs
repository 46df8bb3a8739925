//! Φ_t(C(j)) = Φ_{t+j}(C)(j) and Ψ_t(C(j)) = Ψ_{t+j}(C)(j), checked termwise.

use orlov::orlov::twist_compat_check;
use orlov::{FreeModule, GorensteinRing, GradedMap, ModuleComplex, PresentedModule, QuotientRing, Vector};

fn main() -> orlov::Result<()> {
    let r = QuotientRing::parse(32003, &["x0", "x1", "x2", "x3", "x4"], &["x0*x1", "x2*x3*x4"])?;
    let g = GorensteinRing::new(r.clone())?;
    let cols = vec![Vector::from_poly(0, &r.poly("x0")?), Vector::from_poly(0, &r.poly("x2")?)];
    let m = PresentedModule::cokernel(GradedMap::from_columns(FreeModule::new(vec![1, 1]), FreeModule::new(vec![0]), cols));
    let c = ModuleComplex::concentrated(m, 0);
    for (t, j) in [(0, 3), (3, 0), (-2, 1), (1, -3)] {
        let rep = twist_compat_check(&g, &c, t, j, 4)?;
        println!("t = {t:>2}, j = {j:>2}: holds = {}", rep.holds());
        for (i, tw) in &rep.phi_lhs {
            println!("    {i:>3}: {tw:?}");
        }
    }
    Ok(())
}
