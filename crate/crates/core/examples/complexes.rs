//! Free complexes: shift, twist, dual, degree truncations, cohomology.

use orlov::complex::hom_complex;
use orlov::{FreeComplex, FreeModule, GradedMap, QuotientRing, Vector};

fn main() -> orlov::Result<()> {
    let r = QuotientRing::parse(32003, &["x", "y", "z"], &["x^3+y^3+z^3"])?;
    let f = r.field();
    let (x, y) = (r.poly("x")?, r.poly("y")?);

    // Koszul complex on x, y: R(-2) -> R(-1)^2 -> R in degrees -2..0
    let d1 = GradedMap::from_columns(
        FreeModule::new(vec![2]),
        FreeModule::new(vec![1, 1]),
        vec![Vector::from_entries(f, [(0, y.neg(f)), (1, x.clone())])],
    );
    let d0 = GradedMap::from_columns(
        FreeModule::new(vec![1, 1]),
        FreeModule::new(vec![0]),
        vec![Vector::from_poly(0, &x), Vector::from_poly(0, &y)],
    );
    let k = FreeComplex::new(-2, vec![FreeModule::new(vec![2]), FreeModule::new(vec![1, 1]), FreeModule::new(vec![0])], vec![d1, d0]);
    println!("K = {}", k.display_arrows("R"));
    println!("is a complex: {}, minimal: {}", k.is_complex(&r), k.is_minimal());
    for i in -2..=0 {
        let h = k.cohomology(&r, i)?;
        println!("H^{i}(K): HF(0..5) = {:?}", h.hilbert_function(&r, 0, 5));
    }

    println!("K[1]       = {}", k.shift(&r, 1).display_arrows("R"));
    println!("K(2)       = {}", k.twist(2).display_arrows("R"));
    println!("Hom(K, R)  = {}", k.dual(&r).display_arrows("R"));
    println!("K_(>=2)    = {}", k.truncate_geq(&r, 2).display_arrows("R"));
    println!("K_(<2)     = {}", k.truncate_lt(&r, 2).display_arrows("R"));

    let e = hom_complex(&r, &k, &k);
    println!("End(K) has terms in degrees {}..{}, is a complex: {}", e.lo(), e.hi(), e.is_complex(&r));
    let h0 = e.cohomology(&r, 0)?;
    println!("H^0(End(K)) generators in degrees {:?}", h0.minimal_generator_degrees(&r));
    Ok(())
}
