//! Gröbner bases of ideals and normal forms in a quotient ring.

use orlov::groebner::{buchberger, Over};
use orlov::{QuotientRing, Vector};

fn main() -> orlov::Result<()> {
    let s = QuotientRing::parse(32003, &["x", "y", "z"], &[])?;
    let gens: Vec<Vector> = ["x^2-y*z", "x*y-z^2", "y^2-x*z"]
        .iter()
        .map(|p| s.poly(p).map(|p| Vector::from_poly(0, &p)))
        .collect::<Result<_, _>>()?;
    let gb = buchberger(&s, &[0], &gens, Over::S);
    println!("(x^2-yz, xy-z^2, y^2-xz), grevlex basis:");
    for v in gb.elements() {
        println!("  {}", s.display(&v.entry(0)));
    }

    // the same ideal as a quotient ring
    let r = QuotientRing::parse(32003, &["x", "y", "z"], &["x^2-y*z", "x*y-z^2", "y^2-x*z"])?;
    for p in ["x^3", "x^2*y", "y^3 + x*z^2"] {
        let nf = r.reduce(&r.poly(p)?);
        println!("{p} reduces to {}", r.display(&nf));
    }
    let hf: Vec<usize> = (0..8).map(|d| r.hilbert_function(d)).collect();
    println!("Hilbert function 0..8: {hf:?}");
    Ok(())
}
