//! Gorenstein test and the parameter a from the resolution of R over S.

use orlov::{gorenstein_data, QuotientRing};

fn main() -> orlov::Result<()> {
    let rings: [(&str, &[&str], &[&str]); 5] = [
        ("P^2", &["x", "y", "z"], &[]),
        ("conic", &["x", "y", "z"], &["x*z-y^2"]),
        ("plane cubic", &["x", "y", "z"], &["x^3+y^3+z^3"]),
        ("(2,3) complete intersection in P^4", &["a", "b", "c", "d", "e"], &["a*b-c*d", "a^3+b^3+c^3+d^3+e^3"]),
        ("three points", &["x", "y", "z"], &["x*y", "x*z", "y*z"]),
    ];
    for (name, vars, ideal) in rings {
        let r = QuotientRing::parse(32003, vars, ideal)?;
        let g = gorenstein_data(&r);
        println!("{name}: gorenstein = {}, a = {}, d = {}, codim = {}", g.is_gorenstein, g.a, g.d, g.codim);
        println!("{}", g.betti);
    }
    Ok(())
}
