//! Rank, kernel and solving over GF(p).

use orlov::{ExactMatrix, Fp};

fn main() {
    let f = Fp::new(7).unwrap();
    let a = ExactMatrix::from_rows(f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 5]]);
    println!("A over GF(7) has rank {}", a.rank());

    let k = a.kernel_basis();
    println!("kernel basis ({} vectors):", k.cols());
    for j in 0..k.cols() {
        let v: Vec<u32> = (0..k.rows()).map(|i| k.get(i, j)).collect();
        let image = a.apply(&v);
        println!("  {v:?} -> {image:?}");
    }

    let b = vec![1, 2, 6];
    match a.solve(&b) {
        Some(x) => println!("A x = {b:?} has solution {x:?}"),
        None => println!("A x = {b:?} has no solution"),
    }
    println!("A x = [1, 0, 0]: {:?}", a.solve(&[1, 0, 0]));
}
