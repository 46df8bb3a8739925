//! Drive the `orlov` front end on the bundled problem files.

use std::path::Path;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems");
    let runs: [&[&str]; 4] = [
        &["gorenstein", "example27.json"],
        &["resolve", "--length", "4", "example27.json"],
        &["phi", "--t", "3", "--ell", "6", "example27.json"],
        &["hypercoh", "fermat_cubic.json"],
    ];
    for args in runs {
        let mut argv = vec!["orlov".to_string()];
        argv.extend(args[..args.len() - 1].iter().map(|s| s.to_string()));
        argv.push(dir.join(args[args.len() - 1]).display().to_string());
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = orlov::cli::main_with(&argv, &mut out, &mut err);
        print!("{}", String::from_utf8_lossy(&out));
        eprint!("{}", String::from_utf8_lossy(&err));
        println!("(exit {code})\n");
    }
}
