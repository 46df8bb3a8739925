//! Problem files and the `orlov` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::complex::ModuleComplex;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, Over};
use crate::module::{FreeModule, GradedMap, PresentedModule};
use crate::ring::QuotientRing;
use crate::vector::Vector;
use crate::DEFAULT_PRIME;

pub const SCHEMA: u32 = 1;

/// A problem file: a ring `k[vars]/(ideal)` and an object over it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char: Option<u32>,
    pub vars: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<ObjectSpec>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ObjectSpec {
    Module(ModuleSpec),
    Complex(ComplexSpec),
}

/// `coker(matrix: ⊕R(-source) → ⊕R(-target))`; `matrix[row][col]`, one row
/// per target generator. An empty `source` gives a free module.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub target: Vec<i32>,
    #[serde(default)]
    pub source: Vec<i32>,
    #[serde(default)]
    pub matrix: Vec<Vec<String>>,
}

/// Terms from cohomological index `lo` upward; `maps[k]` goes from term
/// `k` to term `k + 1`, as a matrix on generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub lo: i32,
    pub terms: Vec<ModuleSpec>,
    #[serde(default)]
    pub maps: Vec<Vec<Vec<String>>>,
}

/// Command parameters; command-line flags override these.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    /// Twist `j` for `check-twist`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<i32>,
    /// Override for the bound `r` in `psi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i32>,
    /// Internal-degree window `[lo, hi]` for `psi` and `hypercoh`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<[i32; 2]>,
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Validation(format!("{field}: {msg}"))
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| Error::Validation(e.to_string()))?;
        if spec.schema != SCHEMA {
            return Err(invalid("schema", format!("unsupported schema {}, expected {SCHEMA}", spec.schema)));
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The ring, with `prime` overriding the file's `char`.
    pub fn ring(&self, prime: Option<u32>) -> Result<QuotientRing> {
        let p = prime.or(self.char).unwrap_or(DEFAULT_PRIME);
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let ideal: Vec<&str> = self.ideal.iter().map(String::as_str).collect();
        QuotientRing::parse(p, &names, &ideal).map_err(|e| match e {
            Error::Validation(msg) => invalid("ring", msg),
            e => invalid("ideal", e),
        })
    }

    pub fn object(&self, ring: &QuotientRing) -> Result<ModuleComplex> {
        match &self.object {
            None => Err(invalid("object", "missing")),
            Some(ObjectSpec::Module(m)) => Ok(ModuleComplex::concentrated(build_module(ring, m, "object.module")?, 0)),
            Some(ObjectSpec::Complex(c)) => build_complex(ring, c),
        }
    }
}

fn build_matrix(ring: &QuotientRing, rows: &[Vec<String>], source: &[i32], target: &[i32], field: &str) -> Result<GradedMap> {
    if rows.len() != target.len() {
        return Err(invalid(field, format!("has {} rows, expected {}", rows.len(), target.len())));
    }
    let mut cols = vec![Vec::new(); source.len()];
    for (i, row) in rows.iter().enumerate() {
        if row.len() != source.len() {
            return Err(invalid(&format!("{field}[{i}]"), format!("has {} entries, expected {}", row.len(), source.len())));
        }
        for (j, s) in row.iter().enumerate() {
            let p = ring.poly(s).map_err(|e| invalid(&format!("{field}[{i}][{j}]"), e))?;
            cols[j].push((i, ring.reduce(&p)));
        }
    }
    let f = ring.field();
    let cols: Vec<Vector> = cols.into_iter().map(|c| Vector::from_entries(f, c)).collect();
    GradedMap::try_from_columns(FreeModule::new(source.to_vec()), FreeModule::new(target.to_vec()), cols)
        .map_err(|e| invalid(field, e))
}

fn build_module(ring: &QuotientRing, m: &ModuleSpec, field: &str) -> Result<PresentedModule> {
    let map = build_matrix(ring, &m.matrix_rows(), &m.source, &m.target, &format!("{field}.matrix"))?;
    Ok(PresentedModule::cokernel(map))
}

impl ModuleSpec {
    /// `matrix` with an empty source normalized to one empty row per target.
    fn matrix_rows(&self) -> Vec<Vec<String>> {
        if self.source.is_empty() && self.matrix.is_empty() {
            vec![Vec::new(); self.target.len()]
        } else {
            self.matrix.clone()
        }
    }
}

fn build_complex(ring: &QuotientRing, c: &ComplexSpec) -> Result<ModuleComplex> {
    let terms: Vec<PresentedModule> = c
        .terms
        .iter()
        .enumerate()
        .map(|(k, m)| build_module(ring, m, &format!("object.complex.terms[{k}]")))
        .collect::<Result<_>>()?;
    if c.maps.len() + 1 != terms.len().max(1) {
        return Err(invalid("object.complex.maps", format!("need {} maps for {} terms", terms.len().saturating_sub(1), terms.len())));
    }
    let mut maps = Vec::new();
    for (k, rows) in c.maps.iter().enumerate() {
        let field = format!("object.complex.maps[{k}]");
        let d = build_matrix(ring, rows, &c.terms[k].target, &c.terms[k + 1].target, &field)?;
        // relations of term k must land in the relations of term k + 1
        let next = &terms[k + 1];
        let gb = buchberger(ring, next.generators().degrees(), next.relations(), Over::R);
        for rel in terms[k].relations() {
            if !gb.contains(&d.apply(ring, rel)) {
                return Err(invalid(&field, "does not induce a map of the presented modules"));
            }
        }
        maps.push(d);
    }
    let cx = ModuleComplex::new(c.lo, terms, maps);
    if !cx.is_complex(ring) {
        return Err(invalid("object.complex.maps", "consecutive maps do not compose to zero"));
    }
    Ok(cx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Resolve,
    Betti,
    Gorenstein,
    Phi,
    Psi,
    Hypercoh,
    CheckTwist,
    CheckWindow,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Resolve => "resolve",
            Command::Betti => "betti",
            Command::Gorenstein => "gorenstein",
            Command::Phi => "phi",
            Command::Psi => "psi",
            Command::Hypercoh => "hypercoh",
            Command::CheckTwist => "check-twist",
            Command::CheckWindow => "check-window",
        }
    }
}

/// Compute resolutions and Orlov's functors on a problem file.
#[derive(Clone, Debug, Parser)]
#[command(name = "orlov", version)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Twist parameter t (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i32>,
    /// Number of output terms for phi (default 6).
    #[arg(long)]
    pub ell: Option<usize>,
    /// Resolution length (default 4).
    #[arg(long)]
    pub length: Option<usize>,
    /// Characteristic, overriding the file's "char" (default 32003).
    #[arg(long)]
    pub p: Option<u32>,
    /// Also write the structured result here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    pub file: PathBuf,
}

pub const DEFAULT_ELL: usize = 6;
pub const DEFAULT_LENGTH: usize = 4;
pub const DEFAULT_TWIST_J: i32 = 1;
pub const DEGREE_SPAN: i32 = 4;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NOT_GORENSTEIN: i32 = 2;
pub const EXIT_WINDOW: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotGorenstein(_) => EXIT_NOT_GORENSTEIN,
        Error::WindowExhausted { .. } => EXIT_WINDOW,
        Error::WindowCheck(_) => EXIT_CHECK_FAILED,
        Error::Validation(_) | Error::Parse(_) | Error::Io(_) | Error::Json(_) => EXIT_VALIDATION,
    }
}

/// Parse `argv`, run, and return the process exit code. Results go to
/// `out`, diagnostics to `err`.
pub fn main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run(&args, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "orlov {}: {e}", args.command.name());
            exit_code(&e)
        }
    }
}

/// A parameter value and whether it came from a default.
struct Setting<T> {
    name: &'static str,
    value: T,
    default: bool,
}

impl<T: Copy + std::fmt::Debug> Setting<T> {
    fn pick(name: &'static str, flag: Option<T>, file: Option<T>, default: T) -> Self {
        match flag.or(file) {
            Some(value) => Setting { name, value, default: false },
            None => Setting { name, value: default, default: true },
        }
    }

    fn describe(&self) -> String {
        let v = format!("{:?}", self.value);
        if self.default {
            format!("{} = {v} (default)", self.name)
        } else {
            format!("{} = {v}", self.name)
        }
    }
}

/// One command's output: text, structured export, exit code.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Outcome { text, json, code: EXIT_OK }
    }
}

pub fn run(args: &Args, out: &mut dyn Write) -> Result<i32> {
    let spec = ProblemSpec::load(&args.file)?;
    let ring = spec.ring(args.p)?;
    let pr = &spec.params;
    let t = Setting::pick("t", args.t, pr.t, 0);
    let ell = Setting::pick("ell", args.ell, pr.ell, DEFAULT_ELL);
    let length = Setting::pick("length", args.length, pr.length, DEFAULT_LENGTH);
    let j = Setting::pick("j", None, pr.j, DEFAULT_TWIST_J);

    let mut settings = vec![format!("p = {}", ring.field().prime())];
    let outcome = match args.command {
        Command::Resolve | Command::Betti => {
            settings.push(length.describe());
            commands::resolve(&ring, &spec.object(&ring)?, length.value, args.command == Command::Betti)?
        }
        Command::Gorenstein => commands::gorenstein(&ring),
        Command::Phi => {
            settings.extend([t.describe(), ell.describe()]);
            commands::phi(&ring, &spec.object(&ring)?, t.value, ell.value)?
        }
        Command::Psi => {
            settings.push(t.describe());
            commands::psi(&ring, &spec.object(&ring)?, t.value, pr.r, pr.degrees, &mut settings)?
        }
        Command::Hypercoh => commands::hypercoh(&ring, &spec.object(&ring)?, pr.degrees, &mut settings)?,
        Command::CheckTwist => {
            settings.extend([t.describe(), j.describe(), ell.describe()]);
            commands::check_twist(&ring, &spec.object(&ring)?, t.value, j.value, ell.value)?
        }
        Command::CheckWindow => {
            settings.extend([t.describe(), ell.describe()]);
            commands::check_window(&ring, &spec.object(&ring)?, t.value, ell.value)?
        }
    };

    let header = format!(
        "# orlov {}\n# file: {}\n# ring: {}\n# {}\n",
        args.command.name(),
        args.file.display(),
        ring_display(&ring),
        settings.join(", ")
    );
    out.write_all(header.as_bytes())?;
    out.write_all(outcome.text.as_bytes())?;
    if let Some(path) = &args.json {
        let doc = serde_json::json!({
            "schema": SCHEMA,
            "command": args.command.name(),
            "file": args.file.display().to_string(),
            "settings": settings,
            "result": outcome.json,
        });
        let mut text = serde_json::to_string_pretty(&doc)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(outcome.code)
}

fn ring_display(ring: &QuotientRing) -> String {
    let f = ring.field();
    let names = ring.names();
    let vars = names.join(",");
    if ring.ideal_generators().is_empty() {
        format!("GF({})[{vars}]", f.prime())
    } else {
        let gens: Vec<String> = ring.ideal_generators().iter().map(|g| g.display(f, names).to_string()).collect();
        format!("GF({})[{vars}]/({})", f.prime(), gens.join(", "))
    }
}

mod commands {
    use std::fmt::Write as _;

    use serde_json::{json, Value};

    use super::{Outcome, DEGREE_SPAN, EXIT_CHECK_FAILED};
    use crate::complex::{resolve_complex, FreeComplex, ModuleComplex};
    use crate::error::{Error, Result};
    use crate::module::PresentedModule;
    use crate::orlov::{self, GorensteinRing, PhiOptions, SheafObject};
    use crate::resolution::{gorenstein_data, resolve_module, BettiTable};
    use crate::ring::QuotientRing;

    fn complex_json(c: &FreeComplex) -> Value {
        let terms: Vec<Value> = (c.lo()..=c.hi())
            .map(|i| json!({ "index": i, "degrees": c.term(i).map(|m| m.degrees().to_vec()).unwrap_or_default() }))
            .collect();
        json!({ "terms": terms, "open_below": c.open_below(), "open_above": c.open_above() })
    }

    fn module_json(m: &PresentedModule) -> Value {
        json!({
            "generators": m.generators().degrees(),
            "relations": m.presentation().source().degrees(),
        })
    }

    /// Minimal free resolution of the object: of the module itself, or of
    /// the complex down to `length` below its lowest term.
    fn resolution(ring: &QuotientRing, c: &ModuleComplex, length: usize) -> FreeComplex {
        if c.terms().len() == 1 {
            resolve_module(ring, &c.terms()[0], length).shift(ring, -c.lo())
        } else {
            resolve_complex(ring, c, c.lo() - length as i32)
        }
    }

    pub(super) fn resolve(ring: &QuotientRing, c: &ModuleComplex, length: usize, betti_only: bool) -> Result<Outcome> {
        let f = resolution(ring, c, length);
        let betti = BettiTable::from_complex(&f);
        let mut text = String::new();
        if betti_only {
            writeln!(text, "Betti table over R:\n{betti}").unwrap();
            let mut s_tables = Vec::new();
            for (k, m) in c.terms().iter().enumerate() {
                let b = orlov::s_betti(ring, m);
                writeln!(text, "Betti table over S of term {}:\n{b}", c.lo() + k as i32).unwrap();
                s_tables.push(json!({ "index": c.lo() + k as i32, "betti": b }));
            }
            return Ok(Outcome::ok(text, json!({ "over_r": betti, "over_s": s_tables })));
        }
        writeln!(text, "{}", f.display_arrows("R")).unwrap();
        writeln!(text).unwrap();
        text.push_str(&f.display_terms("R"));
        writeln!(text, "\nBetti table:\n{betti}").unwrap();
        Ok(Outcome::ok(text, json!({ "resolution": complex_json(&f), "betti": betti })))
    }

    pub(super) fn gorenstein(ring: &QuotientRing) -> Outcome {
        let g = gorenstein_data(ring);
        let mut text = String::new();
        writeln!(text, "gorenstein: {}", g.is_gorenstein).unwrap();
        writeln!(text, "a = {}", g.a).unwrap();
        writeln!(text, "d = {}", g.d).unwrap();
        writeln!(text, "codim = {}", g.codim).unwrap();
        writeln!(text, "pd_S(R) = {}", g.pd).unwrap();
        writeln!(text, "\nBetti table of R over S:\n{}", g.betti).unwrap();
        Outcome::ok(text, serde_json::to_value(&g).unwrap())
    }

    fn gorenstein_ring(ring: &QuotientRing) -> Result<GorensteinRing> {
        GorensteinRing::new(ring.clone())
    }

    fn sheaf_text(ring: &QuotientRing, s: &SheafObject, text: &mut String) -> Value {
        let Some(w) = &s.window else {
            writeln!(text, "sheaf complex: 0 (the input has no cohomology)").unwrap();
            return json!({ "zero": true });
        };
        writeln!(text, "window: s = {}, u = {}, m = {}, c = {}, d - c = {}, b = {}", w.s, w.u, w.m, w.c, w.top, w.b).unwrap();
        if s.is_zero() {
            writeln!(text, "sheaf complex: 0").unwrap();
            return json!({ "zero": true, "window": w });
        }
        writeln!(text, "sheaf complex: {}", s.display()).unwrap();
        let mut report = Vec::new();
        if let Some(rep) = s.cohomology_report(ring) {
            writeln!(text, "cohomology of the full model:").unwrap();
            for h in rep {
                if h.module.is_zero(ring) {
                    continue;
                }
                let hf = h.module.hilbert_function(ring, 0, 6);
                match h.finite_length_at {
                    Some(g) => writeln!(text, "  H^{}: finite length (zero from degree {g})", h.index).unwrap(),
                    None => writeln!(text, "  H^{}: generators in degrees {:?}, HF(0..6) = {hf:?}", h.index, h.module.minimal_generator_degrees(ring)).unwrap(),
                }
                report.push(json!({
                    "index": h.index,
                    "module": module_json(&h.module),
                    "finite_length_at": h.finite_length_at,
                    "hilbert_0_6": hf,
                }));
            }
        }
        let twists: Vec<Value> = s.twist_data().into_iter().map(|(i, v)| json!({ "index": i, "twists": v })).collect();
        json!({
            "zero": false,
            "window": w,
            "terms": twists,
            "open_above": s.complex.open_above(),
            "full_model": s.full_model.is_some(),
            "cohomology": report,
        })
    }

    pub(super) fn phi(ring: &QuotientRing, c: &ModuleComplex, t: i32, ell: usize) -> Result<Outcome> {
        let g = gorenstein_ring(ring)?;
        let s = orlov::phi(&g, c, t, ell, PhiOptions::default())?;
        let mut text = format!("a = {}, d = {}\n", g.a(), g.d());
        let v = sheaf_text(ring, &s, &mut text);
        Ok(Outcome::ok(text, v))
    }

    fn degree_window(degrees: Option<[i32; 2]>, lo: i32) -> Result<(i32, i32)> {
        let [a, b] = degrees.unwrap_or([lo, lo + DEGREE_SPAN]);
        if a > b {
            return Err(Error::Validation(format!("params.degrees: empty window [{a}, {b}]")));
        }
        Ok((a, b))
    }

    fn dims_table(ring: &QuotientRing, p: &orlov::PsiResult, lo: i32, hi: i32, text: &mut String) -> Vec<Value> {
        let mut rows = Vec::new();
        write!(text, "{:>8}", "j:").unwrap();
        for j in lo..=hi {
            write!(text, " {j:>5}").unwrap();
        }
        writeln!(text).unwrap();
        for n in p.lo()..=p.cutoff {
            write!(text, "{:>8}", format!("H^{n}:")).unwrap();
            let mut dims = Vec::new();
            for j in lo..=hi {
                let k = p.cohomology_dim(ring, n, j);
                write!(text, " {k:>5}").unwrap();
                dims.push(k);
            }
            writeln!(text).unwrap();
            rows.push(json!({ "index": n, "dims": dims }));
        }
        rows
    }

    pub(super) fn psi(ring: &QuotientRing, c: &ModuleComplex, t: i32, r: Option<i32>, degrees: Option<[i32; 2]>, settings: &mut Vec<String>) -> Result<Outcome> {
        let g = gorenstein_ring(ring)?;
        let p = orlov::psi(&g, c, t, r)?;
        let (lo, hi) = degree_window(degrees, p.bound)?;
        settings.push(format!("degrees = [{lo}, {hi}]{}", if degrees.is_none() { " (default)" } else { "" }));
        let mut text = String::new();
        if p.is_zero() {
            writeln!(text, "psi: 0").unwrap();
            return Ok(Outcome::ok(text, json!({ "zero": true })));
        }
        writeln!(text, "a = {}, d = {}, r = {}, internal degrees >= {}, cutoff = {}", g.a(), g.d(), p.r, p.bound, p.cutoff).unwrap();
        writeln!(text, "resolution of R_{{>={}}}:\n{}", p.r, p.resolution.display_terms("R")).unwrap();
        writeln!(text, "psi: {}", p.display()).unwrap();
        writeln!(text, "dim H^n(psi)_j:").unwrap();
        let rows = dims_table(ring, &p, lo, hi, &mut text);
        let terms: Vec<Value> = (p.lo()..=p.cutoff).map(|n| json!({ "index": n, "summands": p.term(n) })).collect();
        Ok(Outcome::ok(text, json!({
            "zero": false, "r": p.r, "bound": p.bound, "cutoff": p.cutoff,
            "terms": terms, "degrees": [lo, hi], "cohomology": rows,
        })))
    }

    pub(super) fn hypercoh(ring: &QuotientRing, c: &ModuleComplex, degrees: Option<[i32; 2]>, settings: &mut Vec<String>) -> Result<Outcome> {
        let g = gorenstein_ring(ring)?;
        let (lo, hi) = degree_window(degrees, 0)?;
        if lo < 0 {
            return Err(Error::Validation(format!("params.degrees: hypercohomology needs twists j >= 0, got {lo}")));
        }
        settings.push(format!("degrees = [{lo}, {hi}]{}", if degrees.is_none() { " (default)" } else { "" }));
        let p = orlov::psi(&g, c, g.a(), None)?;
        let mut text = String::new();
        if p.is_zero() {
            writeln!(text, "hypercohomology: 0").unwrap();
            return Ok(Outcome::ok(text, json!({ "zero": true })));
        }
        writeln!(text, "dim H^i(X, C(j)):").unwrap();
        let rows = dims_table(ring, &p, lo, hi, &mut text);
        Ok(Outcome::ok(text, json!({ "zero": false, "degrees": [lo, hi], "cohomology": rows })))
    }

    pub(super) fn check_twist(ring: &QuotientRing, c: &ModuleComplex, t: i32, j: i32, ell: usize) -> Result<Outcome> {
        let g = gorenstein_ring(ring)?;
        let rep = orlov::twist_compat_check(&g, c, t, j, ell)?;
        let mut text = String::new();
        writeln!(text, "phi_t(C(j)) twists:      {:?}", rep.phi_lhs).unwrap();
        writeln!(text, "phi_(t+j)(C)(j) twists:  {:?}", rep.phi_rhs).unwrap();
        writeln!(text, "phi twists equal: {}", rep.phi_twists_equal).unwrap();
        writeln!(text, "phi matrices equal: {}", rep.phi_matrices_equal).unwrap();
        writeln!(text, "psi terms equal: {}", rep.psi_terms_equal).unwrap();
        writeln!(text, "psi cohomology dimensions equal: {} ({} compared)", rep.psi_dims_equal, rep.psi_dims.len()).unwrap();
        writeln!(text, "holds: {}", rep.holds()).unwrap();
        let code = if rep.holds() { super::EXIT_OK } else { EXIT_CHECK_FAILED };
        Ok(Outcome { text, json: serde_json::to_value(&rep)?, code })
    }

    pub(super) fn check_window(ring: &QuotientRing, c: &ModuleComplex, t: i32, ell: usize) -> Result<Outcome> {
        let g = gorenstein_ring(ring)?;
        let opts = PhiOptions { keep_stages: true, ..Default::default() };
        let s = orlov::phi(&g, c, t, ell, opts)?;
        let mut text = String::new();
        let Some(w) = s.window.clone() else {
            writeln!(text, "sheaf complex: 0, no windows to check").unwrap();
            return Ok(Outcome::ok(text, json!({ "zero": true })));
        };
        let st = s.stages.as_ref().expect("stages kept");
        let d = g.d();
        let checks = [
            ("H(F_{>=t})", st.f_trunc.cohomology_support(ring), w.c, w.u),
            ("H(Hom(F_{>=t}, R))", st.d.cohomology_support(ring), -w.u, w.top),
            ("H(E)", st.e.restrict(w.c - d, d - w.b).cohomology_support(ring), w.c - d, d - w.b),
        ];
        let mut violations = 0;
        let mut rows = Vec::new();
        for (what, support, lo, hi) in checks {
            let bad: Vec<i32> = support.iter().copied().filter(|&i| i < lo || i > hi).collect();
            violations += bad.len();
            writeln!(text, "{what}: nonzero at {support:?}, window [{lo}, {hi}], violations {bad:?}").unwrap();
            rows.push(json!({ "complex": what, "support": support, "window": [lo, hi], "violations": bad }));
        }
        // enlarging ell must not change the terms already reported
        let more = orlov::phi(&g, c, t, ell + 2, PhiOptions::default())?;
        let a = s.twist_data();
        let b: Vec<_> = more.twist_data().into_iter().take(a.len()).collect();
        let stable = a == b;
        writeln!(text, "stable under ell -> ell + 2: {stable}").unwrap();
        writeln!(text, "violations: {violations}").unwrap();
        let code = if violations == 0 && stable { super::EXIT_OK } else { EXIT_CHECK_FAILED };
        Ok(Outcome { text, json: json!({ "window": w, "checks": rows, "stable": stable, "violations": violations }), code })
    }
}
