//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 enumeration budget exceeded.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frep::Budget;
use crate::idp::{idp_closed, idp_closed_string, idp_hall, idp_recursive, specialize_scaled, Parity};
use crate::ihall::{HallBasisKey, HallContext, HallElt};
use crate::iqg::{identity_suite, run_suite, Suite, RELATION_LABELS};
use crate::iquiver::{build_iquiver, builtin, IQuiver, IQuiverSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ihall", version, about = "Exact iHall algebras and iquantum group relations over small prime fields")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Largest total dimension enumerated.
    #[arg(long, global = true)]
    budget_dim: Option<u32>,
    /// Largest raw search space per dimension vector.
    #[arg(long, global = true)]
    budget_space: Option<u128>,
    /// Worker thread cap.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall times in reports (output is then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the Serre-presentation relations in the iHall algebra.
    Verify {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        q: u64,
        /// Comma-separated relation labels (default: all).
        #[arg(long)]
        relations: Option<String>,
        /// `ev`, `odd`, `both`, or per-vertex `1=ev,2=odd`.
        #[arg(long, default_value = "both")]
        parity: String,
        /// Cross-check middle terms against Hall numbers.
        #[arg(long)]
        rp_check: bool,
    },
    /// Multiply two iHall basis elements.
    Product {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Compare the closed and recursive idivided powers.
    Idp {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        parity: String,
        /// Symbolic comparison only.
        #[arg(long)]
        symbolic: bool,
        /// Field size for the enumerative comparison.
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
    /// Check a family of q-binomial identities.
    Identities {
        /// qbinom1, km1, km3, km5, kmrd, t, t1 (comma-separated), all, or list.
        #[arg(long)]
        suite: String,
        /// Largest parameter; required unless listing.
        #[arg(long)]
        max: Option<u32>,
    },
    /// List the isomorphism classes at a dimension vector.
    Enumerate {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        q: u64,
        /// Comma-separated dimension vector.
        #[arg(long)]
        dim: String,
        /// Modules of the path algebra instead of the iquiver algebra.
        #[arg(long)]
        kq: bool,
    },
}

/// Quiver file layout. Arrows are `[source, target]` or
/// `[source, target, label]`.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpecFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<Vec<String>>,
    #[serde(default)]
    pub tau: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub tau_arrows: Option<Vec<(String, String)>>,
}

/// Parse a JSON quiver record.
pub fn parse_quiver_spec(text: &str) -> Result<IQuiver> {
    let f: QuiverSpecFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("quiver spec: {e}")))?;
    let mut arrows = Vec::new();
    for (k, a) in f.arrows.iter().enumerate() {
        match a.as_slice() {
            [s, t] => arrows.push((s.clone(), t.clone(), None)),
            [s, t, l] => arrows.push((s.clone(), t.clone(), Some(l.clone()))),
            _ => {
                return Err(Error::Parse(format!(
                    "quiver spec: arrows[{k}] has {} entries, expected 2 or 3",
                    a.len()
                )))
            }
        }
    }
    build_iquiver(&IQuiverSpec {
        vertices: f.vertices,
        arrows,
        tau: f.tau,
        tau_arrows: f.tau_arrows,
    })
}

/// `builtin:NAME`, inline JSON, or a path to a JSON file.
pub fn load_quiver(arg: &str) -> Result<IQuiver> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return builtin(name);
    }
    if arg.trim_start().starts_with('{') {
        return parse_quiver_spec(arg);
    }
    let text = std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
    parse_quiver_spec(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{arg}: {m}")),
        Error::Quiver(m) => Error::Quiver(format!("{arg}: {m}")),
        e => e,
    })
}

fn parse_dim(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad dimension vector '{s}'"))))
        .collect()
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer list '{s}'"))))
        .collect()
}

/// Basis key syntax: `S<v>` (simple), `K<v>` (torus generator), `1`,
/// `[d1,d2#idx]`, `K(a1,a2)`, or `[d1,d2#idx]*K(a1,a2)`. Vertex names are
/// the quiver's ids.
pub fn parse_key(ctx: &HallContext, s: &str) -> Result<HallElt> {
    let s = s.trim();
    let n = ctx.n();
    let bad = || Error::Parse(format!("bad basis key '{s}'"));
    let vertex = |id: &str| ctx.iq.vertex_index(id).ok_or_else(|| Error::Parse(format!("unknown vertex '{id}'")));
    if s == "1" {
        return Ok(ctx.one());
    }
    if let Some(rest) = s.strip_prefix('S') {
        return ctx.simple(vertex(rest)?);
    }
    if let Some(rest) = s.strip_prefix('K') {
        if !rest.starts_with('(') {
            return Ok(ctx.torus_unit(vertex(rest)?, 1));
        }
    }
    let (class_part, torus_part) = match s.split_once('*') {
        Some((a, b)) => (Some(a), Some(b)),
        None if s.starts_with('[') => (Some(s), None),
        None => (None, Some(s)),
    };
    let alpha = match torus_part {
        Some(t) => {
            let inner = t.strip_prefix("K(").and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
            parse_ints(inner)?
        }
        None => vec![0; n],
    };
    let x = match class_part {
        Some(c) => {
            let inner = c.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(bad)?;
            let (d, idx) = inner.split_once('#').ok_or_else(bad)?;
            let dim = parse_dim(d)?;
            let index: u32 = idx.parse().map_err(|_| bad())?;
            if dim.len() != n {
                return Err(Error::Parse(format!("'{s}': dimension vector needs {n} entries")));
            }
            let classes = ctx.kq.classes(&dim)?;
            classes
                .get(index as usize)
                .ok_or_else(|| Error::Parse(format!("'{s}': only {} classes at {dim:?}", classes.len())))?
                .id
                .clone()
        }
        None => ctx.kq.classes(&vec![0; n])?[0].id.clone(),
    };
    if alpha.len() != n {
        return Err(Error::Parse(format!("'{s}': torus exponent needs {n} entries")));
    }
    Ok(HallElt::basis(ctx.q, HallBasisKey { x, alpha }))
}

fn parse_parities(iq: &IQuiver, s: &str) -> Result<Vec<Vec<Parity>>> {
    let n = iq.n();
    match s {
        "both" => return Ok(vec![vec![Parity::Ev; n], vec![Parity::Odd; n]]),
        "ev" | "odd" | "0" | "1" | "even" => return Ok(vec![vec![s.parse()?; n]]),
        _ => {}
    }
    let mut out = vec![Parity::Ev; n];
    for part in s.split(',') {
        let (v, p) = part.split_once('=').ok_or_else(|| Error::Parse(format!("bad parity map '{s}'")))?;
        let i = iq.vertex_index(v.trim()).ok_or_else(|| Error::Parse(format!("unknown vertex '{v}'")))?;
        out[i] = p.trim().parse()?;
    }
    Ok(vec![out])
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Parse(_) | Error::Quiver(_) | Error::Domain(_) | Error::Context(_) => EXIT_USAGE,
        Error::Internal(_) => EXIT_FAIL,
    }
}

fn strip_timings(mut v: Value, keep: bool) -> Value {
    if !keep {
        if let Value::Array(xs) = &mut v {
            for x in xs {
                if let Value::Object(m) = x {
                    m.remove("wall_ms");
                }
            }
        }
    }
    v
}

fn budget(g: &Global) -> Budget {
    let mut b = Budget::default();
    if let Some(d) = g.budget_dim {
        b.max_dim = d;
    }
    if let Some(s) = g.budget_space {
        b.max_space = s;
    }
    b
}

fn context(g: &Global, quiver: &str, q: u64) -> Result<HallContext> {
    HallContext::new(load_quiver(quiver)?, q, budget(g))
}

fn exec(g: &Global, cmd: &Cmd, out: &mut dyn Write) -> Result<i32> {
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(|e| Error::Internal(e.to_string()));
    match cmd {
        Cmd::Verify { quiver, q, relations, parity, rp_check } => {
            let ctx = context(g, quiver, *q)?.with_rp_check(*rp_check);
            let labels: Option<Vec<String>> = match relations {
                Some(l) => {
                    let ls: Vec<String> = l.split(',').map(|x| x.trim().to_string()).collect();
                    if let Some(bad) = ls.iter().find(|x| !RELATION_LABELS.contains(&x.as_str())) {
                        return Err(Error::Parse(format!("unknown relation '{bad}'")));
                    }
                    Some(ls)
                }
                None => None,
            };
            let parities = parse_parities(&ctx.iq, parity)?;
            let reports = run_suite(&ctx, &parities, labels.as_deref());
            let log = ctx.log();
            if g.json {
                let v = strip_timings(serde_json::to_value(&reports).unwrap(), g.timings);
                w(out, serde_json::to_string_pretty(&v).unwrap())?;
            } else {
                for r in &reports {
                    let mut line = format!("{:<16} {:<8}", r.label, r.instance.join(","));
                    if let Some(p) = &r.parity {
                        line.push_str(&format!(" parity={p}"));
                    }
                    line.push_str(&format!(" {}", r.status.to_uppercase()));
                    if g.timings {
                        line.push_str(&format!(" {:.1}ms", r.wall_ms));
                    }
                    w(out, line)?;
                    if let Some(e) = &r.error {
                        w(out, format!("  error: {e}"))?;
                    }
                    if !r.passed() && r.error.is_none() {
                        w(out, format!("  residual: {}", r.residual))?;
                    }
                }
                let pass = reports.iter().filter(|r| r.passed()).count();
                w(out, format!("{pass}/{} instances pass", reports.len()))?;
                if *rp_check {
                    w(out, format!("Riedtmann-Peng checks: {} ({} failures)", log.rp_checked, log.failures.len()))?;
                }
            }
            if reports.iter().any(|r| r.budget_exceeded) {
                return Ok(EXIT_BUDGET);
            }
            let ok = reports.iter().all(|r| r.passed()) && log.failures.is_empty();
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
        Cmd::Product { quiver, q, lhs, rhs } => {
            let ctx = context(g, quiver, *q)?;
            let a = parse_key(&ctx, lhs)?;
            let b = parse_key(&ctx, rhs)?;
            let p = ctx.product(&a, &b)?;
            if g.json {
                w(out, serde_json::to_string_pretty(&p.to_json()).unwrap())?;
            } else {
                w(out, p.to_string())?;
            }
            Ok(EXIT_OK)
        }
        Cmd::Idp { n, parity, symbolic, q } => {
            let parity: Parity = parity.parse()?;
            let closed = idp_closed(*n, parity)?;
            let rec = idp_recursive(*n, parity);
            let sym_equal = closed == rec;
            let text = idp_closed_string(*n, parity);
            let mut enumerative = None;
            if !symbolic {
                let ctx = context(g, "builtin:rank1-split", *q)?;
                let lhs = specialize_scaled(&ctx, 0, &closed)?;
                let rhs = idp_hall(&ctx, 0, *n, parity)?;
                enumerative = Some((lhs == rhs, rhs));
            }
            let equal = sym_equal && enumerative.as_ref().is_none_or(|e| e.0);
            let verdict = if equal { "EQUAL" } else { "DIFFERENT" };
            if g.json {
                let mut v = json!({
                    "n": n,
                    "parity": parity.to_string(),
                    "closed": text,
                    "closed_scaled": closed.scaled.to_string(),
                    "recursive_scaled": rec.scaled.to_string(),
                    "symbolic_equal": sym_equal,
                    "status": verdict,
                });
                if let Some((e, h)) = &enumerative {
                    v["q"] = json!(q);
                    v["enumerative_equal"] = json!(e);
                    v["hall"] = h.to_json();
                }
                w(out, serde_json::to_string_pretty(&v).unwrap())?;
            } else {
                w(out, format!("closed:    {text}"))?;
                w(out, format!("closed    [{n}]! x = {}", closed.scaled))?;
                w(out, format!("recursive [{n}]! x = {}", rec.scaled))?;
                if let Some((e, h)) = &enumerative {
                    w(out, format!("enumerative (q={q}): {h}"))?;
                    w(out, format!("enumerative matches closed form: {e}"))?;
                }
                w(out, verdict.to_string())?;
            }
            Ok(if equal { EXIT_OK } else { EXIT_FAIL })
        }
        Cmd::Identities { suite, max } => {
            if suite == "list" {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                if g.json {
                    w(out, serde_json::to_string(&names).unwrap())?;
                } else {
                    w(out, names.join("\n"))?;
                }
                return Ok(EXIT_OK);
            }
            let max = max.ok_or_else(|| Error::Parse("identities: --max is required".into()))?;
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                suite.split(',').map(|s| s.trim().parse()).collect::<Result<_>>()?
            };
            let mut reports = Vec::new();
            for s in suites {
                reports.extend(identity_suite(s, max)?);
            }
            let ok = reports.iter().all(|r| r.passed());
            if g.json {
                let v = strip_timings(serde_json::to_value(&reports).unwrap(), g.timings);
                w(out, serde_json::to_string_pretty(&v).unwrap())?;
            } else {
                for r in &reports {
                    let mut line = format!("{:<8} {:<20} {}", r.suite, r.instance, r.status.to_uppercase());
                    if g.timings {
                        line.push_str(&format!(" {:.2}ms", r.wall_ms));
                    }
                    w(out, line)?;
                    if !r.passed() {
                        w(out, format!("  residual: {}", r.residual))?;
                    }
                }
                let pass = reports.iter().filter(|r| r.passed()).count();
                w(out, format!("{pass}/{} identities hold", reports.len()))?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
        Cmd::Enumerate { quiver, q, dim, kq } => {
            let ctx = context(g, quiver, *q)?;
            let dim = parse_dim(dim)?;
            if dim.len() != ctx.n() {
                return Err(Error::Parse(format!("dimension vector needs {} entries", ctx.n())));
            }
            let table = if *kq { ctx.kq.table(&dim)? } else { ctx.li.table(&dim)? };
            if g.json {
                let classes: Vec<Value> = table
                    .classes
                    .iter()
                    .map(|c| json!({"index": c.id.index, "aut_order": c.aut_order.to_string(), "orbit_size": c.orbit_size.to_string(), "entries": c.canon}))
                    .collect();
                let v = json!({
                    "dim": dim,
                    "modules": table.rep_count(),
                    "group_order": table.group_order.to_string(),
                    "classes": classes,
                });
                w(out, serde_json::to_string_pretty(&v).unwrap())?;
            } else {
                w(out, format!("dim {dim:?}: {} modules, {} classes, |GL| = {}", table.rep_count(), table.classes.len(), table.group_order))?;
                w(out, format!("{:>5} {:>12} {:>12}  entries", "index", "|Aut|", "orbit"))?;
                for c in &table.classes {
                    let e: Vec<String> = c.canon.iter().map(|x| x.to_string()).collect();
                    w(out, format!("{:>5} {:>12} {:>12}  {}", c.id.index, c.aut_order, c.orbit_size, e.join("")))?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

/// Run with explicit arguments (the first is the program name), writing
/// the report to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let global = &cli.global;
    let cmd = &cli.cmd;
    // Buffered so the work can move onto a capped pool.
    let go = || {
        let mut buf = Vec::new();
        let r = exec(global, cmd, &mut buf);
        (buf, r)
    };
    let (buf, r) = match global.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(go),
            Err(e) => {
                let _ = writeln!(err, "error: thread pool: {e}");
                return EXIT_USAGE;
            }
        },
        None => go(),
    };
    let _ = out.write_all(&buf);
    match r {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

/// Run on the process arguments with standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["ihall"];
        argv.extend_from_slice(args);
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn spec_files() {
        let a2 = parse_quiver_spec(r#"{"vertices":["1","2"],"arrows":[["1","2"]],"tau":{"1":"1","2":"2"}}"#).unwrap();
        assert!(a2.is_split());
        assert_eq!(a2.arrows().len(), 1);
        let kr = parse_quiver_spec(r#"{"vertices":["1","2"],"arrows":[["1","2"],["2","1"]],"tau":{"1":"2","2":"1"}}"#)
            .unwrap();
        assert_eq!(kr.tau(0), 1);
        assert_eq!(kr.cartan(0, 1), -2);
        let no_tau = parse_quiver_spec(r#"{"vertices":["x","y"],"arrows":[["x","y","f"]]}"#).unwrap();
        assert!(no_tau.is_split());
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(parse_quiver_spec("{"), Err(Error::Parse(_))));
        let e = parse_quiver_spec(r#"{"vertices":["1"],"arrows":[["1"]]}"#).unwrap_err();
        assert!(e.to_string().contains("arrows[0]"), "{e}");
        assert!(parse_quiver_spec(r#"{"vertices":["1"],"arrows":[["1","1"]]}"#).is_err());
        assert!(parse_quiver_spec(r#"{"vertices":["1"],"colour":1}"#).is_err());
    }

    #[test]
    fn idp_symbolic() {
        let (code, out, _) = call(&["idp", "--n", "3", "--parity", "ev", "--symbolic"]);
        assert_eq!(code, 0);
        assert!(out.contains("(v⁻³/[3]!)[3S] + (v²(v−v⁻¹)/[2])[S]*[𝕂]"), "{out}");
        assert!(out.lines().any(|l| l == "EQUAL"), "{out}");
    }

    #[test]
    fn idp_enumerative() {
        let (code, out, _) = call(&["idp", "--n", "2", "--parity", "odd", "--q", "3"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("enumerative matches closed form: true"));
    }

    #[test]
    fn identities_command() {
        let (code, out, _) = call(&["identities", "--suite", "kmrd", "--max", "12"]);
        assert_eq!(code, 0);
        assert!(out.contains("12/12 identities hold"), "{out}");
        let (code, out, _) = call(&["--json", "identities", "--suite", "km5", "--max", "3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert!(v[0].get("wall_ms").is_none());
        let (code, out, _) = call(&["identities", "--suite", "list"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 7);
        assert_eq!(call(&["identities", "--suite", "km1"]).0, EXIT_USAGE);
    }

    #[test]
    fn verify_builtin() {
        let (code, out, err) = call(&["verify", "--quiver", "builtin:a2-split", "--q", "2"]);
        assert_eq!(code, 0, "{out}{err}");
        assert!(out.contains("relation6"));
        let (code, out, _) = call(&["--json", "verify", "--quiver", "builtin:a2-split", "--q", "2", "--relations", "relation6", "--parity", "1=odd"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        // both vertices are fixed; vertex 2 keeps the default parity
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert_eq!(v[0]["instance"], json!(["1", "2"]));
        assert_eq!(v[0]["parity"], "odd");
        assert_eq!(v[1]["parity"], "ev");
    }

    #[test]
    fn verify_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a2split.json");
        std::fs::write(&p, r#"{"vertices":["1","2"],"arrows":[["1","2"]],"tau":{"1":"1","2":"2"}}"#).unwrap();
        let (code, _, err) = call(&["verify", "--quiver", p.to_str().unwrap(), "--q", "2"]);
        assert_eq!(code, 0, "{err}");
    }

    #[test]
    fn deterministic_output() {
        let args = ["--json", "verify", "--quiver", "builtin:kronecker-r1", "--q", "2"];
        assert_eq!(call(&args).1, call(&args).1);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["verify", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--quiver", "builtin:nope", "--q", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--quiver", "builtin:a2-split", "--q", "2", "--relations", "relation9"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["--budget-dim", "2", "verify", "--quiver", "builtin:a2-split", "--q", "2"]);
        assert_eq!(code, EXIT_BUDGET, "{err}");
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn product_and_enumerate() {
        let (code, out, err) = call(&["product", "--quiver", "builtin:rank1-split", "--q", "2", "--lhs", "S1", "--rhs", "S1"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("[2#0]") && out.contains("K(1)"), "{out}");
        let (code, out, _) = call(&["--json", "enumerate", "--quiver", "builtin:rank1-split", "--q", "2", "--dim", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        // k[e]/e^2-modules of dimension 2 over F_2: e = 0 or rank one
        assert_eq!(v["classes"].as_array().unwrap().len(), 2);
        assert_eq!(v["modules"], 4);
    }

    #[test]
    fn keys_parse() {
        let ctx = HallContext::new(builtin("a2-split").unwrap(), 2, Budget::default()).unwrap();
        assert_eq!(parse_key(&ctx, "S2").unwrap(), ctx.simple(1).unwrap());
        assert_eq!(parse_key(&ctx, "K1").unwrap(), ctx.torus(&[1, 0]));
        assert_eq!(parse_key(&ctx, "K(0,-1)").unwrap(), ctx.torus(&[0, -1]));
        let s1 = ctx.simple(0).unwrap();
        let (k, _) = s1.terms().next().unwrap();
        assert_eq!(parse_key(&ctx, &k.to_string()).unwrap(), s1);
        let shifted = parse_key(&ctx, "[1,0#0]*K(1,1)").unwrap();
        assert_eq!(shifted, s1.shift_torus(&[1, 1]));
        assert!(parse_key(&ctx, "[1,0#7]").is_err());
        assert!(parse_key(&ctx, "S9").is_err());
    }
}
