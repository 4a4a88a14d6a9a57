use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use logdr::algebra::ffroots::SPLITTING_CAP;
use logdr::algebra::field::{Field, FieldSpec, MAX_P};
use logdr::algebra::matrix::{Matrix, PolyMatrix};
use logdr::algebra::parse::{format_elem, format_poly, parse_elem, parse_poly};
use logdr::algebra::poly::DensePoly;
use logdr::logconn::*;
use logdr::parabolic::ParabolicModule;
use logdr::spectral::*;
use logdr::verify::{run_all, CriterionReport};

#[derive(Parser)]
#[command(name = "logdr", version, about = "Logarithmic connections, p-curvature and spectral data in characteristic p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for randomized inputs; echoed in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest characteristic accepted in an input file.
    #[arg(long, global = true, default_value_t = MAX_P)]
    p_cap: u32,
    /// Emit the report as canonical JSON instead of `key = value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success; only the exit code reports the outcome.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// p-curvature and its characteristic polynomial.
    Pcurv(Input),
    /// Residue matrices and their characteristic polynomials at each point.
    Residues(Input),
    /// Flat sections with their parabolic filtrations.
    Sol(Input),
    /// Frobenius descent: p-curvature versus the counit.
    Descent(Input),
    /// Spectral data of a Higgs field or of a connection's p-curvature.
    Spectral(Input),
    /// Residue identity and Artin-Schreier check at each point.
    Dcz(Input),
    /// Run the acceptance suite.
    Verify,
}

#[derive(clap::Args)]
struct Input {
    /// JSON input file; standard input when omitted or `-`.
    path: Option<PathBuf>,
}

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Connection,
    Higgs,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectionSpec {
    p: u32,
    #[serde(default)]
    ext_modulus: Option<String>,
    divisor: Vec<String>,
    rank: usize,
    matrix: Vec<Vec<String>>,
    #[serde(default = "default_kind")]
    kind: Kind,
}

fn default_kind() -> Kind {
    Kind::Connection
}

enum Failure {
    Input(String),
    Verification(Value),
}

type Outcome = std::result::Result<Value, Failure>;

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

struct Parsed {
    field: Field,
    divisor: LogDivisor,
    matrix: PolyMatrix,
    kind: Kind,
    echo: Value,
}

fn read_input(input: &Input) -> std::result::Result<String, Failure> {
    let mut s = String::new();
    match input.path.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p).map_err(|e| input_err(format!("{}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut s).map_err(input_err)?;
        }
    }
    Ok(s)
}

fn parse_spec(text: &str, p_cap: u32) -> std::result::Result<Parsed, Failure> {
    let spec: ConnectionSpec = serde_json::from_str(text).map_err(|e| input_err(format!("malformed input: {e}")))?;
    if spec.p > p_cap {
        return Err(input_err(format!("p = {} exceeds --p-cap {p_cap}", spec.p)));
    }
    FieldSpec { p: spec.p, ext_modulus: None }.validate().map_err(input_err)?;
    let field = match &spec.ext_modulus {
        None => Field::prime(spec.p),
        Some(m) => {
            let fp = Field::prime(spec.p);
            let poly = parse_poly(&fp, m, "t").map_err(|e| input_err(format!("ext_modulus: {e}")))?;
            let coeffs = poly.coeffs().iter().map(|&c| fp.as_prime_int(c).unwrap_or(0)).collect();
            Field::new(&FieldSpec { p: spec.p, ext_modulus: Some(coeffs) }).map_err(input_err)?
        }
    };
    let points = spec
        .divisor
        .iter()
        .enumerate()
        .map(|(i, s)| parse_elem(&field, s).map_err(|e| input_err(format!("divisor[{i}]: {e}"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let divisor = LogDivisor::new(&field, points).map_err(input_err)?;
    if spec.matrix.len() != spec.rank || spec.matrix.iter().any(|row| row.len() != spec.rank) {
        return Err(input_err(format!("invalid connection: matrix must be {0}×{0}", spec.rank)));
    }
    let mut entries = Vec::with_capacity(spec.rank * spec.rank);
    for (i, row) in spec.matrix.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            entries.push(parse_poly(&field, s, "x").map_err(|e| input_err(format!("matrix[{i}][{j}]: {e}")))?);
        }
    }
    let matrix = Matrix::from_vec(spec.rank, spec.rank, entries).map_err(input_err)?;
    let echo = json!({
        "p": spec.p,
        "ext_modulus": spec.ext_modulus.as_ref().map(|_| format_poly(&modulus_poly(&field), "t")),
        "divisor": divisor.points().iter().map(|&d| format_elem(&field, d)).collect::<Vec<_>>(),
        "rank": spec.rank,
        "matrix": poly_matrix(&matrix, "x"),
        "kind": match spec.kind { Kind::Connection => "connection", Kind::Higgs => "higgs" },
    });
    Ok(Parsed { field, divisor, matrix, kind: spec.kind, echo })
}

fn modulus_poly(field: &Field) -> DensePoly {
    let fp = Field::prime(field.p());
    DensePoly::new(&fp, field.modulus().iter().map(|&c| fp.from_int(c as i64)).collect())
}

fn poly_matrix(m: &PolyMatrix, var: &str) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| Value::String(format_poly(m.get(i, j), var))).collect()))
            .collect(),
    )
}

fn elem_matrix(field: &Field, m: &Matrix<logdr::algebra::field::Fq>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| Value::String(format_elem(field, *m.get(i, j)))).collect()))
            .collect(),
    )
}

fn polys(v: &[DensePoly], var: &str) -> Value {
    Value::Array(v.iter().map(|f| Value::String(format_poly(f, var))).collect())
}

fn hitchin(h: &HitchinPoint, field: &Field, var: &str) -> Value {
    json!({
        "coefficients": polys(&h.coeffs, var),
        "polynomial": h.to_bipoly(field).format(var, "λ"),
    })
}

fn parabolic(v: &ParabolicModule) -> Value {
    let points: Vec<Value> = (0..v.divisor().len())
        .map(|i| {
            json!({
                "point": format_elem(v.field(), v.divisor().points()[i]),
                "steps": v.filtration(i).iter().map(|m| poly_matrix(m, "y")).collect::<Vec<_>>(),
                "jumps": v.jumps(i),
            })
        })
        .collect();
    json!({ "rank": v.rank(), "points": points })
}

fn connection(p: &Parsed) -> std::result::Result<LogConnection, Failure> {
    if p.kind != Kind::Connection {
        return Err(input_err("this command needs kind \"connection\""));
    }
    LogConnection::new(&p.divisor, p.matrix.clone()).map_err(input_err)
}

fn cmd_pcurv(p: &Parsed) -> Outcome {
    let c = connection(p)?;
    let pc = p_curvature(&c).map_err(input_err)?;
    let (charpoly, in_subring) = laszlo_pauly_check(&c).map_err(input_err)?;
    let nilpotent = p_curvature_nilpotent_check(&c).map_err(input_err)?;
    let verdict = if pc.psi.is_zero() { "p-curvature zero" } else { "p-curvature nonzero" };
    Ok(json!({
        "psi": poly_matrix(&pc.psi, "x"),
        "charpoly": polys(&charpoly, "x"),
        "charpoly_in_k_xp": in_subring,
        "nilpotent": nilpotent,
        "verdict": verdict,
    }))
}

fn cmd_residues(p: &Parsed) -> Outcome {
    let c = connection(p)?;
    let points = (0..p.divisor.len())
        .map(|i| {
            let r = residue_at(&c, i).map_err(input_err)?;
            let cp = residue_charpoly_at(&c, i).map_err(input_err)?;
            Ok(json!({
                "point": format_elem(&p.field, p.divisor.points()[i]),
                "residue": elem_matrix(&p.field, &r),
                "charpoly": format_poly(&cp, "λ"),
            }))
        })
        .collect::<std::result::Result<Vec<_>, Failure>>()?;
    Ok(json!({ "points": points }))
}

fn cmd_sol(p: &Parsed) -> Outcome {
    let c = connection(p)?;
    let sol = solutions(&c).map_err(input_err)?;
    Ok(json!({
        "rank": sol.rank(),
        "generators": poly_matrix(&sol.sections(c.rank()), "x"),
        "parabolic": parabolic(&sol.module),
    }))
}

fn cmd_descent(p: &Parsed) -> Outcome {
    let c = connection(p)?;
    let rep = cartier_descent_check(&c).map_err(input_err)?;
    Ok(json!({
        "psi_zero": rep.psi_zero,
        "counit_iso": rep.counit_iso,
        "biconditional": rep.psi_zero == rep.counit_iso,
        "witness": rep.witness.as_ref().map(parabolic),
    }))
}

fn spectral_report(s: &SpectralModule, var: &str) -> Outcome {
    let (torsion_free, rank) = torsion_free_rank_check(s).map_err(input_err)?;
    let reg = regularity_check(s, SPLITTING_CAP).map_err(input_err)?;
    Ok(json!({
        "base": s.base().format(var, "λ"),
        "lambda_action": poly_matrix(s.lambda_action(), var),
        "torsion_free": torsion_free,
        "rank": rank.map(|r| r.to_string()),
        "regular": reg.regular,
        "fibers": reg.fibers.iter().map(|f| json!({"x": f.x, "lambda": f.lambda, "dim": f.dim})).collect::<Vec<_>>(),
    }))
}

fn dcz_report(c: &LogConnection) -> Outcome {
    let field = c.field();
    let points = dcz_point_check(c).map_err(input_err)?;
    Ok(Value::Array(
        points
            .iter()
            .map(|pt| {
                json!({
                    "point": format_elem(field, c.divisor().points()[pt.index]),
                    "residue_charpoly": hitchin(&pt.residue_charpoly, field, "x"),
                    "artin_schreier": hitchin(&pt.artin_schreier, field, "x"),
                    "psi_charpoly": hitchin(&pt.psi_charpoly, field, "x"),
                    "residue_identity": pt.residue_identity,
                    "agrees": pt.agrees(),
                })
            })
            .collect(),
    ))
}

fn cmd_spectral(p: &Parsed) -> Outcome {
    match p.kind {
        Kind::Higgs => {
            let h = HiggsPair::new(&p.divisor, p.matrix.clone()).map_err(input_err)?;
            let point = higgs_charpoly(&h).map_err(input_err)?;
            let s = bnr_forward(&h).map_err(input_err)?;
            Ok(json!({
                "hitchin": hitchin(&point, &p.field, "x"),
                "spectral": spectral_report(&s, "x")?,
                "dcz": Value::Null,
            }))
        }
        Kind::Connection => {
            let c = connection(p)?;
            let s = de_rham_spectral(&c).map_err(input_err)?;
            let point = HitchinPoint::from_bipoly(s.base());
            Ok(json!({
                "hitchin": hitchin(&point, &p.field, "y"),
                "spectral": spectral_report(&s, "y")?,
                "dcz": dcz_report(&c)?,
            }))
        }
    }
}

fn cmd_dcz(p: &Parsed) -> Outcome {
    let c = connection(p)?;
    let points = dcz_report(&c)?;
    let all = points.as_array().is_some_and(|a| a.iter().all(|v| v["agrees"] == Value::Bool(true)));
    Ok(json!({ "points": points, "agrees": all }))
}

fn criterion(r: &CriterionReport) -> Value {
    json!({
        "id": r.id,
        "name": r.name,
        "passed": r.passed(),
        "cases": r.cases,
        "elapsed_ms": r.elapsed.as_millis() as u64,
        "limit_ms": r.limit.as_millis() as u64,
        "failures": r.failures,
    })
}

fn cmd_verify(seed: u64) -> Outcome {
    let reports = run_all(seed);
    let passed = reports.iter().all(|r| r.passed());
    let v = json!({
        "criteria": reports.iter().map(criterion).collect::<Vec<_>>(),
        "passed": passed,
    });
    if passed {
        Ok(v)
    } else {
        Err(Failure::Verification(v))
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix} = {s}")),
        other => out.push(format!("{prefix} = {other}")),
    }
}

fn render_verify(v: &Value) -> String {
    let mut lines = Vec::new();
    for c in v["criteria"].as_array().into_iter().flatten() {
        let status = if c["passed"] == Value::Bool(true) { "PASS" } else { "FAIL" };
        lines.push(format!(
            "{status} {:>2} {} ({} cases, {} ms, limit {} ms)",
            c["id"],
            c["name"].as_str().unwrap_or_default(),
            c["cases"],
            c["elapsed_ms"],
            c["limit_ms"]
        ));
        for f in c["failures"].as_array().into_iter().flatten() {
            lines.push(format!("    {}", f.as_str().unwrap_or_default()));
        }
    }
    lines.join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, outcome, echo) = match &cli.command {
        Command::Verify => ("verify", cmd_verify(cli.seed), Value::Null),
        Command::Pcurv(i)
        | Command::Residues(i)
        | Command::Sol(i)
        | Command::Descent(i)
        | Command::Spectral(i)
        | Command::Dcz(i) => {
            let parsed = read_input(i).and_then(|t| parse_spec(&t, cli.p_cap));
            let (name, run): (&str, fn(&Parsed) -> Outcome) = match &cli.command {
                Command::Pcurv(_) => ("pcurv", cmd_pcurv),
                Command::Residues(_) => ("residues", cmd_residues),
                Command::Sol(_) => ("sol", cmd_sol),
                Command::Descent(_) => ("descent", cmd_descent),
                Command::Spectral(_) => ("spectral", cmd_spectral),
                _ => ("dcz", cmd_dcz),
            };
            match parsed {
                Ok(p) => (name, run(&p), p.echo.clone()),
                Err(e) => (name, Err(e), Value::Null),
            }
        }
    };
    let (results, code) = match outcome {
        Ok(v) => (v, ExitCode::SUCCESS),
        Err(Failure::Verification(v)) => (v, ExitCode::from(1)),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if cli.quiet {
        return code;
    }
    let mut report = Map::new();
    report.insert("command".into(), Value::String(name.into()));
    report.insert("seed".into(), json!(cli.seed));
    if !echo.is_null() {
        report.insert("input".into(), echo);
    }
    report.insert("results".into(), results);
    let report = Value::Object(report);
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if name == "verify" {
        println!("seed = {}\n{}", cli.seed, render_verify(&report["results"]));
    } else {
        let mut lines = Vec::new();
        flatten("", &report, &mut lines);
        println!("{}", lines.join("\n"));
    }
    code
}
