use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use vecprod::algebra::{AxiomReport, Violation};
use vecprod::classify::{build_isomorphism, obstruction_report, IsoVerdict};
use vecprod::doubling::{construct_standard, find_multiplicative_base};
use vecprod::forms::{equivalent_forms, FormEquivalence, DEFAULT_HEIGHT_BOUND};
use vecprod::hurwitz::{hurwitz, imaginary_vpa, CompositionReport};
use vecprod::io::{emit_algebra, parse_algebra, Algebra};
use vecprod::{Error, FieldSpec, Matrix, Scalar, VectorProductAlgebra};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Exact vector product and composition algebras over Q and F_p.
#[derive(Parser)]
#[command(name = "vecprod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the standard algebra of dimension 2^k - 1 from k <= 3 base norms.
    Construct {
        /// `Q` or `Fp:<p>` with p an odd prime.
        #[arg(long)]
        field: String,
        /// Comma-separated non-zero norms; empty for the zero algebra.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        base_norms: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the axioms (or the composition law for unital documents).
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Random pairs for the composition check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multiply two coordinate vectors.
    Multiply {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Print all basis products.
    Table {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Unital composition algebra of a vector product algebra, or back.
    Hurwitz {
        file: PathBuf,
        #[arg(long)]
        inverse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find a multiplicative base.
    Base {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide isomorphism and print the matrix of one.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, env = "VPA_HEIGHT_BOUND", default_value_t = DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
        #[arg(long)]
        json: bool,
    },
    /// Quadratic form operations on Gram matrices.
    Forms {
        #[command(subcommand)]
        command: FormsCommand,
    },
    /// Show why a 7-dimensional algebra cannot be doubled again.
    Obstruct {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FormsCommand {
    /// Decide equivalence of the two Gram forms.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, env = "VPA_HEIGHT_BOUND", default_value_t = DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

type CliResult = Result<u8, CliError>;

fn parse_field(text: &str) -> Result<FieldSpec, CliError> {
    if text == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = text
        .strip_prefix("Fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::Usage(format!("field must be Q or Fp:<p>, got {text:?}")))?;
    if p == 2 {
        return Err(Error::CharTwoRejected.into());
    }
    Ok(FieldSpec::prime(p)?)
}

fn parse_csv(field: FieldSpec, text: &str) -> Result<Vec<Scalar>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(text
        .split(',')
        .map(|s| field.parse(s.trim()))
        .collect::<Result<_, _>>()?)
}

fn csv(v: &[Scalar]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn read_algebra(path: &Path) -> Result<Algebra, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    parse_algebra(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_vpa(path: &Path) -> Result<VectorProductAlgebra, CliError> {
    match read_algebra(path)? {
        Algebra::Vector(a) => Ok(a),
        Algebra::Unital(_) => Err(CliError::Usage(format!(
            "{}: expected a vector product algebra, found a unital document",
            path.display()
        ))),
    }
}

fn write_output(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.to_path_buf(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn describe(a: &Algebra) -> String {
    let kind = match a {
        Algebra::Vector(_) => "vector product algebra",
        Algebra::Unital(_) => "unital composition algebra",
    };
    format!("{kind} of dimension {} over {}", a.dim(), a.field())
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn violation_lines(out: &mut String, violations: &[Violation]) {
    const SHOWN: usize = 20;
    for v in violations.iter().take(SHOWN) {
        let _ = writeln!(out, "  {v}");
    }
    if violations.len() > SHOWN {
        let _ = writeln!(out, "  ... {} more", violations.len() - SHOWN);
    }
}

fn axiom_text(a: &Algebra, r: &AxiomReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", describe(a));
    let _ = writeln!(out, "antisymmetry: {}", status(r.antisymmetry_ok));
    let _ = writeln!(out, "nondegeneracy: {}", status(r.nondegenerate_ok));
    let _ = writeln!(out, "d1 <uv,w> = <u,vw>: {}", status(r.d1_ok));
    let _ = writeln!(out, "d2 <uv,uv> = N(u)N(v) - <u,v>^2: {}", status(r.d2_ok));
    let _ = writeln!(out, "violations: {}", r.violations.len());
    violation_lines(&mut out, &r.violations);
    out
}

fn composition_text(a: &Algebra, r: &CompositionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", describe(a));
    let _ = writeln!(out, "basis quadruples: {}", status(r.quadruples_ok));
    let _ = writeln!(out, "basis pairs: {}", status(r.basis_pairs_ok));
    let _ = writeln!(out, "basis sums: {}", status(r.basis_sums_ok));
    let _ = writeln!(
        out,
        "random pairs ({}): {}",
        r.random_samples,
        status(r.random_ok)
    );
    let _ = writeln!(out, "violations: {}", r.violations.len());
    violation_lines(&mut out, &r.violations);
    out
}

fn verify(file: &Path, json: bool, samples: usize, seed: u64) -> CliResult {
    let a = read_algebra(file)?;
    let passed = match &a {
        Algebra::Vector(v) => {
            let r = v.check_axioms();
            if json {
                print_json(&json!({
                    "kind": "vector",
                    "dim": a.dim(),
                    "field": a.field().to_string(),
                    "passed": r.passed(),
                    "axioms": r,
                }));
            } else {
                print!("{}", axiom_text(&a, &r));
            }
            r.passed()
        }
        Algebra::Unital(u) => {
            let r = u.check_composition(samples, seed);
            if json {
                print_json(&json!({
                    "kind": "unital",
                    "dim": a.dim(),
                    "field": a.field().to_string(),
                    "passed": r.passed(),
                    "composition": r,
                }));
            } else {
                print!("{}", composition_text(&a, &r));
            }
            r.passed()
        }
    };
    Ok(if passed { 0 } else { EXIT_FAIL })
}

fn combination(v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            if c.is_one() {
                format!("b{k}")
            } else if (-c).is_one() {
                format!("-b{k}")
            } else {
                format!("{c}*b{k}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn table(file: &Path, json: bool) -> CliResult {
    let a = read_algebra(file)?;
    let n = a.dim();
    if json {
        let products: Vec<Vec<Vec<String>>> = a
            .structure()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(ToString::to_string).collect())
                    .collect()
            })
            .collect();
        print_json(&json!({ "dim": n, "products": products }));
        return Ok(0);
    }
    let mut cells = vec![vec![String::new(); n + 1]; n + 1];
    for i in 0..n {
        cells[0][i + 1] = format!("b{i}");
        cells[i + 1][0] = format!("b{i}");
        for j in 0..n {
            cells[i + 1][j + 1] = combination(&a.structure()[i][j]);
        }
    }
    let widths: Vec<usize> = (0..=n)
        .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        println!("{}", line.join(" | ").trim_end());
    }
    Ok(0)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Construct {
            field,
            base_norms,
            output,
        } => {
            let field = parse_field(&field)?;
            let norms = parse_csv(field, &base_norms)?;
            let (v, _) = construct_standard(field, &norms)?;
            write_output(output.as_deref(), &emit_algebra(&v.into()))?;
            Ok(0)
        }
        Command::Verify {
            file,
            json,
            samples,
            seed,
        } => verify(&file, json, samples, seed),
        Command::Multiply { file, u, v } => {
            let a = read_algebra(&file)?;
            let u = parse_csv(a.field(), &u)?;
            let v = parse_csv(a.field(), &v)?;
            println!("{}", csv(&a.multiply(&u, &v)?));
            Ok(0)
        }
        Command::Table { file, json } => table(&file, json),
        Command::Hurwitz {
            file,
            inverse,
            output,
        } => {
            let out: Algebra = match (read_algebra(&file)?, inverse) {
                (Algebra::Vector(v), false) => hurwitz(&v)?.into(),
                (Algebra::Unital(u), true) => imaginary_vpa(&u)?.into(),
                (Algebra::Vector(_), true) => {
                    return Err(CliError::Usage(
                        "--inverse expects a unital document (with identity_index)".to_string(),
                    ))
                }
                (Algebra::Unital(_), false) => {
                    return Err(CliError::Usage(
                        "expected a vector product algebra; use --inverse for unital documents"
                            .to_string(),
                    ))
                }
            };
            write_output(output.as_deref(), &emit_algebra(&out))?;
            Ok(0)
        }
        Command::Base { file, json } => {
            let v = read_vpa(&file)?;
            let base = match find_multiplicative_base(&v) {
                Ok(b) => b,
                Err(e @ (Error::NotAnAlgebra(_) | Error::BadDimension(_))) => {
                    eprintln!("no multiplicative base: {e}");
                    return Ok(EXIT_FAIL);
                }
                Err(e) => return Err(e.into()),
            };
            if json {
                let vectors: Vec<Vec<String>> = base
                    .vectors()
                    .iter()
                    .map(|x| x.iter().map(ToString::to_string).collect())
                    .collect();
                let norms: Vec<String> = base.norms().iter().map(ToString::to_string).collect();
                print_json(&json!({ "vectors": vectors, "norms": norms }));
            } else {
                println!("base of size {}", base.len());
                for (i, (x, n)) in base.vectors().iter().zip(base.norms()).enumerate() {
                    println!("e{} = {}  N = {n}", i + 1, csv(x));
                }
            }
            Ok(0)
        }
        Command::Iso {
            a,
            b,
            height_bound,
            json,
        } => {
            let (va, vb) = (read_vpa(&a)?, read_vpa(&b)?);
            match build_isomorphism(&va, &vb, height_bound)? {
                IsoVerdict::Isomorphic(m) => {
                    verdict_out(json, "isomorphic", None, Some(m.matrix()));
                    Ok(0)
                }
                IsoVerdict::NotIsomorphic(r) => {
                    verdict_out(json, "not isomorphic", Some(&r), None);
                    Ok(EXIT_FAIL)
                }
                IsoVerdict::Inconclusive(r) => {
                    verdict_out(json, "inconclusive", Some(&r), None);
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Forms {
            command:
                FormsCommand::Equiv {
                    a,
                    b,
                    height_bound,
                    json,
                },
        } => {
            let (fa, fb) = (read_algebra(&a)?, read_algebra(&b)?);
            match equivalent_forms(fa.gram(), fb.gram(), height_bound)? {
                FormEquivalence::Equivalent(t) => {
                    verdict_out(json, "equivalent", None, Some(&t));
                    Ok(0)
                }
                FormEquivalence::NotEquivalent(r) => {
                    verdict_out(json, "not equivalent", Some(&r), None);
                    Ok(EXIT_FAIL)
                }
                FormEquivalence::Inconclusive(r) => {
                    verdict_out(json, "inconclusive", Some(&r), None);
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Obstruct { file, json } => {
            let v = read_vpa(&file)?;
            let r = obstruction_report(&v)?;
            if json {
                print_json(&r);
            } else {
                println!("{r}");
            }
            Ok(if r.demonstrated { 0 } else { EXIT_FAIL })
        }
    }
}

fn verdict_out(json: bool, verdict: &str, reason: Option<&str>, matrix: Option<&Matrix>) {
    if json {
        print_json(&json!({
            "verdict": verdict,
            "reason": reason,
            "matrix": matrix.map(matrix_strings),
        }));
        return;
    }
    match reason {
        Some(r) => println!("{verdict}: {r}"),
        None => println!("{verdict}"),
    }
    if let Some(m) = matrix {
        print!("{m}");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
