use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homotopelab::constructions::{
    b16, b_lambda, mat_over, matrix_algebra, path_algebra, r_lambda, two_dim_a, Quiver,
};
use homotopelab::fingerprints::{
    self, b16_hat, enumerate_idempotents, enumerate_square_zero, idempotent_commutator_fingerprint, mu_spectrum,
};
use homotopelab::io::{self, Report};
use homotopelab::verify::{self, augmented_mat2_b16};
use homotopelab::{Algebra, Error, FieldSpec, LinearMap, Scalar, Trilinear};

#[derive(Parser)]
#[command(name = "homotopelab", version, about = "Homotopes of algebras and trilinear tensors, in exact arithmetic")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or inspect algebra files.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Δ-homotope or general homotope of an algebra file.
    Homotope {
        file: PathBuf,
        /// Coordinates of Δ, comma separated.
        #[arg(long, conflicts_with_all = ["f1", "f2", "g"])]
        delta: Option<String>,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
        /// Adjoin a unit to the result.
        #[arg(long)]
        augment: bool,
        /// Matrices as `a,b;c,d` (rows separated by `;`) or a matrix file.
        #[arg(long, requires_all = ["f2", "g"])]
        f1: Option<String>,
        #[arg(long, requires_all = ["f1", "g"])]
        f2: Option<String>,
        #[arg(long, requires_all = ["f1", "f2"])]
        g: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Determinantal polynomial of a tensor (or algebra) file along one slot.
    Detpoly {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        slot: usize,
    },
    /// The quartic det(x I4 + y (diag(bhat) + u b)) and its invariants.
    Pencil {
        #[arg(long)]
        bhat: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        u: String,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
    },
    /// Finite-field censuses of an algebra.
    Fingerprint {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Prime field to work over; rational algebras are reduced.
        #[arg(long)]
        field: Option<FieldSpec>,
        /// Maximum number of points to scan (default 2^24, or HOMOTOPELAB_BUDGET).
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Whether A Δ A spans A.
    Welltempered {
        file: PathBuf,
        #[arg(long)]
        delta: String,
    },
    /// Run the acceptance battery.
    PaperVerify {
        /// Smaller random samples.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand)]
enum AlgebraAction {
    /// Build a named algebra.
    Build {
        #[arg(value_enum)]
        name: Named,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        /// Matrix size for `matrix`, vertex count for `doubled-chain`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an algebra file: dimensions, unit, associativity.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Named {
    /// e1e1=e1, e2e1=e2, e1e2=e1, e2e2=e1.
    TwoDimA,
    BLambda,
    RLambda,
    B16,
    /// Augmented Δ(λ)-homotope of B16.
    B16Hat,
    Kronecker,
    DoubledChain,
    Matrix,
    Mat2B16,
    /// Augmented Λ(λ)-homotope of Mat2(B16).
    MHat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Idem,
    Sqzero,
    Mu,
    Commfp,
}

enum Failure {
    Verification(String),
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("refused: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Algebra { action: AlgebraAction::Build { name, lambda, field, n, output } } => {
            let lambda = field.parse_scalar(&lambda)?;
            let a = build(name, &lambda, field, n)?;
            emit(&io::algebra_to_json(&a), output.as_deref())
        }
        Command::Algebra { action: AlgebraAction::Check { file } } => check(&file),
        Command::Homotope { file, delta, side, augment, f1, f2, g, output } => {
            let a = read_algebra(&file)?;
            let mut h = match (delta, f1, f2, g) {
                (Some(d), ..) => {
                    let d = io::parse_coords(a.field(), &d)?;
                    match side {
                        Side::Left => a.left_delta_homotope(&d)?,
                        Side::Right => a.right_delta_homotope(&d)?,
                    }
                }
                (None, Some(f1), Some(f2), Some(g)) => {
                    let map = |s: &str| read_matrix(a.field(), s).map(LinearMap::new);
                    a.homotope(&map(&f1)?, &map(&f2)?, &map(&g)?)?
                }
                _ => return Err(Failure::Usage("give --delta, or all of --f1 --f2 --g".into())),
            };
            if augment {
                h = h.augment_unit();
            }
            emit(&io::algebra_to_json(&h), output.as_deref())
        }
        Command::Detpoly { file, slot } => {
            let start = Instant::now();
            let t = read_tensor(&file)?;
            let p = t.det_poly(slot)?;
            report("detpoly", json!({ "file": file, "slot": slot }), Some(t.field()), json!(p.to_string()), start, None);
            Ok(())
        }
        Command::Pencil { bhat, b, u, field } => {
            let start = Instant::now();
            let four = |s: &str| -> std::result::Result<[Scalar; 4], Failure> {
                io::parse_coords(field, s)?
                    .try_into()
                    .map_err(|_| Failure::Usage(format!("expected four coordinates, got {s:?}")))
            };
            let (bh, bb, uu) = (four(&bhat)?, four(&b)?, four(&u)?);
            let quartic = homotopelab::tensor::pencil_522(&bh, &bb, &uu)?;
            let inv = quartic.invariants()?;
            let result = json!({
                "quartic": quartic.to_string(),
                "coefficients": io::scalars_to_json(quartic.coeffs()),
                "delta0": inv.delta0.to_string(),
                "delta1": inv.delta1.to_string(),
                "disc": inv.disc.to_string(),
                "j": inv.j.map(|j| j.to_string()),
            });
            report("pencil", json!({ "bhat": bhat, "b": b, "u": u }), Some(field), result, start, None);
            Ok(())
        }
        Command::Fingerprint { file, kind, field, budget } => fingerprint(&file, kind, field, budget),
        Command::Welltempered { file, delta } => {
            let start = Instant::now();
            let a = read_algebra(&file)?;
            let d = io::parse_coords(a.field(), &delta)?;
            let wt = a.is_well_tempered(&d)?;
            report("welltempered", json!({ "file": file, "delta": delta }), Some(a.field()), json!(wt), start, None);
            Ok(())
        }
        Command::PaperVerify { quick } => {
            let config = verify::Config { seed: cli.seed, quick };
            out(&format!("paper-verify seed={} quick={quick}", cli.seed));
            let outcomes = verify::run_all(&config);
            for o in &outcomes {
                out(&o.line());
            }
            let failed = outcomes.iter().filter(|o| !o.ok()).count();
            out(&format!("{}/{} criteria passed", outcomes.len() - failed, outcomes.len()));
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} criteria failed")));
            }
            Ok(())
        }
    }
}

fn build(name: Named, lambda: &Scalar, field: FieldSpec, n: usize) -> Result<Algebra, Error> {
    Ok(match name {
        Named::TwoDimA => two_dim_a(field),
        Named::BLambda => b_lambda(lambda),
        Named::RLambda => r_lambda(lambda)?,
        Named::B16 => b16(field),
        Named::B16Hat => b16_hat(lambda),
        Named::Kronecker => path_algebra(field, &Quiver::kronecker(), None)?,
        Named::DoubledChain => path_algebra(field, &Quiver::doubled_chain(n), None)?,
        Named::Matrix => matrix_algebra(field, n),
        Named::Mat2B16 => mat_over(&b16(field), 2)?,
        Named::MHat => augmented_mat2_b16(lambda)?.1,
    })
}

fn check(file: &Path) -> Outcome {
    let start = Instant::now();
    let a = match read_algebra(file) {
        Err(Failure::Usage(m)) if m == Error::InvalidUnit.to_string() => return Err(Failure::Verification(m)),
        other => other?,
    };
    let associative = a.is_associative();
    let declared = a.unit().is_some();
    let detected = if declared { a.clone() } else { a.clone().detect_unit() };
    let result = json!({
        "dim": a.dim(),
        "nonzero_constants": a.structure().nnz(),
        "associative": associative,
        "unit_declared": declared,
        "unit": detected.unit().map(|u| io::scalars_to_json(u)),
        "labels": a.labels().is_some(),
    });
    report("algebra-check", json!({ "file": file }), Some(a.field()), result, start, None);
    Ok(())
}

fn fingerprint(file: &Path, kind: Kind, field: Option<FieldSpec>, budget: Option<u128>) -> Outcome {
    let start = Instant::now();
    let mut a = read_algebra(file)?;
    if let Some(f) = field {
        if !f.is_prime_field() {
            return Err(Failure::Usage(format!("fingerprints need a prime field, got {f}")));
        }
        a = a.reduce_to(f)?;
    }
    let budget = match budget {
        Some(b) => b,
        None => match std::env::var("HOMOTOPELAB_BUDGET") {
            Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("HOMOTOPELAB_BUDGET={v:?} is not an integer")))?,
            Err(_) => fingerprints::DEFAULT_BUDGET,
        },
    };
    let (name, result) = match kind {
        Kind::Idem => {
            let found = enumerate_idempotents(&a, budget)?;
            ("idempotents", elements_json(&found))
        }
        Kind::Sqzero => {
            let found = enumerate_square_zero(&a, budget)?;
            ("square-zero", json!({ "count": found.len() }))
        }
        Kind::Mu => ("mu-spectrum", io::scalars_to_json(&mu_spectrum(&a, budget)?)),
        Kind::Commfp => {
            ("commutator-fingerprint", io::scalars_to_json(&idempotent_commutator_fingerprint(&a, budget)?))
        }
    };
    report(name, json!({ "file": file, "budget": budget.to_string() }), Some(a.field()), result, start, None);
    Ok(())
}

fn elements_json(v: &[Vec<Scalar>]) -> Value {
    json!({ "count": v.len(), "elements": v.iter().map(|e| io::coords_to_string(e)).collect::<Vec<_>>() })
}

fn report(name: &str, params: Value, field: Option<FieldSpec>, result: Value, start: Instant, seed: Option<u64>) {
    let r = Report {
        name: name.into(),
        params,
        field: field.map(|f| f.to_string()),
        result,
        elapsed_ms: start.elapsed().as_millis(),
        seed,
    };
    out(&r.to_line());
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            out(text);
            Ok(())
        }
    }
}

/// Prints a line; a closed stdout ends the process quietly.
fn out(line: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("cannot write to stdout: {e}");
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_algebra(path: &Path) -> std::result::Result<Algebra, Failure> {
    Ok(io::algebra_from_json(&read(path)?)?)
}

fn read_tensor(path: &Path) -> std::result::Result<Trilinear, Failure> {
    let text = read(path)?;
    Ok(match io::file_kind(&text)?.as_str() {
        "algebra" => io::algebra_from_json(&text)?.structure().clone(),
        _ => io::tensor_from_json(&text)?,
    })
}

fn read_matrix(field: FieldSpec, spec: &str) -> std::result::Result<homotopelab::Matrix, Failure> {
    let path = Path::new(spec);
    if path.exists() {
        let m = io::matrix_from_json(&read(path)?)?;
        if m.field() != field {
            return Err(Error::FieldMismatch(field, m.field()).into());
        }
        return Ok(m);
    }
    Ok(io::parse_matrix(field, spec)?)
}

