use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use zetaforge::algebra::format::{to_json, to_latex};
use zetaforge::dirichlet::{
    global_coefficients, global_coefficients_with, local_factor, local_factor_for_type, type_specialized_W, LocalFactor,
};
use zetaforge::families::{abscissa, make_W, weight, FamilyId, FamilyInstance};
use zetaforge::numberfield::{DecompositionType, NumberField};
use zetaforge::oracle::{count_proisomorphic_with, GenericOptions, LieLattice};
use zetaforge::symmetry::{check_weight_conjecture, extract_functional_equation};
use zetaforge::{verify, ZetaError};

const SCHEMA: &str = "zetaforge/1";

#[derive(Parser)]
#[command(name = "zetaforge", version, about = "Fine Euler factors of pro-isomorphic zeta functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print W(X,Y) for a family over a degree-d field.
    Families(FamilyArgs),
    /// Extract the functional equation of W and test the weight conjecture.
    Funceq(FamilyArgs),
    /// Decomposition type of p in Q[x]/(f).
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        minpoly: String,
        #[arg(long)]
        p: u64,
    },
    /// Local factor at p over a number field or a given decomposition type.
    Euler {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        p: u64,
    },
    /// Coefficients b_1..b_N of the global Dirichlet series.
    Dirichlet {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "N")]
        n: usize,
    },
    /// Abscissa of convergence as an exact rational.
    Abscissa(FamilyArgs),
    /// Brute-force count of pro-isomorphic subrings of index p^k.
    Oracle {
        /// heisenberg:m, abelian:n, maxclass:c or file:<path>
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Run identity suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "max-m")]
        max_m: Option<usize>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: FamilyId,
    #[arg(long, default_value_t = 1)]
    d: u32,
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct FieldArgs {
    /// Integer coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    minpoly: Option<String>,
    /// Decomposition type "e,f;e,f", overriding the field.
    #[arg(long = "type")]
    ty: Option<String>,
}

enum Failure {
    Refused(ZetaError),
    Assertion(Value),
}

impl From<ZetaError> for Failure {
    fn from(e: ZetaError) -> Self {
        Failure::Refused(e)
    }
}

type Output = Result<Value, Failure>;

fn rational(r: &num_rational::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn instance(a: &FamilyArgs) -> Result<FamilyInstance, ZetaError> {
    FamilyInstance::new(a.family, a.d)
}

fn local_factor_json(lf: &LocalFactor) -> Value {
    json!({
        "p": lf.p,
        "numerator": lf.numerator().iter().map(|(k, c)| json!([k, rational(c)])).collect::<Vec<_>>(),
        "denominator": lf.denominator().iter().map(|(c, k)| json!([c.to_string(), k])).collect::<Vec<_>>(),
    })
}

fn families(a: &FamilyArgs) -> Output {
    let inst = instance(a)?;
    let w = make_W(&inst)?;
    let mut out = json!({ "family": inst.family.to_string(), "d": inst.d });
    if a.latex {
        out["latex"] = json!(to_latex(&w));
    } else {
        out["W"] = to_json(&w);
    }
    Ok(out)
}

fn funceq(a: &FamilyArgs) -> Output {
    let inst = instance(a)?;
    let w = make_W(&inst)?;
    let fe = extract_functional_equation(&w);
    let wt = weight(&inst.family).ok();
    let holds = match inst.family {
        FamilyId::Abelian(_) | FamilyId::BK => None,
        _ => Some(check_weight_conjecture(&inst)?),
    };
    Ok(json!({
        "family": inst.family.to_string(),
        "d": inst.d,
        "exists": fe.is_some(),
        "sign": fe.map(|f| f.sign),
        "a": fe.map(|f| f.a),
        "b": fe.map(|f| f.b),
        "weight": wt,
        "conjecture_holds": holds,
    }))
}

fn decompose(minpoly: &str, p: u64) -> Output {
    let k = NumberField::parse(minpoly)?;
    let ty = k.decomposition_type(p)?;
    Ok(json!({
        "p": p,
        "pairs": ty.pairs().iter().map(|&(e, f)| json!([e, f])).collect::<Vec<_>>(),
        "qp": ty.residue_sizes(p).iter().map(|q| q.to_string()).collect::<Vec<_>>(),
    }))
}

/// The explicit type if given, otherwise the field, otherwise `Q` for `d = 1`.
enum Source {
    Type(DecompositionType),
    Field(NumberField),
}

fn source(f: &FieldArgs, d: u32) -> Result<Source, ZetaError> {
    if let Some(t) = &f.ty {
        let ty = DecompositionType::parse(t)?;
        if ty.degree() != d {
            return Err(ZetaError::DegreeMismatch { field: ty.degree() as usize, instance: d });
        }
        return Ok(Source::Type(ty));
    }
    match &f.minpoly {
        Some(m) => Ok(Source::Field(NumberField::parse(m)?)),
        None if d == 1 => Ok(Source::Field(NumberField::rationals())),
        None => Err(ZetaError::InvalidParameter("--minpoly or --type is required when d > 1".into())),
    }
}

fn local_factor_latex(lf: &LocalFactor) -> String {
    let mut num = String::new();
    for (k, c) in lf.numerator() {
        let neg = c < &num_rational::BigRational::from_integer(0.into());
        let abs = if neg { -c.clone() } else { c.clone() };
        if num.is_empty() {
            if neg {
                num.push('-');
            }
        } else {
            num.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if abs.is_integer() { abs.numer().to_string() } else { format!("\\tfrac{{{}}}{{{}}}", abs.numer(), abs.denom()) };
        match (coeff.as_str(), k) {
            (_, 0) => num.push_str(&coeff),
            ("1", _) => num.push_str(&format!("t^{{{k}}}")),
            _ => num.push_str(&format!("{coeff}t^{{{k}}}")),
        }
    }
    if num.is_empty() {
        num.push('0');
    }
    if lf.denominator().is_empty() {
        return num;
    }
    let den: String = lf
        .denominator()
        .iter()
        .map(|(c, k)| {
            let c = if c == &1.into() { String::new() } else { c.to_string() };
            format!("(1 - {c}t^{{{k}}})")
        })
        .collect();
    format!("\\frac{{{num}}}{{{den}}}")
}

fn euler(a: &FamilyArgs, f: &FieldArgs, p: u64) -> Output {
    let inst = instance(a)?;
    let (lf, ty) = match source(f, inst.d)? {
        Source::Type(ty) => (local_factor_for_type(&make_W(&inst)?, &ty, p)?, ty),
        Source::Field(k) => (local_factor(&inst, &k, p)?, k.decomposition_type(p)?),
    };
    let mut out = json!({ "family": inst.family.to_string(), "d": inst.d, "type": ty.to_string() });
    if a.latex {
        out["latex"] = json!(local_factor_latex(&lf));
        out["latex_W"] = json!(to_latex(&type_specialized_W(&make_W(&inst)?, &ty)?));
    } else {
        out["local_factor"] = local_factor_json(&lf);
    }
    Ok(out)
}

fn dirichlet(a: &FamilyArgs, f: &FieldArgs, n: usize) -> Output {
    let inst = instance(a)?;
    let g = match source(f, inst.d)? {
        Source::Type(ty) => global_coefficients_with(&make_W(&inst)?, n, |_| Ok(ty.clone()))?,
        Source::Field(k) => global_coefficients(&inst, &k, n)?,
    };
    Ok(json!({
        "family": inst.family.to_string(),
        "d": inst.d,
        "coefficients": g.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    }))
}

fn abscissa_cmd(a: &FamilyArgs) -> Output {
    let inst = instance(a)?;
    let v = abscissa(&inst)?;
    let mut out = json!({ "family": inst.family.to_string(), "d": inst.d, "abscissa": rational(&v) });
    if a.latex {
        out["latex"] = json!(if v.is_integer() {
            v.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", v.numer(), v.denom())
        });
    }
    Ok(out)
}

fn parse_lattice(spec: &str) -> Result<LieLattice, ZetaError> {
    let bad = || ZetaError::Parse(format!("--lattice '{spec}': expected heisenberg:m, abelian:n, maxclass:c or file:<path>"));
    let (kind, arg) = spec.split_once(':').ok_or_else(bad)?;
    if kind == "file" {
        return LieLattice::from_file(Path::new(arg));
    }
    let n: usize = arg.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    match kind {
        "heisenberg" => Ok(LieLattice::heisenberg(n)),
        "abelian" => Ok(LieLattice::abelian(n)),
        "maxclass" => LieLattice::max_class(n),
        _ => Err(bad()),
    }
}

fn oracle(lattice: &str, p: u64, k: u32) -> Output {
    let l = parse_lattice(lattice)?;
    let c = count_proisomorphic_with(&l, p, k, &GenericOptions::default())?;
    Ok(json!({ "lattice": lattice, "p": p, "k": k, "count": c.count, "exact": c.exact }))
}

fn verify_cmd(suite: &str, max_m: Option<usize>) -> Output {
    let outcomes = verify::run(suite, max_m)?;
    let passed = outcomes.iter().all(|o| o.passed());
    let suites: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "suite": o.suite, "checks": o.checks, "failures": o.failures, "passed": o.passed() }))
        .collect();
    for o in &outcomes {
        eprintln!("{o}");
    }
    let out = json!({ "suite": suite, "passed": passed, "suites": suites });
    if passed {
        Ok(out)
    } else {
        Err(Failure::Assertion(out))
    }
}

fn run(cli: Cli) -> Output {
    match &cli.command {
        Command::Families(a) => families(a),
        Command::Funceq(a) => funceq(a),
        Command::Decompose { minpoly, p } => decompose(minpoly, *p),
        Command::Euler { family, field, p } => euler(family, field, *p),
        Command::Dirichlet { family, field, n } => dirichlet(family, field, *n),
        Command::Abscissa(a) => abscissa_cmd(a),
        Command::Oracle { lattice, p, k } => oracle(lattice, *p, *k),
        Command::Verify { suite, max_m } => verify_cmd(suite, *max_m),
    }
}

fn emit(mut v: Value) {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA));
    }
    println!("{v}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(v) => {
            emit(v);
            ExitCode::SUCCESS
        }
        Err(Failure::Refused(e)) => {
            let mut m = Map::new();
            m.insert("error".into(), json!(e.to_string()));
            emit(Value::Object(m));
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Assertion(v)) => {
            emit(v);
            ExitCode::from(2)
        }
    }
}
