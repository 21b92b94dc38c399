use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use freefield::exactla::{determinant, parse_scalar, scalar_to_string, SparseMatrix};
use freefield::fieldcalc::{identity_suite, FieldCalc};
use freefield::fock::{basis, AlgebraDescriptor, AlgebraKind, Bidegree};
use freefield::invariants::{commutant_basis, dim_table, gr_dim_table, lattice_generators, span_check, torus_currents, GroupAction};
use freefield::specmod::{decouple, ideal_kernel, singular_vectors, VermaElement};
use freefield::winf::{build_mw, build_t, express_diagonal_map, realized_kappa, Realization, RepReport};
use freefield::{Error, Rational, State};
use serde_json::{json, Value};

use crate::expr::{eval, parse, ParseError};
use crate::spec::{parse_action, parse_charges};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Bg,
    Bc,
    Bcbg,
}

impl Algebra {
    fn kind(self) -> AlgebraKind {
        match self {
            Algebra::Bg => AlgebraKind::Bg,
            Algebra::Bc => AlgebraKind::Bc,
            Algebra::Bcbg => AlgebraKind::Bcbg,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Bg,
    Bc,
}

/// Exact computations in βγ, bc and bcβγ free-field vertex algebras.
#[derive(Debug, Parser)]
#[command(name = "freefield", version)]
pub struct Cli {
    /// Dimension n of V = C^n.
    #[arg(long, global = true, default_value_t = 1)]
    pub rank: u32,
    #[arg(long, global = true, value_enum, default_value_t = Algebra::Bg)]
    pub algebra: Algebra,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the emission here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Hard ceiling on weight, degree and similar size parameters.
    #[arg(long, global = true, default_value_t = 12)]
    pub ceiling: i64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Singular part of the OPE of two expressions.
    Ope { a: String, b: String },
    /// Evaluate an expression to a state.
    Eval { expr: String },
    /// Randomized check of the Wick/circle product identities.
    VerifyIdentities {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_weight: i64,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that the realized modes represent D̂ on a truncated basis.
    WinfVerify {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Kind::Bg)]
        kind: Kind,
        #[arg(long, default_value_t = 3)]
        lmax: u32,
        #[arg(long, default_value_t = 3)]
        kmax: i64,
        #[arg(long, default_value_t = 5)]
        max_weight: i64,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// The matrices M^w and T(r, m) with their determinants.
    Matrices {
        #[arg(long)]
        w: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        r: u64,
    },
    /// Coefficients t_k with Σ t_k J^{w+k}(k) = γ_i ↦ c_i γ_{i+w}, β_i ↦ d_i β_{i+w}.
    ExpressMap {
        #[arg(long)]
        w: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        c: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        d: Vec<String>,
    },
    /// Singular vectors of the vacuum module at central charge c.
    Singular {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        weight: i64,
        #[arg(long)]
        l_cap: Option<u32>,
        #[arg(long)]
        j_cap: Option<i64>,
    },
    /// Kernel of the projection of M_{-n} onto S(C^n) at one weight.
    IdealKernel {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        weight: i64,
    },
    /// Express J^l through J^0..J^g in S(C^n).
    Decouple {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        g: u32,
    },
    /// Invariant dimensions on states and on symbols.
    InvDims {
        #[arg(long)]
        action: String,
        #[arg(long, default_value_t = 4)]
        max_weight: i64,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Compare the span of words in generators with the invariant space.
    SpanCheck {
        #[arg(long)]
        action: String,
        /// File with one generator expression per line.
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_weight: i64,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Joint kernel of the non-negative modes of torus currents.
    Commutant {
        #[arg(long, allow_hyphen_values = true)]
        charges: String,
        #[arg(long, default_value_t = 3)]
        max_weight: i64,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// List the monomial basis of one bidegree.
    Basis {
        #[arg(long)]
        weight: i64,
        #[arg(long)]
        degree: usize,
    },
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NOT_FOUND: i32 = 3;
    pub const DEFICIENT: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Core(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => exit::USAGE,
            CliError::Core(
                Error::InvalidSpecies { .. }
                | Error::IndexOutOfRange { .. }
                | Error::InvalidKind { .. }
                | Error::InvalidArgument(_)
                | Error::NotInvariant(_)
                | Error::DimensionMismatch { .. },
            ) => exit::USAGE,
            _ => exit::FAILURE,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

/// What a subcommand produces, in every format it supports.
pub struct Emission {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub code: i32,
}

impl Emission {
    fn new(json: Value, text: String) -> Self {
        Self { json, text, csv: None, code: exit::OK }
    }

    fn csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n"),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => self.csv.clone().ok_or_else(|| CliError::Usage("this subcommand has no csv output".into())),
        }
    }
}

fn check_cap(name: &str, value: i64, ceiling: i64) -> Result<(), CliError> {
    if value > ceiling {
        return Err(CliError::Usage(format!("{name} = {value} exceeds the ceiling {ceiling} (raise it with --ceiling)")));
    }
    Ok(())
}

fn rational(text: &str) -> Result<Rational, CliError> {
    parse_scalar(text).ok_or_else(|| CliError::Usage(format!("not a rational number: {text:?}")))
}

fn q(x: &Rational) -> Value {
    Value::String(scalar_to_string(x))
}

fn matrix_json(m: &SparseMatrix<Rational>) -> Value {
    Value::Array(m.to_dense().iter().map(|row| Value::Array(row.iter().map(q).collect())).collect())
}

fn matrix_text(m: &SparseMatrix<Rational>) -> String {
    m.to_dense()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn state_csv(s: &State) -> String {
    let mut out = String::from("monomial,coefficient\n");
    for (m, c) in s.iter() {
        let _ = writeln!(out, "\"{}\",{}", m.to_json(), c);
    }
    out
}

fn verma_list(title: &str, vectors: &[VermaElement<Rational>]) -> (Value, String) {
    let json = Value::Array(vectors.iter().map(VermaElement::to_json).collect());
    let mut text = format!("{title}: dimension {}\n", vectors.len());
    for v in vectors {
        let _ = writeln!(text, "  {v}");
    }
    (json, text)
}

fn action_for(spec: &str, alg: &AlgebraDescriptor) -> Result<GroupAction<Rational>, CliError> {
    let action = parse_action(spec).map_err(CliError::Usage)?;
    action.validate(alg.rank)?;
    if !action.is_faithful() {
        eprintln!("warning: torus charge matrix does not have full row rank; the action is not faithful");
    }
    Ok(action)
}

pub fn run(cli: &Cli) -> Result<Emission, CliError> {
    let alg = AlgebraDescriptor::new(cli.algebra.kind(), cli.rank)?;
    let ceiling = cli.ceiling;
    let calc = FieldCalc::new();
    let state_of = |text: &str| -> Result<State, CliError> { Ok(eval(&parse(text)?, &alg, &calc)?) };

    Ok(match &cli.command {
        Command::Ope { a, b } => {
            let table = calc.ope_table(&state_of(a)?, &state_of(b)?)?;
            let mut json = table.to_json();
            json["a"] = json!(a);
            json["b"] = json!(b);
            let mut csv = String::from("pole,state\n");
            for (k, s) in &table.poles {
                let _ = writeln!(csv, "{k},\"{}\"", s.field_notation());
            }
            Emission::new(json, table.display_with(a, b) + "\n").csv(csv)
        }
        Command::Eval { expr } => {
            let e = parse(expr)?;
            let s = eval(&e, &alg, &calc)?;
            let json = json!({ "expr": e.to_string(), "state": s.to_json() });
            Emission::new(json, s.field_notation() + "\n").csv(state_csv(&s))
        }
        Command::VerifyIdentities { trials, max_weight, max_degree, seed } => {
            check_cap("max-weight", *max_weight, ceiling)?;
            check_cap("max-degree", *max_degree as i64, ceiling)?;
            let report = identity_suite::<Rational>(&alg, *trials, *max_weight, *max_degree, *seed)?;
            let text = format!("{} trials, {} failures\n", report.trials, report.failures.len());
            let code = if report.passed() { exit::OK } else { exit::DEFICIENT };
            Emission::new(report.to_json(), text).code(code)
        }
        Command::WinfVerify { n, kind, lmax, kmax, max_weight, max_degree } => {
            check_cap("max-weight", *max_weight, ceiling)?;
            check_cap("max-degree", *max_degree as i64, ceiling)?;
            let alg = match kind {
                Kind::Bg => AlgebraDescriptor::bg(*n),
                Kind::Bc => AlgebraDescriptor::bc(*n),
            };
            let kappa = realized_kappa::<Rational>(&alg)?;
            let real = Realization::<Rational>::new(alg)?;
            let mut report = RepReport { checked: 0, mismatches: Vec::new() };
            let mut pairs = 0;
            for l1 in 0..=*lmax {
                for l2 in 0..=*lmax {
                    for k1 in -kmax..=*kmax {
                        for k2 in -kmax..=*kmax {
                            report.merge(real.verify((l1, k1), (l2, k2), *max_weight, *max_degree, &kappa));
                            pairs += 1;
                        }
                    }
                }
            }
            let mut json = report.to_json();
            json["pairs"] = json!(pairs);
            json["kappa"] = q(&kappa);
            let text = format!("{pairs} pairs, {} checks, {} mismatches\n", report.checked, report.mismatches.len());
            let code = if report.ok() { exit::OK } else { exit::DEFICIENT };
            Emission::new(json, text).code(code)
        }
        Command::Matrices { w, m, r } => {
            check_cap("m", *m as i64, ceiling)?;
            let mw = build_mw::<Rational>(*w, *m);
            let t = build_t::<Rational>(*r, *m);
            let (det_mw, det_t) = (determinant(&mw)?, determinant(&t)?);
            let json = json!({
                "w": w, "m": m, "r": r,
                "mw": matrix_json(&mw), "det_mw": q(&det_mw),
                "t": matrix_json(&t), "det_t": q(&det_t),
            });
            let text = format!(
                "M^{w} (m = {m}), det = {det_mw}\n{}\nT({r},{m}), det = {det_t}\n{}\n",
                matrix_text(&mw),
                matrix_text(&t)
            );
            Emission::new(json, text)
        }
        Command::ExpressMap { w, m, c, d } => {
            check_cap("m", *m as i64, ceiling)?;
            let c: Vec<Rational> = c.iter().map(|x| rational(x)).collect::<Result<_, _>>()?;
            let d: Vec<Rational> = d.iter().map(|x| rational(x)).collect::<Result<_, _>>()?;
            let t = express_diagonal_map(*w, *m, &c, &d)?;
            let terms: Vec<String> =
                t.iter().enumerate().map(|(k, x)| format!("({x}) J^{}({k})", w + k as u64)).collect();
            let json = json!({ "w": w, "m": m, "coefficients": t.iter().map(q).collect::<Vec<_>>() });
            let mut csv = String::from("k,coefficient\n");
            for (k, x) in t.iter().enumerate() {
                let _ = writeln!(csv, "{k},{x}");
            }
            Emission::new(json, terms.join(" + ") + "\n").csv(csv)
        }
        Command::Singular { c, weight, l_cap, j_cap } => {
            check_cap("weight", *weight, ceiling)?;
            let c = rational(c)?;
            let l_cap = l_cap.unwrap_or((*weight + 2).max(0) as u32);
            let j_cap = j_cap.unwrap_or(*weight);
            let vectors = singular_vectors(c.clone(), *weight, l_cap, j_cap);
            let (list, text) = verma_list("singular vectors", &vectors);
            let json = json!({ "c": q(&c), "weight": weight, "l_cap": l_cap, "j_cap": j_cap, "vectors": list });
            Emission::new(json, text)
        }
        Command::IdealKernel { n, weight } => {
            check_cap("weight", *weight, ceiling)?;
            let vectors = ideal_kernel::<Rational>(*n, *weight)?;
            let (list, text) = verma_list("kernel", &vectors);
            Emission::new(json!({ "n": n, "weight": weight, "vectors": list }), text)
        }
        Command::Decouple { n, l, g } => {
            check_cap("l", *l as i64, ceiling)?;
            match decouple::<Rational>(*l, *n, *g)? {
                Some(rel) => {
                    let mut json = rel.to_json();
                    json["verified"] = json!(rel.verify(*n)?);
                    Emission::new(json, rel.expression() + "\n")
                }
                None => {
                    let json = json!({ "target": format!("J^{l}"), "weight": l + 1, "relation": Value::Null });
                    Emission::new(json, format!("no relation for J^{l} in J^0..J^{g}\n")).code(exit::NOT_FOUND)
                }
            }
        }
        Command::InvDims { action, max_weight, max_degree } => {
            check_cap("max-weight", *max_weight, ceiling)?;
            check_cap("max-degree", *max_degree as i64, ceiling)?;
            let action = action_for(action, &alg)?;
            let state = dim_table(&action, &alg, *max_weight, *max_degree)?;
            let gr = gr_dim_table(&action, &alg, *max_weight, *max_degree)?;
            let rows: Vec<Value> = state
                .dims
                .iter()
                .map(|(bd, a)| {
                    let b = gr.dims.get(bd).copied();
                    json!({ "weight": bd.weight, "degree": bd.degree, "dim_state_side": a, "dim_gr_side": b, "equal": b == Some(*a) })
                })
                .collect();
            let equal = state.dims == gr.dims;
            let mut text = String::from("weight\\degree");
            for d in 0..=*max_degree {
                let _ = write!(text, "\t{d}");
            }
            for w in 0..=*max_weight {
                let _ = write!(text, "\n{w}");
                for d in 0..=*max_degree {
                    let _ = write!(text, "\t{}", state.get(w, d).unwrap_or(0));
                }
            }
            let _ = writeln!(text, "\nstate side equals symbol side: {equal}");
            let code = if equal { exit::OK } else { exit::DEFICIENT };
            Emission::new(json!({ "rows": rows, "all_equal": equal }), text).csv(state.comparison_csv(&gr)).code(code)
        }
        Command::SpanCheck { action, gens, max_weight, max_degree } => {
            check_cap("max-weight", *max_weight, ceiling)?;
            check_cap("max-degree", *max_degree as i64, ceiling)?;
            let action = action_for(action, &alg)?;
            let source = std::fs::read_to_string(gens).map_err(CliError::Io)?;
            let generators: Vec<State> = source
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(&state_of)
                .collect::<Result<_, _>>()?;
            let report = span_check(&generators, &action, &alg, *max_weight, *max_degree)?;
            let text = match report.first_deficiency {
                None => "success\n".to_string(),
                Some(d) => format!(
                    "deficient at weight {} degree {}: span {} < invariant {}\n",
                    d.weight, d.degree, d.dim_have, d.dim_need
                ),
            };
            let code = if report.success() { exit::OK } else { exit::DEFICIENT };
            Emission::new(report.to_json(), text).code(code)
        }
        Command::Commutant { charges, max_weight, max_degree } => {
            check_cap("max-weight", *max_weight, ceiling)?;
            check_cap("max-degree", *max_degree as i64, ceiling)?;
            let a = parse_charges(charges).map_err(CliError::Usage)?;
            let currents = torus_currents::<Rational>(&a, alg.rank)?;
            if let Err(e) = lattice_generators::<Rational>(&a, alg.rank) {
                eprintln!("note: {e}; the kernel itself is still exact");
            }
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut csv = String::from("weight,max_degree,dim\n");
            for w in 0..=*max_weight {
                let kernel = commutant_basis(&currents, &alg, w, *max_degree)?;
                let _ = writeln!(text, "weight {w}: dimension {}", kernel.len());
                for s in &kernel {
                    let _ = writeln!(text, "  {}", s.field_notation());
                }
                let _ = writeln!(csv, "{w},{max_degree},{}", kernel.len());
                rows.push(json!({ "weight": w, "dim": kernel.len(), "basis": kernel.iter().map(State::to_json).collect::<Vec<_>>() }));
            }
            Emission::new(json!({ "max_degree": max_degree, "rows": rows }), text).csv(csv)
        }
        Command::Basis { weight, degree } => {
            check_cap("weight", *weight, ceiling)?;
            check_cap("degree", *degree as i64, ceiling)?;
            let monomials = basis(&alg, Bidegree::new(*weight, *degree), None);
            let mut text = String::new();
            let mut csv = String::from("monomial\n");
            for m in &monomials {
                let _ = writeln!(text, "{m}");
                let _ = writeln!(csv, "\"{}\"", m.to_json());
            }
            let json = json!({ "weight": weight, "degree": degree, "size": monomials.len(),
                "monomials": monomials.iter().map(|m| m.to_json()).collect::<Vec<_>>() });
            Emission::new(json, text).csv(csv)
        }
    })
}
