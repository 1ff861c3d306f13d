use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use jblocks_core::char0::{check_prediction, check_theorem, WeylTypeData};
use jblocks_core::classical::{good_char_report, unipotent_adjoint_partition_via, ClassicalType};
use jblocks_core::g2::g2_table;
use jblocks_core::jordan::{nilpotent_from_partition, unipotent_partition};
use jblocks_core::multilinear::{sym_partition, wedge_partition};
use jblocks_core::registry::{resolve_law, resolve_springer};
use jblocks_core::ring::structure_constants;
use jblocks_core::tensor::tensor_partition;
use jblocks_core::verify::{verify_paper, VerifyConfig};
use jblocks_core::{with_field, Field, FieldSpec, FormalGroupLaw, Partition, RingElement, TruncatedPoly};

/// Jordan blocks of nilpotent and unipotent operators under formal group laws.
#[derive(Parser, Debug)]
#[command(name = "jblocks", version)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partition of J_lambda ⊗_F J_mu.
    Tensor(TensorArgs),
    /// Partition of the m-th exterior power.
    Wedge(PowerArgs),
    /// Partition of the m-th symmetric power.
    Sym(PowerArgs),
    #[command(subcommand)]
    Ring(RingCommand),
    #[command(subcommand)]
    Adjoint(AdjointCommand),
    #[command(subcommand)]
    G2(G2Command),
    #[command(subcommand)]
    Springer(SpringerCommand),
    #[command(subcommand)]
    Predict(PredictCommand),
    #[command(subcommand)]
    Series(SeriesCommand),
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
enum RingCommand {
    /// Structure constants [J_a][J_b] in the representation ring.
    Constants(ConstantsArgs),
}

#[derive(Subcommand, Debug)]
enum AdjointCommand {
    /// ad(X) and Ad(u) for a classical group.
    Classical(ClassicalArgs),
}

#[derive(Subcommand, Debug)]
enum G2Command {
    /// Every G2 orbit in both modes, by both routes.
    Table(G2Args),
}

#[derive(Subcommand, Debug)]
enum SpringerCommand {
    /// Partition of 1 + eps(X).
    Apply(SpringerArgs),
}

#[derive(Subcommand, Debug)]
enum PredictCommand {
    /// Exponent prediction for a distinguished nilpotent in characteristic 0.
    Char0(PredictArgs),
}

#[derive(Subcommand, Debug)]
enum SeriesCommand {
    /// Compositional inverse of a univariate series.
    Invert(InvertArgs),
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Reproduce every published table and identity.
    Paper(VerifyArgs),
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let p: u64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    FieldSpec::new(p).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Characteristic: a prime, or 0 for the rationals.
    #[arg(long, value_parser = parse_field)]
    p: FieldSpec,
    /// additive, multiplicative, scaled:c, random:seed, random-generalized:seed,
    /// random-unit:seed or file:path.
    #[arg(long, default_value = "additive")]
    law: String,
}

#[derive(Args, Debug)]
struct TensorArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Single block size of the left factor.
    #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda")]
    a: Option<usize>,
    /// Single block size of the right factor.
    #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
    b: Option<usize>,
    #[arg(long)]
    lambda: Option<Partition>,
    #[arg(long)]
    mu: Option<Partition>,
}

#[derive(Args, Debug)]
struct PowerArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda")]
    a: Option<usize>,
    #[arg(long)]
    lambda: Option<Partition>,
    #[arg(long, default_value_t = 2)]
    m: usize,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
}

#[derive(Args, Debug)]
struct ClassicalArgs {
    /// GL, Sp or SO.
    #[arg(long = "type")]
    kind: ClassicalType,
    #[arg(long)]
    lambda: Partition,
    #[arg(long, value_parser = parse_field)]
    p: FieldSpec,
    /// Springer series for the unipotent side (default: 1 + X).
    #[arg(long)]
    series: Option<String>,
}

#[derive(Args, Debug)]
struct G2Args {
    #[arg(long)]
    p: u64,
}

#[derive(Args, Debug)]
struct SpringerArgs {
    #[arg(long, value_parser = parse_field)]
    p: FieldSpec,
    /// identity, cayley, exp or random:seed.
    #[arg(long, default_value = "cayley")]
    series: String,
    #[arg(long)]
    lambda: Partition,
}

#[derive(Args, Debug)]
struct PredictArgs {
    #[arg(long = "type", conflicts_with = "weyl", required_unless_present = "weyl")]
    kind: Option<ClassicalType>,
    #[arg(long, requires = "kind")]
    lambda: Option<Partition>,
    /// Weyl type such as G2 or E8, used with --ad.
    #[arg(long, requires = "ad")]
    weyl: Option<WeylTypeData>,
    /// Known adjoint partition.
    #[arg(long)]
    ad: Option<Partition>,
}

#[derive(Args, Debug)]
struct InvertArgs {
    #[arg(long, value_parser = parse_field)]
    p: FieldSpec,
    /// Coefficients of t^0, t^1, ..., comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    coeffs: Vec<String>,
    /// Truncation order n of k[t]/(t^n); defaults to the number of coefficients.
    #[arg(long)]
    trunc: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma separated suite names.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Also check a law file.
    #[arg(long)]
    law_file: Option<PathBuf>,
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

type CmdResult = Result<Output, jblocks_core::Error>;

fn pick(single: Option<usize>, lambda: Option<Partition>) -> Partition {
    lambda.unwrap_or_else(|| Partition::repeated(single.expect("clap enforces one of the two"), 1))
}

fn run_tensor(args: TensorArgs) -> CmdResult {
    let lambda = pick(args.a, args.lambda);
    let mu = pick(args.b, args.mu);
    let precision = (lambda.largest() + mu.largest()).saturating_sub(2).max(1);
    let part = with_field!(args.field.p, |f| {
        let law = resolve_law(&args.field.law, &f, precision)?;
        tensor_partition(&lambda, &mu, &law)?
    });
    let class = RingElement::from_partition(&part);
    Ok(Output::ok(
        class.to_string(),
        json!({"p": args.field.p, "law": args.field.law, "lambda": lambda, "mu": mu, "partition": part, "class": class}),
    ))
}

fn run_power(args: PowerArgs, exterior: bool) -> CmdResult {
    let lambda = pick(args.a, args.lambda);
    let precision = (args.m * lambda.largest().saturating_sub(1)).max(1);
    let part = with_field!(args.field.p, |f| {
        let law = resolve_law(&args.field.law, &f, precision)?;
        if exterior {
            wedge_partition(&lambda, args.m, &law)?
        } else {
            sym_partition(&lambda, args.m, &law)?
        }
    });
    Ok(Output::ok(
        part.to_string(),
        json!({"p": args.field.p, "law": args.field.law, "lambda": lambda, "m": args.m, "partition": part}),
    ))
}

fn run_constants(args: ConstantsArgs) -> CmdResult {
    let precision = (args.a + args.b).saturating_sub(2).max(1);
    let class = with_field!(args.field.p, |f| {
        let law = FormalGroupLaw::new(resolve_law(&args.field.law, &f, precision)?)?;
        structure_constants(args.a, args.b, &law)?
    });
    Ok(Output::ok(
        format!("J{} ⊗ J{} = {class}", args.a, args.b),
        json!({"p": args.field.p, "law": args.field.law, "a": args.a, "b": args.b, "class": class}),
    ))
}

fn run_classical(args: ClassicalArgs) -> CmdResult {
    let mut report = good_char_report(args.kind, &args.lambda, args.p)?;
    if let Some(spec) = &args.series {
        let n = args.lambda.largest();
        report.unipotent = with_field!(args.p, |f| {
            let eps = resolve_springer(spec, &f, n)?;
            unipotent_adjoint_partition_via(args.kind, &args.lambda, &eps)?
        });
        report.equal = report.ad == report.unipotent;
    }
    let mut text = format!(
        "{} {} p={}: ad {}  Ad {}  equal: {}",
        report.kind, report.lambda, report.p, report.ad, report.unipotent, report.equal
    );
    if report.bad_characteristic {
        text.push_str("  (bad characteristic)");
    }
    Ok(Output::ok(text, serde_json::to_value(&report)?))
}

fn run_g2(args: G2Args) -> CmdResult {
    let table = g2_table(args.p)?;
    let mut lines = vec![format!("G2 at p={} (dim {})", table.p, table.g2_dim)];
    for r in &table.rows {
        lines.push(format!(
            "{:<7} V {:<10} ad {:<10} Ad {:<10} {}",
            r.orbit.to_string(),
            r.v.to_string(),
            r.adjoint_nilpotent.to_string(),
            r.adjoint_unipotent.to_string(),
            if r.matches { "ok" } else { "MISMATCH" }
        ));
    }
    Ok(Output { text: lines.join("\n"), json: serde_json::to_value(&table)?, ok: table.all_match() })
}

fn run_springer(args: SpringerArgs) -> CmdResult {
    let n = args.lambda.largest().max(1);
    let (shown, part) = with_field!(args.p, |f| {
        let eps = resolve_springer(&args.series, &f, n)?;
        let x = nilpotent_from_partition(&f, &args.lambda);
        let u = jblocks_core::classical::springer_image(&eps, &x)?;
        (eps.display_univariate("t")?, unipotent_partition(&u)?)
    });
    Ok(Output {
        text: format!("eps(t) = {shown}\n{part}"),
        json: json!({"p": args.p, "series": shown, "lambda": args.lambda, "partition": part}),
        ok: part == args.lambda,
    })
}

fn run_predict(args: PredictArgs) -> CmdResult {
    let report = match (args.kind, args.lambda, args.weyl, args.ad) {
        (Some(kind), Some(lambda), _, _) => check_theorem(kind, &lambda)?,
        (_, _, Some(weyl), Some(ad)) => check_prediction(&weyl, &ad)?,
        _ => return Err(jblocks_core::Error::Parse("give --type with --lambda, or --weyl with --ad".into())),
    };
    let predicted = report.predicted.as_ref().map_or("-".to_string(), |p| p.to_string());
    let text = format!(
        "{} exponents {:?} n={} gate: {} predicted {} ad {} contained: {}",
        report.weyl,
        report.exponents,
        report.n,
        report.gate,
        predicted,
        report.ad,
        report.contained.map_or("-".to_string(), |c| c.to_string())
    );
    Ok(Output { text, json: serde_json::to_value(&report)?, ok: report.consistent() })
}

fn invert_in<F: Field>(f: &F, coeffs: &[String], trunc: Option<usize>) -> Result<(String, Value), jblocks_core::Error> {
    let parsed = coeffs.iter().map(|c| f.parse(c)).collect::<Result<Vec<_>, _>>()?;
    let n = trunc.unwrap_or(parsed.len()).max(1);
    let series = TruncatedPoly::univariate(f, n, &parsed);
    let inv = series.compose_inverse()?;
    Ok((inv.display_univariate("t")?, serde_json::to_value(inv.to_json())?))
}

fn run_invert(args: InvertArgs) -> CmdResult {
    let (text, poly) = with_field!(args.p, |f| invert_in(&f, &args.coeffs, args.trunc)?);
    Ok(Output::ok(text.clone(), json!({"p": args.p, "inverse": text, "series": poly})))
}

fn run_verify(args: VerifyArgs) -> CmdResult {
    let report = verify_paper(&VerifyConfig { only: args.only, law_file: args.law_file })?;
    let mut lines = Vec::new();
    for s in &report.suites {
        let status = if s.passed { "PASS" } else { "FAIL" };
        lines.push(format!("{status} {} ({} checks)", s.name, s.checks));
        for f in &s.failures {
            lines.push(format!("  failure: {f}"));
        }
        for n in &s.notes {
            lines.push(format!("  note: {n}"));
        }
    }
    Ok(Output { text: lines.join("\n"), json: serde_json::to_value(&report)?, ok: report.passed })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Tensor(a) => run_tensor(a),
        Command::Wedge(a) => run_power(a, true),
        Command::Sym(a) => run_power(a, false),
        Command::Ring(RingCommand::Constants(a)) => run_constants(a),
        Command::Adjoint(AdjointCommand::Classical(a)) => run_classical(a),
        Command::G2(G2Command::Table(a)) => run_g2(a),
        Command::Springer(SpringerCommand::Apply(a)) => run_springer(a),
        Command::Predict(PredictCommand::Char0(a)) => run_predict(a),
        Command::Series(SeriesCommand::Invert(a)) => run_invert(a),
        Command::Verify(VerifyCommand::Paper(a)) => run_verify(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
