//! `aparam`: command-line front end for relevance, L-function orders,
//! sign characters and GL branching.
//!
//! Exit status: 0 on success, 2 when the answer is a mathematical "no"
//! (an irrelevant pair, unequal supports, a reproduction mismatch), 1 on
//! errors.

mod input;
mod reproduce;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use aparam_core::chars::{
    alternating_characters, automorphy_test, distinguished_character, predict_multiplicity, supercuspidal_support,
    without_gaps,
};
use aparam_core::enumerate::{enumerate_params, EnumerationBounds};
use aparam_core::glbranch::{
    decide_gl_branching, derivative_supports, support, support_match, CuspSupport, GLProduct, SupportMatch,
};
use aparam_core::globlfun::global_ratio_order;
use aparam_core::lfun::{bessel_ratio_order, gl_ratio_order, ord_at, FormalRep, RatioOrder};
use aparam_core::relevance::{check_relevant, delta_class_search, special_pairs, Relevance};
use aparam_core::repcore::{parse_param, validate_parity};
use aparam_core::{AParam, Half, Parity, SymbolTable, WeilSymbol};
use clap::{Args, Parser, Subcommand};
use input::{load_file, load_many, parse_parity, Named};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "aparam", version, about = "Exact computations for pairs of A-parameters")]
struct Cli {
    /// Symbol table merged into every parameter file.
    #[arg(long, global = true, value_name = "FILE")]
    symbols: Option<PathBuf>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonicalize a parameter given as a file or as text with --parity.
    Parse {
        input: String,
        #[arg(long, value_parser = parse_parity)]
        parity: Option<Parity>,
    },
    #[command(subcommand)]
    Relevance(RelevanceCmd),
    #[command(subcommand)]
    Lfun(LfunCmd),
    #[command(subcommand)]
    Globlfun(GloblfunCmd),
    #[command(subcommand)]
    Chars(CharsCmd),
    #[command(subcommand)]
    Glbranch(GlbranchCmd),
    /// List every parameter of one parity and dimension, or every pair with
    /// a partner of the given dimension.
    Enumerate(EnumerateArgs),
    /// Run a worked example and compare with its expected values.
    Reproduce {
        /// Example id; omit to list the registry.
        id: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value = "nontrivial", value_parser = ["trivial", "nontrivial"])]
        beta: String,
    },
}

/// Two parameter files; either may be a directory, giving a batch over all pairs.
#[derive(Args)]
struct Pair {
    m: PathBuf,
    n: PathBuf,
}

#[derive(Subcommand)]
enum RelevanceCmd {
    /// Decide relevance, with the witness or the failing index.
    Check(Pair),
    /// Special pairs of a relevant discrete pair of opposite parities.
    SpecialPairs(Pair),
    /// Every parameter with the same diagonal restriction.
    DeltaClass {
        m: PathBuf,
        #[arg(long, default_value_t = 1000)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum LfunCmd {
    /// Pole order of `L(param, s)` at a positive half-integer.
    Ord {
        param: PathBuf,
        #[arg(long, default_value = "1/2")]
        at: Half,
    },
    /// `L(M×N^∨, s+½) L(M^∨×N, s+½) / L(M×M^∨, s+1) L(N×N^∨, s+1)` at `s = 0`.
    GlRatio(Pair),
    /// `L(M⊗N, s+½) / L(Sym²M ⊕ Λ²N, s+1)` at `s = 0`.
    BesselRatio(Pair),
}

#[derive(Subcommand)]
enum GloblfunCmd {
    /// The global ratio order as an expression in the central vanishing orders.
    Ratio {
        #[command(flatten)]
        pair: Pair,
        /// Values for the unknowns, `{"z(V,W)": 1}`.
        #[arg(long, value_name = "FILE")]
        bind: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CharsCmd {
    /// Predicted multiplicity and distinguished character.
    Predict {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_name = "FILE")]
        signs: Option<PathBuf>,
    },
    /// The four product conditions for automorphy.
    Automorphy {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_name = "FILE")]
        signs: Option<PathBuf>,
    },
    /// Alternating characters and the supercuspidality criterion.
    Supercuspidal { m: PathBuf },
    /// The distinguished character of a tempered pair.
    DistinguishedCharacter {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_name = "FILE")]
        signs: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GlbranchCmd {
    /// Decide `Hom(π_M, π_N) ≠ 0` by relevance and by derivatives.
    Decide(Pair),
    /// Cuspidal support of a product such as `St2 x Z2@1/2`, and optionally
    /// its comparison with a second product.
    Support {
        product: String,
        #[arg(long)]
        against: Option<String>,
        /// Also list the supports of the derivative of this order.
        #[arg(long)]
        derivative: Option<u64>,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_parser = parse_parity)]
    parity: Parity,
    #[arg(long)]
    dim: u64,
    /// Pair every result with every partner of this dimension.
    #[arg(long)]
    partner_dim: Option<u64>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Report only relevant pairs.
    #[arg(long)]
    relevant_only: bool,
}

/// A JSON report and whether it is a mathematical "no".
struct Report {
    value: Value,
    negative: bool,
}

impl Report {
    fn yes(value: Value) -> Self {
        Report { value, negative: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => match emit(&report.value, cli.out.as_deref()) {
            Ok(()) if report.negative => ExitCode::from(2),
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(value: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let table = input::symbol_table(cli.symbols.as_deref())?;
    match &cli.command {
        Command::Parse { input, parity } => parse(input, *parity, &table),
        Command::Relevance(cmd) => match cmd {
            RelevanceCmd::Check(pair) => batch(pair, &table, relevance_check),
            RelevanceCmd::SpecialPairs(pair) => batch(pair, &table, |m, n| {
                if let Some(report) = not_relevant(m, n) {
                    return Ok(report);
                }
                let pairs: Vec<Value> =
                    special_pairs(m, n)?.iter().map(|p| json!({"i": p.i.render(), "j": p.j.render()})).collect();
                Ok(Report::yes(json!({"relevant": true, "special_pairs": pairs})))
            }),
            RelevanceCmd::DeltaClass { m, bound } => {
                let p = load_file(m, &table)?;
                let class: Vec<String> = delta_class_search(&p, *bound)?.iter().map(AParam::render).collect();
                Ok(Report::yes(json!({"param": p.render(), "count": class.len(), "class": class})))
            }
        },
        Command::Lfun(cmd) => match cmd {
            LfunCmd::Ord { param, at } => {
                let p = load_file(param, &table)?;
                let order = ord_at(&FormalRep::from_param(&p), *at)?;
                Ok(Report::yes(json!({"param": p.render(), "at": at, "order": order})))
            }
            LfunCmd::GlRatio(pair) => batch(pair, &table, |m, n| ratio_report(gl_ratio_order(m, n)?)),
            LfunCmd::BesselRatio(pair) => batch(pair, &table, |m, n| ratio_report(bessel_ratio_order(m, n)?)),
        },
        Command::Globlfun(GloblfunCmd::Ratio { pair, bind }) => {
            let bindings = bind.as_deref().map(input::bindings).transpose()?;
            batch(pair, &table, |m, n| {
                if let Some(report) = not_relevant(m, n) {
                    return Ok(report);
                }
                let expr = global_ratio_order(m, n)?;
                let mut value = json!({"expression": expr.to_string()});
                if let Some(b) = &bindings {
                    value["value"] = json!(expr.evaluate(b)?);
                }
                Ok(Report::yes(value))
            })
        }
        Command::Chars(cmd) => chars(cmd, &table),
        Command::Glbranch(cmd) => glbranch(cmd, &table),
        Command::Enumerate(args) => enumerate(args, &table),
        Command::Reproduce { id, n, beta } => {
            let Some(id) = id else {
                let list: Vec<Value> =
                    reproduce::IDS.iter().map(|(k, what)| json!({"id": k, "description": what})).collect();
                return Ok(Report::yes(json!(list)));
            };
            if *n > 12 {
                bail!("--n is limited to 12");
            }
            let outcome = reproduce::run(id, *n, beta == "trivial")?;
            Ok(Report { value: outcome.report, negative: !outcome.matches })
        }
    }
}

fn parse(input: &str, parity: Option<Parity>, table: &SymbolTable) -> Result<Report> {
    let p = if Path::new(input).is_file() {
        load_file(Path::new(input), table)?
    } else {
        let Some(parity) = parity else {
            bail!("`{input}` is not a file; give --parity to parse it as text");
        };
        parse_param(input, table, parity)?
    };
    Ok(Report::yes(json!({
        "parity": p.parity(),
        "param": p.render(),
        "dim": p.dim(),
        "tempered": p.is_tempered(),
        "discrete": p.is_discrete(),
        "deligne_trivial": p.is_deligne_trivial(),
        "parity_violations": validate_parity(&p),
    })))
}

/// Runs `f` on one pair, or on every pair when an argument is a directory.
/// A batch is negative only when every instance is.
fn batch(pair: &Pair, table: &SymbolTable, f: impl Fn(&AParam, &AParam) -> Result<Report>) -> Result<Report> {
    let ms = load_many(&pair.m, table)?;
    let ns = load_many(&pair.n, table)?;
    if !pair.m.is_dir() && !pair.n.is_dir() {
        return f(&ms[0].param, &ns[0].param);
    }
    let mut rows = Vec::new();
    let mut any_positive = false;
    for Named { name: m_name, param: m } in &ms {
        for Named { name: n_name, param: n } in &ns {
            let r = f(m, n).with_context(|| format!("on {m_name} / {n_name}"))?;
            any_positive |= !r.negative;
            rows.push(json!({"m": m_name, "n": n_name, "result": r.value}));
        }
    }
    Ok(Report { value: json!(rows), negative: !any_positive })
}

fn not_relevant(m: &AParam, n: &AParam) -> Option<Report> {
    match check_relevant(m, n) {
        Relevance::Relevant { .. } => None,
        Relevance::NotRelevant { reason } => Some(Report {
            value: json!({"relevant": false, "reason": reason, "explanation": reason.describe()}),
            negative: true,
        }),
    }
}

fn relevance_check(m: &AParam, n: &AParam) -> Result<Report> {
    Ok(match check_relevant(m, n) {
        Relevance::Relevant { witness } => Report::yes(json!({"relevant": true, "witness": witness})),
        Relevance::NotRelevant { .. } => not_relevant(m, n).expect("not relevant"),
    })
}

fn ratio_report(r: RatioOrder) -> Result<Report> {
    Ok(Report::yes(serde_json::to_value(r)?))
}

fn chars(cmd: &CharsCmd, table: &SymbolTable) -> Result<Report> {
    match cmd {
        CharsCmd::Predict { pair, signs } => {
            let t = input::sign_table(signs.as_deref())?;
            batch(pair, table, |m, n| {
                let p = predict_multiplicity(m, n, &t)?;
                Ok(Report { negative: p.d == 0, value: serde_json::to_value(p)? })
            })
        }
        CharsCmd::Automorphy { pair, signs } => {
            let t = input::sign_table(signs.as_deref())?;
            batch(pair, table, |m, n| {
                if let Some(report) = not_relevant(m, n) {
                    return Ok(report);
                }
                Ok(Report::yes(serde_json::to_value(automorphy_test(m, n, &t)?)?))
            })
        }
        CharsCmd::Supercuspidal { m } => {
            let p = load_file(m, table)?;
            let gaps_free = without_gaps(&p)?;
            let alphas = alternating_characters(&p)?;
            let supercuspidal = alphas.iter().map(|a| supercuspidal_support(&p, a)).collect::<Result<Vec<_>, _>>()?;
            Ok(Report::yes(json!({
                "param": p.render(),
                "without_gaps": gaps_free,
                "alternating_characters": alphas,
                "supercuspidal": supercuspidal,
            })))
        }
        CharsCmd::DistinguishedCharacter { pair, signs } => {
            let t = input::sign_table(signs.as_deref())?;
            batch(pair, table, |m, n| Ok(Report::yes(serde_json::to_value(distinguished_character(m, n, &t)?)?)))
        }
    }
}

/// Per line, the exponents in increasing order with their counts.
fn support_json(s: &CuspSupport) -> Value {
    let lines: serde_json::Map<String, Value> = s
        .lines()
        .iter()
        .map(|(line, xs)| {
            (line.clone(), json!(xs.iter().map(|(x, c)| json!({"x": x, "count": c})).collect::<Vec<_>>()))
        })
        .collect();
    Value::Object(lines)
}

fn glbranch(cmd: &GlbranchCmd, table: &SymbolTable) -> Result<Report> {
    match cmd {
        GlbranchCmd::Decide(pair) => batch(pair, table, |m, n| {
            let verdict = decide_gl_branching(m, n)?;
            let negative = verdict.hom_nonzero() == Some(false);
            Ok(Report { value: serde_json::to_value(&verdict)?, negative })
        }),
        GlbranchCmd::Support { product, against, derivative } => {
            let v = GLProduct::parse(product, table)?;
            let mut value = json!({"product": v.render(), "rank": v.rank(), "support": support_json(&support(&v))});
            if let Some(k) = derivative {
                let supports: Vec<Value> = derivative_supports(&v, *k)?.iter().map(support_json).collect();
                value["derivative"] = json!({"order": k, "supports": supports});
            }
            let mut negative = false;
            if let Some(w) = against {
                let w = GLProduct::parse(w, table)?;
                let m = support_match(&v, &w)?;
                negative = matches!(m, SupportMatch::NoMatch { .. });
                value["against"] = json!(w.render());
                value["match"] = serde_json::to_value(m)?;
            }
            Ok(Report { value, negative })
        }
    }
}

fn enumerate(args: &EnumerateArgs, table: &SymbolTable) -> Result<Report> {
    let symbols: Vec<WeilSymbol> = table.iter().cloned().collect();
    let bounds =
        |parity: Parity, dim: u64| EnumerationBounds { parity, dim, max_terms: args.max_terms, budget: args.budget };
    let own = enumerate_params(&symbols, &bounds(args.parity, args.dim))?;
    let Some(partner_dim) = args.partner_dim else {
        let params: Vec<String> = own.params.iter().map(AParam::render).collect();
        return Ok(Report::yes(json!({
            "parity": args.parity,
            "dim": args.dim,
            "visited": own.visited,
            "count": params.len(),
            "params": params,
        })));
    };
    let partner_parity = args.parity.opposite();
    let partners = enumerate_params(&symbols, &bounds(partner_parity, partner_dim))?;
    let mut rows = Vec::new();
    let mut relevant_count = 0;
    for m in &own.params {
        for n in &partners.params {
            let relevant = check_relevant(m, n).is_relevant();
            relevant_count += usize::from(relevant);
            if args.relevant_only && !relevant {
                continue;
            }
            let ratio = match (args.parity, args.parity.sign()) {
                (Parity::Gl, _) => gl_ratio_order(m, n)?,
                (_, Some(-1)) => bessel_ratio_order(m, n)?,
                _ => bessel_ratio_order(n, m)?,
            };
            rows.push(
                json!({"m": m.render(), "n": n.render(), "relevant": relevant, "ratio_order": ratio.signed_order}),
            );
        }
    }
    Ok(Report::yes(json!({
        "parity": args.parity,
        "dim": args.dim,
        "partner_parity": partner_parity,
        "partner_dim": partner_dim,
        "visited": own.visited + partners.visited,
        "pairs": own.params.len() * partners.params.len(),
        "relevant_pairs": relevant_count,
        "rows": rows,
    })))
}
