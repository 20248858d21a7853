use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use linbase::basesize::{b_exact, b_star_exact, BaseCertificate};
use linbase::catalog::{
    analyze, build_corpus, export_corpus, load_corpus, run_suite, GroupFile, LoadedEntry, Recipe, Suite,
    VerificationReport,
};
use linbase::construct::{
    find_special_base, imprimitive_base, semilinear_base, strong_from_base, tensor_base, TensorCase,
};
use linbase::matlin::Vector;
use linbase::oracle::{closure_order, naive_b, naive_b_star, NAIVE_CAP};
use linbase::{Error, Result};

#[derive(Parser)]
#[command(name = "linbase", version, about = "Base sizes of linear groups over small finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, reducibility, p-solvability, b, b* and a regular orbit of a group file.
    Analyze {
        file: PathBuf,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Runs a verification suite over a corpus (`all` runs every suite).
    Verify(VerifyArgs),
    /// Builds a group from a recipe and a base for it.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Compares the engine against brute force on a small group.
    Oracle {
        #[arg(value_enum)]
        what: OracleKind,
        file: PathBuf,
    },
    /// The shipped corpus.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args)]
struct VerifyArgs {
    /// thm1, pw, thm3, cor33, lemma-regular, sharpness, gamma, constructions, oracle,
    /// structure, p-solvability, a descriptive alias, or all.
    suite: String,
    /// Corpus directory with manifest.json; the shipped corpus is built in memory if omitted.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Writes the report rows as JSON lines.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Accepted and ignored; every algorithm is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    B,
    Order,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    General,
    Special,
    Diagonal,
    Scalars,
    Singer,
    SingerNormalizer,
}

#[derive(Args)]
struct Emit {
    /// Writes the group file here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Prints one JSON object with the group, certificate and trace.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Normalizer of a Singer cycle in GL(n, q) with a strong base from a special base.
    Singer {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        emit: Emit,
    },
    /// `H wr S_k` on `k` coordinate blocks, with a base from a block base and
    /// distinguishing vectors.
    Wreath {
        #[arg(long)]
        q: u32,
        /// Block dimension.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "general")]
        block: Family,
        #[command(flatten)]
        emit: Emit,
    },
    /// Central tensor wreath `H wr S_2` on `V (x) V` for `H <= GL(2, q)`.
    Tensor {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "diagonal")]
        factor: Family,
        /// Coefficient for the pair case; the least working one by default.
        #[arg(long)]
        alpha: Option<u16>,
        #[command(flatten)]
        emit: Emit,
    },
    /// Semilinear group over `GF(q^f)^l`, with a base from the gamma search.
    Semilinear {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        f: u32,
        #[arg(long, default_value_t = 2)]
        l: usize,
        #[arg(long)]
        monomial: bool,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Writes every group file and manifest.json.
    Export {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Lists the shipped entries.
    List,
}

fn family(f: Family, q: u32, n: usize) -> Recipe {
    match f {
        Family::General => Recipe::General { q, n },
        Family::Special => Recipe::Special { q },
        Family::Diagonal => Recipe::Diagonal { q, n },
        Family::Scalars => Recipe::Scalars { q, n },
        Family::Singer => Recipe::Singer { q, n },
        Family::SingerNormalizer => Recipe::SingerNormalizer { q, n },
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded(_) => 3,
        Error::RedFlag(_) => 1,
        _ => 2,
    }
}

fn show(vs: &[Vector]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format!("{:?}", v.entries())).collect();
    format!("({})", parts.join(", "))
}

fn read_group(path: &Path) -> Result<(String, linbase::grp::MatrixGroup)> {
    let file = GroupFile::read(path)?;
    let built = file.to_group().map_err(|e| match e {
        Error::Format { location, message } => Error::Format {
            location: format!("{}: {location}", path.display()),
            message,
        },
        e => e,
    })?;
    Ok((file.name, built.group))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("linbase: {e}");
            exit_for(&e)
        }
    };
    ExitCode::from(code)
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Analyze { file, json } => {
            let (name, g) = read_group(&file)?;
            let a = analyze(&name, &g)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&a).expect("serializable"));
            } else {
                print!("{}", a.to_text());
            }
            Ok(0)
        }
        Command::Verify(args) => verify(args),
        Command::Construct(c) => construct(c),
        Command::Oracle { what, file } => oracle(what, &file),
        Command::Catalog(CatalogCommand::Export { out, jobs }) => {
            let corpus = export_corpus(&out, jobs)?;
            println!("wrote {} groups and manifest.json to {}", corpus.len(), out.display());
            Ok(0)
        }
        Command::Catalog(CatalogCommand::List) => {
            for e in build_corpus(0)? {
                let c = &e.entry.claims;
                println!("{:<22} |G| = {:<8} {}", e.name(), c.order, e.entry.recipe.describe());
            }
            Ok(0)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<u8> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(&args.suite).ok_or_else(|| Error::Precondition(format!("unknown suite {}", args.suite)))?]
    };
    let corpus: Vec<LoadedEntry> = match &args.corpus {
        Some(dir) => load_corpus(dir, args.jobs)?,
        None => build_corpus(args.jobs)?,
    };
    let reports: Vec<VerificationReport> = suites.iter().map(|&s| run_suite(s, &corpus, args.jobs)).collect();
    for r in &reports {
        println!("== {} ({})", r.suite, Suite::from_name(&r.suite).map_or("", |s| s.description()));
        print!("{}", r.to_text());
    }
    if let Some(path) = &args.json {
        let body: String = reports.iter().map(VerificationReport::to_jsonl).collect();
        fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let codes: Vec<i32> = reports.iter().map(VerificationReport::exit_code).collect();
    Ok(if codes.contains(&1) {
        1
    } else if codes.contains(&3) {
        3
    } else {
        0
    })
}

fn emit(name: &str, built: &linbase::catalog::Built, cert: &BaseCertificate, trace: &[String], e: &Emit) -> Result<u8> {
    let file = GroupFile::from_group(name, &built.group, built.semilinear.as_ref());
    if let Some(path) = &e.out {
        file.write(path)?;
    }
    let cert = cert.clone().named(name);
    if e.json {
        let group: serde_json::Value = serde_json::from_str(&file.render()).expect("rendered JSON");
        let out = json!({ "group": group, "certificate": cert.to_json(), "trace": trace });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        for line in trace {
            println!("{line}");
        }
        println!("{}", cert.to_json());
    }
    Ok(if cert.verified { 0 } else { 1 })
}

fn construct(c: ConstructCommand) -> Result<u8> {
    match c {
        ConstructCommand::Singer { q, n, emit: e } => {
            let recipe = Recipe::SingerNormalizer { q, n };
            let built = recipe.build()?;
            let g = built.group.with_scalars()?;
            let mut trace = vec![format!("group: {} of order {}", recipe.describe(), built.group.order()?)];
            let special = find_special_base(&g)?
                .ok_or_else(|| Error::Hypothesis("no special base of length t(q)".into()))?;
            trace.push(format!("special base, case {}: {}", special.case.label(), show(&special.vectors)));
            let cert = strong_from_base(&g, &special.vectors, special.case)?;
            trace.push(format!("strong base of the group with scalars: {}", show(&cert.vectors)));
            emit(&format!("singer-normalizer-{q}-{n}"), &built, &cert, &trace, &e)
        }
        ConstructCommand::Wreath { q, n, k, block, emit: e } => {
            let recipe = Recipe::MonomialWreath {
                base: Box::new(family(block, q, n)),
                k,
            };
            let built = recipe.build()?;
            let g = &built.group;
            let r = imprimitive_base(g, n)?;
            let mut trace = vec![
                format!("group: {} of order {}", recipe.describe(), g.order()?),
                format!("block base, case {}: {}", r.block_case.label(), show(&r.block_base)),
                format!(
                    "distinguishing vectors: a = {:?}, b = {}{}",
                    r.distinguishing.a,
                    r.distinguishing.b.as_ref().map_or("none".to_string(), |b| format!("{b:?}")),
                    if r.distinguishing.restricted { " (even codes)" } else { "" }
                ),
                format!("assembled base: {}", show(&r.certificate.vectors)),
            ];
            if let Some(s) = &r.strong {
                trace.push(format!("strong base: {}", show(&s.vectors)));
            }
            emit(&format!("wreath-{q}-{n}-{k}"), &built, &r.certificate, &trace, &e)
        }
        ConstructCommand::Tensor { q, factor, alpha, emit: e } => {
            let h = family(factor, q, 2);
            let recipe = Recipe::TensorWreath { base: Box::new(h.clone()) };
            let built = recipe.build()?;
            let case = if q == 3 { TensorCase::Triple } else { TensorCase::Pair };
            let r = tensor_base(&h.build()?.group, case, alpha)?;
            let mut trace = vec![
                format!("group: {} of order {}", recipe.describe(), built.group.order()?),
                format!("factor basis: {}", show(&r.basis)),
            ];
            match r.alpha {
                Some(a) => trace.push(format!("pair case with alpha = {a}")),
                None => trace.push("triple case".to_string()),
            }
            trace.push(format!("base: {}", show(&r.certificate.vectors)));
            emit(&format!("tensor-wreath-{q}"), &built, &r.certificate, &trace, &e)
        }
        ConstructCommand::Semilinear { q, f, l, monomial, emit: e } => {
            let recipe = Recipe::Semilinear { q, f, l, monomial };
            let built = recipe.build()?;
            let s = built
                .semilinear
                .as_ref()
                .ok_or_else(|| Error::Precondition("recipe has no semilinear structure".into()))?;
            let r = semilinear_base(s)?;
            let trace = vec![
                format!("group: {} of order {}", recipe.describe(), built.group.order()?),
                format!("special base of the linear part, case {}: {:?}, {:?}", r.case.label(), r.u1, r.u2),
                format!(
                    "{} elements fix u1 and the coset of u2; {} values excluded, bound {}",
                    r.scanned, r.excluded, r.bound
                ),
                format!("gamma = {}", r.gamma),
                format!("base: {}", show(&r.certificate.vectors)),
            ];
            emit(&format!("semilinear-{q}-{f}-{l}"), &built, &r.certificate, &trace, &e)
        }
    }
}

fn oracle(what: OracleKind, path: &Path) -> Result<u8> {
    let (name, g) = read_group(path)?;
    let order = g.order()?;
    if order > NAIVE_CAP as u64 {
        return Err(Error::CapExceeded(format!("|G| = {order} exceeds the naive cap {NAIVE_CAP}")));
    }
    let same = match what {
        OracleKind::Order => {
            let naive = closure_order(&g)?;
            println!("{name}: stabilizer chain {order}, closure {naive}");
            order == naive
        }
        OracleKind::B => {
            let space = g.space();
            let idx = |c: &BaseCertificate| c.vectors.iter().map(|v| space.index(v)).collect::<Vec<u32>>();
            let (b, cert) = b_exact(&g)?;
            let (nb, nt) = naive_b(&g)?;
            let (bs, scert) = b_star_exact(&g)?;
            let (nbs, nts) = naive_b_star(&g)?;
            println!("{name}: b pruned {b} at {:?}, naive {nb} at {nt:?}", idx(&cert));
            println!("{name}: b* pruned {bs} at {:?}, naive {nbs} at {nts:?}", idx(&scert));
            b == nb && bs == nbs && idx(&cert) == nt && idx(&scert) == nts
        }
    };
    println!("{}", if same { "pruned == naive" } else { "pruned != naive" });
    Ok(if same { 0 } else { 1 })
}
