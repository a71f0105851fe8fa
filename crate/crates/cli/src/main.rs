mod expr;

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use feigin_core::ar::{self, DirectedPartition};
use feigin_core::bases;
use feigin_core::cartan::{parse_word, render_word, RootDatum};
use feigin_core::exec::Exec;
use feigin_core::maps::MapContext;
use feigin_core::repfq::{IsoClass, RepCategory};
use feigin_core::sparse::Sparse;
use feigin_core::verify::{self, Report};
use feigin_core::{Error, Result};

const ALLOWED_Q: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Parser, Debug)]
#[command(
    name = "feigin",
    version,
    about = "Hall algebras of finite-type valued quivers over F_q and Feigin-type maps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Quiver JSON file or preset name (a1, a2, a3, b2, g2, d4)
    #[arg(long, global = true, default_value = "a2")]
    quiver: String,
    #[arg(long, global = true, default_value_t = 2)]
    q: u32,
    /// Word as comma-separated vertices, e.g. "1,2,1" (default: w0)
    #[arg(long, global = true)]
    word: Option<String>,
    /// Directed partition as JSON lists of 1-based indecomposable indices
    /// (default: the preprojective slices)
    #[arg(long, global = true)]
    partition: Option<String>,
    /// Total-dimension cap for enumerations and suites
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(i64).range(0..))]
    cap: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print the naming table of indecomposables first
    #[arg(long, global = true)]
    list_classes: bool,
    /// Disable the thread pool
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Positive roots
    Roots,
    /// Indecomposables with τ and θ
    Indec,
    /// Hall algebra product and coproduct
    Hall {
        #[command(subcommand)]
        op: HallOp,
    },
    /// Ω(δ_M) in the shuffle algebra
    Omega { class: String },
    /// ∫_w(δ_M) in P_w
    Intw { class: String },
    /// Image of a free-algebra expression under F_w
    Feigin { expr: String },
    /// E^(M) in the [L] basis; without CLASS, a table over all classes up to the cap
    Monomial { class: Option<String> },
    /// S(M, D)
    Charset { class: String },
    /// w0 or the word of the directed partition
    Word { which: WordKind },
    /// Run verification suites
    Verify {
        suite: Option<String>,
        #[arg(long = "suite")]
        suite_flag: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum HallOp {
    Mul { left: String, right: String },
    Comul { class: String },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum WordKind {
    W0,
    Partition,
}

struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            failed: false,
        }
    }
}

fn load_quiver(spec: &str) -> Result<RootDatum> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return RootDatum::from_json_str(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            Error::InvalidQuiver(m) => Error::InvalidQuiver(format!("{}: {m}", path.display())),
            other => other,
        });
    }
    RootDatum::preset(spec).map_err(|_| {
        Error::Parse(format!(
            "{spec:?} is neither a readable file nor a preset ({})",
            feigin_core::cartan::PRESET_NAMES.join(", ")
        ))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                ),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    if !ALLOWED_Q.contains(&cli.q) {
        return Err(Error::InvalidQ(cli.q));
    }
    let rd = load_quiver(&cli.quiver)?;
    if let Cmd::Roots = cli.cmd {
        return with_classes(cli, None, roots(&rd));
    }
    let cat = RepCategory::new(&rd, cli.q)?;
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::from_env()
    };
    let out = match &cli.cmd {
        Cmd::Roots => unreachable!(),
        Cmd::Indec => indec(&cat),
        Cmd::Hall { op } => hall(&cat, exec, op)?,
        Cmd::Omega { class } => {
            let ctx = context(cli, &cat, exec)?;
            let m = cat.parse_class(class)?;
            let y = ctx.map_omega(&Sparse::basis(m.clone(), cat.q))?;
            Output::ok(
                format!(
                    "Ω(δ[{}]) = {}",
                    cat.render_class(&m),
                    ctx.free.render_shuffle(&y)
                ),
                ctx.free.to_json(&y),
            )
        }
        Cmd::Intw { class } => {
            let ctx = context(cli, &cat, exec)?;
            let m = cat.parse_class(class)?;
            let p = ctx.qpoly();
            let x = ctx.map_int_w(&Sparse::basis(m.clone(), cat.q))?;
            Output::ok(
                format!(
                    "∫_w(δ[{}]) = {}  (w = {})",
                    cat.render_class(&m),
                    p.render(&x),
                    render_word(&ctx.word)
                ),
                p.to_json(&x),
            )
        }
        Cmd::Feigin { expr: text } => {
            let ctx = context(cli, &cat, exec)?;
            let x = expr::parse(&ctx.free, text)?;
            let p = ctx.qpoly();
            let img = ctx.feigin_eval(&x)?;
            Output::ok(
                format!("{}  (w = {})", p.render(&img), render_word(&ctx.word)),
                p.to_json(&img),
            )
        }
        Cmd::Monomial { class } => monomial(cli, &cat, exec, class.as_deref())?,
        Cmd::Charset { class } => {
            let d = partition(cli, &cat)?;
            let w = ar::word_of_partition(&cat, &d);
            let m = cat.parse_class(class)?;
            let hall = feigin_core::hall::Hall::with_exec(&cat, exec);
            let set = bases::characterization_set(&hall, &w, &m)?;
            let text = format!(
                "S({}) = {{{}}}  (w = {})",
                cat.render_class(&m),
                set.iter()
                    .map(|a| format!("({})", join(a)))
                    .collect::<Vec<_>>()
                    .join(", "),
                render_word(&w)
            );
            Output::ok(text, json!({ "word": one_based(&w), "set": set }))
        }
        Cmd::Word { which } => {
            let (d, label) = match which {
                WordKind::W0 => (ar::canonical_structures(&cat)?.proj_partition, "w0"),
                WordKind::Partition => (partition(cli, &cat)?, "partition"),
            };
            let w = ar::word_of_partition(&cat, &d);
            let report = cat.rd.weyl_word_ops(&w)?;
            let text = if *which == WordKind::W0 {
                render_word(&w)
            } else {
                format!(
                    "partition {}\nword {}\nreduced {}, longest {}",
                    d.to_json(),
                    render_word(&w),
                    report.reduced,
                    report.longest
                )
            };
            Output::ok(
                text,
                json!({
                    "kind": label,
                    "partition": d.to_json(),
                    "word": one_based(&w),
                    "reduced": report.reduced,
                    "longest": report.longest,
                }),
            )
        }
        Cmd::Verify { suite, suite_flag } => {
            let name = suite_flag.as_deref().or(suite.as_deref()).unwrap_or("all");
            let reports = verify::run(name, &cat, cli.cap, exec)?;
            verify_output(cli, &reports)
        }
    };
    with_classes(cli, Some(&cat), out)
}

fn with_classes(cli: &Cli, cat: Option<&RepCategory>, out: Output) -> Result<Output> {
    if !cli.list_classes {
        return Ok(out);
    }
    let owned;
    let cat = match cat {
        Some(c) => c,
        None => {
            owned = RepCategory::new(&load_quiver(&cli.quiver)?, cli.q)?;
            &owned
        }
    };
    let (text, json) = class_table(cat);
    Ok(Output {
        text: format!("{text}\n\n{}", out.text),
        json: json!({ "classes": json, "result": out.json }),
        failed: out.failed,
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn one_based(w: &[usize]) -> Vec<usize> {
    w.iter().map(|i| i + 1).collect()
}

fn roots(rd: &RootDatum) -> Output {
    let mut text = format!("ν = {}", rd.nu());
    for r in &rd.positive_roots {
        text.push_str(&format!("\n({})", join(r)));
    }
    Output::ok(text, json!({ "nu": rd.nu(), "roots": rd.positive_roots }))
}

fn class_table(cat: &RepCategory) -> (String, Value) {
    let mut text = String::from("index  name  dim        projective  injective");
    let mut rows = Vec::new();
    for (k, (name, dim, p, i)) in cat.class_table().into_iter().enumerate() {
        text.push_str(&format!(
            "\n{:<6} {:<5} {:<10} {:<11} {}",
            k + 1,
            name,
            format!("({})", join(&dim)),
            p,
            i
        ));
        rows.push(json!({
            "index": k + 1, "name": name, "dim": dim, "projective": p, "injective": i
        }));
    }
    (text, Value::Array(rows))
}

fn indec(cat: &RepCategory) -> Output {
    let mut text = String::from("index  name  dim        τ      τ⁻¹    θ");
    let mut rows = Vec::new();
    let name = |x: Option<usize>| x.map_or("-".to_string(), |k| cat.names[k].clone());
    for k in 0..cat.nu() {
        let (i, p) = ar::theta_tau(cat, k);
        text.push_str(&format!(
            "\n{:<6} {:<5} {:<10} {:<6} {:<6} ({},{})",
            k + 1,
            cat.names[k],
            format!("({})", join(&cat.indec_dims[k])),
            name(cat.tau[k]),
            name(cat.tau_inv[k]),
            i + 1,
            p
        ));
        rows.push(json!({
            "index": k + 1,
            "name": cat.names[k],
            "dim": cat.indec_dims[k],
            "tau": cat.tau[k].map(|x| cat.names[x].clone()),
            "tau_inv": cat.tau_inv[k].map(|x| cat.names[x].clone()),
            "theta": [i + 1, p],
        }));
    }
    Output::ok(text, Value::Array(rows))
}

fn hall(cat: &RepCategory, exec: Exec, op: &HallOp) -> Result<Output> {
    let h = feigin_core::hall::Hall::with_exec(cat, exec);
    Ok(match op {
        HallOp::Mul { left, right } => {
            let (m, n) = (cat.parse_class(left)?, cat.parse_class(right)?);
            let x = h.mul_basis(&m, &n)?;
            Output::ok(h.render(&x), h.to_json(&x))
        }
        HallOp::Comul { class } => {
            let l = cat.parse_class(class)?;
            let t = h.comul_basis(&l)?;
            Output::ok(h.render_tensor(&t), h.tensor_to_json(&t))
        }
    })
}

fn partition(cli: &Cli, cat: &RepCategory) -> Result<DirectedPartition> {
    match &cli.partition {
        None => Ok(ar::canonical_structures(cat)?.proj_partition),
        Some(text) => {
            let raw = if Path::new(text).is_file() {
                std::fs::read_to_string(text).map_err(|e| Error::Parse(format!("{text}: {e}")))?
            } else {
                text.clone()
            };
            let d = DirectedPartition::from_json_str(&raw, cat.nu())?;
            ar::validate_partition(cat, &d)?;
            Ok(d)
        }
    }
}

fn context<'a>(cli: &Cli, cat: &'a RepCategory, exec: Exec) -> Result<MapContext<'a>> {
    let ctx = match &cli.word {
        Some(w) => MapContext::new(cat, parse_word(w, cat.n())?)?,
        None => MapContext::with_partition(cat, partition(cli, cat)?)?,
    };
    Ok(ctx.with_exec(exec))
}

fn monomial(cli: &Cli, cat: &RepCategory, exec: Exec, class: Option<&str>) -> Result<Output> {
    let d = partition(cli, cat)?;
    let ctx = MapContext::with_partition(cat, d.clone())?.with_exec(exec);
    let (_, e) = ctx
        .partition
        .as_ref()
        .expect("context built with a partition");
    let h = &ctx.hall;
    let row = |m: &IsoClass| -> Result<(String, Value)> {
        let terms = bases::monomial_expansion(h, &d, e, m)?;
        let v = ar::generated_vector(cat, &d, m);
        let hw = ctx.h_w(&v);
        let trailing: Vec<String> = terms[1..]
            .iter()
            .map(|(l, c)| format!("{} [{}]", c.pretty(), cat.render_class(l)))
            .collect();
        let text = format!(
            "{:<12} ({})  h_w = {}  leading [{}]  trailing: {}",
            cat.render_class(m),
            join(&v),
            hw.pretty(),
            cat.render_class(&terms[0].0),
            if trailing.is_empty() {
                "-".into()
            } else {
                trailing.join(", ")
            }
        );
        let json = json!({
            "class": cat.render_class(m),
            "generated_vector": v,
            "h_w": hw.to_json(),
            "expansion": terms.iter().map(|(l, c)| json!({
                "class": cat.render_class(l), "coeff": c.to_json()
            })).collect::<Vec<_>>(),
        });
        Ok((text, json))
    };
    match class {
        Some(c) => {
            let m = cat.parse_class(c)?;
            let em = bases::monomial_for_module(h, &d, &m)?;
            let (line, json) = row(&m)?;
            Ok(Output::ok(
                format!("E^({}) = {}\n{line}", cat.render_class(&m), h.render(&em)),
                json,
            ))
        }
        None => {
            let mut text = Vec::new();
            let mut rows = Vec::new();
            for classes in cat.classes_up_to(cli.cap).values() {
                for m in classes.iter() {
                    let (t, j) = row(m)?;
                    text.push(t);
                    rows.push(j);
                }
            }
            Ok(Output::ok(text.join("\n"), Value::Array(rows)))
        }
    }
}

fn verify_output(cli: &Cli, reports: &[Report]) -> Output {
    let failed = reports.iter().any(|r| !r.passed());
    let mut text = Vec::new();
    for r in reports {
        let status = if r.passed() { "ok" } else { "FAILED" };
        text.push(format!(
            "{:<17} {status:<6} {} checks, {} violations",
            r.suite,
            r.checked,
            r.violations.len()
        ));
        for v in &r.violations {
            text.push(format!("    {v}"));
        }
    }
    let json = json!({
        "quiver": cli.quiver,
        "q": cli.q,
        "cap": cli.cap,
        "passed": !failed,
        "reports": reports,
    });
    Output {
        text: text.join("\n"),
        json,
        failed,
    }
}
