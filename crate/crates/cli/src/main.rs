use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ylink::algebra::{normalize, parse_element, parse_surface_element, AlgebraElement};
use ylink::classify::{
    algebra_generator, builtin_tau, clasp_pass_equivalent, mj_relabel, tau, y2_equivalent, Caps, HandleCorrespondence,
};
use ylink::conway::conway_with_cap;
use ylink::milnor::{mu3_table, mu3_with_cap};
use ylink::tangle::{builtin, AmbientPresentation, Builtin, BuiltinDiagram, LinkDiagram, StringLinkDiagram};
use ylink::Error;

#[derive(Parser)]
#[command(name = "ylink", version, about = "Invariants of framed string links up to Y2-equivalence")]
struct Cli {
    /// Degree cap of the Magnus expansion.
    #[arg(long, global = true, default_value_t = 3)]
    magnus_cap: usize,
    /// Largest diagram the Conway engine accepts.
    #[arg(long, global = true, default_value_t = 20)]
    crossing_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// μ₃, mod-2 Sato-Levine, Arf and Rochlin of a string link.
    Invariants {
        file: PathBuf,
        /// Surgery presentation of the ambient homology ball.
        #[arg(long)]
        ambient: Option<PathBuf>,
    },
    /// Decide whether two string links are equivalent.
    Classify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Relation::Y2)]
        relation: Relation,
        #[arg(long)]
        ambient_a: Option<PathBuf>,
        #[arg(long)]
        ambient_b: Option<PathBuf>,
    },
    /// Conway polynomial of the closure of a tangle, or of a PD code.
    Conway { file: PathBuf },
    /// Milnor triple linking numbers.
    Milnor {
        file: PathBuf,
        /// A single triple, as `i,j,k`.
        #[arg(long, value_delimiter = ',')]
        triple: Option<Vec<usize>>,
    },
    /// Normal form of an element of the Y-diagram group.
    AlgebraNormalize {
        expr: String,
        #[arg(long)]
        n: usize,
    },
    /// Rewrite an element over the surface basis a1..ag, b1..bg in the string basis.
    Mj {
        expr: String,
        #[arg(long)]
        genus: usize,
        /// Images of a1..ag, defaulting to 1,3,5,...
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<usize>>,
        /// Images of b1..bg, defaulting to 2,4,6,...
        #[arg(long, value_delimiter = ',')]
        b: Option<Vec<usize>>,
    },
    /// A built-in generator representative with its algebra element and τ.
    Generators {
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        indices: Vec<usize>,
    },
    /// Check the generator golden values.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Y2,
    ClaspPass,
}

enum Failure {
    Input(String),
    Lib(Error),
    Selftest,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_string_link(path: &Path) -> Outcome<StringLinkDiagram> {
    Ok(StringLinkDiagram::parse_any(&read(path)?)?)
}

fn load_ambient(path: Option<&PathBuf>) -> Outcome<Option<AmbientPresentation>> {
    path.map(|p| Ok(AmbientPresentation::from_json(&read(p)?)?)).transpose()
}

fn load_link(path: &Path) -> Outcome<LinkDiagram> {
    let text = read(path)?;
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        if let Some(pd) = v.get("pd") {
            let codes: Vec<[usize; 4]> =
                serde_json::from_value(pd.clone()).map_err(|e| Failure::Input(format!("PD code: {e}")))?;
            return Ok(LinkDiagram::from_pd(&codes)?);
        }
    }
    Ok(StringLinkDiagram::parse_any(&text)?.close_all()?)
}

fn triple_key(i: usize, j: usize, k: usize) -> String {
    format!("{i},{j},{k}")
}

fn run(cli: &Cli) -> Outcome<String> {
    let caps = Caps { magnus: cli.magnus_cap, crossings: cli.crossing_cap };
    let out = match &cli.command {
        Command::Invariants { file, ambient } => {
            let sigma = load_string_link(file)?;
            let ambient = load_ambient(ambient.as_ref())?;
            tau(&sigma, ambient.as_ref(), caps)?.to_json()
        }
        Command::Classify { a, b, relation, ambient_a, ambient_b } => {
            let (sa, sb) = (load_string_link(a)?, load_string_link(b)?);
            let equivalent = match relation {
                Relation::Y2 => {
                    let (aa, ab) = (load_ambient(ambient_a.as_ref())?, load_ambient(ambient_b.as_ref())?);
                    y2_equivalent((&sa, aa.as_ref()), (&sb, ab.as_ref()), caps)?
                }
                Relation::ClaspPass => {
                    if ambient_a.is_some() || ambient_b.is_some() {
                        return Err(Failure::Input("clasp-pass equivalence takes classical string links only".into()));
                    }
                    clasp_pass_equivalent(&sa, &sb, caps)?
                }
            };
            return Ok(if equivalent { "EQUIVALENT" } else { "NOT EQUIVALENT" }.to_string());
        }
        Command::Conway { file } => {
            let link = load_link(file)?;
            let poly = conway_with_cap(&link, caps.crossings)?;
            json!({ "components": link.component_count(), "conway": poly.coeffs() })
        }
        Command::Milnor { file, triple } => {
            let sigma = load_string_link(file)?;
            match triple.as_deref() {
                Some(&[i, j, k]) => {
                    json!({ "triple": triple_key(i, j, k), "mu3": mu3_with_cap(&sigma, i, j, k, caps.magnus)? })
                }
                Some(_) => return Err(Failure::Input("--triple takes three indices".into())),
                None => {
                    let table = mu3_table(&sigma, caps.magnus)?;
                    let map: serde_json::Map<String, Value> =
                        table.iter().map(|(&(i, j, k), &v)| (triple_key(i, j, k), json!(v))).collect();
                    json!({ "mu3": map })
                }
            }
        }
        Command::AlgebraNormalize { expr, n } => normalize(&parse_element(expr, *n)?)?.to_json_sparse(),
        Command::Mj { expr, genus, a, b } => {
            let corr = match (a, b) {
                (None, None) => HandleCorrespondence::standard(*genus),
                (Some(a), Some(b)) if a.len() == *genus => HandleCorrespondence::new(a.clone(), b.clone())?,
                (Some(_), Some(_)) => return Err(Failure::Input(format!("--a and --b need {genus} entries each"))),
                _ => return Err(Failure::Input("--a and --b must be given together".into())),
            };
            let x = mj_relabel(&parse_surface_element(expr, *genus)?, &corr)?;
            json!({ "element": x.to_string(), "normal_form": normalize(&x)?.to_json_sparse() })
        }
        Command::Generators { name, n, indices } => {
            let diagram = builtin(name, *n, indices)?;
            let b = builtin_kind(name, indices);
            let element: AlgebraElement = algebra_generator(&b, *n)?;
            let (tangle, ambient) = match diagram {
                BuiltinDiagram::StringLink(s) => (json!(s.to_string()), Value::Null),
                BuiltinDiagram::Ambient(a) => (Value::Null, json!(a.components.len())),
            };
            json!({
                "tangle": tangle,
                "surgery_components": ambient,
                "element": element.to_string(),
                "tau": builtin_tau(&b, *n, caps)?.to_json(),
            })
        }
        Command::Selftest => return selftest(caps),
    };
    Ok(out.to_string())
}

fn builtin_kind(name: &str, idx: &[usize]) -> Builtin {
    match name {
        "whitehead" => Builtin::Whitehead { i: idx[0], j: idx[1] },
        "borromean" => Builtin::Borromean { i: idx[0], j: idx[1], k: idx[2] },
        "poincare" => Builtin::Poincare,
        _ => Builtin::TrefoilInsert { i: idx[0] },
    }
}

fn selftest(caps: Caps) -> Outcome<String> {
    let cases: [(&str, Builtin, usize, Value); 4] = [
        (
            "borromean(3;1,2,3)",
            Builtin::Borromean { i: 1, j: 2, k: 3 },
            3,
            json!({"mu3": {"1,2,3": 1}, "sl2": {}, "arf": [0, 0, 0], "rochlin": 0}),
        ),
        (
            "whitehead(2;1,2)",
            Builtin::Whitehead { i: 1, j: 2 },
            2,
            json!({"mu3": {}, "sl2": {"1,2": 1}, "arf": [0, 0], "rochlin": 0}),
        ),
        (
            "trefoil_insert(2;1)",
            Builtin::TrefoilInsert { i: 1 },
            2,
            json!({"mu3": {}, "sl2": {}, "arf": [1, 0], "rochlin": 0}),
        ),
        ("poincare(2)", Builtin::Poincare, 2, json!({"mu3": {}, "sl2": {}, "arf": [0, 0], "rochlin": 1})),
    ];
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    let paint = |ok: bool| match (ok, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    };
    let mut lines = Vec::new();
    let mut all = true;
    for (name, b, n, want) in cases {
        let got = builtin_tau(&b, n, caps)?.to_json();
        let ok = got == want;
        all &= ok;
        lines.push(format!("{} {name} {got}", paint(ok)));
    }
    println!("{}", lines.join("\n"));
    if all {
        Ok(String::new())
    } else {
        Err(Failure::Selftest)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) | Error::NonConvergence(_) => 2,
        Error::Precondition(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Selftest) => {
            eprintln!("error: selftest failed");
            ExitCode::from(1)
        }
    }
}
