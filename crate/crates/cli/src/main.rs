//! `f3links`: evaluate element expressions, draw and measure their links,
//! build tree links, and run the property suites.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use f3links::expr::{eval_str, Value};
use f3links::fingerprint::fingerprint;
use f3links::invariants::{format_jones, InvariantOptions, DEFAULT_MAX_CROSSINGS};
use f3links::links::{jones_diagram_hinted, JonesLink};
use f3links::svg::render_svg;
use f3links::treelink::{build_tree_link, LabelledTree};
use f3links::verify::{run_suite, SuiteOptions, SUITES};

#[derive(Parser)]
#[command(name = "f3links", version, about = "Links from the Thompson-like group F3")]
struct Cli {
    /// Structured JSON output (and JSON errors).
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random cases per suite.
    #[arg(long, global = true, default_value_t = 200)]
    cases: usize,
    /// Largest diagram (after simplification) fed to the state sum.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reduced tree pair of an expression as JSON.
    Eval { expr: String },
    /// PD code, Gauss codes and components of the link of an expression.
    Link { expr: String },
    /// Component count, linking numbers and Jones polynomials.
    Invariants { expr: String },
    /// Build a representative for a labelled tree given as JSON.
    Treelink { file: PathBuf },
    /// Run a property suite (or `all`).
    Verify { suite: String },
    /// Draw the tree-pair diagram as SVG.
    Render {
        expr: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] f3links::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown suite {0:?}; known suites: {1}")]
    UnknownSuite(String, String),
    #[error("verification failed")]
    Failed(String, Json),
}

impl CliError {
    fn to_json(&self) -> Json {
        let kind = match self {
            CliError::Core(e) => match e {
                f3links::Error::Parse { line, column, message } => {
                    return json!({"error": {"kind": "parse", "line": line, "column": column, "message": message}})
                }
                f3links::Error::TooManyCrossings { .. } => "resource",
                f3links::Error::Structure(_) => "structure",
                f3links::Error::Json(_) => "json",
                f3links::Error::Domain(_) | f3links::Error::DegenerateOperand(_) => "domain",
                _ => "error",
            },
            CliError::Io { .. } => "io",
            CliError::UnknownSuite(..) => "usage",
            CliError::Failed(_, report) => return report.clone(),
        };
        json!({"error": {"kind": kind, "message": self.to_string()}})
    }
}

type Out = std::result::Result<(String, Json), CliError>;

fn signed(n: i64) -> String {
    if n > 0 {
        format!("+{n}")
    } else {
        n.to_string()
    }
}

fn link_of(v: &Value) -> Result<JonesLink, CliError> {
    Ok(jones_diagram_hinted(&v.element, &v.hints)?)
}

fn eval(src: &str) -> Out {
    let v = eval_str(src)?;
    let text = v.element.to_json();
    let j: Json = serde_json::from_str(&text).expect("element JSON");
    Ok((text + "\n", j))
}

fn link(src: &str) -> Out {
    let v = eval_str(src)?;
    let l = link_of(&v)?;
    let d = &l.diagram;
    let pd = d.pd_code();
    let gauss = d.gauss_codes();
    let mut s = String::new();
    let _ = writeln!(s, "components {}", d.component_count());
    let _ = writeln!(s, "marked {}", d.marked());
    let _ = writeln!(s, "crossings {}", d.crossing_count());
    for x in &pd {
        let _ = writeln!(s, "X({},{},{},{})", x[0], x[1], x[2], x[3]);
    }
    for (k, g) in gauss.iter().enumerate() {
        let code: Vec<String> = g.iter().map(i64::to_string).collect();
        let _ = writeln!(s, "gauss {k}: {}", code.join(" "));
    }
    let j = json!({
        "components": d.component_count(),
        "marked": d.marked(),
        "crossings": d.crossing_count(),
        "pd": pd,
        "gauss": gauss,
        "leaf_components": l.leaves.iter().zip(&l.leaf_components)
            .map(|(a, k)| json!({"leaf": a.to_string(), "component": k})).collect::<Vec<_>>(),
    });
    Ok((s, j))
}

fn invariants_text(
    l: &JonesLink,
    names: Option<(&[String], &[usize])>,
    opts: &InvariantOptions,
) -> Result<(String, Json), CliError> {
    let fp = fingerprint(&l.diagram, opts)?;
    let mut s = String::new();
    let _ = writeln!(s, "components={}", fp.components);
    let _ = writeln!(s, "marked={}", fp.marked);
    let rows: Vec<String> = fp
        .linking
        .iter()
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    let _ = writeln!(s, "linking=[{}]", rows.join(","));
    let mut pairs = Vec::new();
    match names {
        None => {
            for i in 0..fp.components {
                for j in i + 1..fp.components {
                    let _ = writeln!(s, "lk({i},{j})={}", signed(fp.linking[i][j]));
                    pairs.push(json!({"a": i, "b": j, "lk": fp.linking[i][j]}));
                }
            }
        }
        Some((names, comps)) => {
            for i in 0..names.len() {
                for j in i + 1..names.len() {
                    let lk = fp.linking[comps[i]][comps[j]];
                    let _ = writeln!(s, "lk({},{})={}", names[i], names[j], signed(lk));
                    pairs.push(json!({"a": names[i], "b": names[j], "lk": lk}));
                }
            }
        }
    }
    let _ = writeln!(s, "V={}", format_jones(&fp.jones));
    let _ = writeln!(s, "V_marked={}", format_jones(&fp.marked_jones));
    for (k, v) in fp.component_jones.iter().enumerate() {
        let _ = writeln!(s, "V_{k}={}", format_jones(v));
    }
    let j = json!({
        "components": fp.components,
        "marked": fp.marked,
        "linking": fp.linking,
        "pairs": pairs,
        "jones": format_jones(&fp.jones),
        "marked_jones": format_jones(&fp.marked_jones),
        "component_jones": fp.component_jones.iter().map(format_jones).collect::<Vec<_>>(),
    });
    Ok((s, j))
}

fn invariants(src: &str, opts: &InvariantOptions) -> Out {
    let v = eval_str(src)?;
    invariants_text(&link_of(&v)?, None, opts)
}

fn treelink(path: &PathBuf, opts: &InvariantOptions) -> Out {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let tree = LabelledTree::from_json(&text)?;
    let built = build_tree_link(&tree)?;
    let elements = tree.elements();
    let l = built.link(&elements)?;
    let comps = built.vertex_components(&l, &elements)?;
    let names: Vec<String> = tree.vertices.iter().map(|v| v.name.clone()).collect();
    let (inv_text, inv_json) = invariants_text(&l, Some((&names, &comps)), opts)?;
    let plan = serde_json::to_value(&built.plan).expect("plan JSON");
    let element: Json = serde_json::from_str(&built.element.to_json()).expect("element JSON");
    let mut s = String::new();
    let _ = writeln!(s, "element={}", built.element.to_json());
    let _ = writeln!(s, "plan={plan}");
    for (name, k) in names.iter().zip(&comps) {
        let _ = writeln!(s, "component({name})={k}");
    }
    s.push_str(&inv_text);
    let j = json!({
        "element": element,
        "plan": plan,
        "vertex_components": names.iter().zip(&comps).map(|(n, k)| json!({"vertex": n, "component": k})).collect::<Vec<_>>(),
        "fingerprint": inv_json,
    });
    Ok((s, j))
}

fn verify(name: &str, opts: &SuiteOptions) -> Out {
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(CliError::UnknownSuite(name.into(), SUITES.join(", ")));
    };
    let mut s = String::new();
    let mut reports = Vec::new();
    let mut ok = true;
    for n in names {
        let r = run_suite(n, opts).expect("known suite");
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{status} {} ({} checks)", r.suite, r.checks);
        for f in &r.failures {
            let _ = writeln!(s, "  {f}");
        }
        ok &= r.passed();
        reports.push(r);
    }
    let j = json!({"seed": opts.seed, "cases": opts.cases, "passed": ok, "suites": reports});
    if ok {
        Ok((s, j))
    } else {
        Err(CliError::Failed(s, j))
    }
}

fn render(src: &str, output: &PathBuf) -> Out {
    let v = eval_str(src)?;
    let svg = render_svg(&v.element);
    std::fs::write(output, &svg)
        .map_err(|e| CliError::Io { path: output.display().to_string(), message: e.to_string() })?;
    let path = output.display().to_string();
    Ok((format!("wrote {path}\n"), json!({"output": path, "bytes": svg.len()})))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let inv = InvariantOptions { max_crossings: cli.max_crossings };
    let suite = SuiteOptions { seed: cli.seed, cases: cli.cases, invariants: inv };
    let result = match &cli.command {
        Command::Eval { expr } => eval(expr),
        Command::Link { expr } => link(expr),
        Command::Invariants { expr } => invariants(expr, &inv),
        Command::Treelink { file } => treelink(file, &inv),
        Command::Verify { suite: name } => verify(name, &suite),
        Command::Render { expr, output } => render(expr, output),
    };
    // a closed pipe on stdout is not worth a panic
    let emit = |s: &str| {
        let _ = std::io::stdout().lock().write_all(s.as_bytes());
    };
    let pretty = |j: &Json| serde_json::to_string_pretty(j).expect("JSON") + "\n";
    match result {
        Ok((text, j)) => {
            emit(&if cli.json { pretty(&j) } else { text });
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                emit(&pretty(&e.to_json()));
            } else if let CliError::Failed(text, _) = &e {
                emit(text);
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::FAILURE
        }
    }
}
