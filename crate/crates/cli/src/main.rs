mod figures;
mod output;
mod workspace;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dihomotopy::brown::{run_suite, BrownChecks, Suite};
use dihomotopy::constructions::{
    cone, mapping_cylinder, mapping_tube, modified_cone, modified_mapping_cone, modified_mapping_cylinder, s_digraph,
};
use dihomotopy::homotopy::{
    check_equivalence, decide_homotopic, hep_extension_search, homotopy_equivalent, is_contractible, EquivalenceStatus,
    EquivalenceVerdict, HomotopyVerdict, DEFAULT_BUDGET,
};
use dihomotopy::io::{to_dot, DigraphDoc};
use dihomotopy::path_homology::{cohomology, homology, induced_maps, DEFAULT_P_MAX};
use dihomotopy::Error;
use serde_json::{json, Value};

use output::{construction_json, hom_json, homotopy_json, render};
use workspace::Workspace;

const USAGE: u8 = 2;
const VALIDATION: u8 = 3;
const CHECK_FAILED: u8 = 1;

/// Homotopy theory of finite digraphs: constructions, exact homotopy
/// decisions, integral path (co)homology and Brown-functor checks.
#[derive(Parser)]
#[command(name = "dihomotopy", version)]
struct Cli {
    /// Maximum number of maps visited by a homotopy search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Highest (co)homology degree.
    #[arg(long, global = true, default_value_t = DEFAULT_P_MAX)]
    pmax: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Spaces per indentation level; 0 prints one line.
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and print it with its canonical maps.
    Build(BuildArgs),
    /// Integral path homology groups.
    Homology(DigraphArg),
    /// Integral path cohomology groups.
    Cohomology(DigraphArg),
    /// Matrices of f^* on cohomology.
    Induced(MapArg),
    /// Decide whether two maps are homotopic.
    Homotopic {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Decide whether a digraph is contractible.
    Contractible(DigraphArg),
    /// Decide homotopy equivalence of two digraphs, or check a given pair of maps.
    Equivalent {
        #[arg(long, requires = "h", conflicts_with_all = ["forward", "backward"])]
        g: Option<PathBuf>,
        #[arg(long, requires = "g")]
        h: Option<PathBuf>,
        #[arg(long, requires = "backward")]
        forward: Option<PathBuf>,
        #[arg(long, requires = "forward")]
        backward: Option<PathBuf>,
    },
    /// Search for an extension of a partial homotopy on a subdigraph.
    HepCheck {
        /// The map `G → H` to extend from.
        #[arg(long)]
        map: PathBuf,
        /// A homotopy `X → H` starting at the restriction of the map.
        #[arg(long)]
        partial: PathBuf,
    },
    /// Run randomized Brown-functor checks; one JSON report per line.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Vertex budget per instance; defaults per suite.
        #[arg(long)]
        size: Option<usize>,
        /// Cohomology degree (experimental beyond 1).
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Regenerate the figure fixtures and compare them with a directory.
    Figures {
        #[arg(long, default_value = "fixtures/figures")]
        dir: PathBuf,
        /// Overwrite the directory instead of comparing.
        #[arg(long)]
        write: bool,
    },
}

#[derive(Args)]
struct DigraphArg {
    #[arg(long)]
    digraph: PathBuf,
}

#[derive(Args)]
struct MapArg {
    #[arg(long)]
    map: PathBuf,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(value_enum)]
    kind: BuildKind,
    /// Input digraph (cone; first digraph of s-digraph).
    #[arg(long)]
    digraph: Option<PathBuf>,
    /// Second digraph of s-digraph.
    #[arg(long)]
    other: Option<PathBuf>,
    /// Input map (first map of tube).
    #[arg(long)]
    map: Option<PathBuf>,
    /// Second map of tube.
    #[arg(long)]
    second: Option<PathBuf>,
    /// Preimage choices `h=g` for doubly hit vertices.
    #[arg(long = "section", value_parser = parse_section)]
    sections: Vec<(String, String)>,
    /// Print the digraph as DOT instead of JSON.
    #[arg(long)]
    dot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Cone,
    Cylinder,
    ModCylinder,
    ModCone,
    ModMappingCone,
    Tube,
    SDigraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Triviality,
    Additivity,
    Mv,
    CochainLemmas,
    Cone,
    FourTerm,
    Tube,
}

fn parse_section(s: &str) -> Result<(String, String), String> {
    let (h, g) = s.split_once('=').ok_or_else(|| format!("expected h=g, got `{s}`"))?;
    Ok((h.to_string(), g.to_string()))
}

enum Failure {
    Usage(String),
    Invalid(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(VALIDATION)
        }
    }
}

fn emit(cli: &Cli, value: &Value) {
    println!("{}", render(value, cli.json_indent));
}

fn required<'a>(arg: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, Failure> {
    arg.as_deref().ok_or_else(|| Failure::Usage(format!("--{flag} is required here")))
}

fn run(cli: &Cli) -> Outcome {
    let mut ws = Workspace::default();
    match &cli.command {
        Command::Build(args) => build(cli, &mut ws, args),
        Command::Homology(a) => {
            let g = ws.load_digraph("G", &a.digraph)?;
            emit(cli, &json!(homology(g, cli.pmax)?.records()));
            Ok(0)
        }
        Command::Cohomology(a) => {
            let g = ws.load_digraph("G", &a.digraph)?;
            emit(cli, &json!(cohomology(g, cli.pmax)?.records()));
            Ok(0)
        }
        Command::Induced(a) => {
            let f = ws.load_map("f", &a.map)?;
            let maps = induced_maps(&f, cli.pmax)?;
            emit(cli, &Value::Array(maps.iter().enumerate().map(|(p, h)| hom_json(p, h)).collect()));
            Ok(0)
        }
        Command::Homotopic { f, g } => {
            let f = ws.load_map("f", f)?;
            let g = ws.load_map("g", g)?;
            Ok(homotopy_verdict(cli, &decide_homotopic(&f, &g, cli.budget)?))
        }
        Command::Contractible(a) => {
            let g = ws.load_digraph("G", &a.digraph)?;
            Ok(homotopy_verdict(cli, &is_contractible(&g, cli.budget)?))
        }
        Command::Equivalent { g, h, forward, backward } => {
            let verdict = match (g, h, forward, backward) {
                (Some(g), Some(h), None, None) => {
                    let (g, h) = (ws.load_digraph("G", g)?, ws.load_digraph("H", h)?);
                    homotopy_equivalent(&g, &h, cli.budget)?
                }
                (None, None, Some(f), Some(b)) => {
                    let (f, b) = (ws.load_map("forward", f)?, ws.load_map("backward", b)?);
                    check_equivalence(&f, &b, cli.budget)?
                }
                _ => return Err(Failure::Usage("give either --g and --h, or --forward and --backward".into())),
            };
            Ok(equivalence_verdict(cli, &verdict))
        }
        Command::HepCheck { map, partial } => {
            let f = ws.load_map("f", map)?;
            let partial = ws.load_homotopy(partial)?;
            let outcome = hep_extension_search(&f, &partial)?;
            emit(
                cli,
                &json!({
                    "extends": outcome.extension.is_some(),
                    "candidates": outcome.candidates,
                    "extension": outcome.extension.as_ref().map(homotopy_json),
                }),
            );
            Ok(0)
        }
        Command::Verify { suite, count, size, degree } => verify(cli, *suite, *count, *size, *degree),
        Command::Figures { dir, write } => figures_command(cli, dir, *write),
    }
}

fn build(cli: &Cli, ws: &mut Workspace, args: &BuildArgs) -> Outcome {
    let sections: BTreeMap<String, String> = args.sections.iter().cloned().collect();
    let overrides = (!sections.is_empty()).then_some(&sections);
    let takes_sections = matches!(args.kind, BuildKind::ModCone | BuildKind::ModMappingCone);
    if overrides.is_some() && !takes_sections {
        return Err(Failure::Usage("--section applies to mod-cone and mod-mapping-cone only".into()));
    }
    let map = |ws: &mut Workspace, name| -> Result<_, Failure> { Ok(ws.load_map(name, required(&args.map, "map")?)?) };
    let (result, extra) = match args.kind {
        BuildKind::Cone => (cone(&ws.load_digraph("G", required(&args.digraph, "digraph")?)?), None),
        BuildKind::Cylinder => (mapping_cylinder(&map(ws, "f")?), None),
        BuildKind::ModCylinder => (modified_mapping_cylinder(&map(ws, "f")?), None),
        BuildKind::ModCone => (modified_cone(&map(ws, "f")?, overrides)?, None),
        BuildKind::ModMappingCone => (modified_mapping_cone(&map(ws, "f")?, overrides)?, None),
        BuildKind::Tube => {
            let f = map(ws, "f")?;
            let g = ws.load_map("g", required(&args.second, "second")?)?;
            (mapping_tube(&f, &g)?, None)
        }
        BuildKind::SDigraph => {
            let g = ws.load_digraph("G", required(&args.digraph, "digraph")?)?;
            let h = ws.load_digraph("H", required(&args.other, "other")?)?;
            let s = s_digraph(&g, &h)?;
            let union = DigraphDoc::from(s.union.as_ref());
            (s.s.clone(), Some(json!({ "mapping_cone": construction_json(&s.mapping_cone), "union": union })))
        }
    };
    if args.dot {
        print!("{}", to_dot(&result.digraph));
        return Ok(0);
    }
    let mut doc = construction_json(&result);
    if let Some(Value::Object(extra)) = extra {
        doc.as_object_mut().expect("construction documents are objects").extend(extra);
    }
    emit(cli, &doc);
    Ok(0)
}

fn homotopy_verdict(cli: &Cli, v: &HomotopyVerdict) -> u8 {
    let mut doc = json!({ "verdict": v.label(), "explored": v.explored });
    if let Some(h) = v.certificate() {
        doc["certificate"] = homotopy_json(h);
    }
    emit(cli, &doc);
    0
}

fn equivalence_verdict(cli: &Cli, v: &EquivalenceVerdict) -> u8 {
    let mut doc = json!({ "verdict": v.label(), "explored": v.explored });
    if let EquivalenceStatus::Equivalent { forward, backward, left, right } = &v.status {
        doc["forward"] = json!(forward.to_label_map());
        doc["backward"] = json!(backward.to_label_map());
        doc["left"] = homotopy_json(left);
        doc["right"] = homotopy_json(right);
    }
    emit(cli, &doc);
    0
}

fn verify(cli: &Cli, suite: SuiteArg, count: u64, size: Option<usize>, degree: usize) -> Outcome {
    if degree == 0 {
        return Err(Failure::Usage("--degree must be at least 1".into()));
    }
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Triviality => vec![Suite::Triviality],
        SuiteArg::Additivity => vec![Suite::Additivity],
        SuiteArg::Mv => vec![Suite::Mv],
        SuiteArg::CochainLemmas => vec![Suite::CochainLemmas],
        SuiteArg::Cone => vec![Suite::Cone],
        SuiteArg::FourTerm => vec![Suite::FourTerm],
        SuiteArg::Tube => vec![Suite::Tube],
    };
    let checks = BrownChecks::at_degree(degree);
    let mut failed = false;
    for s in suites {
        let n = if s == Suite::Triviality { count.min(1) } else { count };
        let reports = run_suite(&checks, s, cli.seed, n, size.unwrap_or_else(|| s.default_size()));
        let passed = reports.iter().filter(|r| r.passed).count();
        for r in &reports {
            println!("{}", serde_json::to_string(r).expect("reports serialize"));
        }
        eprintln!("{}: {passed}/{} passed", s.name(), reports.len());
        failed |= passed < reports.len();
    }
    Ok(if failed { CHECK_FAILED } else { 0 })
}

fn figures_command(cli: &Cli, dir: &Path, write: bool) -> Outcome {
    let io_error = |path: &Path, source| Error::Io { path: path.display().to_string(), source };
    if write {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }
    let mut statuses = Vec::new();
    let mut differs = false;
    for (name, doc) in figures::fixtures()? {
        let path = dir.join(name);
        let text = format!("{}\n", render(&doc, 2));
        let status = if write {
            fs::write(&path, &text).map_err(|e| io_error(&path, e))?;
            "written"
        } else {
            match fs::read_to_string(&path) {
                Ok(existing) if existing == text => "identical",
                Ok(_) => "differs",
                Err(_) => "missing",
            }
        };
        differs |= matches!(status, "differs" | "missing");
        statuses.push(json!({ "file": name, "status": status }));
    }
    emit(cli, &Value::Array(statuses));
    Ok(if differs { CHECK_FAILED } else { 0 })
}
