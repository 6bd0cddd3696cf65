//! Command-line front end.
//!
//! Every command prints one JSON document (or DOT with `--format dot`).
//! Exit codes: 0 when the checked property holds, 1 for a mathematical
//! failure (the report carries the witness), 2 for unusable input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::accat::{ACMap, Poset};
use crate::closure::{
    candidate_closure_map, certify, cone_closure_map, induced_trisp_closure_map,
    verify_trisp_closure_map, Apex, Convention, TrispClosureMap,
};
use crate::equivariant::{check_condition_c, lift_closure_map, push_closure_map};
use crate::error::{Error, Result};
use crate::fixtures::random_g_poset;
use crate::formats::{
    category_json, read_action_file, read_input, read_map, trisp_json, ActionFile, ClosureMapFile,
    Input, MapInput, OperatorFile,
};
use crate::graphs::{pipeline_category_quotient, pipeline_trisp_quotient, Dgn, PipelineOptions};
use crate::nerve::nerve;
use crate::symmetry::{
    check_condition_r, induced_trisp_action, quotient_category, quotient_trisp, EquivariantNerve,
    GroupAction,
};
use crate::trisp::Trisp;

#[derive(Debug, Parser)]
#[command(
    name = "trispcl",
    version,
    about = "Trisp closure maps, quotients and collapses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Progress messages on standard error.
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a category, poset or trisp file.
    Validate(InputArgs),
    /// The nerve of a category.
    Nerve(InputArgs),
    /// Quotient by a group action.
    Quotient(QuotientArgs),
    #[command(subcommand)]
    Closure(ClosureCommand),
    #[command(subcommand)]
    Dgn(DgnCommand),
    /// Checks that λ is surjective on seeded random horizontal actions.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Category,
    Trisp,
}

#[derive(Debug, Args)]
pub struct QuotientArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub action: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Category)]
    pub mode: Mode,
}

/// A trisp, or a category standing for its nerve, with a closure map or
/// a poset self-map on its vertices.
#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub map: PathBuf,
    /// Overrides the convention of the map file, or turns a poset self-map
    /// that is not one-sided into a candidate closure map.
    #[arg(long)]
    pub convention: Option<Convention>,
}

#[derive(Debug, Subcommand)]
pub enum ClosureCommand {
    /// Checks the closure-map condition on every simplex.
    Verify(MapArgs),
    /// Pushes an equivariant closure map to the quotient.
    Push {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        action: PathBuf,
    },
    /// Lifts a closure map on the quotient (indexed by vertex orbits).
    Lift {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        action: PathBuf,
    },
    /// Collapse certificate for a closure map, or for the cone on a terminal
    /// or initial object of a category.
    Collapse {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, required_unless_present = "cone")]
        map: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with = "map")]
        cone: Option<ApexArg>,
        #[arg(long)]
        convention: Option<Convention>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ApexArg {
    Terminal,
    Initial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DgnObject {
    /// `DG_n` as a trisp.
    Complex,
    /// Its face poset.
    Faces,
    /// The `S_n` action on the face poset.
    FaceAction,
    /// The transitive-closure operator on the face poset.
    Closure,
    /// The poset of nontrivial partitions.
    Partitions,
    PartitionAction,
    /// Partitions modulo `S_n`.
    PartitionQuotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PipelineKind {
    /// Through the quotient trisp of the barycentric subdivision.
    Trisp,
    /// Through the quotient category of the face poset.
    Category,
}

#[derive(Debug, Subcommand)]
pub enum DgnCommand {
    /// Writes one of the objects built from `n`.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DgnObject::Complex)]
        object: DgnObject,
    },
    /// Runs a collapsibility pipeline.
    Pipeline {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        pipeline: PipelineKind,
        /// Report zero for every stage time, for byte-identical output.
        #[arg(long)]
        no_timings: bool,
        #[arg(long)]
        skip_point_search: bool,
        #[arg(long, default_value_t = PipelineOptions::default().point_search_budget)]
        budget: usize,
    },
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub cases: usize,
    #[arg(long, default_value_t = 7)]
    pub max_elements: usize,
    #[arg(long, default_value_t = 6)]
    pub max_order: usize,
}

/// Result of a command: the document to print and whether the checked
/// property holds.
pub struct Outcome {
    pub body: Body,
    pub holds: bool,
}

pub enum Body {
    Json(Value),
    Dot(String),
}

impl Outcome {
    fn json(value: impl Serialize, holds: bool) -> Result<Outcome> {
        Ok(Outcome {
            body: Body::Json(serde_json::to_value(value)?),
            holds,
        })
    }
}

/// Exit code of an error: 2 for unusable input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Malformed(_) | Error::Json(_) | Error::Io(_) => 2,
        Error::Stage { source, .. } => exit_code(source),
        _ => 1,
    }
}

/// Runs a parsed command, writing the result to `--output` or `out`, and
/// returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = execute(cli).and_then(|outcome| {
        let text = match outcome.body {
            Body::Json(v) => serde_json::to_string_pretty(&v)? + "\n",
            Body::Dot(s) => s,
        };
        match &cli.output {
            Some(path) => fs::write(path, text)?,
            None => out.write_all(text.as_bytes())?,
        }
        Ok(outcome.holds)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let code = exit_code(&e);
            let kind = if code == 2 { "input" } else { "failure" };
            let _ = writeln!(err, "{}", json!({ "error": e.to_string(), "kind": kind }));
            code
        }
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn load(path: &Path) -> Result<Input> {
    read_input(&read(path)?)
}

fn load_action_file(path: &Path) -> Result<ActionFile> {
    read_action_file(&read(path)?)
}

fn dot_or_json(format: Format, dot: impl FnOnce() -> String, json: Value, holds: bool) -> Outcome {
    Outcome {
        body: match format {
            Format::Dot => Body::Dot(dot()),
            Format::Json => Body::Json(json),
        },
        holds,
    }
}

fn json_only(format: Format) -> Result<()> {
    match format {
        Format::Json => Ok(()),
        Format::Dot => Err(Error::Malformed("this command has no DOT output".into())),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let log = |msg: &str| {
        if cli.verbose {
            eprintln!("{msg}");
        }
    };
    match &cli.command {
        Command::Validate(a) => validate(&a.input, cli.format),
        Command::Nerve(a) => {
            let Input::Category(c) = load(&a.input)? else {
                return Err(Error::Malformed("nerve needs a category".into()));
            };
            let n = nerve(&c)?;
            Ok(dot_or_json(
                cli.format,
                || n.trisp.to_dot(),
                trisp_json(&n.trisp),
                true,
            ))
        }
        Command::Quotient(a) => quotient(a, cli.format),
        Command::Closure(c) => {
            json_only(cli.format)?;
            closure(c)
        }
        Command::Dgn(DgnCommand::Build { n, object }) => dgn_build(*n, *object, cli.format),
        Command::Dgn(DgnCommand::Pipeline {
            n,
            pipeline,
            no_timings,
            skip_point_search,
            budget,
        }) => {
            json_only(cli.format)?;
            if !(3..=5).contains(n) {
                return Err(Error::Malformed(format!(
                    "pipelines run for n in 3..=5, got {n}"
                )));
            }
            let options = PipelineOptions {
                point_search: !skip_point_search,
                point_search_budget: *budget,
            };
            log(&format!("running the {pipeline:?} pipeline at n = {n}"));
            let mut report = match pipeline {
                PipelineKind::Trisp => pipeline_trisp_quotient(*n, options)?,
                PipelineKind::Category => pipeline_category_quotient(*n, options)?,
            };
            if *no_timings {
                for s in &mut report.stages {
                    s.millis = 0;
                }
            }
            let holds = report.success;
            Outcome::json(report, holds)
        }
        Command::Random(a) => {
            json_only(cli.format)?;
            random(a)
        }
    }
}

fn validate(path: &Path, format: Format) -> Result<Outcome> {
    match load(path)? {
        Input::Category(c) => {
            let report = c.validate();
            let ok = report.is_valid();
            let is_poset = ok && Poset::try_from_category(c.clone()).is_ok();
            let v = json!({
                "kind": "category",
                "valid": ok,
                "objects": c.object_count(),
                "morphisms": c.morphism_count(),
                "is_poset": is_poset,
                "report": report,
            });
            Ok(dot_or_json(format, || c.to_dot(), v, ok))
        }
        Input::Trisp(t) => {
            let report = t.validate();
            let ok = report.is_valid();
            let v = json!({
                "kind": "trisp",
                "valid": ok,
                "counts": t.counts(),
                "euler_characteristic": t.euler_characteristic(),
                "report": report,
            });
            Ok(dot_or_json(format, || t.to_dot(), v, ok))
        }
    }
}

fn quotient(a: &QuotientArgs, format: Format) -> Result<Outcome> {
    let input = load(&a.input)?;
    let action_file = load_action_file(&a.action)?;
    match (input, a.mode) {
        (Input::Category(c), Mode::Category) => {
            let action = action_file.on_category(&c)?;
            let q = quotient_category(&c, &action)?;
            let eqn = EquivariantNerve::build(&c, &action)?;
            let (_, lambda) = eqn.lambda_report()?;
            let is_poset = Poset::try_from_category(q.category.clone()).is_ok();
            let holds = lambda.is_surjective();
            let v = json!({
                "quotient": category_json(&q.category),
                "is_poset": is_poset,
                "object_class": q.object_class,
                "morphism_class": q.morphism_class,
                "lambda": lambda,
                "lambda_surjective": holds,
            });
            Ok(dot_or_json(format, || q.category.to_dot(), v, holds))
        }
        (Input::Category(c), Mode::Trisp) => {
            let action = action_file.on_category(&c)?;
            let n = nerve(&c)?;
            let ta = induced_trisp_action(&n, &action)?;
            trisp_quotient(&n.trisp, &ta, format)
        }
        (Input::Trisp(t), Mode::Trisp) => {
            let action = action_file.on_trisp(&t)?;
            trisp_quotient(&t, &action, format)
        }
        (Input::Trisp(_), Mode::Category) => Err(Error::Malformed(
            "category mode needs a category input".into(),
        )),
    }
}

fn trisp_quotient(t: &Trisp, action: &GroupAction, format: Format) -> Result<Outcome> {
    let r = check_condition_r(t, action);
    let q = quotient_trisp(t, action);
    let v = json!({
        "quotient": trisp_json(&q.trisp),
        "projection": q.projection,
        "condition_r": r,
        "quotient_report": q.report,
    });
    Ok(dot_or_json(format, || q.trisp.to_dot(), v, true))
}

/// The trisp of an input (a category stands for its nerve) and the poset
/// when the input is one.
struct Loaded {
    trisp: Trisp,
    category: Option<crate::accat::AcyclicCategory>,
}

fn load_trisp(path: &Path) -> Result<Loaded> {
    Ok(match load(path)? {
        Input::Trisp(t) => Loaded {
            trisp: t,
            category: None,
        },
        Input::Category(c) => Loaded {
            trisp: nerve(&c)?.trisp,
            category: Some(c),
        },
    })
}

fn resolve_map(
    loaded: &Loaded,
    path: &Path,
    convention: Option<Convention>,
) -> Result<TrispClosureMap> {
    match read_map(&read(path)?)? {
        MapInput::Trisp(c) => Ok(match convention {
            Some(conv) => c.with_convention(conv),
            None => c,
        }),
        MapInput::Operator(objects) => {
            let c = loaded.category.clone().ok_or_else(|| {
                Error::Malformed("a self-map on objects needs a poset input".into())
            })?;
            let p = Poset::try_from_category(c)?;
            let f: ACMap = OperatorFile { objects }.into_map(&p)?;
            match convention {
                Some(conv) => Ok(candidate_closure_map(&f, conv)),
                None => induced_trisp_closure_map(&p, &f),
            }
        }
    }
}

fn trisp_action(loaded: &Loaded, path: &Path) -> Result<GroupAction> {
    let file = load_action_file(path)?;
    match &loaded.category {
        Some(c) => induced_trisp_action(&nerve(c)?, &file.on_category(c)?),
        None => file.on_trisp(&loaded.trisp),
    }
}

fn closure(cmd: &ClosureCommand) -> Result<Outcome> {
    match cmd {
        ClosureCommand::Verify(a) => {
            let loaded = load_trisp(&a.input)?;
            let c = resolve_map(&loaded, &a.map, a.convention)?;
            let report = verify_trisp_closure_map(&loaded.trisp, &c)?;
            let holds = report.holds;
            Outcome::json(report, holds)
        }
        ClosureCommand::Push { map, action } => {
            let loaded = load_trisp(&map.input)?;
            let c = resolve_map(&loaded, &map.map, map.convention)?;
            let action = trisp_action(&loaded, action)?;
            let pushed = push_closure_map(&loaded.trisp, &action, &c)?;
            let verify = verify_trisp_closure_map(&pushed.quotient.trisp, &pushed.map)?;
            let holds = verify.holds;
            Outcome::json(
                json!({
                    "quotient": trisp_json(&pushed.quotient.trisp),
                    "projection": pushed.quotient.projection,
                    "map": ClosureMapFile::from_map(&pushed.map),
                    "verify": verify,
                }),
                holds,
            )
        }
        ClosureCommand::Lift { map, action } => {
            let loaded = load_trisp(&map.input)?;
            let action = trisp_action(&loaded, action)?;
            let q = quotient_trisp(&loaded.trisp, &action);
            let psi = match read_map(&read(&map.map)?)? {
                MapInput::Trisp(c) => match map.convention {
                    Some(conv) => c.with_convention(conv),
                    None => c,
                },
                MapInput::Operator(_) => {
                    return Err(Error::Malformed(
                        "lift needs a closure map on the quotient".into(),
                    ))
                }
            };
            lift(&loaded.trisp, &action, &q, &psi)
        }
        ClosureCommand::Collapse {
            input,
            map,
            cone,
            convention,
        } => {
            let loaded = load_trisp(input)?;
            let c = match (map, cone) {
                (Some(path), _) => resolve_map(&loaded, path, *convention)?,
                (None, Some(apex)) => {
                    let cat = loaded
                        .category
                        .as_ref()
                        .ok_or_else(|| Error::Malformed("a cone needs a category input".into()))?;
                    let apex = match apex {
                        ApexArg::Terminal => Apex::Terminal,
                        ApexArg::Initial => Apex::Initial,
                    };
                    cone_closure_map(cat, apex)?.1
                }
                (None, None) => return Err(Error::Malformed("give --map or --cone".into())),
            };
            let verify = verify_trisp_closure_map(&loaded.trisp, &c)?;
            if !verify.holds {
                return Outcome::json(json!({ "verify": verify }), false);
            }
            let cert = certify(&loaded.trisp, &c)?;
            let point = cert.final_counts == [1];
            Outcome::json(
                json!({
                    "certificate": cert,
                    "final_trisp": trisp_json(&cert.final_trisp.trisp),
                    "ends_at_point": point,
                }),
                true,
            )
        }
    }
}

/// Reports the lifting outcome. When Condition C holds but the lift is not a
/// closure map, the verification failures are the witness.
fn lift(
    t: &Trisp,
    action: &GroupAction,
    q: &crate::symmetry::QuotientTrisp,
    psi: &TrispClosureMap,
) -> Result<Outcome> {
    let on_quotient = verify_trisp_closure_map(&q.trisp, psi)?;
    let condition_c = check_condition_c(t, q, psi)?;
    match lift_closure_map(t, action, psi) {
        Ok(lifted) => {
            let verify = verify_trisp_closure_map(t, &lifted)?;
            let holds = verify.holds;
            Outcome::json(
                json!({
                    "quotient_verify": on_quotient,
                    "condition_c": condition_c,
                    "lift": ClosureMapFile::from_map(&lifted),
                    "verify": verify,
                }),
                holds,
            )
        }
        Err(Error::NotSimplicial) if condition_c.holds && on_quotient.holds => {
            // the lift is still defined; report how it fails
            let lifted = crate::equivariant::lift_candidate(t, q, psi)?;
            let verify = verify_trisp_closure_map(t, &lifted)?;
            let holds = verify.holds;
            Outcome::json(
                json!({
                    "simplicial": false,
                    "quotient_verify": on_quotient,
                    "condition_c": condition_c,
                    "lift": ClosureMapFile::from_map(&lifted),
                    "verify": verify,
                }),
                holds,
            )
        }
        Err(e) => Err(e),
    }
}

fn dgn_build(n: usize, object: DgnObject, format: Format) -> Result<Outcome> {
    if !(3..=6).contains(&n) {
        return Err(Error::Malformed(format!("n = {n} is outside 3..=6")));
    }
    let needs_all = !matches!(object, DgnObject::Complex);
    if !needs_all {
        let g = crate::graphs::build_dgn(n)?;
        return Ok(dot_or_json(
            format,
            || g.trisp.to_dot(),
            trisp_json(&g.trisp),
            true,
        ));
    }
    let d = Dgn::build(n)?;
    let category = |c: &crate::accat::AcyclicCategory| {
        dot_or_json(format, || c.to_dot(), category_json(c), true)
    };
    Ok(match object {
        DgnObject::Complex => unreachable!(),
        DgnObject::Faces => category(d.faces.poset.category()),
        DgnObject::Partitions => category(d.partitions.poset.category()),
        DgnObject::PartitionQuotient => {
            let q = quotient_category(d.partitions.poset.category(), &d.sn.on_partitions)?;
            category(&q.category)
        }
        DgnObject::FaceAction => {
            json_only(format)?;
            Outcome::json(ActionFile::from_action(&d.sn.on_faces), true)?
        }
        DgnObject::PartitionAction => {
            json_only(format)?;
            Outcome::json(ActionFile::from_action(&d.sn.on_partitions), true)?
        }
        DgnObject::Closure => {
            json_only(format)?;
            let objects = (0..d.faces.poset.len())
                .map(|x| d.closure.object(x))
                .collect();
            Outcome::json(OperatorFile { objects }, true)?
        }
    })
}

#[derive(Serialize)]
struct RandomReport {
    seed: u64,
    cases: usize,
    failures: Vec<usize>,
    largest_order: usize,
    isomorphisms: usize,
}

fn random(a: &RandomArgs) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut report = RandomReport {
        seed: a.seed,
        cases: a.cases,
        failures: Vec::new(),
        largest_order: 1,
        isomorphisms: 0,
    };
    for case in 0..a.cases {
        let (p, action) = random_g_poset(&mut rng, a.max_elements, a.max_order);
        report.largest_order = report.largest_order.max(action.order());
        let eqn = EquivariantNerve::build(p.category(), &action)?;
        let (_, r) = eqn.lambda_report()?;
        if !r.is_surjective() {
            report.failures.push(case);
        }
        if r.is_isomorphism() {
            report.isomorphisms += 1;
        }
    }
    let holds = report.failures.is_empty();
    Outcome::json(report, holds)
}
