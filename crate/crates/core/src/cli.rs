//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or parse error,
//! 3 construction failure.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::arrangement::{
    classify_with_plan, complement_span_dim, extract_complex_hyperplane, family_violation, realify,
    triple_ranks, RealSubspace, TripleRank,
};
use crate::curve::projection_at;
use crate::diagonals::{enumerate_diagonals, DiagonalSummary};
use crate::error::Error;
use crate::projective::{project_hyperplane, ComplexHyperplane};
use crate::scene::{parse_complex, Scene};
use crate::verify::{verify, SamplingPlan, VerificationReport};
use crate::witness::{witness_optimality, witness_thm2i, witness_thm2ii, witness_thm3_2};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "holoavoid",
    version,
    about = "Hyperplane arrangements in C^3 and entire curves avoiding them"
)]
pub struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "human")]
    json: bool,
    /// Emit human-readable text.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that every triple of codimension-2 subspaces spans R^6.
    GpCheck { scene: String },
    /// List the diagonal lines of the scene's hyperplanes.
    Diagonals { scene: String },
    /// Classify four hyperplanes and a real hyperplane.
    Classify {
        scene: String,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Build and verify a witness curve.
    Witness {
        scene: String,
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Verify a named curve against every set of the scene.
    Verify {
        scene: String,
        #[arg(long)]
        curve: String,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Evaluate the projection of a named curve at a point.
    Project {
        scene: String,
        #[arg(long)]
        curve: String,
        /// A complex number such as `1 + 2i`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    #[value(name = "2i")]
    TwoI,
    #[value(name = "2ii")]
    TwoIi,
    #[value(name = "3.2")]
    ThreeTwo,
    #[value(name = "opt")]
    Opt,
}

#[derive(Args, Debug, Clone)]
struct PlanArgs {
    #[arg(long)]
    radius: Option<f64>,
    /// Grid points per side.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    random: Option<usize>,
    /// Overrides AVOIDANCE_SEED.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tolerance: Option<f64>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConstructionFailed(_) => EXIT_CONSTRUCTION,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

struct Output {
    json: Value,
    human: String,
    code: i32,
}

impl PlanArgs {
    fn resolve(&self, env_seed: Option<&str>) -> Result<SamplingPlan, Failure> {
        let mut plan = SamplingPlan::default();
        if let Some(s) = env_seed {
            plan.seed = s.trim().parse().map_err(|_| {
                Failure::input(format!("AVOIDANCE_SEED `{s}` is not an unsigned integer"))
            })?;
        }
        if let Some(seed) = self.seed {
            plan.seed = seed;
        }
        if let Some(r) = self.radius {
            plan.disk_radius = r;
        }
        if let Some(g) = self.grid {
            plan.grid_points = g;
        }
        if let Some(n) = self.random {
            plan.random_points = n;
        }
        if let Some(t) = self.tolerance {
            plan.tolerance = t;
        }
        plan.validate().map_err(Failure::input)?;
        Ok(plan)
    }
}

fn load_scene(path: &str) -> Result<Scene, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?
    };
    Scene::parse(&text).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn real_of_dim(scene: &Scene, dim: usize) -> Result<(String, RealSubspace), Failure> {
    match scene.reals.as_slice() {
        [only] if only.value.dim() == dim => Ok((only.name.clone(), only.value.clone())),
        _ => Err(Failure::input(format!(
            "scene must declare exactly one real subspace of dimension {dim}"
        ))),
    }
}

fn hyperplane_count(scene: &Scene, n: usize) -> Result<Vec<ComplexHyperplane>, Failure> {
    if scene.hyperplanes.len() != n {
        return Err(Failure::input(format!(
            "scene must declare exactly {n} hyperplanes, found {}",
            scene.hyperplanes.len()
        )));
    }
    Ok(scene.hyperplane_values())
}

fn pair_names(scene: &Scene, (j, k): (usize, usize)) -> [String; 2] {
    [
        scene.hyperplanes[j].name.clone(),
        scene.hyperplanes[k].name.clone(),
    ]
}

fn gp_check(scene: &Scene) -> Result<Output, Failure> {
    let mut names = Vec::new();
    let mut spaces = Vec::new();
    for h in &scene.hyperplanes {
        names.push(h.name.clone());
        spaces.push(realify(&h.value));
    }
    for r in &scene.reals {
        if r.value.dim() == 4 {
            names.push(r.name.clone());
            spaces.push(r.value.clone());
        }
    }
    let violation = family_violation(&spaces)?;
    let ranks: Vec<Value> = (0..spaces.len())
        .tuple_combinations()
        .map(|(a, b, c)| {
            json!({
                "triple": [names[a], names[b], names[c]],
                "rank": complement_span_dim(&[&spaces[a], &spaces[b], &spaces[c]]),
            })
        })
        .collect();
    let bad = violation.map(|(a, b, c)| vec![names[a].clone(), names[b].clone(), names[c].clone()]);
    let mut human = format!("members: {}\n", names.join(", "));
    match &bad {
        None => human.push_str("in general position\n"),
        Some(t) => human.push_str(&format!(
            "not in general position: {} fails\n",
            t.join(", ")
        )),
    }
    Ok(Output {
        json: json!({
            "members": names,
            "general_position": bad.is_none(),
            "violating_triple": bad,
            "triples": ranks,
        }),
        human,
        code: EXIT_OK,
    })
}

fn diagonals(scene: &Scene) -> Result<Output, Failure> {
    let lines: Vec<_> = scene
        .hyperplanes
        .iter()
        .map(|h| project_hyperplane(&h.value))
        .collect();
    let diags = enumerate_diagonals(&lines).map_err(|e| match e {
        Error::NotInGeneralPosition { subset } => Failure::input(format!(
            "hyperplanes {} are not in general position",
            subset
                .iter()
                .map(|&k| scene.hyperplanes[k].name.as_str())
                .join(", ")
        )),
        other => other.into(),
    })?;
    let summaries: Vec<DiagonalSummary> = diags.iter().map(DiagonalSummary::from).collect();
    let mut human = format!("{} diagonals\n", diags.len());
    for d in &diags {
        human.push_str(&format!("  {d}\n"));
    }
    Ok(Output {
        json: json!({ "count": diags.len(), "diagonals": summaries }),
        human,
        code: EXIT_OK,
    })
}

fn evidence_json(scene: &Scene, evidence: &[TripleRank]) -> Vec<Value> {
    evidence
        .iter()
        .map(|t| {
            json!({
                "pair": pair_names(scene, t.pair),
                "rank": t.rank,
                "general_position": t.rank == 6,
            })
        })
        .collect()
}

fn report_value(r: &VerificationReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn classify(scene: &Scene, plan: &SamplingPlan) -> Result<Output, Failure> {
    let hs = hyperplane_count(scene, 4)?;
    let (_, h) = real_of_dim(scene, 5)?;
    let v = classify_with_plan(&hs, &h, plan)?;
    let mut human = format!("{}\nreduced hyperplane: {} = 0\n", v.tag, v.reduced);
    for t in &v.evidence {
        let [a, b] = pair_names(scene, t.pair);
        human.push_str(&format!("  ({a}, {b}): rank {}\n", t.rank));
    }
    if let Some(r) = &v.report {
        human.push_str(&r.to_string());
    }
    Ok(Output {
        json: json!({
            "tag": v.tag.to_string(),
            "reduced_hyperplane": format!("{} = 0", v.reduced),
            "evidence": evidence_json(scene, &v.evidence),
            "witness": v.witness.as_ref().map(ToString::to_string),
            "report": v.report.as_ref().map(report_value),
        }),
        human,
        code: EXIT_OK,
    })
}

fn witness(scene: &Scene, theorem: Theorem, plan: &SamplingPlan) -> Result<Output, Failure> {
    let (label, curve, subspace, check_scene, expect_constant) = match theorem {
        Theorem::TwoI => {
            if scene.hyperplanes.is_empty() {
                return Err(Failure::input("scene declares no hyperplanes"));
            }
            let f = witness_thm2i(&scene.hyperplane_values());
            let s = Scene {
                hyperplanes: scene.hyperplanes.clone(),
                ..Scene::default()
            };
            ("2i", f, None, s, true)
        }
        Theorem::TwoIi => {
            let hs = hyperplane_count(scene, 4)?;
            let w = witness_thm2ii(&hs)?;
            let mut s = Scene {
                hyperplanes: scene.hyperplanes.clone(),
                ..Scene::default()
            };
            let name = if scene.hyperplanes.iter().any(|h| h.name == "H") {
                "H'"
            } else {
                "H"
            };
            s.reals.push(crate::scene::Named {
                name: name.into(),
                value: w.subspace.clone(),
            });
            ("2ii", w.curve, Some(w.subspace), s, false)
        }
        Theorem::ThreeTwo => {
            let hs = hyperplane_count(scene, 4)?;
            let (_, h) = real_of_dim(scene, 5)?;
            let reduced = extract_complex_hyperplane(&h)?;
            let pair = triple_ranks(&hs, &reduced)
                .into_iter()
                .find(|t| t.rank < 6)
                .map(|t| t.pair)
                .ok_or_else(|| {
                    Failure::input("every triple is in general position; no witness exists")
                })?;
            let f = witness_thm3_2(&hs, &h, pair)?;
            ("3.2", f, None, scene_without_curves(scene), false)
        }
        Theorem::Opt => {
            let hs = hyperplane_count(scene, 3)?;
            let (_, h) = real_of_dim(scene, 5)?;
            let f = witness_optimality(&hs, &h)?;
            ("opt", f, None, scene_without_curves(scene), false)
        }
    };
    let report = verify(&curve, &check_scene, plan);
    let ok = report.all_avoided() && report.projection_constant == expect_constant;
    let mut human = format!("theorem {label}\n");
    if let Some(s) = &subspace {
        human.push_str(&format!("real subspace {s}\n"));
    }
    human.push_str(&report.to_string());
    Ok(Output {
        json: json!({
            "theorem": label,
            "curve": curve.to_string(),
            "real_subspace": subspace.as_ref().map(ToString::to_string),
            "passed": ok,
            "report": report_value(&report),
        }),
        human,
        code: if ok { EXIT_OK } else { EXIT_FAILED },
    })
}

fn scene_without_curves(scene: &Scene) -> Scene {
    Scene {
        curves: Vec::new(),
        ..scene.clone()
    }
}

fn named_curve<'a>(
    scene: &'a Scene,
    name: &str,
) -> Result<&'a crate::curve::ExpAffineCurve, Failure> {
    let f = scene
        .curve(name)
        .ok_or_else(|| Failure::input(format!("no curve named `{name}`")))?;
    if f.len() != 3 {
        return Err(Failure::input(format!(
            "curve `{name}` has {} components, expected 3",
            f.len()
        )));
    }
    Ok(f)
}

fn verify_cmd(scene: &Scene, name: &str, plan: &SamplingPlan) -> Result<Output, Failure> {
    let f = named_curve(scene, name)?;
    let report = verify(f, &scene_without_curves(scene), plan);
    Ok(Output {
        json: report_value(&report),
        human: report.to_string(),
        code: if report.all_avoided() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
    })
}

fn project(scene: &Scene, name: &str, at: &str) -> Result<Output, Failure> {
    let f = named_curve(scene, name)?;
    let z = parse_complex(at).map_err(|e| Failure::input(format!("--at: {e}")))?;
    let z: Complex64 = z.to_complex64();
    let value = projection_at(f, z).ok_or_else(|| {
        Failure::input(format!(
            "curve `{name}` vanishes at {z}; projection undefined"
        ))
    })?;
    let pairs: Vec<[f64; 2]> = value.iter().map(|c| [c.re, c.im]).collect();
    let human = format!(
        "[{}]\n",
        value
            .iter()
            .map(|c| format!("{:.9}{:+.9}i", c.re, c.im))
            .join(" : ")
    );
    Ok(Output {
        json: json!({ "curve": name, "at": [z.re, z.im], "value": pairs }),
        human,
        code: EXIT_OK,
    })
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. `env_seed` is the value of `AVOIDANCE_SEED`, if set.
pub fn run<I, S>(args: I, env_seed: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let human = cli.human;
    let env = env_seed.as_deref();
    let result = (|| -> Result<Output, Failure> {
        match &cli.command {
            Command::GpCheck { scene } => gp_check(&load_scene(scene)?),
            Command::Diagonals { scene } => diagonals(&load_scene(scene)?),
            Command::Classify { scene, plan } => {
                let plan = plan.resolve(env)?;
                classify(&load_scene(scene)?, &plan)
            }
            Command::Witness {
                scene,
                theorem,
                plan,
            } => {
                let plan = plan.resolve(env)?;
                witness(&load_scene(scene)?, *theorem, &plan)
            }
            Command::Verify { scene, curve, plan } => {
                let plan = plan.resolve(env)?;
                verify_cmd(&load_scene(scene)?, curve, &plan)
            }
            Command::Project { scene, curve, at } => project(&load_scene(scene)?, curve, at),
        }
    })();
    match result {
        Ok(o) => {
            if human {
                let _ = write!(out, "{}", o.human);
            } else {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json")
                );
            }
            o.code
        }
        Err(f) => {
            if human {
                let _ = writeln!(err, "error: {}", f.message);
            } else {
                let _ = writeln!(
                    err,
                    "{}",
                    json!({ "error": f.message, "exit_code": f.code })
                );
            }
            f.code
        }
    }
}
