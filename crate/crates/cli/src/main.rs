//! Command-line front end for crystal-forge.
//!
//! Exit codes: 0 on success, 1 on a domain or usage error (the message on
//! standard error names the violated precondition), 2 when a vertex cap is hit.
//! Output is assembled in full before anything is written, so a failing
//! request never emits partial JSON.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crystal_forge::adhm::AdhmJson;
use crystal_forge::decompose::{branch, decompose_with_cache, levi_dicts, multiplicity, tensor_of_highest};
use crystal_forge::export::{crystal_dot, crystal_json, crystal_table, decomposition_json, decomposition_table};
use crystal_forge::lspath::{build_crystal_capped, DEFAULT_VERTEX_CAP};
use crystal_forge::quiver::{basic_dims, gamma_fiber, grassmannian_dim, weight_dicts, QuiverParams};
use crystal_forge::selftest::{run, SelftestOptions};
use crystal_forge::sl2::{sl2_crystal, sl2_mult_range, sl2_s_nonempty, sl2_tau2};
use crystal_forge::{CrystalGraph, DynkinDiagram, Error, HighestWeightCache, Weight, SCHEMA};

const PALETTE_HELP: &str = "DOT edges follow f_i and are colored by vertex i: \
0 red, 1 blue, 2 darkgreen, 3 orange, 4 purple, 5 brown, 6 magenta, 7 cyan (then repeating). \
Weights are comma-separated integers in fundamental-weight coordinates; \
nodes are numbered 0..n-1 along the A/D chain, D attaches the last node to node n-3, \
E attaches node 1 to node 3.";

#[derive(Parser, Debug)]
#[command(name = "crystal-forge", version, about = "Crystals, tensor products and quiver-variety dimension data", after_help = PALETTE_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Args, Debug)]
struct DiagramArg {
    /// Diagram name such as A3, D4 or E6.
    #[arg(long)]
    diagram: String,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Abort with exit code 2 once a crystal would exceed this many vertices.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    max_vertices: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, adjacency matrix and positive roots.
    Roots {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The highest-weight crystal B(hw).
    Crystal {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, allow_hyphen_values = true)]
        hw: Weight,
        #[command(flatten)]
        out: Output,
    },
    /// The tensor product B(μ¹) ⊗ … ⊗ B(μⁿ), nested to the left.
    Tensor {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<Weight>,
        #[command(flatten)]
        out: Output,
    },
    /// Connected components of a tensor product, by highest weight.
    Decompose {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<Weight>,
        #[command(flatten)]
        out: Output,
    },
    /// Multiplicity of B(target) in a tensor product.
    Mult {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, allow_hyphen_values = true)]
        target: Weight,
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<Weight>,
        #[command(flatten)]
        out: Output,
    },
    /// Restrict B(hw) to the vertices in `subset` and decompose.
    Branch {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, allow_hyphen_values = true)]
        hw: Weight,
        /// Strictly increasing comma-separated vertex list; may be empty.
        #[arg(long, default_value = "")]
        subset: Weight,
        #[command(flatten)]
        out: Output,
    },
    /// Dimension formulas, emptiness predicates and weight dictionaries.
    Dims(DimsArgs),
    /// The one-vertex quiver.
    Sl2 {
        #[command(subcommand)]
        op: Sl2Op,
    },
    /// Explicit ADHM data read from a JSON file.
    Adhm {
        #[command(subcommand)]
        op: AdhmOp,
    },
    /// Run the ten acceptance criteria and print a JSON report.
    Selftest {
        #[arg(long, default_value_t = SelftestOptions::default().seed)]
        seed: u64,
        /// Swap the tensor-rule inequalities (test fixture).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args, Debug)]
struct DimsArgs {
    #[command(flatten)]
    diagram: DiagramArg,
    #[arg(long, allow_hyphen_values = true)]
    d: Weight,
    #[arg(long, allow_hyphen_values = true)]
    v: Weight,
    /// Defaults to `v`.
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<Weight>,
    /// Successive quotient dimensions of the flag in D.
    #[arg(long, num_args = 1..)]
    d_tuple: Vec<Weight>,
    #[arg(long, num_args = 1..)]
    v_tuple: Vec<Weight>,
    #[arg(long, num_args = 1..)]
    vt_tuple: Vec<Weight>,
    /// Sub-dimension `u ≤ v` for the γ fiber and the Grassmannian.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<Weight>,
    /// Levi subset for the δ/ρ dictionaries.
    #[arg(long)]
    subset: Option<Weight>,
}

#[derive(Subcommand, Debug)]
enum Sl2Op {
    /// The chain M(d, v0).
    Crystal {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        v0: i64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Component label (v0, u) of a pair of chain vertices.
    Tau2 {
        #[arg(long, allow_hyphen_values = true)]
        d1: i64,
        #[arg(long, allow_hyphen_values = true)]
        v1: i64,
        #[arg(long, allow_hyphen_values = true)]
        u1: i64,
        #[arg(long, allow_hyphen_values = true)]
        d2: i64,
        #[arg(long, allow_hyphen_values = true)]
        v2: i64,
        #[arg(long, allow_hyphen_values = true)]
        u2: i64,
    },
    /// All v0 occurring in M(d1, v1) ⊗ M(d2, v2).
    Range {
        #[arg(long, allow_hyphen_values = true)]
        d1: i64,
        #[arg(long, allow_hyphen_values = true)]
        v1: i64,
        #[arg(long, allow_hyphen_values = true)]
        d2: i64,
        #[arg(long, allow_hyphen_values = true)]
        v2: i64,
    },
    /// Whether v is in the multiplicity range.
    SNonempty {
        #[arg(long, allow_hyphen_values = true)]
        d1: i64,
        #[arg(long, allow_hyphen_values = true)]
        v1: i64,
        #[arg(long, allow_hyphen_values = true)]
        d2: i64,
        #[arg(long, allow_hyphen_values = true)]
        v2: i64,
        #[arg(long, allow_hyphen_values = true)]
        v: i64,
    },
}

#[derive(Subcommand, Debug)]
enum AdhmOp {
    /// Preprojective equation, stability, ∗-stability and nilpotency.
    Check { file: PathBuf },
    /// Stratum membership for the flag given in the file (trivial flag if absent).
    Stratum { file: PathBuf },
}

enum Failure {
    Domain(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_limit() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Domain(msg.into())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn parse_diagram(arg: &DiagramArg) -> Result<Arc<DynkinDiagram>, Failure> {
    Ok(Arc::new(arg.diagram.parse::<DynkinDiagram>()?))
}

fn subset_of(w: &Weight) -> Result<Vec<usize>, Failure> {
    w.as_slice()
        .iter()
        .map(|&x| usize::try_from(x).map_err(|_| usage(format!("subset entry {x} is negative"))))
        .collect()
}

fn render_crystal(c: &CrystalGraph, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Json) {
        Format::Json => pretty(&crystal_json(c)),
        Format::Dot => crystal_dot(c),
        Format::Table => crystal_table(c),
    }
}

fn no_dot(format: Option<Format>, what: &str) -> Result<Format, Failure> {
    match format.unwrap_or(Format::Json) {
        Format::Dot => Err(usage(format!("--format dot is only available for crystals, not {what}"))),
        f => Ok(f),
    }
}

fn check_factors(g: &DynkinDiagram, ws: &[Weight]) -> Result<(), Failure> {
    for w in ws {
        g.check_weight(w)?;
        if !w.is_nonnegative() {
            return Err(Error::NotDominant(w.clone()).into());
        }
    }
    Ok(())
}

fn roots(diagram: &DiagramArg, format: Option<Format>) -> Outcome {
    let g = parse_diagram(diagram)?;
    let roots = g.positive_roots();
    match no_dot(format, "roots")? {
        Format::Table => {
            let mut out = format!("# {} positive roots of {} (simple-root coordinates)\n", roots.len(), g.name());
            for r in &roots {
                out.push_str(&format!("{}\n", Weight(r.clone())));
            }
            Ok(out)
        }
        _ => Ok(pretty(&json!({
            "schema": SCHEMA,
            "diagram": g.name(),
            "rank": g.rank(),
            "cartan": g.cartan().rows(),
            "adjacency": g.x_matrix().rows(),
            "edges": g.edges(),
            "arrows": g.arrows(),
            "positiveRoots": roots,
        }))),
    }
}

fn dims(a: &DimsArgs) -> Outcome {
    let g = parse_diagram(&a.diagram)?;
    let v0 = a.v0.clone().unwrap_or_else(|| a.v.clone());
    let basic = basic_dims(&g, &a.d, &a.v, &v0)?;
    let dicts = weight_dicts(&g, &a.d, &v0)?;
    let mut doc = json!({
        "schema": SCHEMA,
        "diagram": g.name(),
        "basic": basic,
        "weightDicts": dicts,
    });
    if !a.d_tuple.is_empty() {
        let vt = (!a.vt_tuple.is_empty()).then(|| a.vt_tuple.clone());
        let params = QuiverParams::new(
            g.clone(),
            a.d.clone(),
            a.v.clone(),
            v0.clone(),
            a.d_tuple.clone(),
            a.v_tuple.clone(),
            vt,
        )?;
        doc["strat"] = json!(params.strat_dims()?);
        if params.vt_tuple.is_some() && params.n() >= 2 {
            let rho: Vec<i64> = (1..params.n()).map(|k| params.rho2_fiber_at(k)).collect::<Result<_, _>>()?;
            doc["rho2Fibers"] = json!(rho);
        }
    } else if !a.v_tuple.is_empty() || !a.vt_tuple.is_empty() {
        return Err(usage("--v-tuple and --vt-tuple require --d-tuple"));
    }
    if let Some(u) = &a.u {
        let t = &a.v - u;
        if !u.is_nonnegative() || !t.is_nonnegative() {
            return Err(usage(format!("need 0 <= u <= v, got u = {u}, v = {}", a.v)));
        }
        doc["gammaFiber"] = json!(gamma_fiber(&g, &a.d, u, &t)?);
        doc["grassmannian"] = json!(grassmannian_dim(u, &a.v)?);
    }
    if let Some(s) = &a.subset {
        let subset = subset_of(s)?;
        let (delta, rho) = levi_dicts(&g, &a.d, &a.v, &subset)?;
        doc["levi"] = json!({"subset": subset, "delta": delta, "rho": rho});
    }
    Ok(pretty(&doc))
}

fn sl2(op: &Sl2Op) -> Outcome {
    let doc = match *op {
        Sl2Op::Crystal { d, v0, format } => {
            if v0 < 0 || 2 * v0 > d {
                return Err(Error::InvalidLabel(format!("need 0 <= 2v0 <= d, got d={d}, v0={v0}")).into());
            }
            return Ok(render_crystal(&sl2_crystal(d, v0), format));
        }
        Sl2Op::Tau2 { d1, v1, u1, d2, v2, u2 } => {
            let (v0, u) = sl2_tau2(d1, v1, u1, d2, v2, u2)?;
            json!({"schema": SCHEMA, "v0": v0, "u": u})
        }
        Sl2Op::Range { d1, v1, d2, v2 } => {
            json!({"schema": SCHEMA, "v0": sl2_mult_range(d1, v1, d2, v2)?})
        }
        Sl2Op::SNonempty { d1, v1, d2, v2, v } => {
            sl2_mult_range(d1, v1, d2, v2)?;
            json!({"schema": SCHEMA, "nonempty": sl2_s_nonempty(d1, v1, d2, v2, v)})
        }
    };
    Ok(pretty(&doc))
}

fn read_adhm(file: &PathBuf) -> Result<AdhmJson, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()).into())
}

fn adhm(op: &AdhmOp) -> Outcome {
    match op {
        AdhmOp::Check { file } => {
            let (datum, _) = read_adhm(file)?.to_datum()?;
            let report = datum.check_preprojective();
            let residual_zero: Vec<bool> = report.residuals.iter().map(|m| m.is_zero()).collect();
            Ok(pretty(&json!({
                "schema": SCHEMA,
                "preprojective": report.holds,
                "residualZero": residual_zero,
                "stable": datum.is_stable(),
                "astStable": datum.is_ast_stable(),
                "nilpotent": datum.is_nilpotent(),
            })))
        }
        AdhmOp::Stratum { file } => {
            let (datum, flag) = read_adhm(file)?.to_datum()?;
            let flag = flag.unwrap_or_else(|| crystal_forge::adhm::GradedFlag::trivial(datum.d()));
            let member = datum.stratum_membership(&flag)?;
            Ok(pretty(&json!({
                "schema": SCHEMA,
                "member": member.is_some(),
                "stratum": member,
            })))
        }
    }
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Roots { diagram, format } => roots(diagram, *format),
        Command::Crystal { diagram, hw, out } => {
            let g = parse_diagram(diagram)?;
            let c = build_crystal_capped(g, hw, out.max_vertices)?;
            Ok(render_crystal(&c, out.format))
        }
        Command::Tensor { diagram, factors, out } => {
            let g = parse_diagram(diagram)?;
            check_factors(&g, factors)?;
            let mut cache = HighestWeightCache::with_cap(g, out.max_vertices);
            let t = tensor_of_highest(&mut cache, factors)?;
            Ok(render_crystal(&t, out.format))
        }
        Command::Decompose { diagram, factors, out } => {
            let g = parse_diagram(diagram)?;
            check_factors(&g, factors)?;
            let format = no_dot(out.format, "decompositions")?;
            let mut cache = HighestWeightCache::with_cap(g, out.max_vertices);
            let t = tensor_of_highest(&mut cache, factors)?;
            let dec = decompose_with_cache(&t, &mut cache)?;
            Ok(match format {
                Format::Table => decomposition_table(&dec),
                _ => pretty(&decomposition_json(&dec)),
            })
        }
        Command::Mult { diagram, target, factors, out } => {
            let g = parse_diagram(diagram)?;
            check_factors(&g, factors)?;
            let format = match out.format {
                None => Format::Table,
                Some(_) => no_dot(out.format, "multiplicities")?,
            };
            let mut cache = HighestWeightCache::with_cap(g, out.max_vertices);
            let m = multiplicity(&mut cache, target, factors)?;
            Ok(match format {
                Format::Table => format!("{m}\n"),
                _ => pretty(&json!({"schema": SCHEMA, "target": target, "factors": factors, "multiplicity": m})),
            })
        }
        Command::Branch { diagram, hw, subset, out } => {
            let g = parse_diagram(diagram)?;
            let format = no_dot(out.format, "branchings")?;
            let subset = subset_of(subset)?;
            let c = build_crystal_capped(g, hw, out.max_vertices)?;
            let dec = branch(&c, &subset)?;
            Ok(match format {
                Format::Table => decomposition_table(&dec),
                _ => pretty(&decomposition_json(&dec)),
            })
        }
        Command::Dims(a) => dims(a),
        Command::Sl2 { op } => sl2(op),
        Command::Adhm { op } => adhm(op),
        Command::Selftest { seed, inject_fault } => {
            let report = run(&SelftestOptions {
                seed: *seed,
                inject_tensor_fault: *inject_fault,
            });
            Ok(pretty(&json!(report)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
