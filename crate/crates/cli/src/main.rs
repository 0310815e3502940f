//! `kmweights`: weight-sets of highest-weight modules over Kac-Moody algebras.

mod input;
mod suite;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmweights::engine::{Engine, QuotientModule};
use kmweights::enumerate::{enumerate_free, multiplicity_lower_bound, EnumerationMode};
use kmweights::formulas::{
    ascend_chains, compute_jv, extend_thm_a, free_root_subsets, interval_check, minkowski_check,
    parabolic_verma_weights, simple_weights, slice_decompose, ChainTarget,
};
use kmweights::integrable::integrable_weights;
use kmweights::roots::{parabolic_roots, positive_roots, unit_height_roots};
use kmweights::weights::j_lambda;
use kmweights::{
    DepthVector, Error, Gcm, HighestWeight, NodeSet, Result, Root, TruncatedWeightSet,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "kmweights",
    version,
    about = "Weight-sets of highest-weight modules over Kac-Moody algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Type label (A2, B2, A1xA1, A1~), inline JSON, or a JSON file.
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// Pairings <lambda, alpha_i^vee>, e.g. `0,-1/2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Node set, e.g. `0,2`; empty for the empty set.
    #[arg(long = "J", global = true, alias = "j")]
    j: Option<String>,
    /// Relations as JSON words, e.g. `[[[0,2],[1,1]]]` for f_0^2 f_1 v.
    #[arg(long, global = true)]
    relations: Option<String>,
    /// Truncation height.
    #[arg(long, global = true)]
    height: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots up to the given height.
    Roots {
        #[arg(long, conflicts_with = "unit_slice")]
        parabolic: Option<String>,
        #[arg(long)]
        unit_slice: Option<String>,
    },
    /// Weight-sets from formulas, or from the module engine.
    Weights {
        #[arg(value_enum)]
        kind: WeightsKind,
    },
    /// The obstruction set J_V of a presented module.
    Jv,
    /// Checks one of the decomposition theorems on a presented module.
    Check {
        #[arg(value_enum)]
        theorem: Theorem,
    },
    /// Slices of wt V by their J^c-part.
    Slices,
    /// Ascent chains from a weight to the top of its slice.
    Chain {
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value_t = Target::Independent)]
        to: Target,
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
    /// Orderings of the free nodes for the given exponents.
    Enumerate {
        #[arg(long)]
        free_nodes: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Lower bound for dim V_mu with mu supported off J_V.
    Bound {
        #[arg(long)]
        mu: String,
        /// Use this J_V instead of computing it from the module.
        #[arg(long)]
        jv: Option<String>,
    },
    /// Runs every cross-check on the given module, or on a built-in set.
    VerifySuite,
    /// Positive roots along which wt V is closed under subtraction.
    FreeRootSubsets,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum WeightsKind {
    Verma,
    Parabolic,
    Simple,
    Integrable,
    Module,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    #[value(name = "thmA")]
    ThmA,
    #[value(name = "thmB")]
    ThmB,
    #[value(name = "thmC")]
    ThmC,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Independent,
    SliceTop,
}

/// A report and the exit status it calls for.
struct Report {
    json: Value,
    text: String,
    status: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Report {
        Report {
            json,
            text,
            status: 0,
        }
    }
}

struct Ctx {
    common: Common,
}

impl Ctx {
    fn gcm(&self) -> Result<Gcm> {
        let a = self
            .common
            .algebra
            .as_deref()
            .ok_or_else(|| missing("--algebra"))?;
        input::algebra(a)
    }

    fn lambda(&self, gcm: &Gcm) -> Result<HighestWeight> {
        let l = self
            .common
            .lambda
            .as_deref()
            .ok_or_else(|| missing("--lambda"))?;
        input::lambda(l, gcm)
    }

    fn j(&self, gcm: &Gcm) -> Result<NodeSet> {
        let j = self.common.j.as_deref().ok_or_else(|| missing("--J"))?;
        input::nodes(j, gcm.rank())
    }

    fn j_or(&self, gcm: &Gcm, default: NodeSet) -> Result<NodeSet> {
        match &self.common.j {
            Some(j) => input::nodes(j, gcm.rank()),
            None => Ok(default),
        }
    }

    fn height(&self) -> Result<u32> {
        let h = self.common.height.ok_or_else(|| missing("--height"))?;
        if h == 0 {
            return Err(Error::Parse("--height must be at least 1".into()));
        }
        Ok(h)
    }

    fn module(&self) -> Result<(Gcm, Engine, QuotientModule)> {
        let gcm = self.gcm()?;
        let lambda = self.lambda(&gcm)?;
        let rels = input::relations(self.common.relations.as_deref(), gcm.rank())?;
        let h = self.height()?;
        let engine = Engine::new(&gcm)?;
        let q = QuotientModule::new(&engine, &input::presentation(lambda, rels), h)?;
        Ok((gcm, engine, q))
    }
}

fn missing(flag: &str) -> Error {
    Error::Parse(format!("{flag} is required for this command"))
}

pub(crate) fn show_depth(d: &DepthVector) -> String {
    if d.is_zero() {
        "λ".to_string()
    } else {
        let v: Vec<String> = d.0.iter().map(u32::to_string).collect();
        format!("λ - [{}]", v.join(","))
    }
}

pub(crate) fn show_set(s: &TruncatedWeightSet) -> String {
    let mut out = format!("λ = {}  (verified to height {})\n", s.lambda, s.height);
    for d in s.iter() {
        out.push_str(&format!("  {}\n", show_depth(d)));
    }
    out
}

fn show_nodes(s: NodeSet) -> String {
    format!("{:?}", s)
}

fn weights_json(s: &TruncatedWeightSet) -> Value {
    json!({ "lambda": s.lambda, "verified_height": s.height, "depths": s.depths })
}

fn first_difference(a: &TruncatedWeightSet, b: &TruncatedWeightSet) -> Option<DepthVector> {
    a.depths.symmetric_difference(&b.depths).min().cloned()
}

fn roots_cmd(ctx: &Ctx, parabolic: Option<&str>, unit_slice: Option<&str>) -> Result<Report> {
    let gcm = ctx.gcm()?;
    let h = ctx.height()?;
    let rs = positive_roots(&gcm, h);
    let roots: Vec<Root> = match (parabolic, unit_slice) {
        (Some(j), _) => parabolic_roots(&rs, input::nodes(j, gcm.rank())?)
            .roots()
            .to_vec(),
        (_, Some(i)) => unit_height_roots(&rs, input::nodes(i, gcm.rank())?),
        _ => rs.roots().to_vec(),
    };
    let text = roots
        .iter()
        .map(|r| format!("{:?} {:?}\n", r.depth.0, r.kind))
        .collect();
    Ok(Report::ok(serde_json::to_value(&roots).unwrap(), text))
}

fn weights_cmd(ctx: &Ctx, kind: WeightsKind) -> Result<Report> {
    if kind == WeightsKind::Module {
        let (_, _, q) = ctx.module()?;
        let wt = q.weights();
        let dims: Vec<Value> = wt
            .iter()
            .map(|d| json!({ "depth": d, "dim": q.dim(d) }))
            .collect();
        let mut j = weights_json(&wt);
        j["dims"] = Value::Array(dims);
        let mut text = format!("λ = {}  (verified to height {})\n", wt.lambda, wt.height);
        for d in wt.iter() {
            text.push_str(&format!("  {}  dim {}\n", show_depth(d), q.dim(d)));
        }
        return Ok(Report::ok(j, text));
    }
    let gcm = ctx.gcm()?;
    let lambda = ctx.lambda(&gcm)?;
    let h = ctx.height()?;
    let wt = match kind {
        WeightsKind::Verma => parabolic_verma_weights(&gcm, &lambda, NodeSet::EMPTY, h)?,
        WeightsKind::Parabolic => parabolic_verma_weights(&gcm, &lambda, ctx.j(&gcm)?, h)?,
        WeightsKind::Simple => simple_weights(&gcm, &lambda, h)?,
        WeightsKind::Integrable => integrable_weights(&gcm, &lambda, ctx.j(&gcm)?, h)?,
        WeightsKind::Module => unreachable!(),
    };
    Ok(Report::ok(weights_json(&wt), show_set(&wt)))
}

fn jv_cmd(ctx: &Ctx) -> Result<Report> {
    let (gcm, _, q) = ctx.module()?;
    let r = compute_jv(&gcm, &q)?;
    let text = format!("J_V = {}\nwitnesses: {:?}\n", show_nodes(r.jv), r.witnesses);
    let j = json!({ "jv": r.jv, "witnesses": r.witnesses, "verified_height": q.height() });
    Ok(Report::ok(j, text))
}

fn check_cmd(ctx: &Ctx, theorem: Theorem) -> Result<Report> {
    let (gcm, engine, q) = ctx.module()?;
    let h = q.height();
    match theorem {
        Theorem::ThmA => {
            let wt = q.weights();
            let jl = j_lambda(q.lambda());
            let ext = extend_thm_a(&gcm, &wt.restrict_support(jl), h)?;
            let counterexample = first_difference(&wt, &ext);
            let holds = counterexample.is_none();
            let j = json!({
                "theorem": "thmA", "j_lambda": jl, "holds": holds,
                "counterexample": counterexample, "verified_height": h,
            });
            let text = format!(
                "extension from the J_λ-slice (J_λ = {}): holds = {holds}\n",
                show_nodes(jl)
            );
            Ok(Report {
                json: j,
                text,
                status: if holds { 0 } else { 3 },
            })
        }
        Theorem::ThmB => {
            let jset = ctx.j(&gcm)?;
            let r = interval_check(&engine, &q, jset)?;
            let text = format!(
                "wt V = wt M(λ, {}): {}  (M(λ,J) ->> V: {}, V ->> M(λ)/N(λ,J): {})\n",
                show_nodes(jset),
                r.holds,
                r.below_max,
                r.above_min
            );
            let mut j = serde_json::to_value(&r).unwrap();
            j["theorem"] = json!("thmB");
            Ok(Report::ok(j, text))
        }
        Theorem::ThmC => {
            let jset = ctx.j(&gcm)?;
            let jv = compute_jv(&gcm, &q)?;
            let r = minkowski_check(&gcm, &q, jset, h)?;
            let contains = jv.jv.is_subset(jset);
            let consistent = r.holds == contains;
            let j = json!({
                "theorem": "thmC", "J": jset, "holds": r.holds, "jv": jv.jv,
                "J_contains_jv": contains, "consistent": consistent,
                "counterexample": r.counterexample, "witnesses": jv.witnesses, "verified_height": h,
            });
            let text = format!(
                "Minkowski decomposition for J = {}: {}\nJ_V = {}, J contains J_V: {contains}\n",
                show_nodes(jset),
                r.holds,
                show_nodes(jv.jv)
            );
            Ok(Report {
                json: j,
                text,
                status: if consistent { 0 } else { 3 },
            })
        }
    }
}

fn slices_cmd(ctx: &Ctx) -> Result<Report> {
    let (gcm, _, q) = ctx.module()?;
    let jset = ctx.j(&gcm)?;
    let h = q.height();
    let slices = slice_decompose(&gcm, &q, jset, h)?;
    let mut text = String::new();
    let list: Vec<Value> = slices
        .iter()
        .map(|(xi, s)| {
            text.push_str(&format!("xi = {:?}: {} weights\n", xi.0, s.len()));
            json!({ "xi": xi, "depths": s.depths })
        })
        .collect();
    let j = json!({ "J": jset, "slices": list, "verified_height": h });
    Ok(Report::ok(j, text))
}

fn chain_cmd(ctx: &Ctx, mu: &str, to: Target, limit: usize) -> Result<Report> {
    let (gcm, _, q) = ctx.module()?;
    let jset = ctx.j_or(&gcm, gcm.all_nodes())?;
    let mu = input::depth(mu, gcm.rank())?;
    let target = match to {
        Target::Independent => ChainTarget::IndependentSupport,
        Target::SliceTop => ChainTarget::SliceTop,
    };
    let chains = ascend_chains(&gcm, &q, &mu, jset, target, limit.max(1))?;
    if chains.is_empty() {
        return Err(Error::ChainNotFound(mu));
    }
    let mut text = String::new();
    for c in &chains {
        let steps: Vec<String> = c.iter().map(|l| show_depth(&l.depth)).collect();
        text.push_str(&steps.join("  <  "));
        text.push('\n');
    }
    let j = json!({ "mu": mu, "J": jset, "chains": chains, "verified_height": q.height() });
    Ok(Report::ok(j, text))
}

fn enumerate_cmd(ctx: &Ctx, free: &str, c: &str, exhaustive: bool) -> Result<Report> {
    let gcm = ctx.gcm()?;
    let lambda = ctx.lambda(&gcm)?;
    let free = input::nodes(free, gcm.rank())?;
    let c = input::exponents(c, free, gcm.rank())?;
    let mode = if exhaustive {
        EnumerationMode::Exhaustive
    } else {
        EnumerationMode::Deterministic
    };
    let plans = enumerate_free(&gcm, &lambda, free, &c, mode)?;
    let mut text = String::new();
    let list: Vec<Value> = plans
        .iter()
        .map(|p| {
            text.push_str(&format!(
                "ordering {:?}  terminal {}  dot set {}\n",
                p.ordering,
                show_nodes(p.terminal_independent),
                show_nodes(p.dot_set)
            ));
            let mut v = serde_json::to_value(p).unwrap();
            v["word"] = json!(p.word());
            v
        })
        .collect();
    let j =
        json!({ "lambda": lambda, "free_nodes": free, "exhaustive": exhaustive, "plans": list });
    Ok(Report::ok(j, text))
}

fn bound_cmd(ctx: &Ctx, mu: &str, jv: Option<&str>) -> Result<Report> {
    let gcm = ctx.gcm()?;
    let n = gcm.rank();
    let mu = input::depth(mu, n)?;
    let (lambda, jv, module) = match jv {
        Some(jv) => (ctx.lambda(&gcm)?, input::nodes(jv, n)?, None),
        None => {
            let (_, e, q) = ctx.module()?;
            let jv = compute_jv(&gcm, &q)?.jv;
            (q.lambda().clone(), jv, Some((e, q)))
        }
    };
    let free = jv.complement(n);
    if !mu.support().is_subset(free) {
        return Err(Error::Parse(format!(
            "mu must be supported on the complement of J_V = {jv:?}"
        )));
    }
    let c = free.iter().map(|i| (i, mu.get(i))).collect();
    let engine = match &module {
        Some((e, _)) => Some(e.clone()),
        None => Engine::new(&gcm).ok(),
    };
    let b = multiplicity_lower_bound(&gcm, &lambda, jv, &c, engine.as_ref())?;
    let mut j = serde_json::to_value(&b).unwrap();
    j["jv"] = json!(jv);
    let mut text = format!("dim V_(λ - {:?}) >= {}\n", mu.0, b.bound);
    let mut status = 0;
    if let Some((_, q)) = &module {
        if mu.height() <= q.height() {
            let dim = q.dim(&mu);
            j["engine_dim"] = json!(dim);
            j["verified_height"] = json!(q.height());
            text.push_str(&format!("engine dimension {dim}\n"));
            if dim < b.bound {
                status = 3;
            }
        }
    }
    if b.membership_only {
        text.push_str("membership bound: each contributor counted once\n");
    }
    Ok(Report {
        json: j,
        text,
        status,
    })
}

fn free_roots_cmd(ctx: &Ctx) -> Result<Report> {
    let (gcm, _, q) = ctx.module()?;
    let r = free_root_subsets(&gcm, &q, q.height())?;
    let text = r.roots.iter().map(|b| format!("{:?}\n", b.0)).collect();
    Ok(Report::ok(serde_json::to_value(&r).unwrap(), text))
}

fn run(cli: &Cli) -> Result<Report> {
    let ctx = Ctx {
        common: cli.common.clone(),
    };
    match &cli.command {
        Command::Roots {
            parabolic,
            unit_slice,
        } => roots_cmd(&ctx, parabolic.as_deref(), unit_slice.as_deref()),
        Command::Weights { kind } => weights_cmd(&ctx, *kind),
        Command::Jv => jv_cmd(&ctx),
        Command::Check { theorem } => check_cmd(&ctx, *theorem),
        Command::Slices => slices_cmd(&ctx),
        Command::Chain { mu, to, limit } => chain_cmd(&ctx, mu, *to, *limit),
        Command::Enumerate {
            free_nodes,
            c,
            exhaustive,
        } => enumerate_cmd(&ctx, free_nodes, c, *exhaustive),
        Command::Bound { mu, jv } => bound_cmd(&ctx, mu, jv.as_deref()),
        Command::VerifySuite => suite::run(&ctx),
        Command::FreeRootSubsets => free_roots_cmd(&ctx),
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
        Ok(r) => {
            match cli.common.format {
                Format::Json => println!("{}", serde_json::to_string(&r.json).unwrap()),
                Format::Text => print!("{}", r.text),
            }
            ExitCode::from(r.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
