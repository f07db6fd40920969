//! Subcommand implementations. Every randomized run takes an explicit seed;
//! reports are deterministic JSON (rationals as "num/den" strings, floats
//! only for predictions).

use std::fs;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use clap::Args;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use hyperreg::complex::Complex;
use hyperreg::counting::moments::moment_concentration;
use hyperreg::counting::{
    count_copies, count_extensions, count_graph_copies, enumerate_sub_copies, predicted_count,
    predicted_extension,
};
use hyperreg::density::{check_d_delta_regular, check_delta_regular};
use hyperreg::embed::{EmbedOutcome, EmbedStrategy, EmbedderConfig};
use hyperreg::error::Error;
use hyperreg::format::{
    parse_colouring, parse_complex, parse_hypergraph, serialize_colouring, serialize_complex,
    serialize_hypergraph,
};
use hyperreg::graph::Vertex;
use hyperreg::hypergraph::{triples_of, TripleColouring};
use hyperreg::models::{host_provenance, planted_host, random_host, HostParams, PlantingSpec};
use hyperreg::partition::ramsey::{colouring_avoids, exact_ramsey};
use hyperreg::partition::{
    assign_to_classes, blue_complement_densities, check_partition, check_regular_partition,
    classify_pairs_triples, colour_clique_by_density, host_complex_from_system,
    pattern_complex_from_assignment, random_slicing_partition, reduced_hypergraph,
    select_triad_system, turan_clique, SelectParams, TriadColour,
};
use hyperreg::rng::KeyedRng;
use hyperreg::triad::{triad_density, triad_of_complex, Strategies};

use crate::{check_mode, ModeArg, StrategyArg};

pub enum Verdict {
    Pass,
    Fail,
}

type CmdResult = Result<Verdict, Error>;

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::structure(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents)
        .map_err(|e| Error::structure(format!("cannot write {}: {e}", path.display())))
}

/// Emit a report to stdout, and to --json-out when given.
fn emit(report: &impl Serialize, json_out: &Option<PathBuf>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::structure(format!("report serialization failed: {e}")))?;
    println!("{text}");
    if let Some(path) = json_out {
        write_out(path, &text)?;
    }
    Ok(())
}

fn parse_class_map(spec: &Option<String>, pattern_k: usize) -> Result<Vec<usize>, Error> {
    match spec {
        None => Ok((0..pattern_k).collect()),
        Some(s) => s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::structure(format!("bad class map entry `{part}`")))
            })
            .collect(),
    }
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d2: f64,
    #[arg(long)]
    pub d3: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output complex file
    #[arg(long)]
    pub out: PathBuf,
    /// JSON provenance sidecar
    #[arg(long)]
    pub provenance: Option<PathBuf>,
    /// Planted override: class index
    #[arg(long)]
    pub planted_class: Option<usize>,
    /// Planted override: first this many vertices of the class
    #[arg(long)]
    pub planted_count: Option<usize>,
    /// Planted override: hyperedge probability on triangles meeting the subset
    #[arg(long)]
    pub planted_d3: Option<f64>,
}

pub fn gen(args: &GenArgs) -> CmdResult {
    let params = HostParams {
        k: args.k,
        n: args.n,
        d2: args.d2,
        d3: args.d3,
        seed: args.seed,
    };
    let (complex, provenance) =
        match (args.planted_class, args.planted_count, args.planted_d3) {
            (Some(class), Some(count), Some(d3_override)) => {
                let spec = PlantingSpec {
                    class,
                    vertices: (0..count).collect(),
                    d3_override,
                };
                planted_host(&params, &spec)?
            }
            (None, None, None) => {
                let complex = random_host(&params)?;
                let prov = host_provenance(&params, &complex);
                (complex, prov)
            }
            _ => return Err(Error::domain(
                "planted generation needs all of --planted-class, --planted-count, --planted-d3",
            )),
        };
    write_out(&args.out, &serialize_complex(&complex))?;
    if let Some(path) = &args.provenance {
        let text = serde_json::to_string_pretty(&provenance)
            .map_err(|e| Error::structure(e.to_string()))?;
        write_out(path, &text)?;
    }
    Ok(Verdict::Pass)
}

#[derive(Args)]
pub struct CheckGraphRegArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
    /// Target density for the (d, delta) notion; omit for the deviation notion
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1000)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn check_graph_reg(args: &CheckGraphRegArgs) -> CmdResult {
    let complex = parse_complex(&read(&args.input)?)?;
    let mode = check_mode(args.mode, args.budget);
    let verdict = match args.d {
        Some(d) => check_d_delta_regular(
            complex.graph(),
            args.i,
            args.j,
            d,
            args.delta,
            mode,
            args.seed,
        )?,
        None => check_delta_regular(complex.graph(), args.i, args.j, args.delta, mode, args.seed)?,
    };
    let pass = verdict.passes();
    emit(
        &json!({
            "check": "graph-regularity",
            "notion": if args.d.is_some() { "d-delta" } else { "delta" },
            "pair": [args.i, args.j],
            "verdict": verdict,
        }),
        &args.json_out,
    )?;
    Ok(if pass { Verdict::Pass } else { Verdict::Fail })
}

#[derive(Args)]
pub struct CheckTriadRegArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Class triple, e.g. "0,1,2"
    #[arg(long)]
    pub classes: String,
    #[arg(long)]
    pub d3: Option<f64>,
    #[arg(long)]
    pub delta3: f64,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "induced")]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 200)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn check_triad_reg(args: &CheckTriadRegArgs) -> CmdResult {
    let complex = parse_complex(&read(&args.input)?)?;
    let classes: Vec<usize> = args
        .classes
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::structure("bad class index"))
        })
        .collect::<Result<_, _>>()?;
    if classes.len() != 3 {
        return Err(Error::domain("--classes needs exactly three indices"));
    }
    let (triad, hyper) = triad_of_complex(&complex, classes[0], classes[1], classes[2])?;
    let density = triad_density(&hyper, &triad);
    let d3 = args.d3.unwrap_or_else(|| density.to_f64().unwrap_or(0.0));
    let verdict = hyperreg::triad::check_triad_regular(
        &hyper,
        &triad,
        d3,
        args.delta3,
        args.r,
        args.strategy.into(),
        args.budget,
        args.seed,
    )?;
    let pass = verdict.regular;
    emit(
        &json!({
            "check": "triad-regularity",
            "classes": classes,
            "d3": d3,
            "density": format!("{}/{}", density.numer(), density.denom()),
            "verdict": verdict,
        }),
        &args.json_out,
    )?;
    Ok(if pass { Verdict::Pass } else { Verdict::Fail })
}

#[derive(Args)]
pub struct CheckComplexRegArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub d3: f64,
    #[arg(long)]
    pub delta3: f64,
    #[arg(long)]
    pub d2: f64,
    #[arg(long)]
    pub delta2: f64,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "induced")]
    pub strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 200)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn check_complex_reg(args: &CheckComplexRegArgs) -> CmdResult {
    let complex = parse_complex(&read(&args.input)?)?;
    let strategies = Strategies {
        graph_mode: check_mode(args.mode, args.budget),
        triad_strategy: args.strategy.into(),
        triad_budget: args.budget,
        seed: args.seed,
    };
    let report = hyperreg::triad::check_complex_regular(
        &complex,
        args.d3,
        args.delta3,
        args.d2,
        args.delta2,
        args.r,
        strategies,
    )?;
    let pass = report.regular;
    emit(&report, &args.json_out)?;
    Ok(if pass { Verdict::Pass } else { Verdict::Fail })
}

#[derive(Args)]
pub struct CountArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub host: PathBuf,
    /// Count copies of the underlying graph only
    #[arg(long)]
    pub graph_only: bool,
    /// Pattern class -> host class, e.g. "0,1,2" (identity by default)
    #[arg(long)]
    pub class_map: Option<String>,
    /// Densities for the predicted count (host class sizes must be equal)
    #[arg(long)]
    pub d2: Option<f64>,
    #[arg(long)]
    pub d3: Option<f64>,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn count(args: &CountArgs) -> CmdResult {
    let pattern = parse_complex(&read(&args.pattern)?)?;
    let host = parse_complex(&read(&args.host)?)?;
    let map = parse_class_map(&args.class_map, pattern.k())?;
    let count = if args.graph_only {
        count_graph_copies(&pattern, &map, &host)?
    } else {
        count_copies(&pattern, &map, &host)?
    };
    let mut report = json!({
        "pattern": args.pattern.display().to_string(),
        "host": args.host.display().to_string(),
        "count": count.to_string(),
    });
    if let (Some(d2), Some(d3)) = (args.d2, args.d3) {
        let n = host.class_sizes()[0];
        if host.class_sizes().iter().all(|&m| m == n) {
            let predicted = predicted_count(&pattern, n, d2, d3)?;
            let ratio = count.to_f64().map(|c| c / predicted);
            report["predicted"] = json!(predicted);
            report["ratio"] = json!(ratio);
        }
    }
    emit(&report, &args.json_out)?;
    Ok(Verdict::Pass)
}

#[derive(Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d2: f64,
    #[arg(long)]
    pub d3: f64,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn predict(args: &PredictArgs) -> CmdResult {
    let pattern = parse_complex(&read(&args.pattern)?)?;
    let predicted = predicted_count(&pattern, args.n, args.d2, args.d3)?;
    emit(
        &json!({
            "pattern": args.pattern.display().to_string(),
            "n": args.n,
            "predicted": predicted,
        }),
        &args.json_out,
    )?;
    Ok(Verdict::Pass)
}

#[derive(Args)]
pub struct VerifyCountingArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d2: f64,
    #[arg(long)]
    pub d3: f64,
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    /// Pattern complex file; the complete 3-vertex complex by default
    #[arg(long)]
    pub pattern: Option<PathBuf>,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

fn default_k3_pattern() -> Complex {
    hyperreg::close_complex(
        vec![1, 1, 1],
        [[Vertex::new(0, 0), Vertex::new(1, 0), Vertex::new(2, 0)]],
        [],
    )
    .expect("static pattern")
}

pub fn verify_counting(args: &VerifyCountingArgs) -> CmdResult {
    let pattern = match &args.pattern {
        Some(path) => parse_complex(&read(path)?)?,
        None => default_k3_pattern(),
    };
    let map: Vec<usize> = (0..pattern.k()).collect();
    if pattern.k() > args.k {
        return Err(Error::domain("pattern has more classes than the host"));
    }
    let predicted = predicted_count(&pattern, args.n, args.d2, args.d3)?;
    let mut per_seed = Vec::new();
    let mut ratios = Vec::new();
    for seed in 0..args.seeds {
        let host = random_host(&HostParams {
            k: args.k,
            n: args.n,
            d2: args.d2,
            d3: args.d3,
            seed,
        })?;
        let count = count_copies(&pattern, &map, &host)?;
        let ratio = count.to_f64().unwrap_or(f64::NAN) / predicted;
        ratios.push(ratio);
        per_seed.push(json!({ "seed": seed, "count": count.to_string(), "ratio": ratio }));
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
    emit(
        &json!({
            "check": "verify-counting",
            "predicted": predicted,
            "per_seed": per_seed,
            "mean_ratio": mean,
        }),
        &args.json_out,
    )?;
    Ok(Verdict::Pass)
}

#[derive(Args)]
pub struct VerifyExtensionArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d2: f64,
    #[arg(long)]
    pub d3: f64,
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    /// Outlier window half-width around the predicted extension count
    #[arg(long, default_value_t = 0.25)]
    pub beta: f64,
    /// Moment-premise tolerance
    #[arg(long, default_value_t = 0.2)]
    pub delta: f64,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

/// Extension counts of edge copies to full 3-vertex complexes, run through
/// the two-moment concentration checker.
pub fn verify_extension(args: &VerifyExtensionArgs) -> CmdResult {
    let pattern = default_k3_pattern();
    let map: Vec<usize> = (0..3).collect();
    let sub = [Vertex::new(0, 0), Vertex::new(1, 0)];
    let predicted = predicted_extension(&pattern, &sub, args.n, args.d2, args.d3)?;
    let mut per_seed = Vec::new();
    for seed in 0..args.seeds {
        let host = random_host(&HostParams {
            k: args.k,
            n: args.n,
            d2: args.d2,
            d3: args.d3,
            seed,
        })?;
        let mut values = Vec::new();
        enumerate_sub_copies(&pattern, &map, &sub, &host, |phi| {
            let ext = count_extensions(&pattern, &map, phi, &host).expect("copy is valid");
            values.push(ext.to_f64().unwrap_or(f64::NAN));
            ControlFlow::Continue(())
        })?;
        let report = moment_concentration(&values, predicted, args.delta, args.beta);
        per_seed.push(json!({ "seed": seed, "report": report }));
    }
    emit(
        &json!({
            "check": "verify-extension",
            "predicted_extension": predicted,
            "beta": args.beta,
            "delta": args.delta,
            "per_seed": per_seed,
        }),
        &args.json_out,
    )?;
    Ok(Verdict::Pass)
}

#[derive(Args)]
pub struct PartitionCheckArgs {
    /// Number of vertices to slice (alternative to --colouring)
    #[arg(long)]
    pub m: Option<usize>,
    /// Colouring file; its red subhypergraph feeds the triad-mass check
    #[arg(long)]
    pub colouring: Option<PathBuf>,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.1)]
    pub eps1: f64,
    #[arg(long, default_value_t = 0.3)]
    pub eps2: f64,
    #[arg(long, default_value_t = 0.3)]
    pub delta3: f64,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "sampled")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "induced")]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 200)]
    pub budget: u64,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn partition_check(args: &PartitionCheckArgs) -> CmdResult {
    let (m, hypergraph) = match (&args.colouring, args.m) {
        (Some(path), _) => {
            let colouring = parse_colouring(&read(path)?)?;
            let red = colouring.monochromatic_subhypergraph(0);
            (colouring.m(), Some(red))
        }
        (None, Some(m)) => (m, None),
        (None, None) => return Err(Error::domain("need --m or --colouring")),
    };
    let partition = random_slicing_partition(m, args.t, args.ell, args.seed)?;
    let check = check_partition(
        &partition,
        args.eps1,
        args.eps2,
        check_mode(args.mode, args.budget),
        args.seed,
    )?;
    let mut pass = check.iv_ok && check.v_ok;
    let mass = match &hypergraph {
        Some(g) => {
            let mass = check_regular_partition(
                g,
                &partition,
                args.delta3,
                args.r,
                args.strategy.into(),
                args.budget,
                args.seed,
            )?;
            pass = pass && mass.pass;
            Some(mass)
        }
        None => None,
    };
    emit(
        &json!({ "check": check, "regular_mass": mass }),
        &args.json_out,
    )?;
    Ok(if pass { Verdict::Pass } else { Verdict::Fail })
}

#[derive(Args)]
pub struct ReduceArgs {
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.1)]
    pub eps1: f64,
    #[arg(long, default_value_t = 0.3)]
    pub eps2: f64,
    #[arg(long, default_value_t = 0.5)]
    pub eps3: f64,
    #[arg(long, default_value_t = 0.3)]
    pub delta3: f64,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "sampled")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "induced")]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 200)]
    pub budget: u64,
    /// Reduced hypergraph output file
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn reduce(args: &ReduceArgs) -> CmdResult {
    let colouring = parse_colouring(&read(&args.colouring)?)?;
    let red = colouring.monochromatic_subhypergraph(0);
    let partition = random_slicing_partition(colouring.m(), args.t, args.ell, args.seed)?;
    let classification = classify_pairs_triples(
        &red,
        &partition,
        args.eps1,
        args.eps2,
        args.eps3,
        args.delta3,
        args.r,
        check_mode(args.mode, args.budget),
        args.strategy.into(),
        args.budget,
        args.seed,
    )?;
    let reduced = reduced_hypergraph(&classification, partition.t());
    if let Some(path) = &args.out {
        write_out(path, &serialize_hypergraph(&reduced))?;
    }
    emit(
        &json!({
            "classification": classification,
            "reduced_edges": reduced.edge_count(),
        }),
        &args.json_out,
    )?;
    Ok(Verdict::Pass)
}

#[derive(Args)]
pub struct TuranArgs {
    /// Flat hypergraph file (n/tri lines)
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0.9)]
    pub c0: f64,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn turan(args: &TuranArgs) -> CmdResult {
    let hypergraph = parse_hypergraph(&read(&args.input)?)?;
    let outcome = turan_clique(&hypergraph, args.k, args.c0)?;
    let found = outcome.clique.is_some();
    emit(&outcome, &args.json_out)?;
    Ok(if found { Verdict::Pass } else { Verdict::Fail })
}

#[derive(Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub host: PathBuf,
    #[arg(long)]
    pub class_map: Option<String>,
    /// Pattern class-size slack: |X_i| <= c * n
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, value_enum, default_value = "peel")]
    pub order: EmbedOrderArg,
    /// Embedding output file (`map class pat host` lines)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum EmbedOrderArg {
    Peel,
    Degree,
}

pub fn embed(args: &EmbedArgs) -> CmdResult {
    let pattern = parse_complex(&read(&args.pattern)?)?;
    let host = parse_complex(&read(&args.host)?)?;
    let map = parse_class_map(&args.class_map, pattern.k())?;
    let config = EmbedderConfig {
        c: args.c,
        ..EmbedderConfig::default()
    };
    let strategy = match args.order {
        EmbedOrderArg::Peel => EmbedStrategy::PeelOrder,
        EmbedOrderArg::Degree => EmbedStrategy::DegreeOrder,
    };
    match hyperreg::embed::embed(&pattern, &map, &host, &config, strategy)? {
        EmbedOutcome::Embedded(embedding) => {
            hyperreg::embed::validate_embedding(&pattern, &map, &host, &embedding.map)?;
            let mut lines = String::new();
            for &(p, h) in &embedding.map {
                lines.push_str(&format!("map {} {} {}\n", p.class, p.index, h.index));
            }
            print!("{lines}");
            if let Some(path) = &args.out {
                write_out(path, &lines)?;
            }
            if args.json_out.is_some() {
                emit(
                    &json!({ "embedded": true, "map": embedding.map }),
                    &args.json_out,
                )?;
            }
            Ok(Verdict::Pass)
        }
        EmbedOutcome::Failed(trace) => {
            emit(
                &json!({ "embedded": false, "trace": trace }),
                &args.json_out,
            )?;
            Ok(Verdict::Fail)
        }
    }
}

#[derive(Args)]
pub struct RamseyArgs {
    /// Flat hypergraph pattern file
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub m_max: usize,
    /// Search-node budget
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u64,
    /// Directory for avoiding-colouring certificates
    #[arg(long)]
    pub cert_out: Option<PathBuf>,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn ramsey(args: &RamseyArgs) -> CmdResult {
    let pattern = parse_hypergraph(&read(&args.pattern)?)?;
    let outcome = exact_ramsey(&pattern, args.m_max, args.budget)?;
    for (m, colouring) in &outcome.certificates {
        if !colouring_avoids(&pattern, colouring) {
            return Err(Error::structure(format!(
                "internal: certificate at m = {m} fails re-validation"
            )));
        }
        if let Some(dir) = &args.cert_out {
            fs::create_dir_all(dir)
                .map_err(|e| Error::structure(format!("cannot create {}: {e}", dir.display())))?;
            write_out(
                &dir.join(format!("avoiding_m{m}.col")),
                &serialize_colouring(colouring),
            )?;
        }
    }
    emit(&outcome, &args.json_out)?;
    Ok(Verdict::Pass)
}

#[derive(Args)]
pub struct PipelineArgs {
    /// Flat hypergraph pattern to embed
    #[arg(long)]
    pub pattern: PathBuf,
    /// Host size; ignored when --colouring is given
    #[arg(long)]
    pub m: Option<usize>,
    /// Colouring of the complete hypergraph; random when omitted
    #[arg(long)]
    pub colouring: Option<PathBuf>,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    /// Clique order to search for in the reduced hypergraph
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.1)]
    pub eps1: f64,
    #[arg(long, default_value_t = 0.3)]
    pub eps2: f64,
    #[arg(long, default_value_t = 0.5)]
    pub eps3: f64,
    #[arg(long, default_value_t = 0.4)]
    pub delta3: f64,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "sampled")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "induced")]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 100)]
    pub budget: u64,
    #[arg(long, default_value_t = 20)]
    pub retries: u64,
    /// Thin the winning hypergraph on the clique triads towards density 1/2
    /// before embedding (per-triangle subsampling, seeded)
    #[arg(long)]
    pub thin: bool,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

/// The whole flow at toy scale: colour, slice, classify, reduce, find a
/// clique, select a triad system, colour the clique by density, find a
/// monochromatic subclique, assign the pattern greedily, embed into the
/// winning colour. Soft check verdicts are logged; a stage that cannot
/// produce its output ends the run with the report so far.
pub fn pipeline(args: &PipelineArgs) -> CmdResult {
    let mut stages: Vec<serde_json::Value> = Vec::new();
    let emit_and_fail = |stages: &[serde_json::Value], json_out: &Option<PathBuf>| -> CmdResult {
        emit(&json!({ "completed": false, "stages": stages }), json_out)?;
        Ok(Verdict::Fail)
    };

    let pattern_flat = parse_hypergraph(&read(&args.pattern)?)?;
    let max_degree = pattern_flat.max_degree();
    let chi = 2 * max_degree + 1;

    // stage 1: the colouring and its red/blue split
    let colouring = match &args.colouring {
        Some(path) => parse_colouring(&read(path)?)?,
        None => {
            let m = args
                .m
                .ok_or_else(|| Error::domain("need --m or --colouring"))?;
            let keyed = KeyedRng::new(args.seed ^ 0xC01);
            let colours: Vec<u8> = (0..triples_of(m).len())
                .map(|i| (keyed.word(1, i as u64) & 1) as u8)
                .collect();
            TripleColouring::new(m, colours)?
        }
    };
    let m = colouring.m();
    let mut red = colouring.monochromatic_subhypergraph(0);
    let mut blue = colouring.monochromatic_subhypergraph(1);
    let mut swapped = false;
    if red.edge_count() < blue.edge_count() {
        std::mem::swap(&mut red, &mut blue);
        swapped = true;
    }
    stages.push(json!({
        "stage": "colouring",
        "ok": true,
        "m": m,
        "red_edges": red.edge_count(),
        "blue_edges": blue.edge_count(),
        "swapped": swapped,
    }));

    // stage 2: random slicing partition
    let partition = random_slicing_partition(m, args.t, args.ell, args.seed)?;
    stages.push(json!({
        "stage": "partition",
        "ok": true,
        "t": partition.t(),
        "n": partition.cluster_size(),
        "exceptional": partition.exceptional().len(),
    }));

    // stage 3: validity and regular-mass verdicts (soft)
    let check = check_partition(
        &partition,
        args.eps1,
        args.eps2,
        check_mode(args.mode, args.budget),
        args.seed,
    )?;
    let mass = check_regular_partition(
        &red,
        &partition,
        args.delta3,
        args.r,
        args.strategy.into(),
        args.budget,
        args.seed,
    )?;
    stages.push(json!({
        "stage": "partition-check",
        "ok": check.iv_ok && check.v_ok && mass.pass,
        "iv_ok": check.iv_ok,
        "v_ok": check.v_ok,
        "mass": mass,
    }));

    // stage 4: classification and the reduced hypergraph
    let classification = classify_pairs_triples(
        &red,
        &partition,
        args.eps1,
        args.eps2,
        args.eps3,
        args.delta3,
        args.r,
        check_mode(args.mode, args.budget),
        args.strategy.into(),
        args.budget,
        args.seed,
    )?;
    let reduced = reduced_hypergraph(&classification, partition.t());
    stages.push(json!({
        "stage": "reduce",
        "ok": reduced.edge_count() > 0,
        "good_triples": classification.good_triples.len(),
        "bad_triple_fraction": classification.bad_triple_fraction,
        "reference_bound": classification.reference_bound,
    }));

    // stage 5: clique in the reduced hypergraph
    let k = args.k.unwrap_or(chi);
    let turan_out = turan_clique(&reduced, k, 0.9)?;
    let Some(clique) = turan_out.clique.clone() else {
        stages.push(json!({ "stage": "turan", "ok": false, "k": k, "density": turan_out.density }));
        return emit_and_fail(&stages, &args.json_out);
    };
    stages.push(json!({ "stage": "turan", "ok": true, "k": k, "clique": clique, "density": turan_out.density }));

    // stage 6: one regular slice per clique pair
    let params = SelectParams {
        d2: 1.0 / args.ell as f64,
        delta2: args.eps2.sqrt(),
        delta3: args.delta3,
        r: args.r,
        graph_mode: check_mode(args.mode, args.budget),
        triad_strategy: args.strategy.into(),
        triad_budget: args.budget,
    };
    let selection =
        select_triad_system(&red, &partition, &clique, &params, args.seed, args.retries)?;
    let Some(system) = selection.accepted.clone() else {
        stages.push(json!({ "stage": "select-triads", "ok": false, "failure": selection.failure }));
        return emit_and_fail(&stages, &args.json_out);
    };
    stages.push(json!({
        "stage": "select-triads",
        "ok": true,
        "retries": selection.retries_used,
        "system": system,
    }));

    // stage 7: density colouring of the clique and the complement coupling
    let coloured = colour_clique_by_density(&red, &partition, &clique, &system)?;
    let couplings = blue_complement_densities(&red, &partition, &clique, &system)?;
    let coupling_ok = couplings.iter().all(|c| c.coupled);
    stages.push(json!({
        "stage": "density-colouring",
        "ok": coupling_ok,
        "triples": coloured,
    }));

    // stage 8: monochromatic subclique of order 2*Delta + 1
    let mono = find_mono_subclique(&coloured, &clique, chi);
    let Some((mono_clusters, winning)) = mono else {
        stages.push(json!({ "stage": "mono-clique", "ok": false, "needed": chi }));
        return emit_and_fail(&stages, &args.json_out);
    };
    stages.push(json!({
        "stage": "mono-clique",
        "ok": true,
        "clusters": mono_clusters,
        "colour": winning,
    }));

    // stage 9: greedy assignment of the pattern to the mono clusters
    let assignment = assign_to_classes(&pattern_flat, chi)?;
    let (pattern_complex, placed) =
        pattern_complex_from_assignment(&pattern_flat, &assignment, chi)?;
    stages.push(json!({ "stage": "assign", "ok": true, "assignment": assignment }));

    // stage 10: embed into the winning colour on the chosen triad system,
    // optionally after thinning its triads towards density 1/2
    let mut winning_hypergraph = if winning == "red" {
        red.clone()
    } else {
        blue.clone()
    };
    if args.thin {
        let thin_seed = args.seed ^ 0x7417;
        winning_hypergraph = hyperreg::partition::thin_to_half(
            &winning_hypergraph,
            &partition,
            &mono_clusters,
            &system,
            thin_seed,
        )?;
        stages.push(json!({
            "stage": "thin",
            "ok": true,
            "seed": thin_seed,
            "remaining_edges": winning_hypergraph.edge_count(),
        }));
    }
    let host = host_complex_from_system(&winning_hypergraph, &partition, &mono_clusters, &system)?;
    let map: Vec<usize> = (0..chi).collect();
    let config = EmbedderConfig::default();
    let outcome = match hyperreg::embed::embed(
        &pattern_complex,
        &map,
        &host,
        &config,
        EmbedStrategy::PeelOrder,
    ) {
        Ok(out) => out,
        Err(e) => {
            stages.push(json!({ "stage": "embed", "ok": false, "precondition": e.to_string() }));
            return emit_and_fail(&stages, &args.json_out);
        }
    };
    match outcome {
        EmbedOutcome::Embedded(embedding) => {
            hyperreg::embed::validate_embedding(&pattern_complex, &map, &host, &embedding.map)?;
            // translate back to original vertex ids of the colouring and
            // confirm the copy is monochromatic there
            let mut original = Vec::new();
            for (flat_id, pv) in placed.iter().enumerate() {
                let hv = embedding
                    .map
                    .iter()
                    .find(|&&(p, _)| p == *pv)
                    .map(|&(_, h)| h)
                    .expect("embedding covers the pattern");
                let cluster = mono_clusters[hv.class];
                original.push((flat_id, partition.cluster(cluster)[hv.index]));
            }
            let target = if winning == "red" { 0 } else { 1 };
            let target = if swapped { 1 - target } else { target };
            let mono_ok = pattern_flat.edges().all(|t| {
                let a = original[t[0]].1;
                let b = original[t[1]].1;
                let c = original[t[2]].1;
                colouring.colour(a, b, c) == target
            });
            stages.push(json!({
                "stage": "embed",
                "ok": mono_ok,
                "vertices": original,
                "colour": target,
            }));
            let completed = mono_ok;
            emit(
                &json!({ "completed": completed, "stages": stages }),
                &args.json_out,
            )?;
            Ok(if completed {
                Verdict::Pass
            } else {
                Verdict::Fail
            })
        }
        EmbedOutcome::Failed(trace) => {
            stages.push(json!({ "stage": "embed", "ok": false, "trace": trace }));
            emit_and_fail(&stages, &args.json_out)
        }
    }
}

/// A chi-subset of the clique whose triples all carry one colour.
fn find_mono_subclique(
    coloured: &[hyperreg::partition::ColouredTriple],
    clique: &[usize],
    chi: usize,
) -> Option<(Vec<usize>, &'static str)> {
    let colour_of = |a: usize, b: usize, c: usize| -> TriadColour {
        let mut key = [a, b, c];
        key.sort_unstable();
        coloured
            .iter()
            .find(|ct| ct.clusters == key)
            .map(|ct| ct.colour)
            .expect("clique triple coloured")
    };
    let k = clique.len();
    if chi > k {
        return None;
    }
    if chi < 3 {
        return Some((clique[..chi].to_vec(), "red"));
    }
    let mut subset: Vec<usize> = (0..chi).collect();
    loop {
        for want in [TriadColour::Red, TriadColour::Blue] {
            let all = subset.iter().enumerate().all(|(ai, &a)| {
                subset[ai + 1..].iter().enumerate().all(|(bi, &b)| {
                    subset[ai + 1 + bi + 1..]
                        .iter()
                        .all(|&c| colour_of(clique[a], clique[b], clique[c]) == want)
                })
            });
            if all {
                let clusters: Vec<usize> = subset.iter().map(|&i| clique[i]).collect();
                return Some((
                    clusters,
                    if want == TriadColour::Red {
                        "red"
                    } else {
                        "blue"
                    },
                ));
            }
        }
        // next combination
        let mut i = chi;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if subset[i] != i + k - chi {
                subset[i] += 1;
                for j in (i + 1)..chi {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}
