//! Command-line driver: generation, regularity checks, exact counting,
//! partition reports, the toy pipeline, embedding and Ramsey search, with
//! JSON reports and reproducible seeds.
//!
//! Exit codes: 0 success/pass, 1 verdict failure (witness found, no clique,
//! embedding impossible, pipeline stage failed), 2 usage or structural
//! error.

mod cmds;
mod manifest;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hyperreg::density::CheckMode;
use hyperreg::triad::TriadStrategy;

#[derive(Parser)]
#[command(
    name = "hyperreg",
    version,
    about = "3-uniform hypergraph regularity toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum StrategyArg {
    Induced,
    EdgeSampled,
    ExhaustiveTiny,
}

impl From<StrategyArg> for TriadStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Induced => TriadStrategy::Induced,
            StrategyArg::EdgeSampled => TriadStrategy::EdgeSampled,
            StrategyArg::ExhaustiveTiny => TriadStrategy::ExhaustiveTiny,
        }
    }
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

pub fn check_mode(mode: ModeArg, budget: u64) -> CheckMode {
    match mode {
        ModeArg::Exhaustive => CheckMode::Exhaustive,
        ModeArg::Sampled => CheckMode::Sampled { budget },
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a random host complex (binomial model, optional planting)
    Gen(cmds::GenArgs),
    /// Check bipartite graph regularity of one class pair
    CheckGraphReg(cmds::CheckGraphRegArgs),
    /// Check triad regularity of one class triple
    CheckTriadReg(cmds::CheckTriadRegArgs),
    /// Check whole-complex regularity (all pairs and triples)
    CheckComplexReg(cmds::CheckComplexRegArgs),
    /// Count labelled partition-respecting copies of a pattern in a host
    Count(cmds::CountArgs),
    /// Predicted random-complex copy count
    Predict(cmds::PredictArgs),
    /// Copy counts against predictions over seeded random hosts
    VerifyCounting(cmds::VerifyCountingArgs),
    /// Extension-count concentration over seeded random hosts
    VerifyExtension(cmds::VerifyExtensionArgs),
    /// Slice a vertex set randomly and report partition validity
    PartitionCheck(cmds::PartitionCheckArgs),
    /// Classify pairs/triples and emit the reduced hypergraph
    Reduce(cmds::ReduceArgs),
    /// Search a hypergraph for a clique of the given order
    Turan(cmds::TuranArgs),
    /// Run the whole toy pipeline on a colouring of a complete hypergraph
    Pipeline(cmds::PipelineArgs),
    /// Find one embedding of a pattern complex into a host complex
    Embed(cmds::EmbedArgs),
    /// Exact Ramsey number of a tiny pattern, with certificates
    Ramsey(cmds::RamseyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("HYPERREG_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let started = std::time::Instant::now();
    let outcome = match &cli.command {
        Command::Gen(args) => cmds::gen(args),
        Command::CheckGraphReg(args) => cmds::check_graph_reg(args),
        Command::CheckTriadReg(args) => cmds::check_triad_reg(args),
        Command::CheckComplexReg(args) => cmds::check_complex_reg(args),
        Command::Count(args) => cmds::count(args),
        Command::Predict(args) => cmds::predict(args),
        Command::VerifyCounting(args) => cmds::verify_counting(args),
        Command::VerifyExtension(args) => cmds::verify_extension(args),
        Command::PartitionCheck(args) => cmds::partition_check(args),
        Command::Reduce(args) => cmds::reduce(args),
        Command::Turan(args) => cmds::turan(args),
        Command::Pipeline(args) => cmds::pipeline(args),
        Command::Embed(args) => cmds::embed(args),
        Command::Ramsey(args) => cmds::ramsey(args),
    };
    match outcome {
        Ok(verdict) => {
            manifest::log_manifest(started.elapsed());
            match verdict {
                cmds::Verdict::Pass => ExitCode::SUCCESS,
                cmds::Verdict::Fail => ExitCode::from(1),
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
