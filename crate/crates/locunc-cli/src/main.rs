use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use locunc::adr::{build_adr_model, serialize_model};
use locunc::approx::certify_ratio;
use locunc::approx::tight;
use locunc::evalc::evaluators;
use locunc::experiment::{run_experiment, ExperimentConfig, FamilySpec};
use locunc::generators::{gen_format, gen_planar_roadnet, RoadNetParams};
use locunc::io::{instance_to_string, parse_instance};
use locunc::reductions::{gen_partition_mst, gen_partition_sp, PartitionInput};
use locunc::robust_cut::{cutting_plane, log_csv};
use locunc::solvers::{solvers, SolveContext};
use locunc::sp_robust::{robust_sp_exact, robust_sp_fptas, stats_csv_row, SpOutcome};
use locunc::{Caps, EdgeSubset, FamilyDescriptor, LocUncInstance};

#[derive(Parser)]
#[command(name = "locunc", version, about = "Robust combinatorial optimisation under location uncertainty")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance and write it in the text format.
    Gen(GenArgs),
    /// Solve an instance with one of the registered algorithms.
    Solve(SolveArgs),
    /// Worst-case cost c(F) of an edge set.
    Evalc(EvalArgs),
    /// Compare c^max(F)/c(F) with the proven bound.
    Certify(EvalArgs),
    /// Robust s-t path: exact profile DP, or the FPTAS with --epsilon.
    Sp(SpArgs),
    /// Write the decision-rule conic model of a Euclidean instance.
    AdrEmit(AdrArgs),
    /// Run a batch experiment and write CSV files.
    Experiment(ExpArgs),
}

#[derive(Args, Clone)]
struct CapArgs {
    #[arg(long = "cap-family")]
    cap_family: Option<u64>,
    #[arg(long = "cap-scenarios")]
    cap_scenarios: Option<u64>,
    #[arg(long = "cap-dp-table")]
    cap_dp_table: Option<u64>,
    #[arg(long = "cap-treewidth")]
    cap_treewidth: Option<usize>,
    #[arg(long = "cap-steiner-terminals")]
    cap_steiner_terminals: Option<usize>,
    #[arg(long = "cap-subset-edges")]
    cap_subset_edges: Option<usize>,
    #[arg(long = "cap-pmedian-sites")]
    cap_pmedian_sites: Option<usize>,
    #[arg(long = "cap-pmedian-subsets")]
    cap_pmedian_subsets: Option<u64>,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            family_size: self.cap_family.unwrap_or(d.family_size),
            scenarios: self.cap_scenarios.unwrap_or(d.scenarios),
            dp_table: self.cap_dp_table.unwrap_or(d.dp_table),
            treewidth: self.cap_treewidth.unwrap_or(d.treewidth),
            steiner_terminals: self.cap_steiner_terminals.unwrap_or(d.steiner_terminals),
            subset_edges: self.cap_subset_edges.unwrap_or(d.subset_edges),
            pmedian_sites: self.cap_pmedian_sites.unwrap_or(d.pmedian_sites),
            pmedian_subsets: self.cap_pmedian_subsets.unwrap_or(d.pmedian_subsets),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Format,
    Roadnet,
    TightPath,
    TightCycle,
    TightTriangle,
    TightClique,
    TightStar,
    CenterTrap,
    PartitionSp,
    PartitionMst,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    /// Number of format copies.
    #[arg(long, default_value_t = 1)]
    kappa: usize,
    /// Vertex count (road networks, tight instances).
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Edge count of the road network.
    #[arg(long, default_value_t = 30)]
    m: usize,
    #[arg(long, default_value_t = 5)]
    clients: usize,
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, default_value_t = 2)]
    p: usize,
    #[arg(long, default_value_t = 2)]
    sigma: usize,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// ε of the center-heuristic trap.
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// PARTITION integers, comma separated.
    #[arg(long, value_delimiter = ',')]
    partition: Vec<i64>,
    /// Scale constant K; defaults to the smallest valid value.
    #[arg(long)]
    k: Option<i64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, default_value = "exact")]
    algo: String,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Directory for the cutting-plane log (exact only).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct EvalArgs {
    instance: PathBuf,
    /// Edge ids of F, comma separated; default: the single member of an
    /// explicit family, otherwise all edges.
    #[arg(long, value_delimiter = ',')]
    edges: Vec<usize>,
    #[arg(long, default_value = "auto")]
    evaluator: String,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct SpArgs {
    instance: PathBuf,
    #[arg(long)]
    epsilon: Option<f64>,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct AdrArgs {
    instance: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpFamily {
    Format,
    Roadnet,
    PartitionSp,
}

#[derive(Args)]
struct ExpArgs {
    #[arg(long, value_enum)]
    family: ExpFamily,
    #[arg(long, default_value_t = 1)]
    kappa: usize,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 30)]
    m: usize,
    #[arg(long, default_value_t = 5)]
    clients: usize,
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, default_value_t = 2)]
    p: usize,
    /// Largest PARTITION integer.
    #[arg(long, default_value_t = 6)]
    amax: i64,
    #[arg(long, default_value_t = 2)]
    sigma: usize,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, value_delimiter = ',', default_value = "exact,center,dmax")]
    algo: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
    /// Write wall-clock seconds (otherwise `NA`, so files are reproducible).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    caps: CapArgs,
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load(p: &Path) -> Result<LocUncInstance> {
    parse_instance(p).with_context(|| format!("reading {}", p.display()))
}

fn edges_arg(inst: &LocUncInstance, edges: &[usize]) -> Result<EdgeSubset> {
    if let Some(&e) = edges.iter().find(|&&e| e >= inst.graph().m()) {
        bail!("edge id {e} out of range");
    }
    Ok(match (edges.is_empty(), inst.family()) {
        (false, _) => EdgeSubset::new(edges.to_vec()),
        (true, FamilyDescriptor::ExplicitList(l)) if l.len() == 1 => l[0].clone(),
        (true, _) => EdgeSubset::all(inst.graph()),
    })
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn gen(a: GenArgs) -> Result<()> {
    let partition = || -> Result<PartitionInput> {
        if a.partition.is_empty() {
            bail!("--partition a1,a2,... is required");
        }
        Ok(PartitionInput::new(a.partition.clone(), 0)?)
    };
    let inst = match a.family {
        GenFamily::Format => gen_format(a.kappa, a.delta, a.sigma, a.seed)?,
        GenFamily::Roadnet => {
            let p = RoadNetParams { n: a.n, m: a.m, clients: a.clients, sites: a.sites, p: a.p, sigma: a.sigma };
            gen_planar_roadnet(&p, a.seed)?.0
        }
        GenFamily::TightPath => tight::gen_tight_path(a.n)?.0,
        GenFamily::TightCycle => tight::gen_tight_cycle(a.n)?.0,
        GenFamily::TightTriangle => tight::gen_tight_triangle()?.0,
        GenFamily::TightClique => tight::gen_tight_clique(a.n)?.0,
        GenFamily::TightStar => tight::gen_tight_star(a.n)?.0,
        GenFamily::CenterTrap => tight::gen_center_trap(a.epsilon)?,
        GenFamily::PartitionSp => {
            let mut inp = partition()?;
            inp.k = a.k.unwrap_or_else(|| PartitionInput::min_k_sp(&inp.a));
            gen_partition_sp(&inp)?.instance
        }
        GenFamily::PartitionMst => {
            let mut inp = partition()?;
            inp.k = a.k.unwrap_or_else(|| PartitionInput::min_k_mst(&inp.a));
            gen_partition_mst(&inp)?.instance
        }
    };
    emit(&instance_to_string(&inst), a.out.as_deref())
}

fn solve(a: SolveArgs) -> Result<()> {
    let inst = load(&a.instance)?;
    let ctx = SolveContext { caps: a.caps.caps(), epsilon: a.epsilon };
    if a.algo == "exact" {
        let out = cutting_plane(&inst, None, &locunc::evalc::Auto, &ctx.caps)?;
        if let Some(dir) = &a.out_dir {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join("cut_log.csv"), log_csv(&out.state, a.timings)?)?;
        }
        println!("algorithm,cost,iterations,edges");
        println!("exact,{},{},{}", out.value, out.state.log.len(), join(out.f.edges()));
        return Ok(());
    }
    let sol = solvers().get(&a.algo)?.solve(&inst, &ctx)?;
    println!("algorithm,cost,iterations,edges");
    println!("{},{},{},{}", a.algo, sol.cost, sol.iterations, join(sol.f.edges()));
    Ok(())
}

fn evalc(a: EvalArgs) -> Result<()> {
    let inst = load(&a.instance)?;
    let f = edges_arg(&inst, &a.edges)?;
    let r = evaluators().get(&a.evaluator)?.evaluate(&inst, &f, &a.caps.caps())?;
    println!("value,cmax,witness");
    println!("{},{},{}", r.value, inst.cmax(&f), join(&r.witness.0));
    Ok(())
}

fn certify(a: EvalArgs) -> Result<()> {
    let inst = load(&a.instance)?;
    let f = edges_arg(&inst, &a.edges)?;
    let c = certify_ratio(&inst, &f, &a.caps.caps())?;
    println!("family,cmax,c,observed,bound,structure,hypothesis,ok");
    println!(
        "{},{},{},{},{},{:?},{:?},{}",
        inst.family().name(),
        c.cmax,
        c.c,
        c.observed,
        c.bound.value,
        c.bound.structure,
        c.bound.hypothesis,
        c.ok
    );
    Ok(())
}

fn sp(a: SpArgs) -> Result<()> {
    let inst = load(&a.instance)?;
    let caps = a.caps.caps();
    let (mode, out): (String, SpOutcome) = match a.epsilon {
        Some(eps) => (format!("fptas({eps})"), robust_sp_fptas(&inst, eps, &caps)?.outcome),
        None => ("exact".into(), robust_sp_exact(&inst, &caps)?),
    };
    println!("mode,value,vertices,n_profiles,n_val,table_entries,table_bytes,hops,pruned");
    println!("{},{},{},{}", mode, out.value, join(&out.vertices), stats_csv_row(&out.stats).join(","));
    Ok(())
}

fn adr_emit(a: AdrArgs) -> Result<()> {
    let inst = load(&a.instance)?;
    let model = build_adr_model(&inst)?;
    emit(&serialize_model(&model), a.out.as_deref())
}

fn experiment(a: ExpArgs) -> Result<()> {
    let family = match a.family {
        ExpFamily::Format => FamilySpec::FormatKappa { kappa: a.kappa },
        ExpFamily::Roadnet => FamilySpec::PlanarRoadNet(RoadNetParams {
            n: a.n,
            m: a.m,
            clients: a.clients,
            sites: a.sites,
            p: a.p,
            sigma: a.sigma,
        }),
        ExpFamily::PartitionSp => FamilySpec::PartitionSp { n: a.n, amax: a.amax },
    };
    let cfg = ExperimentConfig {
        family,
        delta: a.delta,
        sigma: a.sigma,
        algorithms: a.algo,
        seed: a.seed,
        trials: a.trials,
        ctx: SolveContext { caps: a.caps.caps(), epsilon: a.epsilon },
        timings: a.timings,
    };
    let recs = run_experiment(&cfg, &a.out_dir)?;
    let failed = recs.iter().filter(|r| r.error.is_some()).count();
    eprintln!("{} runs, {} failed; wrote {}", recs.len(), failed, a.out_dir.display());
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Solve(a) => solve(a),
        Cmd::Evalc(a) => evalc(a),
        Cmd::Certify(a) => certify(a),
        Cmd::Sp(a) => sp(a),
        Cmd::AdrEmit(a) => adr_emit(a),
        Cmd::Experiment(a) => experiment(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
