//! Batch driver: generate a family of random instances, run algorithms, and
//! write per-run records, mean timings and gap distribution curves.
//!
//! The curve for an algorithm is f(x) = 100 · #{instances with gap ≤ x} / N
//! where gap = cost / exact − 1, on the grid x ∈ {0, 0.5 %, …, 100 %} (plus
//! one row at the largest gap if it exceeds 100 %). Instances where either
//! the algorithm or the exact solver failed are left out of N.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{gen_format_with, gen_planar_roadnet_with, rng_for, RoadNetParams};
use crate::instance::LocUncInstance;
use crate::metric::TOL;
use crate::reductions::{gen_partition_sp, PartitionInput};
use crate::solvers::{solvers, SolveContext};
use rand::Rng;

#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    FormatKappa { kappa: usize },
    PlanarRoadNet(RoadNetParams),
    /// Robust s–t path on the PARTITION construction with n random a_i ∈ [1, amax].
    PartitionSp { n: usize, amax: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub family: FamilySpec,
    pub delta: f64,
    pub sigma: usize,
    pub algorithms: Vec<String>,
    pub seed: u64,
    pub trials: usize,
    pub ctx: SolveContext,
    /// Record wall-clock seconds; otherwise the time columns hold `NA`.
    pub timings: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sigma < 1 {
            return Err(Error::InvalidSize("σ must be >= 1".into()));
        }
        if !(self.delta >= 0.0) {
            return Err(Error::InvalidSize("Δ must be >= 0".into()));
        }
        if self.trials == 0 || self.algorithms.is_empty() {
            return Err(Error::InvalidSize("need at least one trial and one algorithm".into()));
        }
        let reg = solvers();
        for a in &self.algorithms {
            reg.get(a)?;
        }
        if let FamilySpec::PlanarRoadNet(p) = &self.family {
            if p.m + 1 < p.n {
                return Err(Error::InvalidSize("road network needs m >= n - 1".into()));
            }
        }
        Ok(())
    }

    pub fn family_name(&self) -> String {
        match &self.family {
            FamilySpec::FormatKappa { kappa } => format!("format{kappa}"),
            FamilySpec::PlanarRoadNet(p) => format!("roadnet_n{}_m{}", p.n, p.m),
            FamilySpec::PartitionSp { n, .. } => format!("partition_sp{n}"),
        }
    }
}

/// Instance of trial `trial`, drawn from stream `trial` of the seed.
pub fn generate(cfg: &ExperimentConfig, trial: u64) -> Result<LocUncInstance> {
    let mut rng = rng_for(cfg.seed, trial);
    match &cfg.family {
        FamilySpec::FormatKappa { kappa } => gen_format_with(*kappa, cfg.delta, cfg.sigma, &mut rng),
        FamilySpec::PlanarRoadNet(p) => {
            let p = RoadNetParams { sigma: cfg.sigma, ..p.clone() };
            Ok(gen_planar_roadnet_with(&p, &mut rng)?.0)
        }
        FamilySpec::PartitionSp { n, amax } => {
            let a: Vec<i64> = (0..*n).map(|_| rng.gen_range(1..=*amax)).collect();
            let k = PartitionInput::min_k_sp(&a);
            Ok(gen_partition_sp(&PartitionInput::new(a, k)?)?.instance)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub instance: usize,
    pub algorithm: String,
    pub cost: Option<f64>,
    pub exact: Option<f64>,
    pub gap: Option<f64>,
    pub seconds: f64,
    pub iterations: usize,
    pub error: Option<String>,
}

fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Vec<RunRecord> {
    let reg = solvers();
    let inst = match generate(cfg, trial as u64) {
        Ok(i) => i,
        Err(e) => {
            return cfg
                .algorithms
                .iter()
                .map(|a| RunRecord {
                    instance: trial,
                    algorithm: a.clone(),
                    cost: None,
                    exact: None,
                    gap: None,
                    seconds: 0.0,
                    iterations: 0,
                    error: Some(e.to_string()),
                })
                .collect()
        }
    };
    let mut recs: Vec<RunRecord> = cfg
        .algorithms
        .iter()
        .map(|a| {
            let t = Instant::now();
            let r = reg.get(a).and_then(|s| s.solve(&inst, &cfg.ctx));
            let seconds = t.elapsed().as_secs_f64();
            match r {
                Ok(sol) => RunRecord {
                    instance: trial,
                    algorithm: a.clone(),
                    cost: Some(sol.cost),
                    exact: None,
                    gap: None,
                    seconds,
                    iterations: sol.iterations,
                    error: None,
                },
                Err(e) => RunRecord {
                    instance: trial,
                    algorithm: a.clone(),
                    cost: None,
                    exact: None,
                    gap: None,
                    seconds,
                    iterations: 0,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let exact = recs.iter().find(|r| r.algorithm == "exact").and_then(|r| r.cost);
    for r in &mut recs {
        r.exact = exact;
        if r.algorithm == "exact" {
            r.gap = r.cost.map(|_| 0.0);
        } else if let (Some(c), Some(x)) = (r.cost, exact) {
            r.gap = Some(if x > TOL { c / x - 1.0 } else if c > TOL { f64::INFINITY } else { 0.0 });
        }
    }
    recs
}

pub fn run_records(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let per: Vec<Vec<RunRecord>> = (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect();
    Ok(per.into_iter().flatten().collect())
}

/// Grid in percent: 0, 0.5, …, 100.
pub fn cdf_grid() -> Vec<f64> {
    (0..=200).map(|k| k as f64 * 0.5).collect()
}

/// Percentage of `gaps` (fractions) at most x %, for each x of the grid.
pub fn cdf(gaps: &[f64], grid: &[f64]) -> Vec<f64> {
    grid.iter()
        .map(|&x| {
            if gaps.is_empty() {
                return 0.0;
            }
            let hit = gaps.iter().filter(|&&g| g * 100.0 <= x + 1e-9).count();
            100.0 * hit as f64 / gaps.len() as f64
        })
        .collect()
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), |v| v.to_string())
}

pub fn records_csv(recs: &[RunRecord], timings: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["instance", "algorithm", "cost", "exact", "gap", "seconds", "iterations", "error"])?;
    for r in recs {
        w.write_record([
            r.instance.to_string(),
            r.algorithm.clone(),
            fmt_opt(r.cost),
            fmt_opt(r.exact),
            fmt_opt(r.gap),
            if timings { format!("{:.6}", r.seconds) } else { "NA".into() },
            r.iterations.to_string(),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    finish(w)
}

pub fn times_csv(cfg: &ExperimentConfig, recs: &[RunRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "sigma", "delta", "algorithm", "runs", "failures", "mean_seconds"])?;
    for a in &cfg.algorithms {
        let mine: Vec<&RunRecord> = recs.iter().filter(|r| &r.algorithm == a).collect();
        let ok: Vec<&&RunRecord> = mine.iter().filter(|r| r.error.is_none()).collect();
        let mean = if !cfg.timings || ok.is_empty() {
            "NA".to_string()
        } else {
            format!("{:.6}", ok.iter().map(|r| r.seconds).sum::<f64>() / ok.len() as f64)
        };
        w.write_record([
            cfg.family_name(),
            cfg.sigma.to_string(),
            cfg.delta.to_string(),
            a.clone(),
            mine.len().to_string(),
            (mine.len() - ok.len()).to_string(),
            mean,
        ])?;
    }
    finish(w)
}

/// Columns: x_percent, then one column per non-exact algorithm.
pub fn costs_cdf_csv(cfg: &ExperimentConfig, recs: &[RunRecord]) -> Result<String> {
    let algos: Vec<&String> = cfg.algorithms.iter().filter(|a| *a != "exact").collect();
    let gaps: Vec<Vec<f64>> = algos
        .iter()
        .map(|a| recs.iter().filter(|r| &r.algorithm == *a).filter_map(|r| r.gap).collect())
        .collect();
    let mut grid = cdf_grid();
    let max_gap = gaps.iter().flatten().copied().filter(|g| g.is_finite()).fold(0.0, f64::max) * 100.0;
    if max_gap > 100.0 {
        grid.push(max_gap);
    }
    let cols: Vec<Vec<f64>> = gaps.iter().map(|g| cdf(g, &grid)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut head = vec!["x_percent".to_string()];
    head.extend(algos.iter().map(|a| a.to_string()));
    w.write_record(&head)?;
    for (k, x) in grid.iter().enumerate() {
        let mut row = vec![x.to_string()];
        row.extend(cols.iter().map(|c| c[k].to_string()));
        w.write_record(&row)?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Runs the batch and writes `records.csv`, `times.csv` and `costs_cdf.csv`
/// into `out_dir`.
pub fn run_experiment(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<RunRecord>> {
    let recs = run_records(cfg)?;
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("records.csv"), records_csv(&recs, cfg.timings)?)?;
    std::fs::write(out_dir.join("times.csv"), times_csv(cfg, &recs)?)?;
    std::fs::write(out_dir.join("costs_cdf.csv"), costs_cdf_csv(cfg, &recs)?)?;
    Ok(recs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(algos: &[&str]) -> ExperimentConfig {
        ExperimentConfig {
            family: FamilySpec::FormatKappa { kappa: 1 },
            delta: 0.5,
            sigma: 2,
            algorithms: algos.iter().map(|s| s.to_string()).collect(),
            seed: 7,
            trials: 4,
            ctx: SolveContext::default(),
            timings: false,
        }
    }

    #[test]
    fn exact_only_has_zero_gaps() {
        let recs = run_records(&cfg(&["exact"])).unwrap();
        assert!(recs.iter().all(|r| r.gap == Some(0.0)));
    }

    #[test]
    fn cdf_is_monotone_and_reaches_100() {
        let gaps = [0.0, 0.013, 0.2, 0.2];
        let c = cdf(&gaps, &cdf_grid());
        assert!(c.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(c[0], 25.0);
        assert_eq!(c[40], 100.0);
    }

    #[test]
    fn unknown_algorithm_rejected() {
        assert!(matches!(cfg(&["magic"]).validate(), Err(Error::Unknown { .. })));
    }
}
