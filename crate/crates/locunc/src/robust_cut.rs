//! Exact robust optimisation by scenario generation: a master problem over a
//! growing scenario subset alternates with worst-case evaluation of its
//! optimum until the evaluation no longer cuts it off.

use std::time::Instant;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::Result;
use crate::evalc::{CostEvaluator, EvalResult};
use crate::families::enumerate_family;
use crate::instance::{EdgeSubset, LocUncInstance, Scenario};
use crate::metric::TOL;

#[derive(Clone, Debug, PartialEq)]
pub struct CutIteration {
    pub iteration: usize,
    pub master_value: f64,
    pub incumbent_cost: f64,
    pub added: Option<Scenario>,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutState {
    pub scenarios: Vec<Scenario>,
    pub incumbent: EdgeSubset,
    pub master_value: f64,
    /// Smallest c(F) seen so far; the optimum lies in [master_value, best_upper].
    pub best_upper: f64,
    pub log: Vec<CutIteration>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutOutcome {
    pub f: EdgeSubset,
    pub value: f64,
    pub state: CutState,
}

/// Enumerated family with, per member, the maximum cost over the scenarios
/// added so far.
pub struct Master<'a> {
    inst: &'a LocUncInstance,
    family: Vec<EdgeSubset>,
    worst: Vec<f64>,
    scenarios: Vec<Scenario>,
}

const PAR_THRESHOLD: usize = 4096;

impl<'a> Master<'a> {
    pub fn new(inst: &'a LocUncInstance, caps: &Caps) -> Result<Self> {
        let family = enumerate_family(inst.family(), inst.graph(), caps)?;
        let worst = vec![f64::NEG_INFINITY; family.len()];
        Ok(Master { inst, family, worst, scenarios: Vec::new() })
    }

    pub fn family(&self) -> &[EdgeSubset] {
        &self.family
    }

    pub fn scenarios(&self) -> &[Scenario] {
        &self.scenarios
    }

    /// Returns false if the scenario was already present.
    pub fn add_scenario(&mut self, s: Scenario) -> bool {
        if self.scenarios.contains(&s) {
            return false;
        }
        let w = self.inst.scenario_weights(&s);
        let update = |(f, worst): (&EdgeSubset, &mut f64)| {
            let c: f64 = f.edges().iter().map(|&e| w[e]).sum();
            if c > *worst {
                *worst = c;
            }
        };
        if self.family.len() >= PAR_THRESHOLD {
            self.family.par_iter().zip(self.worst.par_iter_mut()).for_each(update);
        } else {
            self.family.iter().zip(self.worst.iter_mut()).for_each(update);
        }
        self.scenarios.push(s);
        true
    }

    /// Index of the first member minimising the scenario maximum, and that value.
    pub fn solve(&self) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (k, &v) in self.worst.iter().enumerate() {
            if v < best.1 - TOL {
                best = (k, v);
            }
        }
        best
    }
}

/// min over the family of the maximum cost over `scenarios`. An empty scenario
/// list is replaced by the all-first-location scenario.
pub fn solve_master(inst: &LocUncInstance, scenarios: &[Scenario], caps: &Caps) -> Result<(EdgeSubset, f64)> {
    let mut m = Master::new(inst, caps)?;
    if scenarios.is_empty() {
        m.add_scenario(Scenario(vec![0; inst.n()]));
    }
    for s in scenarios {
        inst.validate_scenario(s)?;
        m.add_scenario(s.clone());
    }
    let (k, v) = m.solve();
    Ok((m.family[k].clone(), v))
}

pub fn cutting_plane(
    inst: &LocUncInstance,
    initial: Option<Scenario>,
    evaluator: &dyn CostEvaluator,
    caps: &Caps,
) -> Result<CutOutcome> {
    let start = Instant::now();
    let mut master = Master::new(inst, caps)?;
    let init = initial.unwrap_or_else(|| inst.barycenter_scenario());
    inst.validate_scenario(&init)?;
    master.add_scenario(init);
    let mut log = Vec::new();
    let mut best_upper = f64::INFINITY;
    let mut last_omega = f64::NEG_INFINITY;
    loop {
        let (k, omega) = master.solve();
        debug_assert!(omega >= last_omega - TOL);
        last_omega = omega;
        let f = master.family[k].clone();
        let EvalResult { value, witness } = evaluator.evaluate(inst, &f, caps)?;
        best_upper = best_upper.min(value);
        let cut = value > omega + TOL;
        log.push(CutIteration {
            iteration: log.len() + 1,
            master_value: omega,
            incumbent_cost: value,
            added: cut.then(|| witness.clone()),
            seconds: start.elapsed().as_secs_f64(),
        });
        if !cut || !master.add_scenario(witness) {
            let state = CutState {
                scenarios: master.scenarios.clone(),
                incumbent: f.clone(),
                master_value: omega,
                best_upper,
                log,
            };
            return Ok(CutOutcome { f, value, state });
        }
    }
}

/// Iteration log as CSV text: iteration, master value, incumbent cost, seconds.
/// With `timings == false` the seconds column is written as `NA` so the file
/// is reproducible byte for byte.
pub fn log_csv(state: &CutState, timings: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["iteration", "master_value", "incumbent_cost", "added_scenario", "seconds"])?;
    for it in &state.log {
        let added = it
            .added
            .as_ref()
            .map(|s| s.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        let secs = if timings { format!("{:.6}", it.seconds) } else { "NA".to_string() };
        w.write_record([
            it.iteration.to_string(),
            it.master_value.to_string(),
            it.incumbent_cost.to_string(),
            added,
            secs,
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| crate::error::Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evalc::Auto;
    use crate::families::solve_deterministic;
    use crate::instance::{FamilyDescriptor, Graph};
    use crate::metric::{MetricSpace, PointId};

    fn path3() -> LocUncInstance {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let s = MetricSpace::euclidean(vec![vec![0.0], vec![1.0]]).unwrap();
        let u = vec![vec![PointId(0)], vec![PointId(0), PointId(1)], vec![PointId(1)]];
        LocUncInstance::new(g, s, u, FamilyDescriptor::StPath { s: 0, t: 2 }).unwrap()
    }

    #[test]
    fn single_path_family() {
        let inst = path3();
        let out = cutting_plane(&inst, None, &Auto, &Caps::default()).unwrap();
        assert_eq!(out.value, 1.0);
        assert!(out.state.log.len() <= 2);
    }

    #[test]
    fn singletons_converge_in_one_iteration() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let s = MetricSpace::euclidean(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        let u = (0..4).map(|i| vec![PointId(i)]).collect();
        let inst = LocUncInstance::new(g, s, u, FamilyDescriptor::SpanningTree).unwrap();
        let caps = Caps::default();
        let out = cutting_plane(&inst, None, &Auto, &caps).unwrap();
        assert_eq!(out.state.log.len(), 1);
        let det = solve_deterministic(inst.family(), inst.graph(), &inst.dmax_weights(), &caps).unwrap();
        assert!((inst.cmax(&det) - out.value).abs() < TOL);
    }

    #[test]
    fn duplicate_scenarios_ignored() {
        let inst = path3();
        let s = Scenario(vec![0, 1, 0]);
        let a = solve_master(&inst, &[s.clone()], &Caps::default()).unwrap();
        let b = solve_master(&inst, &[s.clone(), s], &Caps::default()).unwrap();
        assert_eq!(a, b);
    }
}
