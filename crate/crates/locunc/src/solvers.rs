//! Named solution strategies behind one trait object interface.

use crate::adr::{adr_centroid_bound, build_adr_model};
use crate::approx::{heuristic_center, heuristic_dmax};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::evalc::{eval_c, Auto};
use crate::instance::{EdgeSubset, FamilyDescriptor, LocUncInstance};
use crate::registry::{Named, Registry};
use crate::robust_cut::cutting_plane;
use crate::sp_robust::{robust_sp_exact, robust_sp_fptas};

#[derive(Clone, Debug, PartialEq)]
pub struct SolveContext {
    pub caps: Caps,
    pub epsilon: f64,
}

impl Default for SolveContext {
    fn default() -> Self {
        SolveContext { caps: Caps::default(), epsilon: 0.1 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub f: EdgeSubset,
    /// Worst-case cost c(F); for `adr-emit` the certified upper bound instead.
    pub cost: f64,
    pub iterations: usize,
}

pub trait Solver: Named + Send + Sync {
    fn solve(&self, inst: &LocUncInstance, ctx: &SolveContext) -> Result<Solution>;
}

fn evaluated(inst: &LocUncInstance, f: EdgeSubset, caps: &Caps) -> Result<Solution> {
    let cost = eval_c(inst, &f, caps)?.value;
    Ok(Solution { f, cost, iterations: 1 })
}

fn need_path(inst: &LocUncInstance) -> Result<()> {
    match inst.family() {
        FamilyDescriptor::StPath { .. } => Ok(()),
        other => Err(Error::InvalidInstance(format!("needs an s-t path family, got {}", other.name()))),
    }
}

/// Cutting plane with automatic evaluator dispatch.
pub struct Exact;
/// Deterministic problem at the barycenters.
pub struct Center;
/// Deterministic problem under d^max.
pub struct Dmax;
/// Profile dynamic program (s–t paths only).
pub struct SpDp;
/// Rounded profile dynamic program (s–t paths only).
pub struct Fptas;
/// d^max support, costed by the centroid decision-rule bound (Euclidean only).
pub struct AdrEmit;

macro_rules! named {
    ($t:ty, $n:literal) => {
        impl Named for $t {
            fn name(&self) -> &'static str {
                $n
            }
        }
    };
}
named!(Exact, "exact");
named!(Center, "center");
named!(Dmax, "dmax");
named!(SpDp, "sp-dp");
named!(Fptas, "fptas");
named!(AdrEmit, "adr-emit");

impl Solver for Exact {
    fn solve(&self, inst: &LocUncInstance, ctx: &SolveContext) -> Result<Solution> {
        let out = cutting_plane(inst, None, &Auto, &ctx.caps)?;
        Ok(Solution { f: out.f, cost: out.value, iterations: out.state.log.len() })
    }
}

impl Solver for Center {
    fn solve(&self, inst: &LocUncInstance, ctx: &SolveContext) -> Result<Solution> {
        evaluated(inst, heuristic_center(inst, &ctx.caps)?, &ctx.caps)
    }
}

impl Solver for Dmax {
    fn solve(&self, inst: &LocUncInstance, ctx: &SolveContext) -> Result<Solution> {
        evaluated(inst, heuristic_dmax(inst, &ctx.caps)?, &ctx.caps)
    }
}

impl Solver for SpDp {
    fn solve(&self, inst: &LocUncInstance, ctx: &SolveContext) -> Result<Solution> {
        need_path(inst)?;
        let r = robust_sp_exact(inst, &ctx.caps)?;
        Ok(Solution { f: r.path, cost: r.value, iterations: r.stats.hops })
    }
}

impl Solver for Fptas {
    fn solve(&self, inst: &LocUncInstance, ctx: &SolveContext) -> Result<Solution> {
        need_path(inst)?;
        let r = robust_sp_fptas(inst, ctx.epsilon, &ctx.caps)?.outcome;
        Ok(Solution { f: r.path, cost: r.value, iterations: r.stats.hops })
    }
}

impl Solver for AdrEmit {
    fn solve(&self, inst: &LocUncInstance, ctx: &SolveContext) -> Result<Solution> {
        let model = build_adr_model(inst)?;
        let f = heuristic_dmax(inst, &ctx.caps)?;
        let cost = adr_centroid_bound(inst, &model, &f);
        Ok(Solution { f, cost, iterations: 1 })
    }
}

pub fn solvers() -> Registry<dyn Solver> {
    let mut r: Registry<dyn Solver> = Registry::new("algorithm");
    r.register(Box::new(Exact))
        .register(Box::new(Center))
        .register(Box::new(Dmax))
        .register(Box::new(SpDp))
        .register(Box::new(Fptas))
        .register(Box::new(AdrEmit));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::tight::gen_center_trap;

    #[test]
    fn registry_lookup() {
        let r = solvers();
        assert_eq!(r.names(), vec!["exact", "center", "dmax", "sp-dp", "fptas", "adr-emit"]);
        assert!(matches!(r.get("nope"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn trap_separates_heuristics() {
        let inst = gen_center_trap(0.01).unwrap();
        let ctx = SolveContext::default();
        let r = solvers();
        let opt = r.get("exact").unwrap().solve(&inst, &ctx).unwrap().cost;
        assert!((opt - 0.01).abs() < 1e-12);
        assert_eq!(r.get("center").unwrap().solve(&inst, &ctx).unwrap().cost, 1.0);
        assert_eq!(r.get("dmax").unwrap().solve(&inst, &ctx).unwrap().cost, opt);
        assert!(r.get("sp-dp").unwrap().solve(&inst, &ctx).is_err());
    }
}
