use super::EvalResult;
use crate::caps::Caps;
use crate::error::{cap, Result};
use crate::instance::{EdgeSubset, LocUncInstance, Scenario};

/// Scan every joint location of the vertices touched by F, in lexicographic
/// order; the first maximiser found is kept.
pub fn eval_c_bruteforce(inst: &LocUncInstance, f: &EdgeSubset, caps: &Caps) -> Result<EvalResult> {
    let g = inst.graph();
    let verts = f.vertices(g);
    let radix: Vec<usize> = verts.iter().map(|&v| inst.uset(v).len()).collect();
    let total: f64 = radix.iter().map(|&r| r as f64).product();
    if total > caps.scenarios as f64 {
        return Err(cap("brute-force scenarios", caps.scenarios));
    }
    let pos = |v: usize| verts.binary_search(&v).expect("touched vertex");
    let local: Vec<(usize, usize)> = f
        .edges()
        .iter()
        .map(|&e| {
            let (a, b) = g.edge(e);
            (pos(a), pos(b))
        })
        .collect();
    let space = inst.space();
    let sets: Vec<&[crate::metric::PointId]> = verts.iter().map(|&v| inst.uset(v)).collect();
    let mut digits = vec![0usize; verts.len()];
    let mut best = f64::NEG_INFINITY;
    let mut best_digits = digits.clone();
    loop {
        let v: f64 = local.iter().map(|&(a, b)| space.d(sets[a][digits[a]], sets[b][digits[b]])).sum();
        if v > best {
            best = v;
            best_digits.copy_from_slice(&digits);
        }
        // odometer, last position fastest
        let mut k = digits.len();
        loop {
            if k == 0 {
                let mut w = vec![0usize; inst.n()];
                for (i, &v) in verts.iter().enumerate() {
                    w[v] = best_digits[i];
                }
                return Ok(EvalResult::new(inst, f, Scenario(w)));
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < radix[k] {
                break;
            }
            digits[k] = 0;
        }
    }
}
