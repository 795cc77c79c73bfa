use super::decomposition::{NodeKind, TreeDecomposition};
use super::EvalResult;
use crate::caps::Caps;
use crate::error::{cap, Result};
use crate::instance::{EdgeSubset, LocUncInstance, Scenario};

/// Mixed-radix indexing of the joint locations of a sorted bag.
struct BagIndex {
    radix: Vec<usize>,
    stride: Vec<usize>,
    size: usize,
}

impl BagIndex {
    fn new(inst: &LocUncInstance, bag: &[usize]) -> Self {
        let radix: Vec<usize> = bag.iter().map(|&v| inst.uset(v).len()).collect();
        let mut stride = vec![1; bag.len()];
        for k in (0..bag.len().saturating_sub(1)).rev() {
            stride[k] = stride[k + 1] * radix[k + 1];
        }
        let size = radix.iter().product();
        BagIndex { radix, stride, size }
    }

    fn digits(&self, mut idx: usize, out: &mut [usize]) {
        for k in 0..self.radix.len() {
            out[k] = idx / self.stride[k];
            idx %= self.stride[k];
        }
    }
}

/// Table sizes the DP would allocate, or an error if one exceeds the cap.
pub(crate) fn check_tables(inst: &LocUncInstance, td: &TreeDecomposition, caps: &Caps) -> Result<()> {
    for bag in &td.bags {
        let s: f64 = bag.iter().map(|&v| inst.uset(v).len() as f64).product();
        if s > caps.dp_table as f64 {
            return Err(cap("treewidth DP table entries", caps.dp_table));
        }
    }
    Ok(())
}

/// Dynamic program over a nice tree decomposition of the subgraph spanned by F.
pub fn eval_c_treewidth(
    inst: &LocUncInstance,
    f: &EdgeSubset,
    td: &TreeDecomposition,
    caps: &Caps,
) -> Result<EvalResult> {
    let g = inst.graph();
    let verts = f.vertices(g);
    let fedges: Vec<(usize, usize)> = f.edges().iter().map(|&e| g.edge(e)).collect();
    td.validate(&verts, &fedges)?;
    check_tables(inst, td, caps)?;
    let n = inst.n();
    let mut nbr: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &fedges {
        nbr[a].push(b);
        nbr[b].push(a);
    }
    for l in nbr.iter_mut() {
        l.sort_unstable();
    }
    let adjacent = |a: usize, b: usize| nbr[a].binary_search(&b).is_ok();
    let space = inst.space();
    let loc = |v: usize, k: usize| inst.uset(v)[k];

    let k = td.len();
    let mut tables: Vec<Vec<f64>> = vec![Vec::new(); k];
    let mut argmax: Vec<Vec<usize>> = vec![Vec::new(); k];
    for w in td.post_order() {
        let bag = &td.bags[w];
        let ix = BagIndex::new(inst, bag);
        let mut digits = vec![0usize; bag.len()];
        match td.kinds[w] {
            NodeKind::Leaf => tables[w] = vec![0.0],
            NodeKind::Introduce(i) => {
                let c = td.children[w][0];
                let cbag = &td.bags[c];
                let cix = BagIndex::new(inst, cbag);
                let pi = bag.binary_search(&i).expect("introduced vertex in bag");
                let mut t = vec![0.0; ix.size];
                for (idx, slot) in t.iter_mut().enumerate() {
                    ix.digits(idx, &mut digits);
                    let mut cidx = 0;
                    let mut ck = 0;
                    for (p, &d) in digits.iter().enumerate() {
                        if p != pi {
                            cidx += d * cix.stride[ck];
                            ck += 1;
                        }
                    }
                    let ui = loc(i, digits[pi]);
                    let add: f64 = bag
                        .iter()
                        .enumerate()
                        .filter(|&(p, &j)| p != pi && adjacent(i, j))
                        .map(|(p, &j)| space.d(ui, loc(j, digits[p])))
                        .sum();
                    *slot = tables[c][cidx] + add;
                }
                tables[w] = t;
            }
            NodeKind::Forget(i) => {
                let c = td.children[w][0];
                let cbag = &td.bags[c];
                let cix = BagIndex::new(inst, cbag);
                let pi = cbag.binary_search(&i).expect("forgotten vertex in child bag");
                let mut t = vec![0.0; ix.size];
                let mut am = vec![0usize; ix.size];
                for idx in 0..ix.size {
                    ix.digits(idx, &mut digits);
                    let mut base = 0;
                    let mut p = 0;
                    for (ck, &s) in cix.stride.iter().enumerate() {
                        if ck != pi {
                            base += digits[p] * s;
                            p += 1;
                        }
                    }
                    let mut best = f64::NEG_INFINITY;
                    for x in 0..cix.radix[pi] {
                        let v = tables[c][base + x * cix.stride[pi]];
                        if v > best {
                            best = v;
                            am[idx] = x;
                        }
                    }
                    t[idx] = best;
                }
                tables[w] = t;
                argmax[w] = am;
            }
            NodeKind::Join => {
                let (l, r) = (td.children[w][0], td.children[w][1]);
                let mut t = vec![0.0; ix.size];
                for (idx, slot) in t.iter_mut().enumerate() {
                    ix.digits(idx, &mut digits);
                    // edges inside the bag were counted in both branches
                    let mut dup = 0.0;
                    for a in 0..bag.len() {
                        for b in (a + 1)..bag.len() {
                            if adjacent(bag[a], bag[b]) {
                                dup += space.d(loc(bag[a], digits[a]), loc(bag[b], digits[b]));
                            }
                        }
                    }
                    *slot = tables[l][idx] + tables[r][idx] - dup;
                }
                tables[w] = t;
            }
        }
    }

    let mut choice = vec![0usize; n];
    let mut stack = vec![td.root];
    while let Some(w) = stack.pop() {
        if let NodeKind::Forget(i) = td.kinds[w] {
            let bag = &td.bags[w];
            let ix = BagIndex::new(inst, bag);
            let idx: usize = bag.iter().enumerate().map(|(p, &v)| choice[v] * ix.stride[p]).sum();
            choice[i] = argmax[w][idx];
        }
        stack.extend(td.children[w].iter().copied());
    }
    Ok(EvalResult::new(inst, f, Scenario(choice)))
}
