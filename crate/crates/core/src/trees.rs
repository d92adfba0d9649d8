//! Effective resistance from the root of a subdivided tree to its frontier.

use num_rational::Rational64;
use rand::Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::trial_rng;
use crate::stats::clopper_pearson;

/// Rooted tree whose edges carry an integer length, the resistance of the
/// subdivided path they stand for. Nodes live in an arena where every child
/// has a smaller id than its parent, so identical subtrees may be shared.
/// The frontier is the set of leaves; the root is the last node.
#[derive(Clone, Debug, Default)]
pub struct SubdividedTree {
    children: Vec<Vec<(usize, u64)>>,
}

impl SubdividedTree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self) -> usize {
        self.children.push(Vec::new());
        self.children.len() - 1
    }

    /// Adds a node above `children`, given as `(child id, edge length)`.
    pub fn node(&mut self, children: Vec<(usize, u64)>) -> Result<usize> {
        let id = self.children.len();
        for &(c, len) in &children {
            if c >= id {
                return Err(Error::invalid(format!("child {c} must precede node {id}")));
            }
            if len == 0 {
                return Err(Error::invalid("edge lengths must be at least 1"));
            }
        }
        self.children.push(children);
        Ok(id)
    }

    pub fn root(&self) -> Option<usize> {
        self.children.len().checked_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, v: usize) -> &[(usize, u64)] {
        &self.children[v]
    }

    /// Unit-length tree of the given depth where the root has `d` children and
    /// every other internal node `d − 1`. Uses O(depth) memory.
    pub fn regular(d: usize, depth: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::invalid("regular tree needs d >= 3"));
        }
        let mut t = Self::new();
        let mut below = t.leaf();
        if depth == 0 {
            return Ok(t);
        }
        for _ in 1..depth {
            below = t.node(vec![(below, 1); d - 1])?;
        }
        t.node(vec![(below, 1); d])?;
        Ok(t)
    }

    /// Complete binary tree of the given depth with edge lengths drawn in
    /// breadth-first order from `lengths`.
    pub fn binary(depth: usize, mut lengths: impl FnMut() -> u64) -> Result<Self> {
        let mut t = Self::new();
        let mut level: Vec<usize> = (0..1usize << depth).map(|_| t.leaf()).collect();
        for _ in 0..depth {
            let mut up = Vec::with_capacity(level.len() / 2);
            for pair in level.chunks(2) {
                up.push(t.node(vec![(pair[0], lengths()), (pair[1], lengths())])?);
            }
            level = up;
        }
        Ok(t)
    }

    /// Expands every edge into a path and merges all leaves into one vertex.
    /// Returns `(n, edges, root, frontier)`.
    pub fn expand(&self) -> (usize, Vec<(usize, usize)>, usize, usize) {
        let root = self.root().expect("non-empty tree");
        let mut edges = Vec::new();
        let frontier = 0usize;
        let mut n = 1;
        // walk the tree explicitly so shared subtrees are expanded per use
        let mut stack = vec![(root, {
            n += 1;
            n - 1
        })];
        let root_vertex = stack[0].1;
        while let Some((v, at)) = stack.pop() {
            for &(c, len) in &self.children[v] {
                let mut prev = at;
                for _ in 1..len {
                    edges.push((prev, n));
                    prev = n;
                    n += 1;
                }
                let target = if self.children[c].is_empty() {
                    frontier
                } else {
                    n += 1;
                    stack.push((c, n - 1));
                    n - 1
                };
                edges.push((prev, target));
            }
        }
        (n, edges, root_vertex, frontier)
    }
}

/// Resistance between the root and the frontier: `1/R = Σ 1/(ℓ_i + R_i)` over
/// the children, with `R = 0` at a leaf.
pub fn tree_resistance(tree: &SubdividedTree) -> Result<f64> {
    let root = tree.root().ok_or_else(|| Error::invalid("empty tree"))?;
    let mut r = vec![0.0; tree.node_count()];
    for v in 0..tree.node_count() {
        let kids = tree.children(v);
        if !kids.is_empty() {
            let g: f64 = kids.iter().map(|&(c, len)| 1.0 / (len as f64 + r[c])).sum();
            r[v] = 1.0 / g;
        }
    }
    Ok(r[root])
}

fn check_d(d: u32) -> Result<()> {
    if d < 3 {
        return Err(Error::invalid(format!("d = {d} must be at least 3")));
    }
    Ok(())
}

/// Resistance from a vertex of the infinite d-regular tree to infinity,
/// `(d−1)/(d(d−2))`.
pub fn rho_d(d: u32) -> Result<Rational64> {
    check_d(d)?;
    let d = d as i64;
    Ok(Rational64::new(d - 1, d * (d - 2)))
}

/// Resistance to infinity through a branch with `d − 1` children per node,
/// `1/(d−2)`.
pub fn branching_resistance(d: u32) -> Result<Rational64> {
    check_d(d)?;
    Ok(Rational64::new(1, d as i64 - 2))
}

/// Iterates `ρ ← (1 + ρ)/(d − 1)` from 0 until successive values differ by at
/// most `tol`; returns the value and the iteration count.
pub fn branching_fixed_point(d: u32, tol: f64, max_iter: usize) -> Result<(f64, usize)> {
    check_d(d)?;
    let mut rho = 0.0f64;
    for i in 1..=max_iter {
        let next = (1.0 + rho) / (d as f64 - 1.0);
        if (next - rho).abs() <= tol {
            return Ok((next, i));
        }
        rho = next;
    }
    Ok((rho, max_iter))
}

/// Upper bound on the resistance seen from the middle of a run of `k`
/// degree-2 vertices whose ends open into d-regular branching.
pub fn midpoint_resistance_bound(k: u64, d: u32) -> Result<f64> {
    check_d(d)?;
    let b = 1.0 / (d as f64 - 2.0);
    let lo = k.div_ceil(2) as f64;
    let hi = (k + 1).div_ceil(2) as f64;
    Ok(1.0 / (1.0 / (lo + b) + 1.0 / (hi + b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailVerdict {
    Pass,
    Fail,
    Inconclusive,
    /// Bound exceeds 1, nothing to check.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailRow {
    pub k: usize,
    pub xi: f64,
    pub rho: f64,
    pub exceedances: u64,
    pub trials: u64,
    pub empirical: f64,
    /// `2(1−ξ)^{3ρ−2}` at depth 1, `2.5^k (1−ξ)^{2ρ−k}` otherwise.
    pub bound: f64,
    /// `3^k (1−ξ)^{ρ−2}`, which holds only up to an unspecified constant;
    /// reported, never asserted.
    pub bound_coarse: f64,
    pub verdict: TailVerdict,
}

/// Asserted tail bound for `Pr(R_k ≥ ρ)`.
pub fn tail_bound(k: usize, xi: f64, rho: f64) -> f64 {
    if k == 1 {
        2.0 * (1.0 - xi).powf(3.0 * rho - 2.0)
    } else {
        2.5f64.powi(k as i32) * (1.0 - xi).powf(2.0 * rho - k as f64)
    }
}

pub fn coarse_tail_bound(k: usize, xi: f64, rho: f64) -> f64 {
    3f64.powi(k as i32) * (1.0 - xi).powf(rho - 2.0)
}

/// Pass if the 99% Clopper–Pearson upper limit is below the bound, or if
/// there are at least 100 exceedances and the point estimate is below it;
/// Fail if the lower limit is above the bound.
pub fn tail_verdict(exceedances: u64, trials: u64, bound: f64) -> TailVerdict {
    if bound > 1.0 {
        return TailVerdict::Vacuous;
    }
    let (lo, hi) = clopper_pearson(exceedances, trials, 0.99);
    let empirical = exceedances as f64 / trials as f64;
    if hi <= bound || (exceedances >= 100 && empirical <= bound) {
        TailVerdict::Pass
    } else if lo > bound {
        TailVerdict::Fail
    } else {
        TailVerdict::Inconclusive
    }
}

/// Samples `trials` depth-`k` binary trees with independent geometric(ξ)
/// edge lengths on {1, 2, …} and tabulates `Pr(R_k ≥ ρ)` for each `ρ`.
pub fn subdivided_tail_experiment(
    k: usize,
    xi: f64,
    rho_grid: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<TailRow>> {
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::invalid(format!("xi = {xi} must lie in (0, 1]")));
    }
    if k == 0 || k > 12 {
        return Err(Error::invalid(format!("depth {k} must lie in 1..=12")));
    }
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    let geo = Geometric::new(xi).map_err(|e| Error::invalid(e.to_string()))?;
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let t = SubdividedTree::binary(k, || 1 + geo.sample(&mut rng)).expect("valid lengths");
            tree_resistance(&t).expect("non-empty")
        })
        .collect();
    Ok(rho_grid
        .iter()
        .map(|&rho| {
            let exceedances = samples.iter().filter(|&&r| r >= rho - 1e-12).count() as u64;
            let bound = tail_bound(k, xi, rho);
            TailRow {
                k,
                xi,
                rho,
                exceedances,
                trials,
                empirical: exceedances as f64 / trials as f64,
                bound,
                bound_coarse: coarse_tail_bound(k, xi, rho),
                verdict: tail_verdict(exceedances, trials, bound),
            }
        })
        .collect())
}

/// Renders tail rows as CSV.
pub fn tail_table_csv(rows: &[TailRow]) -> String {
    let mut out = String::from("k,xi,rho,empirical,bound,bound_coarse,n_trials,verdict\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.k,
            r.xi,
            r.rho,
            r.empirical,
            r.bound,
            r.bound_coarse,
            r.trials,
            serde_json::to_value(r.verdict).unwrap().as_str().unwrap()
        ));
    }
    out
}

/// Random tree for property tests: each node gets 1..=max_children children.
pub fn random_tree<R: Rng + ?Sized>(
    depth: usize,
    max_children: usize,
    max_len: u64,
    rng: &mut R,
) -> SubdividedTree {
    fn grow<R: Rng + ?Sized>(
        t: &mut SubdividedTree,
        depth: usize,
        max_children: usize,
        max_len: u64,
        rng: &mut R,
    ) -> usize {
        if depth == 0 {
            return t.leaf();
        }
        let k = rng.random_range(1..=max_children.max(1));
        let kids: Vec<(usize, u64)> = (0..k)
            .map(|_| {
                let sub = depth - rng.random_range(0..=depth.min(1));
                let c = grow(t, sub.saturating_sub(1), max_children, max_len, rng);
                (c, rng.random_range(1..=max_len.max(1)))
            })
            .collect();
        t.node(kids).expect("children precede parent")
    }
    let mut t = SubdividedTree::new();
    grow(&mut t, depth, max_children, max_len, rng);
    t
}
