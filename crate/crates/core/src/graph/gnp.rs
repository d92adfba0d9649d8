use rand::Rng;

use super::Multigraph;
use crate::error::{Error, Result};

/// Erdős–Rényi `G(n, p)`, sampled by geometric skipping over the pairs
/// `(w, v)` with `w < v` so the cost is linear in `n + |E|`.
pub fn sample_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Multigraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut g = Multigraph::new(n);
    if p == 0.0 || n < 2 {
        return Ok(g);
    }
    if p == 1.0 {
        return Ok(Multigraph::complete(n));
    }
    let log_q = (1.0 - p).ln();
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            g.add_edge(w as usize, v);
        }
    }
    Ok(g)
}

/// The largest connected component, relabelled in ascending vertex order.
/// Ties go to the component containing the smallest vertex.
pub fn giant_component(g: &Multigraph) -> Multigraph {
    let comps = g.components();
    let Some(best) = comps
        .iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
    else {
        return Multigraph::new(0);
    };
    g.induced_subgraph(best).0
}

/// Vertices surviving iterated deletion of vertices of degree at most one.
pub fn two_core_vertices(g: &Multigraph) -> Vec<usize> {
    let adj = g.adjacency();
    let mut deg = g.degrees();
    let mut removed = vec![false; g.vertex_count()];
    let mut stack: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &(w, _) in adj.neighbours(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    (0..g.vertex_count()).filter(|&v| !removed[v]).collect()
}

/// The maximal subgraph of minimum degree two, relabelled in ascending
/// vertex order.
pub fn two_core(g: &Multigraph) -> Multigraph {
    g.induced_subgraph(&two_core_vertices(g)).0
}

/// The root in `(0, 1)` of `x = 1 − e^{−cx}`, the giant component fraction.
pub fn solve_x(c: f64) -> Result<f64> {
    if c.is_nan() || c <= 1.0 {
        return Err(Error::invalid(format!(
            "c = {c}: x = 1 - exp(-cx) has no root in (0, 1) unless c > 1"
        )));
    }
    let f = |x: f64| x - 1.0 + (-c * x).exp();
    // f is convex with f(1) > 0, so Newton from the right decreases
    // monotonically to the positive root.
    let mut x = 1.0;
    for _ in 0..200 {
        let fx = f(x);
        let dfx = 1.0 - c * (-c * x).exp();
        let next = x - fx / dfx;
        if !(next > 0.0 && next < x) {
            break;
        }
        x = next;
    }
    // polish with bisection on a bracket around the Newton iterate
    let (mut lo, mut hi) = (x * (1.0 - 1e-9), x * (1.0 + 1e-9));
    if f(lo) < 0.0 && f(hi) > 0.0 {
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        x = 0.5 * (lo + hi);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    #[test]
    fn solve_x_values() {
        let x = solve_x(2.0).unwrap();
        assert!((x - (1.0 - (-2.0 * x).exp())).abs() < 1e-12);
        assert!((x - 0.796812).abs() < 1e-6);
        for eps in [1e-2, 1e-3] {
            let x = solve_x(1.0 + eps).unwrap();
            assert!(x > 0.0 && x < 1.0);
            assert!(
                (x / (2.0 * eps) - 1.0).abs() < 2.0 * eps,
                "eps {eps}: x {x}"
            );
        }
        assert!(solve_x(1.0).is_err());
        assert!(solve_x(0.5).is_err());
    }

    #[test]
    fn two_core_cases() {
        assert_eq!(two_core(&Multigraph::path(6)).vertex_count(), 0);
        assert_eq!(two_core(&Multigraph::star(4)).vertex_count(), 0);
        let c = Multigraph::cycle(7);
        assert_eq!(two_core(&c), c);
        // triangle with pendant path of length 3
        let g = Multigraph::from_edges(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
            .unwrap();
        let core = two_core(&g);
        assert_eq!(core.canonical_edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn gnp_edge_count_and_giant() {
        let mut rng = trial_rng(2, 0);
        let n = 4000;
        let p = 2.0 / n as f64;
        let g = sample_gnp(n, p, &mut rng).unwrap();
        let expected = p * (n * (n - 1) / 2) as f64;
        assert!((g.edge_count() as f64 - expected).abs() < 5.0 * expected.sqrt());
        assert!(g.is_simple());
        let giant = giant_component(&g);
        let x = solve_x(2.0).unwrap();
        let frac = giant.vertex_count() as f64 / n as f64;
        assert!((frac - x).abs() < 0.05, "giant fraction {frac}");
        assert!(giant.is_connected());
        assert!(sample_gnp(10, 1.5, &mut rng).is_err());
        assert_eq!(sample_gnp(5, 1.0, &mut rng).unwrap().edge_count(), 10);
    }
}
