#![allow(dead_code)]

use covertime::graph::{sample_pairing, DegreeSequence, Multigraph};
use covertime::rng::trial_rng;
use covertime::WeightedGraph;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// Expected vertex cover time from `start` by solving the chain on
/// (position, visited set). Feasible up to about 12 vertices.
pub fn exact_cover_time(g: &WeightedGraph, start: usize) -> f64 {
    let n = g.vertex_count();
    assert!(n <= 16);
    let full = (1usize << n) - 1;
    let mut value = vec![vec![0.0; n]; 1 << n];
    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for mask in masks {
        if mask == full {
            continue;
        }
        let inside: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let idx = |v: usize| inside.iter().position(|&x| x == v).unwrap();
        let k = inside.len();
        let mut a = DMatrix::<f64>::identity(k, k);
        let mut b = DVector::<f64>::from_element(k, 1.0);
        for (i, &v) in inside.iter().enumerate() {
            let kv = g.vertex_weight(v);
            for &(w, e) in g.neighbours(v) {
                let p = g.edges()[e].2 / kv;
                if mask >> w & 1 == 1 {
                    a[(i, idx(w))] -= p;
                } else {
                    b[i] += p * value[mask | 1 << w][w];
                }
            }
        }
        let x = a.lu().solve(&b).expect("transient system is regular");
        for (i, &v) in inside.iter().enumerate() {
            value[mask][v] = x[i];
        }
    }
    if n == 1 {
        0.0
    } else {
        value[1 << start][start]
    }
}

/// Connected configuration-model multigraph with the given degree sequence.
pub fn connected_configuration(seq: &DegreeSequence, seed: u64) -> Multigraph {
    for i in 0.. {
        let mut rng = trial_rng(seed, i);
        let g = sample_pairing(seq, &mut rng)
            .unwrap()
            .to_multigraph(seq.len());
        if g.is_connected() {
            return g;
        }
    }
    unreachable!()
}

pub fn connected_cubic(n: usize, seed: u64) -> Multigraph {
    connected_configuration(&DegreeSequence::regular(3, n).unwrap(), seed)
}

/// Random connected simple-ish graph: a random spanning tree plus extra edges.
pub fn random_connected<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Multigraph {
    let mut g = Multigraph::new(n);
    for v in 1..n {
        let u = rng.random_range(0..v);
        g.add_edge(u, v);
    }
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            g.add_edge(u, v);
        }
    }
    g
}

/// All perfect matchings of `0..points`, each as a partner array.
pub fn all_matchings(points: usize) -> Vec<Vec<usize>> {
    fn go(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(partner.clone());
            return;
        };
        for other in first + 1..partner.len() {
            if partner[other] == usize::MAX {
                partner[first] = other;
                partner[other] = first;
                go(partner, out);
                partner[first] = usize::MAX;
                partner[other] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; points], &mut out);
    out
}
