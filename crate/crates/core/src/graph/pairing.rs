use rand::seq::SliceRandom;
use rand::Rng;

use super::{DegreeSequence, Multigraph};
use crate::error::{Error, Result};

/// A perfect matching on the configuration points `0..2m`. Vertex `i` owns the
/// consecutive block of `d_i` points following the blocks of vertices `< i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    owner: Vec<usize>,
    partner: Vec<usize>,
}

impl Pairing {
    /// Samples a uniformly random perfect matching on the points of `degrees`.
    pub fn sample<R: Rng + ?Sized>(degrees: &[usize], rng: &mut R) -> Result<Self> {
        let total: usize = degrees.iter().sum();
        if total % 2 == 1 {
            return Err(Error::OddDegreeSum(total));
        }
        let owner: Vec<usize> = degrees
            .iter()
            .enumerate()
            .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
            .collect();
        // Pairing consecutive entries of a uniform permutation gives every
        // matching the same number (m! 2^m) of preimages.
        let mut order: Vec<usize> = (0..total).collect();
        order.shuffle(rng);
        let mut partner = vec![0; total];
        for pair in order.chunks_exact(2) {
            partner[pair[0]] = pair[1];
            partner[pair[1]] = pair[0];
        }
        Ok(Self { owner, partner })
    }

    pub fn point_count(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point]
    }

    /// The vertex owning `point`.
    pub fn owner(&self, point: usize) -> usize {
        self.owner[point]
    }

    /// The matched pairs `(p, q)` with `p < q`, ordered by `p`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&p| p < self.partner[p])
            .map(|p| (p, self.partner[p]))
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.owner.last().map_or(0, |&v| v + 1)
    }

    /// The multigraph with an edge `(owner(p), owner(q))` per pair.
    pub fn to_multigraph(&self, vertex_count: usize) -> Multigraph {
        let edges = self
            .pairs()
            .into_iter()
            .map(|(p, q)| (self.owner[p], self.owner[q]))
            .collect();
        Multigraph::from_edges(vertex_count, edges).expect("owners are in range")
    }
}

/// Uniform configuration-model pairing on the points of `seq`.
pub fn sample_pairing<R: Rng + ?Sized>(seq: &DegreeSequence, rng: &mut R) -> Result<Pairing> {
    Pairing::sample(seq.degrees(), rng)
}
