#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use toric_core::Graph;

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                g.add_edge(i, j).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// Graph on `lo..=hi` vertices; each edge present independently.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let m = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

pub fn random_graph<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let p: f64 = rng.gen_range(0.1..0.9);
    let bits: Vec<bool> = (0..n * n.saturating_sub(1) / 2)
        .map(|_| rng.gen_bool(p))
        .collect();
    graph_from_bits(n, &bits)
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}
