//! Oracles shared by the integration tests. Deliberately written against
//! raw exponent vectors and bitmasks so they share no code paths with the
//! library routines they check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use freiman::{GeneratorSet, Graph};

/// Chordality by exhaustion: a vertex subset inducing a connected 2-regular
/// subgraph on at least four vertices is a chordless cycle.
pub fn brute_force_chordal(g: &Graph) -> bool {
    let n = g.vertex_count();
    assert!(n <= 16, "oracle is exponential in the vertex count");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &x| m | 1 << x))
        .collect();
    'subsets: for s in 0u32..(1u32 << n) {
        if (s.count_ones() as usize) < 4 {
            continue;
        }
        for (v, a) in adj.iter().enumerate() {
            if s & (1 << v) != 0 && (a & s).count_ones() != 2 {
                continue 'subsets;
            }
        }
        let mut seen = 1u32 << s.trailing_zeros();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for (v, a) in adj.iter().enumerate() {
                if frontier & (1 << v) != 0 {
                    next |= a & s;
                }
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        if seen == s {
            return false;
        }
    }
    true
}

/// Distinct products of two generators, counted from scratch over all
/// ordered pairs of raw exponent vectors.
pub fn pairwise_product_count(set: &GeneratorSet) -> u64 {
    let mut sums: BTreeSet<Vec<u32>> = BTreeSet::new();
    for u in set.gens() {
        for v in set.gens() {
            let sum: Vec<u32> = u
                .exponents()
                .iter()
                .zip(v.exponents())
                .map(|(a, b)| a + b)
                .collect();
            sums.insert(sum);
        }
    }
    sums.len() as u64
}

/// Minimal reader for the emitted DOT dialect: numbered vertices with
/// quoted labels, then undirected edges.
pub fn parse_dot(text: &str) -> (Vec<String>, Vec<(usize, usize)>) {
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if let Some((id, rest)) = line.split_once(" [label=\"") {
            let index: usize = id.parse().expect("vertex id");
            assert_eq!(index, labels.len(), "vertices out of order in DOT");
            let label = rest.strip_suffix("\"];").expect("label terminator");
            labels.push(label.to_string());
        } else if let Some(pair) = line.strip_suffix(';').and_then(|l| l.split_once(" -- ")) {
            let (a, b) = pair;
            edges.push((a.parse().expect("edge end"), b.parse().expect("edge end")));
        }
    }
    (labels, edges)
}
