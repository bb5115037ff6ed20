//! Dag representation, orderings, degeneracy, depth labels, and generators.

use std::collections::BinaryHeap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A simple directed acyclic graph over dense vertex ids `0..n`.
///
/// Arcs are stored sorted and deduplicated. Construction fails on
/// self-loops, duplicates, out-of-range endpoints, and directed cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Dag {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        arcs.sort_unstable();
        for w in arcs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidParams(format!(
                    "duplicate arc ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        for &(v, w) in &arcs {
            if v == w {
                return Err(Error::InvalidParams(format!("self-loop at {v}")));
            }
            if v >= n || w >= n {
                return Err(Error::InvalidParams(format!(
                    "arc ({v}, {w}) out of range for n={n}"
                )));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(v, w) in &arcs {
            out_adj[v].push(w);
            in_adj[w].push(v);
        }
        let g = Dag {
            n,
            arcs,
            out_adj,
            in_adj,
        };
        // Kahn's algorithm; any leftover vertex sits on a cycle.
        let mut indeg: Vec<usize> = (0..n).map(|v| g.in_adj[v].len()).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &g.out_adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if seen != n {
            return Err(Error::CycleDetected);
        }
        Ok(g)
    }

    /// Like [`Dag::new`] but silently drops duplicate arcs first.
    /// Generators use this; the nested family produces one duplicate.
    pub fn from_arcs_dedup(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        arcs.sort_unstable();
        arcs.dedup();
        Self::new(n, arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_neighbours(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbours(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    /// Adjacency of the underlying undirected graph, each list ascending.
    pub fn undirected_adj(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(v, w) in &self.arcs {
            adj[v].push(w);
            adj[w].push(v);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn has_arc(&self, v: usize, w: usize) -> bool {
        self.arcs.binary_search(&(v, w)).is_ok()
    }
}

/// A permutation of the vertices, optionally known to be topological.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
    topological: bool,
}

impl VertexOrder {
    /// Wraps a raw permutation without any topological claim.
    pub fn from_sequence(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in seq.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::InvalidParams(
                    "sequence is not a permutation".into(),
                ));
            }
            pos[v] = p;
        }
        Ok(VertexOrder {
            seq,
            pos,
            topological: false,
        })
    }

    /// Wraps a permutation after checking it is topological for `g`.
    pub fn topological_for(g: &Dag, seq: Vec<usize>) -> Result<Self> {
        let mut order = Self::from_sequence(seq)?;
        if order.seq.len() != g.n() {
            return Err(Error::InvalidParams("order length differs from n".into()));
        }
        if !order.respects(g) {
            return Err(Error::NotTopological);
        }
        order.topological = true;
        Ok(order)
    }

    pub fn respects(&self, g: &Dag) -> bool {
        g.arcs().iter().all(|&(v, w)| self.pos[v] < self.pos[w])
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    /// 0-based position of `v`.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn vertex_at(&self, position: usize) -> usize {
        self.seq[position]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn is_topological(&self) -> bool {
        self.topological
    }
}

/// Deterministic topological order: smallest id first among available vertices.
pub fn topological_order(g: &Dag) -> VertexOrder {
    let n = g.n();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_neighbours(v).len()).collect();
    let mut heap: BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| indeg[v] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut seq = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = heap.pop() {
        seq.push(v);
        for &w in g.out_neighbours(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(std::cmp::Reverse(w));
            }
        }
    }
    debug_assert_eq!(seq.len(), n, "Dag invariant guarantees acyclicity");
    let mut pos = vec![0; n];
    for (p, &v) in seq.iter().enumerate() {
        pos[v] = p;
    }
    VertexOrder {
        seq,
        pos,
        topological: true,
    }
}

/// Per-vertex longest-path labels, counted in vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthLabels {
    depth: Vec<usize>,
}

impl DepthLabels {
    /// Depth of `v`: vertices on the longest directed path ending at `v`.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.depth
    }

    /// Length, in vertices, of the longest directed path anywhere.
    pub fn ell(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

pub fn depth_labels(g: &Dag) -> DepthLabels {
    let order = topological_order(g);
    let mut depth = vec![1usize; g.n()];
    for &v in order.sequence() {
        for &u in g.in_neighbours(v) {
            depth[v] = depth[v].max(depth[u] + 1);
        }
    }
    DepthLabels { depth }
}

/// Exact degeneracy of the underlying undirected graph, with the
/// minimum-degree elimination order (ties broken by smallest id).
pub fn degeneracy(g: &Dag) -> (usize, VertexOrder) {
    let n = g.n();
    let adj = g.undirected_adj();
    let mut deg: Vec<usize> = (0..n).map(|v| adj[v].len()).collect();
    let mut live = vec![true; n];
    let mut queue: std::collections::BTreeSet<(usize, usize)> =
        (0..n).map(|v| (deg[v], v)).collect();
    let mut seq = Vec::with_capacity(n);
    let mut d = 0;
    while let Some(&(dv, v)) = queue.iter().next() {
        queue.remove(&(dv, v));
        live[v] = false;
        d = d.max(dv);
        seq.push(v);
        for &w in &adj[v] {
            if live[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    let order = VertexOrder::from_sequence(seq).expect("removal sequence is a permutation");
    (d, order)
}

/// Graph families used by the tests, the oracle catalogues, and the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// All arcs (i, j) with i < j.
    Complete { n: usize },
    /// A single directed path 0 -> 1 -> ... -> n-1.
    Path { n: usize },
    /// n vertices, no arcs.
    Antichain { n: usize },
    /// The nested family on 2n vertices: a Hamiltonian directed path plus
    /// the n pairwise nested chords (i, 2n-1-i); its only topological order
    /// is the path itself and its upward queue-number is exactly n.
    Nested { n: usize },
    /// The complete graph on n vertices with every edge subdivided once,
    /// each subdivision path directed low id -> division -> high id.
    KnPrime { n: usize },
    /// Uniform random labelled tree (Prufer), each edge oriented by coin flip.
    RandomTree { n: usize, seed: u64 },
    /// Random caterpillar: a spine path with pendant leaves, labels shuffled,
    /// each edge oriented by coin flip.
    RandomCaterpillar { n: usize, seed: u64 },
    /// `arcs` arcs sampled uniformly from a hidden linear order, labels shuffled.
    RandomDag { n: usize, arcs: usize, seed: u64 },
    /// Acyclic orientation of K_{half,half} induced by a random vertex ranking.
    RandomBipartite { half: usize, seed: u64 },
}

/// Id of the division vertex splitting edge (i, j), i < j, in the
/// subdivided complete graph on `n` original vertices.
pub fn knprime_division_vertex(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    n + i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub fn generate(family: &Family) -> Result<Dag> {
    match *family {
        Family::Complete { n } => {
            require_positive(n)?;
            let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    arcs.push((i, j));
                }
            }
            Dag::new(n, arcs)
        }
        Family::Path { n } => {
            require_positive(n)?;
            Dag::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect())
        }
        Family::Antichain { n } => {
            require_positive(n)?;
            Dag::new(n, Vec::new())
        }
        Family::Nested { n } => {
            require_positive(n)?;
            let v = 2 * n;
            let mut arcs: Vec<(usize, usize)> = (0..v - 1).map(|i| (i, i + 1)).collect();
            for i in 0..n {
                arcs.push((i, v - 1 - i));
            }
            Dag::from_arcs_dedup(v, arcs)
        }
        Family::KnPrime { n } => {
            require_positive(n)?;
            let total = n + n * (n - 1) / 2;
            let mut arcs = Vec::with_capacity(n * (n - 1));
            for i in 0..n {
                for j in i + 1..n {
                    let x = knprime_division_vertex(n, i, j);
                    arcs.push((i, x));
                    arcs.push((x, j));
                }
            }
            Dag::new(total, arcs)
        }
        Family::RandomTree { n, seed } => {
            require_positive(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges = random_tree_edges(n, &mut rng);
            Dag::new(n, orient_edges(edges, &mut rng))
        }
        Family::RandomCaterpillar { n, seed } => {
            require_positive(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spine = rng.gen_range(1..=n);
            let mut edges: Vec<(usize, usize)> = (0..spine - 1).map(|i| (i, i + 1)).collect();
            for leaf in spine..n {
                edges.push((rng.gen_range(0..spine), leaf));
            }
            let mut labels: Vec<usize> = (0..n).collect();
            labels.shuffle(&mut rng);
            let edges = edges
                .into_iter()
                .map(|(u, v)| (labels[u], labels[v]))
                .collect();
            Dag::new(n, orient_edges(edges, &mut rng))
        }
        Family::RandomDag { n, arcs, seed } => {
            require_positive(n)?;
            let max = n * (n - 1) / 2;
            if arcs > max {
                return Err(Error::InvalidParams(format!(
                    "{arcs} arcs requested, K_{n} has only {max}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pairs = Vec::with_capacity(max);
            for i in 0..n {
                for j in i + 1..n {
                    pairs.push((i, j));
                }
            }
            let (chosen, _) = pairs.partial_shuffle(&mut rng, arcs);
            let chosen: Vec<(usize, usize)> = chosen.to_vec();
            let mut labels: Vec<usize> = (0..n).collect();
            labels.shuffle(&mut rng);
            Dag::new(
                n,
                chosen
                    .into_iter()
                    .map(|(i, j)| (labels[i], labels[j]))
                    .collect(),
            )
        }
        Family::RandomBipartite { half, seed } => {
            require_positive(half)?;
            let n = 2 * half;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ranking: Vec<usize> = (0..n).collect();
            ranking.shuffle(&mut rng);
            let mut rank = vec![0; n];
            for (r, &v) in ranking.iter().enumerate() {
                rank[v] = r;
            }
            let mut arcs = Vec::with_capacity(half * half);
            for a in 0..half {
                for b in half..n {
                    arcs.push(if rank[a] < rank[b] { (a, b) } else { (b, a) });
                }
            }
            Dag::new(n, arcs)
        }
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    Ok(())
}

fn orient_edges(edges: Vec<(usize, usize)>, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    edges
        .into_iter()
        .map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) })
        .collect()
}

/// Uniform labelled tree via a random Prufer sequence.
fn random_tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n == 1 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut deg = vec![1usize; n];
    for &v in &prufer {
        deg[v] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| deg[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &prufer {
        let leaf = *leaves.iter().next().expect("a leaf always remains");
        leaves.remove(&leaf);
        edges.push((leaf, s));
        deg[s] -= 1;
        if deg[s] == 1 {
            leaves.insert(s);
        }
    }
    let mut it = leaves.iter();
    let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
    edges.push((a, b));
    edges
}
