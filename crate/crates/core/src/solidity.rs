//! Spanning subgraphs of the hypercube and the staple rule that certifies solidity.

use fixedbitset::FixedBitSet;
use rand::Rng;
use rayon::prelude::*;

use crate::config::{cube_size, dist, Config};
use crate::error::{Precondition, Result};
use crate::rng::RandomSource;

/// Largest dimension accepted by the brute-force closure.
pub const EXACT_CLOSURE_MAX_DIM: usize = 3;

/// An edge of the n-cube named by its lower endpoint (coordinate `dir` is 0 there)
/// and its 1-based direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeEdge {
    pub low: Config,
    pub dir: usize,
}

impl CubeEdge {
    pub fn new(x: Config, dir: usize) -> Self {
        CubeEdge { low: x & !(1 << (dir - 1)), dir }
    }

    pub fn from_endpoints(x: Config, y: Config) -> Option<Self> {
        if dist(x, y) != 1 {
            return None;
        }
        Some(Self::new(x, (x ^ y).trailing_zeros() as usize + 1))
    }

    pub fn high(&self) -> Config {
        self.low | 1 << (self.dir - 1)
    }
}

/// Spanning subgraph of the n-cube as a bitset over its `n·2^(n-1)` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSubgraph {
    n: usize,
    edges: FixedBitSet,
}

impl CubeSubgraph {
    pub fn empty(n: usize) -> Self {
        CubeSubgraph { n, edges: FixedBitSet::with_capacity(Self::edge_total(n)) }
    }

    pub fn full(n: usize) -> Self {
        let mut g = Self::empty(n);
        g.edges.insert_range(..);
        g
    }

    pub fn edge_total(n: usize) -> usize {
        if n == 0 {
            0
        } else {
            n << (n - 1)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of an edge: `(dir-1)·2^(n-1)` plus the rank of its lower endpoint among
    /// configurations whose coordinate `dir` is 0.
    pub fn index(&self, e: CubeEdge) -> usize {
        let k = e.dir - 1;
        let low_mask = (1u32 << k) - 1;
        let rank = (e.low & low_mask) | ((e.low >> 1) & !low_mask);
        (k << (self.n - 1)) + rank as usize
    }

    pub fn edge_at(&self, idx: usize) -> CubeEdge {
        let half = 1usize << (self.n - 1);
        let k = idx / half;
        let rank = (idx % half) as Config;
        let low_mask = (1u32 << k) - 1;
        let low = (rank & low_mask) | ((rank & !low_mask) << 1);
        CubeEdge { low, dir: k + 1 }
    }

    /// Adds the edge joining `x` and `x + e_dir`.
    pub fn insert(&mut self, x: Config, dir: usize) {
        let idx = self.index(CubeEdge::new(x, dir));
        self.edges.insert(idx);
    }

    pub fn insert_edge(&mut self, e: CubeEdge) {
        let idx = self.index(e);
        self.edges.insert(idx);
    }

    pub fn remove_edge(&mut self, e: CubeEdge) {
        let idx = self.index(e);
        self.edges.set(idx, false);
    }

    pub fn contains(&self, x: Config, dir: usize) -> bool {
        self.edges.contains(self.index(CubeEdge::new(x, dir)))
    }

    pub fn contains_edge(&self, e: CubeEdge) -> bool {
        self.edges.contains(self.index(e))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones(..)
    }

    pub fn is_full(&self) -> bool {
        self.edge_count() == Self::edge_total(self.n)
    }

    pub fn edges(&self) -> impl Iterator<Item = CubeEdge> + '_ {
        self.edges.ones().map(|i| self.edge_at(i))
    }

    pub fn is_subgraph_of(&self, other: &CubeSubgraph) -> bool {
        self.edges.is_subset(&other.edges)
    }
}

/// The `n - 1` staples on an edge `xy` of direction `i`: for each `j != i`, the path
/// `x, x + e_j, y + e_j, y`, given as its three edges.
pub fn staples(n: usize, e: CubeEdge) -> Vec<[CubeEdge; 3]> {
    let x = e.low;
    let y = e.high();
    (1..=n)
        .filter(|&j| j != e.dir)
        .map(|j| [CubeEdge::new(x, j), CubeEdge::new(x ^ 1 << (j - 1), e.dir), CubeEdge::new(y, j)])
        .collect()
}

fn complete_staples(g: &CubeSubgraph, e: CubeEdge) -> usize {
    let x = e.low;
    let y = e.high();
    (1..=g.n)
        .filter(|&j| j != e.dir)
        .filter(|&j| {
            let m = 1 << (j - 1);
            g.contains(x, j) && g.contains(x ^ m, e.dir) && g.contains(y, j)
        })
        .count()
}

/// Edges whose staple count can change when `e` is added.
fn affected(n: usize, e: CubeEdge) -> impl Iterator<Item = CubeEdge> {
    let x = e.low;
    let y = e.high();
    let j = e.dir;
    (1..=n).filter(move |&i| i != j).flat_map(move |i| {
        let m = 1 << (i - 1);
        // as a leg at either endpoint, and as the middle rung of a parallel edge
        [CubeEdge::new(x, i), CubeEdge::new(y, i), CubeEdge::new(x ^ m, j)]
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolidityReport {
    pub closure: CubeSubgraph,
    pub is_fully_solid: bool,
    /// Number of rounds in which at least one edge was added.
    pub closure_rounds: usize,
    pub added: usize,
}

/// Closure under "add any edge carrying at least four complete staples". Each round
/// decides against the edge set at the start of the round.
pub fn staple_closure(g: &CubeSubgraph) -> SolidityReport {
    let n = g.n;
    let mut current = g.clone();
    let mut rounds = 0;
    let mut added = 0;
    let mut candidates: Vec<CubeEdge> = if n >= 5 {
        (0..CubeSubgraph::edge_total(n)).filter(|&i| !current.edges.contains(i)).map(|i| current.edge_at(i)).collect()
    } else {
        Vec::new()
    };
    let mut queued = FixedBitSet::with_capacity(CubeSubgraph::edge_total(n));
    while !candidates.is_empty() {
        let fresh: Vec<CubeEdge> = candidates
            .iter()
            .copied()
            .filter(|&e| !current.contains_edge(e) && complete_staples(&current, e) >= 4)
            .collect();
        if fresh.is_empty() {
            break;
        }
        rounds += 1;
        added += fresh.len();
        for &e in &fresh {
            current.insert_edge(e);
        }
        queued.clear();
        candidates.clear();
        for &e in &fresh {
            for a in affected(n, e) {
                let idx = current.index(a);
                if !current.edges.contains(idx) && !queued.put(idx) {
                    candidates.push(a);
                }
            }
        }
    }
    let is_fully_solid = current.is_full();
    SolidityReport { closure: current, is_fully_solid, closure_rounds: rounds, added }
}

/// Edges of the n-cube that every embedding of `g` into the n-cube maps onto a cube
/// edge, by enumerating all vertex permutations.
pub fn exact_solid_closure(g: &CubeSubgraph) -> Result<CubeSubgraph> {
    let n = g.n;
    if n > EXACT_CLOSURE_MAX_DIM || n == 0 {
        return Err(Precondition::Dimension { got: n, min: 1, max: EXACT_CLOSURE_MAX_DIM }.into());
    }
    let size = cube_size(n);
    let edges: Vec<CubeEdge> = g.edges().collect();
    let mut closure = CubeSubgraph::full(n);
    let all: Vec<CubeEdge> = closure.edges().collect();
    let mut perm: Vec<Config> = (0..size as Config).collect();
    let mut c = vec![0usize; size];
    let visit = |perm: &[Config], closure: &mut CubeSubgraph| {
        let embeds = edges.iter().all(|e| dist(perm[e.low as usize], perm[e.high() as usize]) == 1);
        if embeds {
            for &e in &all {
                if dist(perm[e.low as usize], perm[e.high() as usize]) != 1 {
                    closure.remove_edge(e);
                }
            }
        }
    };
    // Heap's algorithm
    visit(&perm, &mut closure);
    let mut i = 0;
    while i < size {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm, &mut closure);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(closure)
}

/// Random spanning subgraph: one uniform draw per edge in index order, edge kept
/// when the draw is below `p`. Sharing the stream across values of `p` couples the
/// samples monotonically.
pub fn random_cube_subgraph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> CubeSubgraph {
    let mut g = CubeSubgraph::empty(n);
    for idx in 0..CubeSubgraph::edge_total(n) {
        let u: f64 = rng.gen();
        if u < p {
            g.edges.insert(idx);
        }
    }
    g
}

/// Whether each sample's staple closure is the whole cube; sample `k` uses stream `k`.
pub fn solidity_outcomes(n: usize, p: f64, samples: usize, rs: &RandomSource) -> Result<Vec<bool>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Precondition::Probability(p).into());
    }
    if n == 0 || n > 16 {
        return Err(Precondition::Dimension { got: n, min: 1, max: 16 }.into());
    }
    Ok((0..samples as u64)
        .into_par_iter()
        .map(|k| {
            let g = random_cube_subgraph(n, p, &mut rs.stream(k));
            staple_closure(&g).is_fully_solid
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolidityExperiment {
    pub n: usize,
    pub p: f64,
    pub samples: usize,
    pub certified: usize,
    pub seed: u64,
}

impl SolidityExperiment {
    pub fn certified_fraction(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.certified as f64 / self.samples as f64
        }
    }

    pub const CSV_HEADER: &'static str = "n,p,samples,certified_fraction,seed";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.n, self.p, self.samples, self.certified_fraction(), self.seed)
    }
}

pub fn solidity_experiment(n: usize, p: f64, samples: usize, rs: &RandomSource) -> Result<SolidityExperiment> {
    let certified = solidity_outcomes(n, p, samples, rs)?.into_iter().filter(|&b| b).count();
    Ok(SolidityExperiment { n, p, samples, certified, seed: rs.seed() })
}
