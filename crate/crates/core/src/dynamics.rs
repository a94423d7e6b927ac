//! Synchronous and asynchronous state graphs and the quantities read off them.

use std::collections::VecDeque;

use crate::config::{complement, cube_size, Config};
use crate::digraph::{attractors, AttractorSet, Digraph, StateDigraph};
use crate::network::BoolNet;
use crate::solidity::CubeSubgraph;

/// Implicit synchronous graph: one arc `x -> f(x)` per configuration.
#[derive(Clone, Copy)]
pub struct SyncView<'a>(pub &'a BoolNet);

/// Implicit asynchronous graph: `x -> x + e_i` whenever `f_i(x) != x_i`.
#[derive(Clone, Copy)]
pub struct AsyncView<'a>(pub &'a BoolNet);

impl Digraph for SyncView<'_> {
    fn vertex_count(&self) -> usize {
        self.0.size()
    }

    fn for_each_successor<F: FnMut(Config)>(&self, v: Config, mut f: F) {
        f(self.0.apply(v));
    }
}

impl Digraph for AsyncView<'_> {
    fn vertex_count(&self) -> usize {
        self.0.size()
    }

    fn for_each_successor<F: FnMut(Config)>(&self, v: Config, mut f: F) {
        let mut d = self.0.unstable(v);
        while d != 0 {
            let low = d & d.wrapping_neg();
            f(v ^ low);
            d ^= low;
        }
    }
}

pub fn synchronous_graph(f: &BoolNet) -> StateDigraph {
    StateDigraph::from_graph(f.n(), &SyncView(f))
}

pub fn asynchronous_graph(f: &BoolNet) -> StateDigraph {
    StateDigraph::from_graph(f.n(), &AsyncView(f))
}

/// Underlying undirected graph of the asynchronous graph as a subgraph of the cube.
pub fn undirected_async(f: &BoolNet) -> CubeSubgraph {
    let n = f.n();
    let mut g = CubeSubgraph::empty(n);
    for x in 0..f.size() as Config {
        let mut d = f.unstable(x);
        while d != 0 {
            let i = d.trailing_zeros() as usize + 1;
            g.insert(x, i);
            d &= d - 1;
        }
    }
    g
}

pub fn async_attractors(f: &BoolNet) -> AttractorSet {
    attractors(&AsyncView(f))
}

pub fn sync_attractors(f: &BoolNet) -> AttractorSet {
    attractors(&SyncView(f))
}

/// Limit cycles of the synchronous dynamics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicStructure {
    /// Each cycle starts at its least configuration and follows `f`; cycles are
    /// ordered by that least configuration.
    pub cycles: Vec<Vec<Config>>,
    /// Cycle index of each periodic configuration.
    pub cycle_of: Vec<Option<u32>>,
}

impl PeriodicStructure {
    pub fn is_periodic(&self, x: Config) -> bool {
        self.cycle_of[x as usize].is_some()
    }

    pub fn period(&self, x: Config) -> Option<usize> {
        self.cycle_of[x as usize].map(|k| self.cycles[k as usize].len())
    }

    /// Sorted multiset of cycle lengths.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        l.sort_unstable();
        l
    }

    pub fn periodic_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }
}

pub fn periodic_structure(f: &BoolNet) -> PeriodicStructure {
    let size = f.size();
    // 0 unvisited, 1 on the current walk, 2 finished
    let mut state = vec![0u8; size];
    let mut cycles = Vec::new();
    let mut walk = Vec::new();
    for start in 0..size as Config {
        if state[start as usize] != 0 {
            continue;
        }
        walk.clear();
        let mut x = start;
        while state[x as usize] == 0 {
            state[x as usize] = 1;
            walk.push(x);
            x = f.apply(x);
        }
        if state[x as usize] == 1 {
            let pos = walk.iter().position(|&w| w == x).expect("x is on the walk");
            let mut cycle = walk[pos..].to_vec();
            let min_pos = cycle.iter().enumerate().min_by_key(|&(_, &c)| c).map(|(k, _)| k).unwrap();
            cycle.rotate_left(min_pos);
            cycles.push(cycle);
        }
        for &w in &walk {
            state[w as usize] = 2;
        }
    }
    cycles.sort_unstable_by_key(|c| c[0]);
    let mut cycle_of = vec![None; size];
    for (k, c) in cycles.iter().enumerate() {
        for &x in c {
            cycle_of[x as usize] = Some(k as u32);
        }
    }
    PeriodicStructure { cycles, cycle_of }
}

/// The sets Δ⁺ (configurations sent to their complement) and Δ⁻ (configurations
/// that every neighbour points back to).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSets {
    pub plus: Vec<Config>,
    pub minus: Vec<Config>,
}

pub fn delta_sets(f: &BoolNet) -> DeltaSets {
    let n = f.n();
    let size = f.size() as Config;
    let plus = (0..size).filter(|&x| f.apply(x) == complement(x, n)).collect();
    let minus = (0..size)
        .filter(|&x| {
            (0..n).all(|k| {
                let y = x ^ (1 << k);
                (f.apply(y) ^ x) >> k & 1 == 0
            })
        })
        .collect();
    DeltaSets { plus, minus }
}

/// `|f^k({0,1}^n)|`.
pub fn image_count(f: &BoolNet, k: usize) -> usize {
    let mut current = vec![true; f.size()];
    for _ in 0..k {
        let mut next = vec![false; f.size()];
        for (x, &inside) in current.iter().enumerate() {
            if inside {
                next[f.apply(x as Config) as usize] = true;
            }
        }
        current = next;
    }
    current.iter().filter(|&&b| b).count()
}

/// Two configurations `a, b` with `a, b, f(a), f(b)` pairwise distinct, choosing the
/// least `a` and then the least `b`.
pub fn contains_2p1(f: &BoolNet) -> Option<(Config, Config)> {
    let size = f.size() as Config;
    for a in 0..size {
        let fa = f.apply(a);
        if fa == a {
            continue;
        }
        for b in 0..size {
            let fb = f.apply(b);
            if b != a && b != fa && fb != b && fb != a && fb != fa {
                return Some((a, b));
            }
        }
    }
    None
}

/// Reachability of a target set by paths of the asynchronous graph that use at most
/// one increasing arc (an arc `x -> x + e_i` with `x_i = 0`).
#[derive(Debug, Clone)]
pub struct ReachReport {
    pub ok: bool,
    pub unreached: Vec<Config>,
    /// Shortest admissible path length per configuration (`u32::MAX` if none).
    pub distance: Vec<u32>,
    // next hop when no increasing arc is allowed / when one still is
    next_closed: Vec<Config>,
    next_open: Vec<Config>,
    dist_closed: Vec<u32>,
}

impl ReachReport {
    /// A shortest admissible path from `x` to the target set, endpoints included.
    pub fn witness(&self, x: Config) -> Option<Vec<Config>> {
        if self.distance[x as usize] == u32::MAX {
            return None;
        }
        let mut path = vec![x];
        let mut v = x;
        let mut open = true;
        loop {
            let (d, next) = if open {
                (self.distance[v as usize], self.next_open[v as usize])
            } else {
                (self.dist_closed[v as usize], self.next_closed[v as usize])
            };
            if d == 0 {
                return Some(path);
            }
            if open && next & !v != 0 {
                open = false;
            }
            v = next;
            path.push(v);
        }
    }

    /// Longest shortest admissible path over all configurations.
    pub fn max_length(&self) -> Option<u32> {
        if !self.ok {
            return None;
        }
        self.distance.iter().copied().max()
    }
}

pub fn almost_decreasing_reach(f: &BoolNet, targets: &[Config]) -> ReachReport {
    let n = f.n();
    let size = cube_size(n);
    let mut dist = [vec![u32::MAX; size], vec![u32::MAX; size]];
    let mut next = [vec![0 as Config; size], vec![0 as Config; size]];
    let mut queue = VecDeque::new();
    let seeds = targets.iter().copied().chain(f.fixed_points());
    for t in seeds {
        for layer in 0..2 {
            if dist[layer][t as usize] != 0 {
                dist[layer][t as usize] = 0;
                next[layer][t as usize] = t;
                queue.push_back((t, layer));
            }
        }
    }
    // Layer 0: no increasing arc left; layer 1: one still allowed. Searching
    // backwards, a predecessor v of u is v = u + e_i with f_i(v) != v_i.
    while let Some((u, layer)) = queue.pop_front() {
        let du = dist[layer][u as usize];
        for k in 0..n {
            let v = u ^ (1 << k);
            if f.unstable(v) >> k & 1 == 0 {
                continue;
            }
            let increasing = v >> k & 1 == 0;
            let from_layer = match (increasing, layer) {
                (false, l) => l,
                (true, 0) => 1,
                (true, _) => continue,
            };
            let slot = &mut dist[from_layer][v as usize];
            if *slot == u32::MAX {
                *slot = du + 1;
                next[from_layer][v as usize] = u;
                queue.push_back((v, from_layer));
            }
        }
    }
    let [dist_closed, distance] = dist;
    let [next_closed, next_open] = next;
    let unreached: Vec<Config> = (0..size as Config).filter(|&x| distance[x as usize] == u32::MAX).collect();
    ReachReport { ok: unreached.is_empty(), unreached, distance, next_closed, next_open, dist_closed }
}

/// `f(x) = x + Σ_{y ∈ out(x)} (x + y)`: the unique network with the given
/// asynchronous graph, provided every arc joins neighbouring configurations.
pub fn reconstruct_network(g: &StateDigraph) -> crate::Result<BoolNet> {
    use crate::error::Precondition;
    let mut table = Vec::with_capacity(g.vertex_count());
    for x in 0..g.vertex_count() as Config {
        let mut y = x;
        for w in g.successors(x) {
            let d = x ^ w;
            if d.count_ones() != 1 {
                return Err(Precondition::NotCubeArc { from: x, to: w }.into());
            }
            y ^= d;
        }
        table.push(y);
    }
    BoolNet::from_table(g.n(), table)
}
