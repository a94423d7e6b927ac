use fixedbitset::FixedBitSet;

use crate::config::{cube_size, dist, Config};
use crate::error::{Precondition, Result};

/// Anything whose vertices are `0..vertex_count()` and whose out-neighbours can be listed.
pub trait Digraph {
    fn vertex_count(&self) -> usize;
    fn for_each_successor<F: FnMut(Config)>(&self, v: Config, f: F);

    fn successors(&self, v: Config) -> Vec<Config> {
        let mut out = Vec::new();
        self.for_each_successor(v, |w| out.push(w));
        out
    }
}

/// Digraph on the configurations of the n-cube with one adjacency bit row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateDigraph {
    n: usize,
    rows: Vec<FixedBitSet>,
}

impl StateDigraph {
    pub fn empty(n: usize) -> Self {
        let size = cube_size(n);
        StateDigraph { n, rows: vec![FixedBitSet::with_capacity(size); size] }
    }

    pub fn from_graph<G: Digraph>(n: usize, g: &G) -> Self {
        assert_eq!(g.vertex_count(), cube_size(n));
        let mut d = Self::empty(n);
        for v in 0..cube_size(n) as Config {
            g.for_each_successor(v, |w| d.add_arc(v, w));
        }
        d
    }

    pub fn from_arcs(n: usize, arcs: &[(Config, Config)]) -> Result<Self> {
        let size = cube_size(n);
        let mut d = Self::empty(n);
        for &(x, y) in arcs {
            for v in [x, y] {
                if v as usize >= size {
                    return Err(Precondition::OutOfRange(v).into());
                }
            }
            d.add_arc(x, y);
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, x: Config, y: Config) {
        self.rows[x as usize].insert(y as usize);
    }

    pub fn has_arc(&self, x: Config, y: Config) -> bool {
        self.rows[x as usize].contains(y as usize)
    }

    pub fn out_degree(&self, x: Config) -> usize {
        self.rows[x as usize].count_ones(..)
    }

    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    /// All arcs in ascending (tail, head) order.
    pub fn arcs(&self) -> Vec<(Config, Config)> {
        let mut out = Vec::new();
        for (x, row) in self.rows.iter().enumerate() {
            out.extend(row.ones().map(|y| (x as Config, y as Config)));
        }
        out
    }

    /// True when every arc joins configurations at Hamming distance one.
    pub fn is_cube_subgraph(&self) -> bool {
        self.arcs().iter().all(|&(x, y)| dist(x, y) == 1)
    }
}

impl Digraph for StateDigraph {
    fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    fn for_each_successor<F: FnMut(Config)>(&self, v: Config, mut f: F) {
        for w in self.rows[v as usize].ones() {
            f(w as Config);
        }
    }
}

/// Strongly connected components, each sorted, listed in reverse topological order
/// of the condensation (sinks first).
pub fn strongly_connected_components<G: Digraph>(g: &G) -> Vec<Vec<Config>> {
    const UNSEEN: u32 = u32::MAX;
    let size = g.vertex_count();
    let mut index = vec![UNSEEN; size];
    let mut low = vec![0u32; size];
    let mut on_stack = vec![false; size];
    let mut stack: Vec<Config> = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0u32;
    // Explicit DFS frames: vertex plus its successor list and cursor.
    let mut frames: Vec<(Config, Vec<Config>, usize)> = Vec::new();

    for root in 0..size as Config {
        if index[root as usize] != UNSEEN {
            continue;
        }
        index[root as usize] = next;
        low[root as usize] = next;
        next += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        frames.push((root, g.successors(root), 0));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                let wi = w as usize;
                if index[wi] == UNSEEN {
                    index[wi] = next;
                    low[wi] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[wi] = true;
                    frames.push((w, g.successors(w), 0));
                } else if on_stack[wi] {
                    low[v as usize] = low[v as usize].min(index[wi]);
                }
                continue;
            }
            frames.pop();
            if let Some(parent) = frames.last() {
                let p = parent.0 as usize;
                low[p] = low[p].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("component root is on the stack");
                    on_stack[w as usize] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

/// Terminal strongly connected components of a digraph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AttractorSet {
    /// Each attractor as a sorted vertex list; attractors ordered by least vertex.
    pub attractors: Vec<Vec<Config>>,
}

impl AttractorSet {
    pub fn count(&self) -> usize {
        self.attractors.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.attractors.iter().map(Vec::len).collect()
    }

    /// Attractor index for every vertex lying in some attractor.
    pub fn membership(&self, vertex_count: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; vertex_count];
        for (k, a) in self.attractors.iter().enumerate() {
            for &v in a {
                out[v as usize] = Some(k);
            }
        }
        out
    }

    /// All attractor vertices, sorted.
    pub fn union(&self) -> Vec<Config> {
        let mut all: Vec<Config> = self.attractors.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

pub fn attractors<G: Digraph>(g: &G) -> AttractorSet {
    let comps = strongly_connected_components(g);
    let mut comp_of = vec![0usize; g.vertex_count()];
    for (k, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v as usize] = k;
        }
    }
    let mut out: Vec<Vec<Config>> = comps
        .iter()
        .enumerate()
        .filter(|(k, c)| {
            let mut closed = true;
            for &v in c.iter() {
                g.for_each_successor(v, |w| closed &= comp_of[w as usize] == *k);
            }
            closed
        })
        .map(|(_, c)| c.clone())
        .collect();
    out.sort_unstable_by_key(|c| c[0]);
    AttractorSet { attractors: out }
}

/// True when the digraph has a single strongly connected component.
pub fn is_strongly_connected<G: Digraph>(g: &G) -> bool {
    strongly_connected_components(g).len() == 1
}

/// Breadth-first distances from `source`; `u32::MAX` marks unreachable vertices.
pub fn bfs_distances<G: Digraph>(g: &G, source: Config) -> Vec<u32> {
    let mut d = vec![u32::MAX; g.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    d[source as usize] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let dv = d[v as usize];
        g.for_each_successor(v, |w| {
            if d[w as usize] == u32::MAX {
                d[w as usize] = dv + 1;
                queue.push_back(w);
            }
        });
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_components_of_a_small_digraph() {
        // 0 -> 1 <-> 2, 3 -> 3
        let g = StateDigraph::from_arcs(2, &[(0, 1), (1, 2), (2, 1), (3, 3)]).unwrap();
        let a = attractors(&g);
        assert_eq!(a.attractors, vec![vec![1, 2], vec![3]]);
        assert_eq!(strongly_connected_components(&g).len(), 3);
        assert!(!is_strongly_connected(&g));
    }

    #[test]
    fn deep_paths_do_not_overflow_the_stack() {
        let n = 12;
        let size = cube_size(n) as Config;
        let arcs: Vec<_> = (0..size - 1).map(|v| (v, v + 1)).collect();
        let g = StateDigraph::from_arcs(n, &arcs).unwrap();
        let a = attractors(&g);
        assert_eq!(a.attractors, vec![vec![size - 1]]);
    }
}
