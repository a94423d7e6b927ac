//! Small configurations of arcs in `S(f)` that force a short attractor in `A(f)`.
//!
//! A pattern lives on configurations whose support is inside the first three
//! coordinates. It is a union of cycles, at most one tail arc into a cycle, and at
//! most one path whose last vertex (the special configuration) only constrains the
//! first coordinate of its image.

use crate::config::{binomial, cube_size, weight, weight_key, Config};
use crate::dynamics::periodic_structure;
use crate::error::{verification, Precondition, Result};
use crate::network::BoolNet;
use crate::perm::StatePermutation;

const Z: Config = 0;
const E1: Config = 1;
const E2: Config = 2;
const E3: Config = 4;
const E12: Config = 3;
const E13: Config = 5;
const E23: Config = 6;
const E123: Config = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    Open0(u8),
    Open1(u8),
}

impl std::fmt::Display for PatternId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PatternId::P1 => write!(f, "P1"),
            PatternId::P2 => write!(f, "P2"),
            PatternId::P3 => write!(f, "P3"),
            PatternId::P4 => write!(f, "P4"),
            PatternId::P5 => write!(f, "P5"),
            PatternId::P6 => write!(f, "P6"),
            PatternId::Open0(k) => write!(f, "P0_{k}"),
            PatternId::Open1(k) => write!(f, "P1_{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub id: PatternId,
    /// Cycles, each listed along its arcs.
    pub cycles: Vec<Vec<Config>>,
    /// A configuration outside the cycles pointing at the first vertex of the first cycle.
    pub tail: Option<Config>,
    /// A path along its arcs; its last vertex is the special configuration.
    pub path: Vec<Config>,
    /// Required first coordinate of the special configuration's image.
    pub special_value: Option<bool>,
    /// The attractor forced in the asynchronous graph.
    pub attractor: Vec<Config>,
}

impl Pattern {
    fn closed(id: PatternId, cycles: Vec<Vec<Config>>, tail: Option<Config>, attractor: Vec<Config>) -> Self {
        Pattern { id, cycles, tail, path: Vec::new(), special_value: None, attractor: sorted(attractor) }
    }

    fn open(id: PatternId, cycles: Vec<Vec<Config>>, path: Vec<Config>, value: bool, attractor: Vec<Config>) -> Self {
        Pattern { id, cycles, tail: None, path, special_value: Some(value), attractor: sorted(attractor) }
    }

    /// Arcs `x -> y` fully determined by the pattern.
    pub fn arcs(&self) -> Vec<(Config, Config)> {
        let mut out = Vec::new();
        for c in &self.cycles {
            for k in 0..c.len() {
                out.push((c[k], c[(k + 1) % c.len()]));
            }
        }
        if let Some(t) = self.tail {
            out.push((t, self.cycles[0][0]));
        }
        for w in self.path.windows(2) {
            out.push((w[0], w[1]));
        }
        out
    }

    pub fn special(&self) -> Option<(Config, bool)> {
        self.special_value.map(|v| (*self.path.last().expect("open patterns have a path"), v))
    }

    /// The vertex set `X(P)`, sorted.
    pub fn vertices(&self) -> Vec<Config> {
        let mut v: Vec<Config> = self.cycles.iter().flatten().copied().collect();
        v.extend(self.tail);
        v.extend(self.path.iter().copied());
        sorted(v)
    }

    /// Labels in a fixed traversal order: cycles, tail, path.
    fn labels(&self) -> Vec<Config> {
        let mut v: Vec<Config> = self.cycles.iter().flatten().copied().collect();
        v.extend(self.tail);
        v.extend(self.path.iter().copied());
        v
    }

    pub fn min_dim(&self) -> usize {
        let all = self.vertices().iter().fold(0, |acc, &x| acc | x);
        32 - all.leading_zeros() as usize
    }
}

fn sorted(mut v: Vec<Config>) -> Vec<Config> {
    v.sort_unstable();
    v
}

pub fn pattern(id: PatternId) -> Pattern {
    use PatternId::*;
    match id {
        P1 => Pattern::closed(P1, vec![vec![Z, E1]], None, vec![Z, E1]),
        P2 => Pattern::closed(P2, vec![vec![Z, E1, E12, E2]], None, vec![Z, E1, E2, E12]),
        P3 => Pattern::closed(P3, vec![vec![Z, E12, E1]], Some(E2), vec![Z, E1, E2]),
        P4 => Pattern::closed(P4, vec![vec![E2, Z, E12], vec![E13, E1, E3]], None, vec![E2, Z, E13, E1]),
        P5 => Pattern::closed(P5, vec![vec![Z, E12, E13, E1, E3]], Some(E2), vec![E2, Z, E13, E1]),
        P6 => Pattern::closed(P6, vec![vec![E2, Z, E12, E13, E1, E3]], None, vec![E2, Z, E13, E1]),
        Open0(1) => Pattern::open(id, vec![vec![Z, E2]], vec![E12, E1], false, vec![Z, E2]),
        Open0(2) => Pattern::open(id, vec![vec![E2, Z, E23]], vec![E13, E3, E1], false, vec![E2, Z, E3, E13]),
        Open0(3) => Pattern::open(id, vec![vec![E2, Z, E23, E12]], vec![E13, E3, E1], false, vec![E2, Z, E3, E13]),
        Open0(4) => {
            Pattern::open(id, vec![vec![E2, Z, E23, E123, E12]], vec![E13, E3, E1], false, vec![E2, Z, E3, E13])
        }
        Open0(5) => Pattern::open(id, vec![], vec![E2, Z, E23, E13, E3, E1], false, vec![E2, Z, E3, E13]),
        Open1(1) => Pattern::open(id, vec![vec![E1, E12]], vec![E2, Z], true, vec![E1, E12]),
        Open1(2) => Pattern::open(id, vec![vec![E2, Z, E12]], vec![E13, E1, E3], true, vec![E2, Z, E13, E1]),
        Open1(3) => Pattern::open(id, vec![vec![E2, Z, E12, E23]], vec![E13, E1, E3], true, vec![E2, Z, E13, E1]),
        Open1(4) => Pattern::open(id, vec![vec![E2, Z, E12, E123, E23]], vec![E13, E1, E3], true, vec![E2, Z, E13, E1]),
        Open1(5) => Pattern::open(id, vec![], vec![E2, Z, E12, E13, E1, E3], true, vec![E2, Z, E13, E1]),
        Open0(k) | Open1(k) => panic!("no open pattern with index {k}"),
    }
}

/// The sixteen patterns: six closed, five 0-open, five 1-open.
pub fn all_patterns() -> Vec<Pattern> {
    use PatternId::*;
    let mut ids = vec![P1, P2, P3, P4, P5, P6];
    ids.extend((1..=5).map(Open0));
    ids.extend((1..=5).map(Open1));
    ids.into_iter().map(pattern).collect()
}

pub fn contains_pattern(f: &BoolNet, p: &Pattern) -> bool {
    if f.n() < p.min_dim() {
        return false;
    }
    let arcs_ok = p.arcs().iter().all(|&(x, y)| f.apply(x) == y);
    let special_ok = p.special().is_none_or(|(s, v)| (f.apply(s) & 1 == 1) == v);
    arcs_ok && special_ok
}

/// Every weight `1 < l < n` has at least `C(n-1, l-1) + 1` configurations outside `X`.
pub fn census_holds(n: usize, x_set: &[Config]) -> bool {
    (2..n).all(|l| {
        let inside = x_set.iter().filter(|&&x| weight(x) == l).count();
        binomial(n, l) - inside > binomial(n - 1, l - 1)
    })
}

fn complement_closed(f: &BoolNet, x_set: &[Config]) -> bool {
    let mut in_x = vec![false; f.size()];
    for &x in x_set {
        in_x[x as usize] = true;
    }
    let mut hit = vec![false; f.size()];
    for x in (0..f.size() as Config).filter(|&x| !in_x[x as usize]) {
        let y = f.apply(x);
        if in_x[y as usize] {
            return false;
        }
        hit[y as usize] = true;
    }
    (0..f.size()).all(|x| in_x[x] || hit[x])
}

/// Contains `P`, `f` does not map the complement of `X(P)` onto itself, and the
/// weight census holds for `X(P)`.
pub fn properly_contains(f: &BoolNet, p: &Pattern) -> bool {
    let x_set = p.vertices();
    contains_pattern(f, p) && !complement_closed(f, &x_set) && census_holds(f.n(), &x_set)
}

/// An injective placement of the pattern's labelled vertices onto configurations of
/// `f`, listed as `(configuration, label)`, plus the configuration that receives
/// the special configuration's image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub pairs: Vec<(Config, Config)>,
    pub special_image: Option<Config>,
}

fn slot_for(n: usize, p: &Pattern, used: &[Config]) -> Option<Config> {
    let (_, v) = p.special()?;
    let x_set = p.vertices();
    (0..cube_size(n) as Config)
        .filter(|&c| (c & 1 == 1) == v && !x_set.contains(&c) && !used.contains(&c))
        .min_by_key(|&c| weight_key(c))
}

/// Relabels `f` so that the embedded configurations carry the pattern's labels.
pub fn plug(f: &BoolNet, p: &Pattern, e: &Embedding) -> Result<BoolNet> {
    let n = f.n();
    let mut pairs = e.pairs.clone();
    if let Some(img) = e.special_image {
        let targets: Vec<Config> = pairs.iter().map(|&(_, l)| l).collect();
        let slot = slot_for(n, p, &targets).ok_or_else(|| verification("no free slot for the special image"))?;
        pairs.push((img, slot));
    }
    Ok(f.conjugate(&StatePermutation::from_partial(n, &pairs)?))
}

fn walk(f: &BoolNet, start: Config, len: usize) -> Vec<Config> {
    let mut v = Vec::with_capacity(len);
    let mut x = start;
    for _ in 0..len {
        v.push(x);
        x = f.apply(x);
    }
    v
}

/// Places cycles on the given cycles of `f` (starting at the given vertices), the
/// tail on `tail`, and the path along `f` from `path_start`.
fn embed(
    f: &BoolNet,
    p: &Pattern,
    cycle_starts: &[Config],
    tail: Option<Config>,
    path_start: Option<Config>,
) -> Option<Embedding> {
    let mut pairs = Vec::new();
    for (c, &start) in p.cycles.iter().zip(cycle_starts) {
        let w = walk(f, start, c.len());
        if f.apply(*w.last().unwrap()) != start {
            return None;
        }
        pairs.extend(w.into_iter().zip(c.iter().copied()));
    }
    if let (Some(t), Some(label)) = (tail, p.tail) {
        pairs.push((t, label));
    }
    let mut special_image = None;
    if let Some(s) = path_start {
        let w = walk(f, s, p.path.len() + 1);
        special_image = w.last().copied();
        pairs.extend(w.into_iter().zip(p.path.iter().copied()));
    }
    let mut sources: Vec<Config> = pairs.iter().map(|&(x, _)| x).collect();
    sources.sort_unstable();
    let before = sources.len();
    sources.dedup();
    if sources.len() != before || special_image.is_some_and(|s| sources.binary_search(&s).is_ok()) {
        return None;
    }
    Some(Embedding { pairs, special_image })
}

/// The case analysis on the shortest and longest limit cycle lengths, giving the
/// pattern and its placement. `None` when no case applies (e.g. a fixed point, or
/// an involution).
pub fn preferred_embedding(f: &BoolNet) -> Option<(Pattern, Embedding)> {
    use PatternId::*;
    let ps = periodic_structure(f);
    let mut cycles = ps.cycles.clone();
    cycles.sort_by_key(|c| (c.len(), c[0]));
    let shortest = cycles.first()?.len();
    let longest = cycles.iter().map(Vec::len).max()?;
    let first_of = |len: usize| cycles.iter().position(|c| c.len() == len);
    let many = cycles.len() >= 2;
    let s = first_of(shortest)?;
    let long = first_of(longest)?;
    let other = if s == 0 { 1 } else { 0 };
    let tail_into = |k: usize| -> Option<(Config, Config)> {
        // least non-periodic t with f(t) on cycle k; the cycle is entered at f(t)
        (0..f.size() as Config)
            .find(|&t| !ps.is_periodic(t) && ps.cycle_of[f.apply(t) as usize] == ps.cycle_of[cycles[k][0] as usize])
            .map(|t| (t, f.apply(t)))
    };
    let start = |k: usize| cycles[k][0];
    let perm = f.is_permutation();
    let (id, cyc, tail, path): (PatternId, Vec<Config>, Option<Config>, Option<Config>) = match shortest {
        1 => return None,
        2 if longest >= 3 => (Open0(1), vec![start(s)], None, Some(start(long))),
        2 if !perm => (P1, vec![start(s)], None, None),
        3 if longest >= 4 => (Open0(2), vec![start(s)], None, Some(start(long))),
        3 if many => (P4, vec![start(s), start(other)], None, None),
        3 => {
            let (t, entry) = tail_into(s)?;
            (P3, vec![entry], Some(t), None)
        }
        4 if many => (Open0(3), vec![start(s)], None, Some(start(other))),
        4 => (P2, vec![start(s)], None, None),
        5 if many => (Open0(4), vec![start(s)], None, Some(start(other))),
        5 => {
            let (t, entry) = tail_into(s)?;
            (P5, vec![entry], Some(t), None)
        }
        6 if longest == 6 => (P6, vec![start(s)], None, None),
        l if l >= 6 => (Open0(5), vec![], None, Some(start(long))),
        _ => return None,
    };
    let p = pattern(id);
    let e = embed(f, &p, &cyc, tail, path)?;
    Some((p, e))
}

/// Every placement of every closed or 0-open pattern, in a fixed order.
pub fn all_embeddings(f: &BoolNet) -> Vec<(Pattern, Embedding)> {
    let ps = periodic_structure(f);
    let size = f.size() as Config;
    let mut out = Vec::new();
    for p in all_patterns().into_iter().filter(|p| !matches!(p.id, PatternId::Open1(_))) {
        if f.n() < p.min_dim() {
            continue;
        }
        // candidate starts for each pattern cycle: every vertex of a cycle of that length
        let cycle_choices: Vec<Vec<Config>> =
            p.cycles.iter().map(|c| (0..size).filter(|&x| ps.period(x) == Some(c.len())).collect()).collect();
        let mut starts = vec![Vec::new()];
        for choices in &cycle_choices {
            let mut next = Vec::new();
            for s in &starts {
                for &c in choices {
                    let mut t: Vec<Config> = s.clone();
                    t.push(c);
                    next.push(t);
                }
            }
            starts = next;
        }
        for cs in &starts {
            let tails: Vec<Option<Config>> = if p.tail.is_some() {
                (0..size).filter(|&t| !ps.is_periodic(t) && f.apply(t) == cs[0]).map(Some).collect()
            } else {
                vec![None]
            };
            let paths: Vec<Option<Config>> = if p.path.is_empty() { vec![None] } else { (0..size).map(Some).collect() };
            for &t in &tails {
                for &s in &paths {
                    if let Some(e) = embed(f, &p, cs, t, s) {
                        out.push((p.clone(), e));
                    }
                }
            }
        }
    }
    out
}

/// A network `g ~ f` that properly contains some pattern, together with that pattern.
pub fn plug_pattern(f: &BoolNet) -> Result<(BoolNet, Pattern)> {
    let n = f.n();
    if n < 4 {
        return Err(Precondition::Dimension { got: n, min: 4, max: crate::config::MAX_DIM }.into());
    }
    if f.fixed_point_count() > 0 {
        return Err(Precondition::HasFixedPoint.into());
    }
    if f.compose(f).is_identity() {
        return Err(Precondition::Involution.into());
    }
    if n == 4 && super::small::exceptional_fixture(f).is_some() {
        return Err(Precondition::Exceptional.into());
    }
    if let Some((p, e)) = preferred_embedding(f) {
        let g = plug(f, &p, &e)?;
        if properly_contains(&g, &p) {
            return Ok((g, p));
        }
    }
    for (p, e) in all_embeddings(f) {
        let g = plug(f, &p, &e)?;
        if properly_contains(&g, &p) {
            return Ok((g, p));
        }
    }
    Err(verification("no pattern can be placed with proper containment"))
}

/// Relabelling taking a 0-open pattern onto the matching 1-open one, positionally
/// along cycles and path. For `k` equal to 2 or 5 the vertex sets differ by one
/// configuration, which is sent to the other one; the rest is fixed.
pub fn open_correction(n: usize, k: u8) -> StatePermutation {
    let from = pattern(PatternId::Open0(k)).labels();
    let to = pattern(PatternId::Open1(k)).labels();
    let pairs: Vec<(Config, Config)> = from.into_iter().zip(to).collect();
    StatePermutation::from_partial(n, &pairs).expect("labels are distinct")
}

/// As [`open_correction`], except when `h` sends the special configuration to the
/// configuration that would be moved into the 0-open vertex set: that image goes to
/// the least slot outside both vertex sets with first coordinate 1 instead.
pub fn open_correction_for(h: &BoolNet, k: u8) -> StatePermutation {
    let n = h.n();
    let p0 = pattern(PatternId::Open0(k));
    let p1 = pattern(PatternId::Open1(k));
    let plain = open_correction(n, k);
    let (x, _) = p0.special().expect("open pattern");
    let img = h.apply(x);
    if plain.apply(img) & 1 == 1 || !p1.vertices().contains(&img) {
        return plain;
    }
    let (x0, x1) = (p0.vertices(), p1.vertices());
    let Some(slot) = (0..cube_size(n) as Config)
        .filter(|&c| c & 1 == 1 && !x0.contains(&c) && !x1.contains(&c))
        .min_by_key(|&c| weight_key(c))
    else {
        return plain;
    };
    let mut pairs: Vec<(Config, Config)> = p0.labels().into_iter().zip(p1.labels()).collect();
    pairs.extend([(img, slot), (slot, plain.apply(img))]);
    StatePermutation::from_partial(n, &pairs).expect("distinct sources and targets")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::strongly_connected_components;
    use crate::digraph::Digraph;

    /// Asynchronous arcs the pattern forces on `X(P)` plus a sink standing for
    /// "outside or unknown"; terminal components avoiding the sink are forced attractors.
    fn forced_attractors(p: &Pattern) -> Vec<Vec<Config>> {
        let sink: Config = 8;
        let mut arcs = Vec::new();
        let x_set = p.vertices();
        let image: std::collections::HashMap<Config, Config> = p.arcs().into_iter().collect();
        for &x in &x_set {
            match image.get(&x) {
                Some(&y) => {
                    let mut d = x ^ y;
                    while d != 0 {
                        let low = d & d.wrapping_neg();
                        let z = x ^ low;
                        arcs.push((x, if x_set.contains(&z) { z } else { sink }));
                        d ^= low;
                    }
                }
                None => arcs.push((x, sink)),
            }
        }
        struct G(Vec<Vec<Config>>);
        impl Digraph for G {
            fn vertex_count(&self) -> usize {
                self.0.len()
            }
            fn for_each_successor<F: FnMut(Config)>(&self, v: Config, mut f: F) {
                for &w in &self.0[v as usize] {
                    f(w);
                }
            }
        }
        let mut adj = vec![Vec::new(); 9];
        for (x, y) in arcs {
            adj[x as usize].push(y);
        }
        let g = G(adj);
        strongly_connected_components(&g)
            .into_iter()
            .filter(|c| !c.contains(&sink) && c.iter().all(|&v| x_set.contains(&v)))
            .filter(|c| c.iter().all(|&v| g.successors(v).iter().all(|w| c.contains(w))))
            .collect()
    }

    #[test]
    fn forced_attractors_match_the_catalog() {
        for p in all_patterns() {
            let found = forced_attractors(&p);
            assert_eq!(found, vec![p.attractor.clone()], "{}", p.id);
            assert!(p.attractor.len() <= 4);
        }
    }

    #[test]
    fn pattern_vertex_sets_are_down_sets() {
        for p in all_patterns() {
            assert!(super::super::order::is_down_set(3, &p.vertices()).is_ok(), "{}", p.id);
        }
    }

    #[test]
    fn corrections_map_open_patterns_onto_each_other() {
        for k in 1..=5 {
            let p0 = pattern(PatternId::Open0(k));
            let p1 = pattern(PatternId::Open1(k));
            let shared = p0.vertices().iter().filter(|x| p1.vertices().contains(x)).count();
            let differ = matches!(k, 2 | 5) as usize;
            assert_eq!(shared + differ, p0.vertices().len(), "k {k}");
            let pi = open_correction(3, k);
            let mut mapped: Vec<(Config, Config)> =
                p0.arcs().iter().map(|&(x, y)| (pi.apply(x), pi.apply(y))).collect();
            let mut expected = p1.arcs();
            mapped.sort_unstable();
            expected.sort_unstable();
            assert_eq!(mapped, expected);
            assert_eq!(pi.apply(p0.special().unwrap().0), p1.special().unwrap().0);
            let outside = (0..8).filter(|x| !p0.vertices().contains(x) && !p1.vertices().contains(x));
            assert!(outside.into_iter().all(|x| pi.apply(x) == x));
        }
    }
}
