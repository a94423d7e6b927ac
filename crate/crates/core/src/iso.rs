//! Isomorphism of networks (as functional graphs), isometries of the cube, and
//! isomorphism of general state digraphs.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::config::{cube_size, Config};
use crate::digraph::{Digraph, StateDigraph};
use crate::dynamics::periodic_structure;
use crate::error::{Precondition, Result};
use crate::network::BoolNet;
use crate::perm::StatePermutation;

/// Largest dimension for which isometries are enumerated.
pub const ISOMETRY_MAX_DIM: usize = 8;
/// Largest vertex count accepted by the general digraph matcher.
pub const DIGRAPH_MAX_VERTICES: usize = 1 << 12;

/// Byte string equal for two networks exactly when their synchronous graphs are
/// isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
    /// Sorted cycle lengths.
    pub cycle_lengths: Vec<usize>,
    pub transient_count: usize,
    pub max_height: usize,
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Lowercase hex SHA-256 of the canonical bytes.
    pub fn digest(&self) -> String {
        Sha256::digest(&self.bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn summary(&self) -> String {
        let cycles: Vec<String> = self.cycle_lengths.iter().map(usize::to_string).collect();
        format!("cycles=[{}] transient={} height={}", cycles.join(","), self.transient_count, self.max_height)
    }
}

/// Start of the lexicographically least rotation.
fn least_rotation(s: &[u32]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

fn push_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

/// Level-wise AHU encoding of the in-trees hanging off each limit cycle, then each
/// cycle as the least rotation of its tree codes, then components sorted.
pub fn canonical_form(f: &BoolNet) -> CanonicalForm {
    let size = f.size();
    let ps = periodic_structure(f);
    let mut children: Vec<Vec<Config>> = vec![Vec::new(); size];
    for x in 0..size as Config {
        if !ps.is_periodic(x) {
            children[f.apply(x) as usize].push(x);
        }
    }
    // heights by peeling leaves
    let mut pending: Vec<usize> = children.iter().map(Vec::len).collect();
    let mut height = vec![0usize; size];
    let mut stack: Vec<Config> = (0..size as Config).filter(|&x| pending[x as usize] == 0).collect();
    let mut by_height: Vec<Vec<Config>> = Vec::new();
    while let Some(v) = stack.pop() {
        let h = height[v as usize];
        if by_height.len() <= h {
            by_height.resize(h + 1, Vec::new());
        }
        by_height[h].push(v);
        if !ps.is_periodic(v) {
            let p = f.apply(v) as usize;
            height[p] = height[p].max(h + 1);
            pending[p] -= 1;
            if pending[p] == 0 {
                stack.push(p as Config);
            }
        }
    }

    let mut id = vec![0u32; size];
    let mut bytes = b"FG1".to_vec();
    push_u32(&mut bytes, f.n() as u32);
    push_u32(&mut bytes, by_height.len() as u32);
    let mut base = 0u32;
    for level in &by_height {
        let mut keyed: Vec<(Vec<u32>, Config)> = level
            .iter()
            .map(|&v| {
                let mut key: Vec<u32> = children[v as usize].iter().map(|&c| id[c as usize]).collect();
                key.sort_unstable();
                (key, v)
            })
            .collect();
        keyed.sort_unstable();
        let mut distinct = 0u32;
        let mut dictionary = Vec::new();
        for k in 0..keyed.len() {
            if k > 0 && keyed[k].0 != keyed[k - 1].0 {
                distinct += 1;
            }
            if k == 0 || keyed[k].0 != keyed[k - 1].0 {
                push_u32(&mut dictionary, keyed[k].0.len() as u32);
                for &c in &keyed[k].0 {
                    push_u32(&mut dictionary, c);
                }
            }
            id[keyed[k].1 as usize] = base + distinct;
        }
        let count = if keyed.is_empty() { 0 } else { distinct + 1 };
        push_u32(&mut bytes, count);
        bytes.extend_from_slice(&dictionary);
        base += count;
    }

    let mut comps: Vec<Vec<u32>> = ps
        .cycles
        .iter()
        .map(|c| {
            let mut seq: Vec<u32> = c.iter().map(|&x| id[x as usize]).collect();
            let r = least_rotation(&seq);
            seq.rotate_left(r);
            seq
        })
        .collect();
    comps.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    push_u32(&mut bytes, comps.len() as u32);
    for c in &comps {
        push_u32(&mut bytes, c.len() as u32);
        for &v in c {
            push_u32(&mut bytes, v);
        }
    }
    CanonicalForm {
        bytes,
        cycle_lengths: ps.cycle_lengths(),
        transient_count: size - ps.periodic_count(),
        max_height: by_height.len().saturating_sub(1),
    }
}

/// `f ~ h`: some relabelling of configurations turns one into the other.
pub fn are_isomorphic_networks(f: &BoolNet, h: &BoolNet) -> bool {
    f.n() == h.n() && canonical_form(f) == canonical_form(h)
}

/// Cube isometry `x -> σ(x) + a`, where coordinate `k` of `σ(x)` is coordinate
/// `sigma[k]` of `x` (both 0-based here).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperIsometry {
    pub sigma: Vec<usize>,
    pub a: Config,
}

impl HyperIsometry {
    pub fn identity(n: usize) -> Self {
        HyperIsometry { sigma: (0..n).collect(), a: 0 }
    }

    pub fn permute(&self, x: Config) -> Config {
        self.sigma.iter().enumerate().fold(0, |acc, (k, &s)| acc | (x >> s & 1) << k)
    }

    pub fn apply(&self, x: Config) -> Config {
        self.permute(x) ^ self.a
    }

    pub fn to_permutation(&self) -> StatePermutation {
        let n = self.sigma.len();
        let map = (0..cube_size(n) as Config).map(|x| self.apply(x)).collect();
        StatePermutation::from_images(n, map).expect("isometries are bijective")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// All `n!·2^n` isometries of the n-cube.
pub fn enumerate_isometries(n: usize) -> Result<impl Iterator<Item = HyperIsometry>> {
    if n == 0 || n > ISOMETRY_MAX_DIM {
        return Err(Precondition::Dimension { got: n, min: 1, max: ISOMETRY_MAX_DIM }.into());
    }
    Ok(permutations(n)
        .into_iter()
        .flat_map(move |sigma| (0..cube_size(n) as Config).map(move |a| HyperIsometry { sigma: sigma.clone(), a })))
}

/// Per-direction profile: how many configurations are unstable in that direction,
/// split by how many directions they are unstable in.
fn direction_profiles(f: &BoolNet) -> Vec<Vec<u32>> {
    let n = f.n();
    let mut prof = vec![vec![0u32; n + 1]; n];
    for x in 0..f.size() as Config {
        let d = f.unstable(x);
        let w = d.count_ones() as usize;
        for (k, p) in prof.iter_mut().enumerate() {
            if d >> k & 1 == 1 {
                p[w] += 1;
            }
        }
    }
    prof
}

/// An isometry `π` of the cube with `A(h) = π(A(f))`, found by building `σ` one
/// coordinate at a time and pruning on per-direction profiles.
pub fn are_isometric_async(f: &BoolNet, h: &BoolNet) -> Result<Option<HyperIsometry>> {
    let n = f.n();
    if h.n() != n {
        return Err(Precondition::DimensionMismatch(n, h.n()).into());
    }
    if n > ISOMETRY_MAX_DIM {
        return Err(Precondition::Dimension { got: n, min: 1, max: ISOMETRY_MAX_DIM }.into());
    }
    let pf = direction_profiles(f);
    let ph = direction_profiles(h);
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(extend_sigma(f, h, &pf, &ph, &mut sigma, &mut used))
}

fn extend_sigma(
    f: &BoolNet,
    h: &BoolNet,
    pf: &[Vec<u32>],
    ph: &[Vec<u32>],
    sigma: &mut Vec<usize>,
    used: &mut [bool],
) -> Option<HyperIsometry> {
    let n = f.n();
    let k = sigma.len();
    if k == n {
        let iso = HyperIsometry { sigma: sigma.clone(), a: 0 };
        let target = iso.permute(f.unstable(0));
        for a in 0..f.size() as Config {
            if h.unstable(a) != target {
                continue;
            }
            let cand = HyperIsometry { sigma: sigma.clone(), a };
            let ok = (0..f.size() as Config).all(|x| h.unstable(cand.apply(x)) == cand.permute(f.unstable(x)));
            if ok {
                return Some(cand);
            }
        }
        return None;
    }
    for s in 0..n {
        if used[s] || pf[s] != ph[k] {
            continue;
        }
        used[s] = true;
        sigma.push(s);
        if let Some(found) = extend_sigma(f, h, pf, ph, sigma, used) {
            return Some(found);
        }
        sigma.pop();
        used[s] = false;
    }
    None
}

struct Joint {
    // out and in lists of the disjoint union; H's vertices are offset by `half`
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    looped: Vec<bool>,
    half: usize,
}

impl Joint {
    fn new(g: &StateDigraph, h: &StateDigraph) -> Self {
        let half = g.vertex_count();
        let total = 2 * half;
        let mut out = vec![Vec::new(); total];
        let mut inn = vec![Vec::new(); total];
        let mut looped = vec![false; total];
        for (offset, d) in [(0, g), (half, h)] {
            for (x, y) in d.arcs() {
                let (x, y) = (x as usize + offset, y as usize + offset);
                out[x].push(y as u32);
                inn[y].push(x as u32);
                if x == y {
                    looped[x] = true;
                }
            }
        }
        Joint { out, inn, looped, half }
    }

    /// Refine colours until stable; new colours are ranks of sorted signatures so
    /// both halves are named consistently.
    fn refine(&self, colors: &mut [u32]) {
        let total = colors.len();
        let mut classes = count_classes(colors);
        loop {
            let mut sigs: Vec<(Vec<u32>, usize)> = (0..total)
                .map(|v| {
                    let mut o: Vec<u32> = self.out[v].iter().map(|&w| colors[w as usize]).collect();
                    let mut i: Vec<u32> = self.inn[v].iter().map(|&w| colors[w as usize]).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    let mut sig = Vec::with_capacity(o.len() + i.len() + 4);
                    sig.push(colors[v]);
                    sig.push(self.looped[v] as u32);
                    sig.push(o.len() as u32);
                    sig.extend(o);
                    sig.push(i.len() as u32);
                    sig.extend(i);
                    (sig, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut c = 0u32;
            for k in 0..total {
                if k > 0 && sigs[k].0 != sigs[k - 1].0 {
                    c += 1;
                }
                colors[sigs[k].1] = c;
            }
            let now = c as usize + 1;
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    fn balanced(&self, colors: &[u32]) -> bool {
        let mut count: BTreeMap<u32, i64> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *count.entry(c).or_default() += if v < self.half { 1 } else { -1 };
        }
        count.values().all(|&d| d == 0)
    }

    fn search(&self, colors: Vec<u32>) -> Option<Vec<Config>> {
        let mut colors = colors;
        self.refine(&mut colors);
        if !self.balanced(&colors) {
            return None;
        }
        let mut members: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            let e = members.entry(c).or_default();
            if v < self.half {
                e.0.push(v);
            } else {
                e.1.push(v);
            }
        }
        let branch = members.iter().filter(|(_, (g, _))| g.len() > 1).min_by_key(|(&c, (g, _))| (g.len(), c));
        let Some((_, (gs, hs))) = branch else {
            let mut map = vec![0 as Config; self.half];
            for (g, h) in members.values() {
                map[g[0]] = (h[0] - self.half) as Config;
            }
            return self.is_isomorphism(&map).then_some(map);
        };
        let v = gs[0];
        let fresh = colors.iter().max().copied().unwrap_or(0) + 1;
        for &w in hs {
            let mut next = colors.clone();
            next[v] = fresh;
            next[w] = fresh;
            if let Some(m) = self.search(next) {
                return Some(m);
            }
        }
        None
    }

    fn is_isomorphism(&self, map: &[Config]) -> bool {
        (0..self.half).all(|v| {
            let mut img: Vec<u32> = self.out[v].iter().map(|&w| map[w as usize]).collect();
            let mut target: Vec<u32> =
                self.out[map[v] as usize + self.half].iter().map(|&w| w - self.half as u32).collect();
            img.sort_unstable();
            target.sort_unstable();
            img == target
        })
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// A vertex bijection `G -> H` preserving arcs, by colour refinement and
/// individualisation of the smallest non-trivial class.
pub fn are_isomorphic_digraphs(g: &StateDigraph, h: &StateDigraph) -> Result<Option<Vec<Config>>> {
    let size = g.vertex_count();
    if size > DIGRAPH_MAX_VERTICES {
        return Err(Precondition::TooManyVertices(size, DIGRAPH_MAX_VERTICES).into());
    }
    if h.vertex_count() != size || g.arc_count() != h.arc_count() {
        return Ok(None);
    }
    let joint = Joint::new(g, h);
    Ok(joint.search(vec![0; 2 * size]))
}
