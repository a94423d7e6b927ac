//! Balanced colorings of a union of cycles by the four-vertex digraph `H4`, whose
//! arcs go from `c` to `c + 1` and `c + 2` (mod 4).

use crate::config::Config;
use crate::dynamics::periodic_structure;
use crate::error::{verification, Precondition, Result};
use crate::network::BoolNet;

pub fn is_h4_arc(from: u8, to: u8) -> bool {
    let step = (to + 4 - from) % 4;
    step == 1 || step == 2
}

/// Colors for a cycle of length `len >= 2` listed along its arcs.
///
/// By `len mod 4`: 0 gives a balanced coloring (`c` ignored), 1 one extra `c`,
/// 3 one `c` missing, 2 one extra `c` and `c + 2`.
pub fn cycle_coloring(len: usize, c: u8) -> Vec<u8> {
    assert!(len >= 2, "cycles of length 1 have no coloring");
    let shift = |k: usize| ((c as usize + k) % 4) as u8;
    let (prefix, suffix): (usize, Vec<u8>) = match len % 4 {
        0 => return (0..len).map(|i| (i % 4) as u8).collect(),
        1 => (len - 5, vec![shift(0), shift(2), shift(0), shift(1), shift(3)]),
        3 => (len - 3, vec![shift(1), shift(2), shift(3)]),
        _ => (len - 2, vec![shift(0), shift(2)]),
    };
    let mut v: Vec<u8> = (0..prefix).map(shift).collect();
    v.extend(suffix);
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H4Coloring {
    colors: Vec<u8>,
}

impl H4Coloring {
    pub fn color(&self, x: Config) -> u8 {
        self.colors[x as usize]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn class_sizes(&self) -> [usize; 4] {
        let mut s = [0; 4];
        for &c in &self.colors {
            s[c as usize] += 1;
        }
        s
    }

    /// Every arc `x -> f(x)` is an arc of `H4`.
    pub fn is_valid_for(&self, f: &BoolNet) -> bool {
        self.colors.len() == f.size()
            && (0..f.size() as Config).all(|x| is_h4_arc(self.color(x), self.color(f.apply(x))))
    }

    pub fn is_balanced(&self) -> bool {
        let s = self.class_sizes();
        s.iter().all(|&k| k == s[0])
    }
}

/// Groups of cycle types, each colored as a whole with equal class sizes, tried in
/// this order. Each entry lists `(len mod 4, c)`.
const GROUPS: [&[(usize, u8)]; 7] = [
    &[(0, 0)],
    &[(1, 0), (1, 1), (1, 2), (1, 3)],
    &[(3, 0), (3, 1), (3, 2), (3, 3)],
    &[(2, 0), (2, 1)],
    &[(1, 0), (3, 0)],
    &[(1, 0), (1, 2), (2, 1)],
    &[(3, 0), (3, 2), (2, 0)],
];

/// A balanced `H4`-coloring of `S(f)` for a permutation without fixed points.
pub fn h4_coloring(f: &BoolNet) -> Result<H4Coloring> {
    if !f.is_permutation() {
        return Err(Precondition::NotPermutation.into());
    }
    if f.fixed_point_count() > 0 {
        return Err(Precondition::HasFixedPoint.into());
    }
    if f.n() < 2 {
        return Err(Precondition::Dimension { got: f.n(), min: 2, max: crate::config::MAX_DIM }.into());
    }
    let mut cycles = periodic_structure(f).cycles;
    cycles.sort_by_key(|c| (c.len(), c[0]));
    // queues of cycles by length mod 4, consumed front first
    let mut by_type: [std::collections::VecDeque<Vec<Config>>; 4] = Default::default();
    for c in cycles {
        by_type[c.len() % 4].push_back(c);
    }
    let mut colors = vec![u8::MAX; f.size()];
    while by_type.iter().any(|q| !q.is_empty()) {
        let group = GROUPS
            .iter()
            .find(|g| (0..4).all(|t| g.iter().filter(|&&(u, _)| u == t).count() <= by_type[t].len()))
            .ok_or_else(|| verification("remaining cycles match no balanced group"))?;
        for &(t, c) in group.iter() {
            let cycle = by_type[t].pop_front().expect("checked above");
            for (&x, col) in cycle.iter().zip(cycle_coloring(cycle.len(), c)) {
                colors[x as usize] = col;
            }
        }
    }
    let out = H4Coloring { colors };
    if !out.is_valid_for(f) || !out.is_balanced() {
        return Err(verification("coloring is not a balanced H4-coloring"));
    }
    Ok(out)
}
