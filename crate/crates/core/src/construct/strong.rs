use crate::config::{dist, Config};
use crate::digraph::{bfs_distances, is_strongly_connected};
use crate::dynamics::{periodic_structure, AsyncView};
use crate::error::{verification, Precondition, Result};
use crate::network::BoolNet;
use crate::perm::StatePermutation;

use super::coloring::{h4_coloring, H4Coloring};

/// Largest dimension at which every pair of configurations is checked.
pub const ALL_PAIRS_MAX_DIM: usize = 6;

#[derive(Debug, Clone)]
pub struct StrongOutcome {
    pub h: BoolNet,
    pub coloring: Option<H4Coloring>,
    /// `max(dist_A(h)(x, y) - d(x, y))` over all pairs, when checked.
    pub max_detour: Option<u32>,
}

/// Low two bits of the configuration assigned to each color: `x1 x2` equal to
/// `00`, `10`, `11`, `01`.
const QUADRANT: [Config; 4] = [0b00, 0b01, 0b11, 0b10];

fn quadrant_relabelling(f: &BoolNet, phi: &H4Coloring) -> Result<StatePermutation> {
    let n = f.n();
    let tails = 1usize << (n - 2);
    let mask = (tails - 1) as Config;
    let mut tail: Vec<Option<Config>> = vec![None; f.size()];
    let mut used = vec![vec![false; tails]; 4];
    let mut next_free = [0usize; 4];
    let mut take = |used: &mut Vec<Vec<bool>>, class: usize| -> Option<Config> {
        while next_free[class] < tails && used[class][next_free[class]] {
            next_free[class] += 1;
        }
        let t = next_free[class];
        (t < tails).then(|| {
            used[class][t] = true;
            t as Config
        })
    };
    let mut cycles = periodic_structure(f).cycles;
    cycles.sort_by_key(|c| c[0]);
    for &x in cycles.iter().flatten() {
        if phi.color(x) != 0 {
            continue;
        }
        let t = take(&mut used, 0).ok_or_else(|| verification("color class 0 overflows its quadrant"))?;
        tail[x as usize] = Some(t);
        let y = f.apply(x);
        let ty = !t & mask;
        let cy = phi.color(y) as usize;
        if used[cy][ty as usize] || tail[y as usize].is_some() {
            return Err(verification("complemented tail already taken"));
        }
        used[cy][ty as usize] = true;
        tail[y as usize] = Some(ty);
    }
    for x in 0..f.size() as Config {
        if tail[x as usize].is_none() {
            let class = phi.color(x) as usize;
            tail[x as usize] =
                Some(take(&mut used, class).ok_or_else(|| verification("color class overflows its quadrant"))?);
        }
    }
    let images =
        (0..f.size()).map(|x| QUADRANT[phi.colors()[x] as usize] | (tail[x].expect("assigned") << 2)).collect();
    StatePermutation::from_images(n, images)
}

fn max_detour(h: &BoolNet) -> Option<u32> {
    let g = AsyncView(h);
    let mut worst = 0;
    for x in 0..h.size() as Config {
        let d = bfs_distances(&g, x);
        for (y, &dy) in d.iter().enumerate() {
            if dy == u32::MAX {
                return None;
            }
            worst = worst.max(dy - dist(x, y as Config) as u32);
        }
    }
    Some(worst)
}

/// A network `h ~ f` whose asynchronous graph is strongly connected, with a path
/// of length at most `d(x, y) + 4` between any two configurations.
pub fn strongly_connected_variant(f: &BoolNet) -> Result<StrongOutcome> {
    let n = f.n();
    if !f.is_permutation() {
        return Err(Precondition::NotPermutation.into());
    }
    if f.fixed_point_count() > 0 {
        return Err(Precondition::HasFixedPoint.into());
    }
    let (h, coloring) = match n {
        1 => (f.clone(), None),
        2 => {
            let h = if periodic_structure(f).cycles.len() == 2 {
                BoolNet::negation(2)
            } else {
                // (x1, x2) -> (x2, not x1)
                BoolNet::from_fn(2, |x| ((x >> 1) & 1) | ((!x & 1) << 1)).expect("valid dimension")
            };
            (h, None)
        }
        _ => {
            let phi = h4_coloring(f)?;
            let pi = quadrant_relabelling(f, &phi)?;
            (f.conjugate(&pi), Some(phi))
        }
    };
    if !is_strongly_connected(&AsyncView(&h)) {
        return Err(verification("asynchronous graph is not strongly connected"));
    }
    let max_detour = if n <= ALL_PAIRS_MAX_DIM {
        let m = max_detour(&h).ok_or_else(|| verification("unreachable pair"))?;
        if m > 4 {
            return Err(verification(format!("a shortest path exceeds the Hamming distance by {m}")));
        }
        Some(m)
    } else {
        None
    };
    Ok(StrongOutcome { h, coloring, max_detour })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic_networks;

    #[test]
    fn dimension_two_cases() {
        let two_cycles = BoolNet::from_table(2, vec![1, 0, 3, 2]).unwrap();
        let out = strongly_connected_variant(&two_cycles).unwrap();
        assert_eq!(out.h, BoolNet::negation(2));

        let four_cycle = BoolNet::from_table(2, vec![1, 3, 0, 2]).unwrap();
        let out = strongly_connected_variant(&four_cycle).unwrap();
        // 00 -> 01 -> 11 -> 10 -> 00 in (x1, x2) order
        assert_eq!(out.h.table(), &[2, 0, 3, 1]);
        assert!(are_isomorphic_networks(&four_cycle, &out.h));
    }

    #[test]
    fn negation_in_dimension_four() {
        let out = strongly_connected_variant(&BoolNet::negation(4)).unwrap();
        assert!(are_isomorphic_networks(&BoolNet::negation(4), &out.h));
        assert!(out.max_detour.unwrap() <= 4);
    }

    #[test]
    fn rejects_non_derangements() {
        assert!(strongly_connected_variant(&BoolNet::identity(3)).is_err());
        assert!(strongly_connected_variant(&BoolNet::constant(3, 0).unwrap()).is_err());
    }
}
