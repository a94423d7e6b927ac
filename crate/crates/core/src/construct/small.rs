use std::sync::OnceLock;

use crate::config::{complement, from_bits, unit, Config};
use crate::dynamics::{almost_decreasing_reach, async_attractors};
use crate::error::{verification, Precondition, Result};
use crate::iso::{canonical_form, CanonicalForm};
use crate::network::BoolNet;
use crate::perm::StatePermutation;

use super::order::decreasing_construct;
use super::patterns::{contains_pattern, open_correction_for, pattern, plug_pattern, PatternId};

/// Largest dimension handled by searching conjugates directly.
pub const SEARCH_MAX_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallRoute {
    /// Fixed-point-free involution: an explicit network of the same type.
    Involution,
    /// One of the four dimension-4 classes without a pattern placement.
    Exceptional,
    /// A pattern placed and the rest relabelled; `corrected` when the 0-open pattern
    /// was swapped for its 1-open twin.
    Pattern { id: PatternId, corrected: bool },
    /// Conjugates enumerated in lexicographic order until one qualifies.
    Search,
}

#[derive(Debug, Clone)]
pub struct SmallAttractorOutcome {
    pub h: BoolNet,
    pub route: SmallRoute,
    pub attractor: Vec<Config>,
    pub max_path: u32,
}

/// The unique attractor of `A(h)` if it has at most four configurations and every
/// configuration reaches it by a path with at most one increasing arc.
pub fn small_attractor(h: &BoolNet) -> Option<(Vec<Config>, u32)> {
    let att = async_attractors(h);
    if att.count() != 1 || att.attractors[0].len() > 4 {
        return None;
    }
    let a = att.attractors[0].clone();
    let reach = almost_decreasing_reach(h, &a);
    reach.ok.then(|| (a, reach.max_length().unwrap_or(0)))
}

fn parse_cycles(chains: &[&str]) -> BoolNet {
    let mut table = vec![Config::MAX; 16];
    for chain in chains {
        let v: Vec<Config> = chain.split("->").map(|s| from_bits(s.trim()).unwrap()).collect();
        for w in v.windows(2) {
            table[w[0] as usize] = w[1];
        }
    }
    BoolNet::from_table(4, table).expect("fixture is total")
}

/// Explicit networks for the four classes in dimension 4 that admit no pattern
/// placement, each with a unique attractor of size four.
pub fn exceptional_fixtures() -> &'static [(BoolNet, CanonicalForm)] {
    static FIXTURES: OnceLock<Vec<(BoolNet, CanonicalForm)>> = OnceLock::new();
    FIXTURES.get_or_init(|| {
        let five_cycles =
            ["1111 -> 1110 -> 1101 -> 1011 -> 0111 -> 1111", "0110 -> 1001 -> 0101 -> 0011 -> 0001 -> 0110"];
        let nets = [
            parse_cycles(&["0100 -> 0000 -> 1100 -> 1010 -> 1000 -> 0010 -> 0000", five_cycles[0], five_cycles[1]]),
            parse_cycles(&["0100 -> 0000 -> 1100 -> 1010 -> 1000 -> 0010 -> 0100", five_cycles[0], five_cycles[1]]),
            parse_cycles(&[
                "0100 -> 0000 -> 1000 -> 1100 -> 0100",
                "1111 -> 1110 -> 1101 -> 1011 -> 0111 -> 1010 -> 1111",
                "1001 -> 0110 -> 0101 -> 0011 -> 0001 -> 0010 -> 1001",
            ]),
            parse_cycles(&[
                "0100 -> 0000 -> 1000 -> 1100 -> 0100",
                "1101 -> 1111 -> 0111 -> 1011 -> 1101",
                "1110 -> 0011 -> 0110 -> 0101 -> 1110",
                "0010 -> 1001 -> 1010 -> 0001 -> 0010",
            ]),
        ];
        nets.into_iter()
            .map(|h| {
                let c = canonical_form(&h);
                (h, c)
            })
            .collect()
    })
}

pub fn exceptional_fixture(f: &BoolNet) -> Option<&'static BoolNet> {
    if f.n() != 4 {
        return None;
    }
    let c = canonical_form(f);
    exceptional_fixtures().iter().find(|(_, fc)| *fc == c).map(|(h, _)| h)
}

/// For a fixed-point-free involution with `n >= 3`: pairs `{0, e1}`, `{1, e2}`,
/// `{~e1, ~e2}`, and every other configuration with its complement.
pub fn involution_network(n: usize) -> BoolNet {
    if n < 3 {
        return BoolNet::negation(n);
    }
    let (e1, e2) = (unit(1), unit(2));
    let all = complement(0, n);
    let special = [
        (0, e1),
        (e1, 0),
        (all, e2),
        (e2, all),
        (complement(e1, n), complement(e2, n)),
        (complement(e2, n), complement(e1, n)),
    ];
    BoolNet::from_fn(n, |x| special.iter().find(|&&(a, _)| a == x).map_or(complement(x, n), |&(_, b)| b))
        .expect("valid dimension")
}

fn search_conjugates(f: &BoolNet) -> Option<BoolNet> {
    let n = f.n();
    let size = f.size();
    let mut cur: Vec<Config> = (0..size as Config).collect();
    loop {
        let pi = StatePermutation::from_images(n, cur.clone()).expect("permutation");
        let h = f.conjugate(&pi);
        if small_attractor(&h).is_some() {
            return Some(h);
        }
        let i = (1..size).rev().find(|&i| cur[i - 1] < cur[i])?;
        let j = (i..size).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// A network `h ~ f` whose asynchronous graph has a unique attractor, of size at
/// most four, reachable from everywhere by paths with at most one increasing arc.
pub fn converge_to_small_attractor(f: &BoolNet) -> Result<SmallAttractorOutcome> {
    let n = f.n();
    if f.fixed_point_count() > 0 {
        return Err(Precondition::HasFixedPoint.into());
    }
    let involution = f.compose(f).is_identity();
    let (h, route) = if involution && n >= 3 {
        (involution_network(n), SmallRoute::Involution)
    } else if n <= SEARCH_MAX_DIM {
        let h = search_conjugates(f).ok_or_else(|| verification("no conjugate has a small attractor"))?;
        (h, SmallRoute::Search)
    } else if let Some(h) = exceptional_fixture(f) {
        (h.clone(), SmallRoute::Exceptional)
    } else {
        let (g, p) = plug_pattern(f)?;
        let h = decreasing_construct(&g, &p.vertices())?.h;
        if contains_pattern(&h, &p) {
            (h, SmallRoute::Pattern { id: p.id, corrected: false })
        } else {
            let PatternId::Open0(k) = p.id else {
                return Err(verification(format!("closed pattern {} lost after relabelling", p.id)));
            };
            let h2 = h.conjugate(&open_correction_for(&h, k));
            if !contains_pattern(&h2, &pattern(PatternId::Open1(k))) {
                return Err(verification(format!("correction of P0_{k} failed")));
            }
            (h2, SmallRoute::Pattern { id: PatternId::Open1(k), corrected: true })
        }
    };
    let (attractor, max_path) = small_attractor(&h)
        .ok_or_else(|| verification("result lacks a unique small attractor reachable from everywhere"))?;
    Ok(SmallAttractorOutcome { h, route, attractor, max_path })
}
