//! For `n >= 3`, every non-constant network other than the identity has a
//! relabelling whose asynchronous graph is not isomorphic to its own. The two graphs
//! are told apart by how many vertices have out-degree `n` (the set Δ⁺, configurations
//! sent to their complement) or in-degree `n` (Δ⁻).

use serde::Serialize;

use crate::config::{complement, unit, Config};
use crate::dynamics::{contains_2p1, delta_sets, periodic_structure};
use crate::error::{verification, Precondition, Result};
use crate::network::BoolNet;
use crate::perm::StatePermutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DeltaWitness {
    /// `|Δ⁺(f)| != |Δ⁺(h)|`
    Plus { original: usize, twin: usize },
    /// `|Δ⁻(f)| != |Δ⁻(h)|`
    Minus { original: usize, twin: usize },
}

impl DeltaWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            DeltaWitness::Plus { .. } => "delta-plus",
            DeltaWitness::Minus { .. } => "delta-minus",
        }
    }

    /// Recomputes the counts on the pair and checks they differ as claimed.
    pub fn holds(&self, f: &BoolNet, h: &BoolNet) -> bool {
        let (df, dh) = (delta_sets(f), delta_sets(h));
        match *self {
            DeltaWitness::Plus { original, twin } => {
                original == df.plus.len() && twin == dh.plus.len() && original != twin
            }
            DeltaWitness::Minus { original, twin } => {
                original == df.minus.len() && twin == dh.minus.len() && original != twin
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurgeryCase {
    /// Two disjoint non-loop arcs `a -> f(a)`, `b -> f(b)` exist.
    TwoArcs,
    /// No two disjoint arcs, at least two periodic configurations.
    SeveralPeriodic,
    /// No two disjoint arcs, a single periodic configuration.
    SinglePeriodic,
    /// Transpositions tried one by one.
    Search,
}

#[derive(Debug, Clone)]
pub struct SurgeryOutcome {
    pub h: BoolNet,
    pub witness: DeltaWitness,
    pub case: SurgeryCase,
    /// The configurations the case analysis picked, least first where a choice existed.
    pub anchors: Vec<Config>,
}

fn swap(n: usize, a: Config, b: Config) -> StatePermutation {
    StatePermutation::transposition(n, a, b)
}

fn plus_witness(f: &BoolNet, candidates: &[BoolNet]) -> Option<(BoolNet, DeltaWitness)> {
    let original = delta_sets(f).plus.len();
    candidates.iter().find_map(|h| {
        let twin = delta_sets(h).plus.len();
        (twin != original).then(|| (h.clone(), DeltaWitness::Plus { original, twin }))
    })
}

fn minus_witness(f: &BoolNet, candidates: &[BoolNet]) -> Option<(BoolNet, DeltaWitness)> {
    let original = delta_sets(f).minus.len();
    candidates.iter().find_map(|h| {
        let twin = delta_sets(h).minus.len();
        (twin != original).then(|| (h.clone(), DeltaWitness::Minus { original, twin }))
    })
}

fn two_arcs(f: &BoolNet, a: Config, b: Config) -> Result<Option<(BoolNet, DeltaWitness)>> {
    let n = f.n();
    // any x, y with 0 < d(x, y) < n
    let (x, y) = (0, unit(1));
    let pairs = [(a, x), (b, y), (f.apply(a), complement(x, n)), (f.apply(b), complement(y, n))];
    let h1 = f.conjugate(&StatePermutation::from_partial(n, &pairs)?);
    let h2 = h1.conjugate(&swap(n, y, complement(x, n)));
    let h3 = h1.conjugate(&swap(n, complement(x, n), complement(y, n)));
    Ok(plus_witness(f, &[h1, h2, h3]))
}

fn several_periodic(f: &BoolNet) -> Option<(BoolNet, DeltaWitness, Vec<Config>)> {
    let n = f.n();
    let size = f.size() as Config;
    let ps = periodic_structure(f);
    let has_long_cycle = ps.cycles.iter().any(|c| c.len() >= 2);
    let a = (0..size).find(|&x| {
        let fx = f.apply(x);
        fx != x && ps.is_periodic(fx) && (!has_long_cycle || ps.is_periodic(x))
    })?;
    let mut a = a;
    let fa = f.apply(a);
    let g = f.conjugate(&swap(n, complement(a, n), fa));
    let gs = periodic_structure(&g);
    let neg = |x: Config| complement(x, n);
    let transient: Vec<Config> = (0..size).filter(|&x| !gs.is_periodic(x)).collect();
    let image_of = |set: &[Config]| -> Vec<Config> {
        let mut v: Vec<Config> = set.iter().map(|&x| g.apply(x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let fixed = g.fixed_points();
    let longest = gs.cycles.iter().map(Vec::len).max().unwrap_or(1);
    let (h, anchors) = match longest {
        1 => {
            let others: Vec<Config> = transient.iter().copied().filter(|&x| x != a).collect();
            let img = image_of(&others);
            let b = *fixed.iter().find(|&&b| b != neg(a))?;
            if img.is_empty() || img == [a] {
                (g.conjugate(&swap(n, neg(a), b)), vec![a, b])
            } else if img == [neg(a)] {
                (g.conjugate(&swap(n, a, b)), vec![a, b])
            } else {
                return None;
            }
        }
        2 => {
            let img = image_of(&transient);
            if img == [neg(a)] {
                a = neg(a);
            }
            let b = (0..size).find(|&b| b != a && b != neg(a))?;
            (g.conjugate(&swap(n, neg(a), b)), vec![a, b])
        }
        3 => {
            let cycle = gs.cycles.iter().find(|c| c.len() == 3)?;
            let b = *cycle.iter().find(|&&v| v != a && v != neg(a))?;
            let c = *fixed.iter().find(|&&c| c != neg(b))?;
            (g.conjugate(&swap(n, neg(a), c)), vec![a, b, c])
        }
        _ => return None,
    };
    let (h, w) = plus_witness(f, &[g, h])?;
    Some((h, w, anchors))
}

fn single_periodic(f: &BoolNet, b: Config) -> Result<Option<(BoolNet, DeltaWitness, Vec<Config>)>> {
    let n = f.n();
    let Some(a) = (0..f.size() as Config).find(|&x| x != b && f.apply(x) == b) else {
        return Ok(None);
    };
    let all = complement(0, n);
    let h1 = f.conjugate(&StatePermutation::from_partial(n, &[(a, 0), (b, all)])?);
    let h2 = f.conjugate(&StatePermutation::from_partial(n, &[(a, 0), (b, unit(1) | unit(2))])?);
    Ok(minus_witness(f, &[h1, h2]).map(|(h, w)| (h, w, vec![a, b])))
}

fn search(f: &BoolNet) -> Option<(BoolNet, DeltaWitness)> {
    let n = f.n();
    let size = f.size() as Config;
    for u in 0..size {
        for v in u + 1..size {
            let h = f.conjugate(&swap(n, u, v));
            if let Some(found) = plus_witness(f, std::slice::from_ref(&h)) {
                return Some(found);
            }
            if let Some(found) = minus_witness(f, std::slice::from_ref(&h)) {
                return Some(found);
            }
        }
    }
    None
}

/// A network `h ~ f` whose asynchronous graph differs from that of `f` in the
/// number of vertices of out-degree `n` or of in-degree `n`.
pub fn break_async_iso(f: &BoolNet) -> Result<SurgeryOutcome> {
    let n = f.n();
    if n < 3 {
        return Err(Precondition::Dimension { got: n, min: 3, max: crate::config::MAX_DIM }.into());
    }
    if f.is_constant() {
        return Err(Precondition::Constant.into());
    }
    if f.is_identity() {
        return Err(Precondition::Identity.into());
    }
    let found = if let Some((a, b)) = contains_2p1(f) {
        two_arcs(f, a, b)?.map(|(h, w)| (h, w, SurgeryCase::TwoArcs, vec![a, b]))
    } else {
        let ps = periodic_structure(f);
        if ps.periodic_count() >= 2 {
            several_periodic(f).map(|(h, w, an)| (h, w, SurgeryCase::SeveralPeriodic, an))
        } else {
            single_periodic(f, ps.cycles[0][0])?.map(|(h, w, an)| (h, w, SurgeryCase::SinglePeriodic, an))
        }
    };
    let (h, witness, case, anchors) = match found {
        Some(x) => x,
        None => {
            let (h, w) = search(f).ok_or_else(|| verification("no relabelling changes a Δ count"))?;
            (h, w, SurgeryCase::Search, Vec::new())
        }
    };
    if !witness.holds(f, &h) {
        return Err(verification("Δ witness does not hold"));
    }
    Ok(SurgeryOutcome { h, witness, case, anchors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic_networks;

    #[test]
    fn three_cycle_in_dimension_three() {
        // 0 -> e1 -> e2 -> 0, everything else fixed
        let f = BoolNet::from_fn(3, |x| match x {
            0 => 1,
            1 => 2,
            2 => 0,
            x => x,
        })
        .unwrap();
        assert_eq!(contains_2p1(&f), None);
        let out = break_async_iso(&f).unwrap();
        assert_eq!(out.case, SurgeryCase::SeveralPeriodic);
        assert!(are_isomorphic_networks(&f, &out.h));
        assert!(out.witness.holds(&f, &out.h));
    }

    #[test]
    fn rejects_identity_and_constants() {
        assert_eq!(break_async_iso(&BoolNet::identity(3)).unwrap_err(), Precondition::Identity.into());
        assert_eq!(break_async_iso(&BoolNet::constant(3, 5).unwrap()).unwrap_err(), Precondition::Constant.into());
    }
}
