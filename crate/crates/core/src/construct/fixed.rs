use crate::config::{unit, Config};
use crate::digraph::AttractorSet;
use crate::dynamics::{almost_decreasing_reach, async_attractors};
use crate::error::{verification, Precondition, Result};
use crate::network::BoolNet;
use crate::perm::StatePermutation;

use super::order::decreasing_construct;

/// Which branch produced the relabelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointRoute {
    Identity,
    /// Not a permutation: one fixed point moved to `0`.
    NonPermutation,
    /// A permutation: `0` fixed and `e_1` sent below the first coordinate.
    Permutation,
    /// As above, then `0` and `e_1` exchanged.
    PermutationCorrected,
}

#[derive(Debug, Clone)]
pub struct FixedPointOutcome {
    pub h: BoolNet,
    pub route: FixedPointRoute,
    pub attractors: AttractorSet,
    pub max_path: u32,
}

/// A network `h ~ f` whose asynchronous graph has exactly the fixed points of `f`
/// (relabelled) as attractors, each configuration reaching one of them by a path
/// with at most one increasing arc.
pub fn converge_to_fixed_points(f: &BoolNet) -> Result<FixedPointOutcome> {
    let n = f.n();
    let fixed = f.fixed_points();
    let Some(&z) = fixed.first() else {
        return Err(Precondition::NoFixedPoint.into());
    };
    let (h, route) = if f.is_identity() {
        (f.clone(), FixedPointRoute::Identity)
    } else if !f.is_permutation() {
        let g = f.conjugate(&StatePermutation::transposition(n, z, 0));
        (decreasing_construct(&g, &[0])?.h, FixedPointRoute::NonPermutation)
    } else {
        // a permutation other than the identity has a non-fixed configuration u,
        // and f(u) is neither u nor a fixed point
        if n < 2 {
            return Err(verification("a permutation of two configurations with a fixed point is the identity"));
        }
        let u = (0..f.size() as Config).find(|&x| f.apply(x) != x).expect("not the identity");
        let e1 = unit(1);
        let pairs = [(z, 0), (u, e1), (f.apply(u), unit(2))];
        let g = f.conjugate(&StatePermutation::from_partial(n, &pairs)?);
        let h = decreasing_construct(&g, &[0, e1])?.h;
        if h.apply(e1) & 1 == 1 {
            let swap = StatePermutation::transposition(n, 0, e1);
            (h.conjugate(&swap), FixedPointRoute::PermutationCorrected)
        } else {
            (h, FixedPointRoute::Permutation)
        }
    };

    let attractors = async_attractors(&h);
    if attractors.count() != fixed.len() || attractors.attractors.iter().any(|a| a.len() != 1) {
        return Err(verification(format!(
            "expected {} singleton attractors, found sizes {:?}",
            fixed.len(),
            attractors.sizes()
        )));
    }
    let reach = almost_decreasing_reach(&h, &[]);
    if !reach.ok {
        return Err(verification("some configuration has no almost decreasing path to a fixed point"));
    }
    let max_path = reach.max_length().unwrap_or(0);
    if max_path as usize > n + 1 {
        return Err(verification(format!("witness path of length {max_path} exceeds n + 1")));
    }
    Ok(FixedPointOutcome { h, route, attractors, max_path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic_networks;

    #[test]
    fn shift_keeps_two_fixed_point_attractors() {
        let shift = BoolNet::from_table(2, vec![0, 2, 1, 3]).unwrap();
        let out = converge_to_fixed_points(&shift).unwrap();
        assert_eq!(out.attractors.count(), 2);
        assert!(are_isomorphic_networks(&shift, &out.h));
    }

    #[test]
    fn identity_is_returned_unchanged() {
        let id = BoolNet::identity(3);
        let out = converge_to_fixed_points(&id).unwrap();
        assert_eq!(out.h, id);
        assert_eq!(out.route, FixedPointRoute::Identity);
        assert_eq!(out.attractors.count(), 8);
    }

    #[test]
    fn fixed_point_free_input_is_rejected() {
        let neg = BoolNet::negation(3);
        assert_eq!(converge_to_fixed_points(&neg).unwrap_err(), Precondition::NoFixedPoint.into());
    }
}
