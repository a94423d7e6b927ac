use rand::seq::SliceRandom;
use rayon::prelude::*;

use bn_core::config::{cube_size, unit};
use bn_core::construct::order::{agrees_on, is_x_converging};
use bn_core::construct::surgery::SurgeryCase;
use bn_core::construct::{
    break_async_iso, converge_to_fixed_points, converge_to_small_attractor, decreasing_construct, plug_pattern,
    properly_contains, PatternId,
};
use bn_core::dynamics::{async_attractors, asynchronous_graph, contains_2p1, periodic_structure};
use bn_core::iso::{are_isomorphic_digraphs, canonical_form};
use bn_core::rng::random_network;
use bn_core::{BoolNet, Config, Error, Precondition, RandomSource, StatePermutation};

fn all_networks(n: usize) -> Vec<BoolNet> {
    let size = cube_size(n);
    let total = (size as u64).pow(size as u32);
    (0..total)
        .map(|mut code| {
            let table = (0..size)
                .map(|_| {
                    let y = (code % size as u64) as Config;
                    code /= size as u64;
                    y
                })
                .collect();
            BoolNet::from_table(n, table).unwrap()
        })
        .collect()
}

fn sorted_cycles(f: &BoolNet) -> Vec<usize> {
    let mut c = periodic_structure(f).cycle_lengths();
    c.sort_unstable();
    c
}

#[test]
fn asynchronous_graph_determines_synchronous_class_in_dimension_two() {
    let all = all_networks(2);
    let graphs: Vec<_> = all.iter().map(asynchronous_graph).collect();
    let forms: Vec<_> = all.iter().map(canonical_form).collect();
    let mut isomorphic_pairs = 0;
    for i in 0..all.len() {
        for j in 0..all.len() {
            if are_isomorphic_digraphs(&graphs[i], &graphs[j]).unwrap().is_some() {
                isomorphic_pairs += 1;
                assert_eq!(forms[i], forms[j], "{:?} vs {:?}", all[i], all[j]);
            }
        }
    }
    assert_eq!(isomorphic_pairs, 1806);
}

#[test]
fn fixed_point_with_three_cycle_is_the_conjugation_invariant_class_in_dimension_two() {
    let all = all_networks(2);
    let graphs: Vec<_> = all.iter().map(asynchronous_graph).collect();
    let forms: Vec<_> = all.iter().map(canonical_form).collect();
    for (i, f) in all.iter().enumerate() {
        if f.is_constant() || f.is_identity() {
            continue;
        }
        let invariant = (0..all.len())
            .filter(|&j| forms[j] == forms[i])
            .all(|j| are_isomorphic_digraphs(&graphs[i], &graphs[j]).unwrap().is_some());
        assert_eq!(invariant, sorted_cycles(f) == [1, 3], "{f:?}");
    }
}

#[test]
fn surgery_in_dimension_three_without_disjoint_arcs() {
    let size = 8u64;
    let candidates: Vec<BoolNet> = (0..size.pow(8))
        .into_par_iter()
        .filter_map(|mut code| {
            let table = (0..8)
                .map(|_| {
                    let y = (code % size) as Config;
                    code /= size;
                    y
                })
                .collect();
            let f = BoolNet::from_table(3, table).unwrap();
            (!f.is_constant() && !f.is_identity() && contains_2p1(&f).is_none()).then_some(f)
        })
        .collect();
    assert!(!candidates.is_empty());
    let cases: Vec<SurgeryCase> = candidates
        .par_iter()
        .map(|f| {
            let out = break_async_iso(f).unwrap();
            assert!(out.witness.holds(f, &out.h), "{f:?}");
            assert_eq!(canonical_form(&out.h), canonical_form(f));
            out.case
        })
        .collect();
    assert!(!cases.contains(&SurgeryCase::TwoArcs));
    assert!(!cases.contains(&SurgeryCase::Search));
}

#[test]
fn surgery_batch_in_dimension_four() {
    let rs = RandomSource::new(40);
    for k in 0..500 {
        let f = random_network(4, &mut rs.stream(k));
        if f.is_constant() || f.is_identity() {
            continue;
        }
        let out = break_async_iso(&f).unwrap();
        assert!(out.witness.holds(&f, &out.h), "sample {k}");
        assert_eq!(canonical_form(&out.h), canonical_form(&f));
    }
}

#[test]
fn surgery_rejects_identity_and_small_dimensions() {
    assert!(break_async_iso(&BoolNet::identity(4)).is_err());
    assert!(break_async_iso(&BoolNet::constant(3, 5).unwrap()).is_err());
    let shift = BoolNet::from_table(2, vec![0, 2, 1, 3]).unwrap();
    assert!(break_async_iso(&shift).is_err());
}

/// Permutations of the cube that move only configurations of `x_set`.
fn shuffle_inside(n: usize, x_set: &[Config], rng: &mut impl rand::Rng) -> StatePermutation {
    let mut targets = x_set.to_vec();
    targets.shuffle(rng);
    let pairs: Vec<(Config, Config)> = x_set.iter().copied().zip(targets).collect();
    StatePermutation::from_partial(n, &pairs).unwrap()
}

fn decreasing_batch(x_set: &[Config], dims: std::ops::RangeInclusive<usize>, samples: u64, seed: u64) {
    let rs = RandomSource::new(seed);
    let dims: Vec<usize> = dims.collect();
    (0..samples).into_par_iter().for_each(|k| {
        let mut rng = rs.stream(k);
        let n = dims[k as usize % dims.len()];
        let f = loop {
            let f = random_network(n, &mut rng);
            let outside: Vec<Config> = (0..f.size() as Config).filter(|x| !x_set.contains(x)).collect();
            let mut image: Vec<Config> = outside.iter().map(|&x| f.apply(x)).collect();
            image.sort_unstable();
            image.dedup();
            if image != outside {
                break f;
            }
        };
        let out = decreasing_construct(&f, x_set).unwrap();
        let h = &out.h;
        assert_eq!(canonical_form(h), canonical_form(&f), "sample {k}");
        assert!(agrees_on(&f, h, x_set), "sample {k}");
        assert!(x_set.iter().all(|&x| out.pi.apply(x) == x), "sample {k}");
        assert!(is_x_converging(h, x_set), "sample {k}");
        for _ in 0..20 {
            let pi = shuffle_inside(n, x_set, &mut rng);
            assert!(is_x_converging(&h.conjugate(&pi), x_set), "sample {k} after relabelling inside X");
        }
    });
}

#[test]
fn decreasing_construct_with_origin() {
    decreasing_batch(&[0], 4..=7, 1000, 41);
}

#[test]
fn decreasing_construct_with_a_square() {
    decreasing_batch(&[0, unit(1), unit(2), unit(1) | unit(2)], 5..=7, 300, 42);
}

#[test]
fn decreasing_construct_preconditions() {
    let err = decreasing_construct(&BoolNet::identity(4), &[0]).unwrap_err();
    assert_eq!(err, Error::from(Precondition::ComplementClosed));
    let f = random_network(5, &mut RandomSource::new(1).stream(0));
    assert!(decreasing_construct(&f, &[unit(1)]).is_err());
    assert!(decreasing_construct(&f, &[]).is_err());
}

#[test]
fn full_cycle_in_dimension_six_takes_the_longest_open_pattern() {
    let f = BoolNet::from_fn(6, |x| (x + 1) % 64).unwrap();
    let (g, p) = plug_pattern(&f).unwrap();
    assert_eq!(p.id, PatternId::Open0(5));
    assert!(properly_contains(&g, &p));
    assert_eq!(canonical_form(&g), canonical_form(&f));
}

#[test]
fn two_cycles_with_transients_take_the_first_pattern() {
    // 2-cycles on pairs {2k, 2k+1} for k < 8, every other configuration falls onto 0
    let f = BoolNet::from_fn(5, |x| if x < 16 { x ^ 1 } else { 0 }).unwrap();
    let (g, p) = plug_pattern(&f).unwrap();
    assert_eq!(p.id, PatternId::P1);
    assert!(properly_contains(&g, &p));
    assert!(!g.is_permutation());
}

#[test]
fn small_attractor_batch_over_patterns() {
    let rs = RandomSource::new(43);
    (0..2000u64).into_par_iter().for_each(|k| {
        let mut rng = rs.stream(k);
        let n = 4 + (k % 5) as usize;
        let f = loop {
            let f = random_network(n, &mut rng);
            if f.fixed_point_count() == 0 {
                break f;
            }
        };
        let out = converge_to_small_attractor(&f).unwrap();
        let att = async_attractors(&out.h);
        assert_eq!(att.count(), 1, "sample {k}");
        assert!(att.attractors[0].len() <= 4, "sample {k}");
        assert_eq!(out.attractor, att.attractors[0]);
    });
}

#[test]
fn fixed_point_batch_over_permutations() {
    let rs = RandomSource::new(44);
    (0..500u64).into_par_iter().for_each(|k| {
        let mut rng = rs.stream(k);
        let n = 3 + (k % 5) as usize;
        let mut map: Vec<Config> = (0..cube_size(n) as Config).collect();
        map[1..].shuffle(&mut rng);
        let f = BoolNet::from_table(n, map).unwrap();
        let out = converge_to_fixed_points(&f).unwrap();
        assert_eq!(out.attractors.count(), f.fixed_point_count(), "sample {k}");
        assert!(out.max_path as usize <= n + 1);
    });
}

#[test]
fn identity_and_shift_keep_their_fixed_points() {
    let out = converge_to_fixed_points(&BoolNet::identity(3)).unwrap();
    assert_eq!(out.h, BoolNet::identity(3));
    assert_eq!(out.attractors.count(), 8);
    let shift = BoolNet::from_table(2, vec![0, 2, 1, 3]).unwrap();
    assert_eq!(converge_to_fixed_points(&shift).unwrap().attractors.count(), 2);
}
