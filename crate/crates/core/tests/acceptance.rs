//! Acceptance suite: eleven criteria, one PASS/FAIL line each. Exits nonzero when
//! any criterion fails. Tolerances are pinned as constants below.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use bn_core::config::{cube_size, dist};
use bn_core::construct::{
    break_async_iso, converge_to_fixed_points, converge_to_small_attractor, h4_coloring, many_attractors,
    strongly_connected_variant,
};
use bn_core::digraph::{attractors, is_strongly_connected};
use bn_core::dynamics::{
    almost_decreasing_reach, async_attractors, asynchronous_graph, reconstruct_network, AsyncView,
};
use bn_core::experiment::{image_count_experiment, many_attractor_rate};
use bn_core::io::parse_network;
use bn_core::iso::{are_isomorphic_digraphs, canonical_form, HyperIsometry};
use bn_core::rng::{cycle_lengths, random_network, random_permutation_network};
use bn_core::solidity::solidity_outcomes;
use bn_core::{BoolNet, Config, RandomSource, StateDigraph};

const RECONSTRUCT_SAMPLES: usize = 500;
const FEW_ATT_SAMPLES: usize = 500;
const SMALL_ATT_SAMPLES: usize = 500;
const TIGHTNESS_SAMPLES_PER_DIM: usize = 100;
const BREAK_ISO_SAMPLES: usize = 500;
const MANY_ATT_DIM: usize = 10;
const MANY_ATT_SAMPLES: usize = 100;
const MANY_ATT_MIN_FRACTION: f64 = 0.95;
const IMAGE_DIM: usize = 14;
const IMAGE_SAMPLES: usize = 200;
const IMAGE_BAND: (f64, f64) = (0.46, 0.48);
const SOLIDITY_P: f64 = 0.75;
const SOLIDITY_P_LOW: f64 = 0.72;
const SOLIDITY_DIMS: [usize; 3] = [7, 9, 11];
const SOLIDITY_SAMPLES: usize = 200;
const SOLIDITY_MIN_AT_11: f64 = 0.99;
const STRONG_SAMPLES: usize = 200;
const STRONG_MAX_DETOUR: u32 = 4;
const COLORING_SAMPLES: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_with(n: usize, rng: &mut ChaCha8Rng, keep: impl Fn(&BoolNet) -> bool) -> BoolNet {
    loop {
        let f = random_network(n, rng);
        if keep(&f) {
            return f;
        }
    }
}

fn table_of(f: &BoolNet) -> String {
    format!("{:?}", f.table())
}

fn all_networks(n: usize) -> impl Iterator<Item = BoolNet> {
    let size = cube_size(n);
    let total = (size as u64).pow(size as u32);
    (0..total).map(move |mut code| {
        let table = (0..size)
            .map(|_| {
                let y = (code % size as u64) as Config;
                code /= size as u64;
                y
            })
            .collect();
        BoolNet::from_table(n, table).unwrap()
    })
}

fn trivial_bound() -> Outcome {
    let mut checked = 0;
    for f in all_networks(2) {
        let count = async_attractors(&f).count();
        let bound = f.fixed_point_count().max(1);
        ensure(count >= bound, || format!("{} has {count} attractors, fewer than {bound}", table_of(&f)))?;
        checked += 1;
    }
    Ok(format!("{checked} networks"))
}

fn reconstruction() -> Outcome {
    let rs = RandomSource::new(2);
    (0..RECONSTRUCT_SAMPLES).into_par_iter().try_for_each(|k| {
        let mut rng = rs.stream(k as u64);
        let n = 4 + k % 5;
        let f = random_network(n, &mut rng);
        let g = asynchronous_graph(&f);
        ensure(reconstruct_network(&g).map_err(|e| e.to_string())? == f, || {
            format!("sample {k}: reconstruction differs")
        })?;
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut rng);
        let iso = HyperIsometry { sigma, a: rng.gen_range(0..cube_size(n) as Config) };
        let arcs: Vec<(Config, Config)> = g.arcs().into_iter().map(|(x, y)| (iso.apply(x), iso.apply(y))).collect();
        let moved = StateDigraph::from_arcs(n, &arcs).map_err(|e| e.to_string())?;
        let h = reconstruct_network(&moved).map_err(|e| e.to_string())?;
        ensure(canonical_form(&h) == canonical_form(&f), || {
            format!("sample {k}: relabelled reconstruction not isomorphic")
        })
    })?;
    Ok(format!("{RECONSTRUCT_SAMPLES} networks, n in 4..=8"))
}

fn twin_fixture() -> Outcome {
    let f = parse_network(include_str!("../../../data/async_twin_f.bn")).map_err(|e| e.to_string())?;
    let h = parse_network(include_str!("../../../data/async_twin_h.bn")).map_err(|e| e.to_string())?;
    let found = are_isomorphic_digraphs(&asynchronous_graph(&f), &asynchronous_graph(&h)).map_err(|e| e.to_string())?;
    ensure(found.is_some(), || "asynchronous graphs not isomorphic".into())?;
    ensure(canonical_form(&f) != canonical_form(&h), || "synchronous graphs isomorphic".into())?;
    Ok("asynchronous isomorphic, synchronous not".into())
}

fn few_attractors() -> Outcome {
    let rs = RandomSource::new(4);
    (0..FEW_ATT_SAMPLES).into_par_iter().try_for_each(|k| {
        let mut rng = rs.stream(k as u64);
        let n = 5 + k % 4;
        let f = random_with(n, &mut rng, |f| f.fixed_point_count() > 0);
        let out = converge_to_fixed_points(&f).map_err(|e| format!("sample {k}: {e}"))?;
        let h = &out.h;
        ensure(canonical_form(h) == canonical_form(&f), || format!("sample {k}: not a conjugate"))?;
        let att = async_attractors(h);
        ensure(att.count() == f.fixed_point_count(), || {
            format!("sample {k}: {} attractors for {} fixed points", att.count(), f.fixed_point_count())
        })?;
        let reach = almost_decreasing_reach(h, &h.fixed_points());
        ensure(reach.ok, || format!("sample {k}: {} configurations unreached", reach.unreached.len()))?;
        for x in 0..h.size() as Config {
            let w = reach.witness(x).ok_or_else(|| format!("sample {k}: no witness from {x}"))?;
            ensure(w.len() - 1 <= n + 1, || format!("sample {k}: witness of length {} from {x}", w.len() - 1))?;
        }
        Ok::<_, String>(())
    })?;
    Ok(format!("{FEW_ATT_SAMPLES} networks, n in 5..=8"))
}

fn check_small(f: &BoolNet) -> Result<(), String> {
    let out = converge_to_small_attractor(f).map_err(|e| format!("{}: {e}", table_of(f)))?;
    let h = &out.h;
    ensure(canonical_form(h) == canonical_form(f), || format!("{}: not a conjugate", table_of(f)))?;
    let att = async_attractors(h);
    ensure(att.count() == 1 && att.attractors[0].len() <= 4, || {
        format!("{}: attractor sizes {:?}", table_of(f), att.sizes())
    })?;
    let reach = almost_decreasing_reach(h, &att.attractors[0]);
    ensure(reach.ok, || format!("{}: attractor not reached by almost decreasing paths", table_of(f)))
}

/// One fixed-point-free network per isomorphism class of F(n).
fn fixed_point_free_classes(n: usize) -> Vec<BoolNet> {
    let size = cube_size(n);
    let choices = (size as u64 - 1).pow(size as u32);
    let classes: HashMap<_, _> = (0..choices)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, mut code| {
            let table = (0..size as Config)
                .map(|x| {
                    let d = (code % (size as u64 - 1)) as Config;
                    code /= size as u64 - 1;
                    if d < x {
                        d
                    } else {
                        d + 1
                    }
                })
                .collect();
            let f = BoolNet::from_table(n, table).unwrap();
            acc.entry(canonical_form(&f)).or_insert(f);
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_insert(v);
            }
            a
        });
    classes.into_values().collect()
}

fn small_attractor() -> Outcome {
    let rs = RandomSource::new(5);
    (0..SMALL_ATT_SAMPLES).into_par_iter().try_for_each(|k| {
        let mut rng = rs.stream(k as u64);
        let f = random_with(5 + k % 4, &mut rng, |f| f.fixed_point_count() == 0);
        check_small(&f).map_err(|e| format!("sample {k}: {e}"))
    })?;
    let mut class_counts = Vec::new();
    for n in [2, 3] {
        let classes = fixed_point_free_classes(n);
        classes.par_iter().try_for_each(check_small)?;
        class_counts.push(classes.len());
    }
    for (fixture, _) in bn_core::construct::small::exceptional_fixtures() {
        check_small(fixture)?;
    }
    let tight = RandomSource::new(55);
    for n in 3..=7 {
        (0..TIGHTNESS_SAMPLES_PER_DIM).into_par_iter().try_for_each(|k| {
            let mut rng = tight.stream((n * 1000 + k) as u64);
            let f = random_permutation_network(n, &[1, 2], &mut rng).map_err(|e| e.to_string())?;
            let sizes = async_attractors(&f).sizes();
            ensure(sizes.iter().all(|&s| s >= 4), || format!("n={n} sample {k}: attractor sizes {sizes:?}"))
        })?;
    }
    Ok(format!(
        "{SMALL_ATT_SAMPLES} random, {} + {} classes at n=2,3, 4 fixtures, tightness on {} permutations",
        class_counts[0],
        class_counts[1],
        5 * TIGHTNESS_SAMPLES_PER_DIM
    ))
}

fn break_iso() -> Outcome {
    let rs = RandomSource::new(6);
    (0..BREAK_ISO_SAMPLES).into_par_iter().try_for_each(|k| {
        let mut rng = rs.stream(k as u64);
        let n = 3 + k % 2;
        let f = random_with(n, &mut rng, |f| !f.is_constant() && !f.is_identity());
        let out = break_async_iso(&f).map_err(|e| format!("sample {k}: {e}"))?;
        ensure(canonical_form(&out.h) == canonical_form(&f), || format!("sample {k}: not a conjugate"))?;
        ensure(out.witness.holds(&f, &out.h), || format!("sample {k}: witness {} does not hold", out.witness.kind()))?;
        if n == 3 {
            let iso = are_isomorphic_digraphs(&asynchronous_graph(&f), &asynchronous_graph(&out.h))
                .map_err(|e| e.to_string())?;
            ensure(iso.is_none(), || format!("sample {k}: asynchronous graphs still isomorphic"))?;
        }
        Ok::<_, String>(())
    })?;
    Ok(format!("{BREAK_ISO_SAMPLES} networks, n in 3..=4"))
}

fn many_attractor_packing() -> Outcome {
    let rs = RandomSource::new(7);
    (0..MANY_ATT_SAMPLES).into_par_iter().try_for_each(|k| {
        let f = random_network(MANY_ATT_DIM, &mut rs.stream(k as u64));
        let out = many_attractors(&f).map_err(|e| format!("sample {k}: {e}"))?;
        ensure(canonical_form(&out.h) == canonical_form(&f), || format!("sample {k}: not a conjugate"))?;
        let att = async_attractors(&out.h);
        ensure(out.packed.iter().all(|a| a.len() <= 4 && att.attractors.contains(a)), || {
            format!("sample {k}: a packed set is not a small attractor")
        })?;
        ensure(out.packed.len() >= out.guarantee(), || {
            format!("sample {k}: {} packed, guarantee {}", out.packed.len(), out.guarantee())
        })
    })?;
    let rate = many_attractor_rate(MANY_ATT_DIM, MANY_ATT_SAMPLES, &rs).map_err(|e| e.to_string())?;
    ensure(rate.guarantee_met(), || "guarantee missed in rate run".into())?;
    ensure(rate.fraction() >= MANY_ATT_MIN_FRACTION, || {
        format!("fraction {} reaching {} below {MANY_ATT_MIN_FRACTION}", rate.fraction(), rate.threshold())
    })?;
    Ok(format!("fraction reaching {} attractors: {}", rate.threshold(), rate.fraction()))
}

fn image_fraction() -> Outcome {
    let exp = image_count_experiment(IMAGE_DIM, IMAGE_SAMPLES, &RandomSource::new(8)).map_err(|e| e.to_string())?;
    let mean = exp.mean_fraction();
    ensure((IMAGE_BAND.0..=IMAGE_BAND.1).contains(&mean), || format!("mean {mean} outside {IMAGE_BAND:?}"))?;
    Ok(format!("mean {mean:.4}"))
}

fn solidity() -> Outcome {
    let rs = RandomSource::new(9);
    let mut fractions = Vec::new();
    for n in SOLIDITY_DIMS {
        let high = solidity_outcomes(n, SOLIDITY_P, SOLIDITY_SAMPLES, &rs).map_err(|e| e.to_string())?;
        let low = solidity_outcomes(n, SOLIDITY_P_LOW, SOLIDITY_SAMPLES, &rs).map_err(|e| e.to_string())?;
        if let Some(k) = (0..SOLIDITY_SAMPLES).find(|&k| low[k] && !high[k]) {
            return Err(format!("n={n} sample {k}: solid at p={SOLIDITY_P_LOW} but not at p={SOLIDITY_P}"));
        }
        fractions.push(high.iter().filter(|&&b| b).count() as f64 / SOLIDITY_SAMPLES as f64);
    }
    ensure(fractions.windows(2).all(|w| w[0] <= w[1]), || format!("fractions {fractions:?} decrease"))?;
    let last = fractions[fractions.len() - 1];
    ensure(last >= SOLIDITY_MIN_AT_11, || {
        format!("fraction {last} at n=11 below {SOLIDITY_MIN_AT_11} (fractions {fractions:?})")
    })?;
    Ok(format!("fractions at n={SOLIDITY_DIMS:?}: {fractions:?}"))
}

fn strong_connectivity() -> Outcome {
    let rs = RandomSource::new(10);
    (0..STRONG_SAMPLES).into_par_iter().try_for_each(|k| {
        let mut rng = rs.stream(k as u64);
        let n = 3 + k % 4;
        let f = random_permutation_network(n, &[1], &mut rng).map_err(|e| e.to_string())?;
        let out = strongly_connected_variant(&f).map_err(|e| format!("sample {k}: {e}"))?;
        let h = &out.h;
        ensure(canonical_form(h) == canonical_form(&f), || format!("sample {k}: not a conjugate"))?;
        ensure(is_strongly_connected(&AsyncView(h)), || format!("sample {k}: not strongly connected"))?;
        let g = AsyncView(h);
        for x in 0..h.size() as Config {
            let d = bn_core::digraph::bfs_distances(&g, x);
            for y in 0..h.size() as Config {
                let limit = dist(x, y) as u32 + STRONG_MAX_DETOUR;
                ensure(d[y as usize] <= limit, || format!("sample {k}: dist({x},{y}) = {} > {limit}", d[y as usize]))?;
            }
        }
        ensure(attractors(&g).count() == 1, || format!("sample {k}: several attractors"))
    })?;
    Ok(format!("{STRONG_SAMPLES} derangements, n in 3..=6"))
}

fn balanced_coloring() -> Outcome {
    let rs = RandomSource::new(11);
    let mut lengths = 0usize;
    for k in 0..COLORING_SAMPLES {
        let mut rng = rs.stream(k as u64);
        let f = random_permutation_network(4 + k % 5, &[1], &mut rng).map_err(|e| e.to_string())?;
        let phi = h4_coloring(&f).map_err(|e| format!("sample {k}: {e}"))?;
        ensure(phi.is_valid_for(&f), || format!("sample {k}: an arc leaves H4"))?;
        ensure(phi.is_balanced(), || format!("sample {k}: class sizes {:?}", phi.class_sizes()))?;
        lengths += cycle_lengths(f.table()).len();
    }
    Ok(format!("{COLORING_SAMPLES} permutations, {lengths} cycles"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("trivial attractor bound over F(2)", trivial_bound),
        ("reconstruction from the asynchronous graph", reconstruction),
        ("asynchronous twins with distinct synchronous graphs", twin_fixture),
        ("convergence to fixed points", few_attractors),
        ("unique small attractor", small_attractor),
        ("breaking asynchronous isomorphism", break_iso),
        ("many small attractors", many_attractor_packing),
        ("image fraction of f squared", image_fraction),
        ("hypercube solidity", solidity),
        ("strongly connected variant", strong_connectivity),
        ("balanced H4 coloring", balanced_coloring),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
