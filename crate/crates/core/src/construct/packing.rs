use crate::config::{unit, Config};
use crate::digraph::AttractorSet;
use crate::dynamics::{async_attractors, image_count, periodic_structure};
use crate::error::{verification, Result};
use crate::network::BoolNet;
use crate::perm::StatePermutation;

#[derive(Debug, Clone)]
pub struct ManyAttractorsOutcome {
    pub h: BoolNet,
    /// Attractors of `A(h)` placed on purpose, one per packed piece.
    pub packed: Vec<Vec<Config>>,
    /// Number of images of `f²`.
    pub images: usize,
    pub attractors: AttractorSet,
}

impl ManyAttractorsOutcome {
    /// `floor(d / 10)` where `d` is the number of images of `f²`.
    pub fn guarantee(&self) -> usize {
        self.images / 10
    }

    pub fn count(&self) -> usize {
        self.attractors.count()
    }

    pub fn small_count(&self) -> usize {
        self.attractors.attractors.iter().filter(|a| a.len() <= 4).count()
    }
}

enum Piece {
    Fixed(Config),
    TwoCycle(Config, Config),
    Paths([Config; 3], [Config; 3]),
}

/// Paths `x~ -> f(x~) -> x` with `x` in `Im(f²)` outside the points of period 1
/// or 2, chosen greedily in ascending order of `x`.
fn disjoint_paths(f: &BoolNet, period_le_2: &[bool]) -> Vec<[Config; 3]> {
    let size = f.size();
    let f2 = f.compose(f);
    let mut pre: Vec<Option<Config>> = vec![None; size];
    for x in 0..size as Config {
        let y = f2.apply(x) as usize;
        if pre[y].is_none() {
            pre[y] = Some(x);
        }
    }
    let mut alive: Vec<bool> = (0..size).map(|x| pre[x].is_some() && !period_le_2[x]).collect();
    let mut out = Vec::new();
    for x in 0..size as Config {
        if !alive[x as usize] {
            continue;
        }
        let t = pre[x as usize].expect("alive implies an image");
        let ft = f.apply(t);
        out.push([t, ft, x]);
        for y in [t, ft, x, f.apply(x), f2.apply(x)] {
            alive[y as usize] = false;
        }
    }
    out
}

/// A network `h ~ f` whose asynchronous graph has at least `floor(d / 10)`
/// attractors of size at most 4, `d` being the number of images of `f²`.
pub fn many_attractors(f: &BoolNet) -> Result<ManyAttractorsOutcome> {
    let n = f.n();
    let images = image_count(f, 2);
    let (h, packed) = if n < 3 {
        (f.clone(), Vec::new())
    } else {
        let ps = periodic_structure(f);
        let period_le_2: Vec<bool> = (0..f.size() as Config).map(|x| ps.period(x).is_some_and(|p| p <= 2)).collect();
        let mut pieces: Vec<Piece> = f.fixed_points().into_iter().map(Piece::Fixed).collect();
        pieces.extend(ps.cycles.iter().filter(|c| c.len() == 2).map(|c| Piece::TwoCycle(c[0], c[1])));
        let paths = disjoint_paths(f, &period_le_2);
        let half = paths.len() / 2;
        pieces.extend((0..half).map(|k| Piece::Paths(paths[k], paths[half + k])));
        pieces.truncate(1 << (n - 3));

        let (e1, e2, e3) = (unit(1), unit(2), unit(3));
        let mut pairs = Vec::new();
        let mut packed = Vec::new();
        for (k, piece) in pieces.iter().enumerate() {
            let phi = (k as Config) << 3;
            match *piece {
                Piece::Fixed(a) => {
                    pairs.push((a, phi));
                    packed.push(vec![phi]);
                }
                Piece::TwoCycle(b, fb) => {
                    pairs.extend([(b, phi), (fb, phi | e1)]);
                    packed.push(vec![phi, phi | e1]);
                }
                Piece::Paths([x, y, z], [u, v, w]) => {
                    pairs.extend([(x, phi | e2), (y, phi), (z, phi | e1 | e2)]);
                    pairs.extend([(u, phi | e1 | e3), (v, phi | e1), (w, phi | e3)]);
                    packed.push(vec![phi, phi | e1, phi | e2, phi | e1 | e3]);
                }
            }
        }
        (f.conjugate(&StatePermutation::from_partial(n, &pairs)?), packed)
    };
    let attractors = async_attractors(&h);
    for a in &packed {
        if !attractors.attractors.contains(a) {
            return Err(verification(format!("packed set {a:?} is not an attractor")));
        }
    }
    let out = ManyAttractorsOutcome { h, packed, images, attractors };
    if out.small_count() < out.guarantee() {
        return Err(verification(format!(
            "{} attractors of size at most 4, fewer than {}",
            out.small_count(),
            out.guarantee()
        )));
    }
    Ok(out)
}
