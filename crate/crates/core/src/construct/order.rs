//! Good orders and the relabelling that makes every configuration outside a down
//! set `X` start a decreasing path towards `X` or a fixed point.

use crate::config::{binomial, cube_size, leq, lt, weight, weight_key, Config};
use crate::error::{verification, Precondition, Result};
use crate::network::BoolNet;
use crate::perm::StatePermutation;

/// Total order on a set `Y` of configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodOrder {
    order: Vec<Config>,
    position: Vec<u32>,
}

impl GoodOrder {
    fn new(size: usize, order: Vec<Config>) -> Self {
        let mut position = vec![u32::MAX; size];
        for (k, &x) in order.iter().enumerate() {
            position[x as usize] = k as u32;
        }
        GoodOrder { order, position }
    }

    pub fn order(&self) -> &[Config] {
        &self.order
    }

    pub fn position(&self, x: Config) -> Option<usize> {
        match self.position[x as usize] {
            u32::MAX => None,
            p => Some(p as usize),
        }
    }

    pub fn maximum(&self) -> Option<Config> {
        self.order.last().copied()
    }
}

pub(crate) fn mask_of(size: usize, set: &[Config]) -> Vec<bool> {
    let mut m = vec![false; size];
    for &x in set {
        m[x as usize] = true;
    }
    m
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// A good order on `y_set`: whenever `x ≺ y ⪯ f(x)`, also `f(y) ≺ y`. With
/// `maximal` given (it must lie in `Y \ f(Y)`), that configuration comes last.
///
/// Each weak component of `S(f)` restricted to `Y` is a tree or a single cycle with
/// trees; the cycle is cut at its (weight, enc)-least vertex and the component laid
/// out root first so that `f(x) ≺ x` inside it. Components are concatenated.
pub fn good_order(f: &BoolNet, y_set: &[Config], maximal: Option<Config>) -> Result<GoodOrder> {
    let size = f.size();
    let in_y = mask_of(size, y_set);
    let succ = |x: Config| -> Option<Config> {
        let y = f.apply(x);
        in_y[y as usize].then_some(y)
    };
    if let Some(a) = maximal {
        let hit = y_set.iter().any(|&x| succ(x) == Some(a));
        if !in_y[a as usize] || hit {
            return Err(Precondition::NotMember(a).into());
        }
    }

    let mut members: Vec<Config> = y_set.to_vec();
    members.sort_unstable_by_key(|&x| weight_key(x));
    members.dedup();
    let mut parent: Vec<usize> = (0..size).collect();
    for &x in &members {
        if let Some(y) = succ(x) {
            let (rx, ry) = (find(&mut parent, x as usize), find(&mut parent, y as usize));
            parent[rx] = ry;
        }
    }
    // group by component, preserving (weight, enc) order inside each group
    let mut groups: Vec<Vec<Config>> = Vec::new();
    let mut group_of = vec![usize::MAX; size];
    for &x in &members {
        let r = find(&mut parent, x as usize);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[r]].push(x);
    }
    if let Some(a) = maximal {
        let r = find(&mut parent, a as usize);
        let g = groups.remove(group_of[r]);
        groups.push(g);
    }

    let mut children: Vec<Vec<Config>> = vec![Vec::new(); size];
    for &x in &members {
        if let Some(y) = succ(x) {
            children[y as usize].push(x);
        }
    }
    let mut order = Vec::with_capacity(members.len());
    let mut state = vec![0u8; size];
    for group in &groups {
        // walk forward from the least member until the walk leaves Y or repeats
        let mut x = group[0];
        let root = loop {
            state[x as usize] = 1;
            match succ(x) {
                None => break x,
                Some(y) if state[y as usize] == 1 => {
                    let mut cyc = vec![y];
                    let mut z = f.apply(y);
                    while z != y {
                        cyc.push(z);
                        z = f.apply(z);
                    }
                    break *cyc.iter().min_by_key(|&&c| weight_key(c)).unwrap();
                }
                Some(y) => x = y,
            }
        };
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &c in &children[v as usize] {
                if c != root {
                    order.push(c);
                }
            }
        }
        if let Some(a) = maximal {
            if let Some(p) = order[start..].iter().position(|&v| v == a) {
                let v = order.remove(start + p);
                order.push(v);
            }
        }
    }
    debug_assert_eq!(order.len(), members.len());
    Ok(GoodOrder::new(size, order))
}

/// Direct check of the good-order condition.
pub fn is_good_order(f: &BoolNet, order: &GoodOrder) -> bool {
    for (px, &x) in order.order.iter().enumerate() {
        let Some(pfx) = order.position(f.apply(x)) else {
            continue;
        };
        for py in px + 1..=pfx {
            let y = order.order[py];
            match order.position(f.apply(y)) {
                Some(pfy) if pfy < py => {}
                _ => return false,
            }
        }
    }
    true
}

/// `h ~_X f` given that `h ~ f`: `S(h)` and `S(f)` agree on arcs inside `X` and
/// both leave `X` from the same configurations.
pub fn agrees_on(f: &BoolNet, h: &BoolNet, x_set: &[Config]) -> bool {
    let in_x = mask_of(f.size(), x_set);
    x_set.iter().all(|&x| {
        let (fx, hx) = (f.apply(x), h.apply(x));
        if in_x[fx as usize] {
            hx == fx
        } else {
            !in_x[hx as usize]
        }
    })
}

pub fn is_down_set(n: usize, x_set: &[Config]) -> Result<()> {
    let in_x = mask_of(cube_size(n), x_set);
    for &x in x_set {
        let mut bits = x;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            if !in_x[(x ^ low) as usize] {
                return Err(Precondition::NotDownSet { x, below: x ^ low }.into());
            }
            bits ^= low;
        }
    }
    Ok(())
}

/// Every configuration outside `X ∪ FP(h)` has a decreasing arc. For a down set `X`
/// this is the same as every decreasing path ending in `X ∪ FP(h)`, and it is
/// unaffected by relabelling inside `X`.
pub fn is_x_converging(h: &BoolNet, x_set: &[Config]) -> bool {
    let in_x = mask_of(h.size(), x_set);
    (0..h.size() as Config).all(|x| in_x[x as usize] || h.apply(x) == x || x & !h.apply(x) != 0)
}

#[derive(Debug, Clone)]
pub struct DecreasingOutcome {
    pub h: BoolNet,
    /// `h = π ∘ f ∘ π⁻¹`; `π` fixes `X` pointwise.
    pub pi: StatePermutation,
    /// The configuration of `Y \ f(Y)` placed at the top of the good order.
    pub top: Config,
    pub exchanges: usize,
}

fn check_preconditions(f: &BoolNet, x_set: &[Config], in_x: &[bool]) -> Result<()> {
    let n = f.n();
    if x_set.is_empty() {
        return Err(Precondition::EmptySet.into());
    }
    is_down_set(n, x_set)?;
    let y_count = in_x.iter().filter(|&&b| !b).count();
    let mut image = vec![false; f.size()];
    let mut closed = true;
    for x in (0..f.size() as Config).filter(|&x| !in_x[x as usize]) {
        let y = f.apply(x);
        closed &= !in_x[y as usize];
        image[y as usize] = true;
    }
    if closed && image.iter().filter(|&&b| b).count() == y_count {
        return Err(Precondition::ComplementClosed.into());
    }
    for l in 2..n {
        let have = (0..f.size() as Config).filter(|&x| !in_x[x as usize] && weight(x) == l).count();
        let need = binomial(n - 1, l - 1) + 1;
        if have < need {
            return Err(Precondition::Census { weight: l, have, need }.into());
        }
    }
    Ok(())
}

/// Relabels `f` outside the down set `X` so that every configuration outside
/// `X ∪ FP(h)` starts a decreasing arc, keeping `S(h)` equal to `S(f)` inside `X`.
pub fn decreasing_construct(f: &BoolNet, x_set: &[Config]) -> Result<DecreasingOutcome> {
    let n = f.n();
    let size = f.size();
    let in_x = mask_of(size, x_set);
    check_preconditions(f, x_set, &in_x)?;

    let y_set: Vec<Config> = (0..size as Config).filter(|&x| !in_x[x as usize]).collect();
    let mut image = vec![false; size];
    for &x in &y_set {
        image[f.apply(x) as usize] = true;
    }
    let top = y_set
        .iter()
        .copied()
        .filter(|&x| !image[x as usize])
        .min_by_key(|&x| weight_key(x))
        .ok_or_else(|| verification("no configuration outside X is missed by f"))?;
    let order = good_order(f, &y_set, Some(top))?;

    let mut slots = y_set.clone();
    slots.sort_unstable_by_key(|&x| weight_key(x));
    let mut map: Vec<Config> = (0..size as Config).collect();
    for (&src, &dst) in order.order().iter().zip(&slots) {
        map[src as usize] = dst;
    }
    let mut pi = StatePermutation::from_images(n, map)?;
    let mut h = f.conjugate(&pi);

    let mut exchanges = 0;
    loop {
        let bad = y_set.iter().copied().filter(|&x| lt(x, h.apply(x))).min_by_key(|&x| weight_key(x));
        let Some(x) = bad else { break };
        if exchanges > n {
            return Err(verification("exchange loop did not terminate"));
        }
        let hx = h.apply(x);
        let y = y_set
            .iter()
            .copied()
            .filter(|&y| weight(y) == weight(hx) && !leq(x, y))
            .min()
            .ok_or_else(|| verification(format!("no exchange partner for {x}")))?;
        let swap = StatePermutation::transposition(n, hx, y);
        pi = swap.compose(&pi);
        h = h.conjugate(&swap);
        exchanges += 1;
    }

    if !agrees_on(f, &h, x_set) {
        return Err(verification("relabelling changed the dynamics inside X"));
    }
    if !is_x_converging(&h, x_set) {
        return Err(verification("result is not X-converging"));
    }
    Ok(DecreasingOutcome { h, pi, top, exchanges })
}
