use crate::config::{cube_size, Config, MAX_DIM};
use crate::error::{Precondition, Result};

/// A bijection of the configurations of the n-cube.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StatePermutation {
    n: usize,
    map: Vec<Config>,
    inv: Vec<Config>,
}

impl StatePermutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        let map: Vec<Config> = (0..cube_size(n) as Config).collect();
        StatePermutation { n, inv: map.clone(), map }
    }

    pub fn from_images(n: usize, map: Vec<Config>) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Precondition::Dimension { got: n, min: 0, max: MAX_DIM }.into());
        }
        let size = cube_size(n);
        if map.len() != size {
            return Err(Precondition::TableLength { got: map.len(), expected: size }.into());
        }
        let mut inv = vec![Config::MAX; size];
        for (x, &y) in map.iter().enumerate() {
            if y as usize >= size || inv[y as usize] != Config::MAX {
                return Err(Precondition::NotBijection.into());
            }
            inv[y as usize] = x as Config;
        }
        Ok(StatePermutation { n, map, inv })
    }

    /// The transposition exchanging `a` and `b` (identity when they coincide).
    pub fn transposition(n: usize, a: Config, b: Config) -> Self {
        let mut p = Self::identity(n);
        p.map.swap(a as usize, b as usize);
        p.inv.swap(a as usize, b as usize);
        p
    }

    /// Any permutation sending each `from` to its `to`; the remaining sources go to
    /// the remaining targets in increasing order.
    pub fn from_partial(n: usize, pairs: &[(Config, Config)]) -> Result<Self> {
        let size = cube_size(n);
        let mut map = vec![Config::MAX; size];
        let mut taken = vec![false; size];
        for &(x, y) in pairs {
            if x as usize >= size {
                return Err(Precondition::OutOfRange(x).into());
            }
            if y as usize >= size {
                return Err(Precondition::OutOfRange(y).into());
            }
            if map[x as usize] != Config::MAX && map[x as usize] != y {
                return Err(Precondition::NotBijection.into());
            }
            if map[x as usize] == Config::MAX {
                if taken[y as usize] {
                    return Err(Precondition::NotBijection.into());
                }
                map[x as usize] = y;
                taken[y as usize] = true;
            }
        }
        let mut free = (0..size).filter(|&y| !taken[y]);
        for slot in map.iter_mut() {
            if *slot == Config::MAX {
                *slot = free.next().expect("counts match") as Config;
            }
        }
        Self::from_images(n, map)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, x: Config) -> Config {
        self.map[x as usize]
    }

    #[inline]
    pub fn apply_inverse(&self, y: Config) -> Config {
        self.inv[y as usize]
    }

    pub fn images(&self) -> &[Config] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        StatePermutation { n: self.n, map: self.inv.clone(), inv: self.map.clone() }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &StatePermutation) -> Self {
        assert_eq!(self.n, other.n);
        let map = other.map.iter().map(|&y| self.map[y as usize]).collect();
        Self::from_images(self.n, map).expect("composition of bijections")
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x as Config == y)
    }
}
