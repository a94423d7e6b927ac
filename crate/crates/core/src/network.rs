use crate::config::{complement, cube_size, Config, MAX_DIM};
use crate::error::{Precondition, Result};
use crate::perm::StatePermutation;

/// A Boolean network `f : {0,1}^n -> {0,1}^n` stored as its full transition table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolNet {
    n: usize,
    table: Vec<Config>,
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Precondition::Dimension { got: n, min: 1, max: MAX_DIM }.into());
    }
    Ok(())
}

impl BoolNet {
    pub fn from_table(n: usize, table: Vec<Config>) -> Result<Self> {
        check_dim(n)?;
        let size = cube_size(n);
        if table.len() != size {
            return Err(Precondition::TableLength { got: table.len(), expected: size }.into());
        }
        if let Some(&bad) = table.iter().find(|&&y| y as usize >= size) {
            return Err(Precondition::OutOfRange(bad).into());
        }
        Ok(BoolNet { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(Config) -> Config) -> Result<Self> {
        check_dim(n)?;
        Self::from_table(n, (0..cube_size(n) as Config).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |x| x).expect("valid dimension")
    }

    pub fn constant(n: usize, c: Config) -> Result<Self> {
        Self::from_fn(n, |_| c)
    }

    pub fn negation(n: usize) -> Self {
        Self::from_fn(n, |x| complement(x, n)).expect("valid dimension")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of configurations, `2^n`.
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Config] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: Config) -> Config {
        self.table[x as usize]
    }

    /// Coordinates that `f` changes at `x`, as a mask.
    #[inline]
    pub fn unstable(&self, x: Config) -> Config {
        x ^ self.table[x as usize]
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.size()];
        for &y in &self.table {
            if std::mem::replace(&mut seen[y as usize], true) {
                return false;
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(x, &y)| x as Config == y)
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&y| y == self.table[0])
    }

    pub fn fixed_points(&self) -> Vec<Config> {
        (0..self.size() as Config).filter(|&x| self.apply(x) == x).collect()
    }

    pub fn fixed_point_count(&self) -> usize {
        self.table.iter().enumerate().filter(|&(x, &y)| x as Config == y).count()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BoolNet) -> BoolNet {
        assert_eq!(self.n, other.n);
        let table = other.table.iter().map(|&y| self.apply(y)).collect();
        BoolNet { n: self.n, table }
    }

    /// `π ∘ f ∘ π⁻¹`, the network isomorphic to `f` under the relabelling `π`.
    pub fn conjugate(&self, pi: &StatePermutation) -> BoolNet {
        assert_eq!(self.n, pi.n());
        let mut table = vec![0; self.size()];
        for (x, &y) in self.table.iter().enumerate() {
            table[pi.apply(x as Config) as usize] = pi.apply(y);
        }
        BoolNet { n: self.n, table }
    }

    /// Membership mask of `f({0,1}^n)`.
    pub fn image_mask(&self) -> Vec<bool> {
        let mut seen = vec![false; self.size()];
        for &y in &self.table {
            seen[y as usize] = true;
        }
        seen
    }
}
