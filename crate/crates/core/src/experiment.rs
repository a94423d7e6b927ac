//! Monte Carlo harnesses over uniformly random networks. Sample `k` always draws
//! from stream `k` of the seed, so results do not depend on scheduling.

use rayon::prelude::*;

use crate::construct::many_attractors;
use crate::dynamics::image_count;
use crate::error::{Precondition, Result};
use crate::rng::{random_network, RandomSource};

/// Limit of `|Im f²| / 2^n` for uniform `f`: `1 - exp(-1 + exp(-1))`.
pub fn image_fraction_limit() -> f64 {
    1.0 - (-1.0 + (-1.0f64).exp()).exp()
}

/// Attractor density reached with probability tending to 1.
pub const MANY_ATTRACTOR_DENSITY: f64 = 0.046;

pub const EXPERIMENT_MAX_DIM: usize = 20;

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > EXPERIMENT_MAX_DIM {
        return Err(Precondition::Dimension { got: n, min: 1, max: EXPERIMENT_MAX_DIM }.into());
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImageCountExperiment {
    pub n: usize,
    pub seed: u64,
    /// `|Im f²|` per sample, in sample order.
    pub counts: Vec<usize>,
}

impl ImageCountExperiment {
    pub fn mean_fraction(&self) -> f64 {
        if self.counts.is_empty() {
            return 0.0;
        }
        let total: usize = self.counts.iter().sum();
        total as f64 / self.counts.len() as f64 / (1u64 << self.n) as f64
    }

    pub const CSV_HEADER: &'static str = "n,samples,mean_image_fraction,limit,seed";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.n, self.counts.len(), self.mean_fraction(), image_fraction_limit(), self.seed)
    }

    pub const SAMPLE_HEADER: &'static str = "sample,images";

    pub fn sample_rows(&self) -> Vec<String> {
        self.counts.iter().enumerate().map(|(k, c)| format!("{k},{c}")).collect()
    }
}

pub fn image_count_experiment(n: usize, samples: usize, rs: &RandomSource) -> Result<ImageCountExperiment> {
    check_dim(n)?;
    let counts =
        (0..samples as u64).into_par_iter().map(|k| image_count(&random_network(n, &mut rs.stream(k)), 2)).collect();
    Ok(ImageCountExperiment { n, seed: rs.seed(), counts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManyAttractorSample {
    pub images: usize,
    /// Attractors of size at most 4 after the packing construction.
    pub small: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManyAttractorRate {
    pub n: usize,
    pub seed: u64,
    pub samples: Vec<ManyAttractorSample>,
}

impl ManyAttractorRate {
    /// Least integer count at or above `0.046 * 2^n`.
    pub fn threshold(&self) -> usize {
        (MANY_ATTRACTOR_DENSITY * (1u64 << self.n) as f64).ceil() as usize
    }

    pub fn successes(&self) -> usize {
        let t = self.threshold();
        self.samples.iter().filter(|s| s.small >= t).count()
    }

    pub fn fraction(&self) -> f64 {
        if self.samples.is_empty() {
            0.0
        } else {
            self.successes() as f64 / self.samples.len() as f64
        }
    }

    /// Every sample reached `floor(d / 10)`.
    pub fn guarantee_met(&self) -> bool {
        self.samples.iter().all(|s| s.small >= s.images / 10)
    }

    pub const CSV_HEADER: &'static str = "n,samples,threshold,fraction,guarantee_met,seed";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.samples.len(),
            self.threshold(),
            self.fraction(),
            self.guarantee_met(),
            self.seed
        )
    }

    pub const SAMPLE_HEADER: &'static str = "sample,images,small_attractors";

    pub fn sample_rows(&self) -> Vec<String> {
        self.samples.iter().enumerate().map(|(k, s)| format!("{k},{},{}", s.images, s.small)).collect()
    }
}

pub fn many_attractor_rate(n: usize, samples: usize, rs: &RandomSource) -> Result<ManyAttractorRate> {
    check_dim(n)?;
    let samples = (0..samples as u64)
        .into_par_iter()
        .map(|k| {
            let f = random_network(n, &mut rs.stream(k));
            let out = many_attractors(&f)?;
            Ok(ManyAttractorSample { images: out.images, small: out.small_count() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ManyAttractorRate { n, seed: rs.seed(), samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_constant() {
        assert!((image_fraction_limit() - 0.4685).abs() < 1e-3);
    }

    #[test]
    fn runs_are_reproducible() {
        let rs = RandomSource::new(5);
        let a = image_count_experiment(6, 20, &rs).unwrap();
        let b = image_count_experiment(6, 20, &rs).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sample_rows().len(), 20);
    }

    #[test]
    fn threshold_in_dimension_ten() {
        let r = ManyAttractorRate { n: 10, seed: 0, samples: Vec::new() };
        assert_eq!(r.threshold(), 48);
    }
}
