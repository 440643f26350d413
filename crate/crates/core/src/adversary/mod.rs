//! Hard instance families and adaptive adversaries.
//!
//! All randomness comes from [`rng`], a xoshiro256++ generator seeded with
//! `seed_from_u64`, so a `(params, seed)` pair always yields the same instance.

mod random;
mod redblue;
mod staircase;

pub use random::{
    greedy_tightness_gadget, random_instance, random_vertex_arrival, random_weighted_instance,
};
pub use redblue::{gen_gk, gen_h1, gen_hk, verify_redblue, Color, ColoredInstance, RedBlueViolation};
pub use staircase::{run_staircase, StaircaseIteration, StaircaseParams, StaircaseRun};

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypergraph::Instance;
use crate::online::{run_online, Algorithm};

pub type Rng = Xoshiro256PlusPlus;

pub fn rng(seed: u64) -> Rng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Seeded instance families that can be sampled repeatedly.
#[derive(Clone, Debug, PartialEq)]
pub enum Distribution {
    Gk { k: usize },
    Hk { k: usize },
    Random { k: usize, edges: usize, resources: usize },
    RandomWeighted { k: usize, edges: usize, resources: usize },
}

impl Distribution {
    pub fn sample(&self, seed: u64) -> Result<Instance> {
        Ok(match *self {
            Distribution::Gk { k } => gen_gk(k, seed)?.instance,
            Distribution::Hk { k } => gen_hk(k, seed)?.instance,
            Distribution::Random { k, edges, resources } => random_instance(k, edges, resources, seed)?,
            Distribution::RandomWeighted { k, edges, resources } => {
                random_weighted_instance(k, edges, resources, (0.1, 10.0), seed)?
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    /// Standard error of the mean; NaN for a single trial.
    pub stderr: f64,
    pub trials: usize,
}

impl Estimate {
    pub fn from_samples(values: &[f64]) -> Estimate {
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let stderr = if n < 2 {
            f64::NAN
        } else {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        };
        Estimate { mean, stderr, trials: n }
    }
}

/// Mean and standard error of the online objective over `trials` samples
/// with seeds `seed, seed + 1, ...`.
pub fn expected_value_estimate(
    distribution: &Distribution,
    algorithm: Algorithm,
    trials: usize,
    seed: u64,
) -> Result<Estimate> {
    if trials == 0 {
        return Err(crate::Error::Parameter("trials must be at least 1".into()));
    }
    let values = (0..trials)
        .into_par_iter()
        .map(|t| {
            let inst = distribution.sample(seed.wrapping_add(t as u64))?;
            Ok(run_online(&inst, algorithm)?.objective)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Estimate::from_samples(&values))
}
