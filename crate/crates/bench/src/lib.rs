//! Fixtures shared by the benchmarks.

use planepart_core::sampler::MultisetSampler;
use planepart_core::{BoltzmannParam, Diagram, OracleConfig, RandomSource};

/// A free diagram drawn at the parameter tuned for expected size `n`.
pub fn diagram_near(n: u64, seed: u64) -> Diagram {
    let x = planepart_core::oracle::xi_unconstrained(n).expect("n above 2");
    let sampler =
        MultisetSampler::new(BoltzmannParam::new(x).unwrap(), &OracleConfig::default()).unwrap();
    sampler.sample(&mut RandomSource::new(seed, 0)).unwrap()
}
