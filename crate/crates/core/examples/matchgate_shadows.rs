//! Classical shadows of a Gaussian state and their error as samples grow.

use freefermion::algebra::MajoranaMonomial;
use freefermion::shadows::{
    collect, sample_bound, shadow_norm_sq, Group, NoiseModel, ShadowConfig,
};
use freefermion::{random, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let n = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let g = random::pure_covariance(n, false, &mut rng)?;
    let cfg = ShadowConfig {
        group: Group::B,
        noise: NoiseModel::none(),
        k_max: 2,
        seed: 4,
    };

    let mut acc = collect(&g, &cfg, 0..0)?;
    let mut start = 0;
    for t in [1_000u64, 10_000, 100_000] {
        acc.merge(&collect(&g, &cfg, start..t)?)?;
        start = t;
        let est = acc.estimates()?;
        let worst = est
            .values
            .iter()
            .map(|(k, v)| {
                Ok((v - g
                    .wick_expectation(&MajoranaMonomial::new(n, k.clone())?)?
                    .re)
                    .abs())
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!(
            "T = {t:>6}: max error over {} observables {worst:.4}",
            est.values.len()
        );
    }
    let norm = shadow_norm_sq(n, 2)?;
    println!("shadow norm² for degree 2 = {norm}");
    println!(
        "samples for ε=0.05, δ=0.01: {}",
        sample_bound(0.05, 0.01, 28, *norm.numer() as f64 / *norm.denom() as f64)?
    );
    Ok(())
}
