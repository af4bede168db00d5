//! Noise-robust estimates via particle-number symmetry.

use freefermion::algebra::MajoranaMonomial;
use freefermion::shadows::{collect, mitigate, symmetry_spec, Group, ShadowConfig};
use freefermion::{random, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let (n, eta) = (6, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spec = symmetry_spec(n, eta, true)?;
    let g = random::slater(n, eta, &mut rng)?
        .covariance()
        .with_vacuum_modes(spec.n_modes - n);
    let cfg = ShadowConfig {
        group: Group::B,
        noise: "bit_flip:0.1".parse()?,
        k_max: 2,
        seed: 5,
    };
    let raw = collect(&g, &cfg, 0..50_000)?.estimates()?;
    let fixed = mitigate(&raw, &spec)?;

    let err = |e: &freefermion::shadows::Estimates| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (k, v) in e.values.iter().filter(|(k, _)| k.len() == 2) {
            let truth = g
                .wick_expectation(&MajoranaMonomial::new(spec.n_modes, k.clone())?)?
                .re;
            worst = worst.max((v - truth).abs());
        }
        Ok(worst)
    };
    println!(
        "ancilla added: {}, s2 = {}, s4 = {}",
        spec.ancilla_added, spec.s2, spec.s4
    );
    println!(
        "max degree-2 error: raw {:.4}, mitigated {:.4}",
        err(&raw)?,
        err(&fixed)?
    );
    Ok(())
}
