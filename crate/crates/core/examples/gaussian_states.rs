//! Covariance matrices, Wick expectations and Born sampling of a Gaussian state.

use freefermion::algebra::MajoranaMonomial;
use freefermion::gaussian::{pfaffian, vacuum_covariance};
use freefermion::{random, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 4;
    let q = random::special_orthogonal(2 * n, &mut rng);
    let g = vacuum_covariance(n)?.evolve(&q)?;
    println!("pure: {}", g.is_pure());

    let m = MajoranaMonomial::new(n, vec![0, 3, 4, 6])?;
    println!("⟨Γ{:?}⟩ = {:.6}", m.indices(), g.wick_expectation(&m)?.re);
    println!("Pf(M) = {:.6}", pfaffian(g.matrix())?);

    let mut counts = std::collections::BTreeMap::new();
    for _ in 0..2000 {
        *counts
            .entry(g.sample_measurement(&mut rng).to_string())
            .or_insert(0) += 1;
    }
    for (b, c) in counts.iter().take(6) {
        let p = g.outcome_probability(&b.parse()?)?;
        println!("{b}: observed {:.3}, exact {p:.3}", *c as f64 / 2000.0);
    }
    Ok(())
}
