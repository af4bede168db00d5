//! Slater determinants: amplitudes, reduced density matrices and the covariance matrix.

use freefermion::gaussian::k_rdm_element;
use freefermion::shadows::two_rdm_exact;
use freefermion::{random, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = random::slater(5, 2, &mut rng)?;
    println!("amplitude ⟨01100|ψ⟩ = {:.6}", s.amplitude(&[1, 2])?);

    let d1 = s.one_rdm();
    let trace: f64 = (0..5).map(|p| d1[(p, p)].re).sum();
    println!("tr D1 = {trace:.6}");

    let d2 = two_rdm_exact(&d1)?;
    let trace2: f64 = (0..d2.nrows()).map(|i| d2[(i, i)].re).sum();
    println!("tr D2 = {trace2:.6} (η(η-1)/2 = 1)");
    println!(
        "⟨a†0 a†1 a1 a0⟩ = {:.6}",
        k_rdm_element(&d1, &[0, 1], &[0, 1])?.re
    );
    println!("covariance is pure: {}", s.covariance().is_pure());
    Ok(())
}
