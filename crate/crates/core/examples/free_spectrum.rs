//! Normal form and full spectrum of a quadratic Hamiltonian.

use freefermion::{dense, random, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let h = random::quadratic_hamiltonian(3, &mut rng)?;
    let form = h.canonical_form();
    println!("mode energies: {:?}", form.energies);
    println!(
        "reconstruction error: {:.1e}",
        (form.reconstruct() - h.coupling()).amax()
    );

    let mut fast = h.spectrum()?;
    fast.sort_by(f64::total_cmp);
    let exact = dense::quadratic_operator(&h)?.hermitian_eigenvalues();
    for (a, b) in fast.iter().zip(&exact) {
        println!("{a:+.6}  dense {b:+.6}");
    }
    Ok(())
}
