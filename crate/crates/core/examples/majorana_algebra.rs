//! Products, commutation and Jordan–Wigner images of Majorana monomials.

use freefermion::algebra::{MajoranaMonomial, SignedPermutation};
use freefermion::Result;

fn main() -> Result<()> {
    let n = 3;
    let a = MajoranaMonomial::new(n, vec![0, 1])?;
    let b = MajoranaMonomial::new(n, vec![1, 2])?;
    let ab = a.multiply(&b)?;
    println!(
        "Γ{:?} · Γ{:?} = {} Γ{:?}",
        a.indices(),
        b.indices(),
        ab.phase_value(),
        ab.indices()
    );
    println!("anticommute: {}", a.anticommutes(&b)?);

    for mu in 0..2 * n {
        let g = MajoranaMonomial::generator(n, mu)?;
        println!("γ_{mu} -> {}", g.to_pauli().letters_string());
    }

    // a signed permutation moves supports around and may flip signs
    let q = SignedPermutation::new(n, vec![2, 3, 0, 1, 4, 5], vec![1, -1, 1, 1, 1, 1])?;
    let c = a.conjugate(&q)?;
    println!(
        "Q Γ{:?} Qᵀ = {} Γ{:?}",
        a.indices(),
        c.phase_value(),
        c.indices()
    );
    Ok(())
}
