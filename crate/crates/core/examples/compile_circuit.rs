//! Compiles a random orthogonal matrix with both schemes and compares their cost.

use freefermion::compiler::{compile_blocked, program_to_orthogonal, stats_compare};
use freefermion::{random, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let q = random::orthogonal(8, &mut rng);
    let prog = compile_blocked(&q)?;
    println!(
        "round-trip error: {:.1e}",
        (program_to_orthogonal(&prog)? - &q).amax()
    );
    for g in prog.gates().iter().take(5) {
        println!("  {g:?}");
    }
    for n in [4, 16, 32] {
        let c = stats_compare(&random::orthogonal(2 * n, &mut rng))?;
        println!(
            "n = {n:>2}: rotations {} vs {}, depth {} vs {}",
            c.naive.rotation_count, c.blocked.rotation_count, c.naive.depth, c.blocked.depth
        );
    }
    Ok(())
}
