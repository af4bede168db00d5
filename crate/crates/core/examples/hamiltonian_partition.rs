//! Partitions an electronic Hamiltonian into anticommuting sets.

use freefermion::partition::{
    analytic_partition, apply_template, greedy_partition, majorana_form, norms_report,
    rotation_plan, ElectronicIntegrals,
};
use freefermion::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let n = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let poly = majorana_form(&ElectronicIntegrals::random(n, &mut rng)?)?;
    println!("{} Majorana terms", poly.terms().len());

    for (name, part) in [
        ("greedy", greedy_partition(&poly)),
        ("analytic", apply_template(&analytic_partition(n)?, &poly)?),
    ] {
        let r = norms_report(&poly, &part)?;
        println!(
            "{name}: {} sets, largest {}, Λ = {:.3}, Λ_c = {:.3}",
            part.sets.len(),
            r.s_max,
            r.lambda,
            r.lambda_c
        );
        let plan = rotation_plan(&part.sets[0])?;
        println!(
            "  first set collapses onto Γ{:?} in {} rotations",
            plan.target,
            plan.steps.len()
        );
    }
    Ok(())
}
