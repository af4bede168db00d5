//! Runs the dense cross-check suite on a few modes.

use freefermion::verify::run_suite;
use freefermion::Result;

fn main() -> Result<()> {
    for c in run_suite(3, 0)? {
        println!(
            "{:<40} {:<4} {}",
            c.name,
            if c.passed { "ok" } else { "FAIL" },
            c.detail
        );
    }
    Ok(())
}
