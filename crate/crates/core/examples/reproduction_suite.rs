//! Run the default scenarios and print every phase.

use abphase_core::phase::QuadratureConfig;
use abphase_core::scenarios::{presets, Tolerances};

fn main() -> abphase_core::Result<()> {
    let results = presets::reproduction_suite(&QuadratureConfig::default(), &Tolerances::default())?;
    for r in &results {
        println!(
            "{} [{}]: total {:.15e} expected {:.15e} tol {:.1e}",
            r.name,
            r.verdict.as_str(),
            r.total_difference,
            r.expected,
            r.tolerance_used
        );
        for p in &r.phases {
            println!("    {:<40} {:+.15e}", p.label, p.radians());
        }
        for c in &r.checks {
            println!(
                "    check {:<34} |Δ| = {:.3e} (tol {:.3e})",
                c.label,
                (c.value - c.expected).abs(),
                c.tolerance
            );
        }
    }
    Ok(())
}
