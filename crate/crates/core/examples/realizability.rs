//! Three tripods in a chain are realizable in three dimensions; in a
//! triangle they are not.

use std::error::Error;

use qlctx::corpus;
use qlctx::realizability::{saturate_orthogonality, search_realization, verify_realization};

fn main() -> Result<(), Box<dyn Error>> {
    for id in ["fig2a", "fig2b"] {
        let d = corpus::load_diagram(id)?;
        let saturation = saturate_orthogonality(&d)?;
        println!("{id}: saturation {:?}", saturation.verdict);
        for step in &saturation.derivation {
            println!("  {step}");
        }

        let report = search_realization(&d, 3, 0, 50)?;
        println!("  search: {} (penalty {:.2e})", report.label(), report.penalty);
        if report.success {
            let check = verify_realization(&d, &report.realization, 1e-6)?;
            println!("  verified: {}", check.valid);
            print!("{}", report.realization.to_text());
        }
    }
    Ok(())
}
