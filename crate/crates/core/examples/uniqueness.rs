//! Does one site's outcome fix all the others?

use std::error::Error;

use qlctx::linalg::DEFAULT_TOL;
use qlctx::states::{catalog_state, label, CatalogName};
use qlctx::uniqueness::{check_uniqueness, check_uniqueness_rotated, counterfactual_complete, filter};

fn main() -> Result<(), Box<dyn Error>> {
    for name in CatalogName::ALL {
        let r = check_uniqueness(&catalog_state(name), DEFAULT_TOL);
        println!("{:7} unique: {:5}  terms: {}", name.as_str(), r.overall, r.term_count);
    }

    let psi3 = catalog_state(CatalogName::Psi3);
    let minus = 2;
    println!("psi3 after site 0 reads -: {}", filter(&psi3, 0, minus)?.pretty(DEFAULT_TOL));
    println!("completion: {:?}", counterfactual_complete(&psi3, 0, minus)?);

    let psi2 = catalog_state(CatalogName::Psi2);
    println!("psi2, site 0 reads +: {:?}", counterfactual_complete(&psi2, 0, 0)?);
    println!("labels: {} {} {}", label(3, 0), label(3, 1), label(3, 2));

    let ghzm = catalog_state(CatalogName::Ghzm);
    for run in check_uniqueness_rotated(&ghzm, 5, 0, DEFAULT_TOL)? {
        println!("ghzm rotation {}: {} terms, unique {}", run.trial, run.term_count, run.report.overall);
    }
    Ok(())
}
