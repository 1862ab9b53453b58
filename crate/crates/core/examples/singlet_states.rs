//! Total-spin-zero subspaces of spin-1 sites, and the bundled singlets
//! checked against them.

use std::error::Error;

use qlctx::linalg::DEFAULT_TOL;
use qlctx::states::{catalog_state, is_form_invariant, singlet_subspace, CatalogName};

fn main() -> Result<(), Box<dyn Error>> {
    for sites in 2..=4 {
        println!("{sites} spin-1 sites: singlet dimension {}", singlet_subspace(3, sites, DEFAULT_TOL)?.len());
    }

    let kernel = singlet_subspace(3, 4, DEFAULT_TOL)?;
    for name in [CatalogName::Psi4_1, CatalogName::Psi4_2, CatalogName::Psi4_3] {
        let psi = catalog_state(name);
        let projection: f64 = kernel.iter().map(|k| k.overlap(&psi).norm_sqr()).sum::<f64>().sqrt();
        println!("{}: projection onto singlet subspace {projection:.12}", name.as_str());
    }

    for name in [CatalogName::Psi3, CatalogName::Ghzm] {
        let f = is_form_invariant(&catalog_state(name), 100, 0, 1e-9)?;
        println!("{}: form invariant {} (min overlap {:.6})", name.as_str(), f.invariant, f.min_overlap);
    }
    println!("psi3 = {}", catalog_state(CatalogName::Psi3).pretty(DEFAULT_TOL));
    Ok(())
}
