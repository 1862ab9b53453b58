//! Two tripods sharing one leg: their two-valued states, the context
//! operators for a given angle, and what they have in common.

use std::error::Error;
use std::f64::consts::PI;

use qlctx::context_ops::{context_operator, link_observables, tripod_pair_bases};
use qlctx::corpus;
use qlctx::linalg::{spectral_decompose, ComplexVector};
use qlctx::logic::two_valued_states;
use qlctx::realizability::{born_probabilities, verify_realization, Realization, Space};

fn main() -> Result<(), Box<dyn Error>> {
    let d = corpus::load_diagram("fig1")?;
    for s in two_valued_states(&d) {
        println!("state: {:?}", s.true_names(&d));
    }

    let phi = PI / 5.0;
    let [first, second] = tripod_pair_bases(phi);
    let c1 = context_operator(&first, &[1.0, 2.0, 3.0])?;
    let c2 = context_operator(&second, &[4.0, 5.0, 6.0])?;
    println!("second context operator:\n{:?}", c2.operator());
    println!("shared projectors: {}", link_observables(&c1, &c2, 1e-9)?.len());
    println!("max |[C1, C2]|: {:.4}", c1.operator().commutator(c2.operator()).max_abs());

    let spectrum = spectral_decompose(c2.operator(), 1e-9)?;
    println!("recovered eigenvalues: {:?}", spectrum.eigenvalues());

    // atoms in diagram order A B C D K
    let vectors = vec![first[2].clone(), first[0].clone(), first[1].clone(), second[0].clone(), second[1].clone()];
    let r = Realization::new(d.atoms().to_vec(), vectors, Space::Real)?;
    println!("realization valid: {}", verify_realization(&d, &r, 1e-9)?.valid);
    for (atom, p) in born_probabilities(&r, &ComplexVector::from_real(&[1.0, 0.0, 0.0]))? {
        println!("P({atom}) = {p:.4}");
    }
    Ok(())
}
