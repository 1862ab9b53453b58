//! Two hexagon gadgets joined through a8: every two-valued state gives the
//! same value to a and b.

use std::error::Error;

use qlctx::corpus;
use qlctx::logic::{classify, two_valued_states};

fn main() -> Result<(), Box<dyn Error>> {
    let d = corpus::load_diagram("fig3")?;
    println!("{} atoms, {} contexts", d.atoms().len(), d.contexts().len());

    let states = two_valued_states(&d);
    let (a, b) = (d.atom_index("a").unwrap(), d.atom_index("b").unwrap());
    let with_a = states.iter().filter(|s| s.value(a)).count();
    let agree = states.iter().all(|s| s.value(a) == s.value(b));
    println!("{} states, {with_a} with a = 1, a and b always agree: {agree}", states.len());

    let c = classify(&d);
    println!("class: {}", c.class.as_str());
    for (x, y) in c.nonseparating {
        println!("never separated: {} {}", d.atom(x), d.atom(y));
    }
    Ok(())
}
