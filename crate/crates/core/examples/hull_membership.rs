//! Which atom probabilities are mixtures of two-valued states?

use std::collections::BTreeMap;
use std::error::Error;

use num_rational::BigRational;
use qlctx::corpus;
use qlctx::logic::{hull_membership, hull_membership_exact, ExactCertificate};

fn main() -> Result<(), Box<dyn Error>> {
    let d = corpus::load_diagram("fig1")?;

    let p: BTreeMap<String, f64> = [("A", 1.0), ("B", 0.5)].iter().map(|(a, v)| (a.to_string(), *v)).collect();
    let r = hull_membership(&d, &p)?;
    println!("p(A)=1, p(B)=1/2: inside {} (distance {})", r.inside, r.distance);
    println!("certificate: {:?}", r.certificate);

    let third = BigRational::new(1.into(), 3.into());
    let exact: BTreeMap<String, BigRational> =
        ["A", "B", "C", "D", "K"].iter().map(|a| (a.to_string(), third.clone())).collect();
    let r = hull_membership_exact(&d, &exact)?;
    if let ExactCertificate::Convex(weights) = &r.certificate {
        for (s, w) in weights {
            println!("{w} x {:?}", r.states[*s].true_names(&d));
        }
    }
    Ok(())
}
