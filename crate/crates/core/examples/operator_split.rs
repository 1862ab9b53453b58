use std::error::Error;

use qlctx::context_ops::split_selfadjoint;
use qlctx::linalg::{ComplexMatrix, C64};

fn main() -> Result<(), Box<dyn Error>> {
    let a = ComplexMatrix::from_entries(
        2,
        2,
        vec![C64::new(1.0, 1.0), C64::new(2.0, 0.0), C64::new(0.0, -3.0), C64::new(4.0, 0.5)],
    )?;
    let (a1, a2) = split_selfadjoint(&a)?;
    println!("A1 = {a1:?}");
    println!("A2 = {a2:?}");
    let back = &a1 + &a2.scale(C64::new(0.0, 1.0));
    println!("|A - (A1 + i A2)|_max = {:e}", a.max_abs_diff(&back));
    Ok(())
}
