//! Prints every bundled diagram in the three render styles. Pipe the DOT
//! output through `dot -Tsvg` to draw it.

use std::error::Error;

use qlctx::corpus::{self, EntryKind, ENTRIES};
use qlctx::logic::{render, RenderStyle};

fn main() -> Result<(), Box<dyn Error>> {
    for entry in ENTRIES.iter().filter(|e| e.kind == EntryKind::Diagram) {
        let d = corpus::load_diagram(entry.id)?;
        print!("{}", render(&d, RenderStyle::Greechie)?);
        print!("{}", render(&d, RenderStyle::Tkadlec)?);
        println!();
    }
    print!("{}", render(&corpus::load_diagram("fig1")?, RenderStyle::Dot)?);
    Ok(())
}
