//! Drives the command line in-process, the same way the `qlctx` binary does.

use qlctx::cli::run;

fn main() {
    for args in [
        &["qlctx", "states", "classify", "fig3.gd"][..],
        &["qlctx", "saturate", "fig2b.gd"][..],
        &["qlctx", "uniq", "check", "psi2.qs", "--rotations", "100"][..],
        &["qlctx", "hull", "fig1.gd", "--p", "A=1,B=1/2", "--json"][..],
    ] {
        let r = run(args.iter().copied());
        println!("$ {}  (exit {})\n{}{}", args.join(" "), r.exit_code, r.stdout, r.stderr);
    }
}
