//! The `qlctx` command line. [`run`] takes the full argument vector and
//! returns the exit code and captured output, so it can be tested without
//! spawning a process.
//!
//! Exit codes: 0 analysis completed, 1 completed with a negative verdict
//! (refuted, not unique, outside the hull, ...), 2 usage or input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::context_ops::{context_operator, link_observables, split_selfadjoint, tripod_pair_bases};
use crate::corpus;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64, DEFAULT_TOL};
use crate::logic::{
    classify, hull_membership_exact, parse_diagram, rationalize, render, two_valued_states, ExactCertificate,
    GreechieDiagram, RenderStyle, StateClass,
};
use crate::realizability::{saturate_orthogonality, search_realization_with, SaturationVerdict, SearchOptions, Space};
use crate::states::{catalog_state, label, parse_qs, singlet_subspace, CatalogName, MultipartiteState};
use crate::uniqueness::{check_uniqueness, check_uniqueness_rotated, UniquenessReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "qlctx", version, about = "Contextuality toolkit: two-valued states, realizability, singlet uniqueness")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Two-valued states of a diagram
    #[command(subcommand)]
    States(StatesCommand),
    /// Is an atom-probability assignment a mixture of two-valued states?
    Hull {
        file: String,
        /// Comma-separated `atom=value`; values may be fractions like 1/2. Missing atoms are 0.
        #[arg(long = "p", value_name = "ASSIGNMENTS")]
        p: String,
    },
    /// Numerical search for a vector realization
    Realize {
        file: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        /// Search complex instead of real vectors
        #[arg(long)]
        complex: bool,
        /// Write the best configuration to this file
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Refutation by the three-dimensional orthogonality rule
    Saturate { file: String },
    /// Draw a diagram as text or DOT
    Render {
        file: String,
        #[arg(long, value_enum, default_value_t = Style::Greechie)]
        style: Style,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Uniqueness of a multipartite state
    #[command(subcommand)]
    Uniq(UniqCommand),
    /// Write a bundled state in `.qs` format
    Catalog {
        name: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Basis of the total-spin-zero subspace
    Singlet {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        sites: usize,
    },
    /// Context operators
    #[command(subcommand)]
    Context(ContextCommand),
    /// Split a square matrix into self-adjoint parts A = A1 + i A2
    Split {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum StatesCommand {
    Enumerate { file: String },
    Classify { file: String },
}

#[derive(Subcommand, Debug)]
enum UniqCommand {
    Check(UniqArgs),
}

#[derive(Args, Debug)]
struct UniqArgs {
    file: String,
    /// Also check this many seeded random rotations
    #[arg(long, default_value_t = 0)]
    rotations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum ContextCommand {
    /// Operators of two tripods sharing the leg (0,0,1), the second turned by phi
    Op {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        /// Eigenvalues of the second context
        #[arg(long, default_value = "4,5,6", allow_negative_numbers = true)]
        eigs: String,
        /// Eigenvalues of the first (standard basis) context
        #[arg(long = "first-eigs", default_value = "1,2,3", allow_negative_numbers = true)]
        first_eigs: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Style {
    Greechie,
    Tkadlec,
    Dot,
}

impl From<Style> for RenderStyle {
    fn from(s: Style) -> Self {
        match s {
            Style::Greechie => RenderStyle::Greechie,
            Style::Tkadlec => RenderStyle::Tkadlec,
            Style::Dot => RenderStyle::Dot,
        }
    }
}

struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(code: i32, text: String, json: Value) -> Self {
        Self { code, text, json }
    }
}

pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { exit_code: EXIT_USAGE, stdout: String::new(), stderr: rendered }
            } else {
                CommandResult { exit_code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                report.text
            };
            CommandResult { exit_code: report.code, stdout, stderr: String::new() }
        }
        Err(e) => CommandResult { exit_code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::States(StatesCommand::Enumerate { file }) => states_enumerate(&load_diagram(file)?),
        Command::States(StatesCommand::Classify { file }) => states_classify(&load_diagram(file)?),
        Command::Hull { file, p } => hull(&load_diagram(file)?, p),
        Command::Realize { file, dim, seed, restarts, complex, output } => {
            let mut options = SearchOptions::new(*dim, *seed, *restarts);
            if *complex {
                options.space = Space::Complex;
            }
            realize(&load_diagram(file)?, &options, output.as_deref())
        }
        Command::Saturate { file } => saturate(&load_diagram(file)?),
        Command::Render { file, style, output } => {
            let text = render(&load_diagram(file)?, (*style).into())?;
            write_or_return(text, output.as_deref())
        }
        Command::Uniq(UniqCommand::Check(args)) => uniq_check(&load_state(&args.file)?, args),
        Command::Catalog { name, output } => {
            let name: CatalogName = name.parse()?;
            let text = format!("# {}\n{}", name.as_str(), catalog_state(name).to_qs());
            write_or_return(text, output.as_deref())
        }
        Command::Singlet { dim, sites } => singlet(*dim, *sites),
        Command::Context(ContextCommand::Op { phi, eigs, first_eigs }) => {
            context_op(*phi, &parse_list(first_eigs)?, &parse_list(eigs)?)
        }
        Command::Split { matrix } => split(matrix),
    }
}

/// Reads `arg` as a path if it exists, else as a bundled corpus id, with or
/// without its extension.
fn resolve(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(std::fs::read_to_string(path)?);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    match corpus::entry(stem) {
        Ok(e) => Ok(e.text.to_string()),
        Err(_) => Err(Error::InvalidArgument(format!("`{arg}` is neither a readable file nor a corpus entry"))),
    }
}

fn load_diagram(arg: &str) -> Result<GreechieDiagram> {
    parse_diagram(&resolve(arg)?)
}

fn load_state(arg: &str) -> Result<MultipartiteState> {
    parse_qs(&resolve(arg)?)
}

fn write_or_return(text: String, output: Option<&Path>) -> Result<Report> {
    match output {
        Some(path) => {
            std::fs::write(path, &text)?;
            let msg = format!("wrote {}\n", path.display());
            Ok(Report::new(EXIT_OK, msg, json!({ "written": path.display().to_string() })))
        }
        None => Ok(Report::new(EXIT_OK, text.clone(), json!({ "text": text }))),
    }
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad number `{s}`"))))
        .collect()
}

fn braces(names: &[&str]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn states_enumerate(d: &GreechieDiagram) -> Result<Report> {
    let states = two_valued_states(d);
    let mut text = format!("{} two-valued states\n", states.len());
    let listed: Vec<Vec<&str>> = states.iter().map(|s| s.true_names(d)).collect();
    for names in &listed {
        let _ = writeln!(text, "  {}", braces(names));
    }
    let code = if states.is_empty() { EXIT_NEGATIVE } else { EXIT_OK };
    Ok(Report::new(code, text, json!({ "count": states.len(), "states": listed })))
}

fn states_classify(d: &GreechieDiagram) -> Result<Report> {
    let c = classify(d);
    let pairs: Vec<(&str, &str)> = c.nonseparating.iter().map(|&(x, y)| (d.atom(x), d.atom(y))).collect();
    let never: Vec<&str> = c.never_true.iter().map(|&a| d.atom(a)).collect();
    let mut text = c.class.as_str().to_string();
    match c.class {
        StateClass::UnitalNonseparating => {
            let (x, y) = pairs[0];
            let _ = write!(text, ", witness ({x},{y})");
        }
        StateClass::Nonunital => {
            let _ = write!(text, ", never true: {}", never.join(" "));
        }
        _ => {}
    }
    let _ = writeln!(text, "\nstates: {}", c.state_count);
    if pairs.len() > 1 {
        let listed: Vec<String> = pairs.iter().map(|(x, y)| format!("({x},{y})")).collect();
        let _ = writeln!(text, "nonseparating pairs: {}", listed.join(" "));
    }
    let code = if c.class == StateClass::Separating { EXIT_OK } else { EXIT_NEGATIVE };
    let json = json!({
        "class": c.class,
        "states": c.state_count,
        "never_true": never,
        "nonseparating": pairs,
    });
    Ok(Report::new(code, text, json))
}

fn parse_probability(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("bad probability `{text}`"));
    if text.contains('/') {
        text.parse::<BigRational>().map_err(|_| bad())
    } else {
        let x: f64 = text.parse().map_err(|_| bad())?;
        if !x.is_finite() {
            return Err(bad());
        }
        Ok(rationalize(x, 1e-12))
    }
}

fn hull(d: &GreechieDiagram, assignments: &str) -> Result<Report> {
    let mut p = BTreeMap::new();
    for item in assignments.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (atom, value) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected `atom=value`, got `{item}`")))?;
        p.insert(atom.trim().to_string(), parse_probability(value.trim())?);
    }
    let r = hull_membership_exact(d, &p)?;
    let mut text = format!("inside hull: {}\n", if r.inside { "yes" } else { "no" });
    let json = match &r.certificate {
        ExactCertificate::Convex(weights) => {
            text.push_str("convex weights:\n");
            let mut listed = Vec::new();
            for (s, w) in weights {
                let names = r.states[*s].true_names(d);
                let _ = writeln!(text, "  {w} x {}", braces(&names));
                listed.push(json!({ "weight": w.to_string(), "state": names }));
            }
            json!({ "inside": true, "weights": listed })
        }
        ExactCertificate::Separating { coefficients, offset } => {
            let mut f = String::new();
            let parts = coefficients.iter().zip(d.atoms()).filter(|(c, _)| !c.is_zero()).map(|(c, a)| (c, Some(a)));
            for (c, atom) in parts.chain((!offset.is_zero()).then_some((offset, None))) {
                let magnitude = match atom {
                    Some(a) if c.abs().is_one() => a.clone(),
                    Some(a) => format!("{}*{a}", c.abs()),
                    None => c.abs().to_string(),
                };
                match (f.is_empty(), c.is_negative()) {
                    (true, false) => f = magnitude,
                    (true, true) => f = format!("-{magnitude}"),
                    (false, neg) => {
                        let _ = write!(f, " {} {magnitude}", if neg { "-" } else { "+" });
                    }
                }
            }
            if f.is_empty() {
                f.push('0');
            }
            let at_p = d
                .atoms()
                .iter()
                .zip(coefficients)
                .fold(offset.clone(), |acc, (a, c)| acc + c * p.get(a).cloned().unwrap_or_else(BigRational::zero));
            debug_assert!(at_p == r.distance);
            let _ = writeln!(text, "separating functional: f = {f}");
            let _ = writeln!(text, "f <= 0 on every two-valued state, f(p) = {at_p} (L1 distance to the hull)");
            let coeffs: BTreeMap<&str, String> =
                d.atoms().iter().map(String::as_str).zip(coefficients.iter().map(ToString::to_string)).collect();
            json!({
                "inside": false,
                "coefficients": coeffs,
                "offset": offset.to_string(),
                "value_at_p": at_p.to_string(),
            })
        }
    };
    Ok(Report::new(if r.inside { EXIT_OK } else { EXIT_NEGATIVE }, text, json))
}

fn realize(d: &GreechieDiagram, options: &SearchOptions, output: Option<&Path>) -> Result<Report> {
    let r = search_realization_with(d, options)?;
    let mut text = format!(
        "{}: best penalty {:.3e} (restart {} of {}, dim {}, seed {})\n",
        r.label(),
        r.penalty,
        r.best_restart,
        r.restarts,
        options.dim,
        options.seed
    );
    if r.success {
        match output {
            Some(path) => {
                std::fs::write(path, r.realization.to_text())?;
                let _ = writeln!(text, "wrote {}", path.display());
            }
            None => {
                for (atom, v) in r.realization.atoms().iter().zip(r.realization.vectors()) {
                    let entries: Vec<String> = v.entries().iter().map(|c| fmt_complex(*c)).collect();
                    let _ = writeln!(text, "  {atom}: ({})", entries.join(", "));
                }
            }
        }
    }
    let code = if r.success { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Report::new(code, text, serde_json::to_value(&r).expect("report serializes")))
}

fn saturate(d: &GreechieDiagram) -> Result<Report> {
    let s = saturate_orthogonality(d)?;
    let mut text = String::new();
    match s.verdict {
        SaturationVerdict::Contradiction => {
            text.push_str("refuted: no realization in three dimensions\n");
            for (i, step) in s.derivation.iter().enumerate() {
                let _ = writeln!(text, "  {}. {step}", i + 1);
            }
            if let Some(c) = &s.conclusion {
                let _ = writeln!(text, "  contradiction: {c}");
            }
        }
        SaturationVerdict::NoContradiction => text.push_str("no contradiction\n"),
    }
    let code = if s.verdict == SaturationVerdict::Contradiction { EXIT_NEGATIVE } else { EXIT_OK };
    let derivation: Vec<String> = s.derivation.iter().map(ToString::to_string).collect();
    let json = json!({ "verdict": s.verdict, "derivation": derivation, "conclusion": s.conclusion });
    Ok(Report::new(code, text, json))
}

fn describe_uniqueness(psi: &MultipartiteState, r: &UniquenessReport, text: &mut String) {
    for (site, ok) in r.site_verdicts.iter().enumerate() {
        let _ = writeln!(text, "  site {site}: {}", if *ok { "unique" } else { "not unique" });
    }
    for o in r.outcomes.iter().filter(|o| !o.is_determined()) {
        let open: Vec<String> = o
            .supports
            .iter()
            .enumerate()
            .filter(|(t, s)| *t != o.site && s.len() > 1)
            .map(|(t, s)| {
                let labels: Vec<String> = s.iter().map(|&k| label(psi.site_dim(), k)).collect();
                format!("site {t} in {{{}}}", labels.join(","))
            })
            .collect();
        let _ = writeln!(text, "  site {} reads {}: {}", o.site, label(psi.site_dim(), o.outcome), open.join(", "));
    }
}

#[derive(Serialize)]
struct RotationSummary {
    trial: usize,
    axis: [f64; 3],
    angle: f64,
    euler_zyz: [f64; 3],
    term_count: usize,
    unique: bool,
}

fn uniq_check(psi: &MultipartiteState, args: &UniqArgs) -> Result<Report> {
    let base = check_uniqueness(psi, DEFAULT_TOL);
    let mut unique = base.overall;
    let mut text = format!("state: {} sites, dimension {}, {} terms\n", psi.sites(), psi.site_dim(), base.term_count);
    describe_uniqueness(psi, &base, &mut text);
    let mut rotations = Vec::new();
    if args.rotations > 0 {
        let runs = check_uniqueness_rotated(psi, args.rotations, args.seed, DEFAULT_TOL)?;
        let unique_runs = runs.iter().filter(|r| r.report.overall).count();
        let min_terms = runs.iter().map(|r| r.term_count).min().unwrap_or(0);
        let max_terms = runs.iter().map(|r| r.term_count).max().unwrap_or(0);
        let _ = writeln!(
            text,
            "rotations: {} (seed {}), unique in {unique_runs}, terms {min_terms}..{max_terms}",
            args.rotations, args.seed
        );
        unique &= unique_runs == runs.len();
        rotations = runs
            .iter()
            .map(|r| RotationSummary {
                trial: r.trial,
                axis: r.rotation.axis,
                angle: r.rotation.angle,
                euler_zyz: r.euler_zyz,
                term_count: r.term_count,
                unique: r.report.overall,
            })
            .collect();
    }
    let _ = writeln!(text, "unique: {unique}");
    let json = json!({
        "unique": unique,
        "term_count": base.term_count,
        "report": base,
        "seed": args.seed,
        "rotations": rotations,
    });
    Ok(Report::new(if unique { EXIT_OK } else { EXIT_NEGATIVE }, text, json))
}

fn singlet(dim: usize, sites: usize) -> Result<Report> {
    let basis = singlet_subspace(dim, sites, DEFAULT_TOL)?;
    let mut text = format!("singlet subspace for {sites} sites of dimension {dim}: dimension {}\n", basis.len());
    for (i, v) in basis.iter().enumerate() {
        let _ = writeln!(text, "  [{i}] {}", v.pretty(DEFAULT_TOL));
    }
    let vectors: Vec<String> = basis.iter().map(|v| v.pretty(DEFAULT_TOL)).collect();
    Ok(Report::new(EXIT_OK, text, json!({ "dim": dim, "sites": sites, "count": basis.len(), "vectors": vectors })))
}

fn fmt_real(x: f64) -> String {
    let x = if x.abs() < 1e-15 { 0.0 } else { x };
    format!("{x:.6}")
}

fn fmt_complex(c: C64) -> String {
    if c.im.abs() < 1e-15 {
        fmt_real(c.re)
    } else {
        format!("{}{:+.6}i", fmt_real(c.re), c.im)
    }
}

fn fmt_matrix(m: &ComplexMatrix, indent: &str) -> String {
    let cells: Vec<String> = m.entries().iter().map(|&c| fmt_complex(c)).collect();
    let width = cells.iter().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells.chunks(m.cols()) {
        let row: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{indent}{}", row.join("  "));
    }
    out
}

fn context_op(phi: f64, first: &[f64], second: &[f64]) -> Result<Report> {
    let [b1, b2] = tripod_pair_bases(phi);
    let c1 = context_operator(&b1, first)?;
    let c2 = context_operator(&b2, second)?;
    let links = link_observables(&c1, &c2, DEFAULT_TOL)?;
    let comm = c1.operator().commutator(c2.operator()).max_abs();
    let mut text = format!("phi = {phi}\nfirst context (standard basis), eigenvalues {first:?}:\n");
    text.push_str(&fmt_matrix(c1.operator(), "  "));
    let _ = writeln!(text, "second context, eigenvalues {second:?}:");
    text.push_str(&fmt_matrix(c2.operator(), "  "));
    let _ = writeln!(text, "link observables: {}", links.len());
    for l in &links {
        text.push_str(&fmt_matrix(l, "  "));
    }
    let _ = writeln!(text, "commutator max entry: {comm:.6e}");
    let json = json!({
        "phi": phi,
        "first": c1.operator(),
        "second": c2.operator(),
        "links": links,
        "commutator_max": comm,
    });
    Ok(Report::new(EXIT_OK, text, json))
}

/// One row per line, entries separated by whitespace, each written like
/// `1`, `-2.5i` or `1+2i`.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|f| {
                f.parse::<C64>().map_err(|_| Error::Parse { line: i + 1, message: format!("bad complex number `{f}`") })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse { line: 1, message: "empty matrix".into() });
    }
    let (r, c) = (rows.len(), rows[0].len());
    ComplexMatrix::from_entries(r, c, rows.into_iter().flatten().collect())
}

fn split(path: &Path) -> Result<Report> {
    let a = parse_matrix(&std::fs::read_to_string(path)?)?;
    let (a1, a2) = split_selfadjoint(&a)?;
    let back = &a1 + &a2.scale(C64::new(0.0, 1.0));
    let error = a.max_abs_diff(&back);
    let mut text = String::from("A1 = (A + A^dagger)/2:\n");
    text.push_str(&fmt_matrix(&a1, "  "));
    text.push_str("A2 = -i(A - A^dagger)/2:\n");
    text.push_str(&fmt_matrix(&a2, "  "));
    let _ = writeln!(text, "reconstruction error: {error:.3e}");
    Ok(Report::new(EXIT_OK, text, json!({ "a1": a1, "a2": a2, "reconstruction_error": error })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qlctx(args: &str) -> CommandResult {
        run(std::iter::once("qlctx").chain(args.split_whitespace()))
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(qlctx("frobnicate").exit_code, EXIT_USAGE);
        assert_eq!(qlctx("states classify nowhere.gd").exit_code, EXIT_USAGE);
        assert_eq!(qlctx("render fig1 --style svg").exit_code, EXIT_USAGE);
        assert!(qlctx("frobnicate").stderr.contains("Usage"));
    }

    #[test]
    fn help_exits_0() {
        let r = qlctx("--help");
        assert_eq!(r.exit_code, EXIT_OK);
        assert!(r.stdout.contains("saturate"));
    }

    #[test]
    fn verdict_exit_codes() {
        assert_eq!(qlctx("states classify fig1.gd").exit_code, EXIT_OK);
        let fig3 = qlctx("states classify fig3.gd");
        assert_eq!(fig3.exit_code, EXIT_NEGATIVE);
        assert!(fig3.stdout.starts_with("unital_nonseparating, witness (a,b)"), "{}", fig3.stdout);
        assert_eq!(qlctx("saturate fig2b").exit_code, EXIT_NEGATIVE);
        assert_eq!(qlctx("saturate fig2a").exit_code, EXIT_OK);
        assert_eq!(qlctx("hull fig1 --p A=1").exit_code, EXIT_OK);
        assert_eq!(qlctx("hull fig1 --p A=1,B=1/2").exit_code, EXIT_NEGATIVE);
        assert_eq!(qlctx("uniq check psi3").exit_code, EXIT_NEGATIVE);
    }

    #[test]
    fn psi2_unique_under_rotations() {
        let r = qlctx("uniq check psi2.qs --rotations 100");
        assert_eq!(r.exit_code, EXIT_OK);
        assert!(r.stdout.contains("unique: true"));
    }

    #[test]
    fn json_is_deterministic() {
        let a = qlctx("realize fig1 --seed 3 --restarts 4 --json");
        let b = qlctx("realize fig1 --seed 3 --restarts 4 --json");
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["success"], Value::Bool(true));
    }

    #[test]
    fn matrix_format() {
        let m = parse_matrix("1 2i\n-2i 3+1i\n").unwrap();
        assert_eq!(m[(0, 1)], C64::new(0.0, 2.0));
        assert_eq!(m[(1, 1)], C64::new(3.0, 1.0));
        assert!(parse_matrix("1 2\n3\n").is_err());
    }
}
