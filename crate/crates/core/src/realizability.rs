//! Vector realizations of Greechie diagrams.
//!
//! A realization assigns a unit vector to every atom so that atoms sharing a
//! context are orthogonal and distinct atoms are not collinear. Two routes
//! are offered: a combinatorial refutation valid in dimension three, and a
//! numerical witness search by projected gradient descent on a product of
//! unit spheres.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexVector, C64};
use crate::logic::GreechieDiagram;

/// Non-collinearity margin: distinct atoms need `|<u,v>| <= 1 - DELTA`.
pub const DELTA: f64 = 0.05;
/// A search succeeds when its penalty drops below this.
pub const SUCCESS_PENALTY: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Real,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Realization {
    atoms: Vec<String>,
    vectors: Vec<ComplexVector>,
    space: Space,
}

impl Realization {
    pub fn new(atoms: Vec<String>, vectors: Vec<ComplexVector>, space: Space) -> Result<Self> {
        if atoms.len() != vectors.len() {
            return Err(Error::DimensionMismatch { expected: atoms.len(), found: vectors.len() });
        }
        if let Some(first) = vectors.first() {
            if let Some(v) = vectors.iter().find(|v| v.dim() != first.dim()) {
                return Err(Error::DimensionMismatch { expected: first.dim(), found: v.dim() });
            }
        }
        Ok(Self { atoms, vectors, space })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn vectors(&self) -> &[ComplexVector] {
        &self.vectors
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Dimension of the vectors, 0 for an empty realization.
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, ComplexVector::dim)
    }

    pub fn vector(&self, atom: &str) -> Option<&ComplexVector> {
        self.atoms.iter().position(|a| a == atom).map(|i| &self.vectors[i])
    }

    /// One line per atom: `<atom> re1 im1 re2 im2 ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (atom, v) in self.atoms.iter().zip(&self.vectors) {
            out.push_str(atom);
            for c in v.entries() {
                out.push_str(&format!(" {:?} {:?}", c.re, c.im));
            }
            out.push('\n');
        }
        out
    }
}

/// Parses the text written by [`Realization::to_text`]. The space is real
/// when every imaginary part is zero.
pub fn parse_realization(text: &str) -> Result<Realization> {
    let mut atoms = Vec::new();
    let mut vectors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let atom = fields.next().unwrap_or_default().to_string();
        let numbers: Vec<f64> = fields
            .map(|f| f.parse::<f64>().map_err(|e| Error::Parse { line: line_no, message: format!("`{f}`: {e}") }))
            .collect::<Result<_>>()?;
        if numbers.is_empty() || !numbers.len().is_multiple_of(2) {
            return Err(Error::Parse { line: line_no, message: "expected re/im pairs after the atom name".into() });
        }
        if atoms.contains(&atom) {
            return Err(Error::Parse { line: line_no, message: format!("atom `{atom}` listed twice") });
        }
        let entries = numbers.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
        atoms.push(atom);
        vectors.push(ComplexVector::new(entries));
    }
    let space = if vectors.iter().all(|v| v.entries().iter().all(|c| c.im == 0.0)) { Space::Real } else { Space::Complex };
    Realization::new(atoms, vectors, space)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotUnit { atom: String, norm: f64 },
    NotOrthogonal { a: String, b: String, overlap: f64 },
    Collinear { a: String, b: String, overlap: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotUnit { atom, norm } => write!(f, "{atom} has norm {norm:.3e}"),
            Self::NotOrthogonal { a, b, overlap } => write!(f, "{a} and {b} share a context but |<{a},{b}>| = {overlap:.3e}"),
            Self::Collinear { a, b, overlap } => write!(f, "{a} collinear with {b}: |<{a},{b}>| = {overlap:.6}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks unit norms, orthogonality within contexts and non-collinearity of
/// distinct atoms.
pub fn verify_realization(d: &GreechieDiagram, r: &Realization, tol: f64) -> Result<Verification> {
    let vectors: Vec<&ComplexVector> = d
        .atoms()
        .iter()
        .map(|a| r.vector(a).ok_or_else(|| Error::MissingAtom(a.clone())))
        .collect::<Result<_>>()?;
    let dim = vectors[0].dim();
    let mut violations = Vec::new();
    for (a, v) in vectors.iter().enumerate() {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
        }
        if (v.norm() - 1.0).abs() > tol {
            violations.push(Violation::NotUnit { atom: d.atom(a).to_string(), norm: v.norm() });
        }
    }
    let orthogonal = d.orthogonal_pairs();
    for a in 0..vectors.len() {
        for b in (a + 1)..vectors.len() {
            let overlap = vectors[a].inner(vectors[b]).norm();
            let (na, nb) = (d.atom(a).to_string(), d.atom(b).to_string());
            if orthogonal.contains(&(a, b)) {
                if overlap > tol {
                    violations.push(Violation::NotOrthogonal { a: na, b: nb, overlap });
                }
            } else if overlap >= 1.0 - DELTA {
                violations.push(Violation::Collinear { a: na, b: nb, overlap });
            }
        }
    }
    Ok(Verification { valid: violations.is_empty(), violations })
}

/// `P(atom) = |<v_atom, psi>|^2`, in the realization's atom order.
pub fn born_probabilities(r: &Realization, psi: &ComplexVector) -> Result<Vec<(String, f64)>> {
    if psi.dim() != r.dim() {
        return Err(Error::DimensionMismatch { expected: r.dim(), found: psi.dim() });
    }
    if (psi.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!("state has norm {}, expected 1", psi.norm())));
    }
    Ok(r.atoms.iter().zip(&r.vectors).map(|(a, v)| (a.clone(), v.inner(psi).norm_sqr())).collect())
}

// ---------------------------------------------------------------------------
// saturation

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SaturationVerdict {
    Contradiction,
    NoContradiction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deduction {
    /// Atoms forced onto one ray.
    pub collinear: Vec<String>,
    pub because_orthogonal_to: (String, String),
}

impl fmt::Display for Deduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "atoms {} forced collinear because all are orthogonal to pair {{{}, {}}}",
            self.collinear.join(","),
            self.because_orthogonal_to.0,
            self.because_orthogonal_to.1
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationOutcome {
    pub verdict: SaturationVerdict,
    pub derivation: Vec<Deduction>,
    /// Final statement of a contradiction.
    pub conclusion: Option<String>,
}

/// Applies the three-dimensional rule: a ray orthogonal to two orthogonal
/// rays `u`, `w` is their cross ray. Two distinct atoms orthogonal to the same
/// orthogonal pair would therefore span one ray, which a realization forbids.
///
/// Every class of collinear rays holds a single atom until such a merge
/// happens, so the closure stops at the first applicable deduction: either
/// none applies, or it identifies two distinct atoms.
pub fn saturate_orthogonality(d: &GreechieDiagram) -> Result<SaturationOutcome> {
    if d.dim() != 3 {
        return Err(Error::InvalidArgument(format!(
            "orthogonality saturation applies to dimension 3, diagram has contexts of size {}",
            d.dim()
        )));
    }
    let ortho = d.orthogonal_pairs();
    let is_ortho = |x: usize, y: usize| ortho.contains(&(x.min(y), x.max(y)));
    for &(u, w) in &ortho {
        let common: Vec<usize> =
            (0..d.atoms().len()).filter(|&x| is_ortho(x, u) && is_ortho(x, w)).collect();
        if common.len() >= 2 {
            let names: Vec<String> = common.iter().map(|&x| d.atom(x).to_string()).collect();
            let conclusion = format!("distinct atoms {} and {} would span the same ray", names[0], names[1]);
            return Ok(SaturationOutcome {
                verdict: SaturationVerdict::Contradiction,
                derivation: vec![Deduction {
                    collinear: names,
                    because_orthogonal_to: (d.atom(u).to_string(), d.atom(w).to_string()),
                }],
                conclusion: Some(conclusion),
            });
        }
    }
    Ok(SaturationOutcome { verdict: SaturationVerdict::NoContradiction, derivation: Vec::new(), conclusion: None })
}

// ---------------------------------------------------------------------------
// numerical search

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    pub dim: usize,
    pub seed: u64,
    pub restarts: usize,
    pub space: Space,
    pub max_iterations: usize,
}

impl SearchOptions {
    pub fn new(dim: usize, seed: u64, restarts: usize) -> Self {
        Self { dim, seed, restarts, space: Space::Real, max_iterations: 4000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub success: bool,
    pub penalty: f64,
    pub best_restart: usize,
    pub restarts: usize,
    /// Best configuration found, a witness only when `success` holds.
    pub realization: Realization,
}

impl SearchReport {
    pub fn label(&self) -> &'static str {
        if self.success {
            "witness found"
        } else {
            "no witness found"
        }
    }
}

struct Problem {
    n: usize,
    dim: usize,
    orthogonal: Vec<(usize, usize)>,
    distinct: Vec<(usize, usize)>,
}

const COLLINEAR_BOUND: f64 = (1.0 - DELTA) * (1.0 - DELTA);

fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

impl Problem {
    fn new(d: &GreechieDiagram, dim: usize) -> Self {
        let n = d.atoms().len();
        let orthogonal: Vec<(usize, usize)> = d.orthogonal_pairs().into_iter().collect();
        let set: BTreeSet<(usize, usize)> = orthogonal.iter().copied().collect();
        let distinct =
            (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).filter(|p| !set.contains(p)).collect();
        Self { n, dim, orthogonal, distinct }
    }

    fn vec<'a>(&self, x: &'a [C64], a: usize) -> &'a [C64] {
        &x[a * self.dim..(a + 1) * self.dim]
    }

    fn penalty(&self, x: &[C64]) -> f64 {
        let ortho: f64 = self.orthogonal.iter().map(|&(a, b)| inner(self.vec(x, a), self.vec(x, b)).norm_sqr()).sum();
        let coll: f64 = self
            .distinct
            .iter()
            .map(|&(a, b)| (inner(self.vec(x, a), self.vec(x, b)).norm_sqr() - COLLINEAR_BOUND).max(0.0))
            .sum();
        ortho + coll
    }

    /// Euclidean gradient, with radial parts projected out.
    fn gradient(&self, x: &[C64]) -> Vec<C64> {
        let dim = self.dim;
        let mut g = vec![C64::new(0.0, 0.0); x.len()];
        let add = |a: usize, b: usize, g: &mut Vec<C64>| {
            let s = inner(self.vec(x, a), self.vec(x, b));
            for k in 0..dim {
                g[a * dim + k] += x[b * dim + k] * s.conj() * 2.0;
                g[b * dim + k] += x[a * dim + k] * s * 2.0;
            }
        };
        for &(a, b) in &self.orthogonal {
            add(a, b, &mut g);
        }
        for &(a, b) in &self.distinct {
            if inner(self.vec(x, a), self.vec(x, b)).norm_sqr() > COLLINEAR_BOUND {
                add(a, b, &mut g);
            }
        }
        for a in 0..self.n {
            let u = &x[a * dim..(a + 1) * dim];
            let radial = inner(u, &g[a * dim..(a + 1) * dim]).re;
            for k in 0..dim {
                g[a * dim + k] -= u[k] * radial;
            }
        }
        g
    }

    fn retract(&self, x: &[C64], g: &[C64], step: f64) -> Vec<C64> {
        let mut y: Vec<C64> = x.iter().zip(g).map(|(a, b)| a - b * step).collect();
        for chunk in y.chunks_mut(self.dim) {
            let norm = chunk.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in chunk.iter_mut() {
                *c /= norm;
            }
        }
        y
    }

    fn random_point(&self, rng: &mut ChaCha8Rng, space: Space) -> Vec<C64> {
        let mut x = Vec::with_capacity(self.n * self.dim);
        for _ in 0..self.n {
            loop {
                let v: Vec<C64> = (0..self.dim)
                    .map(|_| {
                        let re = rng.random_range(-1.0..1.0);
                        let im = if space == Space::Complex { rng.random_range(-1.0..1.0) } else { 0.0 };
                        C64::new(re, im)
                    })
                    .collect();
                let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                if norm > 1e-3 {
                    x.extend(v.into_iter().map(|c| c / norm));
                    break;
                }
            }
        }
        x
    }

    fn descend(&self, mut x: Vec<C64>, max_iterations: usize) -> (f64, Vec<C64>) {
        let mut f = self.penalty(&x);
        let mut step: f64 = 1.0;
        for _ in 0..max_iterations {
            if f < SUCCESS_PENALTY * 1e-2 {
                break;
            }
            let g = self.gradient(&x);
            let g2: f64 = g.iter().map(|c| c.norm_sqr()).sum();
            if g2 < 1e-30 {
                break;
            }
            step = (step * 2.0).min(4.0);
            loop {
                let y = self.retract(&x, &g, step);
                let fy = self.penalty(&y);
                if fy <= f - 1e-4 * step * g2 {
                    x = y;
                    f = fy;
                    break;
                }
                step *= 0.5;
                if step < 1e-14 {
                    return (f, x);
                }
            }
        }
        (f, x)
    }
}

/// Real-vector witness search; see [`search_realization_with`].
pub fn search_realization(d: &GreechieDiagram, dim: usize, seed: u64, restarts: usize) -> Result<SearchReport> {
    search_realization_with(d, &SearchOptions::new(dim, seed, restarts))
}

/// Minimizes `Σ_{context pairs} |<u,v>|² + Σ_{other pairs} max(0, |<u,v>|² - (1-δ)²)`
/// from `restarts` seeded random starts. Restart `i` draws from stream `i`
/// of the seeded generator, so the outcome does not depend on scheduling.
pub fn search_realization_with(d: &GreechieDiagram, options: &SearchOptions) -> Result<SearchReport> {
    if options.dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if options.restarts == 0 {
        return Err(Error::InvalidArgument("at least one restart is required".into()));
    }
    let problem = Problem::new(d, options.dim);
    let runs: Vec<(f64, Vec<C64>)> = (0..options.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            rng.set_stream(restart as u64);
            let start = problem.random_point(&mut rng, options.space);
            problem.descend(start, options.max_iterations)
        })
        .collect();
    let (best_restart, (penalty, x)) = runs
        .into_iter()
        .enumerate()
        .min_by(|(i, (a, _)), (j, (b, _))| a.total_cmp(b).then(i.cmp(j)))
        .expect("at least one restart");
    let vectors = x.chunks(options.dim).map(|c| ComplexVector::new(c.to_vec())).collect();
    let realization = Realization::new(d.atoms().to_vec(), vectors, options.space)?;
    Ok(SearchReport { success: penalty < SUCCESS_PENALTY, penalty, best_restart, restarts: options.restarts, realization })
}

/// Atom → probability map, convenient for lookups by name.
pub fn born_map(r: &Realization, psi: &ComplexVector) -> Result<BTreeMap<String, f64>> {
    Ok(born_probabilities(r, psi)?.into_iter().collect())
}
