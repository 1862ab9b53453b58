//! Multipartite spin states: the bundled catalog, singlet subspaces, the
//! `.qs` text format, and identical local rotations.
//!
//! Site indices run from 0. Outcome indices follow descending magnetic
//! quantum number, so for spin-1 index 0 is `+`, 1 is `0`, 2 is `-`, and for
//! spin-1/2 index 0 is `+`, 1 is `-`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, spin_matrices, ComplexMatrix, ComplexVector, Rotation, C64};

/// Largest `d^n` accepted by [`singlet_subspace`].
pub const MAX_AMPLITUDES: usize = 10_000;

const UNITARY_TOL: f64 = 1e-9;

/// Outcome labels of one site, indexed by outcome.
pub fn labels(site_dim: usize) -> &'static [&'static str] {
    match site_dim {
        2 => &["+", "-"],
        3 => &["+", "0", "-"],
        _ => &[],
    }
}

pub fn label(site_dim: usize, outcome: usize) -> String {
    labels(site_dim)
        .get(outcome)
        .map_or_else(|| outcome.to_string(), |s| (*s).to_string())
}

/// Parses `+`, `0`, `-` (also `−`, `+1`, `1`, `-1`, `z+`, `z-`) into an
/// outcome index for the given site dimension.
pub fn parse_label(site_dim: usize, text: &str) -> Result<usize> {
    let t = text.trim().trim_start_matches('z').replace('−', "-");
    let index = match (site_dim, t.as_str()) {
        (2 | 3, "+" | "+1" | "1") => Some(0),
        (3, "0") => Some(1),
        (3, "-" | "-1") => Some(2),
        (2, "-" | "-1") => Some(1),
        _ => None,
    };
    index.ok_or_else(|| Error::InvalidArgument(format!("no outcome `{text}` for site dimension {site_dim}")))
}

/// An `n`-site pure state with per-site dimension `d`, stored as a flattened
/// coefficient tensor with site 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct MultipartiteState {
    sites: usize,
    site_dim: usize,
    coeffs: Vec<C64>,
}

impl MultipartiteState {
    /// Normalizes the given amplitudes.
    pub fn new(sites: usize, site_dim: usize, coeffs: Vec<C64>) -> Result<Self> {
        let expected = checked_pow(site_dim, sites)?;
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: coeffs.len() });
        }
        let normalized = ComplexVector::new(coeffs).normalized()?;
        Ok(Self { sites, site_dim, coeffs: normalized.into_entries() })
    }

    /// Builds a state from `(amplitude, outcome per site)` terms; repeated
    /// terms accumulate.
    pub fn from_terms(sites: usize, site_dim: usize, terms: &[(C64, Vec<usize>)]) -> Result<Self> {
        let mut coeffs = vec![C64::new(0.0, 0.0); checked_pow(site_dim, sites)?];
        for (amp, digits) in terms {
            let index = encode(site_dim, sites, digits)?;
            coeffs[index] += amp;
        }
        Self::new(sites, site_dim, coeffs)
    }

    pub fn product(site_dim: usize, outcomes: &[usize]) -> Result<Self> {
        Self::from_terms(outcomes.len(), site_dim, &[(C64::new(1.0, 0.0), outcomes.to_vec())])
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn site_dim(&self) -> usize {
        self.site_dim
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn to_vector(&self) -> ComplexVector {
        ComplexVector::new(self.coeffs.clone())
    }

    pub fn amplitude(&self, outcomes: &[usize]) -> Result<C64> {
        Ok(self.coeffs[encode(self.site_dim, self.sites, outcomes)?])
    }

    /// Outcome of every site for a flattened index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.sites];
        for slot in out.iter_mut().rev() {
            *slot = index % self.site_dim;
            index /= self.site_dim;
        }
        out
    }

    /// `(index, amplitude)` for every amplitude with magnitude above `tol`.
    pub fn terms(&self, tol: f64) -> impl Iterator<Item = (usize, C64)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(move |(_, c)| c.norm() > tol)
    }

    /// `<self, other>`.
    pub fn overlap(&self, other: &Self) -> C64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability of each outcome at `site`.
    pub fn marginal(&self, site: usize) -> Result<Vec<f64>> {
        self.check_site(site)?;
        let mut probs = vec![0.0; self.site_dim];
        for (index, c) in self.coeffs.iter().enumerate() {
            probs[self.digit(index, site)] += c.norm_sqr();
        }
        Ok(probs)
    }

    pub(crate) fn digit(&self, index: usize, site: usize) -> usize {
        (index / self.stride(site)) % self.site_dim
    }

    fn stride(&self, site: usize) -> usize {
        self.site_dim.pow((self.sites - 1 - site) as u32)
    }

    pub(crate) fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.sites {
            return Err(Error::OutOfRange { what: "site", index: site, limit: self.sites });
        }
        Ok(())
    }

    /// Coefficients with a per-site operator applied at one site (unnormalized).
    fn apply_at(&self, site: usize, u: &ComplexMatrix) -> Vec<C64> {
        let d = self.site_dim;
        let stride = self.stride(site);
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len()];
        for (index, slot) in out.iter_mut().enumerate() {
            let row = self.digit(index, site);
            let base = index - row * stride;
            *slot = (0..d).map(|k| u[(row, k)] * self.coeffs[base + k * stride]).sum();
        }
        out
    }

    /// Renders in the `.qs` text format.
    pub fn to_qs(&self) -> String {
        let mut out = format!("sites {}\ndim {}\n", self.sites, self.site_dim);
        for (index, c) in self.coeffs.iter().enumerate() {
            if *c == C64::new(0.0, 0.0) {
                continue;
            }
            let _ = write!(out, "{} {}", c.re, c.im);
            for digit in self.digits(index) {
                let _ = write!(out, " {digit}");
            }
            out.push('\n');
        }
        out
    }

    /// Human-readable ket sum, e.g. `+0.577350|+->`.
    pub fn pretty(&self, tol: f64) -> String {
        let mut out = String::new();
        for (index, c) in self.terms(tol) {
            let ket: String = self.digits(index).iter().map(|&k| label(self.site_dim, k)).collect::<Vec<_>>().join(" ");
            if c.im.abs() <= tol {
                let _ = write!(out, "{:+.6}|{}> ", c.re, ket);
            } else {
                let _ = write!(out, "({:+.6}{:+.6}i)|{}> ", c.re, c.im, ket);
            }
        }
        out.trim_end().to_string()
    }
}

fn checked_pow(d: usize, n: usize) -> Result<usize> {
    u32::try_from(n)
        .ok()
        .and_then(|n| d.checked_pow(n))
        .ok_or(Error::TooLarge(usize::MAX))
}

fn encode(site_dim: usize, sites: usize, digits: &[usize]) -> Result<usize> {
    if digits.len() != sites {
        return Err(Error::DimensionMismatch { expected: sites, found: digits.len() });
    }
    let mut index = 0;
    for &digit in digits {
        if digit >= site_dim {
            return Err(Error::OutOfRange { what: "outcome", index: digit, limit: site_dim });
        }
        index = index * site_dim + digit;
    }
    Ok(index)
}

/// Parses the `.qs` format: `sites n`, `dim d`, then `re im i1 … in` per
/// term. `#` starts a comment. Amplitudes are normalized on load.
pub fn parse_qs(text: &str) -> Result<MultipartiteState> {
    let mut sites: Option<usize> = None;
    let mut dim: Option<usize> = None;
    let mut terms = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "sites" | "dim" => {
                let [key, value] = fields[..] else {
                    return Err(err(format!("expected `{} <count>`", fields[0])));
                };
                let value: usize = value.parse().map_err(|_| err(format!("bad count `{value}`")))?;
                let slot = if key == "sites" { &mut sites } else { &mut dim };
                if slot.replace(value).is_some() {
                    return Err(err(format!("duplicate `{key}` header")));
                }
            }
            _ => {
                let (Some(n), Some(d)) = (sites, dim) else {
                    return Err(err("term before `sites` and `dim` headers".into()));
                };
                if fields.len() != n + 2 {
                    return Err(err(format!("expected 2 + {n} fields, found {}", fields.len())));
                }
                let num = |s: &str| s.parse::<f64>().map_err(|_| err(format!("bad number `{s}`")));
                let amp = C64::new(num(fields[0])?, num(fields[1])?);
                let mut digits = Vec::with_capacity(n);
                for f in &fields[2..] {
                    let k: usize = f.parse().map_err(|_| err(format!("bad site index `{f}`")))?;
                    if k >= d {
                        return Err(err(format!("site index {k} out of range 0..{d}")));
                    }
                    digits.push(k);
                }
                terms.push((amp, digits));
            }
        }
    }
    let (Some(n), Some(d)) = (sites, dim) else {
        return Err(Error::Parse { line: last_line, message: "missing `sites` or `dim` header".into() });
    };
    if n == 0 || d == 0 {
        return Err(Error::Parse { line: last_line, message: "sites and dim must be positive".into() });
    }
    MultipartiteState::from_terms(n, d, &terms).map_err(|e| match e {
        Error::ZeroVector => Error::Parse { line: last_line, message: "state has zero norm".into() },
        other => other,
    })
}

/// Names of the bundled example states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogName {
    Psi2,
    Psi3,
    Psi4_1,
    Psi4_2,
    Psi4_3,
    Ghzm,
}

impl CatalogName {
    pub const ALL: [CatalogName; 6] =
        [Self::Psi2, Self::Psi3, Self::Psi4_1, Self::Psi4_2, Self::Psi4_3, Self::Ghzm];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Psi2 => "psi2",
            Self::Psi3 => "psi3",
            Self::Psi4_1 => "psi4_1",
            Self::Psi4_2 => "psi4_2",
            Self::Psi4_3 => "psi4_3",
            Self::Ghzm => "ghzm",
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Builds terms from magnetic quantum numbers (+1, 0, -1) for spin-1 sites.
fn spin_one_terms(terms: &[(f64, [i8; 4])], sites: usize) -> Vec<(C64, Vec<usize>)> {
    terms
        .iter()
        .map(|(amp, ms)| {
            let digits = ms[..sites].iter().map(|&m| (1 - m) as usize).collect();
            (C64::new(*amp, 0.0), digits)
        })
        .collect()
}

/// The bundled example states with amplitudes entered term by term and then
/// normalized.
pub fn catalog_state(name: CatalogName) -> MultipartiteState {
    const P: i8 = 1;
    const M: i8 = -1;
    let (sites, dim, terms): (usize, usize, Vec<(C64, Vec<usize>)>) = match name {
        CatalogName::Psi2 => (2, 3, spin_one_terms(&[(1.0, [P, M, 0, 0]), (1.0, [M, P, 0, 0]), (-1.0, [0, 0, 0, 0])], 2)),
        CatalogName::Psi3 => (
            3,
            3,
            spin_one_terms(
                &[
                    (1.0, [M, P, 0, 0]),
                    (-1.0, [M, 0, P, 0]),
                    (1.0, [P, 0, M, 0]),
                    (-1.0, [P, M, 0, 0]),
                    (1.0, [0, M, P, 0]),
                    (-1.0, [0, P, M, 0]),
                ],
                3,
            ),
        ),
        CatalogName::Psi4_1 => {
            let h = -0.5;
            let t = 1.0 / 3.0;
            let s = 1.0 / 6.0;
            (
                4,
                3,
                spin_one_terms(
                    &[
                        (2.0 / 3.0, [0, 0, 0, 0]),
                        (1.0, [M, M, P, P]),
                        (1.0, [P, P, M, M]),
                        (h, [M, 0, 0, P]),
                        (h, [0, M, 0, P]),
                        (h, [M, 0, P, 0]),
                        (h, [0, M, P, 0]),
                        (h, [0, P, M, 0]),
                        (h, [P, 0, M, 0]),
                        (h, [0, P, 0, M]),
                        (h, [P, 0, 0, M]),
                        (t, [0, 0, M, P]),
                        (t, [M, P, 0, 0]),
                        (t, [P, M, 0, 0]),
                        (t, [0, 0, P, M]),
                        (s, [M, P, M, P]),
                        (s, [P, M, M, P]),
                        (s, [M, P, P, M]),
                        (s, [P, M, P, M]),
                    ],
                    4,
                ),
            )
        }
        CatalogName::Psi4_2 => (
            4,
            3,
            spin_one_terms(
                &[
                    (1.0, [M, 0, 0, P]),
                    (-1.0, [0, M, 0, P]),
                    (-1.0, [0, P, 0, M]),
                    (1.0, [P, 0, 0, M]),
                    (-1.0, [M, 0, P, 0]),
                    (1.0, [0, M, P, 0]),
                    (1.0, [0, P, M, 0]),
                    (-1.0, [P, 0, M, 0]),
                    (1.0, [M, P, P, M]),
                    (-1.0, [P, M, P, M]),
                    (-1.0, [M, P, M, P]),
                    (1.0, [P, M, M, P]),
                ],
                4,
            ),
        ),
        CatalogName::Psi4_3 => (
            4,
            3,
            spin_one_terms(
                &[
                    (1.0, [0, 0, 0, 0]),
                    (-1.0, [0, 0, M, P]),
                    (-1.0, [M, P, 0, 0]),
                    (-1.0, [P, M, 0, 0]),
                    (-1.0, [0, 0, P, M]),
                    (1.0, [P, M, P, M]),
                    (1.0, [M, P, M, P]),
                    (1.0, [P, M, M, P]),
                    (1.0, [M, P, P, M]),
                ],
                4,
            ),
        ),
        CatalogName::Ghzm => {
            let one = C64::new(1.0, 0.0);
            (3, 2, vec![(one, vec![0, 0, 0]), (one, vec![1, 1, 1])])
        }
    };
    MultipartiteState::from_terms(sites, dim, &terms).expect("catalog states are well formed")
}

/// Total spin components `Σ_s I ⊗ … ⊗ S^α ⊗ … ⊗ I` for `n` sites.
pub fn spin_total_operators(d: usize, n: usize) -> Result<[ComplexMatrix; 3]> {
    let single = spin_matrices(d)?;
    let total = checked_pow(d, n)?;
    if total > MAX_AMPLITUDES {
        return Err(Error::TooLarge(total));
    }
    let id = ComplexMatrix::identity(d);
    let build = |op: &ComplexMatrix| {
        let mut sum = ComplexMatrix::zeros(total, total);
        for site in 0..n {
            let mut term = if site == 0 { op.clone() } else { id.clone() };
            for k in 1..n {
                term = term.kron(if k == site { op } else { &id });
            }
            sum = &sum + &term;
        }
        sum
    };
    let [x, y, z] = &single;
    Ok([build(x), build(y), build(z)])
}

/// `Σ_α (S_tot^α)²` as a dense matrix.
pub fn casimir(d: usize, n: usize) -> Result<ComplexMatrix> {
    let [x, y, z] = spin_total_operators(d, n)?;
    Ok(&(&x.matmul(&x) + &y.matmul(&y)) + &z.matmul(&z))
}

/// Orthonormal basis of the total-spin-zero subspace.
///
/// Singlets live in the `M = 0` sector, where the Casimir reduces to
/// `S₋S₊`. The sector block is assembled from the raising operator alone and
/// its kernel is read off the spectrum.
pub fn singlet_subspace(d: usize, n: usize, tol: f64) -> Result<Vec<MultipartiteState>> {
    spin_matrices(d)?;
    let total = checked_pow(d, n)?;
    if total > MAX_AMPLITUDES {
        return Err(Error::TooLarge(total));
    }
    // twice the magnetic quantum number of outcome k is (d-1) - 2k
    let twice_m = |index: usize| -> i64 {
        let mut sum = 0i64;
        let mut rest = index;
        for _ in 0..n {
            sum += (d as i64 - 1) - 2 * (rest % d) as i64;
            rest /= d;
        }
        sum
    };
    let zero_sector: Vec<usize> = (0..total).filter(|&i| twice_m(i) == 0).collect();
    if zero_sector.is_empty() {
        return Ok(Vec::new());
    }
    let mut raised_pos: HashMap<usize, usize> = HashMap::new();
    for i in (0..total).filter(|&i| twice_m(i) == 2) {
        let next = raised_pos.len();
        raised_pos.insert(i, next);
    }

    // raising amplitude for outcome k -> k-1 at a site: sqrt(s(s+1) - m(m+1))
    let s = (d as f64 - 1.0) / 2.0;
    let raise = |k: usize| {
        let m = s - k as f64;
        (s * (s + 1.0) - m * (m + 1.0)).sqrt()
    };

    let cols = zero_sector.len();
    let mut a = vec![vec![0.0f64; cols]; raised_pos.len()];
    for (col, &index) in zero_sector.iter().enumerate() {
        let mut stride = 1;
        for _ in 0..n {
            let k = (index / stride) % d;
            if k > 0 {
                let target = index - stride;
                let row = raised_pos[&target];
                a[row][col] += raise(k);
            }
            stride *= d;
        }
    }
    let mut gram = ComplexMatrix::zeros(cols, cols);
    for row in &a {
        for (i, &ai) in row.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            for (j, &aj) in row.iter().enumerate() {
                gram[(i, j)] += C64::new(ai * aj, 0.0);
            }
        }
    }
    let (values, vectors) = hermitian_eigen(&gram)?;
    let scale = values.last().copied().unwrap_or(0.0).max(1.0);
    let mut out = Vec::new();
    for (value, vector) in values.iter().zip(vectors) {
        if value.abs() > tol * scale {
            continue;
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); total];
        for (pos, &index) in zero_sector.iter().enumerate() {
            coeffs[index] = vector[pos];
        }
        out.push(fix_phase(MultipartiteState::new(n, d, coeffs)?));
    }
    Ok(out)
}

/// Rotates the global phase so the largest amplitude (first on ties) is real
/// and positive.
fn fix_phase(mut psi: MultipartiteState) -> MultipartiteState {
    let mut best = 0;
    for (i, c) in psi.coeffs.iter().enumerate() {
        if c.norm() > psi.coeffs[best].norm() + 1e-12 {
            best = i;
        }
    }
    let c = psi.coeffs[best];
    if c.norm() > 0.0 {
        let phase = c.conj() / c.norm();
        for z in &mut psi.coeffs {
            *z *= phase;
        }
    }
    psi
}

fn check_unitary(u: &ComplexMatrix, d: usize) -> Result<()> {
    if u.rows() != d || u.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: u.rows() });
    }
    let deviation = u.unitarity_deviation();
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

/// `(U ⊗ … ⊗ U) ψ`, renormalized.
pub fn apply_identical_local(psi: &MultipartiteState, u: &ComplexMatrix) -> Result<MultipartiteState> {
    let us = vec![u.clone(); psi.sites];
    apply_local(psi, &us)
}

/// `(U₀ ⊗ U₁ ⊗ … ) ψ` with an independent unitary per site, renormalized.
pub fn apply_local(psi: &MultipartiteState, us: &[ComplexMatrix]) -> Result<MultipartiteState> {
    if us.len() != psi.sites {
        return Err(Error::DimensionMismatch { expected: psi.sites, found: us.len() });
    }
    let mut current = psi.clone();
    for (site, u) in us.iter().enumerate() {
        check_unitary(u, psi.site_dim)?;
        current.coeffs = current.apply_at(site, u);
    }
    MultipartiteState::new(current.sites, current.site_dim, current.coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct FormInvariance {
    pub invariant: bool,
    pub min_overlap: f64,
    pub trials: usize,
}

/// Checks `|<ψ, U^{⊗n} ψ>| ≥ 1 − tol` over seeded random spin rotations.
pub fn is_form_invariant(psi: &MultipartiteState, trials: usize, seed: u64, tol: f64) -> Result<FormInvariance> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_overlap = f64::INFINITY;
    for _ in 0..trials {
        let rot = Rotation::sample(&mut rng);
        let rotated = apply_identical_local(psi, &rot.unitary(psi.site_dim)?)?;
        min_overlap = min_overlap.min(psi.overlap(&rotated).norm());
    }
    Ok(FormInvariance { invariant: min_overlap >= 1.0 - tol, min_overlap, trials })
}
