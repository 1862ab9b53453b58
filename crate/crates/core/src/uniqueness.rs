//! Whether one site's measurement outcome fixes the outcomes of all other
//! sites, and counterfactual completion from a single outcome.
//!
//! A term of the coefficient tensor is "present" when its amplitude exceeds
//! the tolerance. Filtering site `s` on outcome `k` keeps the present terms
//! whose `s`-th index is `k`; the outcomes still possible at another site `t`
//! are the `t`-th indices among those terms. A site has the uniqueness
//! property when every such set is a singleton.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Rotation, C64, DEFAULT_TOL};
use crate::states::{apply_identical_local, MultipartiteState};

/// Number of amplitudes with magnitude above `tol`.
pub fn term_count(psi: &MultipartiteState, tol: f64) -> usize {
    psi.terms(tol).count()
}

/// Projects `site` onto `outcome` and renormalizes.
pub fn filter(psi: &MultipartiteState, site: usize, outcome: usize) -> Result<MultipartiteState> {
    filter_with_tol(psi, site, outcome, DEFAULT_TOL)
}

pub fn filter_with_tol(psi: &MultipartiteState, site: usize, outcome: usize, tol: f64) -> Result<MultipartiteState> {
    psi.check_site(site)?;
    if outcome >= psi.site_dim() {
        return Err(Error::OutOfRange { what: "outcome", index: outcome, limit: psi.site_dim() });
    }
    let zero = C64::new(0.0, 0.0);
    let coeffs: Vec<C64> = psi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| if psi.digit(i, site) == outcome { c } else { zero })
        .collect();
    if coeffs.iter().all(|c| c.norm() <= tol) {
        return Err(Error::NullFilter { site, outcome });
    }
    MultipartiteState::new(psi.sites(), psi.site_dim(), coeffs)
}

/// Possible outcomes at every site once `site` is known to read `outcome`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeSupport {
    pub site: usize,
    pub outcome: usize,
    pub probability: f64,
    /// `supports[t]` lists the outcomes still possible at site `t`.
    pub supports: Vec<Vec<usize>>,
}

impl OutcomeSupport {
    pub fn is_determined(&self) -> bool {
        self.supports.iter().enumerate().all(|(t, s)| t == self.site || s.len() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub site_verdicts: Vec<bool>,
    pub outcomes: Vec<OutcomeSupport>,
    pub term_count: usize,
    pub overall: bool,
}

impl UniquenessReport {
    pub fn support(&self, site: usize, outcome: usize) -> Option<&OutcomeSupport> {
        self.outcomes.iter().find(|o| o.site == site && o.outcome == outcome)
    }
}

fn outcome_support(psi: &MultipartiteState, site: usize, outcome: usize, tol: f64) -> Option<OutcomeSupport> {
    let mut supports = vec![BTreeSet::new(); psi.sites()];
    let mut probability = 0.0;
    let mut present = false;
    for (index, c) in psi.terms(tol) {
        if psi.digit(index, site) != outcome {
            continue;
        }
        present = true;
        probability += c.norm_sqr();
        for (t, slot) in supports.iter_mut().enumerate() {
            slot.insert(psi.digit(index, t));
        }
    }
    present.then(|| OutcomeSupport {
        site,
        outcome,
        probability,
        supports: supports.into_iter().map(|s| s.into_iter().collect()).collect(),
    })
}

pub fn check_uniqueness(psi: &MultipartiteState, tol: f64) -> UniquenessReport {
    let mut outcomes = Vec::new();
    let mut site_verdicts = Vec::with_capacity(psi.sites());
    for site in 0..psi.sites() {
        let mut verdict = true;
        for outcome in 0..psi.site_dim() {
            if let Some(support) = outcome_support(psi, site, outcome, tol) {
                verdict &= support.is_determined();
                outcomes.push(support);
            }
        }
        site_verdicts.push(verdict);
    }
    let overall = site_verdicts.iter().all(|&v| v);
    UniquenessReport { site_verdicts, outcomes, term_count: term_count(psi, tol), overall }
}

#[derive(Clone, Debug, Serialize)]
pub struct RotatedUniqueness {
    pub trial: usize,
    pub rotation: Rotation,
    pub euler_zyz: [f64; 3],
    pub term_count: usize,
    pub report: UniquenessReport,
}

/// Uniqueness after the same rotation is applied at every site.
pub fn check_uniqueness_under(psi: &MultipartiteState, rotation: &Rotation, tol: f64) -> Result<UniquenessReport> {
    let rotated = apply_identical_local(psi, &rotation.unitary(psi.site_dim())?)?;
    Ok(check_uniqueness(&rotated, tol))
}

/// Uniqueness under `trials` seeded random rotations, reported in trial order.
pub fn check_uniqueness_rotated(
    psi: &MultipartiteState,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<RotatedUniqueness>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rotations: Vec<Rotation> = (0..trials).map(|_| Rotation::sample(&mut rng)).collect();
    rotations
        .into_par_iter()
        .enumerate()
        .map(|(trial, rotation)| {
            let report = check_uniqueness_under(psi, &rotation, tol)?;
            Ok(RotatedUniqueness {
                trial,
                rotation,
                euler_zyz: rotation.euler_zyz(),
                term_count: report.term_count,
                report,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmbiguousSite {
    pub site: usize,
    pub possibilities: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Completion {
    /// Inferred outcome for every other site.
    Determined { outcomes: BTreeMap<usize, usize> },
    Ambiguous { sites: Vec<AmbiguousSite> },
}

/// Infers the outcomes of all other sites from one observed outcome.
pub fn counterfactual_complete(psi: &MultipartiteState, site: usize, outcome: usize) -> Result<Completion> {
    let filtered = filter(psi, site, outcome)?;
    let support = outcome_support(&filtered, site, outcome, DEFAULT_TOL)
        .ok_or(Error::NullFilter { site, outcome })?;
    let mut outcomes = BTreeMap::new();
    let mut ambiguous = Vec::new();
    for (t, possible) in support.supports.iter().enumerate() {
        if t == site {
            continue;
        }
        match possible.as_slice() {
            [single] => {
                outcomes.insert(t, *single);
            }
            _ => ambiguous.push(AmbiguousSite { site: t, possibilities: possible.clone() }),
        }
    }
    Ok(if ambiguous.is_empty() { Completion::Determined { outcomes } } else { Completion::Ambiguous { sites: ambiguous } })
}
