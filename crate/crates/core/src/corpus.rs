//! Bundled example diagrams and states, and an exhaustive two-valued state
//! oracle for cross-checking the backtracking search.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::{parse_diagram, GreechieDiagram, TwoValuedState};
use crate::states::{parse_qs, MultipartiteState};

/// Largest diagram the oracle accepts; it visits `2^atoms` assignments.
pub const ORACLE_MAX_ATOMS: usize = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Diagram,
    State,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub kind: EntryKind,
    pub description: &'static str,
    /// File name under the crate's `corpus/` directory.
    pub file: &'static str,
    #[serde(skip)]
    pub text: &'static str,
}

macro_rules! entry {
    ($id:literal, $kind:ident, $file:literal, $description:literal) => {
        CorpusEntry {
            id: $id,
            kind: EntryKind::$kind,
            description: $description,
            file: $file,
            text: include_str!(concat!("../corpus/", $file)),
        }
    };
}

pub const ENTRIES: [CorpusEntry; 10] = [
    entry!("fig1", Diagram, "fig1.gd", "two tripods sharing one leg"),
    entry!("fig2a", Diagram, "fig2a.gd", "three tripods in a chain"),
    entry!("fig2b", Diagram, "fig2b.gd", "three tripods in a triangle, not realizable"),
    entry!("fig3", Diagram, "fig3.gd", "two hexagon gadgets whose two-valued states cannot separate a and b"),
    entry!("psi2", State, "psi2.qs", "two spin-1 singlet"),
    entry!("psi3", State, "psi3.qs", "three spin-1 singlet"),
    entry!("psi4_1", State, "psi4_1.qs", "four spin-1 singlet, first of three"),
    entry!("psi4_2", State, "psi4_2.qs", "four spin-1 singlet, second of three"),
    entry!("psi4_3", State, "psi4_3.qs", "four spin-1 singlet, third of three"),
    entry!("ghzm", State, "ghzm.qs", "three-qubit GHZ state"),
];

#[derive(Clone, Debug, PartialEq)]
pub enum Loaded {
    Diagram(GreechieDiagram),
    State(MultipartiteState),
}

pub fn entry(id: &str) -> Result<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownName(id.to_string()))
}

pub fn load(id: &str) -> Result<Loaded> {
    let e = entry(id)?;
    Ok(match e.kind {
        EntryKind::Diagram => Loaded::Diagram(parse_diagram(e.text)?),
        EntryKind::State => Loaded::State(parse_qs(e.text)?),
    })
}

pub fn load_diagram(id: &str) -> Result<GreechieDiagram> {
    match load(id)? {
        Loaded::Diagram(d) => Ok(d),
        Loaded::State(_) => Err(Error::InvalidArgument(format!("corpus entry `{id}` is a state, not a diagram"))),
    }
}

pub fn load_state(id: &str) -> Result<MultipartiteState> {
    match load(id)? {
        Loaded::State(s) => Ok(s),
        Loaded::Diagram(_) => Err(Error::InvalidArgument(format!("corpus entry `{id}` is a diagram, not a state"))),
    }
}

/// Every assignment in `0..2^atoms` with exactly one true atom per context,
/// ordered like [`crate::logic::two_valued_states`].
pub fn oracle_two_valued(d: &GreechieDiagram) -> Result<Vec<TwoValuedState>> {
    let n = d.atoms().len();
    if n > ORACLE_MAX_ATOMS {
        return Err(Error::TooManyAtoms { atoms: n, limit: ORACLE_MAX_ATOMS });
    }
    let masks: Vec<u32> = d.contexts().iter().map(|c| c.iter().fold(0u32, |m, &a| m | 1 << a)).collect();
    let mut states: Vec<TwoValuedState> = (0..1u32 << n)
        .filter(|&bits| masks.iter().all(|&m| (bits & m).count_ones() == 1))
        .map(|bits| TwoValuedState::new((0..n).map(|a| bits >> a & 1 == 1).collect()))
        .collect();
    states.sort_by_key(TwoValuedState::true_atoms);
    Ok(states)
}
