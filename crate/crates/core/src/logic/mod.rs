//! Greechie orthogonality diagrams and their two-valued states.
//!
//! A diagram is a set of atoms covered by contexts of uniform size. Atoms
//! shared between contexts are link observables. A two-valued state assigns
//! 1 to exactly one atom of every context.

mod enumerate;
mod hull;
mod render;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

pub use enumerate::{classify, nonseparating_pairs, two_valued_states, StateClass, StateSetClassification, TwoValuedState};
pub use hull::{hull_membership, hull_membership_exact, rationalize, ExactCertificate, ExactHullMembership, HullCertificate, HullMembership, FEASIBILITY_TOL};
pub use render::{render, RenderStyle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreechieDiagram {
    name: Option<String>,
    atoms: Vec<String>,
    contexts: Vec<Vec<usize>>,
    dim: usize,
}

impl GreechieDiagram {
    /// Builds a diagram from contexts given by atom names. Atoms are ordered by
    /// first appearance.
    pub fn from_contexts<S: AsRef<str>>(name: Option<&str>, contexts: &[Vec<S>]) -> Result<Self> {
        let mut builder = Builder { name: name.map(str::to_string), ..Default::default() };
        for (i, ctx) in contexts.iter().enumerate() {
            let names: Vec<&str> = ctx.iter().map(AsRef::as_ref).collect();
            builder.add_context(&names, i + 1)?;
        }
        builder.finish(contexts.len())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> &str {
        &self.atoms[index]
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// Contexts as atom indices, in declaration order.
    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    /// Common size of every context.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn context_names(&self, context: usize) -> Vec<&str> {
        self.contexts[context].iter().map(|&a| self.atoms[a].as_str()).collect()
    }

    /// Indices of the contexts containing `atom`.
    pub fn contexts_of(&self, atom: usize) -> Vec<usize> {
        (0..self.contexts.len()).filter(|&c| self.contexts[c].contains(&atom)).collect()
    }

    /// Atoms belonging to two or more contexts.
    pub fn link_observables(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.atoms.len()];
        for ctx in &self.contexts {
            for &a in ctx {
                count[a] += 1;
            }
        }
        (0..self.atoms.len()).filter(|&a| count[a] >= 2).collect()
    }

    /// Unordered atom pairs sharing at least one context.
    pub fn orthogonal_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut pairs = BTreeSet::new();
        for ctx in &self.contexts {
            for (i, &a) in ctx.iter().enumerate() {
                for &b in &ctx[i + 1..] {
                    pairs.insert((a.min(b), a.max(b)));
                }
            }
        }
        pairs
    }

    /// Renders in the `.gd` text format.
    pub fn to_gd(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("name {name}\n"));
        }
        for c in 0..self.contexts.len() {
            out.push_str("context ");
            out.push_str(&self.context_names(c).join(" "));
            out.push('\n');
        }
        out
    }
}

#[derive(Default)]
struct Builder {
    name: Option<String>,
    declared: Option<Vec<String>>,
    atoms: Vec<String>,
    index: HashMap<String, usize>,
    contexts: Vec<Vec<usize>>,
    seen: BTreeMap<Vec<usize>, usize>,
    dim: Option<usize>,
}

impl Builder {
    fn declare(&mut self, names: &[&str], line: usize) -> Result<()> {
        if self.declared.is_some() {
            return Err(Error::Parse { line, message: "duplicate `atoms` declaration".into() });
        }
        if !self.contexts.is_empty() {
            return Err(Error::Parse { line, message: "`atoms` must precede all contexts".into() });
        }
        let mut list = Vec::new();
        for &n in names {
            if self.index.contains_key(n) {
                return Err(Error::Parse { line, message: format!("atom `{n}` declared twice") });
            }
            self.index.insert(n.to_string(), list.len());
            list.push(n.to_string());
        }
        self.atoms = list.clone();
        self.declared = Some(list);
        Ok(())
    }

    fn add_context(&mut self, names: &[&str], line: usize) -> Result<()> {
        let err = |message: String| Error::Parse { line, message };
        if names.is_empty() {
            return Err(err("context without atoms".into()));
        }
        match self.dim {
            None => self.dim = Some(names.len()),
            Some(d) if d != names.len() => {
                return Err(err(format!("context has {} atoms, expected {d}", names.len())));
            }
            Some(_) => {}
        }
        let mut ctx = Vec::with_capacity(names.len());
        for &n in names {
            let idx = match self.index.get(n) {
                Some(&i) => i,
                None if self.declared.is_some() => return Err(err(format!("unknown atom `{n}`"))),
                None => {
                    self.index.insert(n.to_string(), self.atoms.len());
                    self.atoms.push(n.to_string());
                    self.atoms.len() - 1
                }
            };
            if ctx.contains(&idx) {
                return Err(err(format!("atom `{n}` repeated within a context")));
            }
            ctx.push(idx);
        }
        let mut key = ctx.clone();
        key.sort_unstable();
        if let Some(prev) = self.seen.insert(key, line) {
            return Err(err(format!("duplicate context (first given on line {prev})")));
        }
        self.contexts.push(ctx);
        Ok(())
    }

    fn finish(self, last_line: usize) -> Result<GreechieDiagram> {
        let Some(dim) = self.dim else {
            return Err(Error::Parse { line: last_line, message: "diagram has no contexts".into() });
        };
        let mut used = vec![false; self.atoms.len()];
        for ctx in &self.contexts {
            for &a in ctx {
                used[a] = true;
            }
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            return Err(Error::Parse {
                line: last_line,
                message: format!("atom `{}` belongs to no context", self.atoms[unused]),
            });
        }
        Ok(GreechieDiagram { name: self.name, atoms: self.atoms, contexts: self.contexts, dim })
    }
}

/// Parses the `.gd` format.
///
/// ```text
/// # comment
/// name two tripods
/// atoms A B C D K        (optional; when present, contexts may only use these)
/// context A B C
/// context D K A
/// ```
pub fn parse_diagram(text: &str) -> Result<GreechieDiagram> {
    let mut builder = Builder::default();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match keyword {
            "name" => {
                if builder.name.is_some() {
                    return Err(Error::Parse { line: line_no, message: "duplicate `name` header".into() });
                }
                builder.name = Some(rest.trim().to_string());
            }
            "atoms" => builder.declare(&fields, line_no)?,
            "context" => builder.add_context(&fields, line_no)?,
            other => {
                return Err(Error::Parse { line: line_no, message: format!("unknown keyword `{other}`") });
            }
        }
    }
    builder.finish(last_line.max(1))
}
