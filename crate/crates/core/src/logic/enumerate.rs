use serde::Serialize;

use super::GreechieDiagram;

/// A 0/1 assignment over the atoms of a diagram with exactly one 1 per context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoValuedState {
    values: Vec<bool>,
}

impl TwoValuedState {
    pub fn new(values: Vec<bool>) -> Self {
        Self { values }
    }

    pub fn value(&self, atom: usize) -> bool {
        self.values[atom]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Atoms assigned 1, ascending.
    pub fn true_atoms(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&a| self.values[a]).collect()
    }

    pub fn true_names<'a>(&self, diagram: &'a GreechieDiagram) -> Vec<&'a str> {
        self.true_atoms().into_iter().map(|a| diagram.atom(a)).collect()
    }

    pub fn satisfies(&self, diagram: &GreechieDiagram) -> bool {
        self.values.len() == diagram.atoms().len()
            && diagram.contexts().iter().all(|ctx| ctx.iter().filter(|&&a| self.values[a]).count() == 1)
    }
}

struct Search<'a> {
    diagram: &'a GreechieDiagram,
    by_atom: Vec<Vec<usize>>,
    assignment: Vec<Option<bool>>,
    found: Vec<TwoValuedState>,
}

impl Search<'_> {
    /// A context is violated once it holds two 1s or only 0s.
    fn consistent(&self, context: usize) -> bool {
        let mut ones = 0;
        let mut open = 0;
        for &a in &self.diagram.contexts()[context] {
            match self.assignment[a] {
                Some(true) => ones += 1,
                Some(false) => {}
                None => open += 1,
            }
        }
        ones <= 1 && (ones == 1 || open > 0)
    }

    fn run(&mut self, from: usize) {
        let contexts = self.diagram.contexts();
        let Some(next) = (from..contexts.len()).find(|&c| !contexts[c].iter().any(|&a| self.assignment[a] == Some(true)))
        else {
            let values = self.assignment.iter().map(|v| v.unwrap_or(false)).collect();
            self.found.push(TwoValuedState::new(values));
            return;
        };
        let ctx = &contexts[next];
        for &choice in ctx {
            if self.assignment[choice].is_some() {
                continue;
            }
            let mut touched = Vec::new();
            for &a in ctx {
                if self.assignment[a].is_none() {
                    self.assignment[a] = Some(a == choice);
                    touched.push(a);
                }
            }
            let ok = touched
                .iter()
                .flat_map(|&a| self.by_atom[a].iter())
                .all(|&c| self.consistent(c));
            if ok {
                self.run(next + 1);
            }
            for a in touched {
                self.assignment[a] = None;
            }
        }
    }
}

/// Every two-valued state, by backtracking over contexts in declaration
/// order. The result is sorted by the ascending list of true atoms.
pub fn two_valued_states(diagram: &GreechieDiagram) -> Vec<TwoValuedState> {
    let n = diagram.atoms().len();
    let by_atom = (0..n).map(|a| diagram.contexts_of(a)).collect();
    let mut search = Search { diagram, by_atom, assignment: vec![None; n], found: Vec::new() };
    search.run(0);
    let mut states = search.found;
    states.sort_by_key(TwoValuedState::true_atoms);
    states.dedup();
    states
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StateClass {
    Nonexistent,
    Nonunital,
    UnitalNonseparating,
    Separating,
}

impl StateClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Nonexistent => "nonexistent",
            Self::Nonunital => "nonunital",
            Self::UnitalNonseparating => "unital_nonseparating",
            Self::Separating => "separating",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateSetClassification {
    pub class: StateClass,
    pub state_count: usize,
    /// Atoms true in no state.
    pub never_true: Vec<usize>,
    /// Distinct atom pairs with equal value in every state.
    pub nonseparating: Vec<(usize, usize)>,
}

fn pairs_from(diagram: &GreechieDiagram, states: &[TwoValuedState]) -> Vec<(usize, usize)> {
    if states.is_empty() {
        return Vec::new();
    }
    let n = diagram.atoms().len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            if states.iter().all(|s| s.value(x) == s.value(y)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Atom pairs `(x, y)`, `x < y`, that no two-valued state separates. Empty
/// when there are no states at all.
pub fn nonseparating_pairs(diagram: &GreechieDiagram) -> Vec<(usize, usize)> {
    pairs_from(diagram, &two_valued_states(diagram))
}

pub fn classify(diagram: &GreechieDiagram) -> StateSetClassification {
    let states = two_valued_states(diagram);
    let n = diagram.atoms().len();
    let never_true: Vec<usize> = (0..n).filter(|&a| !states.iter().any(|s| s.value(a))).collect();
    let nonseparating = pairs_from(diagram, &states);
    let class = if states.is_empty() {
        StateClass::Nonexistent
    } else if !never_true.is_empty() {
        StateClass::Nonunital
    } else if !nonseparating.is_empty() {
        StateClass::UnitalNonseparating
    } else {
        StateClass::Separating
    };
    StateSetClassification { class, state_count: states.len(), never_true, nonseparating }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_diagram;

    fn names(d: &GreechieDiagram, states: &[TwoValuedState]) -> Vec<Vec<String>> {
        states.iter().map(|s| s.true_names(d).iter().map(|x| x.to_string()).collect()).collect()
    }

    #[test]
    fn single_context_has_one_state_per_atom() {
        let d = parse_diagram("context A B C\n").unwrap();
        let s = two_valued_states(&d);
        assert_eq!(names(&d, &s), vec![vec!["A"], vec!["B"], vec!["C"]]);
        assert_eq!(classify(&d).class, StateClass::Separating);
        assert!(nonseparating_pairs(&d).is_empty());
    }

    #[test]
    fn two_tripods_have_five_states() {
        let d = parse_diagram("context A B C\ncontext D K A\n").unwrap();
        let s = two_valued_states(&d);
        let expected: Vec<Vec<String>> = [vec!["A"], vec!["B", "D"], vec!["B", "K"], vec!["C", "D"], vec!["C", "K"]]
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        assert_eq!(names(&d, &s), expected);
        assert!(s.iter().all(|x| x.satisfies(&d)));
        assert_eq!(classify(&d).class, StateClass::Separating);
    }

    #[test]
    fn two_contexts_sharing_two_atoms() {
        // both third atoms are forced by the same pair: C and D always agree
        let d = parse_diagram("context A B C\ncontext A B D\n").unwrap();
        let c = classify(&d);
        assert_eq!(c.class, StateClass::UnitalNonseparating);
        assert_eq!(c.nonseparating, vec![(2, 3)]);
    }

    #[test]
    fn odd_cycle_of_pairs_has_no_states() {
        let d = parse_diagram("context A B\ncontext B C\ncontext C A\n").unwrap();
        assert!(two_valued_states(&d).is_empty());
        let c = classify(&d);
        assert_eq!(c.class, StateClass::Nonexistent);
        assert!(c.nonseparating.is_empty());
    }

    #[test]
    fn atom_forced_against_itself_is_never_true() {
        // a = 1 forces a7 = 0 (hexagon) and a8 = 0, so b = 1; {a, b, e} then
        // rules a = 1 out entirely.
        let d = parse_diagram(
            "context a z a1\ncontext a y a2\ncontext a1 a5 a3\ncontext a2 a6 a4\n\
             context a5 u a6\ncontext a3 w a7\ncontext a4 x a7\ncontext a7 a8 b\n\
             context a a8 c\ncontext a b e\n",
        )
        .unwrap();
        let c = classify(&d);
        assert_eq!(c.class, StateClass::Nonunital);
        assert_eq!(c.never_true, vec![d.atom_index("a").unwrap()]);
    }
}
