use std::fmt::Write;

use super::GreechieDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderStyle {
    /// Plain-text listing of contexts and link observables.
    Greechie,
    /// DOT graph with one node per context and one edge per shared atom.
    /// Only defined for tripods (three atoms per context).
    Tkadlec,
    /// DOT graph with one node per atom and a clique per context.
    Dot,
}

impl std::str::FromStr for RenderStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greechie" => Ok(Self::Greechie),
            "tkadlec" => Ok(Self::Tkadlec),
            "dot" => Ok(Self::Dot),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn graph_name(d: &GreechieDiagram) -> String {
    quote(d.name().unwrap_or("diagram"))
}

pub fn render(d: &GreechieDiagram, style: RenderStyle) -> Result<String> {
    let mut out = String::new();
    match style {
        RenderStyle::Greechie => {
            if let Some(name) = d.name() {
                writeln!(out, "diagram: {name}").unwrap();
            }
            writeln!(out, "atoms: {} ({})", d.atoms().len(), d.atoms().join(" ")).unwrap();
            writeln!(out, "contexts: {}", d.contexts().len()).unwrap();
            for c in 0..d.contexts().len() {
                writeln!(out, "  C{}: {{{}}}", c + 1, d.context_names(c).join(", ")).unwrap();
            }
            let links: Vec<&str> = d.link_observables().into_iter().map(|a| d.atom(a)).collect();
            writeln!(out, "links: {}", if links.is_empty() { "-".to_string() } else { links.join(" ") }).unwrap();
        }
        RenderStyle::Tkadlec => {
            if d.dim() != 3 {
                return Err(Error::InvalidArgument(format!(
                    "tkadlec rendering needs three atoms per context, diagram has {}",
                    d.dim()
                )));
            }
            writeln!(out, "graph {} {{", graph_name(d)).unwrap();
            writeln!(out, "  node [shape=circle];").unwrap();
            for c in 0..d.contexts().len() {
                writeln!(out, "  C{} [label={}];", c + 1, quote(&d.context_names(c).join(" "))).unwrap();
            }
            for a in d.link_observables() {
                let ctxs = d.contexts_of(a);
                for (i, &x) in ctxs.iter().enumerate() {
                    for &y in &ctxs[i + 1..] {
                        writeln!(out, "  C{} -- C{} [label={}];", x + 1, y + 1, quote(d.atom(a))).unwrap();
                    }
                }
            }
            out.push_str("}\n");
        }
        RenderStyle::Dot => {
            writeln!(out, "graph {} {{", graph_name(d)).unwrap();
            for atom in d.atoms() {
                writeln!(out, "  {};", quote(atom)).unwrap();
            }
            for (a, b) in d.orthogonal_pairs() {
                writeln!(out, "  {} -- {};", quote(d.atom(a)), quote(d.atom(b))).unwrap();
            }
            out.push_str("}\n");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_diagram;

    #[test]
    fn greechie_listing() {
        let d = parse_diagram("name t\ncontext A B C\ncontext D K A\n").unwrap();
        let text = render(&d, RenderStyle::Greechie).unwrap();
        assert!(text.contains("C2: {D, K, A}"));
        assert!(text.contains("links: A"));
    }

    #[test]
    fn tkadlec_edges_are_shared_atoms() {
        let d = parse_diagram("context A B C\ncontext D K A\n").unwrap();
        let text = render(&d, RenderStyle::Tkadlec).unwrap();
        assert!(text.contains("C1 -- C2 [label=\"A\"];"));
        let pairs = parse_diagram("context A B\n").unwrap();
        assert!(render(&pairs, RenderStyle::Tkadlec).is_err());
    }

    #[test]
    fn dot_has_one_edge_per_orthogonal_pair() {
        let d = parse_diagram("context A B C\ncontext D K A\n").unwrap();
        let text = render(&d, RenderStyle::Dot).unwrap();
        assert_eq!(text.matches(" -- ").count(), 6);
    }

    #[test]
    fn style_names() {
        assert_eq!("dot".parse::<RenderStyle>().unwrap(), RenderStyle::Dot);
        assert!("svg".parse::<RenderStyle>().is_err());
    }
}
