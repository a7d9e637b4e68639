//! Graphviz output for Hasse diagrams.

use std::fmt::Write;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph with one node per label and an edge `lower -> upper` per
/// covering pair.
pub fn emit_dot(labels: &[String], covers: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for l in labels {
        writeln!(out, "  {};", quote(l)).unwrap();
    }
    for &(a, b) in covers {
        writeln!(out, "  {} -> {};", quote(&labels[a]), quote(&labels[b])).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_when_empty() {
        assert_eq!(emit_dot(&[], &[]), "digraph hasse {\n  rankdir=BT;\n}\n");
    }

    #[test]
    fn edges_and_escaping() {
        let labels = vec!["⊥".to_string(), "a\"b".to_string()];
        let dot = emit_dot(&labels, &[(0, 1)]);
        assert!(dot.contains("  \"⊥\" -> \"a\\\"b\";\n"));
        assert_eq!(dot.matches("->").count(), 1);
    }
}
