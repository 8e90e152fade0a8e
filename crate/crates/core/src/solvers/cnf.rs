use std::fmt::Write;

use crate::graph::Graph;

/// A CNF formula with DIMACS-style literals (`±var`, variables numbered from 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub comment: Option<String>,
}

impl Cnf {
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.comment {
            for line in c.lines() {
                writeln!(out, "c {line}").unwrap();
            }
        }
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Direct encoding of homomorphisms `g -> h`: variable `x(v, a)` is true iff `v ↦ a`.
///
/// Variable numbering: `x(v, a) = v * |V(h)| + a + 1`.
pub fn export_hom_cnf(g: &Graph, h: &Graph) -> Cnf {
    let hn = h.n();
    let var = |v: usize, a: usize| (v * hn + a + 1) as i64;
    let mut clauses = Vec::new();
    for v in 0..g.n() {
        clauses.push((0..hn).map(|a| var(v, a)).collect());
        for a in 0..hn {
            for b in a + 1..hn {
                clauses.push(vec![-var(v, a), -var(v, b)]);
            }
        }
    }
    for (u, v) in g.edges() {
        for a in 0..hn {
            for b in 0..hn {
                if !h.has_edge(a, b) {
                    clauses.push(vec![-var(u, a), -var(v, b)]);
                }
            }
        }
    }
    Cnf {
        num_vars: g.n() * hn,
        clauses,
        comment: Some(format!("homomorphisms {} -> {}", g.name(), h.name())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::complete_graph;

    #[test]
    fn k2_to_k2_header() {
        let k2 = complete_graph(2).unwrap();
        let cnf = export_hom_cnf(&k2, &k2);
        assert_eq!(cnf.num_vars, 4);
        // 2 at-least-one, 2 at-most-one, 2 edge clauses for (a,a)
        assert_eq!(cnf.clauses.len(), 6);
        let text = cnf.to_dimacs();
        assert!(text.lines().any(|l| l == "p cnf 4 6"));
        assert!(text.lines().filter(|l| !l.starts_with('c') && !l.starts_with('p')).all(|l| l.ends_with(" 0")));
    }
}
