use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::syntax::*;

/// Signed predicate signature `p/n` or `-p/n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    pub negated: bool,
    pub name: String,
    pub arity: usize,
}

impl Signature {
    pub fn of(atom: &ClassicalAtom) -> Self {
        Signature {
            negated: atom.negated,
            name: atom.predicate.clone(),
            arity: atom.arity(),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DependencyGraph {
    pub vertices: BTreeSet<Signature>,
    pub edges: BTreeMap<Signature, BTreeSet<Signature>>,
}

impl DependencyGraph {
    fn add_edge(&mut self, from: Signature, to: Signature) {
        self.vertices.insert(from.clone());
        self.vertices.insert(to.clone());
        self.edges.entry(from).or_default().insert(to);
    }

    pub fn successors(&self, v: &Signature) -> impl Iterator<Item = &Signature> {
        self.edges.get(v).into_iter().flatten()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.values().map(BTreeSet::len).sum()
    }

    /// A path of at least one edge from `from` to `to`, if any.
    pub fn path(&self, from: &Signature, to: &Signature) -> Option<Vec<Signature>> {
        let mut parent: BTreeMap<&Signature, &Signature> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for s in self.successors(from) {
            if !parent.contains_key(s) {
                parent.insert(s, from);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![v.clone()];
                let mut cur = v;
                loop {
                    let p = parent[cur];
                    path.push(p.clone());
                    if p == from && path.len() > 1 {
                        break;
                    }
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for s in self.successors(v) {
                if !parent.contains_key(s) {
                    parent.insert(s, v);
                    queue.push_back(s);
                }
            }
        }
        None
    }

    /// `edge <from> <to>` lines in lexicographic order.
    pub fn dump(&self) -> String {
        let mut lines: Vec<String> = self
            .edges
            .iter()
            .flat_map(|(f, ts)| ts.iter().map(move |t| format!("edge {f} {t}")))
            .collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

/// Builds the graph of a desugared program. Every head depends on every head
/// of the same rule (self included) and on every classical atom of the body,
/// whether it sits under `not` or inside an aggregate element.
pub fn build_dependency_graph(program: &Program) -> DependencyGraph {
    let mut g = DependencyGraph::default();
    for rule in program.rules() {
        let heads: Vec<Signature> = rule.head_atoms().iter().map(Signature::of).collect();
        let body: Vec<Signature> = Statement::Rule(rule.clone())
            .classical_atoms()
            .into_iter()
            .skip(heads.len())
            .map(|(a, _)| Signature::of(a))
            .collect();
        for h in &heads {
            for h2 in &heads {
                g.add_edge(h.clone(), h2.clone());
            }
            for b in &body {
                g.add_edge(h.clone(), b.clone());
            }
        }
        for b in body {
            g.vertices.insert(b);
        }
    }
    for w in program.weak_constraints() {
        for (a, _) in Statement::Weak(w.clone()).classical_atoms() {
            g.vertices.insert(Signature::of(a));
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursiveAggregate {
    pub rule: String,
    pub atom: String,
    pub path: Vec<Signature>,
}

impl fmt::Display for RecursiveAggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(ToString::to_string).collect();
        write!(
            f,
            "recursive aggregate in `{}`: {} inside an aggregate depends on the head via {}",
            self.rule,
            self.atom,
            path.join(" -> ")
        )
    }
}

/// Rejects aggregates whose atoms reach a head of their own rule.
pub fn check_aggregates_nonrecursive(
    program: &Program,
    graph: &DependencyGraph,
) -> Vec<RecursiveAggregate> {
    let mut found = Vec::new();
    for rule in program.rules() {
        let heads = rule.head_atoms();
        if heads.is_empty() {
            continue;
        }
        let stmt = Statement::Rule(rule.clone());
        for (atom, inside) in stmt.classical_atoms() {
            if !inside {
                continue;
            }
            let from = Signature::of(atom);
            for h in heads {
                let to = Signature::of(h);
                if let Some(path) = graph.path(&from, &to) {
                    found.push(RecursiveAggregate {
                        rule: rule.to_string(),
                        atom: atom.to_string(),
                        path,
                    });
                    break;
                }
            }
        }
    }
    found
}
