//! Static checks: safety, non-recursive aggregates, arity and division lints.

mod graph;
mod lint;
mod safety;

pub use graph::{
    build_dependency_graph, check_aggregates_nonrecursive, DependencyGraph, RecursiveAggregate,
    Signature,
};
pub use lint::{check_arities, lint_undefined_arithmetic, unguarded_aggregates};
pub use safety::{check_query_safety, check_safety, SafetyReport, Scope, UnboundVariable};

use crate::exec::{self, Execution};
use crate::rewrite;
use crate::syntax::Program;

#[derive(Clone, Debug, Default)]
pub struct Analysis {
    /// Hard violations; the program must be rejected.
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl Analysis {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Runs every check. `program` is the parsed input; `core` its desugared form.
///
/// Safety is judged on the input with anonymous variables named, so messages
/// quote what the user wrote; the recursion check needs the core program.
pub fn analyse(program: &Program, core: &Program, exec: Execution) -> Analysis {
    let named = rewrite::name_anonymous_variables(program);
    let reports = exec::map(exec, &named.statements, check_safety);
    let mut errors = Vec::new();
    for (s, r) in named.statements.iter().zip(reports) {
        for u in r.unbound {
            errors.push(format!("unsafe statement `{s}`: {u}"));
        }
    }
    if let Some(q) = &named.query {
        for u in check_query_safety(q).unbound {
            errors.push(format!("unsafe query `{q}?`: {u}"));
        }
    }
    errors.extend(unguarded_aggregates(program));
    let graph = build_dependency_graph(core);
    errors.extend(
        check_aggregates_nonrecursive(core, &graph)
            .iter()
            .map(ToString::to_string),
    );
    let mut warnings = check_arities(program);
    warnings.extend(lint_undefined_arithmetic(program));
    Analysis { errors, warnings }
}
