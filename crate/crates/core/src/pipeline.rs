//! The stages chained together: parse, desugar, check, ground, solve.

use crate::analysis::{self, Analysis};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::ground::{ground_program_with, GroundProgram, GroundingMode, UniverseBounds};
use crate::rewrite;
use crate::solve::{self, Costs, Interpretation, QueryAnswer, SolveOptions};
use crate::syntax::{parse_program_with, ParseOptions, Program, Term};

#[derive(Clone, Copy, Debug, Default)]
pub struct Config {
    pub parse: ParseOptions,
    pub bounds: UniverseBounds,
    pub mode: GroundingMode,
    pub solve: SolveOptions,
}

impl Config {
    pub fn exec(&self) -> Execution {
        self.solve.exec
    }
}

/// A program that passed the static checks.
#[derive(Clone, Debug)]
pub struct Checked {
    pub program: Program,
    pub core: Program,
    pub warnings: Vec<String>,
}

pub fn check(program: Program, exec: Execution) -> Result<Checked> {
    let core = rewrite::desugar(&program);
    let Analysis { errors, warnings } = analysis::analyse(&program, &core, exec);
    if !errors.is_empty() {
        return Err(Error::Restriction(errors));
    }
    Ok(Checked {
        program,
        core,
        warnings,
    })
}

pub fn load(text: &str, config: &Config) -> Result<Checked> {
    check(parse_program_with(text, config.parse)?, config.exec())
}

pub fn ground(checked: &Checked, config: &Config) -> Result<GroundProgram> {
    ground_program_with(&checked.core, config.bounds, config.mode, config.exec())
}

#[derive(Clone, Debug, Default)]
pub struct Solution {
    /// Projected answer sets, sorted; with optimisation only optimal ones.
    pub answer_sets: Vec<Interpretation>,
    /// Costs per answer set, filled when optimising.
    pub costs: Vec<Costs>,
    /// Integer levels of the weak constraints, highest first.
    pub levels: Vec<num_bigint::BigInt>,
    pub warnings: Vec<String>,
}

pub fn solve_ground(ground: &GroundProgram, optimise: bool, options: &SolveOptions) -> Result<Solution> {
    let sets = solve::answer_sets(ground, options)?;
    let mut warnings = Vec::new();
    let levels = solve::levels(ground);
    if !optimise {
        return Ok(Solution {
            answer_sets: solve::project(&sets),
            costs: Vec::new(),
            levels,
            warnings,
        });
    }
    let optimal = solve::optimal_answer_sets(ground, &sets);
    if optimal.iter().any(|(_, c)| c.non_integer) {
        warnings.push(
            "weak constraint tuples with non-integer weight or level do not count towards costs"
                .to_string(),
        );
    }
    let mut pairs: Vec<(Interpretation, Costs)> = optimal
        .into_iter()
        .map(|(s, c)| (solve::project(std::slice::from_ref(&s)).remove(0), c))
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    pairs.dedup_by(|a, b| a.0 == b.0);
    let (answer_sets, costs) = pairs.into_iter().unzip();
    Ok(Solution {
        answer_sets,
        costs,
        levels,
        warnings,
    })
}

pub fn solve_text(text: &str, optimise: bool, config: &Config) -> Result<Solution> {
    let checked = load(text, config)?;
    let ground = ground(&checked, config)?;
    let mut solution = solve_ground(&ground, optimise, &config.solve)?;
    solution.warnings.splice(0..0, checked.warnings);
    Ok(solution)
}

/// Answers the program's query. `Ok(None)` when the program has none.
pub fn query_text(text: &str, config: &Config) -> Result<Option<QueryAnswer>> {
    query(&load(text, config)?, config)
}

pub fn query(checked: &Checked, config: &Config) -> Result<Option<QueryAnswer>> {
    let (Some(original), Some(query)) = (&checked.program.query, &checked.core.query) else {
        return Ok(None);
    };
    let mut named = Vec::new();
    for a in &original.args {
        a.visit(&mut |t| {
            if let Term::Variable(v) = t {
                named.push(v.clone());
            }
        });
    }
    let ground = ground(checked, config)?;
    let sets = solve::project(&solve::answer_sets(&ground, &config.solve)?);
    Ok(Some(solve::answer_query(query, &sets, Some(&named))))
}
