#![allow(dead_code)]

pub mod corpus;
pub mod gen;
pub mod oracle;

use std::collections::BTreeSet;

use asp_core::solve::Interpretation;

pub fn render_core(sets: &[Interpretation]) -> BTreeSet<BTreeSet<String>> {
    sets.iter()
        .map(|s| s.iter().map(|a| a.to_string()).collect())
        .collect()
}
