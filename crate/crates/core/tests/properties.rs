mod common;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use asp_core::analysis::{build_dependency_graph, check_safety, unguarded_aggregates, Signature};
use asp_core::exec::Execution;
use asp_core::ground::{term_compare, GroundTerm, GroundingMode, UniverseBounds};
use asp_core::pipeline::{self, Config};
use asp_core::rewrite;
use asp_core::solve::{self, SolveOptions};
use asp_core::syntax::*;
use proptest::prelude::*;

use common::gen::{self, Shape};
use common::render_core;

fn ground_term() -> impl Strategy<Value = GroundTerm> {
    let leaf = prop_oneof![
        (-5i64..5).prop_map(GroundTerm::int),
        prop::sample::select(vec!["a", "b", "aa", "ba"]).prop_map(GroundTerm::sym),
        prop::sample::select(vec!["", "a", "B", "\\\"", "a\\\"b"])
            .prop_map(|s| GroundTerm::Str(s.to_string())),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        (
            prop::sample::select(vec!["f", "g"]),
            prop::collection::vec(inner, 1..3),
        )
            .prop_map(|(f, args)| GroundTerm::Function(f.to_string(), args))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn term_order_is_total(a in ground_term(), b in ground_term()) {
        prop_assert_eq!(term_compare(&a, &b), term_compare(&b, &a).reverse());
        prop_assert_eq!(term_compare(&a, &b) == Ordering::Equal, a == b);
    }

    #[test]
    fn term_order_is_transitive(a in ground_term(), b in ground_term(), c in ground_term()) {
        let mut v = [a, b, c];
        v.sort_by(term_compare);
        prop_assert_ne!(term_compare(&v[0], &v[2]), Ordering::Greater);
        prop_assert_ne!(term_compare(&v[0], &v[1]), Ordering::Greater);
        prop_assert_ne!(term_compare(&v[1], &v[2]), Ordering::Greater);
    }
}

fn var() -> impl Strategy<Value = Term> {
    prop::sample::select(vec!["X", "Y", "Z"]).prop_map(Term::var)
}

fn basic_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        (-3i64..10).prop_map(Term::int),
        prop::sample::select(vec!["a", "b"]).prop_map(Term::sym),
        Just(Term::Str("s".into())),
        var(),
        Just(Term::Anonymous),
    ]
}

fn term() -> impl Strategy<Value = Term> {
    basic_term().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (
                prop::sample::select(vec![ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, l, r)| Term::Binary(op, Box::new(l), Box::new(r))),
            inner.clone().prop_map(|t| Term::Neg(Box::new(t))),
            (prop::sample::select(vec!["f", "g"]), prop::collection::vec(inner, 1..3))
                .prop_map(|(f, args)| Term::Function(f.to_string(), args)),
        ]
    })
}

fn atom() -> impl Strategy<Value = ClassicalAtom> {
    (
        any::<bool>(),
        prop::sample::select(vec!["p", "q", "r"]),
        prop::collection::vec(term(), 0..3),
    )
        .prop_map(|(negated, p, args)| ClassicalAtom {
            negated,
            predicate: p.to_string(),
            args,
        })
}

fn relation() -> impl Strategy<Value = Relation> {
    prop::sample::select(Relation::ALL.to_vec())
}

fn naf_literal() -> impl Strategy<Value = NafLiteral> {
    prop_oneof![
        3 => (any::<bool>(), atom()).prop_map(|(naf, atom)| NafLiteral::Classical { naf, atom }),
        1 => (term(), relation(), term())
            .prop_map(|(left, rel, right)| NafLiteral::Builtin(BuiltinAtom { left, rel, right })),
    ]
}

fn guard() -> impl Strategy<Value = Option<Guard>> {
    prop::option::of((relation(), term()).prop_map(|(r, t)| Guard::new(r, t)))
}

fn aggregate() -> impl Strategy<Value = AggregateAtom> {
    let element = (
        prop::collection::vec(basic_term(), 0..3),
        prop::collection::vec(naf_literal(), 0..3),
    )
        .prop_map(|(terms, condition)| AggregateElement { terms, condition });
    (
        prop::sample::select(vec![
            AggregateFunction::Count,
            AggregateFunction::Sum,
            AggregateFunction::Max,
            AggregateFunction::Min,
        ]),
        prop::collection::vec(element, 0..3),
        guard(),
        guard(),
    )
        .prop_map(|(function, elements, left, right)| AggregateAtom {
            function,
            elements,
            left,
            right,
        })
}

fn body() -> impl Strategy<Value = Vec<BodyLiteral>> {
    prop::collection::vec(
        prop_oneof![
            3 => naf_literal().prop_map(BodyLiteral::Literal),
            1 => (any::<bool>(), aggregate()).prop_map(|(naf, atom)| BodyLiteral::Aggregate { naf, atom }),
        ],
        0..3,
    )
}

fn statement() -> impl Strategy<Value = Statement> {
    let choice = (
        prop::collection::vec(
            (atom(), prop::collection::vec(naf_literal(), 0..2))
                .prop_map(|(atom, condition)| ChoiceElement { atom, condition }),
            0..3,
        ),
        guard(),
        guard(),
    )
        .prop_map(|(elements, left, right)| Head::Choice(ChoiceAtom { elements, left, right }));
    let head = prop_oneof![
        prop::collection::vec(atom(), 0..3).prop_map(Head::Disjunction),
        choice,
    ];
    prop_oneof![
        4 => (head, body()).prop_map(|(head, body)| Statement::Rule(Rule { head, body })),
        1 => (body(), term(), term(), prop::collection::vec(term(), 0..2)).prop_map(
            |(body, weight, level, terms)| Statement::Weak(WeakConstraint { body, weight, level, terms })
        ),
    ]
}

fn program() -> impl Strategy<Value = Program> {
    (prop::collection::vec(statement(), 0..5), prop::option::of(atom()))
        .prop_map(|(statements, query)| Program { statements, query })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_parse_is_a_fixed_point(p in program()) {
        let first = pretty_print(&p);
        let parsed = parse_program(&first);
        prop_assert!(parsed.is_ok(), "{}\n{:?}", first, parsed);
        let parsed = parsed.unwrap();
        let second = pretty_print(&parsed);
        let reparsed = parse_program(&second).unwrap();
        prop_assert_eq!(&reparsed, &parsed);
        prop_assert_eq!(pretty_print(&reparsed), second);
    }

    /// Adding a positive body atom can only bind more variables: whatever is
    /// unbound afterwards was unbound before or is new with the atom.
    #[test]
    fn safety_is_monotone(p in program(), extra in atom()) {
        let p = rewrite::name_anonymous_variables(&p);
        let mut extra = extra;
        extra.negated = false;
        let mut extra_vars = BTreeSet::new();
        extra.collect_variables(&mut extra_vars);
        for s in &p.statements {
            let Statement::Rule(r) = s else { continue };
            let before: BTreeSet<String> =
                check_safety(s).unbound.into_iter().map(|u| u.variable).collect();
            let mut bigger = r.clone();
            bigger.body.push(BodyLiteral::pos(extra.clone()));
            for u in check_safety(&Statement::Rule(bigger)).unbound {
                prop_assert!(
                    before.contains(&u.variable) || extra_vars.contains(&u.variable),
                    "{} became unbound in {}", u.variable, s
                );
            }
        }
    }

    #[test]
    fn desugared_programs_are_core(p in program()) {
        prop_assume!(unguarded_aggregates(&p).is_empty());
        let core = rewrite::desugar(&p);
        prop_assert!(rewrite::is_core(&core));
        prop_assert_eq!(rewrite::desugar(&core), core);
    }

    /// `path` finds a route exactly when the transitive closure has the pair.
    #[test]
    fn reachability_matches_closure(p in program()) {
        let g = build_dependency_graph(&rewrite::desugar(&p));
        let vs: Vec<Signature> = g.vertices.iter().cloned().collect();
        let mut reach: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate() {
                reach.insert((i, j), g.successors(a).any(|s| s == b));
            }
        }
        for k in 0..vs.len() {
            for i in 0..vs.len() {
                for j in 0..vs.len() {
                    if reach[&(i, k)] && reach[&(k, j)] {
                        reach.insert((i, j), true);
                    }
                }
            }
        }
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate() {
                let path = g.path(a, b);
                prop_assert_eq!(path.is_some(), reach[&(i, j)], "{} -> {}", a, b);
                if let Some(path) = path {
                    prop_assert_eq!(path.first(), Some(a));
                    prop_assert_eq!(path.last(), Some(b));
                    for w in path.windows(2) {
                        prop_assert!(g.successors(&w[0]).any(|s| *s == w[1]));
                    }
                }
            }
        }
    }
}

fn shapes() -> impl Strategy<Value = (u64, bool)> {
    (any::<u64>(), any::<bool>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sequential_and_parallel_agree((seed, aggregates) in shapes()) {
        let p = gen::ground_program(&mut gen::rng(seed), Shape { aggregates, weaks: true, query: false });
        let text = p.to_string();
        let mut config = Config::default();
        config.solve.exec = Execution::Sequential;
        let a = pipeline::solve_text(&text, true, &config).unwrap();
        config.solve.exec = Execution::Parallel;
        let b = pipeline::solve_text(&text, true, &config).unwrap();
        prop_assert_eq!(a.answer_sets, b.answer_sets);
        prop_assert_eq!(a.costs, b.costs);
    }

    /// Answer sets are consistent, pass the direct definition check and are
    /// pairwise incomparable.
    #[test]
    fn answer_sets_are_minimal((seed, aggregates) in shapes()) {
        let p = gen::ground_program(&mut gen::rng(seed), Shape { aggregates, ..Shape::default() });
        let cfg = Config::default();
        let checked = pipeline::load(&p.to_string(), &cfg).unwrap();
        let ground = pipeline::ground(&checked, &cfg).unwrap();
        let sets = solve::answer_sets(&ground, &SolveOptions::default()).unwrap();
        for s in &sets {
            prop_assert!(solve::is_consistent(s));
            prop_assert!(solve::is_answer_set(&ground, s));
            for t in &sets {
                prop_assert!(s == t || !s.is_subset(t));
            }
        }
    }

    /// Printing a ground program and solving the text again changes nothing.
    #[test]
    fn ground_output_resolves((seed, _x) in shapes()) {
        let text = gen::nonground_program(&mut gen::rng(seed));
        let mut cfg = Config { bounds: UniverseBounds::new(5, 1), ..Config::default() };
        cfg.solve.brute_force_limit = 12;
        let checked = pipeline::load(&text, &cfg).unwrap();
        let ground = pipeline::ground(&checked, &cfg).unwrap();
        let Ok(direct) = pipeline::solve_ground(&ground, false, &cfg.solve) else { return Ok(()) };
        let mut again = cfg;
        again.parse.rewritten = true;
        let refed = pipeline::solve_text(&ground.to_string(), false, &again).unwrap();
        prop_assert_eq!(render_core(&direct.answer_sets), render_core(&refed.answer_sets));
    }

    #[test]
    fn naive_ground_programs_are_sorted((seed, _x) in shapes()) {
        let text = gen::nonground_program(&mut gen::rng(seed));
        let cfg = Config { bounds: UniverseBounds::new(2, 1), mode: GroundingMode::Naive, ..Config::default() };
        let ground = pipeline::ground(&pipeline::load(&text, &cfg).unwrap(), &cfg).unwrap();
        let lines: Vec<String> = ground.to_string().lines().map(String::from).collect();
        let unique: BTreeSet<&String> = lines.iter().collect();
        prop_assert_eq!(unique.len(), lines.len());
    }
}
