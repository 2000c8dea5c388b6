//! Grammar conformance corpus: program text and whether the grammar admits it.

pub const ACCEPT: &[&str] = &[
    // program / statements / query
    "",
    "a.",
    "a. b. c.",
    "a?",
    "a. b :- a. b?",
    "-p(1)?",
    "p(X,Y)?",
    // statement alternatives
    ":- a.",
    ":- .",
    "a :- b.",
    "a :- .",
    "a.",
    ":~ a. [1]",
    ":~ . [1@2]",
    ":~ a, not b. [X@L, X, L] ",
    ":~ a. [1@2, x, \"s\", f(1)]",
    // head alternatives and disjunction
    "a | b.",
    "a | -b | c(1) :- d.",
    "{a; b}.",
    "{}.",
    "{a : b, not c; -d : e}.",
    "{a :}.",
    "1 <= {a; b} <= 2.",
    "X = {a; b} :- n(X).",
    "{a; b} != 1.",
    "0 < {a(1) : b(1)}.",
    // body alternatives
    "a :- b, not c, d.",
    "a :- X < Y, p(X), p(Y).",
    "a :- #count{X : p(X)} > 1.",
    "a :- not #count{X : p(X)} > 1.",
    "a :- 1 < #sum{X : p(X)} < 5.",
    "a :- #max{X : p(X)}.",
    "a :- #min{X,Y : p(X), q(Y)} = 2.",
    "a :- #count{}.",
    "a :- #count{;} = 0.",
    "a :- #count{:} = 1.",
    "a :- #count{: b} = 1.",
    "a :- #count{1 : b; 2 : c} = 2.",
    "a :- #sum{-1, x, \"s\", _ : b} = -1.",
    "a :- #count{X} = 1, p(X).",
    // aggregate functions and relations
    "a :- 1 = #count{X : p(X)}.",
    "a :- 1 <> #sum{X : p(X)}.",
    "a :- 1 != #max{X : p(X)}.",
    "a :- 1 < #min{X : p(X)}.",
    "a :- 1 > #count{X : p(X)}.",
    "a :- 1 <= #count{X : p(X)}.",
    "a :- 1 >= #count{X : p(X)}.",
    // classical literals and terms
    "p.",
    "p().",
    "-p.",
    "p(a, 1, \"str\", X, _).",
    "p(f(g(a), h)).",
    "p((1)).",
    "p(-1, -X, -(1+2)).",
    "p(1+2, 3-4, 5*6, 7/8).",
    "p(X+Y*Z-W/V) :- q(X,Y,Z,W,V).",
    "p(f(X)+1) :- q(X).",
    // lexical rows
    "p(a_B9, anna) :- q(Name, X_1).",
    "p(\"http://bit.ly/cw6lDS\", \"Peter\", \"say \\\"hi\\\"\").",
    "p(0, 1, 100000).",
    "p :- q(_).",
    "a % this is a comment\n.",
    "a. %* this is\na comment *% b.",
    "a.\t\n b. ",
    "% comment at the end",
];

pub const REJECT: &[&str] = &[
    "p(1) :- #count{[X]} = 1.",
    "a :~ b.",
    "a :- b@c.",
    "a",
    "a :- b",
    "a :- b,.",
    "a b.",
    "A.",
    "p(X.",
    "p(1+).",
    "p(f()) .)",
    "1.",
    "\"s\".",
    "_.",
    "a :- not not b.",
    "a :- not.",
    "-.",
    "--a.",
    "a | .",
    "| a.",
    ":~ a.",
    ":~ a. []",
    ":~ a. [1@2@3]",
    ":~ a. [1",
    "a :- b? ",
    "a :- #count{X : p(X)} > 1 > 2.",
    "a :- #count{f(X) : p(X)} > 1.",
    "a :- #count{X+1 : p(X)} > 1.",
    "a :- #count{X,: p(X)} > 1.",
    "a :- #foo{X : p(X)}.",
    "{a b}.",
    "{a;;b}.",
    "{a : b : c}.",
    "1 < {a} < 2 < 3.",
    "a :- b & c.",
    "p(01).",
    "a :- b <= = c.",
    "p(\"unterminated).",
    "a.\r\n",
    "a. %* unterminated",
    "a :- X == Y.",
    "a? b.",
    "a? b?",
    "p(a,).",
    "p(,a).",
    "a :- 1 < 2 < 3.",
    "#count{X : p(X)} > 1.",
    ":~ a. [1@2,]",
];
