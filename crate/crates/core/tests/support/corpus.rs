//! Formula corpora shared by the core tests and the acceptance suite.

#![allow(dead_code)]

pub const MIRROR: &str = "states: a b\nP(a): b\nP(b): a\n";

/// (input, canonical form, value on the two-state mirror model)
pub const GOLDEN: &[(&str, &str, &str)] = &[
    ("{}", "{}", "{}"),
    ("{a}", "{a}", "{a}"),
    ("{a,b}", "{a, b}", "{a, b}"),
    ("{a b}", "{a, b}", "{a, b}"),
    ("omega", "omega", "{a, b}"),
    ("empty", "empty", "{}"),
    ("K({a})", "K({a})", "{b}"),
    ("K'({a})", "K'({a})", "{b}"),
    ("K'(omega)", "K'(omega)", "{}"),
    ("U({a})", "U({a})", "{a}"),
    ("U(omega)", "U(omega)", "{a, b}"),
    ("Uiter(omega)", "Uiter(omega)", "{}"),
    ("U'(empty)", "U'(empty)", "{a, b}"),
    ("U'({b})", "U'({b})", "{b}"),
    ("A({a})", "A({a})", "{b}"),
    ("~{a}", "~{a}", "{b}"),
    ("~~{a}", "~~{a}", "{a}"),
    ("{a} | {b}", "{a} | {b}", "{a, b}"),
    ("{a}&{b}", "{a} & {b}", "{}"),
    ("omega\\{a}", "omega \\ {a}", "{b}"),
    ("{a} | {b} & {a}", "{a} | {b} & {a}", "{a}"),
    ("({a} | {b}) & {a}", "({a} | {b}) & {a}", "{a}"),
    ("K(K({a}))", "K(K({a}))", "{a}"),
    ("~K(~K({a}))", "~K(~K({a}))", "{a}"),
    (
        "U({a}) & ~K({a}) & ~K(~K({a}))",
        "U({a}) & ~K({a}) & ~K(~K({a}))",
        "{a}",
    ),
    (
        "K'(omega) = omega \\ U(omega)",
        "K'(omega) = omega \\ U(omega)",
        "true",
    ),
    ("K(omega)=omega", "K(omega) = omega", "true"),
    ("U({a}) <= {a}", "U({a}) <= {a}", "true"),
    ("{a} < {a}", "{a} < {a}", "false"),
    ("{a}<omega", "{a} < omega", "true"),
    ("K(U({a})) = empty", "K(U({a})) = empty", "false"),
    ("U({a}) = U(~{a})", "U({a}) = U(~{a})", "false"),
    ("U({a} | {b})", "U({a} | {b})", "{a, b}"),
    ("A({a} \\ {a})", "A({a} \\ {a})", "{a, b}"),
    ("{a} \\ ({b} \\ {a})", "{a} \\ ({b} \\ {a})", "{a}"),
    ("  K ( { a } )  ", "K({a})", "{b}"),
    ("U'({a}) | K'({b})", "U'({a}) | K'({b})", "{a}"),
    ("~(omega & empty)", "~(omega & empty)", "{a, b}"),
    ("((({b})))", "{b}", "{b}"),
    ("{a}\n  <=\n  omega", "{a} <= omega", "true"),
];

pub const MALFORMED: &[&str] = &[
    "",
    "K(",
    "U(oops",
    "K {a}",
    "{a,}",
    "{a",
    "{,a}",
    "}",
    ")",
    "K()",
    "A'({a})",
    "X'(omega)",
    "{a} = {b} = {c}",
    "({a} = {b})",
    "K({a} = {b})",
    "{a} &",
    "& {a}",
    "{a} {b}",
    "omega\n& ",
    "omega $ empty",
    "K(omega))",
    "((omega)",
    "~",
    "<= omega",
    "{a} =",
    "U'",
    "Uiter omega",
    "{a}\n\n  | )",
    "é",
    "{a} <> {b}",
];
