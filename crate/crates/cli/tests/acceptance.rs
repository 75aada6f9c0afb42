//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

#[path = "../../core/tests/support/corpus.rs"]
mod corpus;
#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use oracle::{all_models, from_event, set, to_event, Oracle};
use unaware_core::formula::{BinOp, Operator, Relation};
use unaware_core::operators::unawareness_exhaustive;
use unaware_core::{
    check_property, eval_formula, invariant_sweep, parse_formula, parse_model, print_formula,
    search, unawareness, verify_claim, Analyzer, ClaimId, Constraint, EnumSpec, Event, Formula,
    Model, OperatorKind, PropertyId, SearchMode, StepStatus, Target, Value, Verdict,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn fixture(name: &str) -> Model {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../models")
        .join(name);
    parse_model(&std::fs::read_to_string(&path).expect("fixture readable")).expect("fixture parses")
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_unaware"))
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("../.."))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(
        took < budget,
        format!("{what} took {took:?}, budget {budget:?}"),
    )
}

fn mirror_fixture() -> Check {
    let start = Instant::now();
    let m = fixture("w2.model");
    let o = Oracle::from_model(&m);
    let (a, b) = (set(&[0]), set(&[1]));
    let ev = |s: &oracle::Set| to_event(2, s);

    // Oracle values first, pinned by hand.
    ensure(o.k(&a) == b, "oracle K({a})")?;
    ensure(o.u(&a) == a && o.u(&b) == b, "oracle U")?;
    ensure(o.global() == o.omega(), "oracle UΩ")?;
    ensure(o.kprime(&o.omega()).is_empty(), "oracle K'(Ω)")?;
    ensure(o.a(&a) == b, "oracle A({a})")?;
    ensure(
        o.negative_introspection_witness() == Some(a.clone()),
        "oracle NI witness",
    )?;
    ensure(o.ku_witness() == Some(a.clone()), "oracle KU witness")?;
    ensure(o.au_witness().is_none(), "oracle AU")?;
    ensure(
        o.symmetry_witness() == Some(a.clone()),
        "oracle symmetry witness",
    )?;

    let an = Analyzer::new(&m);
    ensure(
        an.knowledge(OperatorKind::StandardK, ev(&a)).unwrap() == ev(&o.k(&a)),
        "K({a})",
    )?;
    ensure(an.unawareness(ev(&a)).unwrap() == ev(&o.u(&a)), "U({a})")?;
    ensure(an.unawareness(ev(&b)).unwrap() == ev(&o.u(&b)), "U({b})")?;
    ensure(an.global_unawareness().unwrap() == ev(&o.global()), "UΩ")?;
    ensure(
        an.knowledge(OperatorKind::GeneralisedKPrime, m.omega())
            .unwrap()
            == ev(&o.kprime(&o.omega())),
        "K'(Ω)",
    )?;
    ensure(an.awareness(ev(&a)).unwrap() == ev(&o.a(&a)), "A({a})")?;
    let witness = |p| {
        let r = check_property(&an, OperatorKind::StandardK, p).unwrap();
        (r.holds, r.witness.map(|w| from_event(w.event)))
    };
    ensure(
        witness(PropertyId::NegativeIntrospection) == (false, Some(a.clone())),
        "NI",
    )?;
    ensure(
        witness(PropertyId::KuIntrospection) == (false, Some(a.clone())),
        "KU",
    )?;
    ensure(witness(PropertyId::AuIntrospection) == (true, None), "AU")?;
    ensure(
        witness(PropertyId::Symmetry) == (false, Some(a.clone())),
        "symmetry",
    )?;
    let v = |c| verify_claim(&m, c).unwrap();
    ensure(v(ClaimId::EqU02).verdict == Verdict::Verified, "eq-u02")?;
    ensure(v(ClaimId::EqU03).verdict == Verdict::Verified, "eq-u03")?;
    let dlr = v(ClaimId::DlrChain);
    ensure(dlr.verdict == Verdict::RefutedStep, "dlr-chain verdict")?;
    let step = dlr
        .first_failed_step()
        .ok_or("dlr-chain has no failing step")?;
    ensure(
        dlr.steps[step - 1].description.starts_with("¬K¬K(U(E))")
            && dlr.steps[step - 1].sets.iter().any(|(n, _)| n == "K(U(E))"),
        format!(
            "dlr-chain fails at `{}`, not the KU step",
            dlr.steps[step - 1].description
        ),
    )?;
    let dlrr = v(ClaimId::DlrrChain);
    ensure(
        dlrr.conclusion().map(|s| s.status) == Some(StepStatus::Holds),
        "dlrr-chain conclusion",
    )?;
    within(start, Duration::from_secs(1), "mirror fixture")?;
    Ok(format!(
        "all pinned values match the oracle in {:?}",
        start.elapsed()
    ))
}

fn invariant_sweeps() -> Check {
    let start = Instant::now();
    let mut scanned = 0;
    for n in 1..=3 {
        let r = invariant_sweep(&EnumSpec::new(n, &[], 1).unwrap()).unwrap();
        ensure(
            r.models_scanned == 1 << (n * n),
            format!("n={n} scanned {}", r.models_scanned),
        )?;
        if let Some(v) = r.violations.first() {
            return Err(format!("n={n}: {} violated at model {}", v.check, v.index));
        }
        scanned += r.models_scanned;
    }
    within(start, Duration::from_secs(5), "n ≤ 3 sweep")?;
    let small = start.elapsed();

    let start = Instant::now();
    let r = invariant_sweep(&EnumSpec::new(4, &[Constraint::Serial], 1).unwrap()).unwrap();
    ensure(
        r.models_scanned == 50_625,
        format!("n=4 serial scanned {}", r.models_scanned),
    )?;
    if let Some(v) = r.violations.first() {
        return Err(format!(
            "n=4 serial: {} violated at model {}",
            v.check, v.index
        ));
    }
    within(start, Duration::from_secs(60), "n = 4 serial sweep")?;
    Ok(format!(
        "{scanned} unconstrained models (n ≤ 3) in {small:?}, 50625 serial n = 4 in {:?}, 0 violations",
        start.elapsed()
    ))
}

fn enumeration_counts() -> Check {
    let oracle_count = oracle::all_serial_models(2)
        .iter()
        .filter(|m| Oracle::from_model(m).nontrivial().is_some())
        .count();
    ensure(
        oracle_count == 3,
        format!("oracle finds {oracle_count} serial n=2 models with unawareness"),
    )?;
    let target = Target::Property {
        property: PropertyId::NontrivialUnawareness,
        operator: OperatorKind::StandardK,
        holds: true,
    };
    for jobs in [1, 2, 8] {
        let o = search(
            &EnumSpec::new(2, &[Constraint::Serial], jobs).unwrap(),
            &target,
            SearchMode::Count,
        )
        .unwrap();
        ensure(
            (o.models_scanned, o.match_count) == (9, 3),
            format!("jobs {jobs}: {} of {}", o.match_count, o.models_scanned),
        )?;
        let o = search(
            &EnumSpec::new(3, &[Constraint::Serial], jobs).unwrap(),
            &target,
            SearchMode::Count,
        )
        .unwrap();
        ensure(
            o.models_scanned == 343,
            format!("n=3 serial scanned {}", o.models_scanned),
        )?;
    }
    for args in [
        &[
            "--format",
            "json",
            "enumerate",
            "-n",
            "2",
            "--serial",
            "--count",
            "nontrivial-unawareness",
        ][..],
        &[
            "--format",
            "json",
            "enumerate",
            "-n",
            "3",
            "--serial",
            "--sweep",
        ],
        &[
            "--format",
            "json",
            "enumerate",
            "-n",
            "3",
            "--serial",
            "--all",
            "nontrivial-unawareness",
        ],
    ] {
        let runs: Vec<(i32, Vec<u8>)> = ["1", "2", "8"]
            .iter()
            .map(|j| {
                let mut a = args.to_vec();
                a.extend(["--jobs", j]);
                cli(&a)
            })
            .collect();
        ensure(runs[0].0 == 0, format!("{args:?} exited {}", runs[0].0))?;
        ensure(
            runs.iter().all(|r| r == &runs[0]),
            format!("{args:?} differs across --jobs"),
        )?;
    }
    let (_, out) = cli(&[
        "--format",
        "json",
        "enumerate",
        "-n",
        "2",
        "--serial",
        "--count",
        "nontrivial-unawareness",
    ]);
    let summary = String::from_utf8(out).unwrap();
    ensure(
        summary.contains("\"match_count\":3") && summary.contains("\"models_scanned\":9"),
        "CLI summary",
    )?;
    Ok("n=2 serial 3 of 9, n=3 serial 343, CLI output identical for --jobs 1/2/8".into())
}

fn fixpoint_correctness() -> Check {
    let mut checked = 0u64;
    let mut discrepancies = 0u64;
    for n in 1..=3 {
        for m in all_models(n) {
            let o = Oracle::from_model(&m);
            for e in Event::all(n) {
                let expected = to_event(n, &o.u(&from_event(e)));
                let fast = unawareness(&m, e).unwrap();
                let full = unawareness_exhaustive(&m, e).unwrap();
                checked += 1;
                discrepancies += (fast != expected || full != fast) as u64;
            }
        }
    }
    ensure(
        discrepancies == 0,
        format!("{discrepancies} discrepancies of {checked}"),
    )?;
    Ok(format!("{checked} (model, event) pairs, 0 discrepancies"))
}

fn partition_fixture() -> Check {
    let m = fixture("partition.model");
    let an = Analyzer::new(&m);
    for kind in OperatorKind::ALL {
        for p in PropertyId::ALL {
            let holds = check_property(&an, kind, p).unwrap().holds;
            ensure(holds != p.is_existential(), format!("{p} under {kind}"))?;
        }
    }
    for c in ClaimId::ALL {
        let v = verify_claim(&m, c).unwrap().verdict;
        ensure(
            matches!(v, Verdict::Verified | Verdict::Vacuous),
            format!("{c} is {v}"),
        )?;
    }
    for e in Event::all(m.len()) {
        ensure(
            an.unawareness(e).unwrap().is_empty(),
            format!("U({}) ≠ ∅", m.format_event(e)),
        )?;
    }
    ensure(
        an.knowledge(OperatorKind::GeneralisedKPrime, m.omega())
            .unwrap()
            == m.omega(),
        "K'(Ω) ≠ Ω",
    )?;
    for (args, code) in [
        (&["check", "-m", "models/partition.model", "--all"][..], 0),
        (&["verify", "-m", "models/partition.model", "--all"], 0),
        (
            &[
                "verify",
                "-m",
                "models/partition.model",
                "--claim",
                "remark1",
            ],
            0,
        ),
        (&["check", "-m", "models/w2.model", "--all"], 3),
        (
            &["verify", "-m", "models/w2.model", "--claim", "dlr-chain"],
            3,
        ),
        (
            &[
                "verify",
                "-m",
                "models/nonserial.model",
                "--claim",
                "discussion-collapse",
            ],
            4,
        ),
        (&["eval", "-m", "models/w2.model", "U(oops"], 2),
        (&["enumerate", "-n", "9", "--sweep"], 1),
    ] {
        let got = cli(args).0;
        ensure(
            got == code,
            format!("{args:?} exited {got}, expected {code}"),
        )?;
    }
    Ok("every property holds, every claim verified or vacuous, U ≡ ∅, K'(Ω) = Ω, exit codes 0/1/2/3/4 as specified".into())
}

/// Every formula of depth at most `depth` over a small leaf set.
fn formulas(depth: usize) -> Vec<Formula> {
    if depth == 0 {
        return vec![
            Formula::Omega,
            Formula::Empty,
            Formula::set(["s0"]),
            Formula::set(["s0", "s1"]),
        ];
    }
    let below = formulas(depth - 1);
    let mut out = below.clone();
    for f in &below {
        for op in [
            Operator::K,
            Operator::KPrime,
            Operator::U,
            Operator::UPrime,
            Operator::A,
            Operator::UIter,
        ] {
            out.push(Formula::apply(op, f.clone()));
        }
        out.push(Formula::complement(f.clone()));
    }
    for l in &below {
        for r in &below {
            for op in [BinOp::Intersect, BinOp::Union, BinOp::Difference] {
                out.push(Formula::binary(op, l.clone(), r.clone()));
            }
        }
    }
    out
}

fn dsl() -> Check {
    ensure(corpus::GOLDEN.len() >= 30, "golden corpus too small")?;
    let m = parse_model(corpus::MIRROR).unwrap();
    let an = Analyzer::new(&m);
    for &(input, canonical, value) in corpus::GOLDEN {
        let f = parse_formula(input).map_err(|e| format!("{input:?}: {e}"))?;
        ensure(
            print_formula(&f) == canonical,
            format!("{input:?} prints differently"),
        )?;
        ensure(
            parse_formula(canonical).as_ref() == Ok(&f),
            format!("{input:?} round trip"),
        )?;
        let got = match eval_formula(&an, &f).map_err(|e| e.to_string())? {
            Value::Set(e) => m.format_event(e),
            Value::Bool(b) => b.to_string(),
        };
        ensure(
            got == value,
            format!("{input:?} evaluates to {got}, expected {value}"),
        )?;
    }
    let text: String = corpus::GOLDEN.iter().map(|g| g.0).collect();
    for needle in [
        "K(", "K'(", "U(", "U'(", "A(", "Uiter(", "~", "&", "|", "\\", "=", "<=", "<", "omega",
        "empty", "{}", ",", "((",
    ] {
        ensure(
            text.contains(needle),
            format!("no golden formula uses `{needle}`"),
        )?;
    }

    let sets = formulas(2);
    let mut round_trips = 0;
    for f in sets.iter().chain(
        formulas(1)
            .iter()
            .flat_map(|l| {
                formulas(1)
                    .into_iter()
                    .map(move |r| Formula::predicate(Relation::Subset, l.clone(), r))
            })
            .collect::<Vec<_>>()
            .iter(),
    ) {
        let printed = print_formula(f);
        ensure(
            parse_formula(&printed).as_ref() == Ok(f),
            format!("round trip of {printed}"),
        )?;
        round_trips += 1;
    }

    let mut agreements = 0;
    for n in 1..=3 {
        for m in all_models(n) {
            let an = Analyzer::new(&m);
            for e in Event::all(n) {
                let lit = m.format_event(e);
                let eval = |op: &str| {
                    eval_formula(&an, &parse_formula(&format!("{op}({lit})")).unwrap())
                        .unwrap()
                        .as_set()
                        .unwrap()
                };
                let global_or_iter = if e.is_full() {
                    an.global_unawareness().unwrap()
                } else {
                    an.unawareness(e).unwrap()
                };
                let pairs = [
                    (eval("K"), an.knowledge(OperatorKind::StandardK, e).unwrap()),
                    (
                        eval("K'"),
                        an.knowledge(OperatorKind::GeneralisedKPrime, e).unwrap(),
                    ),
                    (eval("U"), global_or_iter),
                    (eval("Uiter"), an.unawareness(e).unwrap()),
                    (
                        eval("U'"),
                        an.induced_unawareness(OperatorKind::GeneralisedKPrime, e)
                            .unwrap(),
                    ),
                    (eval("A"), an.awareness(e).unwrap()),
                ];
                for (got, want) in pairs {
                    ensure(got == want, format!("{lit} on {m:?}"))?;
                    agreements += 1;
                }
            }
        }
    }

    for &input in corpus::MALFORMED {
        let e = match parse_formula(input) {
            Ok(_) => return Err(format!("{input:?} parsed")),
            Err(e) => e,
        };
        let lines = input.split('\n').count();
        let line_len = input
            .split('\n')
            .nth(e.line - 1)
            .map_or(0, |l| l.chars().count());
        ensure(
            e.line >= 1 && e.line <= lines && e.column >= 1 && e.column <= line_len + 1,
            format!("{input:?} reports {}:{}", e.line, e.column),
        )?;
    }
    Ok(format!(
        "{} golden formulas, {round_trips} round trips, {agreements} evaluations agree, {} malformed inputs located",
        corpus::GOLDEN.len(),
        corpus::MALFORMED.len()
    ))
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("mirror-model fixture", mirror_fixture),
        ("exhaustive invariant sweeps", invariant_sweeps),
        ("enumeration counts and determinism", enumeration_counts),
        ("fixed-point correctness", fixpoint_correctness),
        ("partition fixture and exit codes", partition_fixture),
        ("formula language", dsl),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
