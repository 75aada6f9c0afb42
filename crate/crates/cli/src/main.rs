mod args;
mod render;

use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value as Json};
use unaware_core::explorer::SWEEP_CHECKS;
use unaware_core::{
    check_property, eval_formula, invariant_sweep, parse_formula, parse_model_with, print_formula,
    search, verify_claim_with, Analyzer, ClaimId, Constraint, EnumSpec, Error, Event, FormulaError,
    Limits, Model, OperatorKind, PropertyId, PropertyReport, SearchMode, Target, Value, Verdict,
};

use args::{Cli, Command, EnumerateArgs, Expect, Format, OperatorChoice, SingleOperator};

const OK: u8 = 0;
const RESOURCE: u8 = 1;
const USAGE: u8 = 2;
const FAILED: u8 = 3;
const PREMISE_NOT_MET: u8 = 4;

struct Failure {
    code: u8,
    message: String,
    position: Option<(usize, usize)>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            message: message.into(),
            position: None,
        }
    }
}

impl From<FormulaError> for Failure {
    fn from(e: FormulaError) -> Self {
        Failure {
            code: USAGE,
            message: e.to_string(),
            position: Some((e.line, e.column)),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Formula(f) => f.into(),
            e if e.is_resource_limit() => Failure {
                code: RESOURCE,
                message: e.to_string(),
                position: None,
            },
            e => Failure::usage(e.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

struct Ctx {
    format: Format,
    limits: Limits,
    jobs: usize,
    out: String,
}

impl Ctx {
    fn json(&mut self, v: Json) {
        self.out.push_str(&v.to_string());
        self.out.push('\n');
    }

    fn text(&mut self, s: &str) {
        self.out.push_str(s);
    }
}

fn limits_for(max_n: Option<usize>) -> Limits {
    let mut limits = Limits::default();
    if let Some(n) = max_n {
        limits.max_global_states = n;
        limits.max_enumeration_states = n;
        limits.max_states = limits.max_states.max(n);
    }
    limits
}

fn load_model(cli: &Cli, limits: &Limits) -> Result<Model, Failure> {
    let path = cli
        .model
        .as_ref()
        .ok_or_else(|| Failure::usage("this command needs a model: pass -m/--model <PATH>"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_model_with(&text, limits).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn cmd_eval(ctx: &mut Ctx, m: &Model, formula: &str) -> Outcome {
    let f = parse_formula(formula)?;
    let an = Analyzer::with_limits(m, ctx.limits);
    let v = eval_formula(&an, &f)?;
    match ctx.format {
        Format::Table => {
            let s = match v {
                Value::Set(e) => m.format_event(e),
                Value::Bool(b) => b.to_string(),
            };
            ctx.text(&format!("{s}\n"));
        }
        Format::Json => {
            ctx.json(render::model_record(m, None));
            let (ty, value) = match v {
                Value::Set(e) => ("set", render::labels(m, e)),
                Value::Bool(b) => ("bool", json!(b)),
            };
            ctx.json(json!({
                "kind": "summary",
                "command": "eval",
                "formula": print_formula(&f),
                "type": ty,
                "value": value,
            }));
        }
    }
    Ok(OK)
}

fn cmd_check(
    ctx: &mut Ctx,
    m: &Model,
    properties: &[String],
    all: bool,
    operator: OperatorChoice,
) -> Outcome {
    let wanted: Vec<PropertyId> = if all {
        PropertyId::ALL.to_vec()
    } else {
        properties
            .iter()
            .map(|p| p.parse())
            .collect::<Result<_, Error>>()?
    };
    let kinds: &[OperatorKind] = match operator {
        OperatorChoice::K => &[OperatorKind::StandardK],
        OperatorChoice::Kprime => &[OperatorKind::GeneralisedKPrime],
        OperatorChoice::Both => &OperatorKind::ALL,
    };
    let an = Analyzer::with_limits(m, ctx.limits);
    let mut reports: Vec<PropertyReport> = Vec::new();
    for &p in &wanted {
        for &kind in kinds {
            reports.push(check_property(&an, kind, p)?);
        }
    }
    let failed = reports
        .iter()
        .filter(|r| !r.holds && !r.property.is_existential())
        .count();
    let code = if failed > 0 { FAILED } else { OK };

    match ctx.format {
        Format::Table => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.property.cli_name(),
                        r.operator.symbol().to_string(),
                        if r.holds { "yes" } else { "no" }.to_string(),
                        render::witness_text(m, r),
                    ]
                })
                .collect();
            let t = render::table(&["property", "operator", "holds", "witness"], &rows);
            ctx.text(&t);
            ctx.text(&format!(
                "{} checked, {failed} normative failure{}\n",
                reports.len(),
                if failed == 1 { "" } else { "s" }
            ));
        }
        Format::Json => {
            ctx.json(render::model_record(m, None));
            for r in &reports {
                ctx.json(render::property_record(m, r));
            }
            ctx.json(json!({
                "kind": "summary",
                "command": "check",
                "checked": reports.len(),
                "failed": failed,
                "exit_code": code,
            }));
        }
    }
    Ok(code)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Verified | Verdict::VerifiedConclusion | Verdict::Vacuous => OK,
        Verdict::RefutedStep => FAILED,
        Verdict::PremiseNotMet => PREMISE_NOT_MET,
    }
}

fn eval_event(an: &Analyzer<'_>, text: &str) -> Result<Event, Failure> {
    let f = parse_formula(text)?;
    match eval_formula(an, &f)? {
        Value::Set(e) => Ok(e),
        Value::Bool(_) => Err(Failure::usage(
            "--event must be a set expression, not a predicate",
        )),
    }
}

fn cmd_verify(
    ctx: &mut Ctx,
    m: &Model,
    claim: Option<&str>,
    all: bool,
    event: Option<&str>,
) -> Outcome {
    let claims: Vec<ClaimId> = if all {
        ClaimId::ALL.to_vec()
    } else {
        vec![claim.unwrap_or_default().parse()?]
    };
    let an = Analyzer::with_limits(m, ctx.limits);
    let event = event.map(|t| eval_event(&an, t)).transpose()?;
    let mut reports = Vec::with_capacity(claims.len());
    for c in claims {
        reports.push(verify_claim_with(&an, c, event)?);
    }
    // Refutation outranks an unmet premise.
    let code = reports
        .iter()
        .map(|r| verdict_code(r.verdict))
        .max_by_key(|&c| match c {
            FAILED => 2,
            PREMISE_NOT_MET => 1,
            _ => 0,
        })
        .unwrap_or(OK);

    match ctx.format {
        Format::Table => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    ctx.text("\n");
                }
                ctx.text(&render::claim_text(m, r));
            }
        }
        Format::Json => {
            ctx.json(render::model_record(m, None));
            for r in &reports {
                ctx.json(render::claim_record(m, r));
            }
            ctx.json(json!({
                "kind": "summary",
                "command": "verify",
                "claims": reports.len(),
                "exit_code": code,
            }));
        }
    }
    Ok(code)
}

fn constraints(a: &EnumerateArgs) -> Vec<Constraint> {
    [
        (a.serial, Constraint::Serial),
        (a.reflexive, Constraint::Reflexive),
        (a.transitive, Constraint::Transitive),
        (a.euclidean, Constraint::Euclidean),
        (a.partitional, Constraint::Partitional),
        (a.non_partitional, Constraint::NonPartitional),
    ]
    .into_iter()
    .filter_map(|(on, c)| on.then_some(c))
    .collect()
}

fn parse_target(a: &EnumerateArgs, text: &str) -> Result<Target, Failure> {
    if let Some(id) = text.strip_prefix("claim:") {
        let verdict: Verdict = a.verdict.parse().map_err(Failure::usage)?;
        return Ok(Target::Claim {
            claim: id.parse()?,
            verdict,
        });
    }
    if let Some(src) = text.strip_prefix("formula:") {
        let f = parse_formula(src)?;
        if !f.is_predicate() {
            return Err(Error::NotAPredicate.into());
        }
        return Ok(Target::Formula(f));
    }
    let property: PropertyId = text.strip_prefix("property:").unwrap_or(text).parse()?;
    Ok(Target::Property {
        property,
        operator: match a.operator {
            SingleOperator::K => OperatorKind::StandardK,
            SingleOperator::Kprime => OperatorKind::GeneralisedKPrime,
        },
        holds: a.expect == Expect::Holds,
    })
}

fn target_label(t: &Target) -> String {
    match t {
        Target::Property {
            property,
            operator,
            holds,
        } => format!(
            "{property} under {} {}",
            operator.symbol(),
            if *holds { "holds" } else { "fails" }
        ),
        Target::Claim { claim, verdict } => format!("claim {claim} is {verdict}"),
        Target::Formula(f) => format!("formula {}", print_formula(f)),
    }
}

fn spec_json(spec: &EnumSpec) -> (Json, Json) {
    let cs: Vec<&str> = spec.constraints().iter().map(|c| c.as_str()).collect();
    (json!(spec.n()), json!(cs))
}

fn cmd_enumerate(ctx: &mut Ctx, a: &EnumerateArgs) -> Outcome {
    let spec = EnumSpec::with_limits(a.n, &constraints(a), ctx.jobs, ctx.limits)?;
    if a.sweep {
        return sweep(ctx, &spec);
    }
    let (mode, text) = match (&a.count, &a.first, &a.all) {
        (Some(t), _, _) => (SearchMode::Count, t),
        (_, Some(t), _) => (SearchMode::First, t),
        (_, _, Some(t)) => (SearchMode::All, t),
        _ => return list(ctx, &spec),
    };
    let target = parse_target(a, text)?;
    let outcome = search(&spec, &target, mode)?;
    let mode_name = match mode {
        SearchMode::Count => "count",
        SearchMode::First => "first",
        SearchMode::All => "all",
    };
    match ctx.format {
        Format::Table => {
            for (i, m) in &outcome.matches {
                ctx.text(&format!("{i}: {}\n", render::correspondence_text(m)));
            }
            ctx.text(&format!(
                "{}: {} of {} models scanned\n",
                target_label(&target),
                outcome.match_count,
                outcome.models_scanned
            ));
        }
        Format::Json => {
            for (i, m) in &outcome.matches {
                ctx.json(json!({
                    "kind": "match",
                    "index": i,
                    "model": m.to_json_value(),
                }));
            }
            let (n, cs) = spec_json(&spec);
            ctx.json(json!({
                "kind": "summary",
                "command": "enumerate",
                "n": n,
                "constraints": cs,
                "mode": mode_name,
                "target": text,
                "models_scanned": outcome.models_scanned,
                "match_count": outcome.match_count,
            }));
        }
    }
    Ok(OK)
}

fn list(ctx: &mut Ctx, spec: &EnumSpec) -> Outcome {
    let mut scanned = 0u64;
    for (i, m) in unaware_core::enumerate_models(spec) {
        scanned += 1;
        match ctx.format {
            Format::Table => ctx.text(&format!("{i}: {}\n", render::correspondence_text(&m))),
            Format::Json => ctx.json(render::model_record(&m, Some(i))),
        }
    }
    match ctx.format {
        Format::Table => ctx.text(&format!("{scanned} models\n")),
        Format::Json => {
            let (n, cs) = spec_json(spec);
            ctx.json(json!({
                "kind": "summary",
                "command": "enumerate",
                "n": n,
                "constraints": cs,
                "mode": "list",
                "models_scanned": scanned,
                "match_count": scanned,
            }));
        }
    }
    Ok(OK)
}

fn sweep(ctx: &mut Ctx, spec: &EnumSpec) -> Outcome {
    let report = invariant_sweep(spec)?;
    let code = if report.violations.is_empty() {
        OK
    } else {
        FAILED
    };
    match ctx.format {
        Format::Table => {
            for v in &report.violations {
                ctx.text(&format!(
                    "violation of {} at {}: {}\n",
                    v.check,
                    v.index,
                    render::correspondence_text(&v.model)
                ));
            }
            ctx.text(&format!(
                "{} models scanned, {} violations across {} checks\n\n",
                report.models_scanned,
                report.violations.len(),
                SWEEP_CHECKS.len()
            ));
            let rows: Vec<Vec<String>> = PropertyId::ALL
                .iter()
                .map(|p| {
                    let k = report.counts[&p.cli_name()];
                    let kp = report.counts[&format!("kprime.{}", p.cli_name())];
                    vec![p.cli_name(), k.to_string(), kp.to_string()]
                })
                .collect();
            ctx.text(&render::table(&["holds on", "K", "K'"], &rows));
        }
        Format::Json => {
            for v in &report.violations {
                ctx.json(json!({
                    "kind": "match",
                    "index": v.index,
                    "check": v.check,
                    "model": v.model.to_json_value(),
                }));
            }
            let (n, cs) = spec_json(spec);
            ctx.json(json!({
                "kind": "summary",
                "command": "sweep",
                "n": n,
                "constraints": cs,
                "checks": SWEEP_CHECKS,
                "models_scanned": report.models_scanned,
                "violations": report.violations.len(),
                "counts": report.counts,
                "exit_code": code,
            }));
        }
    }
    Ok(code)
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Outcome {
    match &cli.command {
        Command::Eval { formula } => {
            let m = load_model(cli, &ctx.limits)?;
            cmd_eval(ctx, &m, formula)
        }
        Command::Check {
            property,
            all,
            operator,
        } => {
            let m = load_model(cli, &ctx.limits)?;
            cmd_check(ctx, &m, property, *all, *operator)
        }
        Command::Verify { claim, all, event } => {
            let m = load_model(cli, &ctx.limits)?;
            cmd_verify(ctx, &m, claim.as_deref(), *all, event.as_deref())
        }
        Command::Enumerate(a) => cmd_enumerate(ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx {
        format: cli.format,
        limits: limits_for(cli.max_n),
        jobs: cli
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        out: String::new(),
    };
    let code = match run(&cli, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            if ctx.format == Format::Json {
                let mut rec = json!({
                    "kind": "error",
                    "exit_code": f.code,
                    "message": f.message,
                });
                if let Some((line, column)) = f.position {
                    rec["line"] = json!(line);
                    rec["column"] = json!(column);
                }
                ctx.json(rec);
            }
            f.code
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(ctx.out.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(code)
}
