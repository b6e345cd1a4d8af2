//! Command-line driver: parses expressions over a chosen coefficient field,
//! runs the decomposition and fixing-group operations, and prints results
//! either as text in the expression grammar or as deterministic JSON.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ratdec::casebook::{run_all, run_case, CaseReport};
use ratdec::error::Error;
use ratdec::galois::{
    chains_to_decompositions, classify_group, fixed_field, fixing_group, FiniteUnitGroup,
};
use ratdec::numfield::Field;
use ratdec::parse::{parse_expression, parse_field};
use ratdec::ratfunc::{
    complete_chains, decompose_once, extension_degree_bound, normal_form, same_field,
    DecompositionChain, MoebiusUnit, RationalFunction,
};

#[derive(Parser)]
#[command(
    name = "ratdec",
    about = "Exact decomposition of univariate rational functions over Q and simple number fields",
    version
)]
struct Cli {
    /// Coefficient field: Q (default) or Q[name]/(monic polynomial)
    #[arg(long, global = true, default_value = "Q")]
    field: String,

    /// Emit one JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Append wall-clock milliseconds to the output
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ExprArg {
    /// Expression in x (and the field generator, if any)
    #[arg(allow_hyphen_values = true)]
    expr: String,
}

#[derive(Subcommand)]
enum Command {
    /// Degree of a rational function
    Degree(ExprArg),
    /// Compose two or more functions left to right
    Compose {
        #[arg(num_args = 2.., required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Normalizing units u, v and the normal form u o f o v
    Normalform(ExprArg),
    /// One decomposition step, or all complete chains with --complete
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        complete: bool,
    },
    /// The fixing group G(f) = {u : f o u = f}
    Fixgroup(ExprArg),
    /// Generator of the fixed field of a group of units
    Fixfield {
        #[arg(num_args = 1.., required = true, allow_hyphen_values = true)]
        units: Vec<String>,
    },
    /// Unit u with f1 = u o f2, when K(f1) = K(f2)
    Samefield {
        #[arg(allow_hyphen_values = true)]
        expr1: String,
        #[arg(allow_hyphen_values = true)]
        expr2: String,
    },
    /// Isomorphism type of a group of units
    Classify {
        #[arg(num_args = 1.., required = true, allow_hyphen_values = true)]
        units: Vec<String>,
    },
    /// Complete chains induced by subgroup chains of G(f) (|G(f)| = deg f)
    Chains(ExprArg),
    /// Degree bound for a field containing all decompositions
    Bound(ExprArg),
    /// Run the built-in verification cases (all, or one id like CB-4)
    #[command(name = "verify-paper")]
    VerifyPaper { case: Option<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(mut output) => {
            let ms = start.elapsed().as_millis();
            if cli.json {
                if cli.timing {
                    output
                        .json
                        .as_object_mut()
                        .expect("output object")
                        .insert("timing_ms".into(), json!(ms as u64));
                }
                println!("{}", serde_json::to_string_pretty(&output.json).unwrap());
            } else {
                print!("{}", output.text);
                if cli.timing {
                    println!("time: {} ms", ms);
                }
            }
            if output.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::SyntaxError { .. } | Error::UnknownSymbol(_) | Error::UnknownCase(_) => 2,
        Error::SolveFailed => 4,
        _ => 3,
    }
}

struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Output {
        Output {
            text,
            json,
            failed: false,
        }
    }
}

fn result_object(
    command: &str,
    field: &Field,
    inputs: Value,
    result: Value,
    witnesses: Value,
) -> Value {
    json!({
        "command": command,
        "field": field.to_string(),
        "inputs": inputs,
        "result": result,
        "witnesses": witnesses,
    })
}

fn dispatch(cli: &Cli) -> ratdec::Result<Output> {
    let field = parse_field(&cli.field)?;
    match &cli.command {
        Command::Degree(a) => {
            let f = parse_expression(&a.expr, &field)?;
            let d = f.degree();
            Ok(Output::new(
                format!("{d}\n"),
                result_object(
                    "degree",
                    &field,
                    json!({"f": a.expr}),
                    json!(d),
                    Value::Null,
                ),
            ))
        }
        Command::Compose { exprs } => {
            let fs: Vec<RationalFunction> = exprs
                .iter()
                .map(|e| parse_expression(e, &field))
                .collect::<ratdec::Result<_>>()?;
            let mut acc = fs[0].clone();
            for g in &fs[1..] {
                acc = acc.compose(g)?;
            }
            Ok(Output::new(
                format!("{acc}\n"),
                result_object(
                    "compose",
                    &field,
                    json!({ "functions": exprs }),
                    json!(acc.to_string()),
                    Value::Null,
                ),
            ))
        }
        Command::Normalform(a) => {
            let f = parse_expression(&a.expr, &field)?;
            let (u, v, fbar) = normal_form(&f)?;
            Ok(Output::new(
                format!("u = {u}\nv = {v}\nnormal form = {fbar}\n"),
                result_object(
                    "normalform",
                    &field,
                    json!({"f": a.expr}),
                    json!({
                        "u": u.to_string(),
                        "v": v.to_string(),
                        "normal_form": fbar.to_string(),
                    }),
                    Value::Null,
                ),
            ))
        }
        Command::Decompose { expr, complete } => {
            let f = parse_expression(expr, &field)?;
            if *complete {
                let chains = complete_chains(&f)?;
                let text = render_chains(&chains);
                let arr: Vec<Value> = chains
                    .iter()
                    .map(|c| {
                        json!(c
                            .components
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>())
                    })
                    .collect();
                Ok(Output::new(
                    text,
                    result_object(
                        "decompose",
                        &field,
                        json!({"f": expr, "complete": true}),
                        json!(arr),
                        Value::Null,
                    ),
                ))
            } else {
                let decs = decompose_once(&f)?;
                let mut text = String::new();
                if decs.is_empty() {
                    text.push_str("indecomposable\n");
                }
                for d in &decs {
                    text.push_str(&format!("g = {}\nh = {}\n", d.left, d.right));
                }
                let arr: Vec<Value> = decs
                    .iter()
                    .map(|d| json!({"g": d.left.to_string(), "h": d.right.to_string()}))
                    .collect();
                Ok(Output::new(
                    text,
                    result_object(
                        "decompose",
                        &field,
                        json!({"f": expr, "complete": false}),
                        json!(arr),
                        Value::Null,
                    ),
                ))
            }
        }
        Command::Fixgroup(a) => {
            let f = parse_expression(&a.expr, &field)?;
            let g = fixing_group(&f)?;
            let mut text = String::new();
            for u in g.elements() {
                text.push_str(&format!("{u}\n"));
            }
            let arr: Vec<Value> = g.elements().iter().map(|u| json!(u.to_string())).collect();
            Ok(Output::new(
                text,
                result_object(
                    "fixgroup",
                    &field,
                    json!({"f": a.expr}),
                    json!(arr),
                    json!({"order": g.order()}),
                ),
            ))
        }
        Command::Fixfield { units } => {
            let group = parse_group(units, &field)?;
            let gen = fixed_field(&group)?;
            Ok(Output::new(
                format!("{gen}\n"),
                result_object(
                    "fixfield",
                    &field,
                    json!({ "units": units }),
                    json!(gen.to_string()),
                    json!({"degree": gen.degree()}),
                ),
            ))
        }
        Command::Samefield { expr1, expr2 } => {
            let f1 = parse_expression(expr1, &field)?;
            let f2 = parse_expression(expr2, &field)?;
            let witness = same_field(&f1, &f2)?;
            let text = match &witness {
                Some(u) => format!("{u}\n"),
                None => "none\n".to_string(),
            };
            Ok(Output::new(
                text,
                result_object(
                    "samefield",
                    &field,
                    json!({"f1": expr1, "f2": expr2}),
                    json!(witness.is_some()),
                    match &witness {
                        Some(u) => json!({"unit": u.to_string()}),
                        None => Value::Null,
                    },
                ),
            ))
        }
        Command::Classify { units } => {
            let group = parse_group(units, &field)?;
            let t = classify_group(&group)?;
            Ok(Output::new(
                format!("{t}\n"),
                result_object(
                    "classify",
                    &field,
                    json!({ "units": units }),
                    json!(t.to_string()),
                    json!({"order": group.order()}),
                ),
            ))
        }
        Command::Chains(a) => {
            let f = parse_expression(&a.expr, &field)?;
            let chains = chains_to_decompositions(&f)?;
            let text = render_chains(&chains);
            let arr: Vec<Value> = chains
                .iter()
                .map(|c| {
                    json!(c
                        .components
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>())
                })
                .collect();
            Ok(Output::new(
                text,
                result_object(
                    "chains",
                    &field,
                    json!({"f": a.expr}),
                    json!(arr),
                    Value::Null,
                ),
            ))
        }
        Command::Bound(a) => {
            let f = parse_expression(&a.expr, &field)?;
            let b = extension_degree_bound(&f)?;
            Ok(Output::new(
                format!("{b}\n"),
                result_object(
                    "bound",
                    &field,
                    json!({"f": a.expr}),
                    json!(b.to_string()),
                    Value::Null,
                ),
            ))
        }
        Command::VerifyPaper { case } => {
            let reports = match case {
                Some(id) => vec![run_case(id)?],
                None => run_all()?,
            };
            let mut text = String::new();
            let mut failed = false;
            for r in &reports {
                text.push_str(&render_report(r));
                failed |= !r.passed();
            }
            let arr: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "passed": r.passed(),
                        "checks": r.checks.iter().map(|c| json!({
                            "name": c.name,
                            "passed": c.passed,
                            "detail": c.detail,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut out = Output::new(
                text,
                result_object(
                    "verify-paper",
                    &field,
                    json!({"case": case}),
                    json!(arr),
                    Value::Null,
                ),
            );
            out.failed = failed;
            Ok(out)
        }
    }
}

fn parse_group(units: &[String], field: &Field) -> ratdec::Result<FiniteUnitGroup> {
    let parsed: Vec<MoebiusUnit> = units
        .iter()
        .map(|s| MoebiusUnit::from_rf(&parse_expression(s, field)?))
        .collect::<ratdec::Result<_>>()?;
    FiniteUnitGroup::try_new(field, parsed)
}

fn render_chains(chains: &[DecompositionChain]) -> String {
    let mut text = String::new();
    for (i, c) in chains.iter().enumerate() {
        let parts: Vec<String> = c.components.iter().map(|x| format!("({x})")).collect();
        text.push_str(&format!(
            "chain {} (length {}): {}\n",
            i + 1,
            c.len(),
            parts.join(" o ")
        ));
    }
    text
}

fn render_report(r: &CaseReport) -> String {
    let mut text = String::new();
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    text.push_str(&format!("{} {}\n", verdict, r.id));
    for c in &r.checks {
        let v = if c.passed { "pass" } else { "FAIL" };
        if c.detail.is_empty() {
            text.push_str(&format!("  [{}] {}\n", v, c.name));
        } else {
            text.push_str(&format!("  [{}] {} -- {}\n", v, c.name, c.detail));
        }
    }
    text
}
