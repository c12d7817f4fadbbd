use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use leibniz::heisenberg::{evaluate_terms, Assignment, HElement};
use leibniz::scalar::{format_rational, parse_rational};
use leibniz::symfunc::{decompose, module_character, CharacterDecomposition};
use leibniz::term::{parse_lincomb, reduce_lincomb, Generator};
use leibniz::v3basis::{enumerate_theta, ordered_coordinates, reduce_to_theta, verify_theorem2_with, ThetaCheckOptions};
use leibniz::variety::{
    builtin_variety, check_condition_3_bounded, colength_profile_bounded, is_identity_in,
    solve_condition_3_bounded, tideal_multilinear_bounded, tideal_tower, Variety,
};
use leibniz::{Error, Rational, Result};
use serde_json::{json, Value};

use crate::{Format, VarietyArg};

pub struct Context {
    pub format: Format,
    pub bound: usize,
}

impl Context {
    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.bound {
            return Err(Error::DegreeBound {
                degree: n,
                bound: self.bound,
            });
        }
        Ok(())
    }
}

fn variety(arg: &VarietyArg) -> Result<Variety> {
    match (&arg.variety, &arg.variety_file) {
        (Some(name), None) => builtin_variety(name),
        (None, Some(path)) => Variety::load(path),
        _ => Err(Error::InvalidArgument("give one of --variety or --variety-file".into())),
    }
}

fn json_doc(mut body: Value) -> String {
    body["schema"] = json!(1);
    let mut s = serde_json::to_string_pretty(&body).expect("serializable");
    s.push('\n');
    s
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

/// Quotes a CSV field when it holds a separator.
fn field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn q(x: &Rational) -> String {
    format_rational(x)
}

pub fn reduce(ctx: &Context, text: &str) -> Result<String> {
    let r = reduce_lincomb(&parse_lincomb(text)?);
    Ok(match ctx.format {
        Format::Text => format!("{r}\n"),
        Format::Json => json_doc(json!({
            "input": text,
            "result": r.iter().map(|(w, c)| json!({"word": w.to_string(), "coeff": q(c)})).collect::<Vec<_>>(),
        })),
        Format::Csv => csv("word,coeff", r.iter().map(|(w, c)| format!("{w},{}", q(c)))),
    })
}

pub fn dim(ctx: &Context, arg: &VarietyArg, n: usize) -> Result<String> {
    let v = variety(arg)?;
    ctx.check_n(n)?;
    let d = tideal_multilinear_bounded(&v, n, ctx.bound)?.dimension();
    Ok(match ctx.format {
        Format::Text => format!("{d}\n"),
        Format::Json => json_doc(json!({"variety": v.name, "n": n, "dimension": d})),
        Format::Csv => csv("variety,n,dimension", [format!("{},{n},{d}", field(&v.name))]),
    })
}

pub fn basis(ctx: &Context, n: usize) -> Result<String> {
    ctx.check_n(n)?;
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let thetas = enumerate_theta(n);
    Ok(match ctx.format {
        Format::Text => {
            let mut s = String::new();
            for t in &thetas {
                writeln!(s, "{t}").unwrap();
            }
            writeln!(s, "{} elements", thetas.len()).unwrap();
            s
        }
        Format::Json => json_doc(json!({
            "n": n,
            "count": thetas.len(),
            "basis": thetas.iter().map(|t| json!({"theta": t.to_string(), "term": t.to_term().to_string()})).collect::<Vec<_>>(),
        })),
        Format::Csv => csv(
            "theta,term",
            thetas.iter().map(|t| format!("{},{}", field(&t.to_string()), t.to_term())),
        ),
    })
}

pub fn theta_reduce(ctx: &Context, text: &str, n: Option<usize>) -> Result<String> {
    let e = parse_lincomb(text)?;
    let n = match n {
        Some(n) => n,
        None => e
            .basis_elements()
            .flat_map(|t| t.leaves())
            .map(|g| g.index() as usize)
            .max()
            .unwrap_or(0),
    };
    ctx.check_n(n)?;
    let coords = ordered_coordinates(&reduce_to_theta(&e, n)?);
    Ok(match ctx.format {
        Format::Text => {
            if coords.is_empty() {
                return Ok("0\n".into());
            }
            let mut s = String::new();
            for (t, c) in &coords {
                writeln!(s, "{} * {t}", q(c)).unwrap();
            }
            s
        }
        Format::Json => json_doc(json!({
            "input": text,
            "n": n,
            "coordinates": coords.iter().map(|(t, c)| json!({"theta": t.to_string(), "coeff": q(c)})).collect::<Vec<_>>(),
        })),
        Format::Csv => csv(
            "theta,coeff",
            coords.iter().map(|(t, c)| format!("{},{}", field(&t.to_string()), q(c))),
        ),
    })
}

pub fn check(ctx: &Context, file: &Path, arg: &VarietyArg) -> Result<String> {
    let v = variety(arg)?;
    let ids = Variety::load(file)?;
    let degree = ids
        .identities
        .iter()
        .flat_map(|id| id.multilinear_components())
        .map(|(d, _)| d)
        .max()
        .unwrap_or(1);
    ctx.check_n(degree)?;
    let tower = tideal_tower(&v, degree, ctx.bound)?;
    let results = ids
        .identities
        .iter()
        .map(|id| Ok((id.name.clone(), is_identity_in(&tower, &id.element)?)))
        .collect::<Result<Vec<_>>>()?;
    let all = results.iter().all(|(_, ok)| *ok);
    Ok(match ctx.format {
        Format::Text => {
            let mut s = String::new();
            for (name, ok) in &results {
                writeln!(s, "{name}: {ok}").unwrap();
            }
            writeln!(s, "all hold: {all}").unwrap();
            s
        }
        Format::Json => json_doc(json!({
            "variety": v.name,
            "identities": results.iter().map(|(name, ok)| json!({"name": name, "holds": ok})).collect::<Vec<_>>(),
            "all_hold": all,
        })),
        Format::Csv => csv(
            "identity,holds",
            results.iter().map(|(name, ok)| format!("{},{ok}", field(name))),
        ),
    })
}

fn decomposition_json(d: &CharacterDecomposition) -> Value {
    json!(d
        .nonzero()
        .map(|(l, m)| json!({"lambda": l.parts(), "multiplicity": m}))
        .collect::<Vec<_>>())
}

pub fn colength(ctx: &Context, arg: &VarietyArg, nmax: usize) -> Result<String> {
    let v = variety(arg)?;
    ctx.check_n(nmax)?;
    let rows = colength_profile_bounded(&v, nmax, ctx.bound)?;
    Ok(match ctx.format {
        Format::Text => {
            let mut s = format!("{:>3} {:>6} {:>4}\n", "n", "dim", "l_n");
            for r in &rows {
                writeln!(s, "{:>3} {:>6} {:>4}", r.n, r.dimension, r.colength).unwrap();
            }
            s
        }
        Format::Json => json_doc(json!({
            "variety": v.name,
            "rows": rows.iter().map(|r| json!({
                "n": r.n,
                "dimension": r.dimension,
                "colength": r.colength,
                "decomposition": decomposition_json(&r.decomposition),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => csv(
            "n,lambda,m_lambda,l_n",
            rows.iter().flat_map(|r| {
                r.decomposition
                    .nonzero()
                    .map(|(l, m)| format!("{},{},{m},{}", r.n, field(&l.to_string()), r.colength))
                    .collect::<Vec<_>>()
            }),
        ),
    })
}

pub fn character(ctx: &Context, arg: &VarietyArg, n: usize) -> Result<String> {
    let v = variety(arg)?;
    ctx.check_n(n)?;
    let quotient = tideal_multilinear_bounded(&v, n, ctx.bound)?;
    let chi = module_character(&quotient);
    let d = decompose(&chi)?;
    let l = leibniz::symfunc::colength(&d);
    if d.dimension() != quotient.dimension() {
        return Err(Error::Invariant(format!(
            "Σ m_λ dim λ = {} but dim P_{n} = {}",
            d.dimension(),
            quotient.dimension()
        )));
    }
    Ok(match ctx.format {
        Format::Text => {
            let mut s = String::new();
            for (mu, x) in chi.values() {
                writeln!(s, "chi{mu} = {}", q(x)).unwrap();
            }
            for (lambda, m) in d.nonzero() {
                writeln!(s, "m_{lambda} = {m}").unwrap();
            }
            writeln!(s, "l_{n} = {l}").unwrap();
            s
        }
        Format::Json => json_doc(json!({
            "variety": v.name,
            "n": n,
            "dimension": quotient.dimension(),
            "character": chi.values().iter().map(|(mu, x)| json!({"mu": mu.parts(), "value": q(x)})).collect::<Vec<_>>(),
            "decomposition": decomposition_json(&d),
            "colength": l,
        })),
        Format::Csv => csv(
            "n,lambda,m_lambda,l_n",
            d.nonzero().map(|(lambda, m)| format!("{n},{},{m},{l}", field(&lambda.to_string()))),
        ),
    })
}

pub fn verify_theorem2(ctx: &Context, n: usize, fdeg: Option<usize>, seed: u64) -> Result<String> {
    ctx.check_n(n)?;
    let opts = ThetaCheckOptions {
        fdeg,
        seed,
        bound: ctx.bound,
        ..ThetaCheckOptions::default()
    };
    let report = verify_theorem2_with(n, opts)?;
    let out = match ctx.format {
        Format::Text => format!("{report}\n"),
        Format::Json => {
            let mut body = serde_json::to_value(&report).expect("serializable");
            body["passed"] = json!(report.passed());
            json_doc(body)
        }
        Format::Csv => csv(
            "n,theta_count,quotient_dimension,independence_rank,evaluation_failures,ideal_failures,passed",
            [format!(
                "{},{},{},{},{},{},{}",
                report.n,
                report.theta_count,
                report.quotient_dimension,
                report.independence_rank,
                report.evaluation_failures,
                report.ideal_failures,
                report.passed()
            )],
        ),
    };
    if !report.passed() {
        print!("{out}");
        return Err(Error::Invariant(format!("theta-basis verification failed at n = {n}")));
    }
    Ok(out)
}

fn parse_alphas(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|s| parse_rational(s.trim())).collect()
}

pub fn condition3(ctx: &Context, arg: &VarietyArg, k: usize, m: usize, alphas: Option<&str>) -> Result<String> {
    let v = variety(arg)?;
    ctx.check_n(m + 2)?;
    match alphas {
        Some(text) => {
            let alphas = parse_alphas(text)?;
            let holds = check_condition_3_bounded(&v, k, m, &alphas, ctx.bound)?;
            let shown: Vec<String> = alphas.iter().map(q).collect();
            Ok(match ctx.format {
                Format::Text => format!("{holds}\n"),
                Format::Json => json_doc(json!({
                    "variety": v.name, "k": k, "m": m, "alphas": shown, "holds": holds,
                })),
                Format::Csv => csv("k,m,alphas,holds", [format!("{k},{m},{},{holds}", field(&shown.join(",")))]),
            })
        }
        None => {
            let solution = solve_condition_3_bounded(&v, k, m, ctx.bound)?;
            let shown = solution.as_ref().map(|a| a.iter().map(q).collect::<Vec<_>>());
            Ok(match ctx.format {
                Format::Text => match &shown {
                    Some(a) => format!("alphas = {}\n", a.join(", ")),
                    None => "no solution\n".into(),
                },
                Format::Json => json_doc(json!({
                    "variety": v.name, "k": k, "m": m, "solution": shown,
                })),
                Format::Csv => csv(
                    "k,m,solution",
                    [format!("{k},{m},{}", field(&shown.map_or("none".into(), |a| a.join(","))))],
                ),
            })
        }
    }
}

pub fn eval(ctx: &Context, text: &str, assignment: &Path) -> Result<String> {
    let e = parse_lincomb(text)?;
    let raw = std::fs::read_to_string(assignment)
        .map_err(|err| Error::Io(format!("{}: {err}", assignment.display())))?;
    let map: BTreeMap<String, String> =
        serde_json::from_str(&raw).map_err(|err| Error::Parse {
            position: err.column(),
            message: err.to_string(),
        })?;
    let mut a = Assignment::new();
    for (name, value) in &map {
        let g: Generator = name
            .strip_prefix('x')
            .and_then(|i| i.parse::<u32>().ok())
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("bad generator name `{name}`"),
            })
            .and_then(Generator::new)?;
        a.insert(g, value.parse::<HElement>()?);
    }
    let value = evaluate_terms(&e, &a)?;
    Ok(match ctx.format {
        Format::Text => format!("{value}\n"),
        Format::Json => json_doc(json!({"input": text, "value": value.to_string()})),
        Format::Csv => csv("input,value", [format!("{},{}", field(text), field(&value.to_string()))]),
    })
}
