//! Session-level operations. Each returns printable text and a report entry.

use std::collections::BTreeMap;
use std::time::Instant;

use mmlab::certificate::{Restriction, SearchOutcome};
use mmlab::parse::{parse_polynomial_list, render_ideal, Task};
use mmlab::report::{Check, Params, Timings};
use mmlab::{
    min_certificate_degree, parse_polynomial, BaseOrder, CertificateQuery, ClaimReport, Error, FieldSpec, Ideal,
    MonomialOrder, Polynomial, Result, SessionFile, Witness,
};
use serde_json::{json, Value};

pub struct Outcome {
    pub text: String,
    pub report: ClaimReport,
}

/// `grevlex`, `lex`, `block:x,y` (grevlex inside) or `block-lex:x,y`.
pub fn parse_order(session: &SessionFile, spec: &str) -> Result<MonomialOrder> {
    let block = |names: &str, inner| -> Result<MonomialOrder> {
        let names: Vec<&str> = names.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Ok(MonomialOrder::Block {
            eliminate: session.ring.var_set(&names)?,
            inner,
        })
    };
    match spec {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        s if s.starts_with("block:") => block(&s[6..], BaseOrder::GrevLex),
        s if s.starts_with("block-lex:") => block(&s[10..], BaseOrder::Lex),
        other => Err(Error::Unsupported(format!("unknown order `{other}`"))),
    }
}

/// A declared ideal, or a literal generator list.
pub fn resolve_ideal(session: &SessionFile, text: &str) -> Result<Ideal> {
    match session.ideals.get(text) {
        Some(gens) => Ideal::new(&session.ring, gens.clone()),
        None => Ideal::new(&session.ring, parse_polynomial_list(text, &session.ring)?),
    }
}

/// A declared polynomial or ideal name with one generator, or a literal.
pub fn resolve_poly(session: &SessionFile, text: &str) -> Result<Polynomial> {
    if let Some(p) = session.polys.get(text) {
        return Ok(p.clone());
    }
    parse_polynomial(text, &session.ring)
}

fn report(claim: &str, session: &SessionFile, pass: bool, extra: Vec<(&str, Value)>, witness: Option<Witness>, start: Instant) -> ClaimReport {
    ClaimReport {
        claim: claim.to_string(),
        params: Params {
            d: None,
            field: session.ring.field().to_string(),
            mode: None,
            profile: None,
            extra: extra.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        },
        pass,
        witness: if pass { witness } else { witness.or(Some(Witness::Error { message: format!("{claim} is false") })) },
        checks: vec![Check {
            name: claim.to_string(),
            pass,
            detail: None,
        }],
        timings: Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            steps: BTreeMap::new(),
        },
    }
}

pub fn gb(session: &SessionFile, ideal: &str, order: &str) -> Result<Outcome> {
    let start = Instant::now();
    let i = resolve_ideal(session, ideal)?;
    let basis = i.groebner(parse_order(session, order)?)?;
    let text = render_ideal(basis.elements());
    let r = report(
        "gb",
        session,
        true,
        vec![("ideal", json!(ideal)), ("order", json!(order)), ("basis", json!(text))],
        None,
        start,
    );
    Ok(Outcome { text, report: r })
}

pub fn nf(session: &SessionFile, ideal: &str, poly: &str) -> Result<Outcome> {
    let start = Instant::now();
    let i = resolve_ideal(session, ideal)?;
    let f = resolve_poly(session, poly)?;
    let text = i.normal_form(&f)?.to_string();
    let r = report("nf", session, true, vec![("ideal", json!(ideal)), ("normal_form", json!(text))], None, start);
    Ok(Outcome { text, report: r })
}

pub fn member(session: &SessionFile, ideal: &str, poly: &str, radical: bool) -> Result<Outcome> {
    let start = Instant::now();
    let i = resolve_ideal(session, ideal)?;
    let f = resolve_poly(session, poly)?;
    let (name, yes) = if radical {
        ("radical_member", i.radical_member(&f)?)
    } else {
        ("member", i.contains(&f)?)
    };
    let witness = (!yes && !radical).then(|| Witness::NormalForm {
        polynomial: f.to_string(),
        normal_form: i.normal_form(&f).map(|p| p.to_string()).unwrap_or_default(),
    });
    let r = report(name, session, yes, vec![("ideal", json!(ideal)), ("polynomial", json!(f.to_string()))], witness, start);
    Ok(Outcome {
        text: yes.to_string(),
        report: r,
    })
}

pub fn equal(session: &SessionFile, a: &str, b: &str) -> Result<Outcome> {
    let start = Instant::now();
    let (x, y) = (resolve_ideal(session, a)?, resolve_ideal(session, b)?);
    let yes = x.equals(&y)?;
    let witness = if yes {
        None
    } else {
        let mut w = None;
        'outer: for (p, q, pn, qn) in [(&x, &y, a, b), (&y, &x, b, a)] {
            for g in p.gb()?.elements() {
                if !q.contains(g)? {
                    w = Some(Witness::Separator {
                        polynomial: g.to_string(),
                        member_of: pn.to_string(),
                        not_member_of: qn.to_string(),
                    });
                    break 'outer;
                }
            }
        }
        w
    };
    let r = report("equal", session, yes, vec![("left", json!(a)), ("right", json!(b))], witness, start);
    Ok(Outcome {
        text: yes.to_string(),
        report: r,
    })
}

pub fn dim(session: &SessionFile, ideal: &str) -> Result<Outcome> {
    let start = Instant::now();
    let d = resolve_ideal(session, ideal)?.dimension()?;
    let r = report("dim", session, true, vec![("ideal", json!(ideal)), ("dimension", json!(d))], None, start);
    Ok(Outcome {
        text: d.to_string(),
        report: r,
    })
}

fn ideal_result(name: &str, session: &SessionFile, i: &Ideal, extra: Vec<(&str, Value)>, start: Instant) -> Result<Outcome> {
    let text = render_ideal(i.gb()?.elements());
    let mut extra = extra;
    extra.push(("basis", json!(text)));
    Ok(Outcome {
        report: report(name, session, true, extra, None, start),
        text,
    })
}

pub fn intersect(session: &SessionFile, a: &str, b: &str) -> Result<Outcome> {
    let start = Instant::now();
    let i = resolve_ideal(session, a)?.intersect(&resolve_ideal(session, b)?)?;
    ideal_result("intersect", session, &i, vec![("left", json!(a)), ("right", json!(b))], start)
}

/// `I : f` when `by` is a polynomial, `I : J` when it names an ideal.
pub fn colon(session: &SessionFile, a: &str, by: &str) -> Result<Outcome> {
    let start = Instant::now();
    let i = resolve_ideal(session, a)?;
    let q = if session.ideals.contains_key(by) {
        i.colon_ideal(&resolve_ideal(session, by)?)?
    } else {
        i.colon(&resolve_poly(session, by)?)?
    };
    ideal_result("colon", session, &q, vec![("ideal", json!(a)), ("by", json!(by))], start)
}

pub fn eliminate<S: AsRef<str>>(session: &SessionFile, a: &str, vars: &[S]) -> Result<Outcome> {
    let start = Instant::now();
    let i = resolve_ideal(session, a)?.eliminate_names(vars)?;
    let names: Vec<&str> = vars.iter().map(|v| v.as_ref()).collect();
    ideal_result("eliminate", session, &i, vec![("ideal", json!(a)), ("vars", json!(names))], start)
}

/// Smallest certificate degree of `target` against a generator list.
pub fn cert(
    claim_params: Params,
    target: &Polynomial,
    gens: Vec<Polynomial>,
    max_deg: u32,
    restriction: Restriction,
) -> Result<Outcome> {
    let start = Instant::now();
    let mode = restriction.name();
    let q = CertificateQuery::new(target.clone(), gens, max_deg).restrict(restriction);
    let outcome = min_certificate_degree(&q)?;
    let mut params = claim_params;
    params.extra.insert("target".into(), json!(target.to_string()));
    params.extra.insert("restriction".into(), json!(mode));
    params.extra.insert("max_deg".into(), json!(max_deg));
    let probes: Vec<Value> = outcome
        .probes()
        .iter()
        .map(|p| json!({ "degree_bound": p.degree_bound, "feasible": p.certificate.is_some(), "stats": p.stats }))
        .collect();
    params.extra.insert("probes".into(), json!(probes));
    let (text, pass, witness) = match &outcome {
        SearchOutcome::Found {
            degree,
            certificate,
            probes,
        } => {
            let stats = probes.last().expect("probe").stats;
            let mut text = format!(
                "D* = {degree}\nsystem: {} unknowns x {} rows ({} x {} after pruning)\n",
                stats.unknowns, stats.rows, stats.pruned_unknowns, stats.pruned_rows
            );
            for (k, c) in certificate.coefficients.iter().enumerate() {
                text.push_str(&format!("r{} = {c}\n", k + 1));
            }
            params.extra.insert("d_star".into(), json!(degree));
            let w = Witness::Certificate {
                degree: *degree,
                coefficients: certificate.coefficients.iter().map(|c| c.to_string()).collect(),
                stats,
            };
            (text.trim_end().to_string(), true, Some(w))
        }
        SearchOutcome::NoneUpTo { max, .. } => (
            format!("no certificate up to degree {max}"),
            false,
            Some(Witness::Mismatch {
                expected: "a certificate".into(),
                observed: format!("none up to degree {max}"),
            }),
        ),
    };
    let report = ClaimReport {
        claim: "cert".into(),
        params,
        pass,
        witness,
        checks: vec![Check {
            name: "certificate found".into(),
            pass,
            detail: outcome.degree().map(|d| format!("D* = {d}")),
        }],
        timings: Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            steps: BTreeMap::new(),
        },
    };
    Ok(Outcome { text, report })
}

pub fn session_params(session: &SessionFile) -> Params {
    Params {
        d: None,
        field: session.ring.field().to_string(),
        mode: None,
        profile: None,
        extra: BTreeMap::new(),
    }
}

fn arg<'a>(task: &'a Task, k: usize) -> Result<&'a str> {
    task.args
        .get(k)
        .map(String::as_str)
        .ok_or_else(|| Error::parse(task.line, 1, format!("task `{}` needs at least {} argument(s)", task.name, k + 1)))
}

/// Runs one session task; `verify` tasks are handled by the caller.
pub fn run_task(session: &SessionFile, task: &Task) -> Result<Outcome> {
    match task.name.as_str() {
        "gb" => gb(session, arg(task, 0)?, task.params.get("order").map_or("grevlex", String::as_str)),
        "nf" => nf(session, arg(task, 0)?, arg(task, 1)?),
        "member" => member(session, arg(task, 0)?, arg(task, 1)?, false),
        "radical_member" => member(session, arg(task, 0)?, arg(task, 1)?, true),
        "equal" => equal(session, arg(task, 0)?, arg(task, 1)?),
        "dim" => dim(session, arg(task, 0)?),
        "intersect" => intersect(session, arg(task, 0)?, arg(task, 1)?),
        "colon" => colon(session, arg(task, 0)?, arg(task, 1)?),
        "eliminate" => eliminate(session, arg(task, 0)?, &task.args[1..]),
        "cert" => {
            let gens = resolve_ideal(session, arg(task, 0)?)?.gens().to_vec();
            let target = resolve_poly(session, arg(task, 1)?)?;
            let max = task
                .params
                .get("max_deg")
                .map(|v| v.parse::<u32>())
                .transpose()
                .map_err(|_| Error::parse(task.line, 1, "max_deg must be a non-negative integer"))?
                .unwrap_or(10);
            cert(session_params(session), &target, gens, max, Restriction::full_ring())
        }
        other => Err(Error::Unsupported(format!("task `{other}` is not a session operation"))),
    }
}

pub fn field_from_char(p: u64) -> Result<FieldSpec> {
    if p == 0 {
        Ok(FieldSpec::Rationals)
    } else {
        FieldSpec::prime(p)
    }
}
